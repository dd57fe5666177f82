//! Linear configurations: a row of paths `P^1 .. P^m` where consecutive
//! paths are joined by exactly one cross edge `v^l_i v^{l+1}_j` with
//! `k_l - i = j - 1`.
//!
//! Vertex `v^l_i` always has id `i + k_1 + ... + k_{l-1}`, so a
//! configuration fixes a labeled tree byte for byte.
//!
//! Witness text format:
//!
//! ```text
//! # comment
//! paths 3 3
//! edge 1 2 2
//! ```

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonical_code, CanonicalCode};
use crate::hchar::VerticalKind;
use crate::lattice::{build_normalized_embedding, Composition, GridEmbedding, TransformChoice};
use crate::tree::{Tree, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("malformed configuration: {0}")]
    Malformed(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(InvalidReason),
    #[error("path {0} has a single vertex and cannot be a lattice row")]
    RowTooShort(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// Cross edge `v^link_i v^{link+1}_j`; `link` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossEdge {
    pub link: usize,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvalidReason {
    pub link: usize,
    pub message: String,
}

impl fmt::Display for InvalidReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "edge {}: {}", self.link, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfigStatus {
    /// Every cross edge satisfies the distance condition with `j > 1`.
    Proper,
    /// Distance conditions hold but some edge has `j = 1` (an unmoved turn
    /// edge that simply continues one path into the next).
    Improper,
    Invalid(InvalidReason),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearConfiguration {
    lengths: Vec<usize>,
    edges: Vec<CrossEdge>,
}

impl LinearConfiguration {
    /// Checks only the shape: at least one path, positive lengths and one
    /// cross edge per consecutive pair, listed in order.
    pub fn new(lengths: Vec<usize>, edges: Vec<CrossEdge>) -> Result<Self, ConfigError> {
        if lengths.is_empty() {
            return Err(ConfigError::Malformed("no paths".into()));
        }
        if lengths.contains(&0) {
            return Err(ConfigError::Malformed("empty path".into()));
        }
        if edges.len() + 1 != lengths.len() {
            return Err(ConfigError::Malformed(format!(
                "{} paths need {} cross edges, got {}",
                lengths.len(),
                lengths.len() - 1,
                edges.len()
            )));
        }
        for (k, e) in edges.iter().enumerate() {
            if e.link != k + 1 {
                return Err(ConfigError::Malformed(format!("cross edge {} is listed for link {}", k + 1, e.link)));
            }
        }
        Ok(LinearConfiguration { lengths, edges })
    }

    /// Builds from `(i, j)` pairs, one per consecutive pair of paths.
    pub fn from_pairs(lengths: Vec<usize>, pairs: &[(usize, usize)]) -> Result<Self, ConfigError> {
        let edges = pairs.iter().enumerate().map(|(k, &(i, j))| CrossEdge { link: k + 1, i, j }).collect();
        Self::new(lengths, edges)
    }

    /// The single path `P_n`.
    pub fn single(n: usize) -> Self {
        LinearConfiguration { lengths: vec![n], edges: vec![] }
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn cross_edges(&self) -> &[CrossEdge] {
        &self.edges
    }

    pub fn order(&self) -> usize {
        self.lengths.iter().sum()
    }

    /// Id of `v^l_i` (both 1-based).
    pub fn vertex_id(&self, l: usize, i: usize) -> Vertex {
        self.lengths[..l - 1].iter().sum::<usize>() + i
    }

    /// `(l, i)` of a vertex id.
    pub fn locate(&self, v: Vertex) -> (usize, usize) {
        let mut rest = v;
        for (l, &k) in self.lengths.iter().enumerate() {
            if rest <= k {
                return (l + 1, rest);
            }
            rest -= k;
        }
        panic!("vertex {v} outside configuration of order {}", self.order())
    }

    /// Merges paths joined by `j = 1` edges. Vertex ids, and therefore the
    /// tree, are unchanged.
    pub fn normalized(&self) -> LinearConfiguration {
        let mut lengths = vec![self.lengths[0]];
        let mut edges = Vec::new();
        for (k, e) in self.edges.iter().enumerate() {
            let next = self.lengths[k + 1];
            let merged_before = *lengths.last().unwrap() - self.lengths[k];
            if e.j == 1 && e.i == self.lengths[k] {
                *lengths.last_mut().unwrap() += next;
            } else {
                edges.push(CrossEdge { link: lengths.len(), i: merged_before + e.i, j: e.j });
                lengths.push(next);
            }
        }
        LinearConfiguration { lengths, edges }
    }

    /// The same tree read right to left: paths and their vertices reversed.
    pub fn reversed(&self) -> LinearConfiguration {
        let m = self.lengths.len();
        let lengths: Vec<usize> = self.lengths.iter().rev().copied().collect();
        let edges = self
            .edges
            .iter()
            .rev()
            .enumerate()
            .map(|(k, e)| CrossEdge {
                link: k + 1,
                i: self.lengths[m - k - 1] - e.j + 1,
                j: self.lengths[m - k - 2] - e.i + 1,
            })
            .collect();
        LinearConfiguration { lengths, edges }
    }

    pub fn to_witness_text(&self) -> String {
        let mut out = String::from("paths");
        for k in &self.lengths {
            out.push_str(&format!(" {k}"));
        }
        out.push('\n');
        for e in &self.edges {
            out.push_str(&format!("edge {} {} {}\n", e.link, e.i, e.j));
        }
        out
    }

    pub fn parse_witness(text: &str) -> Result<Self, ConfigError> {
        let mut lengths = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            let mut fields = content.split_whitespace();
            let keyword = fields.next().unwrap();
            let nums: Result<Vec<usize>, _> = fields.map(str::parse::<usize>).collect();
            let nums =
                nums.map_err(|_| ConfigError::Parse { line, message: "expected non-negative integers".into() })?;
            match keyword {
                "paths" if lengths.is_none() => {
                    if nums.is_empty() {
                        return Err(ConfigError::Parse { line, message: "no path lengths".into() });
                    }
                    lengths = Some(nums);
                }
                "paths" => return Err(ConfigError::Parse { line, message: "repeated paths line".into() }),
                "edge" if lengths.is_some() => {
                    if nums.len() != 3 {
                        return Err(ConfigError::Parse { line, message: "edge needs l i j".into() });
                    }
                    edges.push(CrossEdge { link: nums[0], i: nums[1], j: nums[2] });
                }
                "edge" => return Err(ConfigError::Parse { line, message: "edge before paths line".into() }),
                other => return Err(ConfigError::Parse { line, message: format!("unknown keyword {other:?}") }),
            }
        }
        let lengths = lengths.ok_or(ConfigError::Parse { line: 0, message: "missing paths line".into() })?;
        Self::new(lengths, edges)
    }
}

impl fmt::Display for LinearConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "lengths {:?} edges {:?}",
            self.lengths,
            self.edges.iter().map(|e| (e.link, e.i, e.j)).collect::<Vec<_>>()
        )
    }
}

pub fn validate_configuration(lc: &LinearConfiguration) -> ConfigStatus {
    let mut improper = false;
    for e in &lc.edges {
        let (kl, kn) = (lc.lengths[e.link - 1], lc.lengths[e.link]);
        let bad = |message: String| ConfigStatus::Invalid(InvalidReason { link: e.link, message });
        if !(1 <= e.i && e.i <= kl) {
            return bad(format!("i = {} outside 1..={kl}", e.i));
        }
        if !(1 <= e.j && e.j <= kn) {
            return bad(format!("j = {} outside 1..={kn}", e.j));
        }
        if kl - e.i != e.j - 1 {
            return bad(format!(
                "distance {} to the end of P^{} differs from distance {} to the start of P^{}",
                kl - e.i,
                e.link,
                e.j - 1,
                e.link + 1
            ));
        }
        if e.j == 1 {
            improper = true;
        }
    }
    if improper {
        ConfigStatus::Improper
    } else {
        ConfigStatus::Proper
    }
}

pub fn configuration_to_tree(lc: &LinearConfiguration) -> Result<Tree, ConfigError> {
    if let ConfigStatus::Invalid(reason) = validate_configuration(lc) {
        return Err(ConfigError::InvalidConfiguration(reason));
    }
    let mut edges = Vec::with_capacity(lc.order());
    let mut offset = 0;
    for &k in &lc.lengths {
        edges.extend((1..k).map(|i| (offset + i, offset + i + 1)));
        offset += k;
    }
    for e in &lc.edges {
        edges.push((lc.vertex_id(e.link, e.i), lc.vertex_id(e.link + 1, e.j)));
    }
    Ok(Tree::from_edges(lc.order(), &edges).expect("a valid configuration is a tree"))
}

/// Lattice form of a configuration: the normalized embedding of its row
/// lengths and the turn columns taken from its cross edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridForm {
    pub embedding: GridEmbedding,
    pub composition: Composition,
    pub choice: TransformChoice,
}

pub fn configuration_to_grid(lc: &LinearConfiguration) -> Result<GridForm, ConfigError> {
    if let ConfigStatus::Invalid(reason) = validate_configuration(lc) {
        return Err(ConfigError::InvalidConfiguration(reason));
    }
    if lc.lengths.len() > 1 {
        if let Some(l) = lc.lengths.iter().position(|&k| k < 2) {
            return Err(ConfigError::RowTooShort(l + 1));
        }
    }
    let composition = Composition::new(lc.lengths.clone()).expect("rows checked above");
    let choice = TransformChoice::new(lc.edges.iter().map(|e| e.j).collect());
    Ok(GridForm { embedding: build_normalized_embedding(&composition), composition, choice })
}

pub fn grid_to_configuration(c: &Composition, tc: &TransformChoice) -> LinearConfiguration {
    let parts = c.parts();
    let edges =
        tc.columns.iter().enumerate().map(|(l, &j)| CrossEdge { link: l + 1, i: parts[l] - j + 1, j }).collect();
    LinearConfiguration { lengths: parts.to_vec(), edges }
}

/// Where a degree-3 vertex sits and which neighbouring path it is joined to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Attachment {
    pub vertex: Vertex,
    pub path: usize,
    pub pos: usize,
    /// True when the extra edge goes to the next path.
    pub plus: bool,
}

/// Degree-3 vertices of a proper configuration in left-to-right order.
pub(crate) fn attachments(lc: &LinearConfiguration, t: &Tree) -> Vec<Attachment> {
    t.vertices_of_degree(3)
        .into_iter()
        .map(|v| {
            let (path, pos) = lc.locate(v);
            let plus = path < lc.lengths.len() && lc.edges[path - 1].i == pos;
            Attachment { vertex: v, path, pos, plus }
        })
        .collect()
}

pub(crate) fn kind_of(u: &Attachment, v: &Attachment) -> Option<VerticalKind> {
    use VerticalKind::*;
    match (u.path == v.path, u.plus, v.plus) {
        (true, false, true) => Some(Parallel),
        (true, true, false) => Some(Crossed),
        (false, true, false) => Some(Bridge),
        (false, false, true) => Some(Indirect),
        (false, false, false) => Some(SemiIndirectMinus),
        (false, true, true) => Some(SemiIndirectPlus),
        _ => None,
    }
}

/// One vertical path: its end attachments in id order, and whether the chain
/// runs from `v` to `u` (so `v` lies on the earlier horizontal path).
#[derive(Debug, Clone, Copy)]
pub(crate) struct VerticalPair {
    pub u: Attachment,
    pub v: Attachment,
    pub flipped: bool,
}

/// Vertical paths in chain order. Degree-3 vertices are paired along the
/// path through all of them; the chain is oriented so it starts at the
/// left end of the configuration.
pub(crate) fn vertical_pairs(lc: &LinearConfiguration, t: &Tree) -> Result<Vec<VerticalPair>, ConfigError> {
    if t.max_degree() > 3 {
        return Err(ConfigError::PreconditionViolated("tree has a vertex of degree 4".into()));
    }
    let att = attachments(lc, t);
    if att.len() % 2 == 1 {
        return Err(ConfigError::PreconditionViolated("odd number of degree-3 vertices".into()));
    }
    if att.is_empty() {
        return Ok(Vec::new());
    }
    let spine = crate::classify::spine(t)
        .ok_or_else(|| ConfigError::PreconditionViolated("degree-3 vertices do not lie on one path".into()))?;
    let mut order: Vec<Vertex> = spine.into_iter().filter(|&v| t.degree(v) == 3).collect();
    if order[0] > order[order.len() - 1] {
        order.reverse();
    }
    let find = |v: Vertex| *att.iter().find(|a| a.vertex == v).expect("degree-3 vertex has an attachment");
    Ok(order
        .chunks(2)
        .map(|c| {
            let (x, y) = (find(c[0]), find(c[1]));
            if x.vertex < y.vertex {
                VerticalPair { u: x, v: y, flipped: false }
            } else {
                VerticalPair { u: y, v: x, flipped: true }
            }
        })
        .collect())
}

impl VerticalPair {
    /// The model read in chain direction.
    pub(crate) fn kind(&self) -> Result<VerticalKind, ConfigError> {
        let k = kind_of(&self.u, &self.v).ok_or_else(|| {
            ConfigError::PreconditionViolated(format!(
                "vertices {} and {} do not form a vertical path model",
                self.u.vertex, self.v.vertex
            ))
        })?;
        Ok(if self.flipped { k.mirrored() } else { k })
    }
}

/// The model of each vertical path `(u_i, v_i)` in chain order.
pub fn classify_vertical_paths(lc: &LinearConfiguration) -> Result<Vec<VerticalKind>, ConfigError> {
    let lc = lc.normalized();
    let t = configuration_to_tree(&lc)?;
    vertical_pairs(&lc, &t)?.iter().map(VerticalPair::kind).collect()
}

/// All compositions of `n` into positive parts, in lexicographic order.
fn positive_compositions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in 1..=rest {
            cur.push(k);
            rec(rest - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, &mut Vec::new(), &mut out);
    }
    out
}

/// Every valid configuration (proper or improper) with the given lengths.
pub fn configurations_with_lengths(lengths: &[usize]) -> Vec<LinearConfiguration> {
    let mut out = vec![Vec::new()];
    for (l, w) in lengths.windows(2).enumerate() {
        let (kl, kn) = (w[0], w[1]);
        let options: Vec<CrossEdge> = (1..=kn.min(kl)).map(|j| CrossEdge { link: l + 1, i: kl - j + 1, j }).collect();
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<CrossEdge>| {
                options.iter().map(move |&e| {
                    let mut next = prefix.clone();
                    next.push(e);
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(|edges| LinearConfiguration { lengths: lengths.to_vec(), edges }).collect()
}

/// Canonical codes of the trees of all configurations of total order `n`,
/// including paths of a single vertex and `j = 1` edges.
pub fn enumerate_configuration_trees(n: usize) -> BTreeSet<CanonicalCode> {
    positive_compositions(n)
        .par_iter()
        .map(|lengths| {
            configurations_with_lengths(lengths)
                .iter()
                .map(|lc| canonical_code(&configuration_to_tree(lc).expect("enumerated configurations are valid")))
                .collect::<BTreeSet<_>>()
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::lattice::apply_transforms;
    use crate::params::HParams;

    fn lc(lengths: &[usize], pairs: &[(usize, usize)]) -> LinearConfiguration {
        LinearConfiguration::from_pairs(lengths.to_vec(), pairs).unwrap()
    }

    #[test]
    fn validation_statuses() {
        assert_eq!(validate_configuration(&lc(&[3, 3], &[(2, 2)])), ConfigStatus::Proper);
        assert_eq!(validate_configuration(&lc(&[2, 2], &[(2, 1)])), ConfigStatus::Improper);
        assert!(matches!(validate_configuration(&lc(&[3, 3], &[(1, 2)])), ConfigStatus::Invalid(r) if r.link == 1));
        assert!(matches!(validate_configuration(&lc(&[3, 3], &[(0, 4)])), ConfigStatus::Invalid(_)));
    }

    #[test]
    fn structural_errors() {
        assert!(LinearConfiguration::from_pairs(vec![3, 3], &[]).is_err());
        assert!(LinearConfiguration::from_pairs(vec![], &[]).is_err());
        assert!(LinearConfiguration::new(vec![2, 2], vec![CrossEdge { link: 2, i: 1, j: 2 }]).is_err());
    }

    #[test]
    fn trees_from_configurations() {
        let h = configuration_to_tree(&lc(&[3, 3], &[(2, 2)])).unwrap();
        assert!(are_isomorphic(&h, &HParams::new(3, 3, 1, 2, 2).unwrap().realize()));
        assert_eq!(configuration_to_tree(&LinearConfiguration::single(5)).unwrap(), Tree::path(5));
        let p = configuration_to_tree(&lc(&[2, 2], &[(1, 2)])).unwrap();
        assert!(are_isomorphic(&p, &Tree::path(4)));
        assert!(configuration_to_tree(&lc(&[3, 3], &[(1, 2)])).is_err());
    }

    #[test]
    fn grid_round_trips() {
        let c = lc(&[3, 3], &[(2, 2)]);
        let g = configuration_to_grid(&c).unwrap();
        assert_eq!(g.composition.parts(), &[3, 3]);
        assert_eq!(g.choice.columns, vec![2]);
        assert_eq!(grid_to_configuration(&g.composition, &g.choice), c);

        let c = lc(&[3, 2, 2], &[(2, 2), (1, 2)]);
        let g = configuration_to_grid(&c).unwrap();
        assert_eq!(g.choice.columns, vec![2, 2]);
        let replay = apply_transforms(&g.composition, &g.choice).unwrap();
        assert!(are_isomorphic(&replay, &configuration_to_tree(&c).unwrap()));

        let g = configuration_to_grid(&LinearConfiguration::single(4)).unwrap();
        assert_eq!(g.embedding.points().len(), 4);
        assert!(g.choice.columns.is_empty());
        assert_eq!(configuration_to_grid(&lc(&[1, 2], &[(1, 1)])), Err(ConfigError::RowTooShort(1)));
    }

    #[test]
    fn grid_to_configuration_examples() {
        let c = Composition::new(vec![2, 2]).unwrap();
        let g = grid_to_configuration(&c, &TransformChoice::new(vec![1]));
        assert_eq!(g, lc(&[2, 2], &[(2, 1)]));
        assert_eq!(validate_configuration(&g), ConfigStatus::Improper);
        let single = grid_to_configuration(&Composition::new(vec![5]).unwrap(), &TransformChoice::new(vec![]));
        assert_eq!(single, LinearConfiguration::single(5));
    }

    #[test]
    fn normalization_merges_unmoved_turns() {
        let c = lc(&[2, 3, 3], &[(2, 1), (2, 2)]);
        let n = c.normalized();
        assert_eq!(n, lc(&[5, 3], &[(4, 2)]));
        assert_eq!(configuration_to_tree(&c).unwrap(), configuration_to_tree(&n).unwrap());
    }

    #[test]
    fn reversal_keeps_validity_and_tree() {
        let c = lc(&[3, 2, 4], &[(2, 2), (1, 2)]);
        let r = c.reversed();
        assert_eq!(validate_configuration(&r), ConfigStatus::Proper);
        assert!(are_isomorphic(&configuration_to_tree(&c).unwrap(), &configuration_to_tree(&r).unwrap()));
        assert_eq!(r.reversed(), c);
    }

    #[test]
    fn vertical_kinds() {
        use VerticalKind::*;
        assert_eq!(classify_vertical_paths(&lc(&[3, 3], &[(2, 2)])).unwrap(), vec![Bridge]);
        assert_eq!(classify_vertical_paths(&lc(&[2, 4, 2], &[(1, 2), (3, 2)])).unwrap(), vec![Parallel]);
        assert_eq!(classify_vertical_paths(&LinearConfiguration::single(4)).unwrap(), vec![]);
        assert!(classify_vertical_paths(&lc(&[3, 2], &[(2, 2)])).is_err());
    }

    #[test]
    fn witness_text() {
        let c = lc(&[3, 2, 2], &[(2, 2), (1, 2)]);
        let text = c.to_witness_text();
        assert_eq!(text, "paths 3 2 2\nedge 1 2 2\nedge 2 1 2\n");
        assert_eq!(LinearConfiguration::parse_witness(&format!("# w\n{text}")).unwrap(), c);
        assert!(LinearConfiguration::parse_witness("edge 1 1 1").is_err());
        assert!(LinearConfiguration::parse_witness("paths 2 2\nedge 1 x 1").is_err());
        assert!(LinearConfiguration::parse_witness("paths 2 2").is_err());
    }

    #[test]
    fn configuration_enumeration_small() {
        assert_eq!(enumerate_configuration_trees(4).len(), 1);
        assert!(
            enumerate_configuration_trees(6).contains(&canonical_code(&HParams::new(3, 3, 1, 2, 2).unwrap().realize()))
        );
    }
}
