//! Normalized embeddings of paths in the square lattice, elementary
//! transformations of their turn edges, and the exhaustive enumeration of
//! path-like trees that every decision procedure is checked against.
//!
//! A normalized embedding is fixed by its row lengths (a [`Composition`]):
//! row 0 runs rightward from `(0, 0)`, each later row starts directly above
//! the last vertex of the previous row and runs the opposite way. A
//! transformation only moves the single vertical edge of a turn to another
//! column where both rows have vertices, so the reachable trees are exactly
//! the choices of one column per turn ([`TransformChoice`]).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::{canonical_code, rooted_code, CanonicalCode};
use crate::tree::Tree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("points {0} and {1} are not lattice neighbours")]
    NotAdjacent(usize, usize),
    #[error("point {0} is visited twice")]
    NotInjective(usize),
    #[error("composition {0:?} is invalid: parts must sum to a positive order and be >= 2 when there are several")]
    BadComposition(Vec<usize>),
    #[error("transform choice {choice:?} is inconsistent with composition {parts:?}")]
    InconsistentChoice { parts: Vec<usize>, choice: Vec<usize> },
}

/// Lattice point `(column, row)`.
pub type Point = (i64, i64);

/// An injective embedding of a path: consecutive points are lattice
/// neighbours.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridEmbedding {
    points: Vec<Point>,
}

impl GridEmbedding {
    pub fn new(points: Vec<Point>) -> Result<Self, LatticeError> {
        for k in 1..points.len() {
            let (p, q) = (points[k - 1], points[k]);
            if (p.0 - q.0).abs() + (p.1 - q.1).abs() != 1 {
                return Err(LatticeError::NotAdjacent(k - 1, k));
            }
        }
        let mut seen = BTreeSet::new();
        for (k, p) in points.iter().enumerate() {
            if !seen.insert(*p) {
                return Err(LatticeError::NotInjective(k));
            }
        }
        Ok(GridEmbedding { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Maximal straight runs as index ranges `start..=end` (end inclusive).
    fn segments(&self) -> Vec<(usize, usize)> {
        let n = self.points.len();
        if n < 2 {
            return vec![(0, 0)];
        }
        let dir = |k: usize| {
            let (p, q) = (self.points[k], self.points[k + 1]);
            (q.0 - p.0, q.1 - p.1)
        };
        let mut out = Vec::new();
        let mut start = 0;
        for k in 1..n - 1 {
            if dir(k) != dir(k - 1) {
                out.push((start, k));
                start = k;
            }
        }
        out.push((start, n - 1));
        out
    }

    /// Renders the lattice with `*` for vertices, `-` for row edges and
    /// `|` for the vertical edges listed in `verticals` (column, lower row).
    pub fn render_ascii(&self, verticals: &[(i64, i64)]) -> String {
        let (min_c, max_c) = self.points.iter().fold((i64::MAX, i64::MIN), |(lo, hi), p| (lo.min(p.0), hi.max(p.0)));
        let (min_r, max_r) = self.points.iter().fold((i64::MAX, i64::MIN), |(lo, hi), p| (lo.min(p.1), hi.max(p.1)));
        let width = ((max_c - min_c) * 2 + 1) as usize;
        let height = ((max_r - min_r) * 2 + 1) as usize;
        let mut canvas = vec![vec![' '; width]; height];
        let cell = |c: i64, r: i64| (((max_r - r) * 2) as usize, ((c - min_c) * 2) as usize);
        for p in &self.points {
            let (y, x) = cell(p.0, p.1);
            canvas[y][x] = '*';
        }
        for w in self.points.windows(2) {
            if w[0].1 == w[1].1 {
                let (y, x) = cell(w[0].0.min(w[1].0), w[0].1);
                canvas[y][x + 1] = '-';
            }
        }
        for &(c, r) in verticals {
            let (y, x) = cell(c, r);
            canvas[y - 1][x] = '|';
        }
        canvas
            .into_iter()
            .map(|row| row.into_iter().collect::<String>().trim_end().to_string())
            .collect::<Vec<_>>()
            .join("\n")
            + "\n"
    }
}

/// Row lengths of a normalized embedding.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self, LatticeError> {
        let ok = match parts.len() {
            0 => false,
            1 => parts[0] >= 1,
            _ => parts.iter().all(|&k| k >= 2),
        };
        if ok {
            Ok(Composition { parts })
        } else {
            Err(LatticeError::BadComposition(parts))
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn order(&self) -> usize {
        self.parts.iter().sum()
    }

    /// All compositions of `n` into parts `>= 2`, plus the single row `(n)`,
    /// in lexicographic order.
    pub fn all(n: usize) -> Vec<Composition> {
        fn rec(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest == 0 {
                out.push(cur.clone());
                return;
            }
            for k in 2..=rest {
                cur.push(k);
                rec(rest - k, cur, out);
                cur.pop();
            }
        }
        let mut raw = Vec::new();
        if n >= 1 {
            rec(n, &mut Vec::new(), &mut raw);
            if n == 1 {
                raw.push(vec![1]);
            }
        }
        raw.sort();
        raw.into_iter().map(|parts| Composition { parts }).collect()
    }

    /// Every transform choice consistent with this composition, in
    /// lexicographic order.
    pub fn choices(&self) -> Vec<TransformChoice> {
        let bounds: Vec<usize> = self.parts.windows(2).map(|w| w[0].min(w[1])).collect();
        let mut out = vec![Vec::new()];
        for &bound in &bounds {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<usize>| {
                    (1..=bound).map(move |j| {
                        let mut next = prefix.clone();
                        next.push(j);
                        next
                    })
                })
                .collect();
        }
        out.into_iter().map(|columns| TransformChoice { columns }).collect()
    }
}

/// Per turn `l`, the column `j_l` of the vertical edge joining rows `l` and
/// `l + 1`: `1` keeps the original turn edge, `j > 1` moves it `j - 1`
/// columns back along both rows.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TransformChoice {
    pub columns: Vec<usize>,
}

impl TransformChoice {
    pub fn new(columns: Vec<usize>) -> Self {
        TransformChoice { columns }
    }

    pub fn is_consistent_with(&self, c: &Composition) -> bool {
        self.columns.len() + 1 == c.parts.len()
            && self.columns.iter().zip(c.parts.windows(2)).all(|(&j, w)| 1 <= j && j <= w[0].min(w[1]))
    }
}

pub fn build_normalized_embedding(c: &Composition) -> GridEmbedding {
    let mut points = Vec::with_capacity(c.order());
    let mut col = 0i64;
    for (row, &k) in c.parts.iter().enumerate() {
        let step = if row % 2 == 0 { 1 } else { -1 };
        for idx in 0..k {
            if idx > 0 {
                col += step;
            }
            points.push((col, row as i64));
        }
    }
    GridEmbedding::new(points).expect("boustrophedon embedding is a path")
}

/// Checks the four normalized-embedding conditions: an end at the origin,
/// rows of at least two vertices with single-edge vertical runs, and the
/// overhang rules for rows above even and odd rows.
pub fn validate_normalized(e: &GridEmbedding) -> bool {
    let pts = e.points();
    if pts.is_empty() {
        return false;
    }
    if pts[0] != (0, 0) && *pts.last().unwrap() != (0, 0) {
        return false;
    }
    if pts.len() == 1 {
        return true;
    }
    let mut row_counts: BTreeMap<i64, usize> = BTreeMap::new();
    for p in pts {
        *row_counts.entry(p.1).or_default() += 1;
    }
    if row_counts.values().any(|&c| c < 2) {
        return false;
    }
    let segments = e.segments();
    for &(s, t) in &segments {
        let vertical = pts[s].0 == pts[t].0;
        if vertical && t - s != 1 {
            return false;
        }
    }
    for &(s, t) in &segments {
        if pts[s].1 != pts[t].1 {
            continue;
        }
        let row = pts[s].1;
        let lo = pts[s].0.min(pts[t].0);
        let hi = pts[s].0.max(pts[t].0);
        let above = pts.iter().filter(|p| p.1 == row + 1);
        let ok = if row.rem_euclid(2) == 0 {
            above.into_iter().all(|p| p.0 <= hi)
        } else {
            above.into_iter().all(|p| p.0 >= lo)
        };
        if !ok {
            return false;
        }
    }
    true
}

/// Builds the tree reached from the normalized embedding of `c` after moving
/// each turn edge to the column chosen by `tc`.
pub fn apply_transforms(c: &Composition, tc: &TransformChoice) -> Result<Tree, LatticeError> {
    if !tc.is_consistent_with(c) {
        return Err(LatticeError::InconsistentChoice { parts: c.parts.clone(), choice: tc.columns.clone() });
    }
    let e = build_normalized_embedding(c);
    let at: HashMap<Point, usize> = e.points().iter().enumerate().map(|(k, &p)| (p, k + 1)).collect();
    let pts = e.points();
    let mut edges = Vec::with_capacity(pts.len());
    for k in 1..pts.len() {
        if pts[k - 1].1 == pts[k].1 {
            edges.push((k, k + 1));
        }
    }
    let mut end = 0;
    for (l, &j) in tc.columns.iter().enumerate() {
        end += c.parts[l];
        let turn_col = pts[end - 1].0;
        // Row l runs rightward when l is even, so its interior is to the left.
        let back = if l % 2 == 0 { -1 } else { 1 };
        let col = turn_col + back * (j as i64 - 1);
        let lower = at[&(col, l as i64)];
        let upper = at[&(col, l as i64 + 1)];
        edges.push((lower, upper));
    }
    Ok(Tree::from_edges(pts.len(), &edges).expect("transformed path is a tree"))
}

/// The vertical edges (column, lower row) selected by `tc`, for rendering.
pub fn transformed_verticals(c: &Composition, tc: &TransformChoice) -> Vec<(i64, i64)> {
    let e = build_normalized_embedding(c);
    let pts = e.points();
    let mut end = 0;
    let mut out = Vec::new();
    for (l, &j) in tc.columns.iter().enumerate() {
        end += c.parts[l];
        let back = if l % 2 == 0 { -1 } else { 1 };
        out.push((pts[end - 1].0 + back * (j as i64 - 1), l as i64));
    }
    out
}

/// One lattice witness per path-like tree of order `n`: the first
/// (composition, choice) pair in lexicographic order producing it.
pub fn path_like_catalog(n: usize) -> BTreeMap<CanonicalCode, (Composition, TransformChoice)> {
    let per_comp: Vec<Vec<(CanonicalCode, TransformChoice)>> = Composition::all(n)
        .par_iter()
        .map(|c| {
            c.choices()
                .into_iter()
                .map(|tc| {
                    let t = apply_transforms(c, &tc).expect("enumerated choices are consistent");
                    (canonical_code(&t), tc)
                })
                .collect()
        })
        .collect();
    let mut out = BTreeMap::new();
    for (c, found) in Composition::all(n).into_iter().zip(per_comp) {
        for (code, tc) in found {
            out.entry(code).or_insert_with(|| (c.clone(), tc));
        }
    }
    out
}

/// The canonical codes of all path-like trees of order `n`.
pub fn enumerate_path_like_trees(n: usize) -> BTreeSet<CanonicalCode> {
    path_like_catalog(n).into_keys().collect()
}

/// Which end of the embedded path is designated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootAnchor {
    /// The origin vertex, first vertex of the first row.
    FirstVertex,
    /// The far end of the path, last vertex of the last row.
    LastVertex,
}

/// Rooted codes of all (tree, designated vertex) pairs of order `n` where
/// the designated vertex is the anchored end of the embedded path, each with
/// its first lattice witness.
pub fn enumerate_rooted(n: usize, anchor: RootAnchor) -> BTreeMap<CanonicalCode, (Composition, TransformChoice)> {
    let mut out = BTreeMap::new();
    for c in Composition::all(n) {
        for tc in c.choices() {
            let t = apply_transforms(&c, &tc).expect("enumerated choices are consistent");
            let root = match anchor {
                RootAnchor::FirstVertex => 1,
                RootAnchor::LastVertex => n,
            };
            out.entry(rooted_code(&t, root)).or_insert_with(|| (c.clone(), tc));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;
    use crate::params::HParams;

    fn comp(parts: &[usize]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn single_row_embedding() {
        let e = build_normalized_embedding(&comp(&[5]));
        assert_eq!(e.points(), &[(0, 0), (1, 0), (2, 0), (3, 0), (4, 0)]);
    }

    #[test]
    fn two_row_embedding() {
        let e = build_normalized_embedding(&comp(&[3, 2]));
        assert_eq!(e.points(), &[(0, 0), (1, 0), (2, 0), (2, 1), (1, 1)]);
        assert!(validate_normalized(&e));
    }

    #[test]
    fn three_row_embedding() {
        let e = build_normalized_embedding(&comp(&[2, 2, 2]));
        assert_eq!(e.points(), &[(0, 0), (1, 0), (1, 1), (0, 1), (0, 2), (1, 2)]);
        assert!(validate_normalized(&e));
    }

    #[test]
    fn long_vertical_run_is_not_normalized() {
        let e = GridEmbedding::new(vec![(0, 0), (1, 0), (1, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!validate_normalized(&e));
    }

    #[test]
    fn overhang_is_not_normalized() {
        let e = GridEmbedding::new(vec![(0, 0), (1, 0), (1, 1), (2, 1)]).unwrap();
        assert!(!validate_normalized(&e));
        let e = GridEmbedding::new(vec![(0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!validate_normalized(&e));
    }

    #[test]
    fn embedding_rejects_non_paths() {
        assert!(GridEmbedding::new(vec![(0, 0), (1, 1)]).is_err());
        assert!(GridEmbedding::new(vec![(0, 0), (1, 0), (0, 0)]).is_err());
    }

    #[test]
    fn transforms_build_expected_trees() {
        let t = apply_transforms(&comp(&[4]), &TransformChoice::new(vec![])).unwrap();
        assert_eq!(t, Tree::path(4));
        let h = apply_transforms(&comp(&[3, 3]), &TransformChoice::new(vec![2])).unwrap();
        assert!(are_isomorphic(&h, &HParams::new(3, 3, 1, 2, 2).unwrap().realize()));
        let p = apply_transforms(&comp(&[2, 2]), &TransformChoice::new(vec![2])).unwrap();
        assert!(are_isomorphic(&p, &Tree::path(4)));
        assert!(apply_transforms(&comp(&[2, 2]), &TransformChoice::new(vec![3])).is_err());
        assert!(apply_transforms(&comp(&[2, 2]), &TransformChoice::new(vec![])).is_err());
    }

    #[test]
    fn composition_counts() {
        assert_eq!(Composition::all(1).len(), 1);
        assert_eq!(Composition::all(4).len(), 2);
        // compositions into parts >= 2 are Fibonacci numbers; the single row is
        // one of them
        assert_eq!(Composition::all(12).len(), 89);
        assert!(Composition::new(vec![2, 1]).is_err());
        assert!(Composition::new(vec![1]).is_ok());
    }

    #[test]
    fn small_enumerations() {
        let codes = |n| enumerate_path_like_trees(n);
        assert_eq!(codes(3), BTreeSet::from([canonical_code(&Tree::path(3))]));
        assert_eq!(codes(4), BTreeSet::from([canonical_code(&Tree::path(4))]));
        let six = codes(6);
        assert!(six.contains(&canonical_code(&Tree::path(6))));
        assert!(six.contains(&canonical_code(&HParams::new(3, 3, 1, 2, 2).unwrap().realize())));
        assert_eq!(codes(1).len(), 1);
    }

    #[test]
    fn rooted_enumeration() {
        let p3 = Tree::path(3);
        let r3 = enumerate_rooted(3, RootAnchor::FirstVertex);
        assert_eq!(r3.len(), 1);
        assert!(r3.contains_key(&rooted_code(&p3, 1)));
        let r4 = enumerate_rooted(4, RootAnchor::FirstVertex);
        assert!(r4.contains_key(&rooted_code(&Tree::path(4), 2)));
        assert_eq!(enumerate_rooted(2, RootAnchor::FirstVertex).len(), 1);
    }
}
