//! Trees made of a chain of horizontal paths joined by vertical paths.
//!
//! [`decide_hn`] searches, link by link, for type-H certificates of the
//! pieces `T_i = (s_i, t_{i+1}; r_i; a_i, b_i)` that satisfy the side rule
//! and the glue tables for consecutive links. A complete certificate is
//! turned into a witness by gluing the per-link witnesses along the shared
//! horizontal path; the result is checked against the whole tree.
//!
//! Indexing: horizontal paths are `1..=n` and link `i` joins paths `i` and
//! `i + 1`, as in [`HnParams`] (whose vectors are 0-based).

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::canon::are_isomorphic;
use crate::classify::{extract_hn_params, ClassError};
use crate::config::{
    configuration_to_tree, kind_of, validate_configuration, vertical_pairs, ConfigError, ConfigStatus, CrossEdge,
    LinearConfiguration, VerticalPair,
};
use crate::hchar::{certificates_of_kind, raw_h_witness, DivisorCertificate, VerticalKind};
use crate::params::{HParams, HnParams};
use crate::tree::Tree;

use VerticalKind::*;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HnError {
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("horizontal path {0} holds two adjacent or coincident degree-3 vertices")]
    HypothesisViolated(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

/// Which part of horizontal path `i + 1` the piece `T_i` keeps: all of it,
/// or everything left of the outgoing attachment (`h_{i+1} - a_{i+1}`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TChoice {
    Full,
    Truncated,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkCertificate {
    /// The type-H piece `T_i` in the orientation that was certified.
    pub piece: HParams,
    pub certificate: DivisorCertificate,
    pub t_choice: TChoice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnCertificate {
    pub alpha: Vec<VerticalKind>,
    /// `d_1 .. d_n`.
    pub d: Vec<usize>,
    /// `delta^1 .. delta^{n-1}`.
    pub delta: Vec<usize>,
    pub links: Vec<LinkCertificate>,
}

impl HnCertificate {
    fn from_links(links: Vec<LinkCertificate>) -> Self {
        let alpha = links.iter().map(|l| l.certificate.kind).collect();
        let mut d = vec![links[0].certificate.d1];
        d.extend(links.iter().map(|l| l.certificate.d2));
        let delta = links.iter().map(|l| l.certificate.delta).collect();
        HnCertificate { alpha, d, delta, links }
    }

    pub fn sequences(&self) -> ChainSequences {
        ChainSequences { alpha: self.alpha.clone(), d: self.d.clone(), delta: self.delta.clone() }
    }

    pub fn explain(&self) -> Vec<String> {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        let mut out = vec![
            format!("alpha={}", self.alpha.iter().map(|k| k.name()).collect::<Vec<_>>().join(",")),
            format!("d={}", join(&self.d)),
            format!("delta={}", join(&self.delta)),
        ];
        for (k, l) in self.links.iter().enumerate() {
            let t = match l.t_choice {
                TChoice::Full => "full",
                TChoice::Truncated => "truncated",
            };
            out.push(format!("link{}={} t={} {}", k + 1, l.piece, t, l.certificate.explain().join(" ")));
        }
        out
    }
}

/// Kinds and divisors read off a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSequences {
    pub alpha: Vec<VerticalKind>,
    pub d: Vec<usize>,
    pub delta: Vec<usize>,
}

impl fmt::Display for ChainSequences {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kinds: Vec<_> = self.alpha.iter().map(|k| k.symbol()).collect();
        write!(f, "alpha=({}) d={:?} delta={:?}", kinds.join(","), self.d, self.delta)
    }
}

/// Reads the vertical models and the horizontal and vertical divisors off a
/// configuration of a chain tree.
pub fn decompose_linear_config(lc: &LinearConfiguration) -> Result<ChainSequences, HnError> {
    let lc = lc.normalized();
    let t = configuration_to_tree(&lc)?;
    if t.max_degree() != 3 {
        return Err(HnError::PreconditionViolated("maximum degree must be 3".into()));
    }
    let chain = vertical_pairs(&lc, &t)?;
    let cross: BTreeSet<(usize, usize)> = lc
        .cross_edges()
        .iter()
        .flat_map(|e| {
            let (x, y) = (lc.vertex_id(e.link, e.i), lc.vertex_id(e.link + 1, e.j));
            [(x, y), (y, x)]
        })
        .collect();
    let len = |l: usize| lc.lengths()[l - 1];
    let ends = |pair: &VerticalPair| if pair.flipped { (pair.v, pair.u) } else { (pair.u, pair.v) };
    let mut alpha = Vec::new();
    let mut pairs = Vec::new();
    let mut delta = Vec::new();
    for (k, pair) in chain.iter().enumerate() {
        if k > 0 && cross.contains(&(ends(&chain[k - 1]).1.vertex, ends(pair).0.vertex)) {
            return Err(HnError::PreconditionViolated(format!("cross edge joins v_{k} and u_{}", k + 1)));
        }
        let (u, v) = (pair.u, pair.v);
        let kind = pair.kind()?;
        let (du, dv, dl) = match kind_of(&u, &v).expect("kind checked above") {
            Parallel => (len(u.path - 1), len(v.path + 1), 1),
            Crossed => (len(u.path + 1), len(u.path - 1), 1),
            Bridge => (len(u.path), len(v.path), lc.cross_edges()[u.path - 1].j),
            Indirect => (len(u.path - 1), len(v.path + 1), len(u.path)),
            SemiIndirectMinus => (len(u.path - 1), len(v.path), len(u.path)),
            SemiIndirectPlus => (len(u.path), len(v.path + 1), len(v.path)),
        };
        alpha.push(kind);
        pairs.push(if pair.flipped { (dv, du) } else { (du, dv) });
        delta.push(dl);
    }
    if alpha.is_empty() {
        return Err(HnError::PreconditionViolated("no degree-3 vertices".into()));
    }
    let mut d = vec![pairs[0].0];
    d.extend(pairs.iter().map(|p| p.1));
    Ok(ChainSequences { alpha, d, delta })
}

fn h(p: &HnParams, i: usize) -> usize {
    p.h[i - 1]
}
fn a(p: &HnParams, i: usize) -> usize {
    p.a[i - 1]
}
fn b(p: &HnParams, i: usize) -> usize {
    p.b[i - 1]
}
fn r(p: &HnParams, i: usize) -> usize {
    p.r[i - 1]
}

/// Values of `d_i` allowed by the model of link `i - 1` (left glue table),
/// for `2 <= i <= n - 1`.
pub fn glue_divisor_options(alpha_prev: VerticalKind, i: usize, p: &HnParams, delta_prev: usize) -> BTreeSet<usize> {
    let bp = b(p, i - 1);
    let mut out = BTreeSet::new();
    match alpha_prev {
        Parallel => {
            out.insert(bp);
        }
        Crossed if i == 2 => {
            out.insert(a(p, 1) + r(p, 1));
            out.insert(h(p, 1) - a(p, 1) + 1 + r(p, 1));
        }
        Crossed => {
            out.insert(a(p, i - 1) + r(p, i - 1));
        }
        Bridge | SemiIndirectMinus => {
            out.insert(if delta_prev != bp { delta_prev + bp - 1 } else { h(p, i) });
        }
        Indirect | SemiIndirectPlus => {
            if delta_prev + 1 > bp {
                out.insert(delta_prev + 1 - bp);
            }
        }
    }
    out
}

/// Values of `d_i` allowed by the model of link `i` (right glue table), for
/// `2 <= i <= n - 1`.
pub fn right_divisor_options(alpha: VerticalKind, i: usize, p: &HnParams, delta: usize) -> BTreeSet<usize> {
    let n = p.len();
    let ai = a(p, i);
    let mut out = BTreeSet::new();
    match alpha {
        Parallel => {
            out.insert(ai);
        }
        Crossed if i == n - 1 => {
            out.insert(b(p, n - 1) + r(p, n - 1));
            out.insert(h(p, n) - b(p, n - 1) + 1 + r(p, n - 1));
        }
        Crossed => {
            out.insert(b(p, i) + r(p, i));
        }
        Bridge | SemiIndirectPlus => {
            out.insert(if delta != ai { delta + ai - 1 } else { h(p, i) });
        }
        Indirect | SemiIndirectMinus => {
            if delta + 1 > ai {
                out.insert(delta + 1 - ai);
            }
        }
    }
    out
}

/// Boundary rule for a bridge-like link `i` following link `i - 1`.
fn boundary_rule(p: &HnParams, i: usize, prev: &DivisorCertificate, cur: &DivisorCertificate, d: usize) -> bool {
    if !matches!(cur.kind, Bridge | SemiIndirectPlus) {
        return true;
    }
    let (ai, bp, hi) = (a(p, i), b(p, i - 1), h(p, i));
    let prev_open = matches!(prev.kind, Bridge | SemiIndirectMinus);
    if !prev_open || d < hi {
        d == cur.delta + ai - 1
    } else {
        (prev.delta == bp && cur.delta == ai) || (prev.delta + bp == hi + 1 && cur.delta + ai == hi + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HnVerdict {
    Yes {
        certificate: HnCertificate,
        witness: LinearConfiguration,
    },
    /// Certificates satisfying every rule exist, but none of them could be
    /// glued into a configuration of the tree.
    Unassembled(HnCertificate),
    NoCertificateFound,
}

struct Candidate {
    link: LinkCertificate,
}

fn dedup2(x: usize, y: usize) -> Vec<usize> {
    if x == y {
        vec![x]
    } else {
        vec![x, y]
    }
}

fn candidates(p: &HnParams, k: usize, prev: Option<&LinkCertificate>) -> Vec<Candidate> {
    let n = p.len();
    let i = k + 1;
    let last = i == n - 1;
    let (ri, ai, bi) = (r(p, i), a(p, i), b(p, i));
    // (s, a parameter, kinds allowed by the side rule)
    let mut sides: Vec<(usize, usize, &[VerticalKind])> = Vec::new();
    match prev {
        None => {
            for a_opt in dedup2(ai, h(p, 1) + 1 - ai) {
                sides.push((h(p, 1), a_opt, &VerticalKind::ALL));
            }
        }
        Some(pl) => {
            let d = pl.certificate.d2;
            match pl.t_choice {
                TChoice::Full => {
                    sides.push((d + ai, ai, &[Parallel]));
                    sides.push((d, ai, &[Bridge, SemiIndirectPlus]));
                }
                TChoice::Truncated => sides.push((d + ai, ai, &[Crossed, Indirect, SemiIndirectMinus])),
            }
        }
    }
    let mut tails: Vec<(TChoice, usize, usize)> = Vec::new();
    if last {
        for b_opt in dedup2(bi, h(p, n) + 1 - bi) {
            tails.push((TChoice::Full, h(p, n), b_opt));
        }
    } else {
        tails.push((TChoice::Full, h(p, i + 1), bi));
        if h(p, i + 1) > a(p, i + 1) {
            tails.push((TChoice::Truncated, h(p, i + 1) - a(p, i + 1), bi));
        }
    }
    let mut out = Vec::new();
    for kind in VerticalKind::ALL {
        for &(s, a_opt, kinds) in &sides {
            if !kinds.contains(&kind) {
                continue;
            }
            for &(t_choice, t, b_opt) in &tails {
                let Ok(piece) = HParams::new(s, t, ri, a_opt, b_opt) else { continue };
                for cert in certificates_of_kind(&piece, kind) {
                    if let Some(pl) = prev {
                        let d = pl.certificate.d2;
                        if cert.d1 != d
                            || !glue_divisor_options(pl.certificate.kind, i, p, pl.certificate.delta).contains(&d)
                            || !right_divisor_options(kind, i, p, cert.delta).contains(&d)
                            || !boundary_rule(p, i, &pl.certificate, &cert, d)
                        {
                            continue;
                        }
                    }
                    out.push(Candidate { link: LinkCertificate { piece, certificate: cert, t_choice } });
                }
            }
        }
    }
    out
}

/// Chain realized by links `0..=k`: the last horizontal path is cut to the
/// part the piece `T_{k+1}` keeps.
fn partial_tree(p: &HnParams, links: &[LinkCertificate]) -> Tree {
    let k = links.len() - 1;
    let mut hs = p.h[..=k].to_vec();
    hs.push(links[k].piece.t);
    let q = HnParams { h: hs, r: p.r[..=k].to_vec(), a: p.a[..=k].to_vec(), b: p.b[..=k].to_vec() };
    q.realize()
}

/// Ways to lay the start of `next` over the end of `cur`: the last `k` paths
/// of `cur` coincide with the first `k` paths of `next`, except that the
/// final shared path of `cur` may be a prefix of its partner.
fn overlaps(cur: &LinearConfiguration, next: &LinearConfiguration) -> Vec<LinearConfiguration> {
    let (cl, ce) = (cur.lengths(), cur.cross_edges());
    let (nl, ne) = (next.lengths(), next.cross_edges());
    let mut out = Vec::new();
    for k in 1..=cl.len().min(nl.len()).min(3) {
        let off = cl.len() - k;
        let same_paths = (0..k - 1).all(|q| cl[off + q] == nl[q]);
        let same_edges = (0..k - 1).all(|q| (ce[off + q].i, ce[off + q].j) == (ne[q].i, ne[q].j));
        if !same_paths || !same_edges || cl[off + k - 1] > nl[k - 1] {
            continue;
        }
        let mut lengths = cl[..off].to_vec();
        lengths.extend_from_slice(nl);
        let mut edges: Vec<CrossEdge> = ce[..off].to_vec();
        edges.extend(ne.iter().map(|e| CrossEdge { link: e.link + off, ..*e }));
        if let Ok(lc) = LinearConfiguration::new(lengths, edges) {
            if !matches!(validate_configuration(&lc), ConfigStatus::Invalid(_)) {
                out.push(lc);
            }
        }
    }
    out
}

fn assemble(p: &HnParams, links: &[LinkCertificate], target: &Tree) -> Option<LinearConfiguration> {
    let pieces: Vec<LinearConfiguration> = links
        .iter()
        .map(|l| raw_h_witness(&l.piece, &l.certificate).expect("search only keeps valid certificates"))
        .collect();
    let mut frontier: Vec<LinearConfiguration> = vec![pieces[0].clone(), pieces[0].reversed()];
    for k in 1..links.len() {
        let partial = partial_tree(p, &links[..=k]);
        let mut next = Vec::new();
        for cur in &frontier {
            for piece in [pieces[k].clone(), pieces[k].reversed()] {
                for glued in overlaps(cur, &piece) {
                    let fits = configuration_to_tree(&glued).map(|t| are_isomorphic(&t, &partial)).unwrap_or(false);
                    if fits && !next.contains(&glued) {
                        next.push(glued);
                    }
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            return None;
        }
    }
    frontier.into_iter().map(|lc| lc.normalized()).find(|lc| {
        validate_configuration(lc) == ConfigStatus::Proper
            && configuration_to_tree(lc).map(|t| are_isomorphic(&t, target)).unwrap_or(false)
    })
}

struct Search<'a> {
    p: &'a HnParams,
    target: Tree,
    stack: Vec<LinkCertificate>,
    unassembled: Option<HnCertificate>,
}

impl Search<'_> {
    fn run(&mut self) -> Option<(HnCertificate, LinearConfiguration)> {
        let k = self.stack.len();
        if k == self.p.len() - 1 {
            return match assemble(self.p, &self.stack, &self.target) {
                Some(w) => Some((HnCertificate::from_links(self.stack.clone()), w)),
                None => {
                    self.unassembled.get_or_insert_with(|| HnCertificate::from_links(self.stack.clone()));
                    None
                }
            };
        }
        for c in candidates(self.p, k, self.stack.last()) {
            self.stack.push(c.link);
            if let Some(found) = self.run() {
                return Some(found);
            }
            self.stack.pop();
        }
        None
    }
}

/// Searches for a chain certificate of `p` and glues its witness.
pub fn decide_hn(p: &HnParams) -> Result<HnVerdict, HnError> {
    if let Some(i) = (2..p.len()).find(|&i| b(p, i - 1) + a(p, i) >= h(p, i)) {
        return Err(HnError::HypothesisViolated(i));
    }
    let mut search = Search { p, target: p.realize(), stack: Vec::new(), unassembled: None };
    Ok(match search.run() {
        Some((certificate, witness)) => HnVerdict::Yes { certificate, witness },
        None => match search.unassembled {
            Some(c) => HnVerdict::Unassembled(c),
            None => HnVerdict::NoCertificateFound,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Type1Verdict {
    Yes {
        params: HnParams,
        certificate: HnCertificate,
        witness: LinearConfiguration,
    },
    Unassembled {
        params: HnParams,
        certificate: HnCertificate,
    },
    NoCertificateFound,
    /// Every chain realization has adjacent degree-3 vertices on a
    /// horizontal path, which the criterion does not cover.
    Unsupported,
}

/// Decides a chain tree over all of its chain realizations.
pub fn decide_type1_tree(t: &Tree) -> Result<Type1Verdict, HnError> {
    let realizations = extract_hn_params(t)?;
    let mut unassembled = None;
    let mut any_supported = false;
    for p in realizations {
        match decide_hn(&p) {
            Err(HnError::HypothesisViolated(_)) => continue,
            Err(e) => return Err(e),
            Ok(v) => {
                any_supported = true;
                match v {
                    HnVerdict::Yes { certificate, witness } => {
                        return Ok(Type1Verdict::Yes { params: p, certificate, witness })
                    }
                    HnVerdict::Unassembled(c) => {
                        unassembled.get_or_insert((p, c));
                    }
                    HnVerdict::NoCertificateFound => {}
                }
            }
        }
    }
    Ok(match (any_supported, unassembled) {
        (false, _) => Type1Verdict::Unsupported,
        (true, Some((params, certificate))) => Type1Verdict::Unassembled { params, certificate },
        (true, None) => Type1Verdict::NoCertificateFound,
    })
}
