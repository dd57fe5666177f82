//! Structural classification of trees and extraction of every parameter
//! tuple under which a tree realizes one of the structured families.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::params::{CHParams, HParams, HnParams};
use crate::tree::{Tree, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("tree is not of type H")]
    NotTypeH,
    #[error("tree is not of type cutted H")]
    NotCuttedH,
    #[error("tree is not a chain of three or more horizontal paths")]
    NotTypeHn,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeClass {
    Path,
    CuttedH(Vec<CHParams>),
    TypeH(Vec<HParams>),
    TypeHn(Vec<HnParams>),
    HasDegree4,
    OutOfScope,
}

impl TreeClass {
    pub fn tag(&self) -> &'static str {
        match self {
            TreeClass::Path => "path",
            TreeClass::CuttedH(_) => "cutted-h",
            TreeClass::TypeH(_) => "type-h",
            TreeClass::TypeHn(_) => "type-hn",
            TreeClass::HasDegree4 => "degree-4",
            TreeClass::OutOfScope => "out-of-scope",
        }
    }
}

pub fn classify(t: &Tree) -> TreeClass {
    let max = t.max_degree();
    if max <= 2 {
        return TreeClass::Path;
    }
    if max == 4 {
        return TreeClass::HasDegree4;
    }
    if max > 4 {
        return TreeClass::OutOfScope;
    }
    match t.vertices_of_degree(3).len() {
        1 => TreeClass::CuttedH(ch_params(t)),
        2 => TreeClass::TypeH(h_params(t)),
        k if k % 2 == 0 => match spine(t) {
            Some(sp) => TreeClass::TypeHn(hn_params(t, &sp)),
            None => TreeClass::OutOfScope,
        },
        _ => TreeClass::OutOfScope,
    }
}

/// Sizes of the two branches at `x` that avoid `toward`.
fn side_legs(t: &Tree, x: Vertex, toward: Vertex) -> (usize, usize) {
    let mut legs = t.neighbors(x).iter().filter(|&&w| w != toward).map(|&w| t.branch_size(x, w));
    (legs.next().unwrap(), legs.next().unwrap())
}

fn h_params(t: &Tree) -> Vec<HParams> {
    let deg3 = t.vertices_of_degree(3);
    let (x, y) = (deg3[0], deg3[1]);
    let link = t.path_between(x, y);
    let r = link.len() - 1;
    let (p, q) = side_legs(t, x, link[1]);
    let (p2, q2) = side_legs(t, y, link[r - 1]);
    let (s, tt) = (p + q + 1, p2 + q2 + 1);
    let mut out = BTreeSet::new();
    for a in [p + 1, q + 1] {
        for b in [p2 + 1, q2 + 1] {
            let hp = HParams { s, t: tt, r, a, b };
            out.insert(hp);
            out.insert(hp.swapped());
        }
    }
    out.into_iter().collect()
}

fn ch_params(t: &Tree) -> Vec<CHParams> {
    let c = t.vertices_of_degree(3)[0];
    let legs: Vec<usize> = t.neighbors(c).iter().map(|&w| t.branch_size(c, w)).collect();
    let mut out = BTreeSet::new();
    for pendant in 0..3 {
        let others: Vec<usize> = (0..3).filter(|&k| k != pendant).map(|k| legs[k]).collect();
        let s = others[0] + others[1] + 1;
        for a in [others[0] + 1, others[1] + 1] {
            out.insert(CHParams { s, t: legs[pendant], a });
        }
    }
    out.into_iter().collect()
}

/// The degree-3 vertices in path order when they all lie on one path.
pub(crate) fn spine(t: &Tree) -> Option<Vec<Vertex>> {
    let deg3 = t.vertices_of_degree(3);
    let farthest = |from: Vertex| {
        let d = t.distances_from(from);
        *deg3.iter().max_by_key(|&&v| (d[v - 1], std::cmp::Reverse(v))).unwrap()
    };
    let e1 = farthest(deg3[0]);
    let e2 = farthest(e1);
    let path = t.path_between(e1, e2);
    let on_path: Vec<Vertex> = path.iter().copied().filter(|&v| t.degree(v) == 3).collect();
    (on_path.len() == deg3.len()).then_some(path)
}

/// Every H_n realization of a tree whose degree-3 vertices lie on `path`
/// (a path between the two extreme degree-3 vertices).
fn hn_params(t: &Tree, path: &[Vertex]) -> Vec<HnParams> {
    let mut out = BTreeSet::new();
    for forward in [true, false] {
        let walk: Vec<Vertex> = if forward { path.to_vec() } else { path.iter().rev().copied().collect() };
        let marks: Vec<usize> = (0..walk.len()).filter(|&k| t.degree(walk[k]) == 3).collect();
        let links = marks.len() / 2;
        let leg = |k: usize| -> usize {
            let v = walk[k];
            let off = t
                .neighbors(v)
                .iter()
                .copied()
                .find(|&w| w != walk[k - 1] && w != walk[k + 1])
                .expect("spine vertex has an off-spine branch");
            t.branch_size(v, off)
        };
        let first = marks[0];
        let last = *marks.last().unwrap();
        let (p, q) = side_legs(t, walk[first], walk[first + 1]);
        let (p2, q2) = side_legs(t, walk[last], walk[last - 1]);

        let mut h = vec![p + q + 1];
        let mut r = Vec::new();
        let mut a_mid = Vec::new();
        let mut b_mid = Vec::new();
        for i in 0..links {
            r.push(marks[2 * i + 1] - marks[2 * i]);
            if i + 1 < links {
                let vin = marks[2 * i + 1];
                let uout = marks[2 * i + 2];
                let b = leg(vin) + 1;
                let a = leg(uout) + 1;
                let gap = uout - vin - 1;
                b_mid.push(b);
                a_mid.push(a);
                h.push(b + gap + a);
            }
        }
        h.push(p2 + q2 + 1);
        for a1 in [p + 1, q + 1] {
            for bn in [p2 + 1, q2 + 1] {
                let mut a = vec![a1];
                a.extend(&a_mid);
                let mut b = b_mid.clone();
                b.push(bn);
                out.insert(HnParams { h: h.clone(), r: r.clone(), a, b });
            }
        }
    }
    out.into_iter().collect()
}

pub fn extract_h_params(t: &Tree) -> Result<Vec<HParams>, ClassError> {
    match classify(t) {
        TreeClass::TypeH(ps) => Ok(ps),
        _ => Err(ClassError::NotTypeH),
    }
}

pub fn extract_ch_params(t: &Tree) -> Result<Vec<CHParams>, ClassError> {
    match classify(t) {
        TreeClass::CuttedH(ps) => Ok(ps),
        _ => Err(ClassError::NotCuttedH),
    }
}

pub fn extract_hn_params(t: &Tree) -> Result<Vec<HnParams>, ClassError> {
    match classify(t) {
        TreeClass::TypeHn(ps) => Ok(ps),
        _ => Err(ClassError::NotTypeHn),
    }
}
