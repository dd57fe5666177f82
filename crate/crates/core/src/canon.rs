//! Exact canonical forms for trees (center-rooted AHU encoding) and the
//! free-tree generator used by the verification sweeps.

use std::collections::BTreeMap;
use std::fmt;

use crate::tree::{Tree, Vertex};

/// A parenthesis string that identifies a tree up to isomorphism.
///
/// Codes of free trees and codes of vertex-rooted trees live in different
/// namespaces: a rooted code is prefixed with `r`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(String);

impl CanonicalCode {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// AHU code of `t` rooted at `root`: `(` + sorted child codes + `)`.
fn ahu(t: &Tree, root: Vertex) -> String {
    let parent = t.parents_from(root);
    // BFS order so children are finished before parents when reversed.
    let mut order = vec![root];
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &w in t.neighbors(u) {
            if w != parent[u - 1] {
                order.push(w);
            }
        }
    }
    let mut codes: Vec<Option<String>> = vec![None; t.order()];
    for &u in order.iter().rev() {
        let mut children: Vec<String> = t
            .neighbors(u)
            .iter()
            .filter(|&&w| w != parent[u - 1])
            .map(|&w| codes[w - 1].take().expect("child encoded first"))
            .collect();
        children.sort_unstable();
        let mut s = String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
        s.push('(');
        for c in children {
            s.push_str(&c);
        }
        s.push(')');
        codes[u - 1] = Some(s);
    }
    codes[root - 1].take().expect("root encoded")
}

/// The one or two centers of `t`.
pub fn centers(t: &Tree) -> Vec<Vertex> {
    let far = |from: Vertex| {
        let d = t.distances_from(from);
        (1..=t.order()).max_by_key(|&v| (d[v - 1], std::cmp::Reverse(v))).unwrap()
    };
    let a = far(1);
    let b = far(a);
    let diameter = t.path_between(a, b);
    let len = diameter.len() - 1;
    if len.is_multiple_of(2) {
        vec![diameter[len / 2]]
    } else {
        let mut c = vec![diameter[len / 2], diameter[len / 2 + 1]];
        c.sort_unstable();
        c
    }
}

/// Canonical code rooted at the center (the smaller code over two centers).
pub fn canonical_code(t: &Tree) -> CanonicalCode {
    let code = centers(t).into_iter().map(|c| ahu(t, c)).min().expect("a tree has a center");
    CanonicalCode(code)
}

/// Canonical code of `t` viewed as a tree rooted at `root`.
pub fn rooted_code(t: &Tree, root: Vertex) -> CanonicalCode {
    CanonicalCode(format!("r{}", ahu(t, root)))
}

pub fn are_isomorphic(t1: &Tree, t2: &Tree) -> bool {
    t1.order() == t2.order() && t1.degree_sequence() == t2.degree_sequence() && canonical_code(t1) == canonical_code(t2)
}

/// All free trees of order `n`, one representative per isomorphism class,
/// keyed by canonical code. Built by hanging a leaf on every vertex of every
/// tree of order `n - 1`.
pub fn free_trees(n: usize) -> BTreeMap<CanonicalCode, Tree> {
    let mut level = BTreeMap::new();
    if n == 0 {
        return level;
    }
    let t = Tree::path(1);
    level.insert(canonical_code(&t), t);
    for _ in 1..n {
        let mut next = BTreeMap::new();
        for t in level.values() {
            for v in t.vertices() {
                let grown = t.with_leaf(v);
                next.entry(canonical_code(&grown)).or_insert(grown);
            }
        }
        level = next;
    }
    level
}
