//! Undirected labeled trees with 1-based vertex ids and the line-based tree
//! file format.
//!
//! The text format is:
//!
//! ```text
//! # optional comment lines
//! 4
//! 1 2
//! 1 3
//! 1 4
//! ```
//!
//! The first data line holds the order `n`; exactly `n - 1` edge lines
//! follow. Serialization emits edges as `u v` with `u < v`, sorted
//! lexicographically.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Vertex id in `1..=order`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: vertex id {id} out of range 1..={order}")]
    IdOutOfRange { line: usize, id: usize, order: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: edge {u} {v} closes a cycle")]
    Cycle { line: usize, u: usize, v: usize },
    #[error("line {line}: edge set is disconnected ({found} edges for order {order})")]
    Disconnected { line: usize, found: usize, order: usize },
    #[error("line {line}: expected exactly {expected} edges, found more")]
    TooManyEdges { line: usize, expected: usize },
    #[error("missing order line")]
    MissingOrder,
}

/// A tree on vertices `1..=order`.
///
/// Adjacency lists are kept sorted so that derived equality is equality of
/// labeled trees.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adj: Vec<Vec<Vertex>>,
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tree({}; {:?})", self.order(), self.edges())
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }
    /// Returns false when `a` and `b` were already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

impl Tree {
    /// Builds a tree from 1-based edges. Edge positions are reported as
    /// 1-based "lines" in errors.
    pub fn from_edges(order: usize, edges: &[(Vertex, Vertex)]) -> Result<Tree, TreeError> {
        let numbered: Vec<_> = edges.iter().enumerate().map(|(k, &e)| (k + 1, e)).collect();
        Self::build(order, &numbered, edges.len())
    }

    fn build(order: usize, edges: &[(usize, (Vertex, Vertex))], last_line: usize) -> Result<Tree, TreeError> {
        if order == 0 {
            return Err(TreeError::Malformed { line: 1, message: "order must be positive".into() });
        }
        let mut adj = vec![Vec::new(); order];
        let mut seen = BTreeSet::new();
        let mut uf = UnionFind::new(order);
        for (count, &(line, (u, v))) in edges.iter().enumerate() {
            if count >= order - 1 {
                return Err(TreeError::TooManyEdges { line, expected: order - 1 });
            }
            for id in [u, v] {
                if id == 0 || id > order {
                    return Err(TreeError::IdOutOfRange { line, id, order });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop { line, vertex: u });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(TreeError::DuplicateEdge { line, u, v });
            }
            if !uf.union(u - 1, v - 1) {
                return Err(TreeError::Cycle { line, u, v });
            }
            adj[u - 1].push(v);
            adj[v - 1].push(u);
        }
        if edges.len() != order - 1 {
            return Err(TreeError::Disconnected { line: last_line, found: edges.len(), order });
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Tree { adj })
    }

    /// Parses the tree file format.
    pub fn parse(text: &str) -> Result<Tree, TreeError> {
        let mut order = None;
        let mut edges = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.trim();
            if content.is_empty() || content.starts_with('#') {
                continue;
            }
            last_line = line;
            let fields: Vec<&str> = content.split_whitespace().collect();
            let parse_num = |s: &str| {
                s.parse::<usize>().map_err(|_| TreeError::Malformed {
                    line,
                    message: format!("expected a non-negative integer, got {s:?}"),
                })
            };
            match order {
                None => {
                    if fields.len() != 1 {
                        return Err(TreeError::Malformed {
                            line,
                            message: "first data line must hold only the order".into(),
                        });
                    }
                    let n = parse_num(fields[0])?;
                    if n == 0 {
                        return Err(TreeError::Malformed { line, message: "order must be positive".into() });
                    }
                    order = Some(n);
                }
                Some(_) => {
                    if fields.len() != 2 {
                        return Err(TreeError::Malformed { line, message: "edge line must be \"u v\"".into() });
                    }
                    edges.push((line, (parse_num(fields[0])?, parse_num(fields[1])?)));
                }
            }
        }
        let order = order.ok_or(TreeError::MissingOrder)?;
        Self::build(order, &edges, last_line)
    }

    /// Serializes to the tree file format with sorted edges.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// The path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Tree {
        let edges: Vec<_> = (1..n).map(|v| (v, v + 1)).collect();
        Tree::from_edges(n, &edges).expect("path is a tree")
    }

    /// The star with center 1 and `leaves` leaves.
    pub fn star(leaves: usize) -> Tree {
        let edges: Vec<_> = (2..=leaves + 1).map(|v| (1, v)).collect();
        Tree::from_edges(leaves + 1, &edges).expect("star is a tree")
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.order().saturating_sub(1));
        for (i, nbrs) in self.adj.iter().enumerate() {
            let u = i + 1;
            out.extend(nbrs.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v - 1]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v - 1].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.order()
    }

    /// Vertices of the given degree, ascending.
    pub fn vertices_of_degree(&self, d: usize) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.degree(v) == d).collect()
    }

    /// Degree sequence sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut seq: Vec<_> = self.adj.iter().map(Vec::len).collect();
        seq.sort_unstable();
        seq
    }

    /// BFS parents from `root` (`parent[root] = 0`), indexed by vertex id - 1.
    pub(crate) fn parents_from(&self, root: Vertex) -> Vec<Vertex> {
        let mut parent = vec![usize::MAX; self.order()];
        parent[root - 1] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if parent[w - 1] == usize::MAX {
                    parent[w - 1] = u;
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    /// Distances from `root`, indexed by vertex id - 1.
    pub fn distances_from(&self, root: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        dist[root - 1] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if dist[w - 1] == usize::MAX {
                    dist[w - 1] = dist[u - 1] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// The unique path from `from` to `to`, both included.
    pub fn path_between(&self, from: Vertex, to: Vertex) -> Vec<Vertex> {
        let parent = self.parents_from(to);
        let mut out = vec![from];
        let mut cur = from;
        while cur != to {
            cur = parent[cur - 1];
            out.push(cur);
        }
        out
    }

    /// Number of vertices reachable from `start` without passing through
    /// `blocked`.
    pub fn branch_size(&self, blocked: Vertex, start: Vertex) -> usize {
        self.branch(blocked, start).len()
    }

    /// Vertices reachable from `start` without passing through `blocked`.
    pub fn branch(&self, blocked: Vertex, start: Vertex) -> Vec<Vertex> {
        let mut seen = vec![false; self.order()];
        seen[blocked - 1] = true;
        seen[start - 1] = true;
        let mut out = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in self.neighbors(u) {
                if !seen[w - 1] {
                    seen[w - 1] = true;
                    out.push(w);
                    stack.push(w);
                }
            }
        }
        out
    }

    /// Induced subtree on `keep`, relabeled to `1..=keep.len()` in the
    /// order given. Returns the subtree; `keep` must induce a connected set.
    pub fn induced(&self, keep: &[Vertex]) -> Tree {
        let mut index = vec![0usize; self.order() + 1];
        for (k, &v) in keep.iter().enumerate() {
            index[v] = k + 1;
        }
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .filter(|&(u, v)| index[u] != 0 && index[v] != 0)
            .map(|(u, v)| (index[u], index[v]))
            .collect();
        Tree::from_edges(keep.len(), &edges).expect("induced set must be connected")
    }

    /// Relabels vertex `v` as `perm[v - 1]`; `perm` must be a permutation of
    /// `1..=order`.
    pub fn relabel(&self, perm: &[Vertex]) -> Tree {
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u - 1], perm[v - 1])).collect();
        Tree::from_edges(self.order(), &edges).expect("relabeling preserves trees")
    }

    /// The tree obtained by hanging a new leaf `order + 1` off `at`.
    pub fn with_leaf(&self, at: Vertex) -> Tree {
        let mut edges = self.edges();
        edges.push((at, self.order() + 1));
        Tree::from_edges(self.order() + 1, &edges).expect("adding a leaf keeps a tree")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_smallest_tree() {
        let t = Tree::parse("2\n1 2").unwrap();
        assert_eq!(t.order(), 2);
        assert_eq!(t.edges(), vec![(1, 2)]);
    }

    #[test]
    fn parses_star_with_comments() {
        let t = Tree::parse("# star\n4\n1 2\n\n# more\n1 3\n1 4\n").unwrap();
        assert_eq!(t, Tree::star(3));
        assert_eq!(t.degree(1), 3);
    }

    #[test]
    fn single_vertex_tree() {
        let t = Tree::parse("1\n").unwrap();
        assert_eq!(t.order(), 1);
        assert!(t.edges().is_empty());
        assert_eq!(t.to_text(), "1\n");
    }

    #[test]
    fn rejects_duplicate_edge() {
        assert_eq!(Tree::parse("3\n1 2\n1 2"), Err(TreeError::DuplicateEdge { line: 3, u: 1, v: 2 }));
    }

    #[test]
    fn rejects_cycle_and_range_and_loops() {
        assert!(matches!(Tree::parse("4\n1 2\n2 3\n3 1"), Err(TreeError::Cycle { line: 4, .. })));
        assert_eq!(Tree::parse("3\n1 2\n2 7"), Err(TreeError::IdOutOfRange { line: 3, id: 7, order: 3 }));
        assert_eq!(Tree::parse("3\n1 1\n2 3"), Err(TreeError::SelfLoop { line: 2, vertex: 1 }));
    }

    #[test]
    fn rejects_malformed_and_disconnected() {
        assert!(matches!(Tree::parse("3\n1 2 3\n2 3"), Err(TreeError::Malformed { line: 2, .. })));
        assert!(matches!(Tree::parse("3\n1 x"), Err(TreeError::Malformed { line: 2, .. })));
        assert!(matches!(Tree::parse("4\n1 2\n3 4"), Err(TreeError::Disconnected { line: 3, found: 2, order: 4 })));
        assert!(matches!(Tree::parse("3\n1 2\n2 3\n1 3"), Err(TreeError::TooManyEdges { line: 4, .. })));
        assert_eq!(Tree::parse("# nothing\n"), Err(TreeError::MissingOrder));
    }

    #[test]
    fn serializes_sorted() {
        let t = Tree::from_edges(4, &[(4, 3), (2, 1), (3, 1)]).unwrap();
        assert_eq!(t.to_text(), "4\n1 2\n1 3\n3 4\n");
    }

    #[test]
    fn path_queries() {
        let t = Tree::path(5);
        assert_eq!(t.path_between(1, 4), vec![1, 2, 3, 4]);
        assert_eq!(t.distances_from(3), vec![2, 1, 0, 1, 2]);
        assert_eq!(t.branch_size(3, 4), 2);
        assert_eq!(t.degree_sequence(), vec![1, 1, 2, 2, 2]);
    }
}
