//! Parameter tuples for the structured tree families and their realizations.

use std::fmt;

use thiserror::Error;

use crate::tree::Tree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("invalid parameters {0}: {1}")]
    Invalid(String, &'static str),
}

/// Two paths of orders `s` and `t` joined by a connector path of length `r`
/// between `u_a` and `v_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HParams {
    pub s: usize,
    pub t: usize,
    pub r: usize,
    pub a: usize,
    pub b: usize,
}

impl HParams {
    pub fn new(s: usize, t: usize, r: usize, a: usize, b: usize) -> Result<Self, ParamError> {
        let p = HParams { s, t, r, a, b };
        if !(1 < a && a < s) {
            return Err(ParamError::Invalid(p.to_string(), "need 1 < a < s"));
        }
        if !(1 < b && b < t) {
            return Err(ParamError::Invalid(p.to_string(), "need 1 < b < t"));
        }
        if r == 0 {
            return Err(ParamError::Invalid(p.to_string(), "need r >= 1"));
        }
        Ok(p)
    }

    pub fn order(&self) -> usize {
        self.s + self.t + self.r - 1
    }

    /// The same tree with the roles of the two horizontal paths exchanged.
    pub fn swapped(&self) -> HParams {
        HParams { s: self.t, t: self.s, r: self.r, a: self.b, b: self.a }
    }

    /// Vertices `u_1..u_s` are `1..=s`, `v_1..v_t` are `s+1..=s+t`, the
    /// connector interior `w_2..w_r` follows.
    pub fn realize(&self) -> Tree {
        let (s, t, r) = (self.s, self.t, self.r);
        let mut edges: Vec<(usize, usize)> = (1..s).map(|i| (i, i + 1)).collect();
        edges.extend((1..t).map(|i| (s + i, s + i + 1)));
        let mut chain = vec![self.a];
        chain.extend(s + t + 1..s + t + r);
        chain.push(s + self.b);
        edges.extend(chain.windows(2).map(|w| (w[0], w[1])));
        Tree::from_edges(self.order(), &edges).expect("H parameters realize a tree")
    }
}

impl fmt::Display for HParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{};{},{})", self.s, self.t, self.r, self.a, self.b)
    }
}

/// A spine of order `s` with a pendant path of order `t` hanging from `u_a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CHParams {
    pub s: usize,
    pub t: usize,
    pub a: usize,
}

impl CHParams {
    pub fn new(s: usize, t: usize, a: usize) -> Result<Self, ParamError> {
        let p = CHParams { s, t, a };
        if !(1 < a && a < s) {
            return Err(ParamError::Invalid(p.to_string(), "need 1 < a < s"));
        }
        if t == 0 {
            return Err(ParamError::Invalid(p.to_string(), "need t >= 1"));
        }
        Ok(p)
    }

    pub fn order(&self) -> usize {
        self.s + self.t
    }

    pub fn realize(&self) -> Tree {
        let (s, t) = (self.s, self.t);
        let mut edges: Vec<(usize, usize)> = (1..s).map(|i| (i, i + 1)).collect();
        edges.extend((1..t).map(|i| (s + i, s + i + 1)));
        edges.push((self.a, s + 1));
        Tree::from_edges(self.order(), &edges).expect("cH parameters realize a tree")
    }
}

impl fmt::Display for CHParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{})", self.s, self.t, self.a)
    }
}

/// A chain of horizontal paths `h_1..h_n` joined by vertical paths of
/// lengths `r_1..r_{n-1}`.
///
/// In horizontal path `i` (positions `1..=h_i`, left to right) vertical
/// path `i` leaves from position `h_i - a_i + 1`, i.e. `a_i` is the order of
/// the closed subpath from that vertex to the right end. Vertical path `i`
/// arrives in horizontal path `i + 1` at position `b_i`, the order of the
/// closed subpath to the left end.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HnParams {
    pub h: Vec<usize>,
    pub r: Vec<usize>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

impl HnParams {
    pub fn new(h: Vec<usize>, r: Vec<usize>, a: Vec<usize>, b: Vec<usize>) -> Result<Self, ParamError> {
        let p = HnParams { h, r, a, b };
        let n = p.h.len();
        if n < 2 {
            return Err(ParamError::Invalid(p.to_string(), "need at least two horizontal paths"));
        }
        if p.r.len() != n - 1 || p.a.len() != n - 1 || p.b.len() != n - 1 {
            return Err(ParamError::Invalid(p.to_string(), "sequence lengths disagree"));
        }
        if p.r.contains(&0) {
            return Err(ParamError::Invalid(p.to_string(), "vertical lengths must be >= 1"));
        }
        for i in 0..n {
            let left = if i > 0 { p.b[i - 1] } else { 0 };
            let right = if i + 1 < n { p.a[i] } else { 0 };
            let h = p.h[i];
            let interior = |x: usize| x == 0 || (1 < x && x < h);
            if !interior(left) || !interior(right) {
                return Err(ParamError::Invalid(p.to_string(), "attachments must be interior"));
            }
            if left > 0 && right > 0 && left + right > h {
                return Err(ParamError::Invalid(
                    p.to_string(),
                    "incoming attachment must lie left of the outgoing one",
                ));
            }
        }
        Ok(p)
    }

    /// Number of horizontal paths.
    pub fn len(&self) -> usize {
        self.h.len()
    }

    pub fn is_empty(&self) -> bool {
        self.h.is_empty()
    }

    pub fn order(&self) -> usize {
        self.h.iter().sum::<usize>() + self.r.iter().map(|r| r - 1).sum::<usize>()
    }

    /// True when no middle horizontal path has adjacent degree-3 vertices.
    pub fn satisfies_non_adjacency(&self) -> bool {
        (1..self.len() - 1).all(|i| self.b[i - 1] + self.a[i] < self.h[i])
    }

    /// The chain read from the other end.
    pub fn reversed(&self) -> HnParams {
        let rev = |v: &[usize]| v.iter().rev().copied().collect::<Vec<_>>();
        HnParams { h: rev(&self.h), r: rev(&self.r), a: rev(&self.b), b: rev(&self.a) }
    }

    /// Single-link chains are type-H trees.
    pub fn as_h_params(&self) -> Option<HParams> {
        (self.len() == 2).then(|| HParams {
            s: self.h[0],
            t: self.h[1],
            r: self.r[0],
            a: self.h[0] - self.a[0] + 1,
            b: self.b[0],
        })
    }

    /// Horizontal path `i` (1-based) occupies ids `offset+1..=offset+h_i`;
    /// vertical interiors follow all horizontal paths.
    pub fn realize(&self) -> Tree {
        let n = self.len();
        let mut offsets = vec![0; n];
        for i in 1..n {
            offsets[i] = offsets[i - 1] + self.h[i - 1];
        }
        let mut edges = Vec::new();
        for (&off, &h) in offsets.iter().zip(&self.h) {
            edges.extend((1..h).map(|k| (off + k, off + k + 1)));
        }
        let mut next = offsets[n - 1] + self.h[n - 1] + 1;
        for i in 0..n - 1 {
            let from = offsets[i] + self.h[i] - self.a[i] + 1;
            let to = offsets[i + 1] + self.b[i];
            let mut chain = vec![from];
            for _ in 1..self.r[i] {
                chain.push(next);
                next += 1;
            }
            chain.push(to);
            edges.extend(chain.windows(2).map(|w| (w[0], w[1])));
        }
        Tree::from_edges(self.order(), &edges).expect("H_n parameters realize a tree")
    }
}

impl fmt::Display for HnParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
        write!(f, "(H=[{}];R=[{}];A=[{}],B=[{}])", join(&self.h), join(&self.r), join(&self.a), join(&self.b))
    }
}
