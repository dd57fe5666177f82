//! Divisibility criteria for type-H and cutted-H trees, with witness
//! builders that turn each certificate into a linear configuration.
//!
//! Every `*_certificates` function lists all certificates of one model in a
//! fixed order (side choices first, then divisors from large to small). The
//! `decide_*` functions return the first one.

use std::fmt;

use thiserror::Error;

use crate::canon::are_isomorphic;
use crate::classify::{extract_ch_params, extract_h_params, ClassError};
use crate::config::{configuration_to_tree, validate_configuration, ConfigStatus, CrossEdge, LinearConfiguration};
use crate::params::{CHParams, HParams};
use crate::tree::Tree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HError {
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error("certificate does not satisfy its criterion for {0}")]
    CertificateMismatch(String),
    #[error("witness for {0} does not reproduce the tree")]
    WitnessMismatch(String),
}

/// The six ways the connector between two consecutive degree-3 vertices can
/// sit in a linear configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VerticalKind {
    Parallel,
    Crossed,
    Bridge,
    Indirect,
    SemiIndirectMinus,
    SemiIndirectPlus,
}

impl VerticalKind {
    pub const ALL: [VerticalKind; 6] = [
        VerticalKind::Parallel,
        VerticalKind::Crossed,
        VerticalKind::Bridge,
        VerticalKind::Indirect,
        VerticalKind::SemiIndirectMinus,
        VerticalKind::SemiIndirectPlus,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            VerticalKind::Parallel => "parallel",
            VerticalKind::Crossed => "crossed",
            VerticalKind::Bridge => "bridge",
            VerticalKind::Indirect => "indirect",
            VerticalKind::SemiIndirectMinus => "semi-indirect-minus",
            VerticalKind::SemiIndirectPlus => "semi-indirect-plus",
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            VerticalKind::Parallel => "π",
            VerticalKind::Crossed => "γ",
            VerticalKind::Bridge => "β",
            VerticalKind::Indirect => "μ",
            VerticalKind::SemiIndirectMinus => "σ⁻",
            VerticalKind::SemiIndirectPlus => "σ⁺",
        }
    }

    /// The model of the same vertical path read from its other end.
    pub fn mirrored(self) -> VerticalKind {
        match self {
            VerticalKind::SemiIndirectMinus => VerticalKind::SemiIndirectPlus,
            VerticalKind::SemiIndirectPlus => VerticalKind::SemiIndirectMinus,
            k => k,
        }
    }
}

impl fmt::Display for VerticalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Horizontal divisors `d1` (first path side) and `d2` (second path side),
/// vertical divisor `delta`, optional side choices and the block counts used
/// by the witness: `x` blocks on the first side, `y` on the second and `m`
/// as in `(m - 1) * delta = ...` of the matching criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DivisorCertificate {
    pub kind: VerticalKind,
    pub case: Option<&'static str>,
    pub d1: usize,
    pub d2: usize,
    pub delta: usize,
    pub phi1: Option<usize>,
    pub phi2: Option<usize>,
    pub x: usize,
    pub y: usize,
    pub m: usize,
}

impl DivisorCertificate {
    /// `key=value` lines for `--explain`.
    pub fn explain(&self) -> Vec<String> {
        let mut out = vec![format!("kind={}", self.kind.name())];
        if let Some(c) = self.case {
            out.push(format!("case={c}"));
        }
        out.push(format!("d1={}", self.d1));
        out.push(format!("d2={}", self.d2));
        out.push(format!("delta={}", self.delta));
        if let Some(p) = self.phi1 {
            out.push(format!("phi1={p}"));
        }
        if let Some(p) = self.phi2 {
            out.push(format!("phi2={p}"));
        }
        out.push(format!("x={}", self.x));
        out.push(format!("y={}", self.y));
        out.push(format!("m={}", self.m));
        out
    }

    /// Re-checks the arithmetic of the criterion this certificate claims,
    /// independently of the search that produced it.
    pub fn check(&self, p: &HParams) -> bool {
        let (s, t, r, a, b) = (p.s, p.t, p.r, p.a, p.b);
        let c = *self;
        let min_a = (a - 1).min(s - a);
        let min_b = (b - 1).min(t - b);
        match c.kind {
            VerticalKind::Parallel => {
                c.d1 == a && c.d2 == b && a <= s - a && b <= t - b && c.x * a == s - a && c.y * b == t - b
            }
            VerticalKind::Crossed => {
                c.d1 == b + r
                    && c.d2 == a + r
                    && a + r <= t - b
                    && b + r <= s - a
                    && c.x * (a + r) == t - b
                    && c.y * (b + r) == s - a
            }
            VerticalKind::Bridge => {
                let common =
                    c.delta >= 1 && c.m >= 1 && (c.m - 1) * c.delta == r - 1 && c.x * c.d1 == s && c.y * c.d2 == t;
                let in_a = c.delta == a || c.delta == s - a + 1;
                let in_b = c.delta == b || c.delta == t - b + 1;
                common
                    && match c.case {
                        Some("i") => {
                            2 <= c.delta
                                && c.delta < c.d1.min(c.d2)
                                && c.d1 - c.delta == min_a
                                && c.d2 - c.delta == min_b
                        }
                        Some("ii") => c.d1 == s && c.d2 == t && in_a && in_b,
                        Some("iii") => c.d1 == s && in_a && c.d2 >= c.delta && c.d2 - c.delta == min_b,
                        Some("iv") => c.d2 == t && in_b && c.d1 >= c.delta && c.d1 - c.delta == min_a,
                        _ => false,
                    }
            }
            VerticalKind::Indirect => {
                let (Some(f1), Some(f2)) = (c.phi1, c.phi2) else { return false };
                c.d1.min(c.d2) >= MIN_HORIZONTAL_DIVISOR
                    && (f1 == a || f1 == s - a + 1)
                    && (f2 == b || f2 == t - b + 1)
                    && c.x * c.d1 == s - f1
                    && c.y * c.d2 == t - f2
                    && c.delta == c.d1 + f1 - 1
                    && c.delta == c.d2 + f2 - 1
                    && c.m >= 1
                    && r + 1 >= c.d1 + c.d2
                    && (c.m - 1) * c.delta == r + 1 - c.d1 - c.d2
            }
            VerticalKind::SemiIndirectMinus => {
                let Some(f1) = c.phi1 else { return false };
                c.d1.min(c.d2) >= MIN_HORIZONTAL_DIVISOR
                    && (f1 == a || f1 == s - a + 1)
                    && c.x * c.d1 == s - f1
                    && c.y * c.d2 == t
                    && c.delta == c.d1 + f1 - 1
                    && c.m >= 1
                    && r >= c.d1
                    && (c.m - 1) * c.delta == r - c.d1
                    && c.d2 > c.delta
                    && (c.d2 - c.delta == b - 1 || c.d2 - c.delta == t - b)
            }
            VerticalKind::SemiIndirectPlus => {
                let Some(f2) = c.phi2 else { return false };
                c.d1.min(c.d2) >= MIN_HORIZONTAL_DIVISOR
                    && (f2 == b || f2 == t - b + 1)
                    && c.x * c.d1 == s
                    && c.y * c.d2 == t - f2
                    && c.delta == c.d2 + f2 - 1
                    && c.m >= 1
                    && r >= c.d2
                    && (c.m - 1) * c.delta == r - c.d2
                    && c.d1 > c.delta
                    && (c.d1 - c.delta == a - 1 || c.d1 - c.delta == s - a)
            }
        }
    }
}

/// Smallest admissible horizontal divisor. A divisor of 1 stands for blocks
/// of single vertices, which only re-describe a configuration of another
/// model once `j = 1` edges are merged.
pub const MIN_HORIZONTAL_DIVISOR: usize = 2;

/// Divisors of `n >= 1`, largest first.
pub(crate) fn divisors(n: usize) -> Vec<usize> {
    (1..=n).rev().filter(|d| n.is_multiple_of(*d)).collect()
}

/// Horizontal divisor candidates of `n`, largest first.
fn horizontal_divisors(n: usize) -> Vec<usize> {
    divisors(n).into_iter().filter(|&d| d >= MIN_HORIZONTAL_DIVISOR).collect()
}

/// `d | n`, with every `d >= 1` dividing zero.
fn divides(d: usize, n: usize) -> bool {
    d >= 1 && n.is_multiple_of(d)
}

fn sides(len: usize, pos: usize) -> Vec<usize> {
    let mut out = vec![pos, len - pos + 1];
    out.dedup();
    out
}

fn base(kind: VerticalKind) -> DivisorCertificate {
    DivisorCertificate { kind, case: None, d1: 0, d2: 0, delta: 1, phi1: None, phi2: None, x: 0, y: 0, m: 1 }
}

pub fn parallel_certificates(p: &HParams) -> Vec<DivisorCertificate> {
    let (s, t, a, b) = (p.s, p.t, p.a, p.b);
    if a <= s - a && b <= t - b && divides(a, s) && divides(b, t) {
        vec![DivisorCertificate { d1: a, d2: b, x: (s - a) / a, y: (t - b) / b, ..base(VerticalKind::Parallel) }]
    } else {
        vec![]
    }
}

pub fn crossed_certificates(p: &HParams) -> Vec<DivisorCertificate> {
    let (s, t, r, a, b) = (p.s, p.t, p.r, p.a, p.b);
    if a + r <= t - b && b + r <= s - a && divides(a + r, t - b) && divides(b + r, s - a) {
        vec![DivisorCertificate {
            d1: b + r,
            d2: a + r,
            x: (t - b) / (a + r),
            y: (s - a) / (b + r),
            ..base(VerticalKind::Crossed)
        }]
    } else {
        vec![]
    }
}

/// Bridge certificates in case order (ii), (iii), (iv), (i).
pub fn bridge_certificates(p: &HParams) -> Vec<DivisorCertificate> {
    let (s, t, r, a, b) = (p.s, p.t, p.r, p.a, p.b);
    let min_a = (a - 1).min(s - a);
    let min_b = (b - 1).min(t - b);
    let cert = |case, d1: usize, d2: usize, delta: usize| DivisorCertificate {
        case: Some(case),
        d1,
        d2,
        delta,
        x: s / d1,
        y: t / d2,
        m: (r - 1) / delta + 1,
        ..base(VerticalKind::Bridge)
    };
    let mut out = Vec::new();
    let sa = sides(s, a);
    let tb = sides(t, b);
    for &delta in &sa {
        if tb.contains(&delta) && divides(delta, r - 1) {
            out.push(cert("ii", s, t, delta));
        }
    }
    for &delta in &sa {
        let d2 = delta + min_b;
        if divides(d2, t) && divides(delta, r - 1) {
            out.push(cert("iii", s, d2, delta));
        }
    }
    for &delta in &tb {
        let d1 = delta + min_a;
        if divides(d1, s) && divides(delta, r - 1) {
            out.push(cert("iv", d1, t, delta));
        }
    }
    for d1 in divisors(s) {
        if d1 <= min_a {
            continue;
        }
        let delta = d1 - min_a;
        let d2 = delta + min_b;
        if delta >= 2 && delta < d1.min(d2) && divides(d2, t) && divides(delta, r - 1) {
            out.push(cert("i", d1, d2, delta));
        }
    }
    out
}

pub fn indirect_certificates(p: &HParams) -> Vec<DivisorCertificate> {
    let (s, t, r) = (p.s, p.t, p.r);
    let mut out = Vec::new();
    for phi1 in sides(s, p.a) {
        for phi2 in sides(t, p.b) {
            for d1 in horizontal_divisors(s - phi1) {
                let delta = d1 + phi1 - 1;
                if delta + 1 < phi2 + MIN_HORIZONTAL_DIVISOR {
                    continue;
                }
                let d2 = delta + 1 - phi2;
                if !divides(d2, t - phi2) || r + 1 < d1 + d2 || !divides(delta, r + 1 - d1 - d2) {
                    continue;
                }
                out.push(DivisorCertificate {
                    d1,
                    d2,
                    delta,
                    phi1: Some(phi1),
                    phi2: Some(phi2),
                    x: (s - phi1) / d1,
                    y: (t - phi2) / d2,
                    m: (r + 1 - d1 - d2) / delta + 1,
                    ..base(VerticalKind::Indirect)
                });
            }
        }
    }
    out
}

/// Case (i) (`σ⁻`) certificates followed by case (ii) (`σ⁺`).
pub fn semi_indirect_certificates(p: &HParams) -> Vec<DivisorCertificate> {
    let mut out = semi_minus(p);
    out.extend(semi_minus(&p.swapped()).into_iter().map(|c| DivisorCertificate {
        kind: VerticalKind::SemiIndirectPlus,
        case: Some("ii"),
        d1: c.d2,
        d2: c.d1,
        phi1: None,
        phi2: c.phi1,
        x: c.y,
        y: c.x,
        ..c
    }));
    out
}

fn semi_minus(p: &HParams) -> Vec<DivisorCertificate> {
    let (s, t, r, b) = (p.s, p.t, p.r, p.b);
    let mut out = Vec::new();
    for phi1 in sides(s, p.a) {
        for d1 in horizontal_divisors(s - phi1) {
            let delta = d1 + phi1 - 1;
            if r < d1 || !divides(delta, r - d1) {
                continue;
            }
            for d2 in horizontal_divisors(t) {
                if d2 > delta && (d2 - delta == b - 1 || d2 - delta == t - b) {
                    out.push(DivisorCertificate {
                        case: Some("i"),
                        d1,
                        d2,
                        delta,
                        phi1: Some(phi1),
                        x: (s - phi1) / d1,
                        y: t / d2,
                        m: (r - d1) / delta + 1,
                        ..base(VerticalKind::SemiIndirectMinus)
                    });
                }
            }
        }
    }
    out
}

/// All certificates of one model.
pub fn certificates_of_kind(p: &HParams, kind: VerticalKind) -> Vec<DivisorCertificate> {
    match kind {
        VerticalKind::Parallel => parallel_certificates(p),
        VerticalKind::Crossed => crossed_certificates(p),
        VerticalKind::Bridge => bridge_certificates(p),
        VerticalKind::Indirect => indirect_certificates(p),
        VerticalKind::SemiIndirectMinus => semi_minus(p),
        VerticalKind::SemiIndirectPlus => {
            semi_indirect_certificates(p).into_iter().filter(|c| c.kind == VerticalKind::SemiIndirectPlus).collect()
        }
    }
}

pub fn decide_parallel(p: &HParams) -> Option<DivisorCertificate> {
    parallel_certificates(p).into_iter().next()
}

pub fn decide_crossed(p: &HParams) -> Option<DivisorCertificate> {
    crossed_certificates(p).into_iter().next()
}

pub fn decide_bridge(p: &HParams) -> Option<DivisorCertificate> {
    bridge_certificates(p).into_iter().next()
}

pub fn decide_indirect(p: &HParams) -> Option<DivisorCertificate> {
    indirect_certificates(p).into_iter().next()
}

pub fn decide_semi_indirect(p: &HParams) -> Option<DivisorCertificate> {
    semi_indirect_certificates(p).into_iter().next()
}

/// First certificate over the models in the order π, γ, β, μ, σ.
pub fn decide_h_params(p: &HParams) -> Option<DivisorCertificate> {
    decide_parallel(p)
        .or_else(|| decide_crossed(p))
        .or_else(|| decide_bridge(p))
        .or_else(|| decide_indirect(p))
        .or_else(|| decide_semi_indirect(p))
}

/// Joins path `l` to path `l + 1` at position `j` of path `l + 1`, which
/// fixes `i` through the distance condition.
fn link(lengths: &[usize], l: usize, j: usize) -> CrossEdge {
    CrossEdge { link: l, i: lengths[l - 1] + 1 - j, j }
}

/// Lengths plus the landing position `j` of each cross edge.
fn assemble(lengths: Vec<usize>, landings: &[usize]) -> LinearConfiguration {
    let edges = landings.iter().enumerate().map(|(k, &j)| link(&lengths, k + 1, j)).collect();
    LinearConfiguration::new(lengths, edges).expect("builder produces one edge per gap")
}

fn repeat(len: usize, times: usize) -> impl Iterator<Item = usize> {
    std::iter::repeat_n(len, times)
}

/// The configuration built from the certificate before `j = 1` edges are
/// merged away. Gluing in the chain construction works on this form.
pub(crate) fn raw_h_witness(p: &HParams, c: &DivisorCertificate) -> Result<LinearConfiguration, HError> {
    if !c.check(p) {
        return Err(HError::CertificateMismatch(p.to_string()));
    }
    let (a, b, r) = (p.a, p.b, p.r);
    let mut lengths = Vec::new();
    let mut landings = Vec::new();
    match c.kind {
        VerticalKind::Parallel => {
            lengths.extend(repeat(a, c.x));
            lengths.push(a + r - 1 + b);
            lengths.extend(repeat(b, c.y));
            landings.extend(repeat(a, c.x));
            landings.extend(repeat(b, c.y));
        }
        VerticalKind::Crossed => {
            lengths.extend(repeat(a + r, c.x));
            lengths.push(a + r - 1 + b);
            lengths.extend(repeat(b + r, c.y));
            landings.extend(repeat(a + r, c.x));
            landings.extend(repeat(b + r, c.y));
        }
        VerticalKind::Bridge => {
            lengths.extend(repeat(c.d1, c.x));
            lengths.extend(repeat(c.delta, c.m - 1));
            lengths.extend(repeat(c.d2, c.y));
            landings.extend(repeat(c.d1, c.x - 1));
            landings.extend(repeat(c.delta, c.m));
            landings.extend(repeat(c.d2, c.y - 1));
        }
        VerticalKind::Indirect => {
            let phi2 = c.phi2.expect("checked");
            lengths.extend(repeat(c.d1, c.x));
            lengths.extend(repeat(c.delta, c.m + 1));
            lengths.extend(repeat(c.d2, c.y));
            landings.extend(repeat(c.d1, c.x));
            landings.extend(repeat(c.delta, c.m));
            landings.push(c.delta + 1 - phi2);
            landings.extend(repeat(c.d2, c.y - 1));
        }
        VerticalKind::SemiIndirectMinus => {
            lengths.extend(repeat(c.d1, c.x));
            lengths.extend(repeat(c.delta, c.m));
            lengths.extend(repeat(c.d2, c.y));
            landings.extend(repeat(c.d1, c.x));
            landings.extend(repeat(c.delta, c.m));
            landings.extend(repeat(c.d2, c.y - 1));
        }
        VerticalKind::SemiIndirectPlus => {
            let mirrored = DivisorCertificate {
                kind: VerticalKind::SemiIndirectMinus,
                case: Some("i"),
                d1: c.d2,
                d2: c.d1,
                phi1: c.phi2,
                phi2: None,
                x: c.y,
                y: c.x,
                ..*c
            };
            return Ok(raw_h_witness(&p.swapped(), &mirrored)?.reversed());
        }
    }
    Ok(assemble(lengths, &landings))
}

/// Proper configuration realizing `p`, following the construction of the
/// certificate's criterion.
pub fn build_h_witness(p: &HParams, c: &DivisorCertificate) -> Result<LinearConfiguration, HError> {
    Ok(raw_h_witness(p, c)?.normalized())
}

fn confirm(lc: &LinearConfiguration, target: &Tree) -> bool {
    validate_configuration(lc) == ConfigStatus::Proper
        && configuration_to_tree(lc).map(|t| are_isomorphic(&t, target)).unwrap_or(false)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HVerdict {
    Yes { params: HParams, certificate: DivisorCertificate, witness: LinearConfiguration },
    No,
}

/// Decides a type-H tree over every parameterization and model.
pub fn decide_h(t: &Tree) -> Result<HVerdict, HError> {
    for p in extract_h_params(t)? {
        if let Some(c) = decide_h_params(&p) {
            let witness = build_h_witness(&p, &c)?;
            if !confirm(&witness, t) {
                return Err(HError::WitnessMismatch(p.to_string()));
            }
            return Ok(HVerdict::Yes { params: p, certificate: c, witness });
        }
    }
    Ok(HVerdict::No)
}

/// Certificate for a cutted-H tree: case (i) with divisors `alpha | s`,
/// `beta | t`; case (ii) with the pendant joined directly; case (iii) with
/// the pendant folded into blocks of `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChCertificate {
    Divisors { alpha: usize, beta: usize },
    Direct { q: usize },
    Folded { q: usize },
}

impl ChCertificate {
    pub fn case(&self) -> &'static str {
        match self {
            ChCertificate::Divisors { .. } => "i",
            ChCertificate::Direct { .. } => "ii",
            ChCertificate::Folded { .. } => "iii",
        }
    }

    pub fn explain(&self) -> Vec<String> {
        let mut out = vec!["kind=cutted-h".to_string(), format!("case={}", self.case())];
        match *self {
            ChCertificate::Divisors { alpha, beta } => {
                out.push(format!("alpha={alpha}"));
                out.push(format!("beta={beta}"));
            }
            ChCertificate::Direct { q } | ChCertificate::Folded { q } => out.push(format!("q={q}")),
        }
        out
    }

    pub fn check(&self, p: &CHParams) -> bool {
        let (s, t, a) = (p.s, p.t, p.a);
        match *self {
            ChCertificate::Divisors { alpha, beta } => {
                beta >= MIN_HORIZONTAL_DIVISOR
                    && divides(alpha, s)
                    && divides(beta, t)
                    && alpha == beta + a - 1
                    && s - a >= a - 1
            }
            ChCertificate::Direct { q } => (q == a || q == s - a + 1) && q == t,
            ChCertificate::Folded { q } => (q == a || q == s - a + 1) && divides(q, t),
        }
    }
}

/// All cutted-H certificates in case order (ii), (iii), (i).
pub fn ch_certificates(p: &CHParams) -> Vec<ChCertificate> {
    let (s, t, a) = (p.s, p.t, p.a);
    let mut out = Vec::new();
    for q in sides(s, a).into_iter().rev() {
        if q == t {
            out.push(ChCertificate::Direct { q });
        }
    }
    for q in sides(s, a) {
        if divides(q, t) {
            out.push(ChCertificate::Folded { q });
        }
    }
    if s - a >= a - 1 {
        for alpha in divisors(s) {
            if alpha + 1 >= a + MIN_HORIZONTAL_DIVISOR && divides(alpha + 1 - a, t) {
                out.push(ChCertificate::Divisors { alpha, beta: alpha + 1 - a });
            }
        }
    }
    out
}

pub fn decide_ch(p: &CHParams) -> Option<ChCertificate> {
    ch_certificates(p).into_iter().next()
}

pub fn build_ch_witness(p: &CHParams, c: &ChCertificate) -> Result<LinearConfiguration, HError> {
    if !c.check(p) {
        return Err(HError::CertificateMismatch(p.to_string()));
    }
    let (s, t) = (p.s, p.t);
    let lc = match *c {
        ChCertificate::Direct { q } => assemble(vec![s, t], &[q]),
        ChCertificate::Folded { q } => {
            let mut lengths = vec![s];
            lengths.extend(repeat(q, t / q));
            assemble(lengths, &vec![q; t / q])
        }
        ChCertificate::Divisors { alpha, beta } => {
            let (x, y) = (s / alpha, t / beta);
            let mut lengths: Vec<usize> = repeat(alpha, x).collect();
            lengths.extend(repeat(beta, y));
            let mut landings: Vec<usize> = repeat(alpha, x - 1).collect();
            landings.extend(repeat(beta, y));
            assemble(lengths, &landings)
        }
    };
    Ok(lc.normalized())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChVerdict {
    Yes { params: CHParams, certificate: ChCertificate, witness: LinearConfiguration },
    No,
}

pub fn decide_ch_tree(t: &Tree) -> Result<ChVerdict, HError> {
    for p in extract_ch_params(t)? {
        if let Some(c) = decide_ch(&p) {
            let witness = build_ch_witness(&p, &c)?;
            if !confirm(&witness, t) {
                return Err(HError::WitnessMismatch(p.to_string()));
            }
            return Ok(ChVerdict::Yes { params: p, certificate: c, witness });
        }
    }
    Ok(ChVerdict::No)
}
