//! Cross-checks of the decision procedures against lattice enumeration.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::canon::free_trees;
use crate::config::enumerate_configuration_trees;
use crate::decision::{decide_tree, witness_is_valid, DecideOptions, Outcome, Route};
use crate::lattice::enumerate_path_like_trees;
use crate::tree::Tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum DiscrepancyKind {
    /// Grid and configuration enumerations disagree.
    Enumeration,
    /// A member of an enumeration has a vertex of degree above 4.
    MaxDegree,
    /// A decision differs from oracle membership.
    Verdict,
    /// A witness is not a proper configuration of its tree.
    Witness,
    /// A decision procedure failed.
    Error,
    /// A count differs from the golden file.
    Golden,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub order: usize,
    pub kind: DiscrepancyKind,
    pub route: Option<Route>,
    pub tree: Option<Tree>,
    pub detail: String,
}

impl Discrepancy {
    /// A shell command reproducing the decision, when a tree is involved.
    pub fn reproduction(&self) -> Option<String> {
        let t = self.tree.as_ref()?;
        let text = t.to_text().trim_end().replace('\n', "\\n");
        Some(format!("printf '{text}\\n' | pathlike decide - --explain"))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OrderSummary {
    pub order: usize,
    pub trees: usize,
    pub path_like: usize,
    /// Trees checked per route.
    pub checked: BTreeMap<&'static str, usize>,
    pub unsupported: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleReport {
    pub orders: Vec<OrderSummary>,
    pub discrepancies: Vec<Discrepancy>,
}

impl OracleReport {
    pub fn is_clean(&self) -> bool {
        self.discrepancies.is_empty()
    }

    pub fn counts(&self) -> BTreeMap<usize, usize> {
        self.orders.iter().map(|o| (o.order, o.path_like)).collect()
    }

    /// Adds a discrepancy for every order whose count differs from `golden`.
    pub fn compare_golden(&mut self, golden: &BTreeMap<usize, usize>) {
        let counts = self.counts();
        for (&n, &want) in golden {
            if let Some(&got) = counts.get(&n) {
                if got != want {
                    self.discrepancies.push(Discrepancy {
                        order: n,
                        kind: DiscrepancyKind::Golden,
                        route: None,
                        tree: None,
                        detail: format!("expected {want} path-like trees, found {got}"),
                    });
                }
            }
        }
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for o in &self.orders {
            let routes: Vec<String> = o.checked.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(
                out,
                "order {}: trees={} path-like={} checked[{}] unsupported={}",
                o.order,
                o.trees,
                o.path_like,
                routes.join(" "),
                o.unsupported
            );
        }
        for d in &self.discrepancies {
            let route = d.route.map(|r| r.name()).unwrap_or("-");
            let _ = writeln!(out, "discrepancy order={} kind={:?} route={} {}", d.order, d.kind, route, d.detail);
            if let Some(cmd) = d.reproduction() {
                let _ = writeln!(out, "  reproduce: {cmd}");
            }
        }
        let _ = writeln!(out, "{} discrepancies", self.discrepancies.len());
        out
    }
}

fn check_tree(n: usize, t: &Tree, member: bool, summary: &mut OrderSummary) -> Option<Discrepancy> {
    let opts = DecideOptions { oracle_cap: n.max(DecideOptions::default().oracle_cap), ..Default::default() };
    let found = |kind, route, detail: String| Discrepancy { order: n, kind, route, tree: Some(t.clone()), detail };
    let d = match decide_tree(t, opts) {
        Ok(d) => d,
        Err(e) => return Some(found(DiscrepancyKind::Error, None, e.to_string())),
    };
    if d.route == Route::Oracle {
        return None;
    }
    *summary.checked.entry(d.route.name()).or_default() += 1;
    match d.outcome {
        Outcome::Unsupported => {
            summary.unsupported += 1;
            None
        }
        Outcome::Unassembled => {
            Some(found(DiscrepancyKind::Witness, Some(d.route), "certificate without witness".into()))
        }
        Outcome::Yes if !member => {
            Some(found(DiscrepancyKind::Verdict, Some(d.route), "decided yes, oracle says no".into()))
        }
        Outcome::No if member => {
            Some(found(DiscrepancyKind::Verdict, Some(d.route), "decided no, oracle says yes".into()))
        }
        Outcome::Yes => {
            let w = d.witness.as_ref().expect("yes carries a witness");
            (!witness_is_valid(w, t)).then(|| found(DiscrepancyKind::Witness, Some(d.route), w.to_witness_text()))
        }
        Outcome::No => None,
    }
}

/// Checks one order: enumeration agreement, the degree bound and every
/// routed decision.
pub fn check_order(n: usize) -> (OrderSummary, Vec<Discrepancy>) {
    let grid = enumerate_path_like_trees(n);
    let configs = enumerate_configuration_trees(n);
    let trees = free_trees(n);
    let mut found = Vec::new();
    if grid != configs {
        let only_grid = grid.difference(&configs).count();
        let only_cfg = configs.difference(&grid).count();
        found.push(Discrepancy {
            order: n,
            kind: DiscrepancyKind::Enumeration,
            route: None,
            tree: None,
            detail: format!("{only_grid} trees only from grids, {only_cfg} only from configurations"),
        });
    }
    for code in grid.iter().chain(configs.iter()) {
        match trees.get(code) {
            Some(t) if t.max_degree() <= 4 => {}
            other => found.push(Discrepancy {
                order: n,
                kind: DiscrepancyKind::MaxDegree,
                route: None,
                tree: other.cloned(),
                detail: format!("enumerated tree {code:?} breaks the degree bound"),
            }),
        }
    }
    let list: Vec<(&Tree, bool)> = trees.iter().map(|(c, t)| (t, grid.contains(c))).collect();
    let per_tree: Vec<(OrderSummary, Option<Discrepancy>)> = list
        .par_iter()
        .map(|&(t, member)| {
            let mut s = OrderSummary::default();
            let d = check_tree(n, t, member, &mut s);
            (s, d)
        })
        .collect();
    let mut summary = OrderSummary { order: n, trees: trees.len(), path_like: grid.len(), ..Default::default() };
    for (s, d) in per_tree {
        for (k, v) in s.checked {
            *summary.checked.entry(k).or_default() += v;
        }
        summary.unsupported += s.unsupported;
        found.extend(d);
    }
    (summary, found)
}

pub fn oracle_check(max_order: usize) -> OracleReport {
    let mut report = OracleReport::default();
    for n in 1..=max_order {
        let (s, d) = check_order(n);
        report.orders.push(s);
        report.discrepancies.extend(d);
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("golden file line {line}: {message}")]
pub struct GoldenError {
    pub line: usize,
    pub message: String,
}

/// Parses lines of the form `order count`; `#` starts a comment.
pub fn parse_golden(text: &str) -> Result<BTreeMap<usize, usize>, GoldenError> {
    let mut out = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: &str| GoldenError { line: k + 1, message: message.to_string() };
        let nums: Vec<usize> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| err("expected two non-negative integers"))?;
        let [n, c] = nums[..] else { return Err(err("expected two non-negative integers")) };
        if out.insert(n, c).is_some() {
            return Err(err("duplicate order"));
        }
    }
    Ok(out)
}

pub fn render_golden(counts: &BTreeMap<usize, usize>) -> String {
    counts.iter().map(|(n, c)| format!("{n} {c}\n")).collect()
}
