//! One entry point that routes a tree to the matching decision procedure.

use thiserror::Error;

use crate::canon::canonical_code;
use crate::classify::{classify, TreeClass};
use crate::config::{
    configuration_to_tree, grid_to_configuration, validate_configuration, ConfigStatus, LinearConfiguration,
};
use crate::degree4::{decide_degree4, Degree4Error, Degree4Options, Degree4Verdict, DEFAULT_MAX_ORDER};
use crate::hchar::{decide_ch_tree, decide_h, ChVerdict, HError, HVerdict};
use crate::hn::{decide_type1_tree, HnError, Type1Verdict};
use crate::lattice::path_like_catalog;
use crate::tree::Tree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecideError {
    #[error(transparent)]
    H(#[from] HError),
    #[error(transparent)]
    Hn(#[from] HnError),
    #[error(transparent)]
    Degree4(#[from] Degree4Error),
    #[error("order {order} exceeds the enumeration cap {cap}")]
    OracleCap { order: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Path,
    CuttedH,
    TypeH,
    TypeHn,
    Degree4,
    Oracle,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::Path => "path",
            Route::CuttedH => "cutted-h",
            Route::TypeH => "type-h",
            Route::TypeHn => "type-hn",
            Route::Degree4 => "degree-4",
            Route::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Yes,
    No,
    /// The chain criterion does not cover the tree.
    Unsupported,
    /// Chain certificates exist but no witness could be glued from them.
    Unassembled,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub route: Route,
    pub outcome: Outcome,
    pub witness: Option<LinearConfiguration>,
    pub explain: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    /// Answer by lattice enumeration regardless of class.
    pub oracle: bool,
    /// Restrict the degree-4 rule to a single degree-4 vertex.
    pub strict: bool,
    pub oracle_cap: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions { oracle: false, strict: false, oracle_cap: DEFAULT_MAX_ORDER }
    }
}

fn yes(route: Route, witness: LinearConfiguration, explain: Vec<String>) -> Decision {
    Decision { route, outcome: Outcome::Yes, witness: Some(witness), explain }
}

fn no(route: Route, explain: Vec<String>) -> Decision {
    Decision { route, outcome: Outcome::No, witness: None, explain }
}

/// Membership by lattice enumeration, with a witness when the tree is a member.
pub fn decide_by_oracle(t: &Tree, cap: usize) -> Result<Decision, DecideError> {
    if t.order() > cap {
        return Err(DecideError::OracleCap { order: t.order(), cap });
    }
    let catalog = path_like_catalog(t.order());
    Ok(match catalog.get(&canonical_code(t)) {
        Some((c, tc)) => {
            let explain = vec![
                "kind=oracle".to_string(),
                format!("composition={:?}", c.parts()),
                format!("columns={:?}", tc.columns),
            ];
            yes(Route::Oracle, grid_to_configuration(c, tc).normalized(), explain)
        }
        None => no(Route::Oracle, vec!["kind=oracle".to_string()]),
    })
}

pub fn decide_tree(t: &Tree, opts: DecideOptions) -> Result<Decision, DecideError> {
    if opts.oracle {
        return decide_by_oracle(t, opts.oracle_cap);
    }
    match classify(t) {
        TreeClass::Path => Ok(yes(Route::Path, LinearConfiguration::single(t.order()), vec!["kind=path".into()])),
        TreeClass::CuttedH(_) => Ok(match decide_ch_tree(t)? {
            ChVerdict::Yes { params, certificate, witness } => {
                let mut ex = vec![format!("params={params}")];
                ex.extend(certificate.explain());
                yes(Route::CuttedH, witness, ex)
            }
            ChVerdict::No => no(Route::CuttedH, vec!["kind=cutted-h".into()]),
        }),
        TreeClass::TypeH(_) => Ok(match decide_h(t)? {
            HVerdict::Yes { params, certificate, witness } => {
                let mut ex = vec![format!("params={params}")];
                ex.extend(certificate.explain());
                yes(Route::TypeH, witness, ex)
            }
            HVerdict::No => no(Route::TypeH, vec!["kind=type-h".into()]),
        }),
        TreeClass::TypeHn(_) => Ok(match decide_type1_tree(t)? {
            Type1Verdict::Yes { params, certificate, witness } => {
                let mut ex = vec![format!("params={params}")];
                ex.extend(certificate.explain());
                yes(Route::TypeHn, witness, ex)
            }
            Type1Verdict::NoCertificateFound => no(Route::TypeHn, vec!["kind=type-hn".into()]),
            Type1Verdict::Unassembled { params, certificate } => {
                let mut explain = vec![format!("params={params}")];
                explain.extend(certificate.explain());
                Decision { route: Route::TypeHn, outcome: Outcome::Unassembled, witness: None, explain }
            }
            Type1Verdict::Unsupported => Decision {
                route: Route::TypeHn,
                outcome: Outcome::Unsupported,
                witness: None,
                explain: vec!["kind=type-hn".into(), "adjacent degree-3 vertices on a horizontal path".into()],
            },
        }),
        TreeClass::HasDegree4 => {
            let d4 = Degree4Options { strict: opts.strict, max_order: opts.oracle_cap };
            Ok(match decide_degree4(t, d4)? {
                Degree4Verdict::Yes { vertex, halves, witness } => {
                    let ex = vec![
                        "kind=degree-4".to_string(),
                        format!("vertex={vertex}"),
                        format!("pairing={:?}|{:?}", halves[0].neighbors, halves[1].neighbors),
                    ];
                    yes(Route::Degree4, witness, ex)
                }
                Degree4Verdict::No { vertex } => {
                    no(Route::Degree4, vec!["kind=degree-4".into(), format!("vertex={vertex}")])
                }
            })
        }
        TreeClass::OutOfScope => decide_by_oracle(t, opts.oracle_cap),
    }
}

/// True when `w` is a proper configuration of a tree isomorphic to `t`.
pub fn witness_is_valid(w: &LinearConfiguration, t: &Tree) -> bool {
    validate_configuration(w) == ConfigStatus::Proper
        && configuration_to_tree(w).map(|u| crate::canon::are_isomorphic(&u, t)).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::HParams;

    #[test]
    fn routes() {
        let d = decide_tree(&Tree::path(4), DecideOptions::default()).unwrap();
        assert_eq!((d.route, d.outcome), (Route::Path, Outcome::Yes));
        let d = decide_tree(&Tree::star(3), DecideOptions::default()).unwrap();
        assert_eq!((d.route, d.outcome), (Route::CuttedH, Outcome::No));
        let h = HParams::new(3, 3, 1, 2, 2).unwrap().realize();
        let d = decide_tree(&h, DecideOptions::default()).unwrap();
        assert_eq!((d.route, d.outcome), (Route::TypeH, Outcome::Yes));
        assert!(d.explain.iter().any(|l| l == "kind=bridge"));
        assert!(witness_is_valid(d.witness.as_ref().unwrap(), &h));
        let d = decide_tree(&Tree::star(4), DecideOptions::default()).unwrap();
        assert_eq!((d.route, d.outcome), (Route::Degree4, Outcome::No));
    }

    #[test]
    fn oracle_route_agrees() {
        let h = HParams::new(3, 3, 1, 2, 2).unwrap().realize();
        let opts = DecideOptions { oracle: true, ..Default::default() };
        let d = decide_tree(&h, opts).unwrap();
        assert_eq!((d.route, d.outcome), (Route::Oracle, Outcome::Yes));
        assert!(witness_is_valid(d.witness.as_ref().unwrap(), &h));
        let capped = DecideOptions { oracle: true, oracle_cap: 5, ..Default::default() };
        assert_eq!(decide_tree(&h, capped), Err(DecideError::OracleCap { order: 6, cap: 5 }));
    }
}
