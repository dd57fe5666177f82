//! Trees with a vertex of degree 4.
//!
//! Removing a degree-4 vertex `v` leaves four components. The tree is
//! path-like exactly when the components can be split into two pairs such
//! that each pair, together with `v`, has a linear configuration starting
//! at `v`. The rooted condition is checked against the rooted lattice
//! enumeration, so the decision is exact up to the order cap.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::canon::{are_isomorphic, rooted_code, CanonicalCode};
use crate::config::{
    configuration_to_tree, grid_to_configuration, validate_configuration, ConfigStatus, CrossEdge, LinearConfiguration,
};
use crate::lattice::{enumerate_rooted, Composition, RootAnchor, TransformChoice};
use crate::tree::{Tree, Vertex};

pub const DEFAULT_MAX_ORDER: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Degree4Error {
    #[error("tree has no vertex of degree 4")]
    NoDegree4Vertex,
    #[error("tree has a vertex of degree {0}")]
    DegreeTooHigh(usize),
    #[error("tree has {0} vertices of degree 4; only one is supported in strict mode")]
    SeveralDegree4Vertices(usize),
    #[error("order {order} exceeds the cap {cap}")]
    OrderCap { order: usize, cap: usize },
    #[error("witness check failed: {0}")]
    WitnessMismatch(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Degree4Options {
    /// Refuse trees with more than one degree-4 vertex.
    pub strict: bool,
    pub max_order: usize,
}

impl Default for Degree4Options {
    fn default() -> Self {
        Degree4Options { strict: false, max_order: DEFAULT_MAX_ORDER }
    }
}

/// A half: `v`, two of its neighbours and everything behind them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Half {
    /// Neighbours of `v` whose components form the half.
    pub neighbors: [Vertex; 2],
    /// Configuration of the half whose first vertex is `v`.
    pub witness: LinearConfiguration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Degree4Verdict {
    Yes { vertex: Vertex, halves: [Half; 2], witness: LinearConfiguration },
    No { vertex: Vertex },
}

type RootedTable = BTreeMap<CanonicalCode, (Composition, TransformChoice)>;

fn rooted_table(n: usize) -> Arc<RootedTable> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<RootedTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("cache lock").get(&n) {
        return Arc::clone(t);
    }
    let table = Arc::new(enumerate_rooted(n, RootAnchor::FirstVertex));
    Arc::clone(cache.lock().expect("cache lock").entry(n).or_insert(table))
}

/// A configuration of `t` whose first vertex is `root`, if one exists.
pub fn rooted_configuration(t: &Tree, root: Vertex) -> Option<LinearConfiguration> {
    let table = rooted_table(t.order());
    let (c, tc) = table.get(&rooted_code(t, root))?;
    Some(grid_to_configuration(c, tc).normalized())
}

/// Joins `first` reversed and `second` so that the first vertex of each
/// becomes one shared vertex.
fn join_at_first_vertex(first: &LinearConfiguration, second: &LinearConfiguration) -> LinearConfiguration {
    let left = first.reversed();
    let (ll, le) = (left.lengths(), left.cross_edges());
    let (rl, re) = (second.lengths(), second.cross_edges());
    let m = ll.len();
    let mut lengths = ll[..m - 1].to_vec();
    lengths.push(ll[m - 1] + rl[0] - 1);
    lengths.extend_from_slice(&rl[1..]);
    let mut edges: Vec<CrossEdge> = le.to_vec();
    let shift = ll[m - 1] - 1;
    edges.extend(re.iter().enumerate().map(|(k, e)| CrossEdge {
        link: e.link + m - 1,
        i: if k == 0 { e.i + shift } else { e.i },
        j: e.j,
    }));
    LinearConfiguration::new(lengths, edges).expect("joined shapes are consistent")
}

const PAIRINGS: [[[usize; 2]; 2]; 3] = [[[0, 1], [2, 3]], [[0, 2], [1, 3]], [[0, 3], [1, 2]]];

pub fn decide_degree4(t: &Tree, opts: Degree4Options) -> Result<Degree4Verdict, Degree4Error> {
    let max = t.max_degree();
    if max > 4 {
        return Err(Degree4Error::DegreeTooHigh(max));
    }
    let hubs = t.vertices_of_degree(4);
    let Some(&v) = hubs.first() else {
        return Err(Degree4Error::NoDegree4Vertex);
    };
    if opts.strict && hubs.len() > 1 {
        return Err(Degree4Error::SeveralDegree4Vertices(hubs.len()));
    }
    if t.order() > opts.max_order {
        return Err(Degree4Error::OrderCap { order: t.order(), cap: opts.max_order });
    }
    let nb = t.neighbors(v).to_vec();
    let comps: Vec<Vec<Vertex>> = nb.iter().map(|&w| t.branch(v, w)).collect();
    for pairing in PAIRINGS {
        let mut halves = Vec::new();
        for pair in pairing {
            let mut keep = vec![v];
            keep.extend(&comps[pair[0]]);
            keep.extend(&comps[pair[1]]);
            let half = t.induced(&keep);
            match rooted_configuration(&half, 1) {
                Some(w) => halves.push(Half { neighbors: [nb[pair[0]], nb[pair[1]]], witness: w }),
                None => break,
            }
        }
        if halves.len() < 2 {
            continue;
        }
        let witness = join_at_first_vertex(&halves[0].witness, &halves[1].witness);
        let fits = configuration_to_tree(&witness).map(|w| are_isomorphic(&w, t)).unwrap_or(false);
        if validate_configuration(&witness) != ConfigStatus::Proper || !fits {
            return Err(Degree4Error::WitnessMismatch(witness.to_witness_text()));
        }
        let [h1, h2]: [Half; 2] = halves.try_into().expect("two halves");
        return Ok(Degree4Verdict::Yes { vertex: v, halves: [h1, h2], witness });
    }
    Ok(Degree4Verdict::No { vertex: v })
}
