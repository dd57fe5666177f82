//! Acceptance suite. Prints one PASS or FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use pathlike::canon::{canonical_code, free_trees, CanonicalCode};
use pathlike::classify::{classify, TreeClass};
use pathlike::config::{enumerate_configuration_trees, LinearConfiguration};
use pathlike::decision::{decide_tree, witness_is_valid, DecideOptions, Decision, Outcome, Route};
use pathlike::hchar::{decide_h, HVerdict};
use pathlike::hn::{decide_hn, HnVerdict};
use pathlike::lattice::enumerate_path_like_trees;
use pathlike::params::{CHParams, HParams, HnParams};
use pathlike::tree::Tree;
use pathlike::verify::{parse_golden, render_golden};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

const MAX_ORDER: usize = 12;
const HN_MAX_ORDER: usize = 14;
/// Four-path chains under the hypothesis start at order 16.
const HN4_MAX_ORDER: usize = 16;
const ROUND_TRIP_CASES: u32 = 1000;

struct Record {
    tree: Tree,
    class: TreeClass,
    member: bool,
    decision: Decision,
}

struct Context {
    oracle: BTreeMap<usize, BTreeSet<CanonicalCode>>,
    records: Vec<Record>,
    /// decide_hn Yes results: (params, witness).
    hn_yes: Vec<(HnParams, LinearConfiguration)>,
    /// Tuples checked per (paths, order bound).
    hn_checked: BTreeMap<(usize, usize), usize>,
}

impl Context {
    fn member(&self, t: &Tree) -> bool {
        self.oracle[&t.order()].contains(&canonical_code(t))
    }
}

type Checked = Result<String, String>;

fn build_context() -> Context {
    let oracle: BTreeMap<usize, BTreeSet<CanonicalCode>> =
        (1..=HN4_MAX_ORDER).map(|n| (n, enumerate_path_like_trees(n))).collect();
    let mut records = Vec::new();
    for n in 1..=MAX_ORDER {
        for (code, t) in free_trees(n) {
            let decision = decide_tree(&t, DecideOptions::default()).expect("every tree of order <= 12 is decidable");
            records.push(Record { class: classify(&t), member: oracle[&n].contains(&code), tree: t, decision });
        }
    }
    let mut hn_yes = Vec::new();
    let mut hn_checked = BTreeMap::new();
    for (paths, max_order) in [(3, HN_MAX_ORDER), (4, HN_MAX_ORDER), (4, HN4_MAX_ORDER)] {
        let params = hn_params(paths, max_order);
        hn_checked.insert((paths, max_order), params.len());
        for p in params {
            // tuples inside the smaller bound were decided on the first pass
            if max_order != HN_MAX_ORDER && p.order() <= HN_MAX_ORDER {
                continue;
            }
            if let Ok(HnVerdict::Yes { witness, .. }) = decide_hn(&p) {
                hn_yes.push((p, witness));
            }
        }
    }
    Context { oracle, records, hn_yes, hn_checked }
}

/// Every chain with `paths` horizontal paths, realized order at most
/// `max_order`, that satisfies the non-adjacency hypothesis.
fn hn_params(paths: usize, max_order: usize) -> Vec<HnParams> {
    fn lengths(k: usize, budget: usize, min: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for x in min..=budget {
            for mut rest in lengths(k - 1, budget - x, min) {
                rest.insert(0, x);
                out.push(rest);
            }
        }
        out
    }
    fn attachments(h: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
        let links = h.len() - 1;
        let mut out = vec![(Vec::new(), Vec::new())];
        for i in 0..links {
            let mut next = Vec::new();
            for (a, b) in &out {
                for ai in 2..h[i] {
                    for bi in 2..h[i + 1] {
                        let (mut a2, mut b2) = (a.clone(), b.clone());
                        a2.push(ai);
                        b2.push(bi);
                        next.push((a2, b2));
                    }
                }
            }
            out = next;
        }
        out
    }
    let mut out = Vec::new();
    for h in lengths(paths, max_order, 3) {
        let spare = max_order - h.iter().sum::<usize>();
        for extra in lengths(paths - 1, spare, 0) {
            let r: Vec<usize> = extra.iter().map(|e| e + 1).collect();
            for (a, b) in attachments(&h) {
                if let Ok(p) = HnParams::new(h.clone(), r.clone(), a, b) {
                    if p.satisfies_non_adjacency() {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn criterion1() -> Checked {
    let mut bad = Vec::new();
    let mut total = 0;
    for n in 1..=MAX_ORDER {
        let grid = enumerate_path_like_trees(n);
        total += grid.len();
        if grid != enumerate_configuration_trees(n) {
            bad.push(n);
        }
    }
    if bad.is_empty() {
        Ok(format!("grid and configuration sets equal for n=1..{MAX_ORDER} ({total} trees)"))
    } else {
        Err(format!("sets differ at orders {bad:?}"))
    }
}

fn biconditional(ctx: &Context, pick: impl Fn(&Record) -> bool) -> (usize, Vec<&Record>) {
    let chosen: Vec<&Record> = ctx.records.iter().filter(|r| pick(r)).collect();
    let bad = chosen.iter().copied().filter(|r| (r.decision.outcome == Outcome::Yes) != r.member).collect();
    (chosen.len(), bad)
}

fn describe(bad: &[&Record]) -> String {
    bad.iter()
        .take(3)
        .map(|r| format!("[{:?} member={}] {}", r.decision.outcome, r.member, r.tree.to_text().replace('\n', " ")))
        .collect::<Vec<_>>()
        .join("; ")
}

fn criterion2(ctx: &Context) -> Checked {
    let (n, bad) = biconditional(ctx, |r| matches!(r.class, TreeClass::TypeH(_)));
    if !bad.is_empty() {
        return Err(format!("{} of {n} trees disagree: {}", bad.len(), describe(&bad)));
    }
    let mut params = 0;
    for s in 3..=MAX_ORDER {
        for t in 3..=MAX_ORDER {
            for r in 1..=MAX_ORDER {
                if s + t + r - 1 > MAX_ORDER {
                    continue;
                }
                for a in 2..s {
                    for b in 2..t {
                        let p = HParams::new(s, t, r, a, b).expect("valid by construction");
                        let tree = p.realize();
                        let yes = matches!(decide_h(&tree).expect("type H"), HVerdict::Yes { .. });
                        params += 1;
                        if yes != ctx.member(&tree) {
                            return Err(format!("parameters {p} disagree with the oracle"));
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{n} trees and {params} parameter tuples agree"))
}

fn criterion3(ctx: &Context) -> Checked {
    let (n, bad) = biconditional(ctx, |r| matches!(r.class, TreeClass::CuttedH(_)));
    if !bad.is_empty() {
        return Err(format!("{} of {n} trees disagree: {}", bad.len(), describe(&bad)));
    }
    let mut params = 0;
    for s in 3..MAX_ORDER {
        for t in 1..=MAX_ORDER - s {
            for a in 2..s {
                let p = CHParams::new(s, t, a).expect("valid by construction");
                let tree = p.realize();
                let d = decide_tree(&tree, DecideOptions::default()).expect("cutted H is decidable");
                params += 1;
                if (d.outcome == Outcome::Yes) != ctx.member(&tree) {
                    return Err(format!("parameters {p} disagree with the oracle"));
                }
            }
        }
    }
    Ok(format!("{n} trees and {params} parameter tuples agree"))
}

fn criterion4(ctx: &Context) -> Checked {
    let mut checked = 0;
    for r in &ctx.records {
        if r.decision.route == Route::Oracle || r.decision.outcome != Outcome::Yes {
            continue;
        }
        checked += 1;
        let w = r.decision.witness.as_ref().ok_or("yes without witness")?;
        if !witness_is_valid(w, &r.tree) {
            return Err(format!("invalid witness for {}", r.tree.to_text().replace('\n', " ")));
        }
    }
    for (p, w) in &ctx.hn_yes {
        checked += 1;
        if !witness_is_valid(w, &p.realize()) {
            return Err(format!("invalid chain witness for {p}"));
        }
    }
    Ok(format!("{checked} witnesses proper and isomorphic to their trees"))
}

fn criterion5(ctx: &Context) -> Checked {
    let bad: Vec<&HnParams> = ctx.hn_yes.iter().map(|(p, _)| p).filter(|p| !ctx.member(&p.realize())).collect();
    if !bad.is_empty() {
        return Err(format!("{} yes answers not path-like, first {}", bad.len(), bad[0]));
    }
    let counts: Vec<String> =
        ctx.hn_checked.iter().map(|((k, m), v)| format!("n={k} order<={m}: {v} tuples")).collect();
    Ok(format!("{} yes answers all oracle-confirmed ({})", ctx.hn_yes.len(), counts.join(", ")))
}

fn criterion6(ctx: &Context) -> Checked {
    let chosen: Vec<&Record> = ctx
        .records
        .iter()
        .filter(|r| matches!(r.class, TreeClass::TypeHn(_)) && r.decision.outcome != Outcome::Unsupported)
        .collect();
    let members = chosen.iter().filter(|r| r.member).count();
    let missed: Vec<&Record> =
        chosen.iter().copied().filter(|r| r.member && r.decision.outcome != Outcome::Yes).collect();
    let false_yes = chosen.iter().filter(|r| !r.member && r.decision.outcome == Outcome::Yes).count();
    if missed.is_empty() && false_yes == 0 {
        return Ok(format!("{members} path-like chain trees all receive yes ({} covered trees)", chosen.len()));
    }
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("counterexamples");
    fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    for (k, r) in missed.iter().enumerate() {
        let path = dir.join(format!("type1-order{}-{k}.tree", r.tree.order()));
        fs::write(&path, r.tree.to_text()).map_err(|e| e.to_string())?;
    }
    Err(format!(
        "{} path-like chain trees without yes, {false_yes} false yes; counterexamples in {}",
        missed.len(),
        dir.display()
    ))
}

fn criterion7(ctx: &Context) -> Checked {
    let (n, bad) = biconditional(ctx, |r| r.tree.max_degree() == 4);
    if !bad.is_empty() {
        return Err(format!("{} of {n} trees disagree: {}", bad.len(), describe(&bad)));
    }
    if ctx.records.iter().any(|r| r.tree.max_degree() == 4 && r.decision.route != Route::Degree4) {
        return Err("a degree-4 tree was not decided by the degree-4 rule".into());
    }
    Ok(format!("{n} degree-4 trees agree"))
}

fn criterion8() -> Checked {
    let mut seen = 0;
    for n in 1..=MAX_ORDER {
        let trees = free_trees(n);
        for code in enumerate_path_like_trees(n).iter().chain(enumerate_configuration_trees(n).iter()) {
            let t = trees.get(code).ok_or("enumerated code is not a tree of that order")?;
            seen += 1;
            if t.max_degree() > 4 {
                return Err(format!("degree {} in {}", t.max_degree(), t.to_text().replace('\n', " ")));
            }
        }
    }
    Ok(format!("{seen} enumerated trees have maximum degree <= 4"))
}

fn criterion9() -> Checked {
    let committed = fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/golden_counts.txt"))
        .map_err(|e| e.to_string())?;
    let golden = parse_golden(&committed).map_err(|e| e.to_string())?;
    let counts_with = |threads: usize| -> String {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
        pool.install(|| {
            let counts: BTreeMap<usize, usize> =
                (4..=MAX_ORDER).map(|n| (n, enumerate_path_like_trees(n).len())).collect();
            render_golden(&counts)
        })
    };
    let single = counts_with(1);
    let multi = counts_with(4);
    let again = counts_with(4);
    if single != multi || multi != again {
        return Err("counts differ between runs or thread counts".into());
    }
    if single != render_golden(&golden) {
        return Err(format!("computed counts differ from the committed file:\n{single}"));
    }
    Ok(format!("counts for n=4..{MAX_ORDER} match the committed file under 1 and 4 threads"))
}

fn prufer_tree(n: usize, seq: &[usize]) -> Tree {
    let mut degree = vec![1usize; n + 1];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::new();
    for &x in seq {
        let leaf = (1..=n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, x));
        degree[leaf] = 0;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Tree::from_edges(n, &edges).expect("Prufer sequences decode to trees")
}

fn tree_strategy() -> impl Strategy<Value = (Tree, Vec<usize>, bool)> {
    (2usize..40)
        .prop_flat_map(|n| {
            (Just(n), prop::collection::vec(1..=n, n - 2), prop::collection::vec(any::<usize>(), n - 1), any::<bool>())
        })
        .prop_map(|(n, seq, keys, noise)| (prufer_tree(n, &seq), keys, noise))
}

fn witness_strategy() -> impl Strategy<Value = LinearConfiguration> {
    prop::collection::vec(1usize..9, 1..7)
        .prop_flat_map(|lengths| {
            let picks = prop::collection::vec(any::<prop::sample::Index>(), lengths.len() - 1);
            (Just(lengths), picks)
        })
        .prop_map(|(lengths, picks)| {
            let pairs: Vec<(usize, usize)> = picks
                .iter()
                .enumerate()
                .map(|(l, ix)| {
                    let j = 1 + ix.index(lengths[l].min(lengths[l + 1]));
                    (lengths[l] - j + 1, j)
                })
                .collect();
            LinearConfiguration::from_pairs(lengths, &pairs).expect("distance condition holds by construction")
        })
}

fn criterion10() -> Checked {
    let config = Config { cases: ROUND_TRIP_CASES, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(
        config.clone(),
        proptest::test_runner::TestRng::deterministic_rng(config.rng_algorithm),
    );
    runner
        .run(&tree_strategy(), |(t, keys, noise)| {
            let canonical = t.to_text();
            prop_assert_eq!(&Tree::parse(&canonical).unwrap(), &t);
            // same content with shuffled edges, swapped ends and comments
            let mut edges: Vec<_> = t.edges().into_iter().zip(keys).collect();
            edges.sort_by_key(|&(_, k)| k);
            let mut text = format!("# tree\n{}\n", t.order());
            for ((u, v), k) in edges {
                let (x, y) = if k % 2 == 0 { (u, v) } else { (v, u) };
                text.push_str(&if noise { format!("  {x}\t{y}  \n\n") } else { format!("{x} {y}\n") });
            }
            let parsed = Tree::parse(&text).unwrap();
            prop_assert_eq!(parsed.to_text(), canonical);
            prop_assert_eq!(canonical_code(&parsed), canonical_code(&t));
            Ok(())
        })
        .map_err(|e| format!("tree round trip: {e}"))?;
    let mut runner = TestRunner::new_with_rng(
        config.clone(),
        proptest::test_runner::TestRng::deterministic_rng(config.rng_algorithm),
    );
    runner
        .run(&witness_strategy(), |w| {
            let text = w.to_witness_text();
            let back = LinearConfiguration::parse_witness(&text).unwrap();
            prop_assert_eq!(&back, &w);
            prop_assert_eq!(back.to_witness_text(), text);
            Ok(())
        })
        .map_err(|e| format!("witness round trip: {e}"))?;
    Ok(format!("{ROUND_TRIP_CASES} trees and {ROUND_TRIP_CASES} witnesses round-trip"))
}

type Criterion<'a> = (u32, &'static str, Box<dyn Fn() -> Checked + 'a>);

fn main() -> ExitCode {
    let start = Instant::now();
    let ctx = build_context();
    println!("sweep built in {:.1}s", start.elapsed().as_secs_f64());
    let criteria: Vec<Criterion> = vec![
        (1, "oracle self-consistency", Box::new(criterion1)),
        (2, "type-H characterization", Box::new(|| criterion2(&ctx))),
        (3, "cutted-H characterization", Box::new(|| criterion3(&ctx))),
        (4, "witness soundness", Box::new(|| criterion4(&ctx))),
        (5, "chain sufficiency", Box::new(|| criterion5(&ctx))),
        (6, "chain necessity audit", Box::new(|| criterion6(&ctx))),
        (7, "degree-4 lemma", Box::new(|| criterion7(&ctx))),
        (8, "maximum degree", Box::new(criterion8)),
        (9, "golden counts", Box::new(criterion9)),
        (10, "round trips", Box::new(criterion10)),
    ];
    let mut failed = 0;
    for (k, name, check) in criteria {
        let t = Instant::now();
        let res = check();
        let secs = t.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {k} ({name}): PASS [{secs:.1}s] {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {k} ({name}): FAIL [{secs:.1}s] {detail}");
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
