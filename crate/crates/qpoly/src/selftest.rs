//! The acceptance suite: thirteen criteria exercising every computation
//! path against its oracle, runnable from the `acceptance` integration
//! test target or the CLI `selftest` subcommand. All tolerances are fixed
//! here; everything except the one float cross-check is exact.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bridges::{
    distinguishing_search, distinguishing_search_over, line_graph_identity_check,
    partition_function, tutte_polynomial, Comparator, Family,
};
use crate::derived::{
    basic_invariants, deck, independence, is_star_polynomial, monte_carlo_component_frequencies,
    rational_to_f64, reconstruct, reliability,
};
use crate::graph::format::decode_graph6;
use crate::graph::{
    complete, complete_bipartite, cycle, empty_graph, enumerate, iter_bits, path, random_graph,
    star, Graph, MultiGraph,
};
use crate::poly::BiPoly;
use crate::q::{
    closed_form, q_brute_force, q_join, q_recursive, q_split, universal_recursion,
    verify_q_normalizations, GraphFamily, QCache,
};
use crate::tw::q_treewidth_greedy;

pub const CRITERIA_COUNT: usize = 13;

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub number: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {:2} [{}] {}: {}",
            self.number,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

pub fn run_all() -> Vec<CriterionOutcome> {
    (1..=CRITERIA_COUNT).map(run_criterion).collect()
}

pub fn run_criterion(number: usize) -> CriterionOutcome {
    let (name, f): (&'static str, fn() -> Result<String, String>) = match number {
        1 => ("golden star polynomial", criterion_01),
        2 => ("closed forms vs oracle", criterion_02),
        3 => ("path closed form numerics", criterion_03),
        4 => ("cross-method equivalence", criterion_04),
        5 => ("tree census collisions", criterion_05),
        6 => ("distinguishing power", criterion_06),
        7 => ("partition function", criterion_07),
        8 => ("edge elimination bridge", criterion_08),
        9 => ("deck reconstruction", criterion_09),
        10 => ("reliability distribution", criterion_10),
        11 => ("invariant extraction", criterion_11),
        12 => ("universality", criterion_12),
        13 => ("infinite families", criterion_13),
        _ => panic!("criterion number out of range: {number}"),
    };
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(detail)) => CriterionOutcome {
            number,
            name,
            passed: true,
            detail,
        },
        Ok(Err(detail)) => CriterionOutcome {
            number,
            name,
            passed: false,
            detail,
        },
        Err(panic) => CriterionOutcome {
            number,
            name,
            passed: false,
            detail: format!(
                "panicked: {}",
                panic
                    .downcast_ref::<String>()
                    .map(String::as_str)
                    .or_else(|| panic.downcast_ref::<&str>().copied())
                    .unwrap_or("unknown")
            ),
        },
    }
}

/// Cached isomorphism-class census, shared across criteria.
fn census(n: usize) -> &'static [Graph] {
    static CELLS: [OnceLock<Vec<Graph>>; 9] = [const { OnceLock::new() }; 9];
    CELLS[n].get_or_init(|| enumerate::all_graphs_extended(n).expect("census within bounds"))
}

fn seeded_random_graphs(count: usize, min_n: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(min_n..=max_n);
            let p = [0.2, 0.35, 0.5][rng.gen_range(0..3)];
            random_graph(n, p, &mut rng)
        })
        .collect()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// The published star polynomial
/// `Q(K_{1,3}) = 1 + 4xy + 3x^2y + 3x^3y + x^4y + 3x^2y^2 + x^3y^3`.
pub fn golden_star_polynomial() -> BiPoly {
    [
        (0u32, 0u32, 1i64),
        (1, 1, 4),
        (2, 1, 3),
        (3, 1, 3),
        (4, 1, 1),
        (2, 2, 3),
        (3, 3, 1),
    ]
    .iter()
    .fold(BiPoly::zero(), |acc, &(i, j, c)| {
        &acc + &BiPoly::monomial(i, j, BigInt::from(c))
    })
}

fn criterion_01() -> Result<String, String> {
    let golden = golden_star_polynomial();
    let brute = q_brute_force(&star(3)).map_err(|e| e.to_string())?;
    ensure(brute == golden, format!("brute force got {brute}"))?;
    let cache = QCache::new();
    ensure(
        q_recursive(&star(3), &cache) == golden,
        "recursion disagrees on K_{1,3}",
    )?;
    ensure(
        closed_form(GraphFamily::Star(3)).unwrap() == golden,
        "closed form disagrees on K_{1,3}",
    )?;
    Ok(format!("Q(K_{{1,3}}) = {golden}"))
}

fn criterion_02() -> Result<String, String> {
    let mut checked = 0usize;
    for n in 0..=10usize {
        let pairs: Vec<(BiPoly, Graph)> = vec![
            (closed_form(GraphFamily::Complete(n)).unwrap(), complete(n)),
            (closed_form(GraphFamily::Empty(n)).unwrap(), empty_graph(n)),
            (closed_form(GraphFamily::Path(n)).unwrap(), path(n)),
        ];
        for (form, graph) in pairs {
            let oracle = q_brute_force(&graph).map_err(|e| e.to_string())?;
            ensure(form == oracle, format!("closed form mismatch at n = {n}"))?;
            checked += 1;
        }
        if n >= 3 {
            let form = closed_form(GraphFamily::Cycle(n)).unwrap();
            let oracle = q_brute_force(&cycle(n)).map_err(|e| e.to_string())?;
            ensure(form == oracle, format!("cycle recurrence mismatch at n = {n}"))?;
            checked += 1;
        }
    }
    for s in 0..=5usize {
        for t in 0..=5usize {
            let form = closed_form(GraphFamily::CompleteBipartite(s, t)).unwrap();
            let oracle = q_brute_force(&complete_bipartite(s, t)).map_err(|e| e.to_string())?;
            ensure(form == oracle, format!("K_{{{s},{t}}} mismatch"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} closed forms equal the subset expansion"))
}

fn criterion_03() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    let mut worst: f64 = 0.0;
    for trial in 0..20 {
        let n = rng.gen_range(0..=8usize);
        let x = rng.gen_range(0.1..2.0);
        let y = if rng.gen_bool(0.5) {
            rng.gen_range(0.1..0.9)
        } else {
            rng.gen_range(1.1..3.0)
        };
        let (closed, exact) = crate::q::q_path_closed_form_check(n, x, y)
            .map_err(|e| format!("trial {trial}: {e}"))?;
        let rel = (closed - exact).abs() / exact.abs();
        worst = worst.max(rel);
        ensure(
            rel <= 1e-9,
            format!("trial {trial}: n = {n}, point ({x}, {y}): relative error {rel}"),
        )?;
    }
    Ok(format!(
        "20 non-singular points, worst relative error {worst:.2e} <= 1e-9"
    ))
}

fn all_methods_agree(g: &Graph, cache: &QCache) -> Result<(), String> {
    let brute = q_brute_force(g).map_err(|e| e.to_string())?;
    verify_q_normalizations(g.n(), &brute).map_err(|e| e.to_string())?;
    let rec = q_recursive(g, cache);
    ensure(rec == brute, format!("recursion mismatch on {:?}", g.edges()))?;
    let tw = q_treewidth_greedy(g).map_err(|e| e.to_string())?;
    ensure(tw == brute, format!("treewidth mismatch on {:?}", g.edges()))?;
    let split = q_split(g, cache).map_err(|e| e.to_string())?;
    ensure(split == brute, format!("splitting mismatch on {:?}", g.edges()))?;
    Ok(())
}

fn criterion_04() -> Result<String, String> {
    let cache = QCache::new();
    let mut graphs: Vec<Graph> = Vec::new();
    for n in 0..=7usize {
        graphs.extend_from_slice(census(n));
    }
    let exhaustive = graphs.len();
    graphs.extend(seeded_random_graphs(200, 1, 12, 404));
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        graphs
            .par_iter()
            .try_for_each(|g| all_methods_agree(g, &cache))?;
    }
    #[cfg(not(feature = "parallel"))]
    for g in &graphs {
        all_methods_agree(g, &cache)?;
    }
    Ok(format!(
        "brute = recursive = treewidth = split on {exhaustive} census graphs (n <= 7) and 200 random graphs (n <= 12)"
    ))
}

fn criterion_05() -> Result<String, String> {
    for n in 1..=9usize {
        let report = distinguishing_search(Family::FreeTrees, n, Comparator::Q)
            .map_err(|e| e.to_string())?;
        ensure(
            report.pairs.is_empty(),
            format!("unexpected Q-collision among trees on {n} vertices"),
        )?;
    }
    let report =
        distinguishing_search(Family::FreeTrees, 10, Comparator::Q).map_err(|e| e.to_string())?;
    ensure(
        report.pairs.len() == 1,
        format!("expected exactly 1 colliding pair at n = 10, found {}", report.pairs.len()),
    )?;
    let pair = &report.pairs[0];
    Ok(format!(
        "trees up to 9 vertices are separated; the unique 10-vertex collision is {} ~ {}",
        pair.g6_a, pair.g6_b
    ))
}

fn criterion_06() -> Result<String, String> {
    let t_p4 = tutte_polynomial(&path(4)).map_err(|e| e.to_string())?;
    let t_star = tutte_polynomial(&star(3)).map_err(|e| e.to_string())?;
    ensure(t_p4 == t_star, "T(P_4) != T(K_{1,3})")?;
    let q_p4 = q_brute_force(&path(4)).unwrap();
    let q_star = q_brute_force(&star(3)).unwrap();
    ensure(q_p4 != q_star, "Q fails to separate P_4 from K_{1,3}")?;

    let mut cospectral = 0usize;
    let mut comatching = 0usize;
    for n in 2..=7usize {
        let report = distinguishing_search_over(census(n), "all-graphs", Comparator::Characteristic)
            .map_err(|e| e.to_string())?;
        cospectral += report
            .pairs
            .iter()
            .filter(|p| p.equal_under == "characteristic")
            .count();
        let report = distinguishing_search_over(census(n), "all-graphs", Comparator::Matching)
            .map_err(|e| e.to_string())?;
        comatching += report
            .pairs
            .iter()
            .filter(|p| p.equal_under == "matching")
            .count();
    }
    ensure(cospectral >= 1, "no cospectral pair with distinct Q found")?;
    ensure(comatching >= 1, "no co-matching pair with distinct Q found")?;
    Ok(format!(
        "T(P_4) = T(K_{{1,3}}) with distinct Q; census n <= 7 holds {cospectral} cospectral and {comatching} co-matching pairs, all split by Q"
    ))
}

fn criterion_07() -> Result<String, String> {
    let rat = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let points = [rat(-1, 1), rat(1, 2), rat(1, 1), rat(2, 1)];
    let mut checked = 0usize;
    for n in 0..=6usize {
        for g in census(n) {
            let q = q_brute_force(g).unwrap();
            for y in 0..=3usize {
                for x in &points {
                    let z = partition_function(g, y, x).map_err(|e| e.to_string())?;
                    let qv = q.eval(x, &BigRational::from(BigInt::from(y as i64)));
                    ensure(
                        z == qv,
                        format!("Z != Q at n = {n}, y = {y}, x = {x}, edges {:?}", g.edges()),
                    )?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!(
        "Z(Star_y template) = Q(G;x,y) for {checked} (graph, x, y) combinations"
    ))
}

fn criterion_08() -> Result<String, String> {
    let mut cases: Vec<MultiGraph> = Vec::new();
    for n in 1..=7usize {
        for g in census(n) {
            if g.edge_count() <= 7 && g.is_connected() {
                cases.push(MultiGraph::from_graph(g));
            }
        }
    }
    for tree in enumerate::free_trees(8).map_err(|e| e.to_string())? {
        cases.push(MultiGraph::from_graph(&tree));
    }
    let simple = cases.len();
    // loop and multi-edge shapes of the kind contraction creates
    cases.push(MultiGraph::from_edges(1, &[(0, 0)]).unwrap());
    cases.push(MultiGraph::from_edges(1, &[(0, 0), (0, 0)]).unwrap());
    cases.push(MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap());
    cases.push(MultiGraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]).unwrap());
    cases.push(MultiGraph::from_edges(2, &[(0, 0), (0, 1)]).unwrap());
    cases.push(MultiGraph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (0, 2)]).unwrap());
    cases.push(MultiGraph::from_edges(3, &[(0, 1), (1, 1), (1, 2), (2, 2)]).unwrap());
    let total = cases.len();
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        cases.par_iter().try_for_each(|g| {
            match line_graph_identity_check(g) {
                Ok(true) => Ok(()),
                Ok(false) => Err(format!("identity fails on {g:?}")),
                Err(e) => Err(e.to_string()),
            }
        })?;
    }
    #[cfg(not(feature = "parallel"))]
    for g in &cases {
        match line_graph_identity_check(g) {
            Ok(true) => {}
            Ok(false) => return Err(format!("identity fails on {g:?}")),
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(format!(
        "xi(G;1,x,x(y-1)) = Q(L(G);x,y) on {simple} simple connected graphs (<= 7 edges) and {} loop/multi-edge cases",
        total - simple
    ))
}

fn criterion_09() -> Result<String, String> {
    let cache = QCache::new();
    let mut graphs: Vec<Graph> = Vec::new();
    for n in 3..=7usize {
        graphs.extend_from_slice(census(n));
    }
    let exhaustive = graphs.len();
    // edgeless graphs exercise the omega = n branch explicitly
    for n in 3..=10usize {
        graphs.push(empty_graph(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(909);
    for _ in 0..100 {
        let n = rng.gen_range(3..=10usize);
        let p = [0.2, 0.35, 0.5][rng.gen_range(0..3)];
        graphs.push(random_graph(n, p, &mut rng));
    }
    let check = |g: &Graph| -> Result<(), String> {
        let d = deck(g, &cache).map_err(|e| e.to_string())?;
        let rebuilt = reconstruct(&d).map_err(|e| e.to_string())?;
        let direct = q_brute_force(g).map_err(|e| e.to_string())?;
        ensure(rebuilt == direct, format!("reconstruction differs on {:?}", g.edges()))
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        graphs.par_iter().try_for_each(check)?;
    }
    #[cfg(not(feature = "parallel"))]
    for g in &graphs {
        check(g)?;
    }
    Ok(format!(
        "reconstruct(deck(G)) = Q(G) on {exhaustive} census graphs (3 <= n <= 7), all E_n, and 100 random graphs (n <= 10)"
    ))
}

fn criterion_10() -> Result<String, String> {
    let rat = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let graphs = seeded_random_graphs(50, 1, 10, 1010);
    let trials = 100_000u64;
    for (idx, g) in graphs.iter().enumerate() {
        let q = q_brute_force(g).unwrap();
        for p in [rat(1, 4), rat(1, 2), rat(3, 4)] {
            let dist = reliability(&q, &p).map_err(|e| e.to_string())?;
            let sum: BigRational = dist.probs.iter().cloned().sum();
            ensure(sum.is_one(), format!("graph {idx}: probabilities sum to {sum}"))?;
            ensure(
                dist.residual_connectedness() == dist.probs[1],
                "residual connectedness reliability is not P_1",
            )?;
        }
        let dist = reliability(&q, &rat(1, 2)).unwrap();
        let freq = monte_carlo_component_frequencies(g, 0.5, trials, 1010 + idx as u64);
        for (k, prob) in dist.probs.iter().enumerate() {
            let p = rational_to_f64(prob);
            let se = (p * (1.0 - p) / trials as f64).sqrt();
            if se == 0.0 {
                ensure(
                    freq[k] == p,
                    format!("graph {idx}: degenerate P_{k} missed by sampling"),
                )?;
            } else {
                ensure(
                    (freq[k] - p).abs() <= 4.0 * se,
                    format!(
                        "graph {idx}: P_{k} = {p} vs frequency {} beyond 4 standard errors",
                        freq[k]
                    ),
                )?;
            }
        }
    }
    Ok(format!(
        "50 random graphs: distributions sum to 1 at p = 1/4, 1/2, 3/4; {trials}-trial Monte Carlo within 4 standard errors at p = 1/2"
    ))
}

fn criterion_11() -> Result<String, String> {
    let mut checked = 0usize;
    for n in 0..=8usize {
        for g in census(n) {
            let q = q_brute_force(g).unwrap();
            let (qn, qe, qk) = basic_invariants(&q).map_err(|e| e.to_string())?;
            ensure(
                qn == g.n()
                    && qe == BigInt::from(g.edge_count())
                    && qk == g.component_count(),
                format!("basic invariants differ on {:?}", g.edges()),
            )?;
            let (alpha, ind) = independence(&q);
            let (alpha_direct, counts) = brute_force_independence(g);
            ensure(
                alpha == alpha_direct,
                format!("independence number differs on {:?}", g.edges()),
            )?;
            let direct =
                crate::poly::UniPoly::new(counts.iter().map(|&c| BigInt::from(c)).collect());
            ensure(
                ind == direct,
                format!("independence polynomial differs on {:?}", g.edges()),
            )?;
            checked += 1;
        }
    }
    Ok(format!(
        "n, e, k, alpha, I(G;x) read off Q match direct computation on {checked} graphs (n <= 8)"
    ))
}

fn brute_force_independence(g: &Graph) -> (usize, Vec<u64>) {
    let n = g.n();
    let mut counts = vec![0u64; n + 1];
    'subsets: for mask in 0..(1u64 << n) {
        for v in iter_bits(mask) {
            if g.neighbors_mask(v) & mask != 0 {
                continue 'subsets;
            }
        }
        counts[mask.count_ones() as usize] += 1;
    }
    let alpha = (0..=n).rev().find(|&k| counts[k] > 0).unwrap_or(0);
    counts.truncate(alpha + 1);
    (alpha, counts)
}

fn criterion_12() -> Result<String, String> {
    let graphs = seeded_random_graphs(50, 1, 8, 1212);
    let mut rng = ChaCha8Rng::seed_from_u64(1213);
    let mut points: Vec<(BigRational, BigRational)> = Vec::new();
    while points.len() < 20 {
        let beta = BigRational::new(
            BigInt::from(rng.gen_range(-9i64..=9)),
            BigInt::from(rng.gen_range(1i64..=9)),
        );
        let gamma = BigRational::new(
            BigInt::from(rng.gen_range(-9i64..=9)),
            BigInt::from(rng.gen_range(1i64..=9)),
        );
        if !gamma.is_zero() {
            points.push((beta, gamma));
        }
    }
    let cache = QCache::new();
    for g in &graphs {
        let q = q_recursive(g, &cache);
        for (beta, gamma) in &points {
            let direct = universal_recursion(g, beta, gamma);
            let via_q = q.eval(gamma, &(beta / gamma + BigRational::one()));
            ensure(
                direct == via_q,
                format!(
                    "universality fails on {:?} at beta = {beta}, gamma = {gamma}",
                    g.edges()
                ),
            )?;
        }
    }
    Ok("f(G; beta, gamma) = Q(G; gamma, beta/gamma + 1) on 50 graphs x 20 rational points".into())
}

fn criterion_13() -> Result<String, String> {
    let report =
        distinguishing_search(Family::FreeTrees, 10, Comparator::Q).map_err(|e| e.to_string())?;
    ensure(report.pairs.len() == 1, "10-vertex tree pair not recovered")?;
    let t1 = decode_graph6(&report.pairs[0].g6_a).map_err(|e| e.to_string())?;
    let t2 = decode_graph6(&report.pairs[0].g6_b).map_err(|e| e.to_string())?;
    ensure(
        t1.canonical_form().unwrap() != t2.canonical_form().unwrap(),
        "collision pair is isomorphic",
    )?;
    let q1 = q_brute_force(&t1).unwrap();
    let q2 = q_brute_force(&t2).unwrap();
    ensure(q1 == q2, "pair does not collide under Q")?;
    // disjoint copies via multiplicativity, iterated joins via the join
    // formula; the 40-vertex graphs are never materialized
    let (mut j1, mut j2) = (q1.clone(), q2.clone());
    for k in 1..=3usize {
        let f1 = q1.pow(k as u32 + 1);
        let f2 = q2.pow(k as u32 + 1);
        ensure(f1 == f2, format!("F_{k} copies diverge"))?;
        j1 = q_join(&j1, &q1, 10 * k, 10).map_err(|e| e.to_string())?;
        j2 = q_join(&j2, &q2, 10 * k, 10).map_err(|e| e.to_string())?;
        ensure(j1 == j2, format!("J_{k} joins diverge"))?;
    }
    Ok(format!(
        "with the discovered pair {} ~ {}: Q(F_k(T1)) = Q(F_k(T2)) and Q(J_k(T1)) = Q(J_k(T2)) for k = 1..3",
        report.pairs[0].g6_a, report.pairs[0].g6_b
    ))
}

// Star determination is exercised here rather than in a numbered
// criterion: the predicate holds for K_{1,m} and nothing else of the same
// order in the census, for every order the census covers.
pub fn star_determination_sweep() -> Result<String, String> {
    for order in 3..=7usize {
        let m = order - 1;
        let star_key = star(m).canonical_form().unwrap();
        for g in census(order) {
            let q = q_brute_force(g).unwrap();
            let is_star = g.canonical_form().unwrap() == star_key;
            ensure(
                is_star_polynomial(&q, m) == is_star,
                format!("star predicate misclassifies {:?}", g.edges()),
            )?;
        }
    }
    Ok("star predicate characterizes K_{1,n} exactly for orders 3..=7".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn outcome_lines_render() {
        let out = CriterionOutcome {
            number: 1,
            name: "golden star polynomial",
            passed: true,
            detail: "ok".into(),
        };
        assert!(out.line().contains("PASS"));
    }

    #[test]
    fn star_sweep_passes() {
        star_determination_sweep().unwrap();
    }
}
