//! Connections between Q(G;x,y) and other graph polynomials: the weighted
//! homomorphism partition function over the looped star template, the edge
//! elimination polynomial xi(G;x,y,z) with its line graph identity, the
//! matching / characteristic / Tutte comparison polynomials, and the
//! distinguishing-power search harness.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::canon::DEFAULT_CANON_BOUND;
use crate::graph::format::encode_graph6;
use crate::graph::{enumerate, line_graph, Graph, MultiGraph};
use crate::poly::{BiPoly, TriPoly, UniPoly};
use crate::q::q_brute_force;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub const PARTITION_VERTEX_BOUND: usize = 10;
pub const PARTITION_COLOR_BOUND: usize = 6;
pub const XI_EDGE_BOUND: usize = 20;
pub const COMPARATOR_VERTEX_BOUND: usize = 12;
pub const TUTTE_VERTEX_BOUND: usize = 10;
pub const TUTTE_EDGE_BOUND: usize = 26;

// ---- partition function ----------------------------------------------------

/// The weighted template `Star_y`: center `v_0` plus `y` leaves, every
/// vertex looped, leaves adjacent only to the center. Vertex weights are 1
/// at the center and `x` elsewhere; all edge weights are 1.
#[derive(Clone, Debug)]
pub struct WeightedModel {
    pub template: MultiGraph,
    /// True where the vertex weight is `x` rather than 1.
    pub x_weighted: Vec<bool>,
}

pub fn star_model(y: usize) -> WeightedModel {
    let mut edges: Vec<(usize, usize)> = (0..=y).map(|v| (v, v)).collect();
    edges.extend((1..=y).map(|v| (0, v)));
    WeightedModel {
        template: MultiGraph::from_edges(y + 1, &edges).expect("template within bounds"),
        x_weighted: (0..=y).map(|v| v != 0).collect(),
    }
}

/// Exact weighted homomorphism count into `Star_y`: the sum over all
/// homomorphisms `h: V(G) -> V(Star_y)` of the product of vertex weights.
/// Equals `Q(G; x, y)` for nonnegative integer `y`.
pub fn partition_function(g: &Graph, y: usize, x: &BigRational) -> Result<BigRational> {
    if g.n() > PARTITION_VERTEX_BOUND || y > PARTITION_COLOR_BOUND {
        return Err(Error::Bounds(format!(
            "partition function limited to {PARTITION_VERTEX_BOUND} vertices and y <= {PARTITION_COLOR_BOUND}, got n = {}, y = {y}",
            g.n()
        )));
    }
    let model = star_model(y);
    let hn = y + 1;
    let mut allowed = vec![vec![false; hn]; hn];
    for ((a, b), _) in model.template.edge_multiplicities() {
        allowed[a][b] = true;
        allowed[b][a] = true;
    }
    // counts[c] = homomorphisms mapping exactly c vertices to x-weighted targets
    let mut counts = vec![BigInt::zero(); g.n() + 1];
    let mut assignment = vec![0usize; g.n()];
    enumerate_homs(g, &model, &allowed, 0, 0, &mut assignment, &mut counts);
    let mut total = BigRational::zero();
    let mut xp = BigRational::one();
    for c in counts {
        total += BigRational::from(c) * &xp;
        xp *= x;
    }
    Ok(total)
}

fn enumerate_homs(
    g: &Graph,
    model: &WeightedModel,
    allowed: &[Vec<bool>],
    v: usize,
    weighted: usize,
    assignment: &mut [usize],
    counts: &mut [BigInt],
) {
    if v == g.n() {
        counts[weighted] += 1;
        return;
    }
    'targets: for t in 0..allowed.len() {
        for u in crate::graph::iter_bits(g.neighbors_mask(v)) {
            if u < v && !allowed[assignment[u]][t] {
                continue 'targets;
            }
        }
        assignment[v] = t;
        let w = weighted + usize::from(model.x_weighted[t]);
        enumerate_homs(g, model, allowed, v + 1, w, assignment, counts);
    }
}

// ---- edge elimination polynomial --------------------------------------------

/// The edge elimination polynomial by its recursion
/// `xi(G) = xi(G-e) + y xi(G/e) + z xi(G+e)` (deletion, contraction,
/// extraction), multiplicative over components, with `xi(E_1) = x` and
/// `xi(null) = 1`. Contraction keeps parallel copies as loops. For a loop,
/// deletion and contraction coincide and extraction removes the vertex.
pub fn xi(g: &MultiGraph) -> Result<TriPoly> {
    if g.edge_count() > XI_EDGE_BOUND {
        return Err(Error::Bounds(format!(
            "xi recursion limited to {XI_EDGE_BOUND} edges, got {}",
            g.edge_count()
        )));
    }
    let mut memo = HashMap::new();
    Ok(xi_rec(g, &mut memo))
}

fn xi_rec(g: &MultiGraph, memo: &mut HashMap<Vec<u8>, TriPoly>) -> TriPoly {
    if g.edge_count() == 0 {
        return TriPoly::monomial(g.n() as u32, 0, 0, BigInt::one());
    }
    let comps = g.components();
    if comps.len() > 1 {
        let mut acc = TriPoly::one();
        for &m in &comps {
            acc = &acc * &xi_rec(&g.induced(m), memo);
        }
        return acc;
    }
    let key = if g.n() <= DEFAULT_CANON_BOUND {
        let k = g.canonical_form().expect("within canon bound");
        if let Some(hit) = memo.get(&k) {
            return hit.clone();
        }
        Some(k)
    } else {
        None
    };
    let e = g.first_edge().expect("nonzero edge count");
    let deleted = xi_rec(&g.delete_one_edge(e), memo);
    let extracted = xi_rec(&g.extract_edge(e), memo);
    let value = if MultiGraph::is_loop(e) {
        // contraction of a loop degenerates to its deletion
        &(&deleted + &deleted.shift(0, 1, 0)) + &extracted.shift(0, 0, 1)
    } else {
        let contracted = xi_rec(&g.contract_edge(e), memo);
        &(&deleted + &contracted.shift(0, 1, 0)) + &extracted.shift(0, 0, 1)
    };
    if let Some(k) = key {
        memo.insert(k, value.clone());
    }
    value
}

/// Substitute `(1, x, x(y-1))` into a trivariate polynomial, landing in
/// the Q plane.
pub fn xi_to_q_plane(p: &TriPoly) -> BiPoly {
    let fx = BiPoly::one();
    let fy = BiPoly::x();
    let fz = &(&BiPoly::x() * &BiPoly::y()) - &BiPoly::x();
    p.substitute(&fx, &fy, &fz)
}

/// Check the line graph identity `xi(G; 1, x, x(y-1)) = Q(L(G); x, y)`.
pub fn line_graph_identity_check(g: &MultiGraph) -> Result<bool> {
    let lhs = xi_to_q_plane(&xi(g)?);
    let rhs = q_brute_force(&line_graph(g)?)?;
    Ok(lhs == rhs)
}

// ---- comparison polynomials ---------------------------------------------------

fn check_comparator_bound(g: &Graph) -> Result<()> {
    if g.n() > COMPARATOR_VERTEX_BOUND {
        return Err(Error::Bounds(format!(
            "comparison polynomials limited to {COMPARATOR_VERTEX_BOUND} vertices, got {}",
            g.n()
        )));
    }
    Ok(())
}

/// Matching generating polynomial `sum_i m_i(G) x^i` over the number of
/// `i`-matchings.
pub fn matching_polynomial(g: &Graph) -> Result<UniPoly> {
    check_comparator_bound(g)?;
    fn rec(g: &Graph) -> UniPoly {
        let Some(u) = (0..g.n()).find(|&v| g.degree(v) > 0) else {
            return UniPoly::one();
        };
        // matchings either avoid u or pair it with one neighbor
        let mut acc = rec(&g.delete_vertex(u).unwrap());
        let x = UniPoly::new(vec![BigInt::zero(), BigInt::one()]);
        for w in crate::graph::iter_bits(g.neighbors_mask(u)) {
            let rest = rec(&g.delete_vertex_set(1 << u | 1 << w));
            acc = &acc + &(&x * &rest);
        }
        acc
    }
    Ok(rec(g))
}

/// Characteristic polynomial `det(xI - A)` by the exact integer
/// Faddeev-LeVerrier iteration.
pub fn characteristic_polynomial(g: &Graph) -> Result<UniPoly> {
    check_comparator_bound(g)?;
    let n = g.n();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    if n == 0 {
        return Ok(UniPoly::new(coeffs));
    }
    let a: Vec<Vec<BigInt>> = (0..n)
        .map(|u| {
            (0..n)
                .map(|v| BigInt::from(u32::from(g.has_edge(u, v))))
                .collect()
        })
        .collect();
    let mat_mul = |x: &[Vec<BigInt>], y: &[Vec<BigInt>]| -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if x[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    let prod = &x[i][k] * &y[k][j];
                    out[i][j] += prod;
                }
            }
        }
        out
    };
    let trace = |x: &[Vec<BigInt>]| -> BigInt { (0..n).map(|i| x[i][i].clone()).sum() };
    let mut m = a.clone();
    for k in 1..=n {
        let t = trace(&m);
        let (c, rem) = num_integer::Integer::div_rem(&-t, &BigInt::from(k));
        debug_assert!(rem.is_zero(), "Faddeev-LeVerrier division is exact");
        coeffs[n - k] = c.clone();
        if k < n {
            let mut shifted = m;
            for (i, row) in shifted.iter_mut().enumerate() {
                row[i] += &c;
            }
            m = mat_mul(&a, &shifted);
        }
    }
    Ok(UniPoly::new(coeffs))
}

/// Tutte polynomial by the rank-nullity subset expansion
/// `T(G;x,y) = sum over edge subsets A of (x-1)^{r(E)-r(A)} (y-1)^{|A|-r(A)}`.
pub fn tutte_polynomial(g: &Graph) -> Result<BiPoly> {
    if g.n() > TUTTE_VERTEX_BOUND {
        return Err(Error::Bounds(format!(
            "Tutte expansion limited to {TUTTE_VERTEX_BOUND} vertices, got {}",
            g.n()
        )));
    }
    let edges = g.edges();
    let m = edges.len();
    if m > TUTTE_EDGE_BOUND {
        return Err(Error::Bounds(format!(
            "Tutte expansion over 2^{m} edge subsets is out of reach (limit 2^{TUTTE_EDGE_BOUND})"
        )));
    }
    let n = g.n();
    let rank = |subset: u32, parent: &mut [usize]| -> u32 {
        for (v, p) in parent.iter_mut().enumerate() {
            *p = v;
        }
        fn find(parent: &mut [usize], v: usize) -> usize {
            let mut r = v;
            while parent[r] != r {
                r = parent[r];
            }
            let mut c = v;
            while parent[c] != r {
                let next = parent[c];
                parent[c] = r;
                c = next;
            }
            r
        }
        let mut rank = 0u32;
        for (i, &(u, v)) in edges.iter().enumerate() {
            if subset >> i & 1 == 1 {
                let (ru, rv) = (find(parent, u), find(parent, v));
                if ru != rv {
                    parent[ru] = rv;
                    rank += 1;
                }
            }
        }
        rank
    };
    let mut parent = vec![0usize; n];
    let full_rank = rank(if m == 32 { u32::MAX } else { (1u32 << m) - 1 }, &mut parent);
    let mut counts: HashMap<(u32, u32), u64> = HashMap::new();
    for subset in 0..1u64 << m {
        let subset = subset as u32;
        let r = rank(subset, &mut parent);
        *counts
            .entry((full_rank - r, subset.count_ones() - r))
            .or_insert(0) += 1;
    }
    let x_minus_one = &BiPoly::x() - &BiPoly::one();
    let y_minus_one = &BiPoly::y() - &BiPoly::one();
    let mut acc = BiPoly::zero();
    for ((a, b), c) in counts {
        let term = &x_minus_one.pow(a) * &y_minus_one.pow(b);
        acc = &acc + &term.scale(&BigInt::from(c));
    }
    Ok(acc)
}

// ---- distinguishing power search ------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Comparator {
    Q,
    Matching,
    Characteristic,
    Tutte,
}

impl Comparator {
    pub fn name(&self) -> &'static str {
        match self {
            Comparator::Q => "Q",
            Comparator::Matching => "matching",
            Comparator::Characteristic => "characteristic",
            Comparator::Tutte => "tutte",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    FreeTrees,
    AllGraphs,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::FreeTrees => "free-trees",
            Family::AllGraphs => "all-graphs",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessPair {
    pub g6_a: String,
    pub g6_b: String,
    pub equal_under: String,
    pub differ_under: String,
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub family: String,
    pub comparator: String,
    pub pairs: Vec<WitnessPair>,
}

impl SearchReport {
    pub fn to_json(&self) -> Value {
        json!({
            "family": self.family,
            "comparator": self.comparator,
            "pairs": self.pairs.iter().map(|p| json!({
                "g6_a": p.g6_a,
                "g6_b": p.g6_b,
                "equal_under": p.equal_under,
                "differ_under": p.differ_under,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Search an isomorphism-class census for pairs equal under the comparison
/// polynomial but different under Q, and vice versa. With `Comparator::Q`
/// the report lists plain Q-collisions between non-isomorphic graphs.
pub fn distinguishing_search(
    family: Family,
    n: usize,
    comparator: Comparator,
) -> Result<SearchReport> {
    let graphs = match family {
        Family::FreeTrees => enumerate::free_trees(n)?,
        Family::AllGraphs => enumerate::all_graphs(n)?,
    };
    distinguishing_search_over(&graphs, family.name(), comparator)
}

/// Search over an explicit list of pairwise non-isomorphic graphs.
pub fn distinguishing_search_over(
    graphs: &[Graph],
    family_label: &str,
    comparator: Comparator,
) -> Result<SearchReport> {
    let describe = |g: &Graph| -> Result<(String, String)> {
        let q = q_brute_force(g)?.to_json_string();
        let c = match comparator {
            Comparator::Q => q.clone(),
            Comparator::Matching => matching_polynomial(g)?.to_string(),
            Comparator::Characteristic => characteristic_polynomial(g)?.to_string(),
            Comparator::Tutte => tutte_polynomial(g)?.to_json_string(),
        };
        Ok((c, q))
    };
    #[cfg(feature = "parallel")]
    let keys: Vec<(String, String)> = graphs
        .par_iter()
        .map(describe)
        .collect::<Result<Vec<_>>>()?;
    #[cfg(not(feature = "parallel"))]
    let keys: Vec<(String, String)> = graphs.iter().map(describe).collect::<Result<Vec<_>>>()?;

    let mut pairs = Vec::new();
    if matches!(comparator, Comparator::Q) {
        collect_pairs(
            graphs,
            &keys,
            |k| &k.1,
            |_| true,
            "Q",
            "isomorphism",
            &mut pairs,
        );
    } else {
        // equal comparator, different Q
        collect_pairs(
            graphs,
            &keys,
            |k| &k.0,
            |(a, b)| a.1 != b.1,
            comparator.name(),
            "Q",
            &mut pairs,
        );
        // equal Q, different comparator: empirical probes of the converse
        collect_pairs(
            graphs,
            &keys,
            |k| &k.1,
            |(a, b)| a.0 != b.0,
            "Q",
            comparator.name(),
            &mut pairs,
        );
    }
    Ok(SearchReport {
        family: family_label.to_string(),
        comparator: comparator.name().to_string(),
        pairs,
    })
}

fn collect_pairs<'k>(
    graphs: &[Graph],
    keys: &'k [(String, String)],
    group_by: impl Fn(&'k (String, String)) -> &'k String,
    admit: impl Fn((&(String, String), &(String, String))) -> bool,
    equal_under: &str,
    differ_under: &str,
    pairs: &mut Vec<WitnessPair>,
) {
    let mut groups: HashMap<&String, Vec<usize>> = HashMap::new();
    for (idx, key) in keys.iter().enumerate() {
        groups.entry(group_by(key)).or_default().push(idx);
    }
    let mut members: Vec<Vec<usize>> = groups.into_values().filter(|v| v.len() > 1).collect();
    members.sort();
    for group in members {
        for (i, &a) in group.iter().enumerate() {
            for &b in &group[i + 1..] {
                if admit((&keys[a], &keys[b])) {
                    pairs.push(WitnessPair {
                        g6_a: encode_graph6(&graphs[a]),
                        g6_b: encode_graph6(&graphs[b]),
                        equal_under: equal_under.to_string(),
                        differ_under: differ_under.to_string(),
                    });
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, empty_graph, path, star};

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn partition_function_examples() {
        // no edges: every map is a homomorphism
        assert_eq!(
            partition_function(&empty_graph(1), 2, &rat(3, 1)).unwrap(),
            rat(7, 1) // 1 + 2x at x = 3
        );
        // P_2 into Star_1: all four maps are valid
        assert_eq!(partition_function(&path(2), 1, &rat(1, 1)).unwrap(), rat(4, 1));
        // K_2 at y = 2, x = 1: Q(K_2;1,2) = 7
        assert_eq!(partition_function(&complete(2), 2, &rat(1, 1)).unwrap(), rat(7, 1));
        assert!(partition_function(&empty_graph(11), 1, &rat(1, 1)).is_err());
        assert!(partition_function(&empty_graph(1), 7, &rat(1, 1)).is_err());
    }

    #[test]
    fn partition_function_equals_q() {
        let g = cycle(5);
        let q = q_brute_force(&g).unwrap();
        for y in 0..=3usize {
            for x in [rat(-1, 1), rat(1, 2), rat(2, 1)] {
                assert_eq!(
                    partition_function(&g, y, &x).unwrap(),
                    q.eval(&x, &rat(y as i64, 1)),
                    "y = {y}"
                );
            }
        }
    }

    #[test]
    fn xi_examples() {
        let e1 = MultiGraph::new(1).unwrap();
        assert_eq!(xi(&e1).unwrap(), TriPoly::x());
        let null = MultiGraph::new(0).unwrap();
        assert_eq!(xi(&null).unwrap(), TriPoly::one());
        // single edge: x^2 + xy + z
        let p2 = MultiGraph::from_edges(2, &[(0, 1)]).unwrap();
        let expected = &(&TriPoly::monomial(2, 0, 0, BigInt::one())
            + &TriPoly::monomial(1, 1, 0, BigInt::one()))
            + &TriPoly::monomial(0, 0, 1, BigInt::one());
        assert_eq!(xi(&p2).unwrap(), expected);
    }

    #[test]
    fn line_graph_identity_small_cases() {
        for g in [
            MultiGraph::from_graph(&path(2)),
            MultiGraph::from_graph(&path(3)),
            MultiGraph::from_graph(&star(3)),
            MultiGraph::from_graph(&cycle(4)),
            MultiGraph::from_edges(1, &[(0, 0)]).unwrap(),
            MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap(),
            MultiGraph::from_edges(3, &[(0, 1), (0, 1), (1, 2), (2, 2)]).unwrap(),
        ] {
            assert!(line_graph_identity_check(&g).unwrap());
        }
    }

    #[test]
    fn matching_polynomial_examples() {
        assert_eq!(
            matching_polynomial(&path(3)).unwrap().coeffs().to_vec(),
            [1, 2].map(BigInt::from).to_vec()
        );
        assert_eq!(
            matching_polynomial(&path(4)).unwrap().coeffs().to_vec(),
            [1, 3, 1].map(BigInt::from).to_vec()
        );
        // K_3 plus an isolate matches the star K_{1,3}
        let k3_plus = complete(3).disjoint_union(&empty_graph(1)).unwrap();
        assert_eq!(
            matching_polynomial(&k3_plus).unwrap(),
            matching_polynomial(&star(3)).unwrap()
        );
    }

    #[test]
    fn characteristic_polynomial_examples() {
        // p(K_2) = x^2 - 1
        assert_eq!(
            characteristic_polynomial(&complete(2)).unwrap().coeffs().to_vec(),
            [-1, 0, 1].map(BigInt::from).to_vec()
        );
        // p(P_3) = x^3 - 2x
        assert_eq!(
            characteristic_polynomial(&path(3)).unwrap().coeffs().to_vec(),
            [0, -2, 0, 1].map(BigInt::from).to_vec()
        );
        // the classic cospectral pair: K_{1,4} and C_4 + K_1
        let a = star(4);
        let b = cycle(4).disjoint_union(&empty_graph(1)).unwrap();
        assert_eq!(
            characteristic_polynomial(&a).unwrap(),
            characteristic_polynomial(&b).unwrap()
        );
        assert_ne!(q_brute_force(&a).unwrap(), q_brute_force(&b).unwrap());
    }

    #[test]
    fn tutte_polynomial_examples() {
        // trees on n vertices all have T = x^{n-1}
        let x_cubed = BiPoly::monomial(3, 0, BigInt::one());
        assert_eq!(tutte_polynomial(&path(4)).unwrap(), x_cubed);
        assert_eq!(tutte_polynomial(&star(3)).unwrap(), x_cubed);
        // T(C_3) = x^2 + x + y
        let expected = &(&BiPoly::monomial(2, 0, BigInt::one()) + &BiPoly::x()) + &BiPoly::y();
        assert_eq!(tutte_polynomial(&cycle(3)).unwrap(), expected);
        assert_eq!(tutte_polynomial(&empty_graph(3)).unwrap(), BiPoly::one());
    }

    #[test]
    fn search_finds_the_tree_pair() {
        let report = distinguishing_search(Family::FreeTrees, 4, Comparator::Tutte).unwrap();
        assert_eq!(report.pairs.len(), 1);
        assert_eq!(report.pairs[0].equal_under, "tutte");
        assert_eq!(report.pairs[0].differ_under, "Q");
        let json = report.to_json().to_string();
        assert!(json.contains("\"family\":\"free-trees\""));
    }

    #[test]
    fn search_reports_no_tree_collisions_below_ten() {
        for n in [6, 8] {
            let report = distinguishing_search(Family::FreeTrees, n, Comparator::Q).unwrap();
            assert!(report.pairs.is_empty(), "n = {n}");
        }
    }

    #[test]
    fn multigraph_blindness_mirror() {
        // doubling edges changes the line graph but not the underlying
        // simple graph, and Q only sees the latter
        let simple = cycle(4);
        let doubled_edges: Vec<(usize, usize)> = simple
            .edges()
            .iter()
            .flat_map(|&e| [e, e])
            .collect();
        let doubled = MultiGraph::from_edges(4, &doubled_edges).unwrap();
        assert_eq!(doubled.simplify(), simple);
        assert_eq!(
            q_brute_force(&doubled.simplify()).unwrap(),
            q_brute_force(&simple).unwrap()
        );
        let lq_doubled = q_brute_force(&line_graph(&doubled).unwrap()).unwrap();
        let lq_simple =
            q_brute_force(&line_graph(&MultiGraph::from_graph(&simple)).unwrap()).unwrap();
        assert_ne!(lq_doubled, lq_simple);
    }
}
