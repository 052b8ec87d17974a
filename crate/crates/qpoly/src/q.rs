//! Computation paths for the subgraph component polynomial: the subset
//! expansion oracle, the memoized vertex elimination recursion, closed
//! forms for standard families, the join formula, articulation and clique
//! separator splitting, and the generic vertex elimination recursion.

use std::collections::HashMap;
use std::num::NonZeroUsize;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use lru::LruCache;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::graph::canon::DEFAULT_CANON_BOUND;
use crate::graph::{full_mask, iter_bits, CliqueSeparation, Graph};
use crate::poly::{one_plus_x_pow, one_plus_xy_pow, BiPoly, UniPoly};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Subset expansion is capped at 2^24 subsets.
pub const BRUTE_FORCE_BOUND: usize = 24;
/// Default cap on separating clique size in the split driver.
pub const DEFAULT_SEPARATOR_BOUND: usize = 4;

/// Which computation path produced a result.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Auto,
    Brute,
    Recursive,
    Treewidth,
    Split,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct QStats {
    pub recursion_nodes: u64,
    pub cache_hits: u64,
}

#[derive(Clone, Debug)]
pub struct QResult {
    pub poly: BiPoly,
    pub method: Method,
    pub stats: QStats,
}

/// Shared memo table for the recursion, keyed by graph canonical form.
/// Bounded LRU; inserts are atomic, so concurrent computations may share
/// one cache and stay deterministic.
pub struct QCache {
    map: Mutex<LruCache<Vec<u8>, BiPoly>>,
    canon_bound: usize,
    nodes: AtomicU64,
    hits: AtomicU64,
}

impl QCache {
    pub const DEFAULT_CAPACITY: usize = 1 << 20;

    pub fn new() -> QCache {
        QCache::with_capacity(Self::DEFAULT_CAPACITY)
    }

    pub fn with_capacity(capacity: usize) -> QCache {
        QCache {
            map: Mutex::new(LruCache::new(
                NonZeroUsize::new(capacity.max(1)).unwrap(),
            )),
            canon_bound: DEFAULT_CANON_BOUND,
            nodes: AtomicU64::new(0),
            hits: AtomicU64::new(0),
        }
    }

    pub fn stats(&self) -> QStats {
        QStats {
            recursion_nodes: self.nodes.load(Ordering::Relaxed),
            cache_hits: self.hits.load(Ordering::Relaxed),
        }
    }

    fn get(&self, key: &[u8]) -> Option<BiPoly> {
        let hit = self.map.lock().unwrap().get(key).cloned();
        if hit.is_some() {
            self.hits.fetch_add(1, Ordering::Relaxed);
        }
        hit
    }

    fn put(&self, key: Vec<u8>, poly: BiPoly) {
        self.map.lock().unwrap().put(key, poly);
    }
}

impl Default for QCache {
    fn default() -> Self {
        QCache::new()
    }
}

/// The polynomial `x(y - 1)`, weight of the extraction branch.
fn x_y_minus_one() -> BiPoly {
    &(&BiPoly::x() * &BiPoly::y()) - &BiPoly::x()
}

fn q_single_vertex() -> BiPoly {
    &BiPoly::one() + &(&BiPoly::x() * &BiPoly::y())
}

// ---- subset expansion oracle ----------------------------------------------

fn counts_to_poly(n: usize, counts: &[u64]) -> BiPoly {
    let mut poly = BiPoly::zero();
    for i in 0..=n {
        for j in 0..=n {
            let c = counts[i * (n + 1) + j];
            if c != 0 {
                poly = &poly + &BiPoly::monomial(i as u32, j as u32, BigInt::from(c));
            }
        }
    }
    poly
}

fn subset_counts_range(g: &Graph, lo: u64, hi: u64) -> Vec<u64> {
    let n = g.n();
    let mut counts = vec![0u64; (n + 1) * (n + 1)];
    for mask in lo..hi {
        let i = mask.count_ones() as usize;
        let j = g.component_count_of_induced(mask);
        counts[i * (n + 1) + j] += 1;
    }
    counts
}

fn check_brute_bound(g: &Graph) -> Result<u64> {
    let n = g.n();
    if n > BRUTE_FORCE_BOUND {
        return Err(Error::Bounds(format!(
            "subset expansion limited to {BRUTE_FORCE_BOUND} vertices, got {n}"
        )));
    }
    Ok(1u64 << n)
}

/// Q(G;x,y) by the subset expansion: sum over all vertex subsets A of
/// `x^|A| y^k(G[A])`. The oracle every other method is checked against.
pub fn q_brute_force(g: &Graph) -> Result<BiPoly> {
    let total = check_brute_bound(g)?;
    #[cfg(feature = "parallel")]
    if g.n() >= 16 {
        let chunk = 1u64 << 14;
        let chunks: Vec<u64> = (0..total).step_by(chunk as usize).collect();
        let counts = chunks
            .par_iter()
            .map(|&lo| subset_counts_range(g, lo, (lo + chunk).min(total)))
            .reduce(
                || vec![0u64; (g.n() + 1) * (g.n() + 1)],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            );
        return Ok(counts_to_poly(g.n(), &counts));
    }
    Ok(counts_to_poly(g.n(), &subset_counts_range(g, 0, total)))
}

/// Single-threaded subset expansion, the fallback the parallel path is
/// benchmarked against.
pub fn q_brute_force_seq(g: &Graph) -> Result<BiPoly> {
    let total = check_brute_bound(g)?;
    Ok(counts_to_poly(g.n(), &subset_counts_range(g, 0, total)))
}

// ---- vertex elimination recursion ------------------------------------------

/// Pivot selection for the recursion.
#[derive(Clone, Copy, Debug)]
pub enum PivotRule {
    /// Maximum degree, ties by lowest label, with the degree-1 shortcut.
    MaxDegree,
    /// Uniformly random pivot from the given seed, no shortcut. The result
    /// is the same polynomial; this exists to test pivot independence.
    Random(u64),
}

/// Q(G;x,y) by the vertex elimination recursion
/// `Q(G) = Q(G-v) + x(y-1) Q(G-N[v]) + x Q(G/v)`,
/// splitting into connected components first and memoizing by canonical
/// form.
pub fn q_recursive(g: &Graph, cache: &QCache) -> BiPoly {
    q_recursive_with_pivot(g, cache, PivotRule::MaxDegree)
}

pub fn q_recursive_with_pivot(g: &Graph, cache: &QCache, rule: PivotRule) -> BiPoly {
    let mut rng = match rule {
        PivotRule::Random(seed) => Some(rand_chacha::ChaCha8Rng::seed_from_u64(seed)),
        PivotRule::MaxDegree => None,
    };
    rec(g, cache, &mut rng)
}

fn rec(g: &Graph, cache: &QCache, rng: &mut Option<rand_chacha::ChaCha8Rng>) -> BiPoly {
    let n = g.n();
    if n == 0 {
        return BiPoly::one();
    }
    let comps = g.connected_components();
    if comps.len() > 1 {
        let mut acc = BiPoly::one();
        for &m in &comps {
            acc = &acc * &rec(&g.induced_subgraph(m), cache, rng);
        }
        return acc;
    }
    if n == 1 {
        return q_single_vertex();
    }
    let key = if n <= cache.canon_bound {
        let k = g.canonical_form().expect("n within canon bound");
        if let Some(hit) = cache.get(&k) {
            return hit;
        }
        Some(k)
    } else {
        None
    };
    cache.nodes.fetch_add(1, Ordering::Relaxed);

    let poly = if rng.is_some() {
        let v = rng.as_mut().unwrap().gen_range(0..n);
        three_way(g, v, cache, rng)
    } else if let Some(v) = (0..n).find(|&v| g.degree(v) == 1) {
        // degree-1 shortcut: G/v = G-v, so the deletion and contraction
        // branches merge into (1+x) Q(G-v)
        let w = iter_bits(g.neighbors_mask(v)).next().unwrap();
        let minus_v = rec(&g.delete_vertex(v).unwrap(), cache, &mut None);
        let minus_vw = rec(&g.delete_vertex_set(1 << v | 1 << w), cache, &mut None);
        &(&one_plus_x_pow(1) * &minus_v) + &(&x_y_minus_one() * &minus_vw)
    } else {
        let v = (0..n).max_by_key(|&v| (g.degree(v), n - v)).unwrap();
        three_way(g, v, cache, &mut None)
    };
    if let Some(k) = key {
        cache.put(k, poly.clone());
    }
    poly
}

fn three_way(
    g: &Graph,
    v: usize,
    cache: &QCache,
    rng: &mut Option<rand_chacha::ChaCha8Rng>,
) -> BiPoly {
    let deleted = rec(&g.delete_vertex(v).unwrap(), cache, rng);
    let extracted = rec(&g.extract_closed_neighborhood(v).unwrap(), cache, rng);
    let contracted = rec(&g.contract_vertex(v).unwrap(), cache, rng);
    &(&deleted + &(&x_y_minus_one() * &extracted)) + &(&BiPoly::x() * &contracted)
}

// ---- closed forms ----------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFamily {
    Complete(usize),
    Empty(usize),
    Path(usize),
    Cycle(usize),
    CompleteBipartite(usize, usize),
    Star(usize),
}

/// Closed forms: `Q(K_n) = y(1+x)^n - y + 1`, `Q(E_n) = (1+xy)^n`, the
/// path and cycle recurrences, and the complete bipartite formula.
pub fn closed_form(family: GraphFamily) -> Result<BiPoly> {
    match family {
        GraphFamily::Complete(n) => {
            let y = BiPoly::y();
            Ok(&(&(&y * &one_plus_x_pow(n as u32)) - &y) + &BiPoly::one())
        }
        GraphFamily::Empty(n) => Ok(one_plus_xy_pow(n as u32)),
        GraphFamily::Path(n) => Ok(path_polys(n).pop().unwrap()),
        GraphFamily::Cycle(n) => {
            if n < 3 {
                return Err(Error::Invalid(format!("cycles need n >= 3, got {n}")));
            }
            let paths = path_polys(n);
            // seed with the brute-forced triangle, then
            // Q(C_n) = Q(P_{n-1}) + x(y-1) Q(P_{n-3}) + x Q(C_{n-1})
            let mut q = q_brute_force(&crate::graph::cycle(3))?;
            let xy1 = x_y_minus_one();
            for m in 4..=n {
                q = &(&paths[m - 1] + &(&xy1 * &paths[m - 3])) + &(&BiPoly::x() * &q);
            }
            Ok(q)
        }
        GraphFamily::CompleteBipartite(s, t) => {
            let bracket = |n: usize| &one_plus_x_pow(n as u32) - &BiPoly::one();
            let cross = &(&bracket(s) * &bracket(t)) * &BiPoly::y();
            Ok(&(&(&one_plus_xy_pow(s as u32) + &one_plus_xy_pow(t as u32)) + &cross)
                - &BiPoly::one())
        }
        GraphFamily::Star(n) => closed_form(GraphFamily::CompleteBipartite(1, n)),
    }
}

/// `Q(P_0) .. Q(P_n)` from the linear recurrence
/// `Q(P_n) = (1+x) Q(P_{n-1}) + x(y-1) Q(P_{n-2})`.
fn path_polys(n: usize) -> Vec<BiPoly> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(BiPoly::one());
    if n >= 1 {
        out.push(q_single_vertex());
    }
    let one_plus_x = one_plus_x_pow(1);
    let xy1 = x_y_minus_one();
    for m in 2..=n {
        let next = &(&one_plus_x * &out[m - 1]) + &(&xy1 * &out[m - 2]);
        out.push(next);
    }
    out
}

/// Numeric cross-check of the explicit path solution with
/// `a = sqrt(1 - 2x + x^2 + 4xy)`. Returns (closed form value, exact
/// recurrence value) at the point; errors at singular points.
pub fn q_path_closed_form_check(n: usize, x: f64, y: f64) -> Result<(f64, f64)> {
    const EPS: f64 = 1e-12;
    let a2 = 1.0 - 2.0 * x + x * x + 4.0 * x * y;
    if a2 <= EPS {
        return Err(Error::Invalid(format!(
            "singular point ({x}, {y}): a^2 = {a2} is not positive"
        )));
    }
    let a = a2.sqrt();
    let d1 = 1.0 + x - a;
    let d2 = 1.0 + x + a;
    if d1.abs() <= EPS || d2.abs() <= EPS {
        return Err(Error::Invalid(format!(
            "singular point ({x}, {y}): vanishing denominator"
        )));
    }
    let t1 = 2.0 * x * (1.0 - y) / d1;
    let t2 = 2.0 * x * (1.0 - y) / d2;
    let e = n as i32 + 1;
    let closed = (1.0 - x + a) / (2.0 * a) * t1.powi(e) - (1.0 - x - a) / (2.0 * a) * t2.powi(e);
    let exact = closed_form(GraphFamily::Path(n))?.eval_f64(x, y);
    Ok((closed, exact))
}

// ---- splitting formulas ------------------------------------------------------

/// Join formula: `Q(G v H) = Q(G) + Q(H) + [(1+x)^s - 1][(1+x)^t - 1] y - 1`
/// where `s`, `t` are the vertex counts of the two sides.
pub fn q_join(qg: &BiPoly, qh: &BiPoly, s: usize, t: usize) -> Result<BiPoly> {
    if qg.deg_x() != Some(s as u32) {
        return Err(Error::Invalid(format!(
            "join degree mismatch: left polynomial has x-degree {:?}, expected {s}",
            qg.deg_x()
        )));
    }
    if qh.deg_x() != Some(t as u32) {
        return Err(Error::Invalid(format!(
            "join degree mismatch: right polynomial has x-degree {:?}, expected {t}",
            qh.deg_x()
        )));
    }
    let bracket = |n: usize| &one_plus_x_pow(n as u32) - &BiPoly::one();
    let cross = &(&bracket(s) * &bracket(t)) * &BiPoly::y();
    Ok(&(&(qg + qh) + &cross) - &BiPoly::one())
}

/// Articulation splitting: with `G = H u K` glued at one vertex `v`,
/// `Q(G) = Q(H-v) Q(K-v) + (1/xy) [Q(H) - Q(H-v)] [Q(K) - Q(K-v)]`.
/// The bracketed differences must be divisible by `xy`.
pub fn q_articulation_split(
    qh: &BiPoly,
    qh_minus_v: &BiPoly,
    qk: &BiPoly,
    qk_minus_v: &BiPoly,
) -> Result<BiPoly> {
    let b1 = qh - qh_minus_v;
    let b2 = qk - qk_minus_v;
    if !b1.divisible_by_monomial(1, 1) || !b2.divisible_by_monomial(1, 1) {
        return Err(Error::Invalid(
            "articulation split: bracketed difference not divisible by xy".into(),
        ));
    }
    Ok(&(qh_minus_v * qk_minus_v) + &(&b1.exact_div_monomial(1, 1)? * &b2))
}

/// Clique separator splitting over a separation `(U, H, K)`:
/// `Q(G) = Q(H-U) Q(K-U) + (1/y) sum over nonempty A in U of x^{-|A|}
/// [sum over B containing U∖A of (-1)^|B| Q(H-B)] [same for K]`.
/// The inner polynomials are computed by the memoized recursion.
pub fn q_clique_separator_split(
    g: &Graph,
    sep: &CliqueSeparation,
    cache: &QCache,
) -> Result<BiPoly> {
    sep.validate(g)?;
    let r = sep.clique.len();
    let subsets = 1usize << r;
    let minus = |side: &Graph, positions: &[usize], bm: usize| -> BiPoly {
        let mask: u64 = iter_bits(bm as u64).map(|i| 1u64 << positions[i]).sum();
        q_recursive(&side.delete_vertex_set(mask), cache)
    };
    let qh: Vec<BiPoly> = (0..subsets).map(|bm| minus(&sep.h, &sep.clique_in_h, bm)).collect();
    let qk: Vec<BiPoly> = (0..subsets).map(|bm| minus(&sep.k, &sep.clique_in_k, bm)).collect();
    let mut total = &qh[subsets - 1] * &qk[subsets - 1];
    for a in 1..subsets {
        let complement = (subsets - 1) & !a;
        let signed_sum = |qs: &[BiPoly]| {
            let mut acc = BiPoly::zero();
            for (b, q) in qs.iter().enumerate() {
                if b & complement == complement {
                    acc = if b.count_ones() % 2 == 0 {
                        &acc + q
                    } else {
                        &acc - q
                    };
                }
            }
            acc
        };
        let product = &signed_sum(&qh) * &signed_sum(&qk);
        total = &total + &product.exact_div_monomial(a.count_ones(), 1)?;
    }
    Ok(total)
}

/// Splitting driver: per connected component, try an articulation first,
/// then a clique separator of size up to [`DEFAULT_SEPARATOR_BOUND`], then
/// fall back to the plain recursion.
pub fn q_split(g: &Graph, cache: &QCache) -> Result<BiPoly> {
    let comps = g.connected_components();
    if comps.len() != 1 {
        let mut acc = BiPoly::one();
        for &m in &comps {
            acc = &acc * &q_split(&g.induced_subgraph(m), cache)?;
        }
        return Ok(acc);
    }
    if g.n() <= 2 {
        return Ok(q_recursive(g, cache));
    }
    if let Some(&v) = g.articulation_points().first() {
        let rest = full_mask(g.n()) & !(1 << v);
        let pieces = g.induced_subgraph(rest).connected_components();
        // component masks are labeled in the v-deleted graph; map them back
        let kept: Vec<usize> = iter_bits(rest).collect();
        let lift = |m: u64| -> u64 { iter_bits(m).map(|i| 1u64 << kept[i]).sum() };
        let h_mask = lift(pieces[0]) | 1 << v;
        let k_mask = pieces[1..].iter().fold(0, |acc, &m| acc | lift(m)) | 1 << v;
        let side = |mask: u64| -> Result<(BiPoly, BiPoly)> {
            let sub = g.induced_subgraph(mask);
            let pos = iter_bits(mask).position(|u| u == v).unwrap();
            Ok((
                q_recursive(&sub, cache),
                q_recursive(&sub.delete_vertex(pos)?, cache),
            ))
        };
        let (qh, qhm) = side(h_mask)?;
        let (qk, qkm) = side(k_mask)?;
        return q_articulation_split(&qh, &qhm, &qk, &qkm);
    }
    if let Some(sep) = g.find_clique_separator(DEFAULT_SEPARATOR_BOUND) {
        return q_clique_separator_split(g, &sep, cache);
    }
    Ok(q_recursive(g, cache))
}

// ---- universality ------------------------------------------------------------

/// The generic vertex elimination recursion
/// `f(G) = f(G-v) + beta f(G-N[v]) + gamma f(G/v)` with `f(null) = 1`,
/// `f(E_1) = 1 + beta + gamma`, multiplicative over components. For
/// `gamma != 0` this equals `Q(G; gamma, beta/gamma + 1)`.
pub fn universal_recursion(g: &Graph, beta: &BigRational, gamma: &BigRational) -> BigRational {
    fn go(
        g: &Graph,
        beta: &BigRational,
        gamma: &BigRational,
        memo: &mut HashMap<Vec<u8>, BigRational>,
    ) -> BigRational {
        let n = g.n();
        if n == 0 {
            return BigRational::one();
        }
        let comps = g.connected_components();
        if comps.len() > 1 {
            return comps
                .iter()
                .map(|&m| go(&g.induced_subgraph(m), beta, gamma, memo))
                .product();
        }
        if n == 1 {
            return BigRational::one() + beta + gamma;
        }
        let key = if n <= DEFAULT_CANON_BOUND {
            let k = g.canonical_form().expect("within canon bound");
            if let Some(hit) = memo.get(&k) {
                return hit.clone();
            }
            Some(k)
        } else {
            None
        };
        let v = (0..n).max_by_key(|&v| (g.degree(v), n - v)).unwrap();
        let value = go(&g.delete_vertex(v).unwrap(), beta, gamma, memo)
            + beta * go(&g.extract_closed_neighborhood(v).unwrap(), beta, gamma, memo)
            + gamma * go(&g.contract_vertex(v).unwrap(), beta, gamma, memo);
        if let Some(k) = key {
            memo.insert(k, value.clone());
        }
        value
    }
    go(g, beta, gamma, &mut HashMap::new())
}

// ---- driver --------------------------------------------------------------------

/// Every polynomial leaving this module satisfies `q_00 = 1`,
/// `Q(G;x,1) = (1+x)^n` and `deg_x Q = n`.
pub fn verify_q_normalizations(n: usize, poly: &BiPoly) -> Result<()> {
    if !poly.coeff(0, 0).is_one() {
        return Err(Error::Inconsistency("q_00 != 1".into()));
    }
    if poly.deg_x() != Some(n as u32) {
        return Err(Error::Inconsistency(format!(
            "deg_x is {:?}, expected {n}",
            poly.deg_x()
        )));
    }
    if poly.subst_y_one() != one_plus_x_pow(n as u32).subst_y_one() {
        return Err(Error::Inconsistency("Q(G;x,1) != (1+x)^n".into()));
    }
    Ok(())
}

/// Compute Q by the requested method; `Auto` currently means the memoized
/// recursion. The printed polynomial never depends on the method.
pub fn compute(g: &Graph, method: Method, cache: &QCache) -> Result<QResult> {
    let poly = match method {
        Method::Brute => q_brute_force(g)?,
        Method::Auto | Method::Recursive => q_recursive(g, cache),
        Method::Treewidth => {
            let td = crate::graph::td::TreeDecomposition::greedy_min_fill(g);
            crate::tw::q_treewidth(g, &td)?
        }
        Method::Split => q_split(g, cache)?,
    };
    verify_q_normalizations(g.n(), &poly)
        .expect("computed polynomial violates Q normalization");
    Ok(QResult {
        poly,
        method,
        stats: cache.stats(),
    })
}

/// Fast evaluation on the tractable lines: `Q(G;x,0) = 1` for any graph,
/// and `Q(G;x,1) = (1+x)^n` without touching the full polynomial.
pub fn eval_tractable_line(g: &Graph, x: &BigRational, y: &BigRational) -> Option<BigRational> {
    if y.is_zero() {
        return Some(BigRational::one());
    }
    if y.is_one() {
        let mut acc = BigRational::one();
        let base = BigRational::one() + x;
        for _ in 0..g.n() {
            acc *= &base;
        }
        return Some(acc);
    }
    None
}

/// `(1+x)^n` as a univariate row, used by normalization checks.
pub fn binomial_row(n: usize) -> UniPoly {
    one_plus_x_pow(n as u32).subst_y_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, empty_graph, path, star, Graph};

    /// The star polynomial printed in full in the source material.
    pub(crate) fn golden_k13() -> BiPoly {
        let terms = [
            (0u32, 0u32, 1i64),
            (1, 1, 4),
            (2, 1, 3),
            (3, 1, 3),
            (4, 1, 1),
            (2, 2, 3),
            (3, 3, 1),
        ];
        terms
            .iter()
            .fold(BiPoly::zero(), |acc, &(i, j, c)| {
                &acc + &BiPoly::monomial(i, j, BigInt::from(c))
            })
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(q_brute_force(&star(3)).unwrap(), golden_k13());
        assert_eq!(q_brute_force(&empty_graph(0)).unwrap(), BiPoly::one());
        // P_3 by hand: all 8 subsets
        let p3 = q_brute_force(&path(3)).unwrap();
        let expected = [(0, 0, 1), (1, 1, 3), (2, 1, 2), (2, 2, 1), (3, 1, 1)]
            .iter()
            .fold(BiPoly::zero(), |acc, &(i, j, c)| {
                &acc + &BiPoly::monomial(i, j, BigInt::from(c))
            });
        assert_eq!(p3, expected);
        assert!(q_brute_force(&empty_graph(25)).is_err());
    }

    #[test]
    fn parallel_and_sequential_brute_agree() {
        let g = crate::graph::grid(4, 4);
        assert_eq!(q_brute_force(&g).unwrap(), q_brute_force_seq(&g).unwrap());
    }

    #[test]
    fn recursion_examples() {
        let cache = QCache::new();
        assert_eq!(q_recursive(&empty_graph(1), &cache), q_single_vertex());
        assert_eq!(
            q_recursive(&complete(3), &cache),
            q_brute_force(&complete(3)).unwrap()
        );
        let two_p2 = path(2).disjoint_union(&path(2)).unwrap();
        let qp2 = q_brute_force(&path(2)).unwrap();
        assert_eq!(q_recursive(&two_p2, &cache), &qp2 * &qp2);
        assert!(cache.stats().recursion_nodes > 0);
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            closed_form(GraphFamily::Complete(3)).unwrap(),
            q_brute_force(&complete(3)).unwrap()
        );
        assert_eq!(
            closed_form(GraphFamily::Empty(2)).unwrap(),
            one_plus_xy_pow(2)
        );
        assert_eq!(
            closed_form(GraphFamily::Path(2)).unwrap(),
            q_brute_force(&path(2)).unwrap()
        );
        for n in 3..=8 {
            assert_eq!(
                closed_form(GraphFamily::Cycle(n)).unwrap(),
                q_brute_force(&cycle(n)).unwrap(),
                "cycle n = {n}"
            );
        }
        assert_eq!(
            closed_form(GraphFamily::Star(3)).unwrap(),
            golden_k13()
        );
        assert!(closed_form(GraphFamily::Cycle(2)).is_err());
    }

    #[test]
    fn path_closed_form_numeric() {
        let (closed, exact) = q_path_closed_form_check(1, 1.0, 2.0).unwrap();
        assert!((closed - 3.0).abs() < 1e-9 && (exact - 3.0).abs() < 1e-12);
        let (closed, exact) = q_path_closed_form_check(0, 1.0, 1.5).unwrap();
        assert!((closed - 1.0).abs() < 1e-9 && exact == 1.0);
        let (closed, exact) = q_path_closed_form_check(4, 0.5, 2.0).unwrap();
        assert!((closed - exact).abs() / exact.abs() < 1e-9);
        // y = 1 makes 1 + x - a vanish
        assert!(q_path_closed_form_check(3, 0.5, 1.0).is_err());
    }

    #[test]
    fn join_examples() {
        let e1 = closed_form(GraphFamily::Empty(1)).unwrap();
        let k2 = q_join(&e1, &e1, 1, 1).unwrap();
        assert_eq!(k2, q_brute_force(&complete(2)).unwrap());
        let e3 = closed_form(GraphFamily::Empty(3)).unwrap();
        assert_eq!(q_join(&e1, &e3, 1, 3).unwrap(), golden_k13());
        for (s, t) in [(2, 3), (3, 3), (1, 4)] {
            let es = closed_form(GraphFamily::Empty(s)).unwrap();
            let et = closed_form(GraphFamily::Empty(t)).unwrap();
            assert_eq!(
                q_join(&es, &et, s, t).unwrap(),
                closed_form(GraphFamily::CompleteBipartite(s, t)).unwrap()
            );
        }
        assert!(q_join(&e1, &e3, 2, 3).is_err());
    }

    #[test]
    fn articulation_split_examples() {
        // P_3 = two P_2 glued at the center
        let qp2 = q_brute_force(&path(2)).unwrap();
        let qp1 = q_single_vertex();
        let got = q_articulation_split(&qp2, &qp1, &qp2, &qp1).unwrap();
        assert_eq!(got, q_brute_force(&path(3)).unwrap());
        // triangle and an edge sharing a vertex: the 3-pan minus the cycle
        let pan = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (2, 3)]).unwrap();
        let cache = QCache::new();
        assert_eq!(q_split(&pan, &cache).unwrap(), q_brute_force(&pan).unwrap());
        // a difference with no y factor is rejected
        assert!(q_articulation_split(&one_plus_x_pow(1), &BiPoly::one(), &qp2, &qp1).is_err());
    }

    #[test]
    fn clique_separator_split_examples() {
        let cache = QCache::new();
        // two triangles sharing an edge
        let diamond = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]).unwrap();
        let sep = diamond.find_clique_separator(4).unwrap();
        assert_eq!(
            q_clique_separator_split(&diamond, &sep, &cache).unwrap(),
            q_brute_force(&diamond).unwrap()
        );
        // |U| = 1 reduces to the articulation case on P_3
        let sep = path(3).find_clique_separator(4).unwrap();
        assert_eq!(
            q_clique_separator_split(&path(3), &sep, &cache).unwrap(),
            q_brute_force(&path(3)).unwrap()
        );
        // two K_4's sharing a triangle
        let mut edges = Vec::new();
        for u in 0..4usize {
            for v in u + 1..4 {
                edges.push((u, v));
            }
        }
        for &u in &[1usize, 2, 3, 4] {
            for &v in &[1usize, 2, 3, 4] {
                if u < v {
                    edges.push((u, v));
                }
            }
        }
        let glued = Graph::from_edges(5, &edges).unwrap();
        assert_eq!(
            q_split(&glued, &cache).unwrap(),
            q_brute_force(&glued).unwrap()
        );
    }

    #[test]
    fn universal_recursion_examples() {
        let rat = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        // f(E_1) = 1 + beta + gamma
        assert_eq!(
            universal_recursion(&empty_graph(1), &rat(2, 1), &rat(1, 3)),
            rat(10, 3)
        );
        // (P_3, beta=2, gamma=1) = Q(P_3; 1, 3)
        let q = q_brute_force(&path(3)).unwrap();
        assert_eq!(
            universal_recursion(&path(3), &rat(2, 1), &rat(1, 1)),
            q.eval(&rat(1, 1), &rat(3, 1))
        );
        // beta = 0, gamma = 1 counts all subsets
        assert_eq!(
            universal_recursion(&cycle(5), &rat(0, 1), &rat(1, 1)),
            rat(32, 1)
        );
    }

    #[test]
    fn pivot_rule_does_not_change_result() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3)])
            .unwrap();
        let reference = q_brute_force(&g).unwrap();
        for seed in 0..5 {
            let cache = QCache::new();
            assert_eq!(
                q_recursive_with_pivot(&g, &cache, PivotRule::Random(seed)),
                reference
            );
        }
    }

    #[test]
    fn normalization_checks() {
        let q = golden_k13();
        verify_q_normalizations(4, &q).unwrap();
        assert!(verify_q_normalizations(3, &q).is_err());
        let rat = |a: i64| BigRational::from(BigInt::from(a));
        assert_eq!(
            eval_tractable_line(&complete(5), &rat(7), &rat(0)),
            Some(rat(1))
        );
        assert_eq!(
            eval_tractable_line(&complete(5), &rat(1), &rat(1)),
            Some(rat(32))
        );
        assert_eq!(eval_tractable_line(&complete(5), &rat(1), &rat(2)), None);
    }

    #[test]
    fn compute_methods_agree() {
        let g = crate::graph::grid(2, 3);
        let cache = QCache::new();
        let reference = q_brute_force(&g).unwrap();
        for method in [Method::Auto, Method::Brute, Method::Recursive, Method::Treewidth, Method::Split] {
            assert_eq!(compute(&g, method, &cache).unwrap().poly, reference);
        }
    }
}
