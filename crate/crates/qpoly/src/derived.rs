//! Invariants read off Q(G;x,y): vertex/edge/component counts, the
//! independence polynomial, connected-subgraph and separating-set counts,
//! the exact distribution of the number of components under random vertex
//! failure, and reconstruction of Q from the vertex-deleted deck.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::poly::{BiPoly, UniPoly};
use crate::q::{q_recursive, QCache};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(n, e, k)` from a subgraph component polynomial: the number of
/// vertices is the x-degree (cross-checked against `log2 Q(1,1)`), the
/// number of edges is `[x^2 y] Q`, and the number of components is the
/// y-degree of the `x^n` coefficient.
pub fn basic_invariants(q: &BiPoly) -> Result<(usize, BigInt, usize)> {
    let n = q
        .deg_x()
        .ok_or_else(|| Error::Inconsistency("zero polynomial is not a Q polynomial".into()))?
        as usize;
    let one = BigRational::one();
    let total = q.eval(&one, &one);
    if !total.is_integer() || total.to_integer() != BigInt::one() << n {
        return Err(Error::Inconsistency(format!(
            "Q(1,1) = {total} does not equal 2^{n}"
        )));
    }
    let e = q.coeff(2, 1);
    let k = q
        .coeff_of_x(n as u32)
        .degree()
        .ok_or_else(|| Error::Inconsistency("missing x^n term".into()))? as usize;
    Ok((n, e, k))
}

/// Independence number and independence polynomial: `alpha = deg_y Q` and
/// `a_j = [x^j y^j] Q`.
pub fn independence(q: &BiPoly) -> (usize, UniPoly) {
    let alpha = q.deg_y().unwrap_or(0) as usize;
    let coeffs: Vec<BigInt> = (0..=alpha as u32).map(|j| q.coeff(j, j)).collect();
    (alpha, UniPoly::new(coeffs))
}

/// The connected-subgraph polynomial `S(G;x) = [y^1] Q`, the separating
/// set counts `c_m = C(n, n-m) - s_{n-m}`, and the total number of
/// separating sets `2^n - S(G;1)`.
///
/// The counts follow the stated formula literally, which makes the full
/// vertex set `X = V` count as separating (the null graph is left behind);
/// so `c_n = 1` for every connected graph, complete graphs included.
pub fn connected_counts(q: &BiPoly) -> Result<(UniPoly, Vec<BigInt>, BigInt)> {
    let n = q
        .deg_x()
        .ok_or_else(|| Error::Inconsistency("zero polynomial is not a Q polynomial".into()))?
        as usize;
    let s = q.coeff_of_y(1);
    let c: Vec<BigInt> = (0..=n)
        .map(|m| binomial(n, n - m) - s.coeff((n - m) as u32))
        .collect();
    let total = (BigInt::one() << n) - s.eval_one();
    Ok((s, c, total))
}

/// Exact distribution of the number of components when each vertex
/// survives independently with probability `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReliabilityDistribution {
    pub p: BigRational,
    /// `probs[k] = P_k(G)` for `k = 0..=n`.
    pub probs: Vec<BigRational>,
}

impl ReliabilityDistribution {
    /// Residual connectedness reliability, `P_1`.
    pub fn residual_connectedness(&self) -> BigRational {
        self.probs.get(1).cloned().unwrap_or_else(BigRational::zero)
    }
}

/// `P_k = (1-p)^n [y^k]Q evaluated at x = p/(1-p)`, exactly. Requires
/// `0 <= p <= 1`; at `p = 1` the distribution concentrates on `k(G)`.
pub fn reliability(q: &BiPoly, p: &BigRational) -> Result<ReliabilityDistribution> {
    if p.is_negative() || p > &BigRational::one() {
        return Err(Error::Invalid(format!("survival probability {p} not in [0, 1]")));
    }
    let (n, _, k) = basic_invariants(q)?;
    let mut probs = vec![BigRational::zero(); n + 1];
    if p == &BigRational::one() {
        probs[k] = BigRational::one();
        return Ok(ReliabilityDistribution { p: p.clone(), probs });
    }
    let q_fail = BigRational::one() - p;
    let ratio = p / &q_fail;
    let mut scale = BigRational::one();
    for _ in 0..n {
        scale *= &q_fail;
    }
    for (j, prob) in probs.iter_mut().enumerate() {
        *prob = &scale * q.coeff_of_y(j as u32).eval(&ratio);
    }
    let sum: BigRational = probs.iter().cloned().sum();
    if !sum.is_one() {
        return Err(Error::Inconsistency(format!(
            "component distribution sums to {sum}, not 1"
        )));
    }
    Ok(ReliabilityDistribution { p: p.clone(), probs })
}

/// CSV rows `p,k,P_k` over a grid of survival probabilities, rendered as
/// floats for plotting; the underlying arithmetic stays exact.
pub fn reliability_csv(q: &BiPoly, grid: &[BigRational]) -> Result<String> {
    let mut out = String::from("p,k,P_k\n");
    for p in grid {
        let dist = reliability(q, p)?;
        for (k, prob) in dist.probs.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{}\n",
                rational_to_f64(p),
                k,
                rational_to_f64(prob)
            ));
        }
    }
    Ok(out)
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Observed frequencies of component counts over `trials` random vertex
/// subsets with survival probability `p`. Deterministic for a fixed seed,
/// with or without the parallel feature.
pub fn monte_carlo_component_frequencies(
    g: &Graph,
    p: f64,
    trials: u64,
    seed: u64,
) -> Vec<f64> {
    let n = g.n();
    const CHUNK: u64 = 4096;
    let chunks: Vec<u64> = (0..trials.div_ceil(CHUNK)).collect();
    let run_chunk = |&chunk: &u64| -> Vec<u64> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ (chunk + 1));
        let mut counts = vec![0u64; n + 1];
        let lo = chunk * CHUNK;
        for _ in lo..trials.min(lo + CHUNK) {
            let mut mask = 0u64;
            for v in 0..n {
                if rng.gen_bool(p) {
                    mask |= 1 << v;
                }
            }
            counts[g.component_count_of_induced(mask)] += 1;
        }
        counts
    };
    let zero = || vec![0u64; n + 1];
    let merge = |mut a: Vec<u64>, b: Vec<u64>| {
        for (x, y) in a.iter_mut().zip(b) {
            *x += y;
        }
        a
    };
    #[cfg(feature = "parallel")]
    let counts = chunks.par_iter().map(run_chunk).reduce(zero, merge);
    #[cfg(not(feature = "parallel"))]
    let counts = chunks.iter().map(run_chunk).fold(zero(), merge);
    counts
        .into_iter()
        .map(|c| c as f64 / trials as f64)
        .collect()
}

/// The multiset of subgraph component polynomials of the vertex-deleted
/// subgraphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deck {
    pub entries: Vec<BiPoly>,
}

/// Deck of `g`, one polynomial per deleted vertex. Defined for `n >= 3`.
pub fn deck(g: &Graph, cache: &QCache) -> Result<Deck> {
    if g.n() < 3 {
        return Err(Error::Bounds(format!(
            "deck reconstruction needs n >= 3, got {}",
            g.n()
        )));
    }
    let entries = (0..g.n())
        .map(|v| q_recursive(&g.delete_vertex(v).unwrap(), cache))
        .collect();
    Ok(Deck { entries })
}

/// Recover Q(G;x,y) from the deck. Every induced subgraph on `i < n`
/// vertices is counted `n - i` times in the deck sum, giving the
/// coefficients below `x^n` by exact division. The top term is
/// `x^n y^{k(G)}`, and `k(G)` is read off the deck as follows: the
/// `x^{n-1}` term of each entry carries `k(G - v)`, and the `[x^2 y]`
/// edge counts give `e(G)` (each edge survives `n - 2` deletions) and
/// with it every vertex degree. Deleting an isolated vertex drops the
/// component count by one, so if some `v` is isolated, `k(G) =
/// k(G - v) + 1`; otherwise no deletion can lower it and at least two
/// leaf-like deletions preserve it, so `k(G) = min_v k(G - v)`.
///
/// (The isolated-vertex branch subsumes the edgeless special case, and is
/// needed in general: with two isolated vertices and an edge around, the
/// smallest repeated `k(G - v)` is `k(G) - 1`, not `k(G)`.)
pub fn reconstruct(deck: &Deck) -> Result<BiPoly> {
    let n = deck.entries.len();
    if n < 3 {
        return Err(Error::Inconsistency(format!(
            "deck has {n} entries, need at least 3"
        )));
    }
    let mut tops: Vec<usize> = Vec::with_capacity(n);
    for entry in &deck.entries {
        if entry.deg_x() != Some(n as u32 - 1) {
            return Err(Error::Inconsistency(format!(
                "deck entry has x-degree {:?}, expected {}",
                entry.deg_x(),
                n - 1
            )));
        }
        let top = entry
            .coeff_of_x(n as u32 - 1)
            .degree()
            .ok_or_else(|| Error::Inconsistency("deck entry missing its top term".into()))?;
        tops.push(top as usize);
    }
    let sum = deck
        .entries
        .iter()
        .fold(BiPoly::zero(), |acc, entry| &acc + entry);
    let mut q = BiPoly::zero();
    for (i, j, c) in sum.terms() {
        let times = BigInt::from(n - i as usize);
        let (quot, rem) = num_integer::Integer::div_rem(c, &times);
        if !rem.is_zero() {
            return Err(Error::Inconsistency(format!(
                "deck sum coefficient at x^{i} y^{j} is not divisible by {times}"
            )));
        }
        q = &q + &BiPoly::monomial(i, j, quot);
    }
    let edge_sum: BigInt = deck.entries.iter().map(|entry| entry.coeff(2, 1)).sum();
    let (edges, rem) = num_integer::Integer::div_rem(&edge_sum, &BigInt::from(n - 2));
    if !rem.is_zero() {
        return Err(Error::Inconsistency(format!(
            "deck edge counts sum to {edge_sum}, not divisible by {}",
            n - 2
        )));
    }
    let isolated = deck
        .entries
        .iter()
        .position(|entry| entry.coeff(2, 1) == edges);
    let omega = match isolated {
        Some(v) => tops[v] + 1,
        None => *tops.iter().min().expect("deck is nonempty"),
    };
    Ok(&q + &BiPoly::monomial(n as u32, omega as u32, BigInt::one()))
}

/// Star determination predicate: `[x^{n+1} y] Q = 1`, `[x^n y^n] Q = 1`
/// and no `x^{n+2}` terms together force the graph to be `K_{1,n}`.
/// (For `n = 1` no graph satisfies the predicate; `K_2`'s polynomial has
/// `[x y] = 2`.)
pub fn is_star_polynomial(q: &BiPoly, n: usize) -> bool {
    q.coeff(n as u32 + 1, 1).is_one()
        && q.coeff(n as u32, n as u32).is_one()
        && q.coeff_of_x(n as u32 + 2).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, empty_graph, path, star};
    use crate::poly::one_plus_xy_pow;
    use crate::q::{q_brute_force, QCache};

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn basic_invariants_examples() {
        let q = q_brute_force(&star(3)).unwrap();
        let (n, e, k) = basic_invariants(&q).unwrap();
        assert_eq!((n, e, k), (4, BigInt::from(3), 1));
        let (n, e, k) = basic_invariants(&one_plus_xy_pow(3)).unwrap();
        assert_eq!((n, e, k), (3, BigInt::zero(), 3));
        let g = path(2).disjoint_union(&empty_graph(1)).unwrap();
        let (n, e, k) = basic_invariants(&q_brute_force(&g).unwrap()).unwrap();
        assert_eq!((n, e, k), (3, BigInt::from(1), 2));
        // scaling breaks the Q(1,1) = 2^n cross-check
        let not_q = one_plus_xy_pow(1).scale(&BigInt::from(2));
        assert!(basic_invariants(&not_q).is_err());
    }

    #[test]
    fn independence_examples() {
        let (alpha, ind) = independence(&q_brute_force(&star(3)).unwrap());
        assert_eq!(alpha, 3);
        assert_eq!(
            ind.coeffs().to_vec(),
            [1, 4, 3, 1].map(BigInt::from).to_vec()
        );
        let (alpha, ind) = independence(&q_brute_force(&complete(5)).unwrap());
        assert_eq!(alpha, 1);
        assert_eq!(ind.coeffs().to_vec(), [1, 5].map(BigInt::from).to_vec());
        let (alpha, ind) = independence(&one_plus_xy_pow(4));
        assert_eq!(alpha, 4);
        assert_eq!(ind, crate::q::binomial_row(4));
    }

    #[test]
    fn connected_counts_examples() {
        let (s, c, total) = connected_counts(&q_brute_force(&path(3)).unwrap()).unwrap();
        assert_eq!(s.coeffs().to_vec(), [0, 3, 2, 1].map(BigInt::from).to_vec());
        // c_1 = C(3,2) - s_2 = 1: the center
        assert_eq!(c[1], BigInt::one());
        assert_eq!(total, BigInt::from(2));
        let (s, _, _) = connected_counts(&q_brute_force(&complete(2)).unwrap()).unwrap();
        assert_eq!(s.coeffs().to_vec(), [0, 2, 1].map(BigInt::from).to_vec());
        // complete graphs: only X = V counts under the literal formula
        let (_, c, total) = connected_counts(&q_brute_force(&complete(4)).unwrap()).unwrap();
        assert_eq!(total, BigInt::one());
        assert_eq!(c[4], BigInt::one());
        assert!(c[..4].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn reliability_examples() {
        let q = one_plus_xy_pow(1);
        let d = reliability(&q, &rat(1, 3)).unwrap();
        assert_eq!(d.probs, vec![rat(2, 3), rat(1, 3)]);
        let d = reliability(&one_plus_xy_pow(2), &rat(1, 2)).unwrap();
        assert_eq!(d.probs, vec![rat(1, 4), rat(1, 2), rat(1, 4)]);
        let d = reliability(&q_brute_force(&complete(3)).unwrap(), &rat(1, 2)).unwrap();
        assert_eq!(d.probs[0], rat(1, 8));
        assert_eq!(d.probs[1], rat(7, 8));
        assert_eq!(d.residual_connectedness(), rat(7, 8));
        // the p = 1 limit concentrates on k(G)
        let d = reliability(&one_plus_xy_pow(3), &rat(1, 1)).unwrap();
        assert_eq!(d.probs, vec![rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)]);
        assert!(reliability(&q, &rat(3, 2)).is_err());
        assert!(reliability(&q, &rat(-1, 2)).is_err());
    }

    #[test]
    fn reliability_csv_shape() {
        let q = one_plus_xy_pow(1);
        let csv = reliability_csv(&q, &[rat(0, 1), rat(1, 2)]).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "p,k,P_k");
        assert_eq!(lines.len(), 1 + 2 * 2);
        assert_eq!(lines[3], "0.5,0,0.5");
    }

    #[test]
    fn monte_carlo_matches_exact_roughly() {
        let g = path(3);
        let q = q_brute_force(&g).unwrap();
        let exact = reliability(&q, &rat(1, 2)).unwrap();
        let trials = 20_000u64;
        let freq = monte_carlo_component_frequencies(&g, 0.5, trials, 42);
        for (k, prob) in exact.probs.iter().enumerate() {
            let p = rational_to_f64(prob);
            let se = (p * (1.0 - p) / trials as f64).sqrt();
            assert!(
                (freq[k] - p).abs() <= 4.0 * se.max(1e-9),
                "k = {k}: freq {} vs exact {p}",
                freq[k]
            );
        }
    }

    #[test]
    fn deck_reconstruction_examples() {
        let cache = QCache::new();
        // the last two force the isolated-vertex branch with edges present
        let edge_plus_isolates = [
            path(2).disjoint_union(&empty_graph(1)).unwrap(),
            path(2).disjoint_union(&empty_graph(2)).unwrap(),
        ];
        for g in [path(3), empty_graph(3), complete(3), star(3), path(5)]
            .into_iter()
            .chain(edge_plus_isolates)
        {
            let d = deck(&g, &cache).unwrap();
            assert_eq!(reconstruct(&d).unwrap(), q_brute_force(&g).unwrap());
        }
        assert!(deck(&path(2), &cache).is_err());
        // corrupted deck: mismatched entry degree
        let mut d = deck(&path(3), &cache).unwrap();
        d.entries[0] = one_plus_xy_pow(3);
        assert!(reconstruct(&d).is_err());
    }

    #[test]
    fn star_predicate_on_small_census() {
        let star_key = star(3).canonical_form().unwrap();
        for g in crate::graph::enumerate::all_graphs(4).unwrap() {
            let q = q_brute_force(&g).unwrap();
            assert_eq!(
                is_star_polynomial(&q, 3),
                g.canonical_form().unwrap() == star_key,
                "graph {:?}",
                g.edges()
            );
        }
    }
}
