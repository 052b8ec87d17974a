//! Canonical forms for graphs and multigraphs by exact search over vertex
//! orderings: iterated partition refinement, individualization on the first
//! non-singleton cell, and pruning by the orbits of automorphisms discovered
//! along the way. Equal keys iff isomorphic.

use super::{Graph, MultiGraph};
use crate::error::{Error, Result};

/// Default vertex bound for canonicalization.
pub const DEFAULT_CANON_BOUND: usize = 16;

impl Graph {
    pub fn canonical_form(&self) -> Result<Vec<u8>> {
        self.canonical_form_with_bound(DEFAULT_CANON_BOUND)
    }

    pub fn canonical_form_with_bound(&self, bound: usize) -> Result<Vec<u8>> {
        let n = self.n();
        let mut w = vec![0u32; n * n];
        for v in 0..n {
            for u in super::iter_bits(self.neighbors_mask(v)) {
                w[v * n + u] = 1;
            }
        }
        canonical_key(n, &w, bound)
    }
}

impl MultiGraph {
    /// Canonical form keyed on edge multiplicities and loop counts.
    pub fn canonical_form(&self) -> Result<Vec<u8>> {
        self.canonical_form_with_bound(DEFAULT_CANON_BOUND)
    }

    pub fn canonical_form_with_bound(&self, bound: usize) -> Result<Vec<u8>> {
        let n = self.n();
        let mut w = vec![0u32; n * n];
        for ((a, b), m) in self.edge_multiplicities() {
            w[a * n + b] = m;
            w[b * n + a] = m;
        }
        canonical_key(n, &w, bound)
    }
}

/// Canonical key of the symmetric weight matrix `w` (`n * n`, diagonal =
/// loop counts). The key is `[n]` followed by the lexicographically minimal
/// upper-triangle serialization over all vertex orderings consistent with
/// the refined partition.
pub(crate) fn canonical_key(n: usize, w: &[u32], bound: usize) -> Result<Vec<u8>> {
    if n > bound {
        return Err(Error::Bounds(format!(
            "canonical form limited to {bound} vertices, got {n}"
        )));
    }
    if w.iter().any(|&m| m > 255) {
        return Err(Error::Bounds("edge multiplicity exceeds 255".into()));
    }
    let mut key = vec![n as u8];
    if n == 0 {
        return Ok(key);
    }
    let mut search = Search {
        n,
        w,
        best: None,
        autos: Vec::new(),
    };
    let colors = search.refine(vec![0; n]);
    search.explore(&colors, &mut Vec::new());
    key.extend(search.best.expect("search visits at least one leaf").0);
    Ok(key)
}

struct Search<'a> {
    n: usize,
    w: &'a [u32],
    best: Option<(Vec<u8>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Iterate color refinement to a fixpoint. New color ids are ranks of
    /// sorted signatures, so they are invariant under relabeling.
    fn refine(&self, mut colors: Vec<u32>) -> Vec<u32> {
        loop {
            let mut sigs: Vec<(u32, u32, Vec<(u32, u32)>)> = Vec::with_capacity(self.n);
            for v in 0..self.n {
                let mut nb: Vec<(u32, u32)> = (0..self.n)
                    .filter(|&u| u != v && self.w[v * self.n + u] != 0)
                    .map(|u| (colors[u], self.w[v * self.n + u]))
                    .collect();
                nb.sort_unstable();
                sigs.push((colors[v], self.w[v * self.n + v], nb));
            }
            let mut uniq: Vec<&(u32, u32, Vec<(u32, u32)>)> = sigs.iter().collect();
            uniq.sort_unstable();
            uniq.dedup();
            let new: Vec<u32> = sigs
                .iter()
                .map(|s| uniq.binary_search(&s).unwrap() as u32)
                .collect();
            if new == colors {
                return colors;
            }
            colors = new;
        }
    }

    fn explore(&mut self, colors: &[u32], path: &mut Vec<usize>) {
        // cells in color order
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| (colors[v], v));
        let target = order
            .windows(2)
            .find(|pair| colors[pair[0]] == colors[pair[1]])
            .map(|pair| colors[pair[0]]);
        let Some(target_color) = target else {
            self.leaf(&order);
            return;
        };
        let cell: Vec<usize> = order
            .iter()
            .copied()
            .filter(|&v| colors[v] == target_color)
            .collect();
        let mut processed: Vec<usize> = Vec::new();
        for &v in &cell {
            if self.in_explored_orbit(v, &processed, path) {
                continue;
            }
            processed.push(v);
            let mut ind: Vec<u32> = colors.iter().map(|&c| c * 2 + 1).collect();
            ind[v] = colors[v] * 2;
            let refined = self.refine(ind);
            path.push(v);
            self.explore(&refined, path);
            path.pop();
        }
    }

    /// Orbit pruning: `v` can be skipped if some discovered automorphism
    /// fixing the whole individualization path maps it into an already
    /// explored vertex of the cell.
    fn in_explored_orbit(&self, v: usize, processed: &[usize], path: &[usize]) -> bool {
        if processed.is_empty() || self.autos.is_empty() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
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
        for auto in &self.autos {
            if path.iter().any(|&p| auto[p] != p) {
                continue;
            }
            for a in 0..self.n {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, auto[a]));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
        let rv = find(&mut parent, v);
        processed.iter().any(|&u| find(&mut parent, u) == rv)
    }

    fn leaf(&mut self, perm: &[usize]) {
        let mut key = Vec::with_capacity(self.n * (self.n + 1) / 2);
        for i in 0..self.n {
            for j in i..self.n {
                key.push(self.w[perm[i] * self.n + perm[j]] as u8);
            }
        }
        match &self.best {
            None => self.best = Some((key, perm.to_vec())),
            Some((best_key, best_perm)) => {
                if key < *best_key {
                    self.best = Some((key, perm.to_vec()));
                } else if key == *best_key {
                    // two orderings with the same matrix give an automorphism
                    let mut auto = vec![0usize; self.n];
                    for i in 0..self.n {
                        auto[best_perm[i]] = perm[i];
                    }
                    self.autos.push(auto);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, empty_graph, path, star, Graph};

    #[test]
    fn relabelings_share_keys() {
        // P_3 as 0-1-2 and as 1-0-2
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, &[(1, 0), (0, 2)]).unwrap();
        assert_eq!(a.canonical_form().unwrap(), b.canonical_form().unwrap());
    }

    #[test]
    fn non_isomorphic_keys_differ() {
        let p3 = path(3).canonical_form().unwrap();
        let k3 = complete(3).canonical_form().unwrap();
        assert_ne!(p3, k3);
        let k13 = star(3).canonical_form().unwrap();
        let p4 = path(4).canonical_form().unwrap();
        assert_ne!(k13, p4);
    }

    #[test]
    fn permutation_invariance() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5)]).unwrap();
        let key = g.canonical_form().unwrap();
        let perms: [[usize; 6]; 3] = [
            [5, 4, 3, 2, 1, 0],
            [2, 0, 4, 1, 5, 3],
            [1, 2, 3, 4, 5, 0],
        ];
        for perm in perms {
            assert_eq!(g.permuted(&perm).canonical_form().unwrap(), key);
        }
    }

    #[test]
    fn highly_symmetric_graphs_terminate() {
        // complete and empty graphs drive the orbit pruning path
        for n in [8, 12, 16] {
            complete(n).canonical_form().unwrap();
            empty_graph(n).canonical_form().unwrap();
        }
        crate::graph::cycle(12).canonical_form().unwrap();
    }

    #[test]
    fn bound_is_enforced() {
        assert!(empty_graph(17).canonical_form().is_err());
        assert!(empty_graph(17).canonical_form_with_bound(20).is_ok());
    }

    #[test]
    fn multigraph_keys_see_multiplicity() {
        use crate::graph::MultiGraph;
        let single = MultiGraph::from_edges(2, &[(0, 1)]).unwrap();
        let double = MultiGraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        assert_ne!(
            single.canonical_form().unwrap(),
            double.canonical_form().unwrap()
        );
        let looped = MultiGraph::from_edges(2, &[(0, 1), (1, 1)]).unwrap();
        let looped_other_end = MultiGraph::from_edges(2, &[(0, 1), (0, 0)]).unwrap();
        assert_eq!(
            looped.canonical_form().unwrap(),
            looped_other_end.canonical_form().unwrap()
        );
    }

    #[test]
    fn null_graph_key() {
        assert_eq!(empty_graph(0).canonical_form().unwrap(), vec![0]);
    }
}
