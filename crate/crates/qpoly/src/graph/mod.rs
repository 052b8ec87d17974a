//! Simple graphs and multigraphs on at most 64 labeled vertices, with the
//! vertex elimination operations, structural queries, generators, parsing,
//! canonical forms and tree decompositions.

pub mod canon;
pub mod enumerate;
pub mod format;
pub mod td;

use std::collections::BTreeMap;

use rand::Rng;

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Bitmask of the vertex set `0..n`.
pub fn full_mask(n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        u64::MAX >> (64 - n)
    }
}

/// Simple undirected graph on labeled vertices `0..n`, adjacency stored as
/// one neighbor bitset per vertex. Invariants: symmetric, irreflexive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::Bounds(format!(
                "graph on {n} vertices exceeds the {MAX_VERTICES}-vertex limit"
            )));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Build from an edge list. Self-loops are rejected; repeated edges
    /// collapse to one.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::Invalid(format!("self-loop at vertex {u}")));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            let mut m = self.adj[u] & !(full_mask(u + 1));
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                out.push((u, v));
                m &= m - 1;
            }
        }
        out
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbors_mask(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn closed_neighborhood_mask(&self, v: usize) -> u64 {
        self.adj[v] | 1 << v
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::Invalid(format!(
                "vertex {v} out of range for {} vertices",
                self.n
            )))
        } else {
            Ok(())
        }
    }

    /// The induced subgraph on the vertices of `mask`, relabeled by
    /// order-preserving compaction.
    pub fn induced_subgraph(&self, mask: u64) -> Graph {
        let mask = mask & full_mask(self.n);
        let kept: Vec<usize> = iter_bits(mask).collect();
        let mut pos = [0usize; MAX_VERTICES];
        for (i, &v) in kept.iter().enumerate() {
            pos[v] = i;
        }
        let mut adj = vec![0u64; kept.len()];
        for (i, &v) in kept.iter().enumerate() {
            for u in iter_bits(self.adj[v] & mask) {
                adj[i] |= 1 << pos[u];
            }
        }
        Graph { n: kept.len(), adj }
    }

    /// Delete the vertices of `mask`, keeping the rest.
    pub fn delete_vertex_set(&self, mask: u64) -> Graph {
        self.induced_subgraph(full_mask(self.n) & !mask)
    }

    /// `G - v`: remove `v` and all incident edges.
    pub fn delete_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        Ok(self.delete_vertex_set(1 << v))
    }

    /// `G / v`: remove `v` after turning its neighborhood into a clique.
    pub fn contract_vertex(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let mut g = self.clone();
        let nb: Vec<usize> = iter_bits(self.adj[v]).collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                g.adj[a] |= 1 << b;
                g.adj[b] |= 1 << a;
            }
        }
        Ok(g.delete_vertex_set(1 << v))
    }

    /// `G - N[v]`: remove the closed neighborhood of `v`.
    pub fn extract_closed_neighborhood(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        Ok(self.delete_vertex_set(self.closed_neighborhood_mask(v)))
    }

    /// Connected components as vertex masks, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut remaining = full_mask(self.n);
        while remaining != 0 {
            let start = remaining & remaining.wrapping_neg();
            let comp = self.spread(start, remaining);
            out.push(comp);
            remaining &= !comp;
        }
        out
    }

    /// Number of components of the subgraph induced by `mask`.
    pub fn component_count_of_induced(&self, mask: u64) -> usize {
        let mut count = 0;
        let mut remaining = mask & full_mask(self.n);
        while remaining != 0 {
            let start = remaining & remaining.wrapping_neg();
            let comp = self.spread(start, remaining);
            count += 1;
            remaining &= !comp;
        }
        count
    }

    // breadth-first closure of `seed` within `allowed`
    fn spread(&self, seed: u64, allowed: u64) -> u64 {
        let mut comp = seed;
        let mut frontier = seed;
        while frontier != 0 {
            let mut next = 0u64;
            for v in iter_bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & allowed & !comp;
            comp |= frontier;
        }
        comp
    }

    /// `k(G)`; the null graph has zero components.
    pub fn component_count(&self) -> usize {
        self.component_count_of_induced(full_mask(self.n))
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        let mut g = Graph::empty(n)?;
        g.adj[..self.n].copy_from_slice(&self.adj);
        for v in 0..other.n {
            g.adj[self.n + v] = other.adj[v] << self.n;
        }
        Ok(g)
    }

    /// Disjoint union plus all edges between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        let left = full_mask(self.n);
        let right = full_mask(g.n) & !left;
        for v in 0..self.n {
            g.adj[v] |= right;
        }
        for v in self.n..g.n {
            g.adj[v] |= left;
        }
        Ok(g)
    }

    /// Relabel with `perm[v]` as the new label of `v`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            for u in iter_bits(self.adj[v]) {
                adj[perm[v]] |= 1 << perm[u];
            }
        }
        Graph { n: self.n, adj }
    }

    /// Vertices whose deletion increases the number of components.
    pub fn articulation_points(&self) -> Vec<usize> {
        let base = self.component_count();
        (0..self.n)
            .filter(|&v| {
                self.component_count_of_induced(full_mask(self.n) & !(1 << v)) > base
            })
            .collect()
    }

    /// Search for a separating clique of size at most `max_clique`, smallest
    /// cliques first, lexicographically within a size. Returns the split
    /// into exactly two components: `h` keeps the clique plus the first
    /// component of `G - U`, `k` keeps the clique plus everything else.
    pub fn find_clique_separator(&self, max_clique: usize) -> Option<CliqueSeparation> {
        if !self.is_connected() || self.n < 3 {
            return None;
        }
        let verts: Vec<usize> = (0..self.n).collect();
        for size in 1..=max_clique.min(self.n.saturating_sub(2)) {
            let mut found = None;
            for_each_combination(&verts, size, &mut |subset| {
                if found.is_some() {
                    return;
                }
                let is_clique = subset
                    .iter()
                    .enumerate()
                    .all(|(i, &a)| subset[i + 1..].iter().all(|&b| self.has_edge(a, b)));
                if !is_clique {
                    return;
                }
                let umask: u64 = subset.iter().map(|&v| 1u64 << v).sum();
                let rest = full_mask(self.n) & !umask;
                let comps = masked_components(self, rest);
                if comps.len() >= 2 {
                    found = Some((umask, comps));
                }
            });
            if let Some((umask, comps)) = found {
                let h_mask = umask | comps[0];
                let k_mask = umask | comps[1..].iter().fold(0, |a, c| a | c);
                return Some(CliqueSeparation::new(self, umask, h_mask, k_mask));
            }
        }
        None
    }
}

fn masked_components(g: &Graph, mask: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut remaining = mask;
    while remaining != 0 {
        let start = remaining & remaining.wrapping_neg();
        let comp = g.spread(start, remaining);
        out.push(comp);
        remaining &= !comp;
    }
    out
}

/// A separating clique `U` with the two split components `h` and `k`.
/// `h` and `k` are induced subgraphs of the original graph; the clique
/// position vectors locate `U` inside each after relabeling.
#[derive(Clone, Debug)]
pub struct CliqueSeparation {
    pub clique: Vec<usize>,
    pub h_vertices: Vec<usize>,
    pub k_vertices: Vec<usize>,
    pub h: Graph,
    pub k: Graph,
    pub clique_in_h: Vec<usize>,
    pub clique_in_k: Vec<usize>,
}

impl CliqueSeparation {
    fn new(g: &Graph, umask: u64, h_mask: u64, k_mask: u64) -> CliqueSeparation {
        let clique: Vec<usize> = iter_bits(umask).collect();
        let h_vertices: Vec<usize> = iter_bits(h_mask).collect();
        let k_vertices: Vec<usize> = iter_bits(k_mask).collect();
        let positions = |verts: &[usize]| -> Vec<usize> {
            clique
                .iter()
                .map(|&u| verts.iter().position(|&v| v == u).unwrap())
                .collect()
        };
        CliqueSeparation {
            clique_in_h: positions(&h_vertices),
            clique_in_k: positions(&k_vertices),
            h: g.induced_subgraph(h_mask),
            k: g.induced_subgraph(k_mask),
            clique,
            h_vertices,
            k_vertices,
        }
    }

    /// Check the defining conditions against `g`: `U` is a clique, the two
    /// sides cover `g`, intersect exactly in `U`, and neither side is `U`.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let fail = |msg: &str| Err(Error::Invalid(format!("invalid clique separation: {msg}")));
        for (i, &a) in self.clique.iter().enumerate() {
            for &b in &self.clique[i + 1..] {
                if !g.has_edge(a, b) {
                    return fail("separator is not a clique");
                }
            }
        }
        let hm: u64 = self.h_vertices.iter().map(|&v| 1u64 << v).sum();
        let km: u64 = self.k_vertices.iter().map(|&v| 1u64 << v).sum();
        let um: u64 = self.clique.iter().map(|&v| 1u64 << v).sum();
        if hm | km != full_mask(g.n()) {
            return fail("split components do not cover the graph");
        }
        if hm & km != um {
            return fail("split components intersect outside the clique");
        }
        if hm == um || km == um {
            return fail("a split component equals the clique");
        }
        for (u, v) in g.edges() {
            let b = 1u64 << u | 1u64 << v;
            if hm & b != b && km & b != b {
                return fail("an edge crosses between the split components");
            }
        }
        Ok(())
    }
}

/// Iterate the set bit positions of `mask` in increasing order.
pub fn iter_bits(mask: u64) -> impl Iterator<Item = usize> {
    std::iter::successors(
        if mask == 0 { None } else { Some(mask) },
        |&m| {
            let m = m & (m - 1);
            if m == 0 {
                None
            } else {
                Some(m)
            }
        },
    )
    .map(|m| m.trailing_zeros() as usize)
}

fn for_each_combination(items: &[usize], k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        let need = k - cur.len();
        for i in start..=items.len().saturating_sub(need) {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, f);
            cur.pop();
        }
    }
    if k <= items.len() {
        rec(items, k, 0, &mut Vec::new(), f);
    }
}

// ---- generators ----------------------------------------------------------

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::empty(n).expect("generator within bounds");
    for v in 0..n {
        g.adj[v] = full_mask(n) & !(1 << v);
    }
    g
}

pub fn empty_graph(n: usize) -> Graph {
    Graph::empty(n).expect("generator within bounds")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Graph::from_edges(n, &edges).expect("generator within bounds")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycles need at least 3 vertices");
    let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    edges.push((n - 1, 0));
    Graph::from_edges(n, &edges).expect("generator within bounds")
}

pub fn complete_bipartite(s: usize, t: usize) -> Graph {
    let mut edges = Vec::with_capacity(s * t);
    for a in 0..s {
        for b in 0..t {
            edges.push((a, s + b));
        }
    }
    Graph::from_edges(s + t, &edges).expect("generator within bounds")
}

/// The star `K_{1,n}` with the center labeled 0.
pub fn star(n: usize) -> Graph {
    complete_bipartite(1, n)
}

/// The `rows x cols` grid graph.
pub fn grid(rows: usize, cols: usize) -> Graph {
    let at = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((at(r, c), at(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((at(r, c), at(r + 1, c)));
            }
        }
    }
    Graph::from_edges(rows * cols, &edges).expect("generator within bounds")
}

/// Erdos-Renyi style random graph: each pair becomes an edge independently.
pub fn random_graph<R: Rng>(n: usize, edge_prob: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("random graph within bounds")
}

// ---- multigraphs ---------------------------------------------------------

/// Undirected multigraph with loops, the substrate for edge eliminations.
/// Edges are a multiset of unordered pairs; `(v, v)` is a loop.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), u32>,
}

impl MultiGraph {
    pub fn new(n: usize) -> Result<MultiGraph> {
        if n > MAX_VERTICES {
            return Err(Error::Bounds(format!(
                "multigraph on {n} vertices exceeds the {MAX_VERTICES}-vertex limit"
            )));
        }
        Ok(MultiGraph {
            n,
            edges: BTreeMap::new(),
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<MultiGraph> {
        let mut g = MultiGraph::new(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::Invalid(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn from_graph(g: &Graph) -> MultiGraph {
        MultiGraph::from_edges(g.n(), &g.edges()).expect("simple graph is a valid multigraph")
    }

    fn add_edge(&mut self, u: usize, v: usize) {
        let key = (u.min(v), u.max(v));
        *self.edges.entry(key).or_insert(0) += 1;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of edges counted with multiplicity.
    pub fn edge_count(&self) -> usize {
        self.edges.values().map(|&m| m as usize).sum()
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u32 {
        self.edges
            .get(&(u.min(v), u.max(v)))
            .copied()
            .unwrap_or(0)
    }

    /// Distinct edges with their multiplicities, sorted.
    pub fn edge_multiplicities(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.edges.iter().map(|(&e, &m)| (e, m))
    }

    /// Edge instances expanded by multiplicity, sorted.
    pub fn edge_instances(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (&e, &m) in &self.edges {
            for _ in 0..m {
                out.push(e);
            }
        }
        out
    }

    pub fn first_edge(&self) -> Option<(usize, usize)> {
        self.edges.keys().next().copied()
    }

    pub fn is_loop(e: (usize, usize)) -> bool {
        e.0 == e.1
    }

    /// Remove one instance of `e`.
    pub fn delete_one_edge(&self, e: (usize, usize)) -> MultiGraph {
        let key = (e.0.min(e.1), e.0.max(e.1));
        let mut g = self.clone();
        match g.edges.get_mut(&key) {
            Some(m) if *m > 1 => *m -= 1,
            Some(_) => {
                g.edges.remove(&key);
            }
            None => panic!("edge {key:?} not present"),
        }
        g
    }

    /// Contract `e`: delete one instance, then unify the endpoints. Other
    /// parallel copies of `e` become loops; for a loop this is just deletion.
    pub fn contract_edge(&self, e: (usize, usize)) -> MultiGraph {
        let (a, b) = (e.0.min(e.1), e.0.max(e.1));
        let g = self.delete_one_edge(e);
        if a == b {
            return g;
        }
        let mut merged = MultiGraph::new(self.n).unwrap();
        for (&(u, v), &m) in &g.edges {
            let u = if u == b { a } else { u };
            let v = if v == b { a } else { v };
            let key = (u.min(v), u.max(v));
            *merged.edges.entry(key).or_insert(0) += m;
        }
        merged.delete_isolated(b)
    }

    /// Extract `e`: remove both endpoints and everything incident to them.
    pub fn extract_edge(&self, e: (usize, usize)) -> MultiGraph {
        let (a, b) = (e.0.min(e.1), e.0.max(e.1));
        if a == b {
            self.delete_vertices(&[a])
        } else {
            self.delete_vertices(&[a, b])
        }
    }

    // remove a vertex known to have no incident edges, compacting labels
    fn delete_isolated(&self, v: usize) -> MultiGraph {
        debug_assert!(self.edges.keys().all(|&(a, b)| a != v && b != v));
        let shift = |u: usize| if u > v { u - 1 } else { u };
        MultiGraph {
            n: self.n - 1,
            edges: self
                .edges
                .iter()
                .map(|(&(a, b), &m)| ((shift(a), shift(b)), m))
                .collect(),
        }
    }

    /// Remove the listed vertices and all incident edges, relabeling the
    /// rest by order-preserving compaction.
    pub fn delete_vertices(&self, verts: &[usize]) -> MultiGraph {
        let mut dead = [false; MAX_VERTICES];
        for &v in verts {
            dead[v] = true;
        }
        let mut pos = [usize::MAX; MAX_VERTICES];
        let mut kept = 0;
        for v in 0..self.n {
            if !dead[v] {
                pos[v] = kept;
                kept += 1;
            }
        }
        let mut edges = BTreeMap::new();
        for (&(a, b), &m) in &self.edges {
            if !dead[a] && !dead[b] {
                edges.insert((pos[a], pos[b]), m);
            }
        }
        MultiGraph { n: kept, edges }
    }

    /// Components as vertex masks, where isolated vertices form their own
    /// singleton components.
    pub fn components(&self) -> Vec<u64> {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, v: usize) -> usize {
            if parent[v] != v {
                let r = find(parent, parent[v]);
                parent[v] = r;
            }
            parent[v]
        }
        for (&(a, b), _) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut groups: BTreeMap<usize, u64> = BTreeMap::new();
        for v in 0..self.n {
            let r = find(&mut parent, v);
            *groups.entry(r).or_insert(0) |= 1 << v;
        }
        let mut out: Vec<u64> = groups.into_values().collect();
        out.sort_by_key(|m| m.trailing_zeros());
        out
    }

    /// Keep the vertices of `mask`, dropping everything else.
    pub fn induced(&self, mask: u64) -> MultiGraph {
        let dropped: Vec<usize> = iter_bits(full_mask(self.n) & !mask).collect();
        self.delete_vertices(&dropped)
    }

    /// The underlying simple graph: no loops, no multiplicities.
    pub fn simplify(&self) -> Graph {
        let edges: Vec<(usize, usize)> = self
            .edges
            .keys()
            .copied()
            .filter(|&(a, b)| a != b)
            .collect();
        Graph::from_edges(self.n, &edges).expect("simplified multigraph fits")
    }
}

/// Line graph of a multigraph: one vertex per edge instance, adjacency by
/// shared endpoints. Parallel edges yield adjacent vertices; a loop's
/// vertex is adjacent to every edge at its endpoint. The result is simple.
pub fn line_graph(g: &MultiGraph) -> Result<Graph> {
    let inst = g.edge_instances();
    let mut lg = Graph::empty(inst.len())?;
    for i in 0..inst.len() {
        for j in i + 1..inst.len() {
            let (a, b) = inst[i];
            let (c, d) = inst[j];
            if a == c || a == d || b == c || b == d {
                lg.adj[i] |= 1 << j;
                lg.adj[j] |= 1 << i;
            }
        }
    }
    Ok(lg)
}
