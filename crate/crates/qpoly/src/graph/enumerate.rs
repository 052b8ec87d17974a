//! Enumeration of small graphs up to isomorphism: free trees by the level
//! sequence successor method for rooted trees with centroid-canonical
//! dedup, and all graphs by an adjacency-bitmask sweep with canonical-form
//! dedup.

use std::collections::HashMap;

use super::Graph;
use crate::error::{Error, Result};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub const FREE_TREE_BOUND: usize = 12;
pub const ALL_GRAPHS_BOUND: usize = 7;
pub const EXTENDED_CENSUS_BOUND: usize = 8;

/// All free trees on `n` vertices, one per isomorphism class.
pub fn free_trees(n: usize) -> Result<Vec<Graph>> {
    if n > FREE_TREE_BOUND {
        return Err(Error::Bounds(format!(
            "free tree enumeration limited to {FREE_TREE_BOUND} vertices, got {n}"
        )));
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut seen: HashMap<Vec<u8>, ()> = HashMap::new();
    let mut out = Vec::new();
    for levels in RootedTreeLevels::new(n) {
        let tree = tree_from_levels(&levels);
        let key = centroid_canonical_key(&tree);
        if seen.insert(key, ()).is_none() {
            out.push(tree);
        }
    }
    Ok(out)
}

/// Iterator over canonical level sequences of rooted trees on `n` nodes,
/// in decreasing lexicographic order (Beyer-Hedetniemi successor rule).
struct RootedTreeLevels {
    levels: Option<Vec<usize>>,
}

impl RootedTreeLevels {
    fn new(n: usize) -> Self {
        RootedTreeLevels {
            levels: Some((1..=n).collect()),
        }
    }
}

impl Iterator for RootedTreeLevels {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.levels.take()?;
        let n = current.len();
        // successor: find the last entry above 2, then repeat the block
        // starting at its most recent shallower ancestor position
        if let Some(p) = (0..n).rev().find(|&i| current[i] > 2) {
            let q = (0..p).rev().find(|&i| current[i] == current[p] - 1).unwrap();
            let mut next = current.clone();
            for i in p..n {
                next[i] = next[i - (p - q)];
            }
            self.levels = Some(next);
        }
        Some(current)
    }
}

/// Build the tree for a canonical level sequence: the parent of node `i`
/// is the nearest earlier node one level up.
fn tree_from_levels(levels: &[usize]) -> Graph {
    let n = levels.len();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let parent = (0..i).rev().find(|&j| levels[j] == levels[i] - 1).unwrap();
        edges.push((parent, i));
    }
    Graph::from_edges(n, &edges).expect("level sequence within bounds")
}

/// Complete free-tree invariant: the minimal AHU string over the one or two
/// centroid rootings.
fn centroid_canonical_key(tree: &Graph) -> Vec<u8> {
    let n = tree.n();
    if n == 1 {
        return b"()".to_vec();
    }
    centroids(tree)
        .into_iter()
        .map(|root| ahu_encoding(tree, root))
        .min()
        .expect("trees have at least one centroid")
}

fn centroids(tree: &Graph) -> Vec<usize> {
    let n = tree.n();
    // subtree sizes from a DFS rooted at 0, then the max component left by
    // removing each vertex
    let mut order = Vec::with_capacity(n);
    let mut parent = vec![usize::MAX; n];
    let mut stack = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        order.push(v);
        for u in super::iter_bits(tree.neighbors_mask(v)) {
            if !seen[u] {
                seen[u] = true;
                parent[u] = v;
                stack.push(u);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &v in order.iter().rev() {
        if parent[v] != usize::MAX {
            size[parent[v]] += size[v];
        }
    }
    let mut best = n;
    let mut result = Vec::new();
    for v in 0..n {
        let mut max_comp = n - size[v];
        for u in super::iter_bits(tree.neighbors_mask(v)) {
            if parent[u] == v {
                max_comp = max_comp.max(size[u]);
            }
        }
        match max_comp.cmp(&best) {
            std::cmp::Ordering::Less => {
                best = max_comp;
                result = vec![v];
            }
            std::cmp::Ordering::Equal => result.push(v),
            std::cmp::Ordering::Greater => {}
        }
    }
    result
}

fn ahu_encoding(tree: &Graph, root: usize) -> Vec<u8> {
    fn enc(tree: &Graph, v: usize, from: usize) -> Vec<u8> {
        let mut children: Vec<Vec<u8>> = super::iter_bits(tree.neighbors_mask(v))
            .filter(|&u| u != from)
            .map(|u| enc(tree, u, v))
            .collect();
        children.sort();
        let mut out = vec![b'('];
        for c in children {
            out.extend(c);
        }
        out.push(b')');
        out
    }
    enc(tree, root, usize::MAX)
}

/// All simple graphs on `n <= 7` vertices, one canonical representative per
/// isomorphism class, by sweeping every adjacency bitmask.
pub fn all_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > ALL_GRAPHS_BOUND {
        return Err(Error::Bounds(format!(
            "all-graphs enumeration limited to {ALL_GRAPHS_BOUND} vertices, got {n}"
        )));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let total: u64 = 1 << bits;
    let class_of = |mask: u64| -> (Vec<u8>, u64) {
        let g = graph_from_pair_mask(n, mask);
        (g.canonical_form().expect("within canon bound"), mask)
    };
    let reduce = |mut acc: HashMap<Vec<u8>, u64>, (key, mask): (Vec<u8>, u64)| {
        acc.entry(key)
            .and_modify(|m| *m = (*m).min(mask))
            .or_insert(mask);
        acc
    };
    #[cfg(feature = "parallel")]
    let classes: HashMap<Vec<u8>, u64> = (0..total)
        .into_par_iter()
        .fold(HashMap::new, |acc, mask| reduce(acc, class_of(mask)))
        .reduce(HashMap::new, |mut a, b| {
            for (key, mask) in b {
                a.entry(key)
                    .and_modify(|m| *m = (*m).min(mask))
                    .or_insert(mask);
            }
            a
        });
    #[cfg(not(feature = "parallel"))]
    let classes: HashMap<Vec<u8>, u64> =
        (0..total).map(class_of).fold(HashMap::new(), reduce);

    let mut masks: Vec<u64> = classes.into_values().collect();
    masks.sort_unstable();
    Ok(masks
        .into_iter()
        .map(|mask| graph_from_pair_mask(n, mask))
        .collect())
}

/// Census up to isomorphism for `n <= 8` by one-vertex extensions of the
/// previous level. Far fewer canonical forms than the mask sweep; the two
/// enumerators cross-check each other in tests.
pub fn all_graphs_extended(n: usize) -> Result<Vec<Graph>> {
    if n == 0 {
        return Ok(vec![Graph::empty(0)?]);
    }
    if n > EXTENDED_CENSUS_BOUND {
        return Err(Error::Bounds(format!(
            "extended census limited to {EXTENDED_CENSUS_BOUND} vertices, got {n}"
        )));
    }
    let base = all_graphs_extended(n - 1)?;
    let candidates: Vec<(usize, u64)> = (0..base.len())
        .flat_map(|i| (0..1u64 << (n - 1)).map(move |nb| (i, nb)))
        .collect();
    let class_of = |&(i, nb): &(usize, u64)| -> (Vec<u8>, (usize, u64)) {
        let g = extend_with_neighborhood(&base[i], nb);
        (g.canonical_form().expect("within canon bound"), (i, nb))
    };
    #[cfg(feature = "parallel")]
    let keyed: Vec<(Vec<u8>, (usize, u64))> = candidates.par_iter().map(class_of).collect();
    #[cfg(not(feature = "parallel"))]
    let keyed: Vec<(Vec<u8>, (usize, u64))> = candidates.iter().map(class_of).collect();

    let mut classes: HashMap<Vec<u8>, (usize, u64)> = HashMap::new();
    for (key, id) in keyed {
        classes
            .entry(key)
            .and_modify(|cur| *cur = (*cur).min(id))
            .or_insert(id);
    }
    let mut ids: Vec<(usize, u64)> = classes.into_values().collect();
    ids.sort_unstable();
    Ok(ids
        .into_iter()
        .map(|(i, nb)| extend_with_neighborhood(&base[i], nb))
        .collect())
}

fn extend_with_neighborhood(g: &Graph, neighborhood: u64) -> Graph {
    let n = g.n();
    let mut edges = g.edges();
    for u in super::iter_bits(neighborhood) {
        edges.push((u, n));
    }
    Graph::from_edges(n + 1, &edges).expect("extension within bounds")
}

/// Decode a graph from the bitmask over vertex pairs `(i, j)`, `i < j`, in
/// lexicographic pair order.
pub fn graph_from_pair_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::empty(n).expect("within bounds");
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                g.adj[i] |= 1 << j;
                g.adj[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    g
}

/// Encode the pair bitmask of a graph, inverse of [`graph_from_pair_mask`].
pub fn pair_mask_of_graph(g: &Graph) -> u64 {
    let n = g.n();
    let mut mask = 0u64;
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if g.has_edge(i, j) {
                mask |= 1 << bit;
            }
            bit += 1;
        }
    }
    mask
}

/// Known census sizes, kept next to the enumerators they validate.
pub const FREE_TREE_COUNTS: [usize; 13] = [0, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551];
pub const GRAPH_CLASS_COUNTS: [usize; 9] = [1, 1, 2, 4, 11, 34, 156, 1044, 12346];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{path, star};

    #[test]
    fn free_tree_counts_match_census() {
        for n in 0..=9 {
            assert_eq!(
                free_trees(n).unwrap().len(),
                FREE_TREE_COUNTS[n],
                "free tree count at n = {n}"
            );
        }
        assert!(free_trees(13).is_err());
    }

    #[test]
    fn four_vertex_trees() {
        let trees = free_trees(4).unwrap();
        assert_eq!(trees.len(), 2);
        let keys: Vec<_> = trees
            .iter()
            .map(|t| t.canonical_form().unwrap())
            .collect();
        assert!(keys.contains(&path(4).canonical_form().unwrap()));
        assert!(keys.contains(&star(3).canonical_form().unwrap()));
    }

    #[test]
    fn all_graphs_small_counts() {
        for n in 0..=5 {
            assert_eq!(
                all_graphs(n).unwrap().len(),
                GRAPH_CLASS_COUNTS[n],
                "graph class count at n = {n}"
            );
        }
        assert!(all_graphs(8).is_err());
    }

    #[test]
    fn enumerated_graphs_are_pairwise_non_isomorphic() {
        let graphs = all_graphs(4).unwrap();
        let mut keys: Vec<_> = graphs
            .iter()
            .map(|g| g.canonical_form().unwrap())
            .collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), graphs.len());
    }

    #[test]
    fn extension_census_agrees_with_mask_sweep() {
        for n in 0..=6 {
            let sweep: std::collections::HashSet<Vec<u8>> = all_graphs(n)
                .unwrap()
                .iter()
                .map(|g| g.canonical_form().unwrap())
                .collect();
            let extended: std::collections::HashSet<Vec<u8>> = all_graphs_extended(n)
                .unwrap()
                .iter()
                .map(|g| g.canonical_form().unwrap())
                .collect();
            assert_eq!(sweep, extended, "census mismatch at n = {n}");
        }
        assert_eq!(
            all_graphs_extended(8).unwrap().len(),
            GRAPH_CLASS_COUNTS[8]
        );
        assert!(all_graphs_extended(9).is_err());
    }

    #[test]
    fn prufer_oracle_agrees_with_level_sequence_method() {
        // independent free-tree census: decode every Prufer sequence and
        // dedup by the graph canonical form (not the AHU key)
        for n in 2..=7usize {
            let mut keys = std::collections::HashSet::new();
            let total = (n as u64).pow(n as u32 - 2);
            for code in 0..total {
                let mut seq = Vec::with_capacity(n - 2);
                let mut c = code;
                for _ in 0..n.saturating_sub(2) {
                    seq.push((c % n as u64) as usize);
                    c /= n as u64;
                }
                let tree = prufer_decode(n, &seq);
                keys.insert(tree.canonical_form().unwrap());
            }
            assert_eq!(keys.len(), free_trees(n).unwrap().len(), "n = {n}");
        }
    }

    fn prufer_decode(n: usize, seq: &[usize]) -> Graph {
        let mut degree = vec![1usize; n];
        for &s in seq {
            degree[s] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        let mut used = vec![false; n];
        for &s in seq {
            let leaf = (0..n).find(|&v| degree[v] == 1 && !used[v]).unwrap();
            edges.push((leaf, s));
            used[leaf] = true;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| !used[v] && degree[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        Graph::from_edges(n, &edges).unwrap()
    }
}
