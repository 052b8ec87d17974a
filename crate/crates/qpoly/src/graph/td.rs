//! Tree decompositions: greedy min-fill construction, validation against
//! the three defining conditions, a text format, and conversion to the
//! nice (leaf / introduce / forget / join) form used by the dynamic
//! program.

use std::collections::{BTreeSet, VecDeque};

use super::{full_mask, iter_bits, Graph};
use crate::error::{Error, Result};

/// Bags plus tree structure. Bags are sorted vertex lists; tree edges
/// connect bag indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    bags: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl TreeDecomposition {
    pub fn new(bags: Vec<Vec<usize>>, edges: Vec<(usize, usize)>) -> TreeDecomposition {
        let bags = bags
            .into_iter()
            .map(|bag| {
                let set: BTreeSet<usize> = bag.into_iter().collect();
                set.into_iter().collect()
            })
            .collect();
        TreeDecomposition { bags, edges }
    }

    pub fn bags(&self) -> &[Vec<usize>] {
        &self.bags
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Width = max bag size − 1; a decomposition of the null graph has
    /// width −1.
    pub fn width(&self) -> i64 {
        self.bags.iter().map(|b| b.len() as i64 - 1).max().unwrap_or(-1)
    }

    /// Check the defining conditions for `g`: the bags form a tree, every
    /// vertex appears in a bag, every edge is inside some bag, and each
    /// vertex's bags induce a connected subtree.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let fail = |msg: String| Err(Error::Inconsistency(format!("tree decomposition: {msg}")));
        let b = self.bags.len();
        if b == 0 {
            return fail("no bags".into());
        }
        for &(x, y) in &self.edges {
            if x >= b || y >= b {
                return fail(format!("tree edge ({x}, {y}) out of range"));
            }
        }
        if self.edges.len() + 1 != b {
            return fail(format!(
                "{} bags need {} tree edges, got {}",
                b,
                b - 1,
                self.edges.len()
            ));
        }
        let mut adjacency = vec![Vec::new(); b];
        for &(x, y) in &self.edges {
            adjacency[x].push(y);
            adjacency[y].push(x);
        }
        if reachable_from(&adjacency, 0, |_| true).len() != b {
            return fail("tree is not connected".into());
        }
        let mut covered = 0u64;
        for bag in &self.bags {
            for &v in bag {
                if v >= g.n() {
                    return fail(format!("bag vertex {v} out of range"));
                }
                covered |= 1 << v;
            }
        }
        if covered != full_mask(g.n()) {
            return fail("some vertex appears in no bag".into());
        }
        for (u, v) in g.edges() {
            if !self
                .bags
                .iter()
                .any(|bag| bag.contains(&u) && bag.contains(&v))
            {
                return fail(format!("edge ({u}, {v}) is in no bag"));
            }
        }
        for v in 0..g.n() {
            let holder: Vec<usize> = (0..b).filter(|&i| self.bags[i].contains(&v)).collect();
            let start = holder[0];
            let reach = reachable_from(&adjacency, start, |i| self.bags[i].contains(&v));
            if reach.len() != holder.len() {
                return fail(format!("bags containing vertex {v} are not connected"));
            }
        }
        Ok(())
    }

    /// Greedy decomposition from a min-fill elimination ordering. Valid for
    /// every graph; the width is not necessarily optimal.
    pub fn greedy_min_fill(g: &Graph) -> TreeDecomposition {
        let n = g.n();
        if n == 0 {
            return TreeDecomposition::new(vec![vec![]], vec![]);
        }
        let mut adj: Vec<u64> = (0..n).map(|v| g.neighbors_mask(v)).collect();
        let mut active = full_mask(n);
        let mut bags: Vec<Vec<usize>> = Vec::with_capacity(n);
        let mut position = vec![usize::MAX; n];
        for step in 0..n {
            let v = iter_bits(active)
                .min_by_key(|&v| {
                    let nb: Vec<usize> = iter_bits(adj[v] & active).collect();
                    let mut missing = 0usize;
                    for (i, &a) in nb.iter().enumerate() {
                        for &b in &nb[i + 1..] {
                            if adj[a] >> b & 1 == 0 {
                                missing += 1;
                            }
                        }
                    }
                    (missing, v)
                })
                .expect("active vertex remains");
            let nb: Vec<usize> = iter_bits(adj[v] & active).collect();
            for (i, &a) in nb.iter().enumerate() {
                for &b in &nb[i + 1..] {
                    adj[a] |= 1 << b;
                    adj[b] |= 1 << a;
                }
            }
            let mut bag = vec![v];
            bag.extend(&nb);
            bag.sort_unstable();
            bags.push(bag);
            position[v] = step;
            active &= !(1 << v);
        }
        // bag of v attaches to the bag of the earliest-eliminated vertex
        // among its other members; stragglers chain to the next bag
        let mut edges = Vec::with_capacity(n.saturating_sub(1));
        let eliminated_at: Vec<usize> = {
            let mut by_step = vec![0usize; n];
            for v in 0..n {
                by_step[position[v]] = v;
            }
            by_step
        };
        for step in 0..n {
            let v = eliminated_at[step];
            let others: Vec<usize> = bags[step].iter().copied().filter(|&u| u != v).collect();
            if let Some(&u) = others.iter().min_by_key(|&&u| position[u]) {
                edges.push((step, position[u]));
            } else if step + 1 < n {
                edges.push((step, step + 1));
            }
        }
        TreeDecomposition::new(bags, edges)
    }

    /// Parse the decomposition file format: lines `bag <id> <v...>` and
    /// `edge <id> <id>`, `#` comments. Bag ids must be `0..count`.
    pub fn parse(text: &str) -> Result<TreeDecomposition> {
        let mut bags: Vec<(usize, Vec<usize>)> = Vec::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
            let mut parts = line.split_whitespace();
            match parts.next() {
                Some("bag") => {
                    let id: usize = parts
                        .next()
                        .ok_or_else(|| bad("bag needs an id"))?
                        .parse()
                        .map_err(|_| bad("bad bag id"))?;
                    let verts: Vec<usize> = parts
                        .map(|t| t.parse().map_err(|_| bad("bad bag vertex")))
                        .collect::<Result<_>>()?;
                    bags.push((id, verts));
                }
                Some("edge") => {
                    let a: usize = parts
                        .next()
                        .ok_or_else(|| bad("edge needs two ids"))?
                        .parse()
                        .map_err(|_| bad("bad edge id"))?;
                    let b: usize = parts
                        .next()
                        .ok_or_else(|| bad("edge needs two ids"))?
                        .parse()
                        .map_err(|_| bad("bad edge id"))?;
                    if parts.next().is_some() {
                        return Err(bad("trailing tokens after edge"));
                    }
                    edges.push((a, b));
                }
                _ => return Err(bad("expected \"bag\" or \"edge\"")),
            }
        }
        let count = bags.len();
        let mut ordered: Vec<Option<Vec<usize>>> = vec![None; count];
        for (id, verts) in bags {
            if id >= count || ordered[id].is_some() {
                return Err(Error::Parse(format!(
                    "bag ids must be 0..{count} without repeats"
                )));
            }
            ordered[id] = Some(verts);
        }
        Ok(TreeDecomposition::new(
            ordered.into_iter().map(|b| b.unwrap()).collect(),
            edges,
        ))
    }

    /// Convert to the nice form. The result is a rooted binary tree whose
    /// nodes each perform one step, listed so children precede parents,
    /// ending with an empty root bag.
    pub fn to_nice(&self) -> NiceDecomposition {
        let b = self.bags.len();
        let mut adjacency = vec![Vec::new(); b];
        for &(x, y) in &self.edges {
            adjacency[x].push(y);
            adjacency[y].push(x);
        }
        let mut nice = NiceDecomposition { nodes: Vec::new() };
        let root = nice.build(self, &adjacency, 0, usize::MAX);
        let top = nice.forget_chain(root, self.bags[0].clone(), &[]);
        debug_assert!(nice.nodes[top].bag.is_empty());
        nice
    }
}

fn reachable_from(
    adjacency: &[Vec<usize>],
    start: usize,
    allowed: impl Fn(usize) -> bool,
) -> Vec<usize> {
    let mut seen = vec![false; adjacency.len()];
    let mut queue = VecDeque::from([start]);
    seen[start] = true;
    let mut out = vec![start];
    while let Some(x) = queue.pop_front() {
        for &y in &adjacency[x] {
            if !seen[y] && allowed(y) {
                seen[y] = true;
                out.push(y);
                queue.push_back(y);
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NiceStep {
    Leaf,
    Introduce(usize),
    Forget(usize),
    Join,
}

#[derive(Clone, Debug)]
pub struct NiceNode {
    pub step: NiceStep,
    /// Sorted bag after the step.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Nice tree decomposition; `nodes` is in evaluation order (children come
/// before parents) and the last node is the empty-bag root.
#[derive(Clone, Debug)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
}

impl NiceDecomposition {
    fn push(&mut self, step: NiceStep, bag: Vec<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { step, bag, children });
        self.nodes.len() - 1
    }

    /// Introduce everything in `target` on top of an empty leaf.
    fn leaf_chain(&mut self, target: &[usize]) -> usize {
        let mut id = self.push(NiceStep::Leaf, Vec::new(), Vec::new());
        let mut bag = Vec::new();
        for &v in target {
            bag.push(v);
            bag.sort_unstable();
            id = self.push(NiceStep::Introduce(v), bag.clone(), vec![id]);
        }
        id
    }

    /// Forget `from ∖ keep` one vertex at a time above node `id`.
    fn forget_chain(&mut self, mut id: usize, mut bag: Vec<usize>, keep: &[usize]) -> usize {
        let drop: Vec<usize> = bag.iter().copied().filter(|v| !keep.contains(v)).collect();
        for v in drop {
            bag.retain(|&u| u != v);
            id = self.push(NiceStep::Forget(v), bag.clone(), vec![id]);
        }
        id
    }

    fn introduce_chain(&mut self, mut id: usize, mut bag: Vec<usize>, target: &[usize]) -> usize {
        let add: Vec<usize> = target.iter().copied().filter(|v| !bag.contains(v)).collect();
        for v in add {
            bag.push(v);
            bag.sort_unstable();
            id = self.push(NiceStep::Introduce(v), bag.clone(), vec![id]);
        }
        id
    }

    /// Build a nice subtree whose top bag equals `td.bags[node]`.
    fn build(
        &mut self,
        td: &TreeDecomposition,
        adjacency: &[Vec<usize>],
        node: usize,
        parent: usize,
    ) -> usize {
        let bag = &td.bags[node];
        let children: Vec<usize> = adjacency[node]
            .iter()
            .copied()
            .filter(|&c| c != parent)
            .collect();
        if children.is_empty() {
            return self.leaf_chain(bag);
        }
        let mut tops = Vec::with_capacity(children.len());
        for c in children {
            let sub = self.build(td, adjacency, c, node);
            let shrunk = self.forget_chain(sub, td.bags[c].clone(), bag);
            let kept: Vec<usize> = td.bags[c]
                .iter()
                .copied()
                .filter(|v| bag.contains(v))
                .collect();
            tops.push(self.introduce_chain(shrunk, kept, bag));
        }
        let mut acc = tops[0];
        for &next in &tops[1..] {
            acc = self.push(NiceStep::Join, bag.clone(), vec![acc, next]);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, empty_graph, path, random_graph};
    use rand::SeedableRng;

    #[test]
    fn greedy_widths() {
        assert_eq!(TreeDecomposition::greedy_min_fill(&path(4)).width(), 1);
        assert_eq!(TreeDecomposition::greedy_min_fill(&complete(4)).width(), 3);
        assert_eq!(TreeDecomposition::greedy_min_fill(&cycle(5)).width(), 2);
        assert_eq!(TreeDecomposition::greedy_min_fill(&empty_graph(0)).width(), -1);
    }

    #[test]
    fn greedy_is_valid_on_random_graphs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in 0..12 {
            for &p in &[0.15, 0.4, 0.8] {
                let g = random_graph(n, p, &mut rng);
                TreeDecomposition::greedy_min_fill(&g).validate(&g).unwrap();
            }
        }
    }

    #[test]
    fn validation_catches_defects() {
        let g = path(3);
        // edge (1,2) not inside any bag
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![2]], vec![(0, 1)]);
        assert!(td.validate(&g).is_err());
        // vertex 2 missing entirely
        let td = TreeDecomposition::new(vec![vec![0, 1]], vec![]);
        assert!(td.validate(&g).is_err());
        // disconnected occurrence of vertex 0
        let td = TreeDecomposition::new(
            vec![vec![0, 1], vec![1, 2], vec![0, 2]],
            vec![(0, 1), (1, 2)],
        );
        assert!(td.validate(&g).is_err());
        // not a tree
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1), (1, 0)]);
        assert!(td.validate(&g).is_err());
        // a correct one passes
        let td = TreeDecomposition::new(vec![vec![0, 1], vec![1, 2]], vec![(0, 1)]);
        td.validate(&g).unwrap();
    }

    #[test]
    fn parse_round_trip() {
        let text = "# width-1 path decomposition\nbag 0 0 1\nbag 1 1 2\nedge 0 1\n";
        let td = TreeDecomposition::parse(text).unwrap();
        assert_eq!(td.bags(), &[vec![0, 1], vec![1, 2]]);
        assert_eq!(td.edges(), &[(0, 1)]);
        td.validate(&path(3)).unwrap();
        assert!(TreeDecomposition::parse("bag 5 0\n").is_err());
        assert!(TreeDecomposition::parse("blob 0\n").is_err());
    }

    #[test]
    fn nice_form_shape() {
        let g = path(3);
        let td = TreeDecomposition::greedy_min_fill(&g);
        let nice = td.to_nice();
        let last = nice.nodes.last().unwrap();
        assert!(last.bag.is_empty());
        // each vertex is forgotten exactly once
        let forgets: Vec<usize> = nice
            .nodes
            .iter()
            .filter_map(|node| match node.step {
                NiceStep::Forget(v) => Some(v),
                _ => None,
            })
            .collect();
        let mut sorted = forgets.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2]);
    }
}
