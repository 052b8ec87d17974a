//! Fixed-parameter computation of Q(G;x,y) by dynamic programming over a
//! nice tree decomposition. States pair the selected subset of the current
//! bag with the partition of that subset into connectivity classes; x
//! tracks selected vertices, y is paid when a class is completed at a
//! forget node.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::td::{NiceStep, TreeDecomposition};
use crate::graph::Graph;
use crate::poly::BiPoly;

/// Selected-subset mask over bag positions plus the partition of the
/// selected positions as a canonical restricted-growth string.
type State = (u32, Vec<u8>);
type Table = HashMap<State, BiPoly>;

/// Q(G;x,y) from a valid tree decomposition of `g`. Runs in time single
/// exponential in the decomposition width.
pub fn q_treewidth(g: &Graph, td: &TreeDecomposition) -> Result<BiPoly> {
    td.validate(g)?;
    let nice = td.to_nice();
    let mut tables: Vec<Option<Table>> = Vec::with_capacity(nice.nodes.len());
    for node in &nice.nodes {
        if node.bag.len() > 32 {
            return Err(Error::Bounds(format!(
                "bag of size {} exceeds the dynamic program's 32-vertex limit",
                node.bag.len()
            )));
        }
        let table = match node.step {
            NiceStep::Leaf => {
                let mut t = Table::new();
                t.insert((0, Vec::new()), BiPoly::one());
                t
            }
            NiceStep::Introduce(v) => {
                let child = take_table(&mut tables, node.children[0]);
                introduce(g, &node.bag, v, child)
            }
            NiceStep::Forget(v) => {
                let child_bag = &nice.nodes[node.children[0]].bag;
                let p = child_bag.iter().position(|&u| u == v).unwrap();
                let child = take_table(&mut tables, node.children[0]);
                forget(p, child)
            }
            NiceStep::Join => {
                let left = take_table(&mut tables, node.children[0]);
                let right = take_table(&mut tables, node.children[1]);
                join(left, right)?
            }
        };
        assert!(
            within_state_bound(node.bag.len(), table.len()),
            "live state count {} exceeds the Bell-number bound for bag size {}",
            table.len(),
            node.bag.len()
        );
        tables.push(Some(table));
    }
    let root = tables
        .last_mut()
        .and_then(Option::take)
        .expect("nice decomposition has a root");
    let mut answer = BiPoly::zero();
    for ((sel, _), value) in root {
        debug_assert_eq!(sel, 0, "root bag is empty");
        answer = &answer + &value;
    }
    Ok(answer)
}

fn take_table(tables: &mut [Option<Table>], id: usize) -> Table {
    tables[id].take().expect("child table computed once")
}

fn insert_bit(mask: u32, p: usize, bit: bool) -> u32 {
    let low = mask & ((1 << p) - 1);
    let high = (mask >> p) << (p + 1);
    low | high | (u32::from(bit) << p)
}

fn remove_bit(mask: u32, p: usize) -> u32 {
    let low = mask & ((1 << p) - 1);
    low | ((mask >> (p + 1)) << p)
}

/// Relabel block ids in first-occurrence order.
fn canonical_rgs(blocks: &[u8]) -> Vec<u8> {
    let mut map = [u8::MAX; 64];
    let mut next = 0u8;
    blocks
        .iter()
        .map(|&b| {
            if map[b as usize] == u8::MAX {
                map[b as usize] = next;
                next += 1;
            }
            map[b as usize]
        })
        .collect()
}

fn add_to(table: &mut Table, state: State, value: BiPoly) {
    table
        .entry(state)
        .and_modify(|v| *v = &*v + &value)
        .or_insert(value);
}

/// Introduce `v` into `bag` (which already lists it): either leave it
/// unselected, or select it, merge it into the blocks of its selected
/// bag neighbors, and pay one `x`.
fn introduce(g: &Graph, bag: &[usize], v: usize, child: Table) -> Table {
    let p = bag.iter().position(|&u| u == v).unwrap();
    let x = BiPoly::x();
    let mut out = Table::with_capacity(child.len() * 2);
    for ((sel, rgs), value) in child {
        let unsel = insert_bit(sel, p, false);
        add_to(&mut out, (unsel, rgs.clone()), value.clone());

        let newsel = insert_bit(sel, p, true);
        let rank = (newsel & ((1 << p) - 1)).count_ones() as usize;
        let mut blocks: Vec<u8> = rgs.clone();
        let fresh = blocks.iter().copied().max().map_or(0, |m| m + 1);
        blocks.insert(rank, fresh);
        // merge with each selected bag neighbor's block
        let mut target = fresh;
        let mut touched = Vec::new();
        for (r, q) in crate::graph::iter_bits(newsel as u64).enumerate() {
            if q != p && g.has_edge(bag[q], v) {
                touched.push(blocks[r]);
            }
        }
        for t in touched {
            if t < target {
                for b in blocks.iter_mut() {
                    if *b == target {
                        *b = t;
                    }
                }
                target = t;
            } else if t > target {
                for b in blocks.iter_mut() {
                    if *b == t {
                        *b = target;
                    }
                }
            }
        }
        add_to(&mut out, (newsel, canonical_rgs(&blocks)), &value * &x);
    }
    out
}

/// Forget the vertex at child-bag position `p`. A selected vertex whose
/// block empties out is a completed component and pays one `y`.
fn forget(p: usize, child: Table) -> Table {
    let y = BiPoly::y();
    let mut out = Table::with_capacity(child.len());
    for ((sel, rgs), value) in child {
        if sel >> p & 1 == 0 {
            add_to(&mut out, (remove_bit(sel, p), rgs), value);
            continue;
        }
        let rank = (sel & ((1 << p) - 1)).count_ones() as usize;
        let block = rgs[rank];
        let mut blocks = rgs;
        blocks.remove(rank);
        let completed = !blocks.contains(&block);
        let state = (remove_bit(sel, p), canonical_rgs(&blocks));
        if completed {
            add_to(&mut out, state, &value * &y);
        } else {
            add_to(&mut out, state, value);
        }
    }
    out
}

/// Combine two tables over the same bag: pair states with equal selected
/// sets, coarsen the partitions together, multiply the values, and divide
/// out the doubly counted `x` of the shared selected vertices.
fn join(left: Table, right: Table) -> Result<Table> {
    let mut by_sel: HashMap<u32, Vec<(Vec<u8>, BiPoly)>> = HashMap::new();
    for ((sel, rgs), value) in right {
        by_sel.entry(sel).or_default().push((rgs, value));
    }
    let mut out = Table::new();
    for ((sel, rgs1), val1) in left {
        let Some(partners) = by_sel.get(&sel) else {
            continue;
        };
        let k = sel.count_ones();
        for (rgs2, val2) in partners {
            let merged = merge_partitions(&rgs1, rgs2);
            let product = (&val1 * val2).exact_div_monomial(k, 0)?;
            add_to(&mut out, (sel, merged), product);
        }
    }
    Ok(out)
}

/// Finest common coarsening of two partitions given as RGS vectors.
fn merge_partitions(a: &[u8], b: &[u8]) -> Vec<u8> {
    let n = a.len();
    let mut parent: Vec<usize> = (0..n).collect();
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
    let mut union_blocks = |rgs: &[u8]| {
        let mut first: [usize; 64] = [usize::MAX; 64];
        for (i, &blk) in rgs.iter().enumerate() {
            if first[blk as usize] == usize::MAX {
                first[blk as usize] = i;
            } else {
                let (ra, rb) = (find(&mut parent, first[blk as usize]), find(&mut parent, i));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    };
    union_blocks(a);
    union_blocks(b);
    let roots: Vec<u8> = (0..n).map(|i| find(&mut parent, i) as u8).collect();
    canonical_rgs(&roots)
}

/// Live states at a bag never exceed the sum over selected subsets of the
/// Bell number of the subset size.
fn within_state_bound(bag: usize, states: usize) -> bool {
    if bag > 20 {
        return true;
    }
    let bell = bell_numbers(bag);
    let mut bound: u128 = 0;
    for s in 0..=bag {
        bound += binomial_u128(bag, s) * bell[s];
    }
    (states as u128) <= bound
}

fn bell_numbers(n: usize) -> Vec<u128> {
    let mut bell = vec![1u128];
    let mut row = vec![1u128];
    for _ in 1..=n {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            next.push(next.last().unwrap() + x);
        }
        bell.push(next[0]);
        row = next;
    }
    bell
}

fn binomial_u128(n: usize, k: usize) -> u128 {
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Convenience wrapper: greedy decomposition plus the dynamic program.
pub fn q_treewidth_greedy(g: &Graph) -> Result<BiPoly> {
    q_treewidth(g, &TreeDecomposition::greedy_min_fill(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, empty_graph, grid, path, random_graph, star};
    use crate::poly::one_plus_xy_pow;
    use crate::q::{closed_form, q_brute_force, GraphFamily};
    use rand::SeedableRng;

    #[test]
    fn examples_against_oracles() {
        // P_4 over its natural width-1 decomposition
        let td = TreeDecomposition::new(
            vec![vec![0, 1], vec![1, 2], vec![2, 3]],
            vec![(0, 1), (1, 2)],
        );
        assert_eq!(
            q_treewidth(&path(4), &td).unwrap(),
            closed_form(GraphFamily::Path(4)).unwrap()
        );
        // K_3 in a single bag
        let td = TreeDecomposition::new(vec![vec![0, 1, 2]], vec![]);
        assert_eq!(
            q_treewidth(&complete(3), &td).unwrap(),
            q_brute_force(&complete(3)).unwrap()
        );
        // E_2 under any decomposition
        let td = TreeDecomposition::new(vec![vec![0], vec![1]], vec![(0, 1)]);
        assert_eq!(q_treewidth(&empty_graph(2), &td).unwrap(), one_plus_xy_pow(2));
    }

    #[test]
    fn rejects_invalid_decomposition() {
        let td = TreeDecomposition::new(vec![vec![0, 1]], vec![]);
        assert!(q_treewidth(&path(3), &td).is_err());
    }

    #[test]
    fn null_graph() {
        assert_eq!(q_treewidth_greedy(&empty_graph(0)).unwrap(), BiPoly::one());
    }

    #[test]
    fn greedy_dp_matches_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in 1..=9 {
            for &p in &[0.2, 0.5] {
                let g = random_graph(n, p, &mut rng);
                assert_eq!(
                    q_treewidth_greedy(&g).unwrap(),
                    q_brute_force(&g).unwrap(),
                    "n = {n}, p = {p}"
                );
            }
        }
        for g in [cycle(7), grid(3, 3), star(5), complete(5)] {
            assert_eq!(q_treewidth_greedy(&g).unwrap(), q_brute_force(&g).unwrap());
        }
    }

    #[test]
    fn different_decompositions_same_polynomial() {
        let g = cycle(5);
        let greedy = TreeDecomposition::greedy_min_fill(&g);
        // a wasteful but valid alternative: one big bag
        let single = TreeDecomposition::new(vec![vec![0, 1, 2, 3, 4]], vec![]);
        assert_eq!(
            q_treewidth(&g, &greedy).unwrap(),
            q_treewidth(&g, &single).unwrap()
        );
    }

    #[test]
    fn rgs_helpers() {
        assert_eq!(canonical_rgs(&[3, 1, 3, 0]), vec![0, 1, 0, 2]);
        assert_eq!(merge_partitions(&[0, 1, 0], &[0, 1, 1]), vec![0, 0, 0]);
        assert_eq!(merge_partitions(&[0, 1, 2], &[0, 1, 2]), vec![0, 1, 2]);
        assert_eq!(insert_bit(0b101, 1, true), 0b1011);
        assert_eq!(remove_bit(0b1011, 1), 0b101);
    }
}
