//! Block structure (cut vertices, biconnected components, leaf-blocks),
//! robustness and pruning, exact treewidth and exact feedback vertex sets.

use crate::error::{Error, Result};
use crate::graph::{bits, Graph, VertexSet};

pub const DEFAULT_TREEWIDTH_CAP: usize = 16;
pub const DEFAULT_FVS_CAP: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Vertex sets of the biconnected components, in lexicographic order.
    /// Isolated vertices form no block.
    pub blocks: Vec<VertexSet>,
    pub cut_vertices: VertexSet,
    /// Indices into `blocks` of the blocks holding at most one cut vertex.
    pub leaf_blocks: Vec<usize>,
}

impl BlockDecomposition {
    pub fn leaf_block_sets(&self) -> impl Iterator<Item = &VertexSet> {
        self.leaf_blocks.iter().map(|&i| &self.blocks[i])
    }
}

/// Lowpoint DFS (iterative) over every component.
pub fn block_decomposition(g: &Graph) -> BlockDecomposition {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut blocks: Vec<VertexSet> = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut time = 0;

    for root in 0..n {
        if disc[root] != usize::MAX || g.degree(root) == 0 {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbour index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, parent) = (top.0, top.1);
            if top.2 < g.degree(v) {
                let w = g.neighbors(v)[top.2];
                top.2 += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        if p != root {
                            is_cut[p] = true;
                        }
                        let mut block = Vec::new();
                        while let Some((a, b)) = edge_stack.pop() {
                            block.push(a);
                            block.push(b);
                            if (a, b) == (p, v) {
                                break;
                            }
                        }
                        block.sort_unstable();
                        block.dedup();
                        blocks.push(block);
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    blocks.sort();
    let leaf_blocks = blocks
        .iter()
        .enumerate()
        .filter(|(_, b)| b.iter().filter(|&&v| is_cut[v]).count() <= 1)
        .map(|(i, _)| i)
        .collect();
    BlockDecomposition {
        blocks,
        cut_vertices: (0..n).filter(|&v| is_cut[v]).collect(),
        leaf_blocks,
    }
}

/// Size of the smallest leaf-block.
pub fn slb(g: &Graph) -> Result<usize> {
    let bd = block_decomposition(g);
    bd.leaf_block_sets()
        .map(Vec::len)
        .min()
        .ok_or(Error::NoBlocks)
}

/// The smallest leaf-block, ties broken lexicographically.
pub fn smallest_leaf_block(g: &Graph) -> Result<VertexSet> {
    let bd = block_decomposition(g);
    bd.leaf_block_sets()
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
        .cloned()
        .ok_or(Error::NoBlocks)
}

/// Sizes of the components of `G[alive] - v`.
fn component_sizes_without(g: &Graph, alive: &[bool], v: usize) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut seen = vec![false; n];
    seen[v] = true;
    let mut comps = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if !alive[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut comp = Vec::new();
        while let Some(x) = stack.pop() {
            comp.push(x);
            for &y in g.neighbors(x) {
                if alive[y] && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        comps.push(comp);
    }
    comps
}

/// `|V| >= alpha` and no vertex deletion leaves a component on fewer than
/// `alpha - 1` vertices.
pub fn is_alpha_robust(g: &Graph, alpha: usize) -> bool {
    if g.n() < alpha {
        return false;
    }
    if alpha <= 2 {
        return true;
    }
    let alive = vec![true; g.n()];
    g.vertices().all(|v| {
        component_sizes_without(g, &alive, v)
            .iter()
            .all(|c| c.len() + 1 >= alpha)
    })
}

/// The unique maximal alpha-robust subgraph, as an induced subgraph together
/// with its new-to-old vertex map. May be empty.
///
/// Repeatedly deletes every component of `H - v` with fewer than `alpha - 1`
/// vertices: such vertices lie in no alpha-robust subgraph.
pub fn alpha_prune(g: &Graph, alpha: usize) -> (Graph, VertexSet) {
    if alpha <= 2 {
        return if g.n() >= alpha {
            (g.clone(), g.vertices().collect())
        } else {
            (Graph::default(), Vec::new())
        };
    }
    let n = g.n();
    let mut alive = vec![true; n];
    let mut count = n;
    let mut changed = true;
    while changed && count >= alpha {
        changed = false;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            for comp in component_sizes_without(g, &alive, v) {
                if comp.len() + 1 < alpha {
                    for x in comp {
                        alive[x] = false;
                        count -= 1;
                    }
                    changed = true;
                }
            }
        }
    }
    if count < alpha {
        return (Graph::default(), Vec::new());
    }
    let kept: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    (g.induced_unchecked(&kept), kept)
}

/// Exact treewidth: maximum over blocks of a subset dynamic program over
/// elimination orders. `-1` for the empty graph, `0` for edgeless graphs.
/// Each block must have at most `cap` vertices.
pub fn treewidth_exact(g: &Graph, cap: usize) -> Result<i32> {
    if g.is_empty() {
        return Ok(-1);
    }
    let bd = block_decomposition(g);
    let mut best = 0;
    for block in &bd.blocks {
        if block.len() > cap.min(30) {
            return Err(Error::CapExceeded {
                what: "treewidth block",
                size: block.len(),
                cap,
            });
        }
        let (b, _) = g.induced_subgraph(block)?;
        best = best.max(block_treewidth(&b));
    }
    Ok(best)
}

fn block_treewidth(g: &Graph) -> i32 {
    let n = g.n();
    if n <= 1 {
        return 0;
    }
    if g.m() == n * (n - 1) / 2 {
        return n as i32 - 1;
    }
    let adj: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |a, &w| a | 1 << w))
        .collect();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut dp = vec![u8::MAX; 1usize << n];
    dp[0] = 0;
    for s in 1..=full {
        let mut best = u8::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let without = s & !(1 << v);
            let prev = dp[without as usize];
            if prev >= best {
                continue;
            }
            // component of v inside G[without + v], then its outer boundary
            let within = without | 1 << v;
            let mut comp = 1u32 << v;
            let mut frontier = comp;
            while frontier != 0 {
                let mut next = 0;
                let mut f = frontier;
                while f != 0 {
                    let x = f.trailing_zeros();
                    f &= f - 1;
                    next |= adj[x as usize];
                }
                next &= within & !comp;
                comp |= next;
                frontier = next;
            }
            let mut boundary = 0u32;
            let mut c = comp;
            while c != 0 {
                let x = c.trailing_zeros();
                c &= c - 1;
                boundary |= adj[x as usize];
            }
            boundary &= !within;
            let q = boundary.count_ones() as u8;
            best = best.min(prev.max(q));
        }
        dp[s as usize] = best;
    }
    dp[full as usize] as i32
}

/// Minimum feedback vertex set; among minimum sets, the lexicographically
/// smallest sorted list.
pub fn fvs_exact(g: &Graph, cap: usize) -> Result<VertexSet> {
    let n = g.n();
    if n > cap.min(64) {
        return Err(Error::CapExceeded {
            what: "feedback vertex set input",
            size: n,
            cap,
        });
    }
    if g.is_acyclic() {
        return Ok(Vec::new());
    }
    let adj = g.masks64();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let forest_without = |removed: u64| -> bool {
        let keep = all & !removed;
        let m: u32 = bits::iter64(keep)
            .map(|v| (adj[v] & keep).count_ones())
            .sum::<u32>()
            / 2;
        let comps = bits::components64(&adj, keep).len() as u32;
        m + comps == keep.count_ones()
    };
    for k in 1..=n {
        let mut found = None;
        bits::for_each_combination(n, k, |mask| {
            if forest_without(mask) {
                found = Some(mask);
                true
            } else {
                false
            }
        });
        if let Some(mask) = found {
            return Ok(bits::iter64(mask).collect());
        }
    }
    unreachable!("removing every vertex leaves a forest")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3_pendant() -> Graph {
        Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap()
    }

    #[test]
    fn blocks_of_small_graphs() {
        let bd = block_decomposition(&k3_pendant());
        assert_eq!(bd.blocks, vec![vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(bd.cut_vertices, vec![2]);
        assert_eq!(bd.leaf_blocks, vec![0, 1]);

        let bd = block_decomposition(&Graph::path(3));
        assert_eq!(bd.blocks, vec![vec![0, 1], vec![1, 2]]);
        assert_eq!(bd.cut_vertices, vec![1]);

        let bd = block_decomposition(&Graph::complete(4));
        assert_eq!(bd.blocks, vec![vec![0, 1, 2, 3]]);
        assert!(bd.cut_vertices.is_empty());

        let bd = block_decomposition(&Graph::edgeless(3));
        assert!(bd.blocks.is_empty());
    }

    #[test]
    fn two_triangles_sharing_a_vertex_plus_tail() {
        // bowtie 0-1-2 / 2-3-4 with tail 4-5
        let g =
            Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4), (4, 5)]).unwrap();
        let bd = block_decomposition(&g);
        assert_eq!(bd.blocks.len(), 3);
        assert_eq!(bd.cut_vertices, vec![2, 4]);
        // the middle triangle has two cut vertices
        let leaves: Vec<&VertexSet> = bd.leaf_block_sets().collect();
        assert_eq!(leaves, vec![&vec![0, 1, 2], &vec![4, 5]]);
    }

    #[test]
    fn slb_values() {
        assert_eq!(slb(&Graph::complete(3)), Ok(3));
        assert_eq!(slb(&Graph::path(3)), Ok(2));
        assert_eq!(slb(&k3_pendant()), Ok(2));
        assert_eq!(slb(&Graph::edgeless(2)), Err(Error::NoBlocks));
    }

    #[test]
    fn robustness() {
        assert!(is_alpha_robust(&Graph::complete(3), 3));
        assert!(!is_alpha_robust(&Graph::path(3), 3));
        assert!(is_alpha_robust(&Graph::path(5), 2));
        assert!(!is_alpha_robust(&Graph::path(2), 3));
    }

    #[test]
    fn pruning() {
        let (p, _) = alpha_prune(&Graph::path(5), 3);
        assert!(p.is_empty());
        let (p, kept) = alpha_prune(&k3_pendant(), 3);
        assert_eq!(p, Graph::complete(3));
        assert_eq!(kept, vec![0, 1, 2]);
        let c5 = Graph::cycle(5);
        assert_eq!(alpha_prune(&c5, 5).0, c5);
        assert!(alpha_prune(&c5, 6).0.is_empty());
    }

    #[test]
    fn treewidths() {
        assert_eq!(treewidth_exact(&Graph::complete(4), 16), Ok(3));
        assert_eq!(treewidth_exact(&Graph::path(6), 16), Ok(1));
        assert_eq!(treewidth_exact(&Graph::star(4), 16), Ok(1));
        assert_eq!(treewidth_exact(&Graph::edgeless(3), 16), Ok(0));
        assert_eq!(treewidth_exact(&Graph::default(), 16), Ok(-1));
        assert_eq!(treewidth_exact(&Graph::cycle(7), 16), Ok(2));
        assert_eq!(treewidth_exact(&Graph::petersen(), 16), Ok(4));
        assert!(matches!(
            treewidth_exact(&Graph::cycle(20), 16),
            Err(Error::CapExceeded { .. })
        ));
        // many small blocks are fine beyond the cap
        assert_eq!(treewidth_exact(&Graph::complete(3).copies(10), 16), Ok(2));
    }

    #[test]
    fn feedback_vertex_sets() {
        assert_eq!(fvs_exact(&Graph::path(5), 32), Ok(vec![]));
        assert_eq!(fvs_exact(&Graph::cycle(5), 32), Ok(vec![0]));
        assert_eq!(fvs_exact(&Graph::complete(4), 32), Ok(vec![0, 1]));
        assert_eq!(fvs_exact(&Graph::petersen(), 32).unwrap().len(), 3);
        assert!(fvs_exact(&Graph::path(40), 32).is_err());
    }
}
