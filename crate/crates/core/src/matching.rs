//! Maximum matching (Edmonds' blossom algorithm) and bounded-matching-number
//! partitions built from a Tutte-Berge witness.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use crate::structure::block_decomposition;

/// Maximum-cardinality matching as a list of edges `(u, v)` with `u < v`.
pub fn max_matching(g: &Graph) -> Vec<(usize, usize)> {
    let mate = blossom(g);
    let mut out: Vec<(usize, usize)> = mate
        .iter()
        .enumerate()
        .filter_map(|(v, &w)| (w != NONE && v < w).then_some((v, w)))
        .collect();
    out.sort_unstable();
    out
}

pub fn matching_number(g: &Graph) -> usize {
    blossom(g).iter().filter(|&&w| w != NONE).count() / 2
}

const NONE: usize = usize::MAX;

fn blossom(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut mate = vec![NONE; n];
    // greedy start
    for v in g.vertices() {
        if mate[v] == NONE {
            if let Some(&w) = g.neighbors(v).iter().find(|&&w| mate[w] == NONE) {
                mate[v] = w;
                mate[w] = v;
            }
        }
    }
    let mut s = Search::new(n);
    for root in 0..n {
        if mate[root] == NONE {
            if let Some(end) = s.find_path(g, &mate, root) {
                // augment along parent pointers
                let mut v = end;
                while v != NONE {
                    let pv = s.parent[v];
                    let ppv = mate[pv];
                    mate[v] = pv;
                    mate[pv] = v;
                    v = ppv;
                }
            }
        }
    }
    mate
}

struct Search {
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Search {
    fn new(n: usize) -> Self {
        Search {
            parent: vec![NONE; n],
            base: (0..n).collect(),
            used: vec![false; n],
            in_blossom: vec![false; n],
            queue: VecDeque::new(),
        }
    }

    fn lca(&self, mate: &[usize], mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; mate.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if mate[a] == NONE {
                break;
            }
            a = self.parent[mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[mate[b]];
        }
    }

    fn mark_path(&mut self, mate: &[usize], mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[mate[v]]] = true;
            self.parent[v] = child;
            child = mate[v];
            v = self.parent[mate[v]];
        }
    }

    fn find_path(&mut self, g: &Graph, mate: &[usize], root: usize) -> Option<usize> {
        let n = g.n();
        self.used.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|x| *x = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.used[root] = true;
        self.queue.clear();
        self.queue.push_back(root);
        while let Some(v) = self.queue.pop_front() {
            for &to in g.neighbors(v) {
                if self.base[v] == self.base[to] || mate[v] == to {
                    continue;
                }
                if to == root || (mate[to] != NONE && self.parent[mate[to]] != NONE) {
                    let cur = self.lca(mate, v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(mate, v, cur, to);
                    self.mark_path(mate, to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if mate[to] == NONE {
                        return Some(to);
                    }
                    let next = mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }
}

/// Number of odd-size connected components.
pub fn odd_components(g: &Graph) -> usize {
    g.connected_components()
        .iter()
        .filter(|c| c.len() % 2 == 1)
        .count()
}

/// Partition `(U, R, S)` of the vertex set witnessing `ν(G) ≤ m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TBPartition {
    pub u: VertexSet,
    pub r: VertexSet,
    pub s: VertexSet,
}

/// Builds a partition for bound `m`, or `None` when `ν(G) > m`.
///
/// `U` starts as the Gallai-Edmonds set `A(G)` (a minimiser of the
/// Tutte-Berge formula); each even component of `G - U` then gives up its
/// smallest non-cut vertex. `S` is the set of isolated vertices left over.
pub fn tutte_berge_partition(g: &Graph, m: usize) -> Option<TBPartition> {
    let nu = matching_number(g);
    if nu > m {
        return None;
    }
    // D: vertices missed by some maximum matching
    let d: Vec<bool> = g
        .vertices()
        .map(|v| matching_number(&g.remove_vertices(&[v]).0) == nu)
        .collect();
    let mut in_u = vec![false; g.n()];
    for v in g.vertices() {
        if !d[v] && g.neighbors(v).iter().any(|&w| d[w]) {
            in_u[v] = true;
        }
    }
    let u1: VertexSet = g.vertices().filter(|&v| in_u[v]).collect();
    let (rest, kept) = g.remove_vertices(&u1);
    for comp in rest.connected_components() {
        if comp.len() % 2 == 0 {
            let (cg, cmap) = rest.induced_subgraph(&comp).unwrap();
            let cuts = block_decomposition(&cg).cut_vertices;
            let pick = cg
                .vertices()
                .find(|v| cuts.binary_search(v).is_err())
                .unwrap();
            in_u[kept[cmap[pick]]] = true;
        }
    }
    let u: VertexSet = g.vertices().filter(|&v| in_u[v]).collect();
    let (rest, kept) = g.remove_vertices(&u);
    let mut s = Vec::new();
    let mut r = Vec::new();
    for v in rest.vertices() {
        if rest.degree(v) == 0 {
            s.push(kept[v]);
        } else {
            r.push(kept[v]);
        }
    }
    let p = TBPartition { u, r, s };
    debug_assert_eq!(verify_partition(g, &p, m), Ok(true));
    Some(p)
}

/// Checks the four partition conditions for bound `m`.
pub fn verify_partition(g: &Graph, p: &TBPartition, m: usize) -> Result<bool> {
    let mut owner = vec![0u8; g.n()];
    for (tag, set) in [(1u8, &p.u), (2, &p.r), (3, &p.s)] {
        for &v in set.iter() {
            if v >= g.n() || owner[v] != 0 {
                return Err(Error::NotAPartition);
            }
            owner[v] = tag;
        }
    }
    if owner.contains(&0) {
        return Err(Error::NotAPartition);
    }
    let mut r_sorted = p.r.clone();
    r_sorted.sort_unstable();
    let (gr, _) = g.induced_subgraph(&r_sorted)?;
    let comps = gr.connected_components();
    if comps.iter().any(|c| c.len() < 3 || c.len() % 2 == 0) {
        return Ok(false);
    }
    for &v in &p.s {
        // S independent and N(S) ⊆ U
        if g.neighbors(v).iter().any(|&w| owner[w] != 1) {
            return Ok(false);
        }
    }
    Ok(2 * p.u.len() + p.r.len() - comps.len() <= 2 * m)
}

/// Exhaustive maximum matching size by edge branching. Test oracle.
pub fn matching_number_exhaustive(g: &Graph) -> usize {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    fn rec(i: usize, edges: &[(usize, usize)], used: &mut Vec<bool>) -> usize {
        if i == edges.len() {
            return 0;
        }
        let skip = rec(i + 1, edges, used);
        let (a, b) = edges[i];
        if used[a] || used[b] {
            return skip;
        }
        used[a] = true;
        used[b] = true;
        let take = 1 + rec(i + 1, edges, used);
        used[a] = false;
        used[b] = false;
        skip.max(take)
    }
    rec(0, &edges, &mut vec![false; g.n()])
}
