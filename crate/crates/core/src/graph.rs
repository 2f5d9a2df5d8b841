//! Immutable simple undirected graphs on dense vertex ids `0..n`.
//!
//! Every construction returns a fresh graph together with the vertex maps
//! needed to follow a vertex through the construction.

use crate::error::{Error, Result};

/// A subset of the vertices of some graph, kept sorted and duplicate-free.
pub type VertexSet = Vec<usize>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// `n` isolated vertices.
    pub fn edgeless(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph, collapsing repeated edges. Self-loops are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph { adj, m: m / 2 })
    }

    fn from_adj_unchecked(mut adj: Vec<Vec<usize>>) -> Self {
        let mut m = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Graph { adj, m: m / 2 }
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least three vertices");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Self {
        Self::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    /// The star `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Self::from_edges(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Vertices of degree zero.
    pub fn isolated(&self) -> VertexSet {
        self.vertices()
            .filter(|&v| self.adj[v].is_empty())
            .collect()
    }

    /// Open neighbourhood of a vertex set.
    pub fn neighborhood(&self, set: &[usize]) -> VertexSet {
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        let mut out = vec![false; self.n()];
        for &v in set {
            for &w in &self.adj[v] {
                if !inside[w] {
                    out[w] = true;
                }
            }
        }
        self.vertices().filter(|&v| out[v]).collect()
    }

    /// Neighbour bitmasks; requires `n <= 64`.
    pub fn masks64(&self) -> Vec<u64> {
        assert!(self.n() <= 64, "bitmask view needs at most 64 vertices");
        self.adj
            .iter()
            .map(|l| l.iter().fold(0u64, |acc, &w| acc | 1 << w))
            .collect()
    }

    /// Neighbour bitmasks; requires `n <= 128`.
    pub fn masks128(&self) -> Vec<u128> {
        assert!(self.n() <= 128, "bitmask view needs at most 128 vertices");
        self.adj
            .iter()
            .map(|l| l.iter().fold(0u128, |acc, &w| acc | 1 << w))
            .collect()
    }

    /// Disjoint union. The `i`-th returned map sends vertices of `graphs[i]`
    /// to their ids in the union.
    pub fn disjoint_union(graphs: &[&Graph]) -> (Graph, Vec<Vec<usize>>) {
        let mut adj = Vec::new();
        let mut maps = Vec::with_capacity(graphs.len());
        for g in graphs {
            let offset = adj.len();
            maps.push((0..g.n()).map(|v| v + offset).collect());
            for list in &g.adj {
                adj.push(list.iter().map(|&w| w + offset).collect());
            }
        }
        let m = graphs.iter().map(|g| g.m).sum();
        (Graph { adj, m }, maps)
    }

    /// `k` disjoint copies; copy `i` occupies ids `i*n .. (i+1)*n`.
    pub fn copies(&self, k: usize) -> Graph {
        let refs: Vec<&Graph> = std::iter::repeat_n(self, k).collect();
        Self::disjoint_union(&refs).0
    }

    /// Identifies `u` and `v` into one vertex adjacent to `N(u) ∪ N(v) \ {u, v}`.
    /// Returns the old-to-new vertex map.
    pub fn identify(&self, u: usize, v: usize) -> Result<(Graph, Vec<usize>)> {
        if u == v || u >= self.n() || v >= self.n() {
            return Err(Error::InvalidIdentification(u, v));
        }
        self.merge_pairs(&[(u, v)])
    }

    /// Identifies every listed pair (transitively). Each merged class takes the
    /// position of its smallest member; surviving vertices keep their relative
    /// order. Returns the old-to-new vertex map.
    pub fn merge_pairs(&self, pairs: &[(usize, usize)]) -> Result<(Graph, Vec<usize>)> {
        let n = self.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(u, v) in pairs {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidIdentification(u, v));
            }
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                // smallest id stays the root
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
        let mut new_id = vec![usize::MAX; n];
        let mut next = 0;
        for x in 0..n {
            let r = find(&mut parent, x);
            if r == x {
                new_id[x] = next;
                next += 1;
            }
        }
        let map: Vec<usize> = (0..n)
            .map(|x| {
                let r = find(&mut parent, x);
                new_id[r]
            })
            .collect();
        let mut adj = vec![Vec::new(); next];
        for (a, b) in self.edges() {
            let (x, y) = (map[a], map[b]);
            if x != y {
                adj[x].push(y);
                adj[y].push(x);
            }
        }
        Ok((Graph::from_adj_unchecked(adj), map))
    }

    /// `G[S]`. Vertex `i` of the result is the `i`-th smallest member of `S`;
    /// the returned list is that new-to-old map.
    pub fn induced_subgraph(&self, set: &[usize]) -> Result<(Graph, VertexSet)> {
        let mut kept: Vec<usize> = set.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if let Some(&bad) = kept.iter().find(|&&v| v >= self.n()) {
            return Err(Error::VertexOutOfRange {
                vertex: bad,
                n: self.n(),
            });
        }
        Ok((self.induced_unchecked(&kept), kept))
    }

    /// `G[S]` for a sorted, in-range, duplicate-free `S`.
    pub(crate) fn induced_unchecked(&self, kept: &[usize]) -> Graph {
        let mut pos = vec![usize::MAX; self.n()];
        for (i, &v) in kept.iter().enumerate() {
            pos[v] = i;
        }
        let mut m = 0;
        let adj: Vec<Vec<usize>> = kept
            .iter()
            .map(|&v| {
                let l: Vec<usize> = self.adj[v]
                    .iter()
                    .filter_map(|&w| (pos[w] != usize::MAX).then_some(pos[w]))
                    .collect();
                m += l.len();
                l
            })
            .collect();
        Graph { adj, m: m / 2 }
    }

    /// `G - X`. Returns the graph and the new-to-old map.
    pub fn remove_vertices(&self, removed: &[usize]) -> (Graph, VertexSet) {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            if v < self.n() {
                gone[v] = true;
            }
        }
        let kept: Vec<usize> = self.vertices().filter(|&v| !gone[v]).collect();
        (self.induced_unchecked(&kept), kept)
    }

    /// `G[mask]` for `n <= 128`, with the new-to-old map.
    pub fn induced_by_mask(&self, mask: u128) -> (Graph, VertexSet) {
        let kept: Vec<usize> = self.vertices().filter(|&v| mask >> v & 1 == 1).collect();
        (self.induced_unchecked(&kept), kept)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        let mut stack = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            stack.push(s);
            let mut comp = Vec::new();
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.connected_components().len() == 1
    }

    /// Is `G` a forest?
    pub fn is_acyclic(&self) -> bool {
        self.m + self.connected_components().len() == self.n()
    }

    /// The connected components as separate graphs, with new-to-old maps.
    pub fn component_graphs(&self) -> Vec<(Graph, VertexSet)> {
        self.connected_components()
            .into_iter()
            .map(|c| (self.induced_unchecked(&c), c))
            .collect()
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let edges = self.edges().map(|(u, v)| (perm[u], perm[v]));
        Graph::from_edges(self.n(), edges).unwrap()
    }
}

/// Bitmask helpers shared by the enumeration-heavy modules.
pub(crate) mod bits {
    /// Iterates set bits of a `u64`, lowest first.
    pub fn iter64(mut mask: u64) -> impl Iterator<Item = usize> {
        std::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let i = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                Some(i)
            }
        })
    }

    pub fn iter128(mut mask: u128) -> impl Iterator<Item = usize> {
        std::iter::from_fn(move || {
            if mask == 0 {
                None
            } else {
                let i = mask.trailing_zeros() as usize;
                mask &= mask - 1;
                Some(i)
            }
        })
    }

    /// Vertices reachable from `start` inside `within`.
    pub fn reach128(adj: &[u128], start: u128, within: u128) -> u128 {
        let mut seen = start & within;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u128;
            for v in iter128(frontier) {
                next |= adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    pub fn reach64(adj: &[u64], start: u64, within: u64) -> u64 {
        let mut seen = start & within;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in iter64(frontier) {
                next |= adj[v];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Components of `G[set]` as masks, ordered by lowest vertex.
    pub fn components64(adj: &[u64], set: u64) -> Vec<u64> {
        let mut rest = set;
        let mut out = Vec::new();
        while rest != 0 {
            let c = reach64(adj, rest & rest.wrapping_neg(), rest);
            out.push(c);
            rest &= !c;
        }
        out
    }

    pub fn components128(adj: &[u128], set: u128) -> Vec<u128> {
        let mut rest = set;
        let mut out = Vec::new();
        while rest != 0 {
            let c = reach128(adj, rest & rest.wrapping_neg(), rest);
            out.push(c);
            rest &= !c;
        }
        out
    }

    /// Calls `f` on every `k`-subset of `0..n` as a mask, in lexicographic order
    /// of the sorted member lists. Stops early when `f` returns `true`.
    pub fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(u64) -> bool) -> bool {
        if k > n {
            return false;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let mask = idx.iter().fold(0u64, |acc, &i| acc | 1 << i);
            if f(mask) {
                return true;
            }
            // advance
            let mut i = k;
            loop {
                if i == 0 {
                    return false;
                }
                i -= 1;
                if idx[i] < n - k + i {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
                if i == 0 {
                    return false;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_of_two_triangles() {
        let k3 = Graph::complete(3);
        let (g, maps) = Graph::disjoint_union(&[&k3, &k3]);
        assert_eq!((g.n(), g.m()), (6, 6));
        assert_eq!(g.connected_components().len(), 2);
        assert_eq!(maps[1], vec![3, 4, 5]);
    }

    #[test]
    fn union_of_nothing_and_single() {
        let (g, maps) = Graph::disjoint_union(&[]);
        assert!(g.is_empty());
        assert!(maps.is_empty());
        let p2 = Graph::path(2);
        let (g, maps) = Graph::disjoint_union(&[&p2]);
        assert_eq!(g, p2);
        assert_eq!(maps[0], vec![0, 1]);
    }

    #[test]
    fn identify_two_edges_gives_p3() {
        let g = Graph::path(2).copies(2);
        let (h, map) = g.identify(1, 2).unwrap();
        assert_eq!((h.n(), h.m()), (3, 2));
        assert_eq!(map, vec![0, 1, 1, 2]);
        assert_eq!(h.max_degree(), 2);
    }

    #[test]
    fn identify_collapses_parallel_edges() {
        // P3 a-b-c, merge the ends
        let (h, map) = Graph::path(3).identify(0, 2).unwrap();
        assert_eq!((h.n(), h.m()), (2, 1));
        assert_eq!(map[0], map[2]);
        // C4, merge opposite corners: a path on three vertices
        let (h, _) = Graph::cycle(4).identify(0, 2).unwrap();
        assert_eq!((h.n(), h.m()), (3, 2));
        assert_eq!(h.max_degree(), 2);
        assert!(h.is_acyclic());
    }

    #[test]
    fn identify_rejects_bad_pairs() {
        let g = Graph::path(3);
        assert!(matches!(
            g.identify(1, 1),
            Err(Error::InvalidIdentification(1, 1))
        ));
        assert!(g.identify(0, 7).is_err());
    }

    #[test]
    fn identify_adjacent_drops_loop() {
        let (h, _) = Graph::complete(3).identify(0, 1).unwrap();
        assert_eq!((h.n(), h.m()), (2, 1));
    }

    #[test]
    fn induced_subgraphs() {
        let (k3, kept) = Graph::complete(4).induced_subgraph(&[3, 0, 2]).unwrap();
        assert_eq!(k3, Graph::complete(3));
        assert_eq!(kept, vec![0, 2, 3]);
        let (e, _) = Graph::cycle(5).induced_subgraph(&[]).unwrap();
        assert!(e.is_empty());
        let (p, _) = Graph::cycle(5).induced_subgraph(&[1, 2, 3]).unwrap();
        assert_eq!(p, Graph::path(3));
        assert!(Graph::cycle(5).induced_subgraph(&[9]).is_err());
    }

    #[test]
    fn components() {
        assert_eq!(
            Graph::complete(3).copies(2).connected_components(),
            vec![vec![0, 1, 2], vec![3, 4, 5]]
        );
        assert!(Graph::default().connected_components().is_empty());
        let (g, _) = Graph::disjoint_union(&[&Graph::edgeless(1), &Graph::path(2)]);
        let sizes: Vec<usize> = g.connected_components().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2]);
    }

    #[test]
    fn petersen_shape() {
        let p = Graph::petersen();
        assert_eq!((p.n(), p.m()), (10, 15));
        assert!(p.vertices().all(|v| p.degree(v) == 3));
    }

    #[test]
    fn combinations_in_lex_order() {
        let mut seen = Vec::new();
        bits::for_each_combination(4, 2, |m| {
            seen.push(m);
            false
        });
        assert_eq!(seen, vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        let mut count = 0;
        bits::for_each_combination(3, 0, |_| {
            count += 1;
            false
        });
        assert_eq!(count, 1);
    }
}
