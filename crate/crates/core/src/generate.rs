//! Small-graph enumeration and random instances for exhaustive checks.

use std::collections::BTreeSet;

use rand::Rng;

use crate::graph::Graph;

/// Largest order `canonical_code` supports.
pub const CANON_CAP: usize = 10;

fn pair_index(i: usize, j: usize) -> usize {
    // i < j, column-major upper triangle
    j * (j - 1) / 2 + i
}

/// Isomorphism-invariant code: the maximum adjacency bitstring over all
/// vertex orders that respect a degree-based refinement.
pub fn canonical_code(g: &Graph) -> u64 {
    let n = g.n();
    assert!(
        n <= CANON_CAP,
        "canonical_code supports at most {CANON_CAP} vertices"
    );
    let inv: Vec<(usize, Vec<usize>)> = g
        .vertices()
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).iter().map(|&w| g.degree(w)).collect();
            nd.sort_unstable();
            (g.degree(v), nd)
        })
        .collect();
    let mut order: Vec<usize> = g.vertices().collect();
    order.sort_by(|&a, &b| inv[a].cmp(&inv[b]));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if inv[c[0]] == inv[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let mut best = 0u64;
    let mut placed = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(
        g: &Graph,
        classes: &[Vec<usize>],
        ci: usize,
        placed: &mut Vec<usize>,
        used: &mut Vec<bool>,
        best: &mut u64,
    ) {
        if ci == classes.len() {
            let mut code = 0u64;
            for j in 1..placed.len() {
                for i in 0..j {
                    if g.has_edge(placed[i], placed[j]) {
                        code |= 1 << pair_index(i, j);
                    }
                }
            }
            *best = (*best).max(code);
            return;
        }
        let class = &classes[ci];
        let start = placed.len();
        let done = class.iter().filter(|&&v| used[v]).count();
        if done == class.len() {
            rec(g, classes, ci + 1, placed, used, best);
            return;
        }
        for &v in class {
            if used[v] {
                continue;
            }
            used[v] = true;
            placed.push(v);
            rec(g, classes, ci, placed, used, best);
            placed.pop();
            used[v] = false;
        }
        debug_assert_eq!(placed.len(), start);
    }
    rec(g, &classes, 0, &mut placed, &mut used, &mut best);
    best
}

/// Inverse of `canonical_code` up to relabelling.
pub fn from_code(n: usize, code: u64) -> Graph {
    let mut edges = Vec::new();
    for j in 1..n {
        for i in 0..j {
            if code >> pair_index(i, j) & 1 == 1 {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges).expect("valid code")
}

fn extend(prev: &[Graph], n: usize, connected: bool) -> Vec<Graph> {
    let mut seen = BTreeSet::new();
    for g in prev {
        let start = if connected { 1 } else { 0 };
        for nb in start..1u64 << (n - 1) {
            let mut edges: Vec<(usize, usize)> = g.edges().collect();
            edges.extend((0..n - 1).filter(|&i| nb >> i & 1 == 1).map(|i| (i, n - 1)));
            let h = Graph::from_edges(n, edges).unwrap();
            seen.insert(canonical_code(&h));
        }
    }
    seen.into_iter().map(|c| from_code(n, c)).collect()
}

/// All graphs on exactly `n` vertices, one per isomorphism class.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    let mut cur = vec![Graph::default()];
    for k in 1..=n {
        cur = extend(&cur, k, false);
    }
    cur
}

/// All connected graphs on exactly `n >= 1` vertices, one per isomorphism
/// class. Every connected graph has a vertex whose removal keeps it
/// connected, so extending connected graphs by one attached vertex suffices.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut cur = vec![Graph::edgeless(1)];
    for k in 2..=n {
        cur = extend(&cur, k, true);
    }
    cur
}

/// `G(n, p)`.
pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// A minor of `g` by `ops` random vertex deletions, edge deletions and edge
/// contractions.
pub fn random_minor<R: Rng>(g: &Graph, ops: usize, rng: &mut R) -> Graph {
    let mut h = g.clone();
    for _ in 0..ops {
        if h.n() <= 1 {
            break;
        }
        match rng.gen_range(0..3) {
            0 => {
                let v = rng.gen_range(0..h.n());
                h = h.remove_vertices(&[v]).0;
            }
            1 if h.m() > 0 => {
                let edges: Vec<(usize, usize)> = h.edges().collect();
                let drop = rng.gen_range(0..edges.len());
                let kept = edges
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != drop)
                    .map(|(_, &e)| e);
                h = Graph::from_edges(h.n(), kept).unwrap();
            }
            _ if h.m() > 0 => {
                let edges: Vec<(usize, usize)> = h.edges().collect();
                let (u, v) = edges[rng.gen_range(0..edges.len())];
                h = h.identify(u, v).unwrap().0;
            }
            _ => {}
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn known_counts() {
        let all: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
        let conn: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn code_is_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let g = random_graph(7, 0.4, &mut rng);
            let mut perm: Vec<usize> = (0..7).collect();
            for i in (1..7).rev() {
                perm.swap(i, rng.gen_range(0..=i));
            }
            assert_eq!(canonical_code(&g), canonical_code(&g.permute(&perm)));
        }
        assert_ne!(
            canonical_code(&Graph::path(4)),
            canonical_code(&Graph::star(3))
        );
    }
}
