//! Vertex Cover: safe reductions, exact branching, and the logged oracle
//! used by the kernel.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, Graph, VertexSet};
use crate::structure::fvs_exact;

/// Largest graph `solve_vc_exact` accepts (bitmask width).
pub const VC_CAP: usize = 64;

/// Result of `reduce_vc`. `budget < 0` means NO.
#[derive(Clone, Debug)]
pub struct VcReduction {
    pub graph: Graph,
    pub budget: i64,
    /// reduced vertex -> input vertex
    pub kept: VertexSet,
    /// vertices taken into the cover by the rules
    pub forced: VertexSet,
}

/// Applies the isolated, degree-one and high-degree rules to a fixed point.
pub fn reduce_vc(g: &Graph, budget: i64) -> VcReduction {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let mut forced = Vec::new();
    let mut k = budget;

    fn take(g: &Graph, v: usize, alive: &mut [bool], deg: &mut [usize]) {
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
            }
        }
    }

    let mut changed = true;
    while changed && k >= 0 {
        changed = false;
        for v in 0..n {
            if !alive[v] {
                continue;
            }
            if deg[v] == 0 {
                alive[v] = false;
                changed = true;
            } else if deg[v] == 1 {
                let u = *g.neighbors(v).iter().find(|&&w| alive[w]).unwrap();
                take(g, u, &mut alive, &mut deg);
                forced.push(u);
                k -= 1;
                changed = true;
            } else if deg[v] as i64 > k {
                take(g, v, &mut alive, &mut deg);
                forced.push(v);
                k -= 1;
                changed = true;
            }
            if k < 0 {
                break;
            }
        }
    }
    let kept: VertexSet = g.vertices().filter(|&v| alive[v]).collect();
    forced.sort_unstable();
    VcReduction {
        graph: g.induced_unchecked(&kept),
        budget: k,
        kept,
        forced,
    }
}

fn check_vc_cap(g: &Graph) -> Result<()> {
    if g.n() > VC_CAP {
        return Err(Error::CapExceeded {
            what: "vertex cover instance",
            size: g.n(),
            cap: VC_CAP,
        });
    }
    Ok(())
}

/// A vertex cover of size at most `k` inside `alive`, as a mask.
pub(crate) fn vc_search(adj: &[u64], mut alive: u64, mut k: i64) -> Option<u64> {
    let mut cover = 0u64;
    loop {
        if k < 0 {
            return None;
        }
        let mut changed = false;
        let mut edges2 = 0u32;
        let mut best = (0u32, 0usize);
        for v in bits::iter64(alive) {
            let nb = adj[v] & alive;
            let d = nb.count_ones();
            if d == 0 {
                alive &= !(1 << v);
                changed = true;
            } else if d == 1 {
                let u = nb.trailing_zeros();
                cover |= 1 << u;
                alive &= !(1 << u) & !(1 << v);
                k -= 1;
                changed = true;
            } else if d as i64 > k {
                cover |= 1 << v;
                alive &= !(1 << v);
                k -= 1;
                changed = true;
            } else {
                edges2 += d;
                if d > best.0 {
                    best = (d, v);
                }
            }
            if k < 0 {
                return None;
            }
            if changed {
                break;
            }
        }
        if changed {
            continue;
        }
        if edges2 == 0 {
            return Some(cover);
        }
        let (d, v) = best;
        if (edges2 / 2) as i64 > k * d as i64 {
            return None;
        }
        if let Some(c) = vc_search(adj, alive & !(1 << v), k - 1) {
            return Some(cover | c | 1 << v);
        }
        let nb = adj[v] & alive;
        let c = vc_search(adj, alive & !nb & !(1 << v), k - nb.count_ones() as i64)?;
        return Some(cover | c | nb);
    }
}

/// Exact decision: does `G` have a vertex cover of size at most `budget`?
pub fn solve_vc_exact(g: &Graph, budget: i64) -> Result<bool> {
    check_vc_cap(g)?;
    Ok(budget >= 0 && vc_search(&g.masks64(), full64(g.n()), budget).is_some())
}

/// A minimum vertex cover.
pub fn min_vertex_cover(g: &Graph) -> Result<VertexSet> {
    check_vc_cap(g)?;
    let adj = g.masks64();
    for k in 0..=g.n() as i64 {
        if let Some(c) = vc_search(&adj, full64(g.n()), k) {
            return Ok(bits::iter64(c).collect());
        }
    }
    unreachable!("the whole vertex set is a cover")
}

pub(crate) fn full64(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// One simulated oracle call.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub original_n: usize,
    /// edges of the query graph
    pub original_m: usize,
    pub reduced_n: usize,
    pub budget: i64,
    pub reduced_budget: i64,
    pub fvs_of_query: Option<usize>,
    pub answer: bool,
    /// query vertices as instance vertex ids (empty for standalone calls)
    #[serde(default)]
    pub vertices: Vec<usize>,
    /// the Q-region the query was cut from
    #[serde(default)]
    pub q_region: Vec<usize>,
}

/// Decides whether `g` has a vertex cover of size at most `budget`: safe
/// reductions, then exact branching. `fvs_cap` bounds the exact feedback
/// vertex set computation for the record; `None` skips it.
pub fn vc_oracle_with(
    g: &Graph,
    budget: i64,
    fvs_cap: Option<usize>,
) -> Result<(bool, QueryRecord)> {
    let red = reduce_vc(g, budget);
    let answer = red.budget >= 0 && solve_vc_exact(&red.graph, red.budget)?;
    let fvs_of_query = match fvs_cap {
        Some(cap) if g.n() <= cap => Some(fvs_exact(g, cap)?.len()),
        _ => None,
    };
    Ok((
        answer,
        QueryRecord {
            original_n: g.n(),
            original_m: g.m(),
            reduced_n: red.graph.n(),
            budget,
            reduced_budget: red.budget,
            fvs_of_query,
            answer,
            vertices: Vec::new(),
            q_region: Vec::new(),
        },
    ))
}

pub fn vc_oracle(g: &Graph, budget: i64) -> Result<(bool, QueryRecord)> {
    vc_oracle_with(g, budget, Some(crate::structure::DEFAULT_FVS_CAP))
}

/// Exhaustive vertex cover number. Test oracle.
pub fn vc_number_exhaustive(g: &Graph) -> usize {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    (0..1u64 << g.n())
        .filter(|&s| {
            edges
                .iter()
                .all(|&(a, b)| s >> a & 1 == 1 || s >> b & 1 == 1)
        })
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap_or(0)
}
