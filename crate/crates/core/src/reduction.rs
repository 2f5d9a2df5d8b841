//! CNF-SAT to F-deletion: clause gadgets and instance builders.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::{select_reduction_target, Family};
use crate::format::CnfFormula;
use crate::graph::{Graph, VertexSet};
use crate::minors::{
    componentwise_minor, contains_minor, disjoint_packing_at_least, DEFAULT_PATTERN_CAP,
};
use crate::structure::{
    alpha_prune, block_decomposition, slb, smallest_leaf_block, treewidth_exact,
    DEFAULT_TREEWIDTH_CAP,
};

/// Role vertices of one copy `M_i` of the gadget core.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CopyLabels {
    pub u: usize,
    pub v: usize,
    pub w: usize,
    pub s: usize,
    pub t: usize,
    pub h1: VertexSet,
    pub h2: VertexSet,
    pub l3: VertexSet,
    pub r1: VertexSet,
    pub r2: VertexSet,
    pub l1: VertexSet,
    pub l2: VertexSet,
}

impl CopyLabels {
    fn relabel(&self, map: &[usize]) -> CopyLabels {
        let set = |s: &VertexSet| {
            let mut out: VertexSet = s.iter().map(|&x| map[x]).collect();
            out.sort_unstable();
            out.dedup();
            out
        };
        CopyLabels {
            u: map[self.u],
            v: map[self.v],
            w: map[self.w],
            s: map[self.s],
            t: map[self.t],
            h1: set(&self.h1),
            h2: set(&self.h2),
            l3: set(&self.l3),
            r1: set(&self.r1),
            r2: set(&self.r2),
            l1: set(&self.l1),
            l2: set(&self.l2),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GadgetLabels {
    pub n: usize,
    /// distinguished vertices of the pattern
    pub a: usize,
    pub b: usize,
    pub c: usize,
    /// smallest leaf-block of the pattern
    pub leaf_block: VertexSet,
    /// `copies[i-1]` is `M_i`
    pub copies: Vec<CopyLabels>,
    /// `f_1(v), ..., f_n(v)` in order
    pub s: Vec<usize>,
}

impl GadgetLabels {
    fn relabel(&self, map: &[usize]) -> GadgetLabels {
        GadgetLabels {
            copies: self.copies.iter().map(|c| c.relabel(map)).collect(),
            s: self.s.iter().map(|&x| map[x]).collect(),
            ..self.clone()
        }
    }

    pub fn s_set(&self) -> VertexSet {
        let mut s = self.s.clone();
        s.sort_unstable();
        s
    }
}

fn check_pattern(h: &Graph) -> Result<()> {
    if h.n() < 3 || !h.is_connected() {
        return Err(Error::Precondition(
            "pattern must be connected with at least 3 vertices".into(),
        ));
    }
    Ok(())
}

/// Picks `(L, a, b, c)`: `L` the smallest leaf-block, `c` its cut vertex (the
/// smallest vertex when `H` is 2-connected), `b` the smallest other vertex of
/// `L`, `a` the smallest remaining vertex, taken from `R` when possible.
fn distinguished(h: &Graph) -> Result<(VertexSet, usize, usize, usize)> {
    let l = smallest_leaf_block(h)?;
    let cuts = block_decomposition(h).cut_vertices;
    let c = l
        .iter()
        .copied()
        .find(|v| cuts.binary_search(v).is_ok())
        .unwrap_or(l[0]);
    let b = *l.iter().find(|&&v| v != c).unwrap();
    let in_r = |v: usize| l.binary_search(&v).is_err();
    let a = h
        .vertices()
        .find(|&v| in_r(v))
        .or_else(|| h.vertices().find(|&v| v != b && v != c))
        .unwrap();
    Ok((l, a, b, c))
}

/// The clause gadget for `n` literals.
pub fn clause_gadget(h: &Graph, n: usize) -> Result<(Graph, GadgetLabels)> {
    check_pattern(h)?;
    if n == 0 {
        return Err(Error::Precondition("clause gadget needs n >= 1".into()));
    }
    let (l, a, b, c) = distinguished(h)?;
    let (lg, lmap) = h.induced_subgraph(&l)?;
    let l_of = |x: usize| lmap.binary_search(&x).unwrap();
    let r_set: VertexSet = h
        .vertices()
        .filter(|&v| v == c && l.len() < h.n() || l.binary_search(&v).is_err())
        .collect();

    // M = H1 ⊎ H2 ⊎ L3 with s = H1(c)~H2(b), t = H2(c)~L3(c)
    let (union, maps) = Graph::disjoint_union(&[h, h, &lg]);
    let (h1, h2, l3) = (&maps[0], &maps[1], &maps[2]);
    let (mg, mmap) = union.merge_pairs(&[(h1[c], h2[b]), (h2[c], l3[l_of(c)])])?;
    let img = |map: &Vec<usize>, set: &[usize]| -> VertexSet {
        let mut out: VertexSet = set.iter().map(|&x| mmap[map[x]]).collect();
        out.sort_unstable();
        out
    };
    let all_h: VertexSet = h.vertices().collect();
    let all_l: VertexSet = lg.vertices().collect();
    let core = CopyLabels {
        u: mmap[h1[a]],
        v: mmap[l3[l_of(b)]],
        w: mmap[h1[b]],
        s: mmap[h1[c]],
        t: mmap[h2[c]],
        h1: img(h1, &all_h),
        h2: img(h2, &all_h),
        l3: img(l3, &all_l),
        r1: img(h1, &r_set),
        r2: img(h2, &r_set),
        l1: img(h1, &l),
        l2: img(h2, &l),
    };

    // 2n-1 copies: f_i(w)~f_{n+i}(v), f_{n+i}(w)~f_{i+1}(u) for i < n
    let copies = 2 * n - 1;
    let big = mg.copies(copies);
    let off = |i: usize| (i - 1) * mg.n();
    let mut pairs = Vec::new();
    for i in 1..n {
        pairs.push((off(i) + core.w, off(n + i) + core.v));
        pairs.push((off(n + i) + core.w, off(i + 1) + core.u));
    }
    let (g, gmap) = big.merge_pairs(&pairs)?;
    let labels: Vec<CopyLabels> = (1..=copies)
        .map(|i| {
            let shift: Vec<usize> = (0..mg.n()).map(|x| gmap[off(i) + x]).collect();
            core.relabel(&shift)
        })
        .collect();
    let s = labels[..n].iter().map(|c| c.v).collect();
    Ok((
        g,
        GadgetLabels {
            n,
            a,
            b,
            c,
            leaf_block: l,
            copies: labels,
            s,
        },
    ))
}

/// The explicit solution containing `f_j(v)`, `1 <= j <= n`.
pub fn clause_gadget_solution(labels: &GadgetLabels, j: usize) -> Result<VertexSet> {
    let n = labels.n;
    if j == 0 || j > n {
        return Err(Error::Precondition(format!("j = {j} outside 1..={n}")));
    }
    let f = |i: usize| &labels.copies[i - 1];
    let mut x = Vec::new();
    for i in 1..j {
        x.extend([f(i).t, f(i).w, f(i + n).s]);
    }
    x.extend([f(j).v, f(j).s]);
    for i in j + 1..=n {
        x.extend([f(i).t, f(i).u, f(i + n - 1).t]);
    }
    x.sort_unstable();
    debug_assert!(x.windows(2).all(|w| w[0] != w[1]));
    Ok(x)
}

#[derive(Clone, Debug, Serialize)]
pub struct VariableLabels {
    pub var: usize,
    pub pos: usize,
    pub neg: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClauseLabels {
    pub literals: Vec<i64>,
    pub gadget: GadgetLabels,
}

/// Role labels for one copy of the single-pattern instance.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceLabels {
    pub variables: Vec<VariableLabels>,
    pub clauses: Vec<ClauseLabels>,
}

impl InstanceLabels {
    fn shifted(&self, off: usize) -> InstanceLabels {
        let map = |x: usize| x + off;
        InstanceLabels {
            variables: self
                .variables
                .iter()
                .map(|v| VariableLabels {
                    var: v.var,
                    pos: map(v.pos),
                    neg: map(v.neg),
                })
                .collect(),
            clauses: self
                .clauses
                .iter()
                .map(|c| {
                    let shift: Vec<usize> = (0..=max_label(&c.gadget)).map(map).collect();
                    ClauseLabels {
                        literals: c.literals.clone(),
                        gadget: c.gadget.relabel(&shift),
                    }
                })
                .collect(),
        }
    }
}

fn max_label(g: &GadgetLabels) -> usize {
    g.copies
        .iter()
        .flat_map(|c| c.h1.iter().chain(&c.h2).chain(&c.l3).copied())
        .max()
        .unwrap_or(0)
}

/// Family-level bookkeeping.
#[derive(Clone, Debug, Serialize)]
pub struct FamilyPart {
    /// index of `H` in the family
    pub member: usize,
    pub c: usize,
    pub ell_prime: usize,
    /// vertices of `G2`, which come first in the vertex order
    pub g2_vertices: usize,
    /// start of each copy of `G'`
    pub copy_offsets: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionArtifact {
    #[serde(skip)]
    pub graph: Graph,
    pub ell: usize,
    pub modulator: VertexSet,
    /// one entry per copy of the single-pattern instance
    pub labels: Vec<InstanceLabels>,
    pub family: Option<FamilyPart>,
}

/// Single connected pattern: variable copies of `H`, one gadget per clause,
/// gadget `S_j` glued onto the literal vertices, `ℓ = k + 3n - 2m`.
pub fn build_instance_connected(h: &Graph, phi: &CnfFormula) -> Result<ReductionArtifact> {
    check_pattern(h)?;
    if phi.clauses.is_empty() {
        return Err(Error::Precondition("formula has no clauses".into()));
    }
    let k = phi.vars;
    let gadgets: Vec<(Graph, GadgetLabels)> = phi
        .clauses
        .iter()
        .map(|c| clause_gadget(h, c.len()))
        .collect::<Result<_>>()?;
    let var_graph = h.copies(k);
    let mut parts: Vec<&Graph> = vec![&var_graph];
    parts.extend(gadgets.iter().map(|(g, _)| g));
    let (union, maps) = Graph::disjoint_union(&parts);
    // literal vertex: copy i-1 of H, vertex 0 for x_i and vertex 1 for ¬x_i
    let lit_vertex =
        |var: usize, positive: bool| maps[0][(var - 1) * h.n() + usize::from(!positive)];
    let mut pairs = Vec::new();
    for (j, clause) in phi.clauses.iter().enumerate() {
        let labels = &gadgets[j].1;
        for (i, lit) in clause.iter().enumerate() {
            pairs.push((maps[j + 1][labels.s[i]], lit_vertex(lit.var, lit.positive)));
        }
    }
    let (g, gmap) = union.merge_pairs(&pairs)?;
    let variables: Vec<VariableLabels> = (1..=k)
        .map(|var| VariableLabels {
            var,
            pos: gmap[lit_vertex(var, true)],
            neg: gmap[lit_vertex(var, false)],
        })
        .collect();
    let clauses = phi
        .clauses
        .iter()
        .enumerate()
        .map(|(j, clause)| {
            let to_final: Vec<usize> = maps[j + 1].iter().map(|&x| gmap[x]).collect();
            ClauseLabels {
                literals: clause.iter().map(|l| l.to_dimacs()).collect(),
                gadget: gadgets[j].1.relabel(&to_final),
            }
        })
        .collect();
    let mut modulator: VertexSet = variables.iter().flat_map(|v| [v.pos, v.neg]).collect();
    modulator.sort_unstable();
    let n_occ = phi.occurrences();
    let ell = k + 3 * n_occ - 2 * phi.clauses.len();
    Ok(ReductionArtifact {
        graph: g,
        ell,
        modulator,
        labels: vec![InstanceLabels { variables, clauses }],
        family: None,
    })
}

/// Family-level instance: `G = G2 ⊎ (2c-1)·G'` with `ℓ = (2c-1)ℓ'` and
/// `G2 = (ℓ+1)·(H - Y)`.
pub fn build_instance_family(family: &Family, phi: &CnfFormula) -> Result<ReductionArtifact> {
    let target = select_reduction_target(family)?;
    let inner = build_instance_connected(&target.h_up, phi)?;
    let copies = 2 * target.c - 1;
    let ell = copies * inner.ell;
    let (rest, _) = target.h.remove_vertices(&target.y);
    let g2 = rest.copies(ell + 1);
    let g1 = inner.graph.copies(copies);
    let (g, maps) = Graph::disjoint_union(&[&g2, &g1]);
    let base = maps[1].first().copied().unwrap_or(g2.n());
    let step = inner.graph.n();
    let copy_offsets: Vec<usize> = (0..copies).map(|i| base + i * step).collect();
    let mut modulator: VertexSet = copy_offsets
        .iter()
        .flat_map(|&off| inner.modulator.iter().map(move |&x| x + off))
        .collect();
    modulator.sort_unstable();
    let labels = copy_offsets
        .iter()
        .map(|&off| inner.labels[0].shifted(off))
        .collect();
    Ok(ReductionArtifact {
        graph: g,
        ell,
        modulator,
        labels,
        family: Some(FamilyPart {
            member: target.index,
            c: target.c,
            ell_prime: inner.ell,
            g2_vertices: g2.n(),
            copy_offsets,
        }),
    })
}

/// Verification caps for `verify_gadget`.
pub const GADGET_PATTERN_CAP: usize = 4;
pub const GADGET_N_CAP: usize = 2;

#[derive(Clone, Debug, Serialize)]
pub struct SolutionCheck {
    pub j: usize,
    pub size: usize,
    pub size_ok: bool,
    pub contains_sj: bool,
    pub minor_free: bool,
    pub prune_below_h: bool,
    pub s_components_ok: bool,
}

impl SolutionCheck {
    pub fn passed(&self) -> bool {
        self.size_ok
            && self.contains_sj
            && self.minor_free
            && self.prune_below_h
            && self.s_components_ok
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GadgetReport {
    pub n: usize,
    pub vertices: usize,
    pub edges: usize,
    pub s_size: usize,
    pub tw_g: i32,
    pub tw_h: i32,
    pub tw_ok: bool,
    pub packing_g: bool,
    pub packing_g_minus_s: bool,
    pub solutions: Vec<SolutionCheck>,
    pub passed: bool,
}

/// Mechanical check of every gadget property at desk scale.
pub fn verify_gadget(h: &Graph, n: usize) -> Result<GadgetReport> {
    verify_gadget_with_caps(h, n, GADGET_PATTERN_CAP, GADGET_N_CAP)
}

pub fn verify_gadget_with_caps(
    h: &Graph,
    n: usize,
    h_cap: usize,
    n_cap: usize,
) -> Result<GadgetReport> {
    if h.n() > h_cap {
        return Err(Error::CapExceeded {
            what: "gadget pattern",
            size: h.n(),
            cap: h_cap,
        });
    }
    if n > n_cap {
        return Err(Error::CapExceeded {
            what: "gadget literal count",
            size: n,
            cap: n_cap,
        });
    }
    let (g, labels) = clause_gadget(h, n)?;
    let s = labels.s_set();
    let tw_g = treewidth_exact(&g, DEFAULT_TREEWIDTH_CAP)?;
    let tw_h = treewidth_exact(h, DEFAULT_TREEWIDTH_CAP)?;
    let packing_g = disjoint_packing_at_least(&g, h, 3 * n - 1, DEFAULT_PATTERN_CAP)?;
    let packing_g_minus_s =
        disjoint_packing_at_least(&g.remove_vertices(&s).0, h, 3 * n - 2, DEFAULT_PATTERN_CAP)?;
    let slb_h = slb(h)?;
    let mut solutions = Vec::new();
    for j in 1..=n {
        let x = clause_gadget_solution(&labels, j)?;
        let (rest, kept) = g.remove_vertices(&x);
        let minor_free = contains_minor(&rest, h, DEFAULT_PATTERN_CAP)?.is_none();
        let (pruned, _) = alpha_prune(&rest, slb_h);
        let prune_below_h = componentwise_minor(&pruned, h, DEFAULT_PATTERN_CAP)?;
        let s_components_ok = rest.connected_components().iter().all(|comp| {
            let hits = comp
                .iter()
                .filter(|&&v| s.binary_search(&kept[v]).is_ok())
                .count();
            hits == 0 || (hits == 1 && comp.len() < slb_h)
        });
        solutions.push(SolutionCheck {
            j,
            size: x.len(),
            size_ok: x.len() == 3 * n - 1,
            contains_sj: x.binary_search(&labels.s[j - 1]).is_ok(),
            minor_free,
            prune_below_h,
            s_components_ok,
        });
    }
    let tw_ok = tw_g <= tw_h;
    let passed = tw_ok
        && packing_g
        && packing_g_minus_s
        && s.len() == n
        && solutions.iter().all(SolutionCheck::passed);
    Ok(GadgetReport {
        n,
        vertices: g.n(),
        edges: g.m(),
        s_size: s.len(),
        tw_g,
        tw_h,
        tw_ok,
        packing_g,
        packing_g_minus_s,
        solutions,
        passed,
    })
}
