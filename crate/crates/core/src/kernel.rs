//! The Turing kernel for families with a matching member, and the
//! brute-force baselines it is checked against.
//!
//! For a family whose stripped version contains `(m+1)·P2`, a solution `X`
//! leaves a graph of matching number at most `m`. The kernel enumerates the
//! constant-size part `(U, R)` of a bounded-matching partition of `G - X`,
//! guesses up to `α` representatives `f(Y)` of each neighbourhood type `Y ⊆ U`
//! among the remaining vertices `Q`, and hands the rest to Vertex Cover.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::family::Family;
use crate::graph::{bits, Graph, VertexSet};
use crate::minors::{find_occurrence, is_type_free, Containment, DEFAULT_PATTERN_CAP};
use crate::vc::{full64, min_vertex_cover, vc_oracle_with, QueryRecord};

/// Largest graph the kernel accepts (bitmask width).
pub const KERNEL_CAP: usize = 64;
/// Largest graph solved by plain subset enumeration.
pub const DEFAULT_BRUTE_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Auto,
    Turing,
    Brute,
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(Engine::Auto),
            "turing" => Ok(Engine::Turing),
            "brute" => Ok(Engine::Brute),
            other => Err(Error::Precondition(format!("unknown engine `{other}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DeletionInstance {
    pub graph: Graph,
    pub budget: usize,
    pub ty: Containment,
    pub family: Family,
}

impl DeletionInstance {
    /// A budget above `|V(G)|` is clamped; deleting everything always works.
    pub fn new(graph: Graph, budget: usize, ty: Containment, family: Family) -> Self {
        let budget = budget.min(graph.n());
        DeletionInstance {
            graph,
            budget,
            ty,
            family,
        }
    }
}

/// `f : 2^U -> 2^Q`, stored as (type, chosen vertices) for nonempty images.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct TypeFunction {
    pub classes: Vec<(VertexSet, VertexSet)>,
}

impl TypeFunction {
    /// `f(2^U)`, sorted.
    pub fn image(&self) -> VertexSet {
        let mut all: Vec<usize> = self
            .classes
            .iter()
            .flat_map(|(_, s)| s.iter().copied())
            .collect();
        all.sort_unstable();
        all
    }

    pub fn get(&self, y: &[usize]) -> &[usize] {
        self.classes
            .iter()
            .find(|(t, _)| t == y)
            .map_or(&[], |(_, s)| s.as_slice())
    }

    pub fn is_valid(&self, g: &Graph, u: &[usize], q: &[usize], alpha: usize) -> bool {
        let image = self.image();
        if image.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
        if image.iter().any(|v| q.binary_search(v).is_err()) {
            return false;
        }
        if image.iter().any(|&v| {
            g.neighbors(v)
                .iter()
                .any(|w| image.binary_search(w).is_ok())
        }) {
            return false;
        }
        self.classes
            .iter()
            .all(|(y, set)| set.len() <= alpha && set.iter().all(|&v| type_of(g, u, v) == *y))
    }
}

fn type_of(g: &Graph, u: &[usize], v: usize) -> VertexSet {
    g.neighbors(v)
        .iter()
        .copied()
        .filter(|w| u.binary_search(w).is_ok())
        .collect()
}

/// `V(G) \ (U ∪ R ∪ N(R))`.
pub fn compute_q(g: &Graph, u: &[usize], r: &[usize]) -> VertexSet {
    let nr = g.neighborhood(r);
    g.vertices()
        .filter(|v| {
            u.binary_search(v).is_err()
                && r.binary_search(v).is_err()
                && nr.binary_search(v).is_err()
        })
        .collect()
}

/// `{v ∈ Q \ f(2^U) : |f(N(v) ∩ U)| < α}`.
pub fn compute_qprime(
    g: &Graph,
    u: &[usize],
    q: &[usize],
    f: &TypeFunction,
    alpha: usize,
) -> VertexSet {
    let image = f.image();
    q.iter()
        .copied()
        .filter(|v| image.binary_search(v).is_err())
        .filter(|&v| f.get(&type_of(g, u, v)).len() < alpha)
        .collect()
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub engine: Engine,
    pub log_queries: bool,
    pub trace: bool,
    /// cap for the exact feedback vertex set stored in query records
    pub fvs_cap: Option<usize>,
    pub threads: usize,
    pub brute_cap: usize,
    pub pattern_cap: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            engine: Engine::Auto,
            log_queries: false,
            trace: false,
            fvs_cap: Some(crate::structure::DEFAULT_FVS_CAP),
            threads: 1,
            brute_cap: DEFAULT_BRUTE_CAP,
            pattern_cap: DEFAULT_PATTERN_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolvePath {
    /// small remainder with isolated-vertex members: brute force on `F`
    Guard,
    /// the stripped family contains the empty graph
    EmptyMember,
    Brute,
    Turing,
}

/// One accepted `(U, R, f)` together with the query it issued.
#[derive(Clone, Debug, Serialize)]
pub struct TraceRecord {
    pub u: VertexSet,
    pub r: VertexSet,
    pub f: TypeFunction,
    pub q: VertexSet,
    pub q_prime: VertexSet,
    pub query: QueryRecord,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct KernelStats {
    pub u_sets: usize,
    pub r_sets: usize,
    pub type_functions: usize,
    pub queries: usize,
    pub skipped_negative_budget: usize,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub answer: bool,
    pub path: SolvePath,
    /// a solution when the answer is YES
    pub witness: Option<VertexSet>,
    pub queries: Vec<QueryRecord>,
    pub trace: Vec<TraceRecord>,
    pub stats: KernelStats,
}

impl Outcome {
    fn plain(answer: bool, path: SolvePath, witness: Option<VertexSet>) -> Self {
        Outcome {
            answer,
            path,
            witness,
            queries: Vec::new(),
            trace: Vec::new(),
            stats: KernelStats::default(),
        }
    }
}

/// Full decision pipeline.
pub fn solve(inst: &DeletionInstance, opts: &SolveOptions) -> Result<Outcome> {
    let fam = &inst.family;
    let (g, budget) = (&inst.graph, inst.budget);
    let brute = |path| -> Result<Outcome> {
        let x = brute_force_delete(g, &fam.members, inst.ty, budget, opts.brute_cap)?;
        Ok(Outcome::plain(x.is_some(), path, x))
    };
    if opts.engine == Engine::Brute {
        return brute(SolvePath::Brute);
    }
    if fam.has_isolated() && g.n().saturating_sub(budget) <= fam.guard_bound {
        return brute(SolvePath::Guard);
    }
    if fam.has_empty() {
        return Ok(Outcome::plain(false, SolvePath::EmptyMember, None));
    }
    if fam.m.is_none() {
        return match opts.engine {
            Engine::Turing => Err(Error::LowerBoundRegime),
            _ => brute(SolvePath::Brute),
        };
    }
    let mut kernel = TuringKernel::new(g, fam, inst.ty)?;
    kernel.decide(budget, opts)
}

/// The kernel decision procedure on one graph; caches survive across budgets.
pub struct TuringKernel<'a> {
    g: &'a Graph,
    family: &'a [Graph],
    ty: Containment,
    m: usize,
    alpha: usize,
    adj: Vec<u64>,
    free_cache: HashMap<u64, bool>,
    vc_cache: HashMap<(u64, i64), QueryRecord>,
}

struct Hit {
    u: u64,
    r: u64,
    nru: u64,
    q_prime: u64,
    query: u64,
    budget: i64,
}

struct RunState<'s> {
    budget: usize,
    opts: &'s SolveOptions,
    stop: &'s AtomicBool,
    hit: Option<Hit>,
    queries: Vec<QueryRecord>,
    trace: Vec<TraceRecord>,
    stats: KernelStats,
}

impl<'a> TuringKernel<'a> {
    pub fn new(g: &'a Graph, family: &'a Family, ty: Containment) -> Result<Self> {
        let (Some(m), Some(alpha)) = (family.m, family.alpha) else {
            return Err(Error::LowerBoundRegime);
        };
        if g.n() > KERNEL_CAP {
            return Err(Error::CapExceeded {
                what: "kernel instance",
                size: g.n(),
                cap: KERNEL_CAP,
            });
        }
        Ok(TuringKernel {
            g,
            family: &family.stripped,
            ty,
            m,
            alpha,
            adj: g.masks64(),
            free_cache: HashMap::new(),
            vc_cache: HashMap::new(),
        })
    }

    fn fresh(&self) -> Self {
        TuringKernel {
            g: self.g,
            family: self.family,
            ty: self.ty,
            m: self.m,
            alpha: self.alpha,
            adj: self.adj.clone(),
            free_cache: HashMap::new(),
            vc_cache: HashMap::new(),
        }
    }

    /// Every candidate `U` in enumeration order.
    fn u_sets(&self) -> Vec<u64> {
        let n = self.g.n();
        let mut out = Vec::new();
        for size in 0..=self.m.min(n) {
            bits::for_each_combination(n, size, |mask| {
                out.push(mask);
                false
            });
        }
        out
    }

    pub fn decide(&mut self, budget: usize, opts: &SolveOptions) -> Result<Outcome> {
        let us = self.u_sets();
        let threads = opts.threads.max(1).min(us.len().max(1));
        let stop = AtomicBool::new(false);
        let mut runs: Vec<RunState> = Vec::new();
        if threads == 1 {
            let mut st = RunState::new(budget, opts, &stop);
            self.run(&us, &mut st)?;
            runs.push(st);
        } else {
            let chunks: Vec<Vec<u64>> = (0..threads)
                .map(|t| us.iter().copied().skip(t).step_by(threads).collect())
                .collect();
            let results: Vec<Result<RunState>> = std::thread::scope(|scope| {
                let handles: Vec<_> = chunks
                    .iter()
                    .map(|chunk| {
                        let mut k = self.fresh();
                        let stop = &stop;
                        scope.spawn(move || {
                            let mut st = RunState::new(budget, opts, stop);
                            k.run(chunk, &mut st).map(|_| st)
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().unwrap()).collect()
            });
            for r in results {
                runs.push(r?);
            }
        }
        let mut out = Outcome::plain(false, SolvePath::Turing, None);
        for st in runs {
            out.stats.u_sets += st.stats.u_sets;
            out.stats.r_sets += st.stats.r_sets;
            out.stats.type_functions += st.stats.type_functions;
            out.stats.queries += st.stats.queries;
            out.stats.skipped_negative_budget += st.stats.skipped_negative_budget;
            out.queries.extend(st.queries);
            out.trace.extend(st.trace);
            if let (Some(hit), None) = (st.hit, &out.witness) {
                out.answer = true;
                out.witness = self.assemble(&hit, budget)?;
            }
        }
        Ok(out)
    }

    /// `X = X_vc ∪ (N(R) \ U) ∪ Q'` from a minimum cover of the query graph.
    fn assemble(&self, hit: &Hit, budget: usize) -> Result<Option<VertexSet>> {
        let (qg, kept) = self.g.induced_by_mask(hit.query as u128);
        let cover = min_vertex_cover(&qg)?;
        debug_assert!(cover.len() as i64 <= hit.budget);
        let mut x: VertexSet = cover.into_iter().map(|v| kept[v]).collect();
        x.extend(bits::iter64(hit.nru | hit.q_prime));
        x.sort_unstable();
        let (rest, _) = self.g.remove_vertices(&x);
        let ok =
            x.len() <= budget && is_type_free(&rest, self.family, self.ty, DEFAULT_PATTERN_CAP)?;
        debug_assert!(
            ok,
            "assembled solution fails: U={:b} R={:b} X={:?}",
            hit.u, hit.r, x
        );
        Ok(ok.then_some(x))
    }

    fn is_free(&mut self, mask: u64) -> Result<bool> {
        if let Some(&b) = self.free_cache.get(&mask) {
            return Ok(b);
        }
        let (sub, _) = self.g.induced_by_mask(mask as u128);
        let b = is_type_free(&sub, self.family, self.ty, DEFAULT_PATTERN_CAP)?;
        self.free_cache.insert(mask, b);
        Ok(b)
    }

    fn nbhd(&self, set: u64) -> u64 {
        bits::iter64(set).fold(0, |acc, v| acc | self.adj[v])
    }

    fn run(&mut self, us: &[u64], st: &mut RunState) -> Result<()> {
        let n = self.g.n();
        let full = full64(n);
        for &u in us {
            if st.stop.load(Ordering::Relaxed) {
                return Ok(());
            }
            st.stats.u_sets += 1;
            let usize_ = u.count_ones() as usize;
            let rest: Vec<usize> = bits::iter64(full & !u).collect();
            let max_r = (3 * (self.m - usize_)).min(rest.len());
            for r_size in 0..=max_r {
                let mut result = Ok(());
                bits::for_each_combination(rest.len(), r_size, |sel| {
                    let r = bits::iter64(sel).fold(0u64, |acc, i| acc | 1 << rest[i]);
                    match self.with_r(u, r, st) {
                        Ok(done) => done,
                        Err(e) => {
                            result = Err(e);
                            true
                        }
                    }
                });
                result?;
                if st.hit.is_some() || st.stop.load(Ordering::Relaxed) {
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    /// Returns `true` when the search should stop.
    fn with_r(&mut self, u: u64, r: u64, st: &mut RunState) -> Result<bool> {
        let comps = bits::components64(&self.adj, r);
        if comps
            .iter()
            .any(|c| c.count_ones() < 3 || c.count_ones() % 2 == 0)
        {
            return Ok(false);
        }
        let odd = comps.len();
        if 2 * u.count_ones() as usize + r.count_ones() as usize - odd > 2 * self.m {
            return Ok(false);
        }
        st.stats.r_sets += 1;
        let full = full64(self.g.n());
        let nr = self.nbhd(r) & !r;
        let q = full & !u & !r & !nr;
        let nru = nr & !u;
        debug_assert!(bits::iter64(q).all(|v| self.adj[v] & r == 0));
        let base = u | r;
        if !self.is_free(base)? {
            return Ok(false);
        }
        let qv: Vec<usize> = bits::iter64(q).collect();
        let mut class_ids: Vec<u64> = Vec::new();
        let class: Vec<usize> = qv
            .iter()
            .map(|&v| {
                let t = self.adj[v] & u;
                match class_ids.iter().position(|&c| c == t) {
                    Some(i) => i,
                    None => {
                        class_ids.push(t);
                        class_ids.len() - 1
                    }
                }
            })
            .collect();
        let mut counts = vec![0usize; class_ids.len()];
        let ctx = FCtx {
            u,
            r,
            q,
            nru,
            qv: &qv,
            class: &class,
            class_ids: &class_ids,
        };
        self.enumerate_f(&ctx, 0, 0, &mut counts, st)
    }

    fn enumerate_f(
        &mut self,
        ctx: &FCtx,
        i: usize,
        f: u64,
        counts: &mut Vec<usize>,
        st: &mut RunState,
    ) -> Result<bool> {
        if st.stop.load(Ordering::Relaxed) {
            return Ok(true);
        }
        if i == ctx.qv.len() {
            return self.process_f(ctx, f, counts, st);
        }
        let v = ctx.qv[i];
        let c = ctx.class[i];
        if self.adj[v] & f == 0
            && counts[c] < self.alpha
            && self.is_free(ctx.u | ctx.r | f | 1 << v)?
        {
            counts[c] += 1;
            let done = self.enumerate_f(ctx, i + 1, f | 1 << v, counts, st)?;
            counts[c] -= 1;
            if done {
                return Ok(true);
            }
        }
        self.enumerate_f(ctx, i + 1, f, counts, st)
    }

    fn process_f(
        &mut self,
        ctx: &FCtx,
        f: u64,
        counts: &[usize],
        st: &mut RunState,
    ) -> Result<bool> {
        st.stats.type_functions += 1;
        let mut q_prime = 0u64;
        for (i, &v) in ctx.qv.iter().enumerate() {
            if f >> v & 1 == 0 && counts[ctx.class[i]] < self.alpha {
                q_prime |= 1 << v;
            }
        }
        let query = ctx.q & !q_prime;
        let budget = st.budget as i64 - (ctx.nru.count_ones() + q_prime.count_ones()) as i64;
        if budget < 0 {
            st.stats.skipped_negative_budget += 1;
            return Ok(false);
        }
        let rec = match self.vc_cache.get(&(query, budget)) {
            Some(rec) => rec.clone(),
            None => {
                let (qg, kept) = self.g.induced_by_mask(query as u128);
                let fvs_cap = if st.opts.log_queries || st.opts.trace {
                    st.opts.fvs_cap
                } else {
                    None
                };
                let (_, mut rec) = vc_oracle_with(&qg, budget, fvs_cap)?;
                rec.vertices = kept;
                rec.q_region = bits::iter64(ctx.q).collect();
                self.vc_cache.insert((query, budget), rec.clone());
                rec
            }
        };
        st.stats.queries += 1;
        let answer = rec.answer;
        if st.opts.trace {
            let mut classes: Vec<(VertexSet, VertexSet)> = ctx
                .class_ids
                .iter()
                .enumerate()
                .map(|(ci, &t)| {
                    let set: VertexSet = ctx
                        .qv
                        .iter()
                        .enumerate()
                        .filter(|&(i, &v)| ctx.class[i] == ci && f >> v & 1 == 1)
                        .map(|(_, &v)| v)
                        .collect();
                    (bits::iter64(t).collect(), set)
                })
                .filter(|(_, s)| !s.is_empty())
                .collect();
            classes.sort();
            st.trace.push(TraceRecord {
                u: bits::iter64(ctx.u).collect(),
                r: bits::iter64(ctx.r).collect(),
                f: TypeFunction { classes },
                q: rec.q_region.clone(),
                q_prime: bits::iter64(q_prime).collect(),
                query: rec.clone(),
            });
        }
        if st.opts.log_queries {
            st.queries.push(rec);
        }
        if answer {
            st.hit = Some(Hit {
                u: ctx.u,
                r: ctx.r,
                nru: ctx.nru,
                q_prime,
                query,
                budget,
            });
            st.stop.store(true, Ordering::Relaxed);
            return Ok(true);
        }
        Ok(false)
    }
}

struct FCtx<'c> {
    u: u64,
    r: u64,
    q: u64,
    nru: u64,
    qv: &'c [usize],
    class: &'c [usize],
    class_ids: &'c [u64],
}

impl<'s> RunState<'s> {
    fn new(budget: usize, opts: &'s SolveOptions, stop: &'s AtomicBool) -> Self {
        RunState {
            budget,
            opts,
            stop,
            hit: None,
            queries: Vec::new(),
            trace: Vec::new(),
            stats: KernelStats::default(),
        }
    }
}

/// A minimum-size `X` with `|X| <= budget` and `G - X` free of every member,
/// or `None`. Graphs up to `cap` vertices are solved by enumerating vertex
/// subsets in order of size; larger graphs by a bounded search tree that
/// branches on the vertices of a found occurrence.
pub fn brute_force_delete(
    g: &Graph,
    members: &[Graph],
    ty: Containment,
    budget: usize,
    cap: usize,
) -> Result<Option<VertexSet>> {
    if members.iter().any(|h| h.n() == 0) {
        return Ok(None);
    }
    let budget = budget.min(g.n());
    if g.n() > cap.min(KERNEL_CAP) {
        return search_tree_delete(g, members, ty, budget);
    }
    for k in 0..=budget {
        let mut found = None;
        let mut err = None;
        bits::for_each_combination(g.n(), k, |mask| {
            let x: VertexSet = bits::iter64(mask).collect();
            match is_type_free(&g.remove_vertices(&x).0, members, ty, DEFAULT_PATTERN_CAP) {
                Ok(true) => {
                    found = Some(x);
                    true
                }
                Ok(false) => false,
                Err(e) => {
                    err = Some(e);
                    true
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Exact search tree with iterative deepening on the budget. Every solution
/// meets every occurrence, so branching over one occurrence's vertices is
/// complete; greedy disjoint occurrences give a lower bound.
pub fn search_tree_delete(
    g: &Graph,
    members: &[Graph],
    ty: Containment,
    budget: usize,
) -> Result<Option<VertexSet>> {
    if members.iter().any(|h| h.n() == 0) {
        return Ok(None);
    }
    for k in 0..=budget.min(g.n()) {
        let mut removed = Vec::new();
        if branch(g, members, ty, &mut removed, k)? {
            removed.sort_unstable();
            return Ok(Some(removed));
        }
    }
    Ok(None)
}

fn branch(
    g: &Graph,
    members: &[Graph],
    ty: Containment,
    removed: &mut Vec<usize>,
    k: usize,
) -> Result<bool> {
    let (rest, kept) = g.remove_vertices(&sorted(removed));
    let Some(occ) = find_occurrence(&rest, members, ty, DEFAULT_PATTERN_CAP)? else {
        return Ok(true);
    };
    if k == 0 {
        return Ok(false);
    }
    // lower bound from greedily packed disjoint occurrences
    let mut packed = 1;
    let mut cur = rest.remove_vertices(&occ).0;
    while packed <= k {
        match find_occurrence(&cur, members, ty, DEFAULT_PATTERN_CAP)? {
            Some(o) => {
                packed += 1;
                cur = cur.remove_vertices(&o).0;
            }
            None => break,
        }
    }
    if packed > k {
        return Ok(false);
    }
    for v in occ {
        removed.push(kept[v]);
        if branch(g, members, ty, removed, k - 1)? {
            return Ok(true);
        }
        removed.pop();
    }
    Ok(false)
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_p2() -> Graph {
        Graph::path(2).copies(2)
    }

    fn run(
        g: Graph,
        members: Vec<Graph>,
        ty: Containment,
        budget: usize,
        engine: Engine,
    ) -> Result<Outcome> {
        let fam = Family::new(members).unwrap();
        let opts = SolveOptions {
            engine,
            ..SolveOptions::default()
        };
        solve(&DeletionInstance::new(g, budget, ty, fam), &opts)
    }

    #[test]
    fn solve_examples() {
        let k3 = Graph::complete(3);
        let t = Engine::Turing;
        assert!(
            run(k3.clone(), vec![Graph::path(2)], Containment::Minor, 2, t)
                .unwrap()
                .answer
        );
        assert!(
            !run(k3.clone(), vec![Graph::path(2)], Containment::Minor, 1, t)
                .unwrap()
                .answer
        );
        assert!(
            run(k3.copies(2), vec![two_p2()], Containment::Minor, 2, t)
                .unwrap()
                .answer
        );
        assert!(
            !run(k3.copies(2), vec![two_p2()], Containment::Minor, 1, t)
                .unwrap()
                .answer
        );
        let p2k1 = Graph::from_edges(3, [(0, 1)]).unwrap();
        let out = run(Graph::path(2), vec![p2k1], Containment::Subgraph, 0, t).unwrap();
        assert!(out.answer);
        assert_eq!(out.path, SolvePath::Guard);
        assert_eq!(out.witness, Some(vec![]));
    }

    #[test]
    fn regime_error() {
        let r = run(
            Graph::complete(4),
            vec![Graph::complete(3)],
            Containment::Minor,
            2,
            Engine::Turing,
        );
        assert_eq!(r.unwrap_err(), Error::LowerBoundRegime);
        let out = run(
            Graph::complete(4),
            vec![Graph::complete(3)],
            Containment::Minor,
            2,
            Engine::Auto,
        )
        .unwrap();
        assert!(out.answer);
        assert_eq!(out.path, SolvePath::Brute);
    }

    #[test]
    fn turing_witness_is_valid() {
        let g = Graph::petersen();
        for budget in 0..=10 {
            let out = run(
                g.clone(),
                vec![two_p2()],
                Containment::Subgraph,
                budget,
                Engine::Turing,
            )
            .unwrap();
            let brute =
                brute_force_delete(&g, &[two_p2()], Containment::Subgraph, budget, 16).unwrap();
            assert_eq!(out.answer, brute.is_some(), "budget {budget}");
            if let Some(x) = out.witness {
                assert!(x.len() <= budget);
                let rest = g.remove_vertices(&x).0;
                assert!(is_type_free(&rest, &[two_p2()], Containment::Subgraph, 12).unwrap());
            }
        }
    }

    #[test]
    fn q_examples() {
        let g = Graph::complete(3).copies(2);
        assert_eq!(compute_q(&g, &[], &[0, 1, 2]), vec![3, 4, 5]);
        assert!(compute_q(&g, &[0, 1, 2, 3, 4, 5], &[]).is_empty());
        let f = TypeFunction {
            classes: vec![(vec![], vec![3])],
        };
        assert!(f.is_valid(&g, &[], &[3, 4, 5], 10));
        assert_eq!(compute_qprime(&g, &[], &[3, 4, 5], &f, 10), vec![4, 5]);
        let full = TypeFunction {
            classes: vec![(vec![], vec![3])],
        };
        assert!(compute_qprime(&g, &[], &[3], &full, 10).is_empty());
    }

    #[test]
    fn brute_examples() {
        let k4 = Graph::complete(4);
        let k3 = Graph::complete(3);
        assert!(
            brute_force_delete(&k4, std::slice::from_ref(&k3), Containment::Minor, 2, 16)
                .unwrap()
                .is_some()
        );
        assert!(
            brute_force_delete(&k4, std::slice::from_ref(&k3), Containment::Minor, 1, 16)
                .unwrap()
                .is_none()
        );
        assert!(
            brute_force_delete(&k4, &[Graph::default()], Containment::Minor, 4, 16)
                .unwrap()
                .is_none()
        );
        assert_eq!(
            brute_force_delete(&Graph::path(5), &[k3], Containment::Minor, 0, 16).unwrap(),
            Some(vec![])
        );
    }

    #[test]
    fn search_tree_matches_enumeration() {
        let k3 = Graph::complete(3);
        let graphs = [
            Graph::petersen(),
            Graph::complete(5),
            Graph::cycle(7),
            k3.copies(3),
        ];
        for g in &graphs {
            for ty in [Containment::Minor, Containment::Subgraph] {
                for fam in [vec![k3.clone()], vec![Graph::path(3)], vec![two_p2()]] {
                    let a = brute_force_delete(g, &fam, ty, g.n(), 16).unwrap().unwrap();
                    let b = search_tree_delete(g, &fam, ty, g.n()).unwrap().unwrap();
                    assert_eq!(a.len(), b.len());
                }
            }
        }
    }

    #[test]
    fn threads_agree() {
        let g = Graph::petersen();
        let fam = Family::new(vec![two_p2(), Graph::complete(3)]).unwrap();
        for budget in 0..=10 {
            let inst = DeletionInstance::new(g.clone(), budget, Containment::Minor, fam.clone());
            let one = solve(&inst, &SolveOptions::default()).unwrap();
            let four = solve(
                &inst,
                &SolveOptions {
                    threads: 4,
                    ..SolveOptions::default()
                },
            )
            .unwrap();
            assert_eq!(one.answer, four.answer);
        }
    }
}
