//! Subgraph and minor containment by bounded exhaustive search.
//!
//! Patterns are constant-size; hosts are searched component by component and
//! each connected host is limited to 128 vertices.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{bits, Graph, VertexSet};
use crate::structure::block_decomposition;

pub const DEFAULT_PATTERN_CAP: usize = 12;
const HOST_CAP: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Containment {
    Minor,
    Subgraph,
}

impl std::str::FromStr for Containment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minor" => Ok(Containment::Minor),
            "subgraph" => Ok(Containment::Subgraph),
            other => Err(Error::Precondition(format!(
                "unknown containment type `{other}`"
            ))),
        }
    }
}

impl std::fmt::Display for Containment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Containment::Minor => "minor",
            Containment::Subgraph => "subgraph",
        })
    }
}

/// Branch sets indexed by the pattern's vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorModel {
    pub branch_sets: Vec<VertexSet>,
}

impl MinorModel {
    /// Union of all branch sets, sorted.
    pub fn vertices(&self) -> VertexSet {
        let mut all: Vec<usize> = self.branch_sets.iter().flatten().copied().collect();
        all.sort_unstable();
        all
    }

    /// Checks connectivity, disjointness and edge realisation.
    pub fn is_valid(&self, g: &Graph, h: &Graph) -> bool {
        if self.branch_sets.len() != h.n() {
            return false;
        }
        let mut owner = vec![usize::MAX; g.n()];
        for (i, set) in self.branch_sets.iter().enumerate() {
            if set.is_empty() {
                return false;
            }
            for &v in set {
                if v >= g.n() || owner[v] != usize::MAX {
                    return false;
                }
                owner[v] = i;
            }
            if !set_connected(g, set) {
                return false;
            }
        }
        h.edges()
            .all(|(a, b)| sets_adjacent(g, &self.branch_sets[a], &self.branch_sets[b]))
    }
}

fn set_connected(g: &Graph, set: &[usize]) -> bool {
    if set.len() <= 1 {
        return true;
    }
    let mut inside = vec![false; g.n()];
    for &v in set {
        inside[v] = true;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![set[0]];
    seen[set[0]] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for &w in g.neighbors(v) {
            if inside[w] && !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == set.len()
}

fn sets_adjacent(g: &Graph, a: &[usize], b: &[usize]) -> bool {
    a.iter()
        .any(|&x| g.neighbors(x).iter().any(|y| b.binary_search(y).is_ok()))
}

fn check_cap(h: &Graph, cap: usize) -> Result<()> {
    if h.n() > cap {
        return Err(Error::CapExceeded {
            what: "pattern",
            size: h.n(),
            cap,
        });
    }
    Ok(())
}

/// Pattern vertex order: per component, highest degree first, then greedily
/// the vertex with most already-placed neighbours. Isolated vertices last.
fn pattern_order(h: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(h.n());
    let mut placed = vec![false; h.n()];
    let mut comps = h.connected_components();
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    for comp in comps.iter().filter(|c| c.len() > 1) {
        let start = *comp
            .iter()
            .max_by_key(|&&v| (h.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        placed[start] = true;
        order.push(start);
        for _ in 1..comp.len() {
            let next = *comp
                .iter()
                .filter(|&&v| !placed[v])
                .max_by_key(|&&v| {
                    let p = h.neighbors(v).iter().filter(|&&w| placed[w]).count();
                    (p, h.degree(v), std::cmp::Reverse(v))
                })
                .unwrap();
            placed[next] = true;
            order.push(next);
        }
    }
    order.extend(h.vertices().filter(|&v| h.degree(v) == 0));
    order
}

struct SubgraphSearch<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<usize>,
    earlier: Vec<Vec<usize>>,
    map: Vec<usize>,
    used: Vec<bool>,
}

impl<'a> SubgraphSearch<'a> {
    fn new(g: &'a Graph, h: &'a Graph) -> Self {
        let order = pattern_order(h);
        let mut pos = vec![0; h.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let earlier = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                h.neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| pos[w] < i)
                    .collect()
            })
            .collect();
        SubgraphSearch {
            g,
            h,
            order,
            earlier,
            map: vec![usize::MAX; h.n()],
            used: vec![false; g.n()],
        }
    }

    /// Visits embeddings; `visit` returns `true` to stop.
    fn run(&mut self, pos: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if pos == self.order.len() {
            return visit(&self.map);
        }
        let hv = self.order[pos];
        let need = self.h.degree(hv);
        let candidates: Vec<usize> = match self.earlier[pos].first() {
            Some(&p) => self.g.neighbors(self.map[p]).to_vec(),
            None => self.g.vertices().collect(),
        };
        for x in candidates {
            if self.used[x] || self.g.degree(x) < need {
                continue;
            }
            if !self.earlier[pos]
                .iter()
                .all(|&q| self.g.has_edge(x, self.map[q]))
            {
                continue;
            }
            self.used[x] = true;
            self.map[hv] = x;
            let stop = self.run(pos + 1, visit);
            self.used[x] = false;
            self.map[hv] = usize::MAX;
            if stop {
                return true;
            }
        }
        false
    }
}

fn subgraph_embedding(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if h.n() > g.n() || h.m() > g.m() {
        return None;
    }
    let mut found = None;
    SubgraphSearch::new(g, h).run(0, &mut |m| {
        found = Some(m.to_vec());
        true
    });
    found
}

/// An injective map `V(H) -> V(G)` preserving edges, if one exists.
pub fn contains_subgraph(g: &Graph, h: &Graph, cap: usize) -> Result<Option<Vec<usize>>> {
    check_cap(h, cap)?;
    Ok(subgraph_embedding(g, h))
}

/// Brute-force isomorphism test.
pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.m() != b.m() {
        return false;
    }
    let mut da: Vec<usize> = a.vertices().map(|v| a.degree(v)).collect();
    let mut db: Vec<usize> = b.vertices().map(|v| b.degree(v)).collect();
    da.sort_unstable();
    db.sort_unstable();
    da == db && subgraph_embedding(a, b).is_some()
}

/// Every distinct vertex set that carries an `H`-subgraph, as masks.
fn subgraph_occurrences(g: &Graph, h: &Graph) -> Vec<u128> {
    let mut seen = std::collections::BTreeSet::new();
    if h.n() <= g.n() && h.m() <= g.m() {
        SubgraphSearch::new(g, h).run(0, &mut |m| {
            seen.insert(m.iter().fold(0u128, |acc, &v| acc | 1 << v));
            false
        });
    }
    seen.into_iter().collect()
}

/// Are there at least `target` pairwise vertex-disjoint `H`-subgraphs?
pub fn disjoint_packing_at_least(g: &Graph, h: &Graph, target: usize, cap: usize) -> Result<bool> {
    check_cap(h, cap)?;
    if target == 0 {
        return Ok(true);
    }
    if h.n() == 0 {
        return Ok(true);
    }
    if target * h.n() > g.n() {
        return Ok(false);
    }
    if g.n() > HOST_CAP {
        return Err(Error::CapExceeded {
            what: "packing host",
            size: g.n(),
            cap: HOST_CAP,
        });
    }
    let occ = subgraph_occurrences(g, h);
    // occurrences grouped by their lowest vertex
    let mut by_low: Vec<Vec<u128>> = vec![Vec::new(); g.n()];
    for &o in &occ {
        by_low[o.trailing_zeros() as usize].push(o);
    }
    fn rec(v: usize, n: usize, used: u128, need: usize, k: usize, by_low: &[Vec<u128>]) -> bool {
        if need == 0 {
            return true;
        }
        if v == n {
            return false;
        }
        let free_ahead = n - v - (used >> v).count_ones() as usize;
        if free_ahead < need * k {
            return false;
        }
        if used >> v & 1 == 0 {
            for &o in &by_low[v] {
                if o & used == 0 && rec(v + 1, n, used | o, need - 1, k, by_low) {
                    return true;
                }
            }
        }
        rec(v + 1, n, used, need, k, by_low)
    }
    Ok(rec(0, g.n(), 0, target, h.n(), &by_low))
}

/// Greedy shrink to a minimal model: remove vertices from branch sets in
/// lexicographic order while the model stays valid, until a fixed point.
pub fn minimize_model(g: &Graph, h: &Graph, model: &mut MinorModel) {
    let mut changed = true;
    while changed {
        changed = false;
        for hv in h.vertices() {
            let mut i = 0;
            while i < model.branch_sets[hv].len() {
                if model.branch_sets[hv].len() == 1 {
                    break;
                }
                let mut candidate = model.branch_sets[hv].clone();
                candidate.remove(i);
                let ok = set_connected(g, &candidate)
                    && h.neighbors(hv)
                        .iter()
                        .all(|&q| sets_adjacent(g, &candidate, &model.branch_sets[q]));
                if ok {
                    model.branch_sets[hv] = candidate;
                    changed = true;
                } else {
                    i += 1;
                }
            }
        }
    }
}

/// A minimal `H`-model in `G`, if `H` is a minor of `G`.
pub fn contains_minor(g: &Graph, h: &Graph, cap: usize) -> Result<Option<MinorModel>> {
    check_cap(h, cap)?;
    let Some(sets) = find_model(g, h)? else {
        return Ok(None);
    };
    let mut model = MinorModel { branch_sets: sets };
    minimize_model(g, h, &mut model);
    debug_assert!(model.is_valid(g, h));
    Ok(Some(model))
}

/// Every connected component of `H` is a minor of `G`.
pub fn componentwise_minor(h: &Graph, g: &Graph, cap: usize) -> Result<bool> {
    for (comp, _) in h.component_graphs() {
        check_cap(&comp, cap)?;
        if find_model(g, &comp)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn contains(g: &Graph, h: &Graph, ty: Containment, cap: usize) -> Result<bool> {
    check_cap(h, cap)?;
    Ok(match ty {
        Containment::Subgraph => subgraph_embedding(g, h).is_some(),
        Containment::Minor => find_model(g, h)?.is_some(),
    })
}

/// No member of `family` is contained in `G` under `ty`.
pub fn is_type_free(g: &Graph, family: &[Graph], ty: Containment, cap: usize) -> Result<bool> {
    for h in family {
        if contains(g, h, ty, cap)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Vertex set of some occurrence of a family member: an embedding image for
/// subgraphs, the union of a minimal model for minors.
pub fn find_occurrence(
    g: &Graph,
    family: &[Graph],
    ty: Containment,
    cap: usize,
) -> Result<Option<VertexSet>> {
    for h in family {
        check_cap(h, cap)?;
        match ty {
            Containment::Subgraph => {
                if let Some(m) = subgraph_embedding(g, h) {
                    let mut s = m;
                    s.sort_unstable();
                    return Ok(Some(s));
                }
            }
            Containment::Minor => {
                if let Some(model) = contains_minor(g, h, cap)? {
                    return Ok(Some(model.vertices()));
                }
            }
        }
    }
    Ok(None)
}

// ---------------------------------------------------------------------------
// model search

fn find_model(g: &Graph, h: &Graph) -> Result<Option<Vec<VertexSet>>> {
    if h.n() == 0 {
        return Ok(Some(Vec::new()));
    }
    if h.n() > g.n() || h.m() > g.m() {
        return Ok(None);
    }
    if let Some(emb) = subgraph_embedding(g, h) {
        return Ok(Some(emb.into_iter().map(|v| vec![v]).collect()));
    }
    let isolated = h.isolated();
    let (core, core_ids) = h.remove_vertices(&isolated);
    let comps = core.connected_components();

    let mut sets = if isolated.is_empty() && comps.len() > 1 {
        find_disconnected(g, &core, &comps)?
    } else {
        find_in_hosts(g, &core, isolated.len())?
    };
    let Some(core_sets) = sets.take() else {
        return Ok(None);
    };
    // place isolated pattern vertices on the lowest unused vertices
    let mut out = vec![Vec::new(); h.n()];
    let mut used = vec![false; g.n()];
    for (i, set) in core_sets.into_iter().enumerate() {
        for &v in &set {
            used[v] = true;
        }
        out[core_ids[i]] = set;
    }
    let mut spare = g.vertices().filter(|&v| !used[v]);
    for &hv in &isolated {
        match spare.next() {
            Some(v) => out[hv] = vec![v],
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}

/// Restricts a connected pattern with no isolated vertices to the hosts that
/// can carry it: components, then the 2-core when the pattern has minimum
/// degree two, then blocks when the pattern is 2-connected.
fn candidate_hosts(g: &Graph, h: &Graph, reserve: usize) -> Vec<VertexSet> {
    if reserve > 0 {
        // extra singleton branch sets may sit anywhere
        return vec![g.vertices().collect()];
    }
    let connected = h.is_connected();
    let min_deg2 = h.min_degree() >= 2;
    let biconnected = connected && h.n() >= 3 && block_decomposition(h).blocks.len() == 1;
    let mut hosts = Vec::new();
    let comps: Vec<VertexSet> = if connected {
        g.connected_components()
    } else {
        vec![g.vertices().collect()]
    };
    for comp in comps {
        if comp.len() < h.n() {
            continue;
        }
        let mut set = comp;
        if min_deg2 {
            set = two_core(g, &set);
            if set.len() < h.n() {
                continue;
            }
        }
        if biconnected {
            let (sub, map) = g.induced_subgraph(&set).unwrap();
            for block in block_decomposition(&sub).blocks {
                if block.len() >= h.n() {
                    hosts.push(block.iter().map(|&v| map[v]).collect());
                }
            }
        } else {
            hosts.push(set);
        }
    }
    hosts
}

fn two_core(g: &Graph, set: &[usize]) -> VertexSet {
    let mut alive = vec![false; g.n()];
    for &v in set {
        alive[v] = true;
    }
    let mut deg: Vec<usize> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().filter(|&&w| alive[w]).count())
        .collect();
    let mut stack: Vec<usize> = set.iter().copied().filter(|&v| deg[v] < 2).collect();
    while let Some(v) = stack.pop() {
        if !alive[v] {
            continue;
        }
        alive[v] = false;
        for &w in g.neighbors(v) {
            if alive[w] {
                deg[w] -= 1;
                if deg[w] < 2 {
                    stack.push(w);
                }
            }
        }
    }
    set.iter().copied().filter(|&v| alive[v]).collect()
}

fn find_in_hosts(g: &Graph, h: &Graph, reserve: usize) -> Result<Option<Vec<VertexSet>>> {
    for host in candidate_hosts(g, h, reserve) {
        if let Some(sets) = search_host(g, &host, h, reserve)? {
            return Ok(Some(sets));
        }
    }
    Ok(None)
}

fn search_host(
    g: &Graph,
    host: &[usize],
    h: &Graph,
    reserve: usize,
) -> Result<Option<Vec<VertexSet>>> {
    if host.len() > HOST_CAP {
        return Err(Error::CapExceeded {
            what: "connected minor host",
            size: host.len(),
            cap: HOST_CAP,
        });
    }
    let (sub, map) = g.induced_subgraph(host)?;
    if sub.m() < h.m() {
        return Ok(None);
    }
    let reserve_here = reserve.saturating_sub(g.n() - host.len());
    let found = ModelSearch::new(&sub, h, reserve_here).run();
    Ok(found.map(|masks| {
        masks
            .into_iter()
            .map(|m| bits::iter128(m).map(|v| map[v]).collect())
            .collect()
    }))
}

/// Disconnected pattern without isolated vertices: distribute its components
/// over the host components.
fn find_disconnected(
    g: &Graph,
    core: &Graph,
    comps: &[VertexSet],
) -> Result<Option<Vec<VertexSet>>> {
    let host_comps = g.connected_components();
    if host_comps.len() == 1 {
        let min_deg2 = core.min_degree() >= 2;
        let all: VertexSet = g.vertices().collect();
        let host = if min_deg2 { two_core(g, &all) } else { all };
        if host.len() < core.n() {
            return Ok(None);
        }
        return search_host(g, &host, core, 0);
    }
    let r = comps.len();
    let mut memo: HashMap<(usize, u32), Option<Vec<VertexSet>>> = HashMap::new();
    let mut assign = vec![usize::MAX; r];

    // group `mask` of pattern components inside host component `c`
    let mut group_model = |c: usize, mask: u32| -> Result<Option<Vec<VertexSet>>> {
        if let Some(hit) = memo.get(&(c, mask)) {
            return Ok(hit.clone());
        }
        let members: VertexSet = (0..r)
            .filter(|i| mask >> i & 1 == 1)
            .flat_map(|i| comps[i].iter().copied())
            .collect();
        let (pattern, pmap) = core.induced_subgraph(&members)?;
        let (host_g, hmap) = g.induced_subgraph(&host_comps[c])?;
        let res = if pattern.n() > host_g.n() || pattern.m() > host_g.m() {
            None
        } else {
            find_model(&host_g, &pattern)?.map(|sets| {
                // back to core ids order: index by core vertex
                let mut by_core = vec![Vec::new(); core.n()];
                for (pi, set) in sets.into_iter().enumerate() {
                    by_core[pmap[pi]] = set.into_iter().map(|v| hmap[v]).collect();
                }
                by_core
            })
        };
        memo.insert((c, mask), res.clone());
        Ok(res)
    };

    fn rec(
        i: usize,
        r: usize,
        hosts: usize,
        assign: &mut Vec<usize>,
        check: &mut dyn FnMut(&[usize]) -> Result<Option<Vec<VertexSet>>>,
    ) -> Result<Option<Vec<VertexSet>>> {
        if i == r {
            return check(assign);
        }
        for c in 0..hosts {
            assign[i] = c;
            if let Some(found) = rec(i + 1, r, hosts, assign, check)? {
                return Ok(Some(found));
            }
        }
        assign[i] = usize::MAX;
        Ok(None)
    }

    let mut check = |assign: &[usize]| -> Result<Option<Vec<VertexSet>>> {
        let mut groups: Vec<u32> = vec![0; host_comps.len()];
        for (i, &c) in assign.iter().enumerate() {
            groups[c] |= 1 << i;
        }
        let mut out = vec![Vec::new(); core.n()];
        for (c, &mask) in groups.iter().enumerate() {
            if mask == 0 {
                continue;
            }
            match group_model(c, mask)? {
                Some(sets) => {
                    for (v, set) in sets.into_iter().enumerate() {
                        if !set.is_empty() {
                            out[v] = set;
                        }
                    }
                }
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    };
    rec(0, r, host_comps.len(), &mut assign, &mut check)
}

/// Branch-set growth on a host of at most 128 vertices. Pattern vertices are
/// placed in `pattern_order`; each branch set is a connected vertex set
/// enumerated once per seed (ESU-style extension).
struct ModelSearch {
    adj: Vec<u128>,
    n: usize,
    order: Vec<usize>,
    earlier: Vec<Vec<usize>>,
    /// per position: pattern vertices placed later that have a neighbour placed at or before it
    pending: Vec<Vec<(usize, Vec<usize>)>>,
    phi: Vec<u128>,
    phi_nbhd: Vec<u128>,
    reserve: usize,
}

impl ModelSearch {
    fn new(host: &Graph, h: &Graph, reserve: usize) -> Self {
        let order = pattern_order(h);
        let mut pos = vec![0; h.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let earlier: Vec<Vec<usize>> = order
            .iter()
            .enumerate()
            .map(|(i, &v)| {
                h.neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| pos[w] < i)
                    .collect()
            })
            .collect();
        let pending = (0..order.len())
            .map(|i| {
                order[i + 1..]
                    .iter()
                    .filter_map(|&u| {
                        let placed: Vec<usize> = h
                            .neighbors(u)
                            .iter()
                            .copied()
                            .filter(|&w| pos[w] <= i)
                            .collect();
                        (!placed.is_empty()).then_some((u, placed))
                    })
                    .collect()
            })
            .collect();
        ModelSearch {
            adj: host.masks128(),
            n: host.n(),
            order,
            earlier,
            pending,
            phi: vec![0; h.n()],
            phi_nbhd: vec![0; h.n()],
            reserve,
        }
    }

    fn all(&self) -> u128 {
        if self.n == 128 {
            u128::MAX
        } else {
            (1u128 << self.n) - 1
        }
    }

    fn nbhd(&self, set: u128) -> u128 {
        bits::iter128(set).fold(0, |acc, v| acc | self.adj[v])
    }

    fn run(mut self) -> Option<Vec<u128>> {
        if self.place(0, 0) {
            Some(self.phi)
        } else {
            None
        }
    }

    fn place(&mut self, pos: usize, used: u128) -> bool {
        if pos == self.order.len() {
            return true;
        }
        let free = self.all() & !used;
        let after = self.order.len() - pos - 1;
        let available = free.count_ones() as usize;
        if available < after + 1 + self.reserve {
            return false;
        }
        let max_size = available - after - self.reserve;
        let touch = match self.earlier[pos].first() {
            Some(&p) => self.phi_nbhd[p] & free,
            None => free,
        };
        let mut banned = 0u128;
        for s in bits::iter128(touch) {
            let allowed = free & !banned & !(1u128 << s);
            let set = 1u128 << s;
            let ext = self.adj[s] & allowed;
            let closed = set | self.adj[s];
            if self.grow(pos, used, set, ext, closed, allowed, max_size - 1) {
                return true;
            }
            banned |= 1u128 << s;
        }
        false
    }

    #[allow(clippy::too_many_arguments)]
    fn grow(
        &mut self,
        pos: usize,
        used: u128,
        set: u128,
        mut ext: u128,
        closed: u128,
        allowed: u128,
        room: usize,
    ) -> bool {
        if self.accept(pos, used, set) {
            return true;
        }
        if room == 0 {
            return false;
        }
        while ext != 0 {
            let w = ext.trailing_zeros() as usize;
            ext &= ext - 1;
            let new_ext = ext | (self.adj[w] & allowed & !closed);
            if self.grow(
                pos,
                used,
                set | 1u128 << w,
                new_ext,
                closed | self.adj[w] | 1u128 << w,
                allowed,
                room - 1,
            ) {
                return true;
            }
        }
        false
    }

    fn accept(&mut self, pos: usize, used: u128, set: u128) -> bool {
        for &q in &self.earlier[pos] {
            if self.phi_nbhd[q] & set == 0 {
                return false;
            }
        }
        let hv = self.order[pos];
        let used2 = used | set;
        let free = self.all() & !used2;
        self.phi[hv] = set;
        self.phi_nbhd[hv] = self.nbhd(set);
        if !self.pending[pos].is_empty() {
            let comps = bits::components128(&self.adj, free);
            for (_, placed) in &self.pending[pos] {
                let ok = comps
                    .iter()
                    .any(|&c| placed.iter().all(|&q| self.phi_nbhd[q] & c != 0));
                if !ok {
                    self.phi[hv] = 0;
                    return false;
                }
            }
        }
        if self.place(pos + 1, used2) {
            return true;
        }
        self.phi[hv] = 0;
        false
    }
}
