//! Forbidden families and their derived constants.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::minors::{are_isomorphic, componentwise_minor, contains_minor, DEFAULT_PATTERN_CAP};
use crate::structure::{slb, treewidth_exact, DEFAULT_TREEWIDTH_CAP};

/// Largest member accepted by `Family::new`.
pub const MEMBER_CAP: usize = 10;

#[derive(Clone, Debug)]
pub struct Family {
    pub names: Vec<String>,
    pub members: Vec<Graph>,
    /// Members with isolated vertices removed.
    pub stripped: Vec<Graph>,
    /// Index into `stripped` of the P3-subgraph-free witness `M`.
    pub witness: Option<usize>,
    /// `|E(M)| - 1`.
    pub m: Option<usize>,
    pub alpha: Option<usize>,
    pub guard_bound: usize,
}

impl Family {
    pub fn new(members: Vec<Graph>) -> Result<Self> {
        let names = (1..=members.len()).map(|i| format!("F{i}")).collect();
        Self::named(names, members)
    }

    pub fn from_named(named: Vec<(String, Graph)>) -> Result<Self> {
        let (names, members) = named.into_iter().unzip();
        Self::named(names, members)
    }

    fn named(names: Vec<String>, members: Vec<Graph>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for h in &members {
            if h.n() > MEMBER_CAP {
                return Err(Error::CapExceeded {
                    what: "family member",
                    size: h.n(),
                    cap: MEMBER_CAP,
                });
            }
        }
        let stripped = strip_isolated(&members);
        let witness = p3_free_witness(&stripped);
        let m = witness.map(|(_, m)| m);
        let alpha = match m {
            Some(m) => Some(compute_alpha(&stripped, m)?),
            None => None,
        };
        Ok(Family {
            guard_bound: guard_bound(&members),
            names,
            members,
            stripped,
            witness: witness.map(|(i, _)| i),
            m,
            alpha,
        })
    }

    /// Some member has an isolated vertex, so `F != F'`.
    pub fn has_isolated(&self) -> bool {
        self.members
            .iter()
            .any(|h| h.vertices().any(|v| h.degree(v) == 0))
    }

    /// `F'` contains the empty graph, so every instance is trivially NO.
    pub fn has_empty(&self) -> bool {
        self.stripped.iter().any(|h| h.n() == 0)
    }

    pub fn witness_graph(&self) -> Option<&Graph> {
        self.witness.map(|i| &self.stripped[i])
    }

    pub fn mintw(&self) -> Result<i32> {
        mintw(&self.members)
    }

    pub fn summary(&self) -> Result<FamilySummary> {
        Ok(FamilySummary {
            members: self.names.clone(),
            stripped: self
                .stripped
                .iter()
                .map(|h| FamilyMemberInfo { n: h.n(), m: h.m() })
                .collect(),
            has_empty: self.has_empty(),
            witness: self.witness.map(|i| self.names[i].clone()),
            m: self.m,
            alpha: self.alpha,
            mintw: self.mintw()?,
            guard_bound: self.guard_bound,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyMemberInfo {
    pub n: usize,
    pub m: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilySummary {
    pub members: Vec<String>,
    pub stripped: Vec<FamilyMemberInfo>,
    pub has_empty: bool,
    #[serde(rename = "M")]
    pub witness: Option<String>,
    pub m: Option<usize>,
    pub alpha: Option<usize>,
    pub mintw: i32,
    pub guard_bound: usize,
}

/// Removes degree-0 vertices from every member. Members that become empty
/// stay in the list; see `Family::has_empty`.
pub fn strip_isolated(members: &[Graph]) -> Vec<Graph> {
    members
        .iter()
        .map(|h| h.remove_vertices(&h.isolated()).0)
        .collect()
}

/// The P3-subgraph-free (maximum degree at most one) member with fewest
/// edges, ties by fewest vertices then input order. Returns its index and
/// `|E(M)| - 1`. Empty members are skipped.
pub fn p3_free_witness(stripped: &[Graph]) -> Option<(usize, usize)> {
    stripped
        .iter()
        .enumerate()
        .filter(|(_, h)| h.n() > 0 && h.max_degree() <= 1)
        .min_by_key(|(i, h)| (h.m(), h.n(), *i))
        .map(|(i, h)| (i, h.m() - 1))
}

/// `max over H of |V(H)| + 3m(Δ(H)+1)`.
pub fn compute_alpha(stripped: &[Graph], m: usize) -> Result<usize> {
    stripped
        .iter()
        .map(|h| h.n() + 3 * m * (h.max_degree() + 1))
        .max()
        .ok_or(Error::EmptyFamily)
}

/// `max over F of |V(F)| + 2|V(F)|^3`.
pub fn guard_bound(members: &[Graph]) -> usize {
    members
        .iter()
        .map(|h| h.n() + 2 * h.n().pow(3))
        .max()
        .unwrap_or(0)
}

pub fn mintw(members: &[Graph]) -> Result<i32> {
    let mut best = None;
    for h in members {
        let tw = treewidth_exact(h, DEFAULT_TREEWIDTH_CAP)?;
        best = Some(best.map_or(tw, |b: i32| b.min(tw)));
    }
    best.ok_or(Error::EmptyFamily)
}

/// Output of `select_reduction_target`.
#[derive(Clone, Debug)]
pub struct ReductionTarget {
    /// Index of `H` in the family.
    pub index: usize,
    pub h: Graph,
    pub h_up: Graph,
    /// Vertices of `H` in the components isomorphic to `h_up`.
    pub y: Vec<usize>,
    pub c: usize,
    /// Indices of the ⪯̃-minimal members of minimum treewidth.
    pub minimal: Vec<usize>,
}

/// Components of `h` that are ⪯-maximal among the components of `h`.
fn maximal_components(h: &Graph) -> Result<Vec<(Graph, Vec<usize>)>> {
    let comps = h.component_graphs();
    let mut out = Vec::new();
    for (i, (c, ids)) in comps.iter().enumerate() {
        let mut dominated = false;
        for (j, (d, _)) in comps.iter().enumerate() {
            if i != j
                && !are_isomorphic(c, d)
                && contains_minor(d, c, DEFAULT_PATTERN_CAP)?.is_some()
            {
                dominated = true;
                break;
            }
        }
        if !dominated {
            out.push((c.clone(), ids.clone()));
        }
    }
    Ok(out)
}

/// Picks `H`, `H_up` and `c` for the family-level hardness reduction.
pub fn select_reduction_target(family: &Family) -> Result<ReductionTarget> {
    let members = &family.members;
    for h in members {
        if !h.connected_components().iter().any(|c| c.len() >= 3) {
            return Err(Error::Precondition(
                "every member needs a component with at least 3 vertices".into(),
            ));
        }
    }
    let tw_min = mintw(members)?;
    let mut minimal = Vec::new();
    for (i, h) in members.iter().enumerate() {
        if treewidth_exact(h, DEFAULT_TREEWIDTH_CAP)? != tw_min {
            continue;
        }
        let mut is_min = true;
        for (j, b) in members.iter().enumerate() {
            if i != j
                && componentwise_minor(b, h, DEFAULT_PATTERN_CAP)?
                && !componentwise_minor(h, b, DEFAULT_PATTERN_CAP)?
            {
                is_min = false;
                break;
            }
        }
        if is_min {
            minimal.push(i);
        }
    }
    let mut best: Option<(usize, usize, Graph)> = None;
    for &i in &minimal {
        for (comp, _) in maximal_components(&members[i])? {
            let s = slb(&comp)?;
            if best.as_ref().is_none_or(|(bs, _, _)| s < *bs) {
                best = Some((s, i, comp));
            }
        }
    }
    let (_, index, h_up) = best.ok_or(Error::EmptyFamily)?;
    let h = members[index].clone();
    let mut y = Vec::new();
    let mut c = 0;
    for (comp, ids) in h.component_graphs() {
        if are_isomorphic(&comp, &h_up) {
            c += 1;
            y.extend(ids);
        }
    }
    y.sort_unstable();
    Ok(ReductionTarget {
        index,
        h,
        h_up,
        y,
        c,
        minimal,
    })
}
