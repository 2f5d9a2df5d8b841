use fdel_core::family::{guard_bound, strip_isolated};
use fdel_core::generate::{all_graphs, random_graph};
use fdel_core::kernel::{brute_force_delete, search_tree_delete};
use fdel_core::matching::{matching_number, max_matching};
use fdel_core::minors::{contains_subgraph, is_type_free, DEFAULT_PATTERN_CAP};
use fdel_core::vc::{min_vertex_cover, reduce_vc};
use fdel_core::{solve, Containment, DeletionInstance, Engine, Family, Graph, SolveOptions};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TYPES: [Containment; 2] = [Containment::Minor, Containment::Subgraph];

fn odd_components_without(g: &Graph, removed: u32) -> usize {
    let keep: Vec<usize> = g.vertices().filter(|&v| removed >> v & 1 == 0).collect();
    let (h, _) = g.induced_subgraph(&keep).unwrap();
    h.connected_components()
        .iter()
        .filter(|c| c.len() % 2 == 1)
        .count()
}

#[test]
fn tutte_berge_formula() {
    for n in 0..=7 {
        for g in all_graphs(n) {
            let best = (0u32..1 << n)
                .map(|u| (n + u.count_ones() as usize - odd_components_without(&g, u)) / 2)
                .min()
                .unwrap();
            assert_eq!(matching_number(&g), best, "{g:?}");
            let m = max_matching(&g);
            let mut used = vec![false; n];
            for &(u, v) in &m {
                assert!(g.has_edge(u, v));
                assert!(!used[u] && !used[v]);
                used[u] = true;
                used[v] = true;
            }
        }
    }
}

#[test]
fn matching_number_decides_cp2_subgraphs() {
    for n in 0..=7 {
        for g in all_graphs(n) {
            let nu = matching_number(&g);
            for c in 1..=3 {
                let free = contains_subgraph(&g, &Graph::path(2).copies(c), DEFAULT_PATTERN_CAP)
                    .unwrap()
                    .is_none();
                assert_eq!(free, nu < c, "{g:?} c={c}");
            }
        }
    }
}

#[test]
fn isolated_vertices_only_matter_below_guard_bound() {
    let f = vec![Graph::from_edges(3, [(0, 1)]).unwrap()];
    let stripped = strip_isolated(&f);
    let bound = guard_bound(&f);
    assert_eq!(bound, 57);
    for n in 0..=7 {
        for g in all_graphs(n) {
            for ty in TYPES {
                let f_free = is_type_free(&g, &f, ty, DEFAULT_PATTERN_CAP).unwrap();
                let fp_free = is_type_free(&g, &stripped, ty, DEFAULT_PATTERN_CAP).unwrap();
                if f_free && !fp_free {
                    assert!(g.n() < bound);
                }
            }
        }
    }
    let big = Graph::edgeless(60);
    assert!(is_type_free(&big, &f, Containment::Minor, DEFAULT_PATTERN_CAP).unwrap());
    assert!(is_type_free(&big, &stripped, Containment::Minor, DEFAULT_PATTERN_CAP).unwrap());
}

/// Smallest `S' ⊆ V - C` with `G[C ∪ S']` not free, searched by size.
fn smallest_extension(
    g: &Graph,
    cover: &[usize],
    family: &[Graph],
    ty: Containment,
) -> Option<usize> {
    let rest: Vec<usize> = g.vertices().filter(|v| !cover.contains(v)).collect();
    let r = rest.len();
    let mut best: Option<usize> = None;
    for mask in 0u32..1 << r {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|b| b <= size) {
            continue;
        }
        let mut set: Vec<usize> = cover.to_vec();
        set.extend((0..r).filter(|&i| mask >> i & 1 == 1).map(|i| rest[i]));
        set.sort_unstable();
        let (h, _) = g.induced_subgraph(&set).unwrap();
        if !is_type_free(&h, family, ty, DEFAULT_PATTERN_CAP).unwrap() {
            best = Some(size);
        }
    }
    best
}

#[test]
fn occurrences_survive_shrinking_the_independent_side() {
    let families = [
        vec![Graph::path(2).copies(2)],
        vec![Graph::path(3)],
        vec![Graph::complete(3)],
        vec![Graph::star(3), Graph::path(2).copies(2)],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut graphs: Vec<Graph> = (1..=5).flat_map(all_graphs).collect();
    for _ in 0..150 {
        graphs.push(random_graph(7, rng.gen_range(0.15..0.5), &mut rng));
    }
    let mut nontrivial = 0;
    for g in &graphs {
        let cover = min_vertex_cover(g).unwrap();
        for fam in &families {
            let bound = fam
                .iter()
                .map(|h| h.n() + cover.len() * (h.max_degree() + 1))
                .max()
                .unwrap();
            for ty in TYPES {
                if is_type_free(g, fam, ty, DEFAULT_PATTERN_CAP).unwrap() {
                    continue;
                }
                let need = smallest_extension(g, &cover, fam, ty).expect("whole graph works");
                assert!(need <= bound, "{g:?} {fam:?} {ty}: {need} > {bound}");
                nontrivial += usize::from(need > 0);
            }
        }
    }
    assert!(nontrivial > 50);
}

fn vc_number(g: &Graph) -> usize {
    (0u32..1 << g.n())
        .filter(|&c| g.edges().all(|(u, v)| (c >> u | c >> v) & 1 == 1))
        .map(u32::count_ones)
        .min()
        .unwrap() as usize
}

#[test]
fn vc_reduction_preserves_answers() {
    for n in 0..=7 {
        for g in all_graphs(n) {
            let tau = vc_number(&g);
            for ell in 0..=n as i64 {
                let red = reduce_vc(&g, ell);
                let after = red.budget >= 0 && vc_number(&red.graph) as i64 <= red.budget;
                assert_eq!(after, tau as i64 <= ell, "{g:?} ell {ell}");
                assert_eq!(red.kept.len(), red.graph.n());
                if red.budget >= 0 {
                    assert_eq!(red.budget, ell - red.forced.len() as i64);
                }
            }
        }
    }
}

#[test]
fn engines_agree_and_witnesses_are_valid() {
    let families = [
        Family::new(vec![Graph::path(2).copies(2)]).unwrap(),
        Family::new(vec![Graph::path(2).copies(2), Graph::complete(3)]).unwrap(),
        Family::new(vec![Graph::path(2).copies(3), Graph::star(3)]).unwrap(),
        Family::new(vec![Graph::from_edges(3, [(0, 1)]).unwrap()]).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..60 {
        let g = random_graph(rng.gen_range(3..=9), rng.gen_range(0.15..0.6), &mut rng);
        for fam in &families {
            for ty in TYPES {
                let ell = rng.gen_range(0..=g.n());
                let inst = DeletionInstance::new(g.clone(), ell, ty, fam.clone());
                let auto = solve(&inst, &SolveOptions::default()).unwrap();
                let brute_opts = SolveOptions {
                    engine: Engine::Brute,
                    ..SolveOptions::default()
                };
                let brute = solve(&inst, &brute_opts).unwrap();
                assert_eq!(auto.answer, brute.answer, "{g:?} {fam:?} {ty} {ell}");
                for out in [&auto, &brute] {
                    if let Some(x) = &out.witness {
                        assert!(x.len() <= ell);
                        let rest = g.remove_vertices(x).0;
                        assert!(is_type_free(&rest, &fam.members, ty, DEFAULT_PATTERN_CAP).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn search_tree_matches_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let hs = [
        vec![Graph::path(3)],
        vec![Graph::complete(3)],
        vec![Graph::cycle(4), Graph::star(3)],
    ];
    for _ in 0..80 {
        let g = random_graph(rng.gen_range(4..=10), rng.gen_range(0.2..0.5), &mut rng);
        for members in &hs {
            for ty in TYPES {
                let best = brute_force_delete(&g, members, ty, g.n(), 16)
                    .unwrap()
                    .unwrap()
                    .len();
                for ell in best.saturating_sub(1)..=best {
                    let st = search_tree_delete(&g, members, ty, ell).unwrap();
                    assert_eq!(st.is_some(), best <= ell);
                }
            }
        }
    }
}
