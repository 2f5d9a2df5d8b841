use fdel_core::format::{parse_cnf, parse_graph, write_cnf, write_graph, CnfFormula, Literal};
use fdel_core::kernel::search_tree_delete;
use fdel_core::minors::{disjoint_packing_at_least, is_type_free};
use fdel_core::reduction::{build_instance_connected, build_instance_family};
use fdel_core::structure::treewidth_exact;
use fdel_core::{Containment, Family, Graph};
use proptest::prelude::*;

fn corpus() -> Vec<CnfFormula> {
    let l = |v: i64| {
        if v > 0 {
            Literal::pos(v as usize)
        } else {
            Literal::neg((-v) as usize)
        }
    };
    let raw: Vec<(usize, Vec<Vec<i64>>)> = vec![
        (1, vec![vec![1]]),
        (1, vec![vec![1], vec![-1]]),
        (1, vec![vec![1, -1]]),
        (2, vec![vec![1, 2]]),
        (2, vec![vec![1, 2], vec![-1, -2]]),
        (2, vec![vec![1], vec![-1, 2]]),
        (2, vec![vec![-1, 2], vec![1, -2]]),
    ];
    raw.into_iter()
        .map(|(k, cls)| {
            CnfFormula::new(
                k,
                cls.into_iter()
                    .map(|c| c.into_iter().map(l).collect())
                    .collect(),
            )
            .unwrap()
        })
        .collect()
}

#[test]
fn modulator_and_packing() {
    for h in [Graph::path(3), Graph::complete(3), Graph::cycle(4)] {
        let tw_h = treewidth_exact(&h, 16).unwrap();
        for phi in corpus() {
            let art = build_instance_connected(&h, &phi).unwrap();
            let (rest, _) = art.graph.remove_vertices(&art.modulator);
            assert!(treewidth_exact(&rest, 16).unwrap() <= tw_h);
            assert!(disjoint_packing_at_least(&art.graph, &h, art.ell, 16).unwrap());
        }
    }
}

/// Satisfiable formulas: per-copy optimal solutions of `G'` lift to a
/// solution of the family instance of size at most `ℓ`.
#[test]
fn family_instances_lift_copy_solutions() {
    let fam = Family::new(vec![Graph::complete(3).copies(2)]).unwrap();
    let k3 = Graph::complete(3);
    for phi in corpus() {
        let Some(_) = phi.brute_force_sat() else {
            continue;
        };
        let art = build_instance_family(&fam, &phi).unwrap();
        let part = art.family.as_ref().unwrap();
        assert_eq!(part.c, 2);
        assert_eq!(art.ell, 3 * part.ell_prime);
        let inner = build_instance_connected(&k3, &phi).unwrap();
        let x1 = search_tree_delete(
            &inner.graph,
            std::slice::from_ref(&k3),
            Containment::Minor,
            inner.ell,
        )
        .unwrap()
        .expect("satisfiable");
        let x: Vec<usize> = part
            .copy_offsets
            .iter()
            .flat_map(|&off| x1.iter().map(move |&v| v + off))
            .collect();
        assert!(x.len() <= art.ell);
        let (rest, _) = art.graph.remove_vertices(&x);
        assert!(
            is_type_free(&rest, &fam.members, Containment::Minor, 12).unwrap(),
            "{phi:?}"
        );
        let (rest, _) = art.graph.remove_vertices(&art.modulator);
        assert!(treewidth_exact(&rest, 16).unwrap() <= 2);
    }
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let mut edges = Vec::new();
                let mut it = bits.into_iter();
                for v in 1..n {
                    for u in 0..v {
                        if it.next().unwrap() {
                            edges.push((u, v));
                        }
                    }
                }
                Graph::from_edges(n, edges).unwrap()
            },
        )
    })
}

proptest! {
    #[test]
    fn graph_text_round_trip(g in arb_graph(12)) {
        let back = parse_graph(&write_graph(&g)).unwrap();
        prop_assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
        prop_assert_eq!(back.n(), g.n());
    }

    #[test]
    fn identify_agrees_with_neighbourhood_union(g in arb_graph(9), a in 0usize..9, b in 0usize..9) {
        prop_assume!(a < g.n() && b < g.n() && a != b);
        let (h, map) = g.identify(a, b).unwrap();
        prop_assert_eq!(h.n(), g.n() - 1);
        prop_assert_eq!(map[a], map[b]);
        for (u, v) in g.edges() {
            if map[u] != map[v] {
                prop_assert!(h.has_edge(map[u], map[v]));
            }
        }
        // every new edge comes from an old one
        for (x, y) in h.edges() {
            let from_old = g
                .edges()
                .any(|(u, v)| (map[u] == x && map[v] == y) || (map[u] == y && map[v] == x));
            prop_assert!(from_old);
        }
        // deleting the merged vertex equals deleting both originals
        let (hd, _) = h.remove_vertices(&[map[a]]);
        let (gd, _) = g.remove_vertices(&[a, b]);
        prop_assert_eq!(hd.edges().collect::<Vec<_>>(), gd.edges().collect::<Vec<_>>());
    }

    #[test]
    fn induced_subgraph_keeps_exactly_inner_edges(g in arb_graph(10), mask in any::<u16>()) {
        let set: Vec<usize> = g.vertices().filter(|&v| mask >> v & 1 == 1).collect();
        let (h, kept) = g.induced_subgraph(&set).unwrap();
        prop_assert_eq!(&kept, &set);
        let inner = g.edges().filter(|&(u, v)| set.contains(&u) && set.contains(&v)).count();
        prop_assert_eq!(h.m(), inner);
        for (x, y) in h.edges() {
            prop_assert!(g.has_edge(kept[x], kept[y]));
        }
    }

    #[test]
    fn cnf_round_trip(k in 1usize..5, clauses in proptest::collection::vec(
        proptest::collection::vec((1usize..5, any::<bool>()), 1..4), 1..5)) {
        let clauses: Vec<Vec<Literal>> = clauses
            .into_iter()
            .map(|c| c.into_iter().map(|(v, p)| {
                let v = (v - 1) % k + 1;
                if p { Literal::pos(v) } else { Literal::neg(v) }
            }).collect())
            .collect();
        if let Ok(phi) = CnfFormula::new(k, clauses) {
            let back = parse_cnf(&write_cnf(&phi)).unwrap();
            prop_assert_eq!(back, phi);
        }
    }
}
