mod common;

use maxline::{
    are_isomorphic, canonical_form, gen_star, is_line_digraph, line_digraph, phi,
    reconstruct_root, Digraph, DetectorRegistry, StarSpec,
};
use petgraph::graph::DiGraph;
use proptest::prelude::*;

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = common::ordered_pairs(n);
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |mask| {
            let arcs = pairs
                .iter()
                .zip(mask)
                .filter(|(_, keep)| *keep)
                .map(|(&p, _)| p);
            Digraph::from_arcs(n, arcs).unwrap()
        })
    })
}

/// Sparse digraphs, which are far more likely to be line digraphs.
fn sparse_digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::btree_set((0..n, 0..n), 0..=2 * n).prop_map(move |set| {
            Digraph::from_arcs(n, set.into_iter().filter(|(t, h)| t != h)).unwrap()
        })
    })
}

fn with_permutation(max_n: usize) -> impl Strategy<Value = (Digraph, Vec<usize>)> {
    digraph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

fn to_petgraph(g: &Digraph) -> DiGraph<(), ()> {
    let mut p = DiGraph::new();
    let nodes: Vec<_> = g.vertices().map(|_| p.add_node(())).collect();
    for a in g.arcs() {
        p.add_edge(nodes[a.tail], nodes[a.head], ());
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn degree_sums_match_arc_count(g in digraph(8)) {
        let outs: usize = g.vertices().map(|v| g.out_degree(v)).sum();
        let ins: usize = g.vertices().map(|v| g.in_degree(v)).sum();
        prop_assert_eq!(outs, g.arc_count());
        prop_assert_eq!(ins, g.arc_count());
        for v in g.vertices() {
            prop_assert!(g.out_neighbors(v).windows(2).all(|w| w[0] < w[1]));
            prop_assert!(g.in_neighbors(v).windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn transpose_is_an_involution(g in digraph(8)) {
        let t = g.transpose();
        prop_assert_eq!(&t.transpose(), &g);
        for v in g.vertices() {
            let (din, dout) = g.degrees(v).unwrap();
            prop_assert_eq!(t.degrees(v).unwrap(), (dout, din));
        }
        prop_assert_eq!(t.two_circuits(), g.two_circuits());
    }

    #[test]
    fn removals_drop_the_right_arcs(g in digraph(7), pick in any::<prop::sample::Index>()) {
        if g.arc_count() > 0 {
            let a = g.arcs()[pick.index(g.arc_count())];
            prop_assert_eq!(g.remove_arc(a.tail, a.head).unwrap().arc_count(), g.arc_count() - 1);
        }
        if g.vertex_count() > 0 {
            let v = pick.index(g.vertex_count());
            let (din, dout) = g.degrees(v).unwrap();
            let h = g.remove_vertex(v).unwrap();
            prop_assert_eq!(h.arc_count(), g.arc_count() - din - dout);
        }
    }

    #[test]
    fn phi_counts_line_digraph_arcs(g in digraph(8)) {
        prop_assert_eq!(phi(&g), line_digraph(&g).graph.arc_count() as u64);
        prop_assert_eq!(phi(&g.transpose()), phi(&g));
    }

    #[test]
    fn phi_is_additive(a in digraph(6), b in digraph(6)) {
        prop_assert_eq!(phi(&a.disjoint_union(&b)), phi(&a) + phi(&b));
    }

    #[test]
    fn line_commutes_with_transpose(g in digraph(6)) {
        let left = line_digraph(&g.transpose()).graph;
        let right = line_digraph(&g).graph.transpose();
        prop_assert!(are_isomorphic(&left, &right));
    }

    #[test]
    fn isomorphism_routes_agree((g, perm) in with_permutation(7), h in digraph(7)) {
        let relabeled = g.relabel(&perm).unwrap();
        prop_assert!(are_isomorphic(&g, &relabeled));
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&relabeled).unwrap());

        let by_form = canonical_form(&g).unwrap() == canonical_form(&h).unwrap();
        prop_assert_eq!(by_form, are_isomorphic(&g, &h));
        // petgraph's VF2 sees isolated vertices, so compare stripped graphs
        let (gs, hs) = (g.without_isolated(), h.without_isolated());
        let vf2 = petgraph::algo::is_isomorphic(&to_petgraph(&gs), &to_petgraph(&hs));
        prop_assert_eq!(by_form, vf2);
    }

    #[test]
    fn canonical_representative_is_isomorphic(g in digraph(8)) {
        let form = canonical_form(&g).unwrap();
        prop_assert!(are_isomorphic(&form.to_digraph(), &g));
        prop_assert_eq!(canonical_form(&form.to_digraph()).unwrap(), form);
    }

    #[test]
    fn witnesses_are_sound(g in digraph(6)) {
        let registry = DetectorRegistry::default();
        for name in registry.names() {
            if let Some(w) = registry.get(name).unwrap().find(&g) {
                prop_assert!(w.validate(&g), "{} on {:?}", w, g);
            }
        }
        let verdict = is_line_digraph(&g);
        prop_assert_eq!(verdict.is_line, verdict.witness.is_none());
    }

    #[test]
    fn recognition_is_closed_under_transpose(g in sparse_digraph(7)) {
        prop_assert_eq!(is_line_digraph(&g).is_line, is_line_digraph(&g.transpose()).is_line);
    }

    #[test]
    fn accepted_digraphs_reconstruct(g in sparse_digraph(7)) {
        match reconstruct_root(&g) {
            Ok(root) => {
                prop_assert!(is_line_digraph(&g).is_line);
                prop_assert!(are_isomorphic(&line_digraph(&root).graph, &g));
                prop_assert_eq!(root.arc_count(), g.vertex_count());
            }
            Err(maxline::Error::NotLineDigraph(w)) => prop_assert!(w.validate(&g)),
            Err(e) => prop_assert!(false, "unexpected error {}", e),
        }
    }

    #[test]
    fn line_digraphs_are_recognized(root in digraph(6)) {
        let l = line_digraph(&root).graph;
        prop_assert!(is_line_digraph(&l).is_line);
        let rebuilt = reconstruct_root(&l).unwrap();
        prop_assert!(are_isomorphic(&line_digraph(&rebuilt).graph, &l));
    }

    #[test]
    fn star_phi_is_bounded(x in 1usize..8, y in 1usize..8, c in 0usize..8) {
        let c = c.min(x.min(y));
        let s = gen_star(StarSpec::new(x, y, c).unwrap()).unwrap();
        prop_assert_eq!(phi(&s), (x * y + c) as u64);
        prop_assert!(phi(&s) <= (x * y + x.min(y)) as u64);
    }
}
