use proptest::prelude::*;

use trifree::constructions::{
    assemble_general_witness, assemble_triangle_free_witness, WitnessStatus,
};
use trifree::formulas::{f_gen, f_triangle, formula_star, resolve_zd, Status};
use trifree::io::{from_json, graph6_decode, graph6_encode, read_graph, to_json};
use trifree::knapsack::{solve_model2, UtilityTable};
use trifree::matching::{is_factor_critical, matching_number, maximum_matching};
use trifree::verify::verify_membership;
use trifree::Graph;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for v in 1..n {
                for u in 0..v {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn brute_matching(g: &Graph) -> usize {
    fn go(g: &Graph, used: &mut [bool], start: usize) -> usize {
        let Some(u) = (start..g.order()).find(|&u| !used[u]) else {
            return 0;
        };
        used[u] = true;
        let mut best = go(g, used, u + 1);
        for v in g.neighbors(u).collect::<Vec<_>>() {
            if !used[v] {
                used[v] = true;
                best = best.max(1 + go(g, used, u + 1));
                used[v] = false;
            }
        }
        used[u] = false;
        best
    }
    go(g, &mut vec![false; g.order()], 0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trip(g in arb_graph(80)) {
        let s = graph6_encode(&g);
        prop_assert_eq!(graph6_decode(&s).unwrap(), g.clone());
        prop_assert_eq!(read_graph(&format!("{s}\n")).unwrap(), g);
    }

    #[test]
    fn json_round_trip(g in arb_graph(30)) {
        prop_assert_eq!(from_json(&to_json(&g)).unwrap(), g);
    }

    #[test]
    fn graph6_decode_never_panics(bytes in proptest::collection::vec(any::<u8>(), 0..64)) {
        let _ = trifree::io::graph6_decode_bytes(&bytes);
    }

    #[test]
    fn matching_agrees_with_brute_force(g in arb_graph(9)) {
        let m = maximum_matching(&g);
        prop_assert!(m.is_valid_for(&g));
        prop_assert_eq!(m.len(), brute_matching(&g));
    }

    #[test]
    fn factor_critical_graphs_are_odd_and_connected(g in arb_graph(9)) {
        if g.order() > 0 && is_factor_critical(&g) {
            prop_assert!(g.order() % 2 == 1);
            prop_assert!(g.is_connected());
            prop_assert_eq!(2 * matching_number(&g) + 1, g.order());
        }
    }

    #[test]
    fn members_respect_counting_bound(g in arb_graph(12)) {
        if g.is_triangle_free() && g.edge_count() > 0 {
            let d = g.max_degree() as u64;
            let m = matching_number(&g) as u64;
            let r = verify_membership(&g, d, m);
            prop_assert!(r.passes(), "{:?}", r.failures());
        }
    }

    #[test]
    fn isolated_free_members_respect_vertex_bound(g in arb_graph(12)) {
        let h = g.without_isolated();
        if h.order() > 0 {
            let d = h.max_degree() as u64;
            let m = matching_number(&h) as u64;
            prop_assert!(h.order() as u64 <= trifree::oracle::vertex_bound(d, m));
        }
    }

    #[test]
    fn formula_bounds(d in 1u64..40, m in 1u64..200) {
        let lo = d * m;
        let general = f_gen(d, m).unwrap().value.exact().unwrap();
        let tf = f_triangle(d, m, true).unwrap().value;
        prop_assert!(lo <= tf.lo());
        prop_assert!(tf.hi() <= general);
        prop_assert!(general <= (d + 1) * m);
    }

    #[test]
    fn formula_monotone_in_m(d in 1u64..30, m in 1u64..150) {
        let a = f_triangle(d, m, true).unwrap().value;
        let b = f_triangle(d, m + 1, true).unwrap().value;
        prop_assert!(a.lo() <= b.lo() && a.hi() <= b.hi());
    }

    #[test]
    fn interval_contains_every_candidate(d in 7u64..40, m in 1u64..200) {
        let z = resolve_zd(d, false).unwrap();
        let v = f_triangle(d, m, false).unwrap();
        for c in z.lower()..=z.upper() {
            let f = formula_star(d, m, c);
            prop_assert!(v.value.lo() <= f && f <= v.value.hi());
        }
        if z.exact().is_none() && m > d && !trifree::formulas::in_proven_domain(d, m) {
            prop_assert_ne!(v.status, Status::ProvenOptimal);
        }
    }

    #[test]
    fn knapsack_matches_exhaustive(d in 2u64..6, extra in proptest::collection::vec(0u64..6, 1..5), m_over in 0u64..20) {
        let m = d + m_over;
        let table = UtilityTable::proven(d, extra).unwrap();
        let z = table.z();
        fn go(i: u64, left: u64, t: &UtilityTable) -> u64 {
            if i > t.z() {
                return 0;
            }
            (0..=left / i).map(|x| x * t.utility(i).unwrap() + go(i + 1, left - x * i, t)).max().unwrap()
        }
        let s = solve_model2(d, m, &table).unwrap();
        prop_assert_eq!(s.objective, go(d, m, &table));
        let used: u64 = (d..=z).map(|i| i * s.count(i)).sum();
        prop_assert_eq!(used, s.capacity_used);
        prop_assert!(used <= m);
    }

    #[test]
    fn triangle_free_witnesses_certify(d in 1u64..=8, m in 1u64..=30) {
        let w = assemble_triangle_free_witness(d, m, true).unwrap();
        let r = verify_membership(&w.graph, d, m);
        prop_assert!(r.passes(), "{:?}", r.failures());
        prop_assert_eq!(r.edges, w.claimed_edges);
        let f = f_triangle(d, m, true).unwrap().value;
        prop_assert!(w.claimed_edges <= f.hi());
        if w.status != WitnessStatus::LowerBound {
            prop_assert_eq!(Some(w.claimed_edges), f.exact());
        }
        if d <= 6 {
            prop_assert_eq!(w.status, WitnessStatus::ProvenOptimal);
        }
    }

    #[test]
    fn general_witnesses_attain_formula(d in 1u64..=10, m in 1u64..=30) {
        let w = assemble_general_witness(d, m).unwrap();
        prop_assert!(w.graph.max_degree() as u64 <= d);
        prop_assert!(matching_number(&w.graph) as u64 <= m);
        prop_assert_eq!(w.graph.edge_count() as u64, f_gen(d, m).unwrap().value.exact().unwrap());
    }
}
