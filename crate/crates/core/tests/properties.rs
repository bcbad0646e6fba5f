use proptest::prelude::*;

use rsps_core::construct::{construct, construct_tree};
use rsps_core::graph::random_tree_parents;
use rsps_core::solver::{min_separator, SolveConfig};
use rsps_core::system::is_separating;
use rsps_core::{gen_graph, ColoredPath, Graph, GraphSpec, Mode, Palette, PathSystem};

fn tree(n: usize, seed: u64) -> Graph {
    gen_graph(&GraphSpec::Tree { parents: random_tree_parents(n, seed) }).unwrap()
}

/// Random colored paths between random vertex pairs of a tree.
fn random_system(g: &Graph, ends: &[(usize, usize, u32)], k: u32) -> PathSystem {
    let n = g.n();
    let paths = ends
        .iter()
        .filter_map(|&(a, b, c)| {
            let (a, b) = (a % n, b % n);
            (a != b).then(|| ColoredPath::new(g.tree_path(a, b), c % k))
        })
        .collect();
    PathSystem { k: Palette::Finite(k), paths }
}

fn arb_system() -> impl Strategy<Value = (Graph, PathSystem)> {
    (3usize..12, any::<u64>(), 2u32..5, prop::collection::vec((0usize..64, 0usize..64, 0u32..8), 0..30))
        .prop_map(|(n, seed, k, ends)| {
            let g = tree(n, seed);
            let s = random_system(&g, &ends, k);
            (g, s)
        })
}

fn uncolored(s: &PathSystem) -> PathSystem {
    PathSystem { k: Palette::Infinite, paths: s.paths.iter().map(|p| ColoredPath::new(p.vertices.clone(), 0)).collect() }
}

/// A rainbow system from a construction on a random tree.
fn arb_constructed() -> impl Strategy<Value = (Graph, PathSystem, u32)> {
    (2usize..40, any::<u64>(), 2u32..6).prop_map(|(n, seed, k)| {
        let c = construct_tree(&tree(n, seed), k).unwrap();
        (c.graph, c.system, k)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn strong_implies_weak((g, s) in arb_system()) {
        if is_separating(&g, &s, Mode::Strong) {
            prop_assert!(is_separating(&g, &s, Mode::Weak));
        }
    }

    #[test]
    fn rainbow_implies_strong_without_colors((g, s) in arb_system()) {
        if is_separating(&g, &s, Mode::Rainbow) {
            prop_assert!(is_separating(&g, &uncolored(&s), Mode::Strong));
        }
    }

    #[test]
    fn constructed_rainbow_is_strong((g, s, _k) in arb_constructed()) {
        prop_assert!(is_separating(&g, &s, Mode::Rainbow));
        prop_assert!(is_separating(&g, &uncolored(&s), Mode::Strong));
    }

    #[test]
    fn dropping_a_color_class_leaves_a_weak_system((g, s, k) in arb_constructed(), c in 0u32..6) {
        prop_assert!(is_separating(&g, &s.without_color(c % k), Mode::Weak));
    }

    #[test]
    fn at_most_one_mono_edge_per_color((g, s, _k) in arb_constructed()) {
        prop_assert!(s.mono_budget_ok(&g).unwrap());
    }

    #[test]
    fn class_constructions_respect_mono_budget(
        spec in prop_oneof![
            (4usize..60).prop_map(|n| GraphSpec::Star { n }),
            prop::collection::vec(1usize..8, 3..8).prop_map(|legs| GraphSpec::Spider { legs }),
            (3usize..80).prop_map(|n| GraphSpec::Path { n }),
        ],
        k in 2u32..6,
    ) {
        let c = construct(&spec, Palette::Finite(k)).unwrap();
        prop_assert!(is_separating(&c.graph, &c.system, Mode::Rainbow));
        prop_assert!(c.system.mono_budget_ok(&c.graph).unwrap());
    }

    #[test]
    fn solved_rainbow_sits_between_weak_and_sum(
        spec in prop_oneof![
            (3usize..8, any::<u64>()).prop_map(|(n, seed)| GraphSpec::Tree { parents: random_tree_parents(n, seed) }),
            (3usize..7).prop_map(|n| GraphSpec::Cycle { n }),
        ],
        k in 2u32..4,
    ) {
        let g = gen_graph(&spec).unwrap();
        let size = |cfg: SolveConfig| {
            let c = min_separator(&g, &cfg).unwrap();
            assert!(c.optimal);
            c.size as u64
        };
        let w = size(SolveConfig::weak());
        let st = size(SolveConfig::strong());
        let ck = size(SolveConfig::rainbow(k));
        let k = k as u64;
        prop_assert!((k - 1) * ck >= k * w, "c_k={ck} wsp={w}");
        prop_assert!(ck <= w + st, "c_k={ck} wsp={w} ssp={st}");
    }

    #[test]
    fn solver_witness_minus_a_color_is_weak(n in 3usize..8, seed in any::<u64>(), k in 2u32..4, c in 0u32..3) {
        let g = tree(n, seed);
        let cert = min_separator(&g, &SolveConfig::rainbow(k)).unwrap();
        prop_assert!(is_separating(&g, &cert.witness, Mode::Rainbow));
        prop_assert!(is_separating(&g, &cert.witness.without_color(c % k), Mode::Weak));
    }
}
