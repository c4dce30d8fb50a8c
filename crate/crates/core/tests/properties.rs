use num_bigint::BigUint;
use proptest::prelude::*;

use pqvol::closed_forms::{nvol_complete, nvol_matching_triangles};
use pqvol::composition::all_compositions;
use pqvol::draconian::{count_draconian, is_draconian, Engine};
use pqvol::ehrhart::{ehrhart_nvol, finite_difference, is_in_dilate, lattice_counts};
use pqvol::graph::{complete_graph, doubling, triangle_extend, Edge, Graph};

fn graph_strategy(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
            .collect();
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let chosen: Vec<_> = pairs
                .iter()
                .zip(&keep)
                .filter(|(_, &k)| k)
                .map(|(&p, _)| p)
                .collect();
            Graph::from_pairs(n, &chosen).unwrap()
        })
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn count_is_relabeling_invariant((g, perm) in graph_strategy(1, 7).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), permutation(n))
    })) {
        let relabeled = g.relabel(&perm).unwrap();
        prop_assert_eq!(count_draconian(&g).count, count_draconian(&relabeled).count);
    }

    #[test]
    fn membership_follows_relabeling((g, perm) in graph_strategy(1, 6).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), permutation(n))
    })) {
        // c is draconian for g iff c∘π⁻¹ is draconian for π(g).
        let d = doubling(&g);
        let dp = doubling(&g.relabel(&perm).unwrap());
        for c in all_compositions(g.n()) {
            let mut moved = vec![0u32; g.n()];
            for (i, &x) in c.entries().iter().enumerate() {
                moved[perm[i] - 1] = x;
            }
            let moved = pqvol::CompositionSequence::new(moved).unwrap();
            prop_assert_eq!(
                is_draconian(&d, &c, Engine::Auto).unwrap(),
                is_draconian(&dp, &moved, Engine::Auto).unwrap()
            );
        }
    }

    #[test]
    fn adding_an_edge_never_lowers_the_count(g in graph_strategy(2, 6), a in 1usize..=6, b in 1usize..=6) {
        let n = g.n();
        let (a, b) = ((a - 1) % n + 1, (b - 1) % n + 1);
        prop_assume!(a != b && !g.has_edge(a, b));
        let bigger = g.with_edge(Edge::new(a, b).unwrap()).unwrap();
        prop_assert!(count_draconian(&bigger).count >= count_draconian(&g).count);
    }
}

#[test]
fn complete_graphs_match_closed_form() {
    for n in 1..=8 {
        assert_eq!(
            count_draconian(&complete_graph(n).unwrap()).count,
            nvol_complete(n as u64).unwrap()
        );
    }
}

#[test]
fn triangle_on_one_edge_triples() {
    // Any single triangle extension of K_n triples the count.
    for n in 2..=6 {
        let g = triangle_extend(&complete_graph(n).unwrap(), Edge::new(1, 2).unwrap()).unwrap();
        assert_eq!(
            count_draconian(&g).count,
            nvol_matching_triangles(n as u64, 1).unwrap()
        );
    }
}

#[test]
fn extra_ehrhart_difference_vanishes() {
    // One sample past the degree: the (d+1)-th difference of a degree-d
    // polynomial is zero.
    for g in [
        complete_graph(3).unwrap(),
        Graph::from_pairs(3, &[(1, 2), (2, 3)]).unwrap(),
        Graph::from_pairs(4, &[(1, 2), (2, 3), (3, 4)]).unwrap(),
    ] {
        let table = ehrhart_nvol(&g).unwrap();
        let d = table.dimension;
        let counts = lattice_counts(&g, d as u32 + 1);
        assert_eq!(counts[..=d], table.counts[..]);
        assert_eq!(finite_difference(&counts, d + 1), 0, "{}", g.descriptor());
        assert_eq!(BigUint::from(table.nvol), count_draconian(&g).count);
    }
}

#[test]
fn dilates_are_nested_after_shifting() {
    // z ∈ tP implies z + (e_i, e_i) ∈ (t+1)P for every i.
    let g = Graph::from_pairs(3, &[(1, 2), (2, 3)]).unwrap();
    for t in 0..=3u32 {
        for a in pqvol::composition::WeakCompositions::new(t, 3) {
            for b in pqvol::composition::WeakCompositions::new(t, 3) {
                let z: Vec<i64> = a.iter().chain(&b).map(|&x| x as i64).collect();
                if !is_in_dilate(&g, t as u64, &z).unwrap() {
                    continue;
                }
                for i in 0..3 {
                    let mut w = z.clone();
                    w[i] += 1;
                    w[3 + i] += 1;
                    assert!(is_in_dilate(&g, t as u64 + 1, &w).unwrap(), "{z:?} + e_{i}");
                }
            }
        }
    }
}
