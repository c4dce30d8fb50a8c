//! The engines against a direct reading of the definition: every nonempty
//! index subset, neighborhoods computed from the edge list.

use num_bigint::BigUint;
use proptest::prelude::*;

use pqvol::composition::all_compositions;
use pqvol::draconian::{
    count_draconian, count_raw, enumerate_draconian_with, is_draconian_subset_with, Engine,
    EnumOptions, SubsetMode,
};
use pqvol::graph::{complete_graph, delete_cycle, delete_path, doubling, Graph};

fn naive_is_draconian(g: &Graph, c: &[u32]) -> bool {
    let n = g.n();
    (1u32..1 << n).all(|mask| {
        let mut sum = 0u32;
        let mut covered = vec![false; n];
        for i in 0..n {
            if mask >> i & 1 == 1 {
                sum += c[i];
                covered[i] = true;
                for j in g.neighbors(i + 1) {
                    covered[j - 1] = true;
                }
            }
        }
        (sum as usize) < covered.iter().filter(|&&x| x).count()
    })
}

fn naive_count(g: &Graph) -> u64 {
    all_compositions(g.n())
        .filter(|c| naive_is_draconian(g, c.entries()))
        .count() as u64
}

fn graph_strategy(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
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

#[test]
fn frozen_family_counts() {
    // Values from the naive oracle, frozen.
    let cases: Vec<(Graph, u64)> = vec![
        (complete_graph(1).unwrap(), 1),
        (complete_graph(4).unwrap(), 20),
        (delete_path(4, 2).unwrap(), 12),
        (delete_path(5, 2).unwrap(), 60),
        (delete_cycle(5, 3).unwrap(), 52),
        (delete_cycle(5, 4).unwrap(), 36),
        (delete_cycle(5, 5).unwrap(), 40),
        (delete_cycle(6, 4).unwrap(), 200),
        (Graph::from_pairs(4, &[(1, 2), (2, 3), (3, 4)]).unwrap(), 8),
        (
            Graph::from_pairs(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]).unwrap(),
            16,
        ),
    ];
    for (g, want) in cases {
        assert_eq!(naive_count(&g), want, "{}", g.descriptor());
        assert_eq!(
            count_draconian(&g).count,
            BigUint::from(want),
            "{}",
            g.descriptor()
        );
    }
}

#[test]
fn engines_agree_on_small_graphs() {
    for g in [
        delete_cycle(6, 5).unwrap(),
        complete_graph(6).unwrap(),
        delete_path(6, 3).unwrap(),
    ] {
        let d = doubling(&g);
        let subset = count_raw(
            &d,
            EnumOptions {
                engine: Engine::Subset,
                jobs: 1,
            },
        );
        let flow = count_raw(
            &d,
            EnumOptions {
                engine: Engine::Flow,
                jobs: 1,
            },
        );
        assert_eq!(subset, flow, "{}", g.descriptor());
        assert_eq!(subset, naive_count(&g), "{}", g.descriptor());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn enumeration_matches_naive(g in graph_strategy(6)) {
        let d = doubling(&g);
        let expected: Vec<Vec<u32>> = all_compositions(g.n())
            .filter(|c| naive_is_draconian(&g, c.entries()))
            .map(|c| c.into_entries())
            .collect();
        for engine in [Engine::Subset, Engine::Flow] {
            for jobs in [1, 3] {
                let got: Vec<Vec<u32>> = enumerate_draconian_with(&d, EnumOptions { engine, jobs })
                    .into_iter()
                    .map(|c| c.into_entries())
                    .collect();
                prop_assert_eq!(&got, &expected);
            }
        }
    }

    #[test]
    fn support_reduction_is_exact(g in graph_strategy(6)) {
        let d = doubling(&g);
        for c in all_compositions(g.n()) {
            prop_assert_eq!(
                is_draconian_subset_with(&d, &c, SubsetMode::Support).unwrap(),
                is_draconian_subset_with(&d, &c, SubsetMode::Full).unwrap()
            );
        }
    }
}
