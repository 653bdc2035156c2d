//! Walk enumeration and cycle decomposition properties.

mod common;

use std::collections::BTreeMap;

use linfix::engine::{matrix_power, matrix_power_sum, Matrix};
use linfix::semiring::{Semiring, TropP, Tropical};
use linfix::walk::{
    cycle_decompose, eulerian_walk_check, phi, reassemble, walk_sum_exact, walk_sum_upto,
    DecomposeOptions, EdgeMultiset, Walk, WalkError, DEFAULT_BUDGET,
};
use linfix::SeededRng;
use proptest::prelude::*;
use rand::SeedableRng;

fn walk() -> impl Strategy<Value = (usize, Vec<usize>)> {
    (1usize..=5).prop_flat_map(|n| (Just(n), prop::collection::vec(0..n, 1..=13)))
}

fn multiset(w: &Walk) -> EdgeMultiset {
    let mut m = BTreeMap::new();
    for e in w.edges() {
        *m.entry(e).or_insert(0) += 1;
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn decomposition_preserves_edges_and_phi((n, vs) in walk(), seed in any::<u64>(), shuffle in any::<bool>()) {
        let w = Walk::new(vs);
        let opts = DecomposeOptions { seed: shuffle.then_some(seed), debug: true };
        let dec = cycle_decompose(&w, n, opts).unwrap();
        prop_assert_eq!(dec.edge_multiset(), multiset(&w));
        prop_assert_eq!((dec.start(), dec.end()), (w.start(), w.end()));
        prop_assert!(dec.path.is_simple_path());
        for (c, z) in &dec.cycles {
            prop_assert!(c.is_simple_cycle());
            prop_assert!(*z >= 1);
        }
        let s = TropP::new(2, None);
        let mut rng = SeededRng::seed_from_u64(seed);
        let a = common::random_matrix(&s, n, 1.0, &mut rng);
        prop_assert_eq!(dec.phi(&s, &a), phi(&s, &a, &w));
    }

    #[test]
    fn loop_free_walks_have_few_cycles((n, vs) in walk()) {
        let w = Walk::new(vs);
        prop_assume!(w.edges().all(|(u, v)| u != v));
        let dec = cycle_decompose(&w, n, DecomposeOptions::default()).unwrap();
        prop_assert!(dec.ell() <= n * n - n);
    }

    #[test]
    fn reassembly_round_trips((n, vs) in walk(), drops in prop::collection::vec(0usize..3, 0..4)) {
        let w = Walk::new(vs);
        let dec = cycle_decompose(&w, n, DecomposeOptions::default()).unwrap();
        let back = reassemble(&dec, &[]).unwrap();
        prop_assert_eq!(multiset(&back), multiset(&w));
        prop_assert_eq!((back.start(), back.end()), (w.start(), w.end()));
        let drops: Vec<usize> = drops.into_iter().take(dec.cycles.len()).collect();
        match reassemble(&dec, &drops) {
            Ok(shorter) => {
                let mut want = multiset(&w);
                for (h, d) in drops.iter().enumerate() {
                    for e in dec.cycles[h].0.edges() {
                        *want.get_mut(&e).unwrap() -= d;
                    }
                }
                want.retain(|_, m| *m > 0);
                prop_assert_eq!(multiset(&shorter), want);
                prop_assert!(eulerian_walk_check(&multiset(&shorter), w.start(), w.end()) || shorter.is_empty());
            }
            Err(WalkError::NotReassemblable(_)) => {}
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn walk_sums_are_matrix_powers(seed in any::<u64>(), n in 1usize..=4, h in 0usize..=5) {
        let s = Tropical;
        let mut rng = SeededRng::seed_from_u64(seed);
        let a = common::random_matrix(&s, n, 0.6, &mut rng);
        let power = matrix_power(&s, &a, h);
        let sum = matrix_power_sum(&s, &a, h).value;
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(&walk_sum_exact(&s, &a, i, j, h, DEFAULT_BUDGET).unwrap(), power.get(i, j));
                prop_assert_eq!(&walk_sum_upto(&s, &a, i, j, h, DEFAULT_BUDGET).unwrap(), sum.get(i, j));
            }
        }
    }
}

#[test]
fn self_loops_can_exceed_the_loop_free_count() {
    let w = Walk::new(vec![0, 0, 1, 1, 0, 1]);
    let dec = cycle_decompose(&w, 2, DecomposeOptions::default()).unwrap();
    assert_eq!(dec.ell(), 3);
    assert!(dec.ell() <= 2 * 2);
}

#[test]
fn budget_is_enforced() {
    let s = Tropical;
    let a = Matrix::zeros(&s, 10);
    assert!(matches!(
        walk_sum_exact(&s, &a, 0, 1, 7, 1_000_000),
        Err(WalkError::EnumerationTooLarge { .. })
    ));
    assert_eq!(
        walk_sum_exact(&s, &a, 0, 1, 6, 1_000_000).unwrap(),
        s.zero()
    );
}
