//! Invariant checks: exhaustive where the space is tiny, randomized
//! (proptest) where it is not.

use std::collections::{BTreeMap, BTreeSet};

use num::rational::BigRational;
use num::{BigInt, BigUint};
use proptest::prelude::*;

use tasep::collapse::{
    collapse_cycle, collapse_cycle_in_order, collapse_line_window, dual_collapse_cycle,
    particle_criterion_cycle, particle_criterion_line, CycleState, Site, SitePair,
};
use tasep::montecarlo::{hitting_time_law, sample_line_window, LineParams};
use tasep::seq::BinarySequence;
use tasep::stationary::{
    binomial, collapse_pushforward, dual_collapse_pushforward, enumerate_three_type_states,
    generator_stationary, mass, CardState,
};
use tasep::tree::{decode, enumerate_trees, BinaryTree};

fn all_sequences(len: usize) -> impl Iterator<Item = BinarySequence> {
    (0..(1u32 << len)).map(move |bits| {
        BinarySequence::new((0..len).map(|i| ((bits >> i) & 1) as u8).collect()).unwrap()
    })
}

fn bits_strategy(max_len: usize) -> impl Strategy<Value = BinarySequence> {
    proptest::collection::vec(0u8..=1, 0..=max_len)
        .prop_map(|bits| BinarySequence::new(bits).unwrap())
}

// ---------------------------------------------------------------------------
// sequences
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn weight_unchanged_by_leading_zero_and_trailing_one(a in bits_strategy(12)) {
        let mut with_zero = vec![0u8];
        with_zero.extend_from_slice(a.bits());
        let mut with_one = a.bits().to_vec();
        with_one.push(1);
        prop_assert_eq!(BinarySequence::new(with_zero).unwrap().weight(), a.weight());
        prop_assert_eq!(BinarySequence::new(with_one).unwrap().weight(), a.weight());
    }

    #[test]
    fn swap_recursion(x in bits_strategy(5), y in bits_strategy(5)) {
        // A = X·01·Y against B = X·10·Y
        let mut a = x.bits().to_vec();
        a.extend([0, 1]);
        a.extend_from_slice(y.bits());
        let mut b = x.bits().to_vec();
        b.extend([1, 0]);
        b.extend_from_slice(y.bits());
        let (a, b) = (
            BinarySequence::new(a).unwrap(),
            BinarySequence::new(b).unwrap(),
        );
        prop_assert_eq!(b.weight(), a.weight() + x.weight() * y.weight());
    }
}

#[test]
fn out_transition_count_is_zero_one_factors_plus_one() {
    for len in 1..=12usize {
        for a in all_sequences(len) {
            let zero_ones = a
                .bits()
                .windows(2)
                .filter(|w| w == &[0, 1])
                .count();
            assert_eq!(a.transitions_out().len(), zero_ones + 1, "at {a}");
        }
    }
}

#[test]
fn domination_is_reflexive_and_antisymmetric() {
    for len in 0..=8usize {
        for a in all_sequences(len) {
            assert!(a.dominates(&a));
            for b in all_sequences(len) {
                if a.dominates(&b) && b.dominates(&a) {
                    assert_eq!(a, b);
                }
            }
        }
    }
}

#[test]
fn domination_is_transitive() {
    for len in 0..=5usize {
        let seqs: Vec<_> = all_sequences(len).collect();
        for a in &seqs {
            for b in &seqs {
                if !a.dominates(b) {
                    continue;
                }
                for c in &seqs {
                    if b.dominates(c) {
                        assert!(a.dominates(c));
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// trees
// ---------------------------------------------------------------------------

#[test]
fn encoding_pair_is_injective() {
    for edges in 0..=9usize {
        let trees = enumerate_trees(edges).unwrap();
        let mut seen: BTreeMap<(String, String), &BinaryTree> = BTreeMap::new();
        for t in &trees {
            let key = (t.f_encode().to_string(), t.g_encode().to_string());
            assert!(seen.insert(key, t).is_none(), "encoding collision at {t}");
        }
    }
}

#[test]
fn decode_is_onto_dominated_pairs() {
    for len in 0..=8usize {
        for a in all_sequences(len) {
            for b in a.enumerate_dominated().unwrap() {
                let t = decode(&a, &b).unwrap();
                assert_eq!(t.f_encode(), a);
                assert_eq!(t.g_encode(), b);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// collapsing
// ---------------------------------------------------------------------------

fn subsets(n: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..(1u32 << n)).map(move |mask| {
        (0..n as i64).filter(|&i| (mask >> i) & 1 == 1).collect()
    })
}

proptest! {
    #[test]
    fn collapse_order_does_not_matter(
        n in 1usize..=10,
        seed_mask in 0u32..1024,
        anti_mask in 0u32..1024,
        shuffle in proptest::collection::vec(0usize..64, 12),
    ) {
        let seeds: Vec<i64> = (0..n as i64).filter(|&i| (seed_mask >> i) & 1 == 1).collect();
        let anti: Vec<i64> = (0..n as i64).filter(|&i| (anti_mask >> i) & 1 == 1).collect();
        prop_assume!(seeds.len() + anti.len() <= n);
        let pair = SitePair::new(seeds.clone(), anti);
        let reference = collapse_cycle(&pair, n).unwrap();
        let mut order = seeds;
        // Fisher-Yates driven by the fuzzed indices
        for (i, &r) in shuffle.iter().enumerate().take(order.len()) {
            let j = i + r % (order.len() - i);
            order.swap(i, j);
        }
        prop_assert_eq!(collapse_cycle_in_order(&pair, n, &order).unwrap(), reference);
    }

    #[test]
    fn line_criterion_matches_procedure(
        half in 0i64..=6,
        seed_mask in 0u32..8192,
        anti_mask in 0u32..8192,
    ) {
        let (lo, hi) = (-half, half);
        let width = (hi - lo + 1) as u32;
        let positions = |mask: u32| (0..width).filter(move |i| (mask >> i) & 1 == 1).map(move |i| lo + i as i64);
        let pair = SitePair::new(positions(seed_mask), positions(anti_mask));
        let state = collapse_line_window(&pair, lo, hi).unwrap();
        for pos in lo..=hi {
            let predicted = particle_criterion_line(pos, &pair, lo, hi).unwrap();
            prop_assert_eq!(predicted, state.site(pos) == Site::Particle, "at {}", pos);
        }
    }
}

#[test]
fn cycle_criterion_conservation_and_anti_positions() {
    for n in 1..=8usize {
        for seeds in subsets(n) {
            for anti in subsets(n) {
                if seeds.len() + anti.len() > n {
                    continue;
                }
                let pair = SitePair::new(seeds.clone(), anti.clone());
                let state = collapse_cycle(&pair, n).unwrap();
                assert_eq!(state.count(Site::Particle), seeds.len());
                assert_eq!(state.count(Site::Anti), anti.len());
                let placed_anti: Vec<i64> = (0..n as i64)
                    .filter(|&i| state.sites()[i as usize] == Site::Anti)
                    .collect();
                assert_eq!(placed_anti, anti);
                for pos in 0..n as i64 {
                    assert_eq!(
                        particle_criterion_cycle(pos, &pair, n).unwrap(),
                        state.sites()[pos as usize] == Site::Particle,
                        "criterion mismatch at {pos} for S={seeds:?}, T={anti:?}, N={n}"
                    );
                }
            }
        }
    }
}

#[test]
fn dual_collapse_same_pushforward() {
    for n in 2..=6usize {
        for a in 1..n {
            for b in 1..=(n - a) {
                assert_eq!(
                    dual_collapse_pushforward(n, a, b).unwrap(),
                    collapse_pushforward(n, a, b).unwrap()
                );
            }
        }
    }
}

#[test]
fn dual_collapse_is_charge_reversed_collapse() {
    // site-reversal plus charge swap conjugates the two procedures exactly,
    // pair by pair
    let n = 7usize;
    for seeds in subsets(n) {
        for anti in subsets(n) {
            if seeds.len() + anti.len() > n {
                continue;
            }
            let reflect = |positions: &[i64]| -> Vec<i64> {
                positions.iter().map(|&p| (n as i64 - 1) - p).collect()
            };
            let primal = collapse_cycle(&SitePair::new(reflect(&anti), reflect(&seeds)), n).unwrap();
            let dual = dual_collapse_cycle(&SitePair::new(seeds.clone(), anti.clone()), n).unwrap();
            assert_eq!(dual, primal.charge_reversed());
        }
    }
}

// ---------------------------------------------------------------------------
// stationary law
// ---------------------------------------------------------------------------

#[test]
fn total_mass_counts_all_pairs() {
    for n in 1..=10usize {
        for a in 0..=n {
            for b in 0..(n - a) {
                let total: BigUint = enumerate_three_type_states(n, a, b)
                    .unwrap()
                    .iter()
                    .map(|x| mass(x).unwrap())
                    .sum();
                assert_eq!(
                    total,
                    binomial(n, a) * binomial(n, b),
                    "mass total off at N={n}, a={a}, b={b}"
                );
            }
        }
    }
}

#[test]
fn generator_law_is_rotation_invariant() {
    for composition in [vec![1, 2, 2], vec![2, 1, 2], vec![1, 1, 1, 1], vec![3, 2]] {
        let dist = generator_stationary(&composition).unwrap();
        for (key, p) in &dist.entries {
            let cards: CardState = key.parse().unwrap();
            let mut rotated = cards.cards().to_vec();
            rotated.rotate_left(1);
            let rotated_key: String = rotated.iter().map(|&c| char::from(b'0' + c)).collect();
            assert_eq!(dist.get(&rotated_key), Some(p), "rotation breaks at {key}");
        }
    }
}

#[test]
fn transitions_commute_with_rotation() {
    // the solver's orbit lumping rests on exactly this equivariance
    for composition in [vec![1, 2, 2], vec![1, 1, 1, 1]] {
        for x in tasep::stationary::multiset_permutations(&composition) {
            let state = CardState::new(x.clone()).unwrap();
            let mut rotated_cards = x.clone();
            rotated_cards.rotate_left(1);
            let rotated = CardState::new(rotated_cards).unwrap();
            let image = |s: &CardState| -> BTreeSet<String> {
                s.transitions()
                    .into_iter()
                    .map(|(_, y)| y.to_string())
                    .collect()
            };
            let rotate_all: BTreeSet<String> = image(&state)
                .iter()
                .map(|w| {
                    let mut bytes = w.as_bytes().to_vec();
                    bytes.rotate_left(1);
                    String::from_utf8(bytes).unwrap()
                })
                .collect();
            assert_eq!(image(&rotated), rotate_all, "equivariance breaks at {state}");
        }
    }
}

#[test]
fn probabilities_are_mass_over_binomials() {
    for n in 2..=8usize {
        for a in 1..n {
            for b in 1..(n - a) {
                let dist = tasep::stationary::formula_distribution(n, a, b).unwrap();
                for (key, p) in &dist.entries {
                    let x: CycleState = key.parse().unwrap();
                    let expected = BigRational::new(
                        BigInt::from(mass(&x).unwrap()),
                        BigInt::from(binomial(n, a) * binomial(n, b)),
                    );
                    assert_eq!(p, &expected);
                    assert_eq!(tasep::stationary::formula_probability(&x).unwrap(), expected);
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// stochastics
// ---------------------------------------------------------------------------

proptest! {
    #[test]
    fn hitting_time_law_is_a_sub_probability(p in 0.0f64..0.95, q in 0.0f64..0.95) {
        let law = hitting_time_law(p, q, 300).unwrap();
        let mut total = 0.0;
        for &mass in &law.probability {
            prop_assert!(mass >= 0.0);
            total += mass;
        }
        prop_assert!(law.residual >= -1e-12);
        prop_assert!((total + law.residual - 1.0).abs() < 1e-9);
    }
}

#[test]
fn line_samples_are_seed_deterministic() {
    let params = LineParams {
        p: 0.3,
        q: 0.2,
        window: 100,
        margin: 64,
        seed: 41,
    };
    assert_eq!(
        sample_line_window(&params, 3).unwrap(),
        sample_line_window(&params, 3).unwrap()
    );
    assert_ne!(
        sample_line_window(&params, 3).unwrap(),
        sample_line_window(&params, 4).unwrap()
    );
}
