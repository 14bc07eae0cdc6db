//! Acceptance gate: one test per criterion, each printing a single
//! PASS/FAIL line (visible with `--nocapture`). Everything is exact or runs
//! with a fixed seed, so the suite is deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num::rational::BigRational;
use num::{BigInt, BigUint, One, Zero};

use tasep::collapse::{CycleState, Site};
use tasep::montecarlo::{
    self, factoring_check, gap_law_distance, hitting_time_law, sample_collapsed_uniform,
    simulate_chain, LineParams,
};
use tasep::seq::BinarySequence;
use tasep::stationary::{
    binomial, check_conjectures, collapse_pushforward, compositions_up_to, formula_distribution,
    generator_stationary, generator_stationary_three_type, mass, mass_derivative,
    naive_multitype_candidates, position_marginal, CardState,
};
use tasep::tree::{decode, enumerate_trees};

const SEED: u64 = 20_260_825;

fn report(criterion: &str, started: Instant) {
    println!("PASS {criterion} ({:.1}s)", started.elapsed().as_secs_f64());
}

fn all_sequences(len: usize) -> impl Iterator<Item = BinarySequence> {
    (0..(1u32 << len)).map(move |bits| {
        BinarySequence::new((0..len).map(|i| ((bits >> i) & 1) as u8).collect()).unwrap()
    })
}

fn seq(text: &str) -> BinarySequence {
    text.parse().unwrap()
}

#[test]
fn criterion_01_worked_example_constants() {
    let t = Instant::now();
    assert_eq!(seq("1010").weight(), 5u32.into());
    assert_eq!(seq("0101").weight(), 2u32.into());
    assert_eq!(seq("10100").weight(), 9u32.into());

    let a = seq("1011010");
    assert_eq!(a.weight(), 23u32.into());
    let terms = a.weight_identity_terms().unwrap();
    assert_eq!(terms.drop_last_zero.as_ref().unwrap().weight(), 7u32.into());
    assert_eq!(terms.drop_first_one.as_ref().unwrap().weight(), 9u32.into());
    let split_weights: Vec<(BigUint, BigUint)> = terms
        .splits
        .iter()
        .map(|(x, y)| (x.weight(), y.weight()))
        .collect();
    assert_eq!(
        split_weights,
        vec![
            (1u32.into(), 5u32.into()),
            (2u32.into(), 1u32.into()),
        ]
    );

    let x: CycleState = "*10**10100*0101".parse().unwrap();
    assert_eq!(mass(&x).unwrap(), 36u32.into());
    let normalizer = binomial(15, 5) * binomial(15, 6);
    assert_eq!(normalizer, (3003u64 * 5005).into());
    let p = BigRational::new(BigInt::from(36), BigInt::from(normalizer));
    assert_eq!(tasep::stationary::formula_probability(&x).unwrap(), p);
    report("criterion 1: worked-example constants", t);
}

#[test]
fn criterion_02_weight_oracle_exhaustive() {
    let t = Instant::now();
    for len in 0..=12usize {
        for a in all_sequences(len) {
            let listed = a.enumerate_dominated().unwrap();
            assert_eq!(
                a.weight(),
                BigUint::from(listed.len()),
                "weight mismatch at {a}"
            );
            let distinct: BTreeSet<&BinarySequence> = listed.iter().collect();
            assert_eq!(distinct.len(), listed.len());
        }
    }
    report("criterion 2: DP weight = |dominated set|, length <= 12", t);
}

#[test]
fn criterion_03_weight_recursion() {
    let t = Instant::now();
    for len in 1..=14usize {
        for a in all_sequences(len) {
            assert_eq!(
                a.weight_identity_terms().unwrap().total(),
                a.weight(),
                "recursion fails at {a}"
            );
        }
    }
    report("criterion 3: weight recursion, length <= 14", t);
}

#[test]
fn criterion_04_tree_bijection() {
    let t = Instant::now();
    for edges in 0..=9usize {
        let trees = enumerate_trees(edges).unwrap();
        let mut counts: BTreeMap<String, u64> = BTreeMap::new();
        for tree in &trees {
            let (a, b) = (tree.f_encode(), tree.g_encode());
            assert_eq!(&decode(&a, &b).unwrap(), tree);
            *counts.entry(a.to_string()).or_insert(0) += 1;
        }
        for a in all_sequences(edges) {
            assert_eq!(
                counts.get(&a.to_string()).copied().unwrap_or(0),
                u64::try_from(a.weight()).unwrap(),
                "tree count mismatch at {a}"
            );
        }
    }
    report("criterion 4: bijection round-trip + tree counts, <= 9 edges", t);
}

#[test]
fn criterion_05_formula_vs_generator_vs_pushforward() {
    let t = Instant::now();
    for n in 2..=8usize {
        for a in 1..n {
            for b in 1..=(n - a) {
                let formula = formula_distribution(n, a, b).unwrap();
                assert_eq!(formula.total(), BigRational::one());
                assert_eq!(
                    formula,
                    generator_stationary_three_type(n, a, b).unwrap(),
                    "generator disagrees at N={n}, a={a}, b={b}"
                );
                if n <= 7 {
                    assert_eq!(
                        formula,
                        collapse_pushforward(n, a, b).unwrap(),
                        "pushforward disagrees at N={n}, a={a}, b={b}"
                    );
                }
            }
        }
    }
    report("criterion 5: formula = generator (N <= 8) = pushforward (N <= 7)", t);
}

#[test]
fn criterion_06_stationarity_machinery() {
    let t = Instant::now();
    for n in 1..=10usize {
        for a in 0..=n {
            for b in 0..(n - a) {
                for x in tasep::stationary::enumerate_three_type_states(n, a, b).unwrap() {
                    assert!(
                        mass_derivative(&x).unwrap().is_zero(),
                        "nonzero mass flow at {x}"
                    );
                }
            }
        }
    }
    for len in 1..=12usize {
        for a in all_sequences(len) {
            assert!(a.flow_balanced(), "flow imbalance at {a}");
        }
    }
    report("criterion 6: mass derivative = 0 (N <= 10), flow balance (length <= 12)", t);
}

#[test]
fn criterion_07_minimum_probability() {
    let t = Instant::now();
    for n in 2..=10usize {
        for a in 1..n {
            for b in 1..(n - a) {
                let dist = formula_distribution(n, a, b).unwrap();
                let (min, min_states) = dist.minimum().unwrap();
                let predicted = BigRational::new(
                    BigInt::one(),
                    BigInt::from(binomial(n, a) * binomial(n, b)),
                );
                assert_eq!(min, predicted, "minimum off at N={n}, a={a}, b={b}");

                let word: String = "1".repeat(a) + &"*".repeat(n - a - b) + &"0".repeat(b);
                let shifts: BTreeSet<String> = (0..n)
                    .map(|s| {
                        word.chars()
                            .cycle()
                            .skip(s)
                            .take(n)
                            .collect::<String>()
                    })
                    .collect();
                // ties beyond the shifts are real (e.g. *0*1 at N = 4), so
                // the shifts are required to attain the minimum, not to
                // exhaust it
                let minimizers: BTreeSet<String> = min_states.into_iter().collect();
                assert!(
                    shifts.is_subset(&minimizers),
                    "shifts not minimal at N={n}, a={a}, b={b}"
                );
                assert!(dist.entries.values().all(|p| (p / &min).is_integer()));
            }
        }
    }
    report("criterion 7: minimum = 1/(C(N,a)C(N,b)) at the N shifts, N <= 10", t);
}

#[test]
fn criterion_08_uniform_marginals() {
    let t = Instant::now();
    for n in 2..=8usize {
        for a in 0..=n {
            for b in 0..=(n - a) {
                let dist = formula_distribution(n, a, b).unwrap();
                for (kind, k) in [(Site::Particle, a), (Site::Anti, b)] {
                    let marginal = position_marginal(&dist, kind).unwrap();
                    assert_eq!(marginal.len(), usize::try_from(binomial(n, k)).unwrap());
                    let values: BTreeSet<&BigRational> = marginal.values().collect();
                    assert_eq!(values.len(), 1, "non-uniform at N={n}, a={a}, b={b}");
                }
            }
        }
    }
    report("criterion 8: particle and anti marginals uniform, N <= 8", t);
}

#[test]
fn criterion_09_monte_carlo_consistency() {
    let t = Instant::now();
    let exact6 = formula_distribution(6, 2, 2).unwrap();
    let initial = tasep::stationary::enumerate_three_type_states(6, 2, 2).unwrap()[0].to_cards();
    let chain = simulate_chain(&initial, 10_000_000, SEED);
    let mut symbols = montecarlo::Tally::default();
    for (key, &count) in &chain.counts {
        let cards: CardState = key.parse().unwrap();
        let word = CycleState::from_cards(&cards).unwrap().to_string();
        *symbols.counts.entry(word).or_insert(0) += count;
        symbols.total += count;
    }
    let tv_chain = symbols.total_variation(&exact6);
    assert!(tv_chain < 0.02, "chain TV {tv_chain}");

    let exact8 = formula_distribution(8, 2, 2).unwrap();
    let tv_sample = sample_collapsed_uniform(8, 2, 2, 1_000_000, SEED)
        .unwrap()
        .total_variation(&exact8);
    assert!(tv_sample < 0.02, "sampling TV {tv_sample}");
    report("criterion 9: Monte Carlo within TV 0.02 of the exact law", t);
}

#[test]
fn criterion_10_line_window_statistics() {
    let t = Instant::now();
    let (p, q) = (0.3, 0.2);
    let params = LineParams {
        p,
        q,
        window: 5000,
        margin: 512,
        seed: SEED,
    };
    let samples = 100;
    let stats = montecarlo::window_statistics(&params, samples).unwrap();
    let sigma = |rho: f64| (rho * (1.0 - rho) / stats.sites as f64).sqrt();
    assert!((stats.particle_density() - p).abs() < 3.0 * sigma(p));
    assert!((stats.anti_density() - q).abs() < 3.0 * sigma(q));
    assert!((stats.empty_density() - (1.0 - p - q)).abs() < 3.0 * sigma(1.0 - p - q));
    let pair_sigma = (p * p * (1.0 - p * p) / stats.adjacent_pairs as f64).sqrt();
    assert!((stats.pair_correlation() - p * p).abs() < 3.0 * pair_sigma);

    let law = hitting_time_law(p, q, 2000).unwrap();
    let gaps = montecarlo::gap_statistics(&params, 100_000, 1000).unwrap();
    let tv = gap_law_distance(&gaps, &law);
    assert!(tv < 0.02, "gap law TV {tv}");

    let tail = montecarlo::displacement_tail(&params, 50).unwrap();
    let slope = montecarlo::log_linear_slope(&tail, 10).unwrap();
    assert!(slope < 0.0, "displacement slope {slope}");

    // conditioning on one empty site per window: use a narrow window
    let narrow = LineParams { window: 8, ..params };
    let factoring = factoring_check(&narrow, 20_000, 1).unwrap();
    assert!(
        factoring.max_sigmas() < 5.0,
        "factoring max sigmas {}",
        factoring.max_sigmas()
    );
    report("criterion 10: line densities, gap law, tail, factoring", t);
}

#[test]
fn criterion_11_multitype() {
    let t = Instant::now();
    let exact = generator_stationary(&[1, 1, 1, 1]).unwrap();
    assert_ne!(exact.get("1324"), exact.get("1423"));

    for candidate in naive_multitype_candidates(&[1, 1, 1, 1]).unwrap() {
        assert_ne!(
            candidate.distribution, exact,
            "naive candidate {:?} unexpectedly matches",
            candidate.name
        );
    }

    for n in 2..=6usize {
        for composition in compositions_up_to(n, 4) {
            if composition.iter().filter(|&&c| c > 0).count() < 2 {
                continue;
            }
            let report = check_conjectures(&composition).unwrap();
            assert!(
                report.least_likely_are_reversed_speed_order,
                "minimizer shape fails on {composition:?}"
            );
            assert!(
                report.minimum_product_matches(),
                "minimum product fails on {composition:?}"
            );
            assert!(
                report.all_integer_multiples,
                "integrality fails on {composition:?}"
            );
        }
    }
    report("criterion 11: 4-card inequality, naive mismatches, conjectures N <= 6", t);
}
