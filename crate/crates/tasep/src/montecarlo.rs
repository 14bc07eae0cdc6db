//! Seedable stochastic experiments.
//!
//! Everything here is reproducible: each operation derives its generator
//! from an explicit 64-bit seed, and independent samples use independent
//! ChaCha streams so results are identical across runs and thread counts.
//!
//! The line experiments approximate the infinite-lattice stationary measure
//! by collapsing i.i.d. seed sets on a window `[−L−M, L+M]` and measuring
//! only the central window `[−L, L]`. The margin `M` absorbs boundary
//! effects: a seed's particle is exponentially unlikely to land far to the
//! left of the seed.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::collapse::{
    collapse_line_window_traced, collapse_cycle, Site, SitePair, WindowState,
};
use crate::stationary::{CardState, ExactDistribution};
use crate::{Error, Result};

/// Default margin width; validated by [`margin_is_adequate`].
pub const DEFAULT_MARGIN: i64 = 512;

/// Parameters for the line-window experiments.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineParams {
    /// Seed density of `S` (particles).
    pub p: f64,
    /// Density of `T` (anti-particles).
    pub q: f64,
    /// Central window half-width: measurements cover `[−window, window]`.
    pub window: i64,
    /// Extra sites simulated on each side.
    pub margin: i64,
    pub seed: u64,
}

impl LineParams {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) || !(0.0..=1.0).contains(&self.q) {
            return Err(Error::InvalidParameter(format!(
                "densities p = {}, q = {} must lie in [0, 1]",
                self.p, self.q
            )));
        }
        if self.window < 0 || self.margin < 0 {
            return Err(Error::InvalidParameter(
                "window and margin must be nonnegative".into(),
            ));
        }
        Ok(())
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        stream_rng(self.seed, stream)
    }
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// An empirical occupancy count over state words.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Tally {
    pub counts: BTreeMap<String, u64>,
    pub total: u64,
}

impl Tally {
    pub fn record(&mut self, key: String) {
        *self.counts.entry(key).or_insert(0) += 1;
        self.total += 1;
    }

    pub fn frequency(&self, key: &str) -> f64 {
        if self.total == 0 {
            return 0.0;
        }
        *self.counts.get(key).unwrap_or(&0) as f64 / self.total as f64
    }

    /// Total-variation distance to an exact law over the same key space.
    pub fn total_variation(&self, exact: &ExactDistribution) -> f64 {
        let mut distance = 0.0;
        for (key, p) in &exact.entries {
            let p = rational_to_f64(p);
            distance += (self.frequency(key) - p).abs();
        }
        // keys observed outside the exact support
        for (key, &c) in &self.counts {
            if !exact.entries.contains_key(key) {
                distance += c as f64 / self.total as f64;
            }
        }
        distance / 2.0
    }
}

pub fn rational_to_f64(r: &num::rational::BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().expect("probability fits in f64")
}

/// Runs the uniformized jump chain of the card dynamics: each step picks one
/// of the `N` edges uniformly and sorts its pair (possibly a no-op). Every
/// state has total clock rate `N`, so the occupancy law of this chain equals
/// the stationary law of the continuous-time process.
///
/// The first 20% of steps are discarded as burn-in; every state visited
/// afterwards is tallied. Keys are card digit strings.
pub fn simulate_chain(initial: &CardState, steps: u64, seed: u64) -> Tally {
    let n = initial.len();
    let mut cards = initial.cards().to_vec();
    let mut rng = stream_rng(seed, 0);
    let burn_in = steps / 5;
    let mut tally = Tally::default();
    for step in 0..steps {
        let i = rng.gen_range(0..n);
        let j = (i + 1) % n;
        if cards[i] > cards[j] {
            cards.swap(i, j);
        }
        if step >= burn_in {
            tally.record(cards.iter().map(|&c| char::from(b'0' + c)).collect());
        }
    }
    tally
}

/// Draws `(S, T)` uniformly among size-`a` and size-`b` subsets of the
/// cycle, independently, collapses each pair and tallies the resulting
/// states (symbol keys).
pub fn sample_collapsed_uniform(
    n: usize,
    a: usize,
    b: usize,
    samples: u64,
    seed: u64,
) -> Result<Tally> {
    if a + b > n {
        return Err(Error::Capacity { occupied: a + b, n });
    }
    let mut rng = stream_rng(seed, 0);
    let mut tally = Tally::default();
    for _ in 0..samples {
        let seeds = rand::seq::index::sample(&mut rng, n, a);
        let anti = rand::seq::index::sample(&mut rng, n, b);
        let pair = SitePair::new(
            seeds.iter().map(|i| i as i64),
            anti.iter().map(|i| i as i64),
        );
        let x = collapse_cycle(&pair, n)?;
        tally.record(x.to_string());
    }
    Ok(tally)
}

fn draw_pair(params: &LineParams, rng: &mut ChaCha8Rng) -> SitePair {
    let lo = -params.window - params.margin;
    let hi = params.window + params.margin;
    let mut pair = SitePair::default();
    for pos in lo..=hi {
        if rng.gen::<f64>() < params.p {
            pair.seeds.insert(pos);
        }
        if rng.gen::<f64>() < params.q {
            pair.anti.insert(pos);
        }
    }
    pair
}

/// One collapsed window, full width `[−L−M, L+M]`, for the given sample
/// stream. Deterministic in `(seed, sample_index)`.
pub fn sample_full_window(params: &LineParams, sample_index: u64) -> Result<WindowState> {
    params.validate()?;
    let mut rng = params.rng(sample_index);
    let pair = draw_pair(params, &mut rng);
    let lo = -params.window - params.margin;
    let hi = params.window + params.margin;
    Ok(collapse_line_window_traced(&pair, lo, hi)?.0)
}

/// The central window `[−L, L]` of one collapsed sample.
pub fn sample_line_window(params: &LineParams, sample_index: u64) -> Result<Vec<Site>> {
    let full = sample_full_window(params, sample_index)?;
    Ok(central_sites(params, &full).to_vec())
}

fn central_sites<'a>(params: &LineParams, full: &'a WindowState) -> &'a [Site] {
    let offset = params.margin as usize;
    let width = (2 * params.window + 1) as usize;
    &full.sites[offset..offset + width]
}

/// Aggregate site statistics over the central windows of many samples.
#[derive(Clone, Copy, Debug, Default)]
pub struct WindowStatistics {
    pub sites: u64,
    pub particles: u64,
    pub anti: u64,
    pub empty: u64,
    /// Adjacent pairs inspected and those with particles at both ends; the
    /// pair fraction estimates `p²` under the i.i.d. product law.
    pub adjacent_pairs: u64,
    pub particle_pairs: u64,
}

impl WindowStatistics {
    pub fn particle_density(&self) -> f64 {
        self.particles as f64 / self.sites as f64
    }

    pub fn anti_density(&self) -> f64 {
        self.anti as f64 / self.sites as f64
    }

    pub fn empty_density(&self) -> f64 {
        self.empty as f64 / self.sites as f64
    }

    pub fn pair_correlation(&self) -> f64 {
        self.particle_pairs as f64 / self.adjacent_pairs as f64
    }
}

/// Measures densities and the nearest-neighbor particle pair correlation
/// over `samples` independent central windows.
pub fn window_statistics(params: &LineParams, samples: u64) -> Result<WindowStatistics> {
    let mut stats = WindowStatistics::default();
    for index in 0..samples {
        let full = sample_full_window(params, index)?;
        let sites = central_sites(params, &full);
        for &s in sites {
            stats.sites += 1;
            match s {
                Site::Particle => stats.particles += 1,
                Site::Anti => stats.anti += 1,
                Site::Empty => stats.empty += 1,
            }
        }
        for pair in sites.windows(2) {
            stats.adjacent_pairs += 1;
            if pair[0] == Site::Particle && pair[1] == Site::Particle {
                stats.particle_pairs += 1;
            }
        }
    }
    Ok(stats)
}

/// Doubles the margin and requires the central-window densities to agree
/// within `sigma` combined standard errors. The displacement tail is
/// exponential, so an inadequate margin shows up as a density shift at the
/// left edge.
pub fn margin_is_adequate(params: &LineParams, samples: u64, sigma: f64) -> Result<bool> {
    let narrow = window_statistics(params, samples)?;
    let wide_params = LineParams {
        margin: params.margin * 2,
        seed: params.seed ^ 0x6d61_7267_696e,
        ..*params
    };
    let wide = window_statistics(&wide_params, samples)?;
    let agree = |x: f64, y: f64, n1: u64, n2: u64| {
        let se = (x * (1.0 - x) / n1 as f64 + y * (1.0 - y) / n2 as f64).sqrt();
        (x - y).abs() <= sigma * se.max(1e-12)
    };
    Ok(agree(
        narrow.particle_density(),
        wide.particle_density(),
        narrow.sites,
        wide.sites,
    ) && agree(
        narrow.empty_density(),
        wide.empty_density(),
        narrow.sites,
        wide.sites,
    ))
}

/// Exact first-passage law to level `+1` of the coupled random walk with
/// steps `P(+1) = (1−p)(1−q)`, `P(−1) = pq`, computed by dynamic
/// programming and truncated at `horizon`.
#[derive(Clone, Debug)]
pub struct HittingTimeLaw {
    /// `probability[t]` is the chance of first hitting at time `t`
    /// (`probability[0] = 0`).
    pub probability: Vec<f64>,
    /// Mass not absorbed within the horizon.
    pub residual: f64,
}

impl HittingTimeLaw {
    pub fn mean(&self) -> f64 {
        self.probability
            .iter()
            .enumerate()
            .map(|(t, &p)| t as f64 * p)
            .sum()
    }
}

pub fn hitting_time_law(p: f64, q: f64, horizon: usize) -> Result<HittingTimeLaw> {
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidParameter(
            "densities must lie in [0, 1]".into(),
        ));
    }
    if horizon == 0 {
        return Err(Error::InvalidParameter("horizon must be at least 1".into()));
    }
    let up = (1.0 - p) * (1.0 - q);
    let down = p * q;
    let stay = 1.0 - up - down;
    // depth d = distance below the start; absorption is an up-step at depth 0
    let mut depth_mass = vec![0.0f64; horizon + 1];
    depth_mass[0] = 1.0;
    let mut probability = vec![0.0f64; horizon + 1];
    let mut absorbed = 0.0;
    for t in 1..=horizon {
        probability[t] = depth_mass[0] * up;
        absorbed += probability[t];
        let mut next = vec![0.0f64; horizon + 1];
        for d in 0..=horizon {
            let mass = depth_mass[d];
            if mass == 0.0 {
                continue;
            }
            next[d] += mass * stay;
            if d > 0 {
                next[d - 1] += mass * up;
            }
            if d + 1 <= horizon {
                next[d + 1] += mass * down;
            }
        }
        // the up-move from depth 0 is the absorption tallied above; the
        // inner loop drops that mass, so nothing else to remove
        depth_mass = next;
    }
    Ok(HittingTimeLaw {
        probability,
        residual: 1.0 - absorbed,
    })
}

/// Distances between consecutive empty sites in central windows, sampled
/// until at least `min_gaps` gaps are recorded (or `max_samples` windows).
pub fn gap_statistics(
    params: &LineParams,
    min_gaps: u64,
    max_samples: u64,
) -> Result<BTreeMap<usize, u64>> {
    params.validate()?;
    if params.p + params.q >= 1.0 {
        return Err(Error::InvalidParameter(
            "gap statistics need p + q < 1".into(),
        ));
    }
    let mut gaps: BTreeMap<usize, u64> = BTreeMap::new();
    let mut recorded = 0u64;
    let mut index = 0u64;
    while recorded < min_gaps && index < max_samples {
        let sites = sample_line_window(params, index)?;
        let mut last_empty: Option<usize> = None;
        for (i, &s) in sites.iter().enumerate() {
            if s == Site::Empty {
                if let Some(prev) = last_empty {
                    *gaps.entry(i - prev).or_insert(0) += 1;
                    recorded += 1;
                }
                last_empty = Some(i);
            }
        }
        index += 1;
    }
    Ok(gaps)
}

/// Total-variation distance between an empirical gap tally and the
/// hitting-time law.
pub fn gap_law_distance(gaps: &BTreeMap<usize, u64>, law: &HittingTimeLaw) -> f64 {
    let total: u64 = gaps.values().sum();
    if total == 0 {
        return 1.0;
    }
    let horizon = law.probability.len() - 1;
    let mut distance = 0.0;
    for (&gap, &count) in gaps {
        let empirical = count as f64 / total as f64;
        let exact = if gap <= horizon {
            law.probability[gap]
        } else {
            0.0
        };
        distance += (empirical - exact).abs();
    }
    for (t, &p) in law.probability.iter().enumerate() {
        if !gaps.contains_key(&t) {
            distance += p;
        }
    }
    (distance + law.residual) / 2.0
}

/// Distribution of `seed position − landing position` over collapsed seeds
/// whose seed lies in the central window.
pub fn displacement_tail(params: &LineParams, samples: u64) -> Result<BTreeMap<u64, u64>> {
    params.validate()?;
    let lo = -params.window - params.margin;
    let hi = params.window + params.margin;
    let mut tail: BTreeMap<u64, u64> = BTreeMap::new();
    for index in 0..samples {
        let mut rng = params.rng(index);
        let pair = draw_pair(params, &mut rng);
        let (_, placements) = collapse_line_window_traced(&pair, lo, hi)?;
        for (seed, landing) in placements {
            if seed.abs() > params.window {
                continue;
            }
            if let Some(landing) = landing {
                *tail.entry((seed - landing) as u64).or_insert(0) += 1;
            }
        }
    }
    Ok(tail)
}

/// Least-squares slope of `ln frequency` against displacement, over
/// displacements observed at least `min_count` times. `None` if fewer than
/// two points qualify.
pub fn log_linear_slope(tail: &BTreeMap<u64, u64>, min_count: u64) -> Option<f64> {
    let points: Vec<(f64, f64)> = tail
        .iter()
        .filter(|(_, &c)| c >= min_count)
        .map(|(&d, &c)| (d as f64, (c as f64).ln()))
        .collect();
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|(x, _)| x).sum::<f64>() / n;
    let mean_y = points.iter().map(|(_, y)| y).sum::<f64>() / n;
    let cov: f64 = points.iter().map(|(x, y)| (x - mean_x) * (y - mean_y)).sum();
    let var: f64 = points.iter().map(|(x, _)| (x - mean_x).powi(2)).sum();
    Some(cov / var)
}

/// One cell of the independence check: a (left, right) pattern pair with
/// its empirical joint frequency and the product of its marginals.
#[derive(Clone, Debug)]
pub struct FactoringCell {
    pub left: String,
    pub right: String,
    pub joint: f64,
    pub product: f64,
    pub standard_error: f64,
}

impl FactoringCell {
    pub fn sigmas(&self) -> f64 {
        (self.joint - self.product).abs() / self.standard_error.max(1e-12)
    }
}

/// Outcome of the conditional-independence experiment.
#[derive(Clone, Debug)]
pub struct FactoringReport {
    pub conditioned_samples: u64,
    pub width: usize,
    pub cells: Vec<FactoringCell>,
}

impl FactoringReport {
    pub fn max_sigmas(&self) -> f64 {
        self.cells.iter().map(|c| c.sigmas()).fold(0.0, f64::max)
    }
}

/// Conditions on site 0 being empty and tests whether the patterns of width
/// `width` immediately right and left of 0 are independent. Samples windows
/// until `target` conditioned samples are collected.
pub fn factoring_check(params: &LineParams, target: u64, width: usize) -> Result<FactoringReport> {
    params.validate()?;
    if width == 0 || width as i64 > params.window {
        return Err(Error::InvalidParameter(format!(
            "pattern width {width} must be between 1 and the window {}",
            params.window
        )));
    }
    let mut joint: BTreeMap<(String, String), u64> = BTreeMap::new();
    let mut left_marginal: BTreeMap<String, u64> = BTreeMap::new();
    let mut right_marginal: BTreeMap<String, u64> = BTreeMap::new();
    let mut conditioned = 0u64;
    let mut index = 0u64;
    // the conditioning event has probability ≈ 1 − p − q
    let max_windows = target * 100 + 100;
    while conditioned < target && index < max_windows {
        let sites = sample_line_window(params, index)?;
        index += 1;
        let center = params.window as usize;
        if sites[center] != Site::Empty {
            continue;
        }
        conditioned += 1;
        let render = |range: std::ops::Range<usize>| -> String {
            sites[range].iter().map(|s| s.symbol()).collect()
        };
        let left = render(center - width..center);
        let right = render(center + 1..center + 1 + width);
        *left_marginal.entry(left.clone()).or_insert(0) += 1;
        *right_marginal.entry(right.clone()).or_insert(0) += 1;
        *joint.entry((left, right)).or_insert(0) += 1;
    }
    let n = conditioned as f64;
    let mut cells = Vec::new();
    for (&ref key, &count) in &joint {
        let (left, right) = key.clone();
        let pj = count as f64 / n;
        let pl = left_marginal[&left] as f64 / n;
        let pr = right_marginal[&right] as f64 / n;
        let variance =
            pj * (1.0 - pj) / n + pr * pr * pl * (1.0 - pl) / n + pl * pl * pr * (1.0 - pr) / n;
        cells.push(FactoringCell {
            left,
            right,
            joint: pj,
            product: pl * pr,
            standard_error: variance.sqrt(),
        });
    }
    Ok(FactoringReport {
        conditioned_samples: conditioned,
        width,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stationary::formula_distribution;

    fn params(p: f64, q: f64, window: i64, margin: i64, seed: u64) -> LineParams {
        LineParams {
            p,
            q,
            window,
            margin,
            seed,
        }
    }

    #[test]
    fn simulate_chain_is_deterministic_and_conserves_composition() {
        let initial: CardState = "331221".parse().unwrap();
        let a = simulate_chain(&initial, 20_000, 7);
        let b = simulate_chain(&initial, 20_000, 7);
        assert_eq!(a, b);
        for key in a.counts.keys() {
            let state: CardState = key.parse().unwrap();
            assert_eq!(state.composition(), initial.composition());
        }
    }

    #[test]
    fn simulate_chain_single_value_composition() {
        let initial: CardState = "222".parse().unwrap();
        let tally = simulate_chain(&initial, 1000, 1);
        assert_eq!(tally.counts.len(), 1);
        assert_eq!(tally.counts["222"], 800);
    }

    #[test]
    fn sampled_collapse_approaches_exact_law() {
        let exact = formula_distribution(6, 2, 2).unwrap();
        let coarse = sample_collapsed_uniform(6, 2, 2, 10_000, 11).unwrap();
        let fine = sample_collapsed_uniform(6, 2, 2, 200_000, 11).unwrap();
        assert!(fine.total_variation(&exact) < coarse.total_variation(&exact));
        assert!(fine.total_variation(&exact) < 0.02);
    }

    #[test]
    fn degenerate_sampling_cases() {
        let tally = sample_collapsed_uniform(4, 0, 0, 100, 3).unwrap();
        assert_eq!(tally.counts["****"], 100);
        assert!(sample_collapsed_uniform(3, 2, 2, 1, 0).is_err());
    }

    #[test]
    fn line_window_no_particles_when_p_zero() {
        let sites = sample_line_window(&params(0.0, 0.3, 50, 64, 5), 0).unwrap();
        assert_eq!(sites.len(), 101);
        assert!(sites.iter().all(|&s| s != Site::Particle));
    }

    #[test]
    fn hitting_time_immediate_cases() {
        let law = hitting_time_law(0.0, 0.0, 10).unwrap();
        assert!((law.probability[1] - 1.0).abs() < 1e-12);
        assert!(law.residual.abs() < 1e-12);

        let law = hitting_time_law(0.3, 0.2, 400).unwrap();
        assert!((law.probability[1] - 0.7 * 0.8).abs() < 1e-12);
        assert!(law.residual < 1e-6);
        // drift heuristic: mean ≈ 1 / (1 − p − q)
        assert!((law.mean() - 2.0).abs() < 0.01);
    }

    #[test]
    fn geometric_gaps_without_antiparticles() {
        let p = 0.5;
        let law = hitting_time_law(p, 0.0, 200).unwrap();
        for d in 1..10usize {
            let expected = (1.0 - p) * p.powi(d as i32 - 1);
            assert!((law.probability[d] - expected).abs() < 1e-12);
        }
        let gaps = gap_statistics(&params(p, 0.0, 400, 64, 9), 20_000, 10_000).unwrap();
        assert!(gap_law_distance(&gaps, &law) < 0.02);
    }

    #[test]
    fn unit_gaps_when_everything_empty() {
        let gaps = gap_statistics(&params(0.0, 0.0, 20, 8, 2), 30, 100).unwrap();
        assert_eq!(gaps.keys().copied().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn displacement_tail_shape() {
        let tail = displacement_tail(&params(0.3, 0.2, 200, 64, 13), 20).unwrap();
        assert!(tail[&0] > 0);
        let slope = log_linear_slope(&tail, 10).unwrap();
        assert!(slope < 0.0, "tail slope {slope} not negative");
    }

    #[test]
    fn factoring_check_runs() {
        let report = factoring_check(&params(0.3, 0.2, 8, 64, 17), 4000, 1).unwrap();
        assert_eq!(report.conditioned_samples, 4000);
        assert!(report.max_sigmas() < 5.0, "sigmas {}", report.max_sigmas());
    }

    #[test]
    fn margin_check_passes_at_default_shape() {
        assert!(margin_is_adequate(&params(0.3, 0.2, 40, 64, 23), 40, 5.0).unwrap());
    }
}
