//! Exact stationary distributions on the cycle.
//!
//! Three independent routes to the same law are implemented for the
//! three-type process: the segment-weight product formula, the pushforward
//! of the uniform measure on `(S, T)` pairs under collapsing, and a
//! brute-force solve of the continuous-time generator. The generator route
//! also handles general card dynamics with any number of classes, which is
//! what the multitype conjecture harness runs on.
//!
//! All computations here are exact: arbitrary-precision integers and
//! rationals end to end, no floating point.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num::bigint::{BigInt, BigUint};
use num::rational::BigRational;
use num::{One, Zero};

use crate::collapse::{collapse_cycle, dual_collapse_cycle, CycleState, Site, SitePair};
use crate::seq::BinarySequence;
use crate::{Error, Result};

/// Largest state space accepted by the generator solve. The solve is a
/// dense exact-rational elimination, so memory grows quadratically in the
/// state count; this bound keeps it within a few hundred MB.
pub const SOLVER_STATE_LIMIT: usize = 3_000;

/// Largest cycle accepted by [`formula_distribution`].
pub const FORMULA_CYCLE_LIMIT: usize = 14;

/// Largest pair count accepted by [`collapse_pushforward`].
pub const PUSHFORWARD_PAIR_LIMIT: u64 = 10_000_000;

// ---------------------------------------------------------------------------
// Card states
// ---------------------------------------------------------------------------

/// A state of the card-sorting dynamics: a word over `{1..k}`, higher value
/// meaning higher class. The three-type process corresponds to
/// `'1' ↦ 3, '*' ↦ 2, '0' ↦ 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CardState {
    cards: Vec<u8>,
}

impl CardState {
    /// Card values must lie in `1..=9` so states render as digit strings.
    pub fn new(cards: Vec<u8>) -> Result<Self> {
        if let Some(&c) = cards.iter().find(|&&c| c == 0 || c > 9) {
            return Err(Error::InvalidParameter(format!(
                "card value {c} outside 1..=9"
            )));
        }
        Ok(CardState { cards })
    }

    pub fn len(&self) -> usize {
        self.cards.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cards.is_empty()
    }

    pub fn cards(&self) -> &[u8] {
        &self.cards
    }

    /// Per-value counts `c_1..c_k` where `k` is the largest card present.
    pub fn composition(&self) -> Vec<usize> {
        let k = self.cards.iter().copied().max().unwrap_or(0) as usize;
        let mut counts = vec![0usize; k];
        for &c in &self.cards {
            counts[c as usize - 1] += 1;
        }
        counts
    }

    /// The swap moves of the sorting dynamics, one per unsorted edge
    /// `(i, i+1 mod N)` with the larger card on the left. Every listed
    /// transition has rate 1; sorted edges are self-loops and are omitted.
    pub fn transitions(&self) -> Vec<(usize, CardState)> {
        self.swaps(|left, right| left > right)
    }

    /// The states `y` with `y → x` in one move: one per edge of `x` that is
    /// strictly sorted (unsorting it yields a predecessor).
    pub fn predecessors(&self) -> Vec<(usize, CardState)> {
        self.swaps(|left, right| left < right)
    }

    fn swaps(&self, pick: impl Fn(u8, u8) -> bool) -> Vec<(usize, CardState)> {
        let n = self.cards.len();
        let mut out = Vec::new();
        for i in 0..n {
            let j = (i + 1) % n;
            if pick(self.cards[i], self.cards[j]) {
                let mut cards = self.cards.clone();
                cards.swap(i, j);
                out.push((i, CardState { cards }));
            }
        }
        out
    }
}

impl fmt::Display for CardState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &c in &self.cards {
            write!(f, "{}", c)?;
        }
        Ok(())
    }
}

impl fmt::Debug for CardState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self)
    }
}

impl FromStr for CardState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .filter(|&d| d >= 1)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::Parse(format!("invalid card digit {c:?}")))
            })
            .collect::<Result<Vec<u8>>>()
            .and_then(CardState::new)
    }
}

/// Three-type ↔ card conversions.
impl CycleState {
    pub fn to_cards(&self) -> CardState {
        CardState {
            cards: self
                .sites()
                .iter()
                .map(|s| match s {
                    Site::Particle => 3,
                    Site::Empty => 2,
                    Site::Anti => 1,
                })
                .collect(),
        }
    }

    pub fn from_cards(cards: &CardState) -> Result<CycleState> {
        cards
            .cards
            .iter()
            .map(|&c| match c {
                3 => Ok(Site::Particle),
                2 => Ok(Site::Empty),
                1 => Ok(Site::Anti),
                other => Err(Error::InvalidParameter(format!(
                    "card {other} has no three-type symbol"
                ))),
            })
            .collect::<Result<Vec<Site>>>()
            .map(CycleState::new)
    }
}

// ---------------------------------------------------------------------------
// Segments and mass
// ---------------------------------------------------------------------------

/// The maximal runs of non-empty symbols between empty sites, read
/// cyclically. Runs between adjacent empty sites are empty and omitted
/// (they contribute weight 1). Errors when the state has no empty site.
pub fn binary_segments(x: &CycleState) -> Result<Vec<BinarySequence>> {
    let n = x.len();
    let first_empty = x
        .sites()
        .iter()
        .position(|&s| s == Site::Empty)
        .ok_or(Error::NoEmptySite)?;
    let mut segments = Vec::new();
    let mut current: Vec<u8> = Vec::new();
    for off in 1..=n {
        let site = x.sites()[(first_empty + off) % n];
        match site {
            Site::Empty => {
                if !current.is_empty() {
                    segments.push(BinarySequence::new(std::mem::take(&mut current))?);
                }
            }
            Site::Particle => current.push(1),
            Site::Anti => current.push(0),
        }
    }
    debug_assert!(current.is_empty());
    Ok(segments)
}

/// The mass `m(x) = Π W(A_i)` over the binary segments of `x`; the
/// unnormalized stationary probability.
pub fn mass(x: &CycleState) -> Result<BigUint> {
    let mut m = BigUint::one();
    for segment in binary_segments(x)? {
        m *= segment.weight();
    }
    Ok(m)
}

/// Exact stationary probability of a single state, computed without
/// enumerating the state space: `m(x) / (C(N,a)·C(N,b))`, or `1/C(N,a)`
/// when there is no empty site.
pub fn formula_probability(x: &CycleState) -> Result<BigRational> {
    let n = x.len();
    let a = x.count(Site::Particle);
    let b = x.count(Site::Anti);
    if a + b == n {
        return Ok(BigRational::new(
            BigInt::one(),
            BigInt::from(binomial(n, a)),
        ));
    }
    Ok(BigRational::new(
        BigInt::from(mass(x)?),
        BigInt::from(binomial(n, a) * binomial(n, b)),
    ))
}

/// The exact mass derivative `Σ_{y→x} m(y) − m(x)·#{z : x→z}` under the
/// rate-1 edge dynamics. Zero for every state with an empty site.
pub fn mass_derivative(x: &CycleState) -> Result<BigInt> {
    let cards = x.to_cards();
    let mut inflow = BigInt::zero();
    for (_, y) in cards.predecessors() {
        inflow += BigInt::from(mass(&CycleState::from_cards(&y)?)?);
    }
    let out_count = cards.transitions().len();
    Ok(inflow - BigInt::from(mass(x)?) * BigInt::from(out_count))
}

// ---------------------------------------------------------------------------
// Exact distributions
// ---------------------------------------------------------------------------

/// A map from canonical state words to exact rational probabilities summing
/// to one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExactDistribution {
    pub entries: BTreeMap<String, BigRational>,
}

impl ExactDistribution {
    pub fn new(entries: BTreeMap<String, BigRational>) -> Self {
        ExactDistribution { entries }
    }

    pub fn total(&self) -> BigRational {
        self.entries.values().sum()
    }

    pub fn get(&self, state: &str) -> Option<&BigRational> {
        self.entries.get(state)
    }

    /// The minimum probability and the states attaining it.
    pub fn minimum(&self) -> Option<(BigRational, Vec<String>)> {
        let min = self.entries.values().min()?.clone();
        let states = self
            .entries
            .iter()
            .filter(|(_, p)| **p == min)
            .map(|(k, _)| k.clone())
            .collect();
        Some((min, states))
    }

    pub fn is_uniform(&self) -> bool {
        let mut values = self.entries.values();
        match values.next() {
            None => true,
            Some(first) => values.all(|v| v == first),
        }
    }

    /// Re-keys every entry; panics on key collisions.
    pub fn map_keys(&self, mut f: impl FnMut(&str) -> String) -> ExactDistribution {
        let mut entries = BTreeMap::new();
        for (k, v) in &self.entries {
            let new = f(k);
            assert!(
                entries.insert(new.clone(), v.clone()).is_none(),
                "key collision on {new}"
            );
        }
        ExactDistribution { entries }
    }
}

/// `C(n, k)` as an arbitrary-precision integer.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut result = BigUint::one();
    for i in 0..k.min(n - k) {
        result = result * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    result
}

/// All three-type cycle states with `a` particles and `b` anti-particles.
pub fn enumerate_three_type_states(n: usize, a: usize, b: usize) -> Result<Vec<CycleState>> {
    if a + b > n {
        return Err(Error::InvalidParameter(format!(
            "a + b = {} exceeds N = {n}",
            a + b
        )));
    }
    let words = multiset_permutations(&[b, n - a - b, a]);
    words
        .into_iter()
        .map(|w| CycleState::from_cards(&CardState { cards: w }))
        .collect()
}

/// All words with `composition[v-1]` copies of the value `v`, in
/// lexicographic order.
pub fn multiset_permutations(composition: &[usize]) -> Vec<Vec<u8>> {
    let n: usize = composition.iter().sum();
    let mut counts = composition.to_vec();
    let mut word = Vec::with_capacity(n);
    let mut out = Vec::new();
    fn rec(counts: &mut [usize], word: &mut Vec<u8>, n: usize, out: &mut Vec<Vec<u8>>) {
        if word.len() == n {
            out.push(word.clone());
            return;
        }
        for v in 0..counts.len() {
            if counts[v] > 0 {
                counts[v] -= 1;
                word.push((v + 1) as u8);
                rec(counts, word, n, out);
                word.pop();
                counts[v] += 1;
            }
        }
    }
    rec(&mut counts, &mut word, n, &mut out);
    out
}

/// The product-formula stationary distribution on the cycle with `a`
/// particles and `b` anti-particles:
/// `P(x) = m(x) / (C(N,a)·C(N,b))`.
///
/// When `a + b = N` there are no empty sites, the dynamics degenerate to
/// swaps, and the law is uniform over the `C(N,a)` arrangements.
pub fn formula_distribution(n: usize, a: usize, b: usize) -> Result<ExactDistribution> {
    if n > FORMULA_CYCLE_LIMIT {
        return Err(Error::TooLarge {
            what: "cycle length",
            got: n,
            limit: FORMULA_CYCLE_LIMIT,
        });
    }
    let states = enumerate_three_type_states(n, a, b)?;
    let mut entries = BTreeMap::new();
    if a + b == n {
        let p = BigRational::new(BigInt::one(), BigInt::from(binomial(n, a)));
        for x in states {
            entries.insert(x.to_string(), p.clone());
        }
    } else {
        let normalizer = BigInt::from(binomial(n, a) * binomial(n, b));
        for x in &states {
            let p = BigRational::new(BigInt::from(mass(x)?), normalizer.clone());
            entries.insert(x.to_string(), p);
        }
    }
    Ok(ExactDistribution::new(entries))
}

// ---------------------------------------------------------------------------
// Generator oracle
// ---------------------------------------------------------------------------

/// The unique stationary distribution of the card dynamics with the given
/// composition, solved exactly from the generator.
///
/// States are enumerated, the rate matrix is assembled with one unit of rate
/// per unsorted edge (edges are counted with multiplicity: on a 2-cycle the
/// two edges join the same pair of sites), connectivity is asserted, and
/// `πQ = 0`, `Σπ = 1` is solved by exact rational elimination. Keys are card
/// digit strings.
pub fn generator_stationary(composition: &[usize]) -> Result<ExactDistribution> {
    let nontrivial = composition.iter().filter(|&&c| c > 0).count();
    let words = multiset_permutations(composition);
    let count = words.len();
    if count > SOLVER_STATE_LIMIT {
        return Err(Error::TooLarge {
            what: "state count",
            got: count,
            limit: SOLVER_STATE_LIMIT,
        });
    }
    let states: Vec<CardState> = words
        .into_iter()
        .map(|w| CardState::new(w))
        .collect::<Result<_>>()?;
    if nontrivial <= 1 {
        // single card value: point mass on the unique state
        let mut entries = BTreeMap::new();
        for x in &states {
            entries.insert(x.to_string(), BigRational::one());
        }
        return Ok(ExactDistribution::new(entries));
    }

    let index: HashMap<&CardState, usize> = states.iter().zip(0..).collect();
    // out[i] = aggregated rates to distinct targets
    let mut out: Vec<Vec<(usize, u64)>> = Vec::with_capacity(count);
    for x in &states {
        let mut rates: BTreeMap<usize, u64> = BTreeMap::new();
        for (_, y) in x.transitions() {
            let j = *index.get(&y).expect("transition conserves composition");
            *rates.entry(j).or_insert(0) += 1;
        }
        out.push(rates.into_iter().collect());
    }
    assert!(
        is_strongly_connected(&out, count),
        "card dynamics must be irreducible on one composition class"
    );

    // Rotating the cycle is an automorphism of the dynamics, so by uniqueness
    // the stationary law is rotation-invariant: states in one rotation orbit
    // carry equal probability. Solving the lumped chain on orbits cuts the
    // elimination size by a factor of roughly N.
    let mut orbit_of = vec![usize::MAX; count];
    let mut orbit_members: Vec<Vec<usize>> = Vec::new();
    for i in 0..count {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let o = orbit_members.len();
        let mut members = Vec::new();
        let mut cards = states[i].cards().to_vec();
        for _ in 0..cards.len() {
            cards.rotate_left(1);
            let rotated = CardState::new(cards.clone())?;
            let j = *index.get(&rotated).expect("rotation conserves composition");
            if orbit_of[j] == usize::MAX {
                orbit_of[j] = o;
                members.push(j);
            }
        }
        orbit_members.push(members);
    }
    let lumped: Vec<Vec<(usize, u64)>> = orbit_members
        .iter()
        .map(|members| {
            let mut rates: BTreeMap<usize, u64> = BTreeMap::new();
            for &(j, r) in &out[members[0]] {
                *rates.entry(orbit_of[j]).or_insert(0) += r;
            }
            rates.into_iter().collect()
        })
        .collect();

    let orbit_mass = solve_stationary(&lumped, orbit_members.len());
    let mut pi = vec![BigRational::zero(); count];
    for (members, mass) in orbit_members.iter().zip(orbit_mass) {
        let share = mass / BigRational::from(BigInt::from(members.len()));
        for &i in members {
            pi[i] = share.clone();
        }
    }
    let mut entries = BTreeMap::new();
    for (x, p) in states.iter().zip(pi) {
        entries.insert(x.to_string(), p);
    }
    Ok(ExactDistribution::new(entries))
}

/// Generator oracle for the three-type process, keyed by `'1'/'*'/'0'`
/// symbol strings for direct comparison with [`formula_distribution`].
pub fn generator_stationary_three_type(n: usize, a: usize, b: usize) -> Result<ExactDistribution> {
    if a + b > n {
        return Err(Error::InvalidParameter(format!(
            "a + b = {} exceeds N = {n}",
            a + b
        )));
    }
    let dist = generator_stationary(&[b, n - a - b, a])?;
    Ok(dist.map_keys(|key| {
        let cards: CardState = key.parse().expect("solver emits card keys");
        CycleState::from_cards(&cards)
            .expect("three-type composition")
            .to_string()
    }))
}

fn is_strongly_connected(out: &[Vec<(usize, u64)>], count: usize) -> bool {
    // The chain is doubly reachable on a composition class; a forward BFS
    // plus a backward BFS from state 0 checks it.
    let mut reverse: Vec<Vec<usize>> = vec![Vec::new(); count];
    for (i, edges) in out.iter().enumerate() {
        for &(j, _) in edges {
            reverse[j].push(i);
        }
    }
    let bfs = |neighbors: &dyn Fn(usize) -> Vec<usize>| {
        let mut seen = vec![false; count];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(i) = queue.pop_front() {
            for j in neighbors(i) {
                if !seen[j] {
                    seen[j] = true;
                    queue.push_back(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    bfs(&|i| out[i].iter().map(|&(j, _)| j).collect())
        && bfs(&|i| reverse[i].clone())
}

/// Exact stationary vector of an irreducible CTMC given aggregated out-rates.
///
/// Solves the transposed balance equations with the normalization row
/// appended, by Gaussian elimination over rationals.
fn solve_stationary(out: &[Vec<(usize, u64)>], n: usize) -> Vec<BigRational> {
    // rows: balance equation of each state but the last, then Σπ = 1
    let mut rows: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n + 1]; n];
    for (j, edges) in out.iter().enumerate() {
        let mut total = 0u64;
        for &(i, r) in edges {
            total += r;
            if i < n - 1 {
                rows[i][j] += BigRational::from(BigInt::from(r));
            }
        }
        if j < n - 1 {
            rows[j][j] -= BigRational::from(BigInt::from(total));
        }
    }
    for j in 0..n {
        rows[n - 1][j] = BigRational::one();
    }
    rows[n - 1][n] = BigRational::one();

    // forward elimination with partial (first nonzero) pivoting
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !rows[r][col].is_zero())
            .expect("matrix is nonsingular for an irreducible chain");
        rows.swap(col, pivot_row);
        let pivot = rows[col][col].clone();
        for r in col + 1..n {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = &rows[r][col] / &pivot;
            for c in col..=n {
                let delta = &factor * &rows[col][c];
                rows[r][c] -= delta;
            }
        }
    }
    // back substitution
    let mut pi = vec![BigRational::zero(); n];
    for row in (0..n).rev() {
        let mut value = rows[row][n].clone();
        for c in row + 1..n {
            value -= &rows[row][c] * &pi[c];
        }
        pi[row] = value / &rows[row][row];
    }
    pi
}

// ---------------------------------------------------------------------------
// Pushforwards
// ---------------------------------------------------------------------------

/// All `k`-element subsets of `0..n`.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        let remaining = k - current.len();
        for i in start..=n - remaining {
            current.push(i as i64);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    if k <= n {
        rec(0, n, k, &mut current, &mut out);
    }
    out
}

fn pushforward_over_pairs(
    n: usize,
    a: usize,
    b: usize,
    collapse: impl Fn(&SitePair, usize) -> Result<CycleState>,
) -> Result<ExactDistribution> {
    if a + b > n {
        return Err(Error::InvalidParameter(format!(
            "a + b = {} exceeds N = {n}",
            a + b
        )));
    }
    let total = binomial(n, a) * binomial(n, b);
    let total_u64 = u64::try_from(&total).map_err(|_| Error::TooLarge {
        what: "pair count",
        got: usize::MAX,
        limit: PUSHFORWARD_PAIR_LIMIT as usize,
    })?;
    if total_u64 > PUSHFORWARD_PAIR_LIMIT {
        return Err(Error::TooLarge {
            what: "pair count",
            got: total_u64 as usize,
            limit: PUSHFORWARD_PAIR_LIMIT as usize,
        });
    }
    let seed_sets = combinations(n, a);
    let anti_sets = combinations(n, b);
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    for t in &anti_sets {
        for s in &seed_sets {
            let pair = SitePair::new(s.iter().copied(), t.iter().copied());
            let x = collapse(&pair, n)?;
            *counts.entry(x.to_string()).or_insert(0) += 1;
        }
    }
    let denom = BigInt::from(total);
    let entries = counts
        .into_iter()
        .map(|(k, c)| (k, BigRational::new(BigInt::from(c), denom.clone())))
        .collect();
    Ok(ExactDistribution::new(entries))
}

/// The pushforward of the uniform measure on pairs `(S, T)` of sizes
/// `(a, b)` under collapsing. Equals [`formula_distribution`] exactly.
pub fn collapse_pushforward(n: usize, a: usize, b: usize) -> Result<ExactDistribution> {
    pushforward_over_pairs(n, a, b, collapse_cycle)
}

/// The pushforward under the dual procedure; also equals the formula.
pub fn dual_collapse_pushforward(n: usize, a: usize, b: usize) -> Result<ExactDistribution> {
    pushforward_over_pairs(n, a, b, dual_collapse_cycle)
}

/// Number of seed sets `S` of size `a` that collapse (with the forced `T`)
/// to the given state. Equals `m(x)` and runs over `C(N,a)` sets only.
pub fn preimage_count(x: &CycleState) -> u64 {
    let n = x.len();
    let anti: Vec<i64> = x
        .sites()
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == Site::Anti)
        .map(|(i, _)| i as i64)
        .collect();
    let a = x.count(Site::Particle);
    let mut count = 0;
    for s in combinations(n, a) {
        let pair = SitePair::new(s, anti.iter().copied());
        if collapse_cycle(&pair, n).expect("sizes fit") == *x {
            count += 1;
        }
    }
    count
}

// ---------------------------------------------------------------------------
// Marginals
// ---------------------------------------------------------------------------

/// Pushforward of a symbol-keyed distribution under "record the positions
/// holding `kind`". The particle and anti-particle marginals of the
/// stationary law are uniform.
pub fn position_marginal(
    dist: &ExactDistribution,
    kind: Site,
) -> Result<BTreeMap<Vec<usize>, BigRational>> {
    let mut out: BTreeMap<Vec<usize>, BigRational> = BTreeMap::new();
    for (key, p) in &dist.entries {
        let x: CycleState = key.parse()?;
        let positions: Vec<usize> = x
            .sites()
            .iter()
            .enumerate()
            .filter(|(_, &s)| s == kind)
            .map(|(i, _)| i)
            .collect();
        *out.entry(positions).or_insert_with(BigRational::zero) += p;
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Conjecture harness
// ---------------------------------------------------------------------------

/// One evaluated reading of the conjectured minimum-probability product.
#[derive(Clone, Debug)]
pub struct MinimumProductReading {
    pub name: String,
    pub predicted: BigRational,
    pub matches: bool,
}

/// Exact evaluation of the three multitype conjectures on one composition.
#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub n: usize,
    pub composition: Vec<usize>,
    pub state_count: usize,
    pub min_probability: BigRational,
    pub min_states: Vec<String>,
    /// Conjecture on the shape of the least likely states: the `N` rotations
    /// of the descending-card arrangement all attain the minimum (ties with
    /// further states are possible and not counted against the conjecture).
    pub least_likely_are_reversed_speed_order: bool,
    /// Conjectured closed form for the minimum, under each reading of the
    /// class-count product.
    pub minimum_product_readings: Vec<MinimumProductReading>,
    /// Conjecture that every probability is an integer multiple of the
    /// minimum.
    pub all_integer_multiples: bool,
}

impl ConjectureReport {
    pub fn minimum_product_matches(&self) -> bool {
        self.minimum_product_readings.iter().any(|r| r.matches)
    }
}

/// Runs the exact solver on one composition and evaluates the three
/// conjectures. The composition lists counts per card value, lowest first.
pub fn check_conjectures(composition: &[usize]) -> Result<ConjectureReport> {
    let n: usize = composition.iter().sum();
    let k = composition.len();
    let dist = generator_stationary(composition)?;
    let (min_probability, min_states) = dist
        .minimum()
        .ok_or_else(|| Error::InvalidParameter("empty composition".into()))?;

    // descending-card word and its rotations
    let mut descending: Vec<u8> = Vec::with_capacity(n);
    for v in (1..=k).rev() {
        descending.extend(std::iter::repeat(v as u8).take(composition[v - 1]));
    }
    let descending = CardState::new(descending)?;
    let rotations: BTreeSet<String> = (0..n)
        .map(|shift| {
            let cards: Vec<u8> = (0..n)
                .map(|i| descending.cards()[(i + shift) % n])
                .collect();
            CardState { cards }.to_string()
        })
        .collect();
    // Other states can tie with the rotations (already at N = 4 with
    // composition [1, 2, 1] the state 2123 has minimal probability too), so
    // the conjecture is read as containment.
    let min_set: BTreeSet<String> = min_states.iter().cloned().collect();
    let least_likely_are_reversed_speed_order = rotations.is_subset(&min_set);

    // Π C(N, s_i)^{-1} where s_i counts cards of class at least i. The
    // direction of the class order does not change the product (the counts
    // complement each other), but both readings are reported.
    let product_over = |counts: Vec<usize>| -> BigRational {
        let mut denom = BigUint::one();
        for s in counts {
            denom *= binomial(n, s);
        }
        BigRational::new(BigInt::one(), BigInt::from(denom))
    };
    let at_least: Vec<usize> = (1..=k)
        .map(|i| composition[i - 1..].iter().sum())
        .collect();
    let at_most: Vec<usize> = (1..=k)
        .map(|i| composition[..i].iter().sum())
        .collect();
    let minimum_product_readings = vec![
        MinimumProductReading {
            name: "classes counted from the slowest (value >= i)".into(),
            predicted: product_over(at_least.clone()),
            matches: product_over(at_least) == min_probability,
        },
        MinimumProductReading {
            name: "classes counted from the fastest (value <= i)".into(),
            predicted: product_over(at_most.clone()),
            matches: product_over(at_most) == min_probability,
        },
    ];

    let all_integer_multiples = dist
        .entries
        .values()
        .all(|p| (p / &min_probability).is_integer());

    Ok(ConjectureReport {
        n,
        composition: composition.to_vec(),
        state_count: dist.entries.len(),
        min_probability,
        min_states,
        least_likely_are_reversed_speed_order,
        minimum_product_readings,
        all_integer_multiples,
    })
}

/// All compositions of `n` into at most `max_classes` positive parts, each
/// part a class count (lowest class first).
pub fn compositions_up_to(n: usize, max_classes: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: usize, slots: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            if !current.is_empty() {
                out.push(current.clone());
            }
            return;
        }
        if slots == 0 {
            return;
        }
        for part in 1..=remaining {
            current.push(part);
            rec(remaining - part, slots - 1, current, out);
            current.pop();
        }
    }
    rec(n, max_classes, &mut current, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Naive multitype collapse candidates
// ---------------------------------------------------------------------------

/// A candidate multitype generalization of collapsing, as an exact
/// pushforward distribution over card states (digit keys).
#[derive(Clone, Debug)]
pub struct CollapseCandidate {
    pub name: String,
    pub distribution: ExactDistribution,
}

fn place_sliding(board: &mut [Option<u8>], class: u8, seeds: &[i64]) {
    let n = board.len();
    for &s in seeds {
        let mut pos = s as usize;
        while board[pos].is_some() {
            pos = (pos + n - 1) % n;
        }
        board[pos] = Some(class);
    }
}

fn candidate_pushforward(
    n: usize,
    subset_sizes: &[usize],
    build: impl Fn(&[Vec<i64>]) -> Vec<u8>,
) -> ExactDistribution {
    let choices: Vec<Vec<Vec<i64>>> = subset_sizes
        .iter()
        .map(|&size| combinations(n, size))
        .collect();
    let mut counts: BTreeMap<String, u64> = BTreeMap::new();
    let mut total = 0u64;
    let mut picks: Vec<Vec<i64>> = vec![Vec::new(); choices.len()];
    fn rec(
        level: usize,
        choices: &[Vec<Vec<i64>>],
        picks: &mut Vec<Vec<i64>>,
        counts: &mut BTreeMap<String, u64>,
        total: &mut u64,
        build: &impl Fn(&[Vec<i64>]) -> Vec<u8>,
    ) {
        if level == choices.len() {
            let word = build(picks);
            let key: String = word.iter().map(|c| char::from(b'0' + c)).collect();
            *counts.entry(key).or_insert(0) += 1;
            *total += 1;
            return;
        }
        for choice in &choices[level] {
            picks[level] = choice.clone();
            rec(level + 1, choices, picks, counts, total, build);
        }
    }
    rec(0, &choices, &mut picks, &mut counts, &mut total, &build);
    let denom = BigInt::from(total);
    ExactDistribution::new(
        counts
            .into_iter()
            .map(|(k, c)| (k, BigRational::new(BigInt::from(c), denom.clone())))
            .collect(),
    )
}

/// The obvious repeated-collapse generalizations to more than three card
/// classes, evaluated as exact pushforwards. For three classes the first
/// candidate coincides with the true procedure; with four distinct cards
/// every candidate fails to match the exact stationary law.
pub fn naive_multitype_candidates(composition: &[usize]) -> Result<Vec<CollapseCandidate>> {
    let n: usize = composition.iter().sum();
    let k = composition.len();
    if k < 3 {
        return Err(Error::InvalidParameter(
            "repeated collapse needs at least three classes".into(),
        ));
    }

    // lowest class fixed, higher classes slide left from fastest down,
    // class 2 fills the remainder — the direct generalization of the
    // three-type procedure
    let sizes_a: Vec<usize> = std::iter::once(composition[0])
        .chain((3..=k).rev().map(|v| composition[v - 1]))
        .collect();
    let dist_a = candidate_pushforward(n, &sizes_a, |picks| {
        let mut board: Vec<Option<u8>> = vec![None; n];
        for &t in &picks[0] {
            board[t as usize] = Some(1);
        }
        for (offset, v) in (3..=k).rev().enumerate() {
            place_sliding(&mut board, v as u8, &picks[offset + 1]);
        }
        board
            .into_iter()
            .map(|c| c.unwrap_or(2))
            .collect()
    });

    // same, but the sliding classes are processed from the slowest up
    let sizes_b: Vec<usize> = std::iter::once(composition[0])
        .chain((3..=k).map(|v| composition[v - 1]))
        .collect();
    let dist_b = candidate_pushforward(n, &sizes_b, |picks| {
        let mut board: Vec<Option<u8>> = vec![None; n];
        for &t in &picks[0] {
            board[t as usize] = Some(1);
        }
        for (offset, v) in (3..=k).enumerate() {
            place_sliding(&mut board, v as u8, &picks[offset + 1]);
        }
        board
            .into_iter()
            .map(|c| c.unwrap_or(2))
            .collect()
    });

    // nothing fixed: every class above the lowest slides left, the lowest
    // fills the remainder
    let sizes_c: Vec<usize> = (2..=k).rev().map(|v| composition[v - 1]).collect();
    let dist_c = candidate_pushforward(n, &sizes_c, |picks| {
        let mut board: Vec<Option<u8>> = vec![None; n];
        for (offset, v) in (2..=k).rev().enumerate() {
            place_sliding(&mut board, v as u8, &picks[offset]);
        }
        board
            .into_iter()
            .map(|c| c.unwrap_or(1))
            .collect()
    });

    Ok(vec![
        CollapseCandidate {
            name: "fix lowest, slide higher classes fastest-first".into(),
            distribution: dist_a,
        },
        CollapseCandidate {
            name: "fix lowest, slide higher classes slowest-first".into(),
            distribution: dist_b,
        },
        CollapseCandidate {
            name: "slide every class fastest-first, lowest fills".into(),
            distribution: dist_c,
        },
    ])
}
