//! The collapsing procedure on the cycle and on finite windows of the line.
//!
//! A pair of position sets `(S, T)` collapses to a state as follows:
//! anti-particles are placed exactly at `T`; then each seed in `S` is
//! processed, placing a particle at the seed if that site is empty and
//! otherwise at the nearest empty site to its left. The result does not
//! depend on the processing order. Equivalently, a site `a ∉ T` ends up with
//! a particle iff some interval `I = [a, b]` satisfies
//! `|I ∩ S| + |I ∩ T| ≥ |I|`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Occupancy of a single site.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Site {
    /// `'0'` — moves left under the dynamics.
    Anti,
    /// `'*'`.
    Empty,
    /// `'1'` — moves right under the dynamics.
    Particle,
}

impl Site {
    pub fn symbol(self) -> char {
        match self {
            Site::Particle => '1',
            Site::Empty => '*',
            Site::Anti => '0',
        }
    }

    pub fn from_symbol(c: char) -> Result<Self> {
        match c {
            '1' => Ok(Site::Particle),
            '*' => Ok(Site::Empty),
            '0' => Ok(Site::Anti),
            other => Err(Error::BadStateChar(other)),
        }
    }
}

/// A state of the three-type process on the cycle `Z_N`, index 0 leftmost.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleState {
    sites: Vec<Site>,
}

impl CycleState {
    pub fn new(sites: Vec<Site>) -> Self {
        CycleState { sites }
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn sites(&self) -> &[Site] {
        &self.sites
    }

    pub fn count(&self, kind: Site) -> usize {
        self.sites.iter().filter(|&&s| s == kind).count()
    }

    /// Cyclic rotation moving the cut point `shift` sites to the right.
    pub fn rotated(&self, shift: usize) -> CycleState {
        let n = self.sites.len();
        CycleState {
            sites: (0..n).map(|i| self.sites[(i + shift) % n]).collect(),
        }
    }

    /// Reverses the site order and swaps particles with anti-particles.
    /// This is the symmetry that conjugates the primal and dual collapse.
    pub fn charge_reversed(&self) -> CycleState {
        CycleState {
            sites: self
                .sites
                .iter()
                .rev()
                .map(|s| match s {
                    Site::Particle => Site::Anti,
                    Site::Empty => Site::Empty,
                    Site::Anti => Site::Particle,
                })
                .collect(),
        }
    }
}

impl fmt::Display for CycleState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sites {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycleState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self)
    }
}

impl FromStr for CycleState {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(Site::from_symbol)
            .collect::<Result<Vec<Site>>>()
            .map(CycleState::new)
    }
}

/// The input to collapsing: seed positions `S` and anti-particle sites `T`.
/// The two sets may intersect. Positions are interpreted by the geometry of
/// the operation they are fed to (`0..N` on the cycle, absolute coordinates
/// on a line window).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SitePair {
    pub seeds: BTreeSet<i64>,
    pub anti: BTreeSet<i64>,
}

impl SitePair {
    pub fn new<S, T>(seeds: S, anti: T) -> Self
    where
        S: IntoIterator<Item = i64>,
        T: IntoIterator<Item = i64>,
    {
        SitePair {
            seeds: seeds.into_iter().collect(),
            anti: anti.into_iter().collect(),
        }
    }
}

fn check_cycle_pair(pair: &SitePair, n: usize) -> Result<()> {
    for &p in pair.seeds.iter().chain(&pair.anti) {
        if p < 0 || p >= n as i64 {
            return Err(Error::OutOfRange { pos: p });
        }
    }
    let occupied = pair.seeds.len() + pair.anti.len();
    if occupied > n {
        return Err(Error::Capacity { occupied, n });
    }
    Ok(())
}

/// Collapses `(S, T)` on the cycle `Z_N`. Seeds are processed in ascending
/// order; the result is order-independent.
pub fn collapse_cycle(pair: &SitePair, n: usize) -> Result<CycleState> {
    let order: Vec<i64> = pair.seeds.iter().copied().collect();
    collapse_cycle_in_order(pair, n, &order)
}

/// As [`collapse_cycle`] but processing the seeds in the given order. The
/// result never depends on the order; this entry point exists so that claim
/// can be tested rather than assumed.
pub fn collapse_cycle_in_order(pair: &SitePair, n: usize, order: &[i64]) -> Result<CycleState> {
    check_cycle_pair(pair, n)?;
    let ordered: BTreeSet<i64> = order.iter().copied().collect();
    if order.len() != pair.seeds.len() || ordered != pair.seeds {
        return Err(Error::InvalidParameter(
            "processing order must be a permutation of the seed set".into(),
        ));
    }
    let mut sites = vec![Site::Empty; n];
    for &t in &pair.anti {
        sites[t as usize] = Site::Anti;
    }
    for &s in order {
        let mut pos = s as usize;
        // |S| + |T| <= N guarantees an empty site within one lap
        while sites[pos] != Site::Empty {
            pos = (pos + n - 1) % n;
        }
        sites[pos] = Site::Particle;
    }
    Ok(CycleState::new(sites))
}

/// The dual procedure: particles are fixed at `S` and each anti-particle
/// seed slides right to the nearest empty site. Its pushforward equals the
/// charge-and-direction reversal of the primal collapse.
pub fn dual_collapse_cycle(pair: &SitePair, n: usize) -> Result<CycleState> {
    check_cycle_pair(pair, n)?;
    let mut sites = vec![Site::Empty; n];
    for &s in &pair.seeds {
        sites[s as usize] = Site::Particle;
    }
    for &t in &pair.anti {
        let mut pos = t as usize;
        while sites[pos] != Site::Empty {
            pos = (pos + 1) % n;
        }
        sites[pos] = Site::Anti;
    }
    Ok(CycleState::new(sites))
}

/// Result of collapsing on a finite window `[lo, hi]` of the line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowState {
    pub lo: i64,
    pub sites: Vec<Site>,
}

impl WindowState {
    pub fn site(&self, pos: i64) -> Site {
        self.sites[(pos - self.lo) as usize]
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.sites.len() as i64 - 1
    }
}

impl fmt::Display for WindowState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.sites {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

/// Collapses on the window `[lo, hi]` without wraparound. A seed whose
/// leftward scan exhausts the window is dropped, matching the rule on the
/// full line where a seed with no empty site to its left is disregarded.
pub fn collapse_line_window(pair: &SitePair, lo: i64, hi: i64) -> Result<WindowState> {
    Ok(collapse_line_window_traced(pair, lo, hi)?.0)
}

/// Per-seed placement record: the seed position and where its particle
/// landed (`None` if the seed was dropped at the window boundary).
pub type Placement = (i64, Option<i64>);

/// As [`collapse_line_window`], additionally reporting where each seed
/// landed. Used by the displacement-tail experiment.
pub fn collapse_line_window_traced(
    pair: &SitePair,
    lo: i64,
    hi: i64,
) -> Result<(WindowState, Vec<Placement>)> {
    if lo > hi {
        return Err(Error::InvalidParameter(format!(
            "window [{lo}, {hi}] is empty"
        )));
    }
    for &p in pair.seeds.iter().chain(&pair.anti) {
        if p < lo || p > hi {
            return Err(Error::OutOfRange { pos: p });
        }
    }
    let width = (hi - lo + 1) as usize;
    let mut sites = vec![Site::Empty; width];
    for &t in &pair.anti {
        sites[(t - lo) as usize] = Site::Anti;
    }
    let mut placements = Vec::with_capacity(pair.seeds.len());
    for &s in &pair.seeds {
        let mut pos = s;
        let landed = loop {
            if pos < lo {
                break None;
            }
            if sites[(pos - lo) as usize] == Site::Empty {
                sites[(pos - lo) as usize] = Site::Particle;
                break Some(pos);
            }
            pos -= 1;
        };
        placements.push((s, landed));
    }
    Ok((WindowState { lo, sites }, placements))
}

/// Interval criterion on the cycle: site `pos` holds a particle iff
/// `pos ∉ T` and some cyclic interval `I = [pos, b]` of length at most `N`
/// satisfies `|I ∩ S| + |I ∩ T| ≥ |I|`.
pub fn particle_criterion_cycle(pos: i64, pair: &SitePair, n: usize) -> Result<bool> {
    check_cycle_pair(pair, n)?;
    if pos < 0 || pos >= n as i64 {
        return Err(Error::OutOfRange { pos });
    }
    if pair.anti.contains(&pos) {
        return Ok(false);
    }
    let mut hits = 0usize;
    for len in 1..=n {
        let b = (pos + len as i64 - 1).rem_euclid(n as i64);
        if pair.seeds.contains(&b) {
            hits += 1;
        }
        if pair.anti.contains(&b) {
            hits += 1;
        }
        if hits >= len {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Interval criterion on the window `[lo, hi]`: intervals `[pos, b]` are
/// taken within the window.
pub fn particle_criterion_line(pos: i64, pair: &SitePair, lo: i64, hi: i64) -> Result<bool> {
    if pos < lo || pos > hi {
        return Err(Error::OutOfRange { pos });
    }
    if pair.anti.contains(&pos) {
        return Ok(false);
    }
    let mut hits = 0usize;
    for b in pos..=hi {
        if pair.seeds.contains(&b) {
            hits += 1;
        }
        if pair.anti.contains(&b) {
            hits += 1;
        }
        if hits >= (b - pos + 1) as usize {
            return Ok(true);
        }
    }
    Ok(false)
}
