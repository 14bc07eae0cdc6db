//! Binary sequences, the domination order and the weight `W(A)`.
//!
//! A sequence `A` dominates `B` when `B` can be reached from `A` by moving
//! `1`s to the right; equivalently both have the same length and total number
//! of ones and every prefix of `A` contains at least as many ones as the same
//! prefix of `B`. The weight `W(A)` counts the sequences dominated by `A` and
//! is the basic quantity in the stationary measure of the cycle: each binary
//! segment of a state contributes a factor `W(A_i)`.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigUint;
use num::{One, Zero};

use crate::{Error, Result};

/// Maximum length accepted by [`BinarySequence::enumerate_dominated`].
pub const ENUMERATION_LIMIT: usize = 20;

/// A finite word over `{0, 1}`.
///
/// The empty sequence is valid and distinct from every nonempty one.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinarySequence {
    bits: Vec<u8>,
}

impl BinarySequence {
    /// Builds a sequence from raw bits; every entry must be 0 or 1.
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if let Some(&b) = bits.iter().find(|&&b| b > 1) {
            return Err(Error::BadSequenceChar((b'0' + b) as char));
        }
        Ok(BinarySequence { bits })
    }

    /// The empty sequence.
    pub fn empty() -> Self {
        BinarySequence { bits: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Number of ones among the first `i` entries; `prefix_ones(0) = 0`.
    ///
    /// Panics if `i > len`.
    pub fn prefix_ones(&self, i: usize) -> usize {
        assert!(
            i <= self.bits.len(),
            "prefix index {i} out of range for length {}",
            self.bits.len()
        );
        self.bits[..i].iter().map(|&b| b as usize).sum()
    }

    /// Total number of ones.
    pub fn ones(&self) -> usize {
        self.prefix_ones(self.bits.len())
    }

    /// Whether `self` dominates `other`: same length, same number of ones,
    /// and every prefix of `self` has at least as many ones.
    pub fn dominates(&self, other: &BinarySequence) -> bool {
        if self.bits.len() != other.bits.len() {
            return false;
        }
        let mut a = 0usize;
        let mut b = 0usize;
        for (&x, &y) in self.bits.iter().zip(&other.bits) {
            a += x as usize;
            b += y as usize;
            if a < b {
                return false;
            }
        }
        a == b
    }

    /// The weight `W(A)`: the number of sequences dominated by `A`.
    ///
    /// Computed by a dynamic program over (position, ones placed so far); a
    /// candidate prefix with `j` ones is viable at position `i` exactly when
    /// `j <= prefix_ones(i)`. Arbitrary precision: the weights reach binomial
    /// scale and overflow machine integers near length 60.
    pub fn weight(&self) -> BigUint {
        let k = self.ones();
        // dp[j] = number of viable prefixes with j ones at the current position
        let mut dp = vec![BigUint::zero(); k + 1];
        dp[0] = BigUint::one();
        let mut cap = 0usize;
        for &bit in &self.bits {
            cap += bit as usize;
            let top = cap.min(k);
            for j in (1..=top).rev() {
                let (lo, hi) = dp.split_at_mut(j);
                hi[0] += &lo[j - 1];
            }
            for v in dp.iter_mut().skip(top + 1) {
                v.set_zero();
            }
        }
        dp[k].clone()
    }

    /// Brute-force oracle for [`weight`](Self::weight): the explicit set of
    /// dominated sequences. Guarded to length 20.
    pub fn enumerate_dominated(&self) -> Result<Vec<BinarySequence>> {
        if self.len() > ENUMERATION_LIMIT {
            return Err(Error::TooLarge {
                what: "sequence length",
                got: self.len(),
                limit: ENUMERATION_LIMIT,
            });
        }
        let k = self.ones();
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(self.len());
        self.enumerate_rec(0, 0, k, &mut prefix, &mut out);
        Ok(out)
    }

    fn enumerate_rec(
        &self,
        i: usize,
        ones: usize,
        total: usize,
        prefix: &mut Vec<u8>,
        out: &mut Vec<BinarySequence>,
    ) {
        if i == self.len() {
            if ones == total {
                out.push(BinarySequence {
                    bits: prefix.clone(),
                });
            }
            return;
        }
        let cap = self.prefix_ones(i + 1);
        prefix.push(0);
        self.enumerate_rec(i + 1, ones, total, prefix, out);
        prefix.pop();
        if ones + 1 <= cap {
            prefix.push(1);
            self.enumerate_rec(i + 1, ones + 1, total, prefix, out);
            prefix.pop();
        }
    }

    /// The terms of the weight recursion
    /// `W(A) = W(X)·[A = X0] + W(Y)·[A = 1Y] + Σ W(X)W(Y)` with one summand
    /// per factorization `A = X·01·Y`.
    pub fn weight_identity_terms(&self) -> Result<IdentityTerms> {
        if self.is_empty() {
            return Err(Error::EmptySequence);
        }
        let n = self.len();
        let drop_last_zero = (self.bits[n - 1] == 0).then(|| BinarySequence {
            bits: self.bits[..n - 1].to_vec(),
        });
        let drop_first_one = (self.bits[0] == 1).then(|| BinarySequence {
            bits: self.bits[1..].to_vec(),
        });
        let splits = self
            .factor_positions(&[0, 1])
            .into_iter()
            .map(|i| {
                (
                    BinarySequence {
                        bits: self.bits[..i].to_vec(),
                    },
                    BinarySequence {
                        bits: self.bits[i + 2..].to_vec(),
                    },
                )
            })
            .collect();
        Ok(IdentityTerms {
            drop_last_zero,
            drop_first_one,
            splits,
        })
    }

    /// Start indices of every occurrence of `pattern` as a factor.
    pub fn factor_positions(&self, pattern: &[u8]) -> Vec<usize> {
        if pattern.is_empty() || self.len() < pattern.len() {
            return Vec::new();
        }
        (0..=self.len() - pattern.len())
            .filter(|&i| &self.bits[i..i + pattern.len()] == pattern)
            .collect()
    }

    /// The sequences reachable from `self` in one segment rewrite: removing
    /// an initial `0`, removing a terminating `1`, or replacing a `10` by
    /// `01`. These mirror the edge moves of a state restricted to one binary
    /// segment. The count is always one more than the number of `01` factors
    /// for nonempty input.
    pub fn transitions_out(&self) -> Vec<BinarySequence> {
        let mut out = Vec::new();
        let n = self.len();
        if n == 0 {
            return out;
        }
        if self.bits[0] == 0 {
            out.push(BinarySequence {
                bits: self.bits[1..].to_vec(),
            });
        }
        if self.bits[n - 1] == 1 {
            out.push(BinarySequence {
                bits: self.bits[..n - 1].to_vec(),
            });
        }
        for i in self.factor_positions(&[1, 0]) {
            let mut bits = self.bits.clone();
            bits.swap(i, i + 1);
            out.push(BinarySequence { bits });
        }
        out
    }

    /// The in-flow terms of the segment flow identity: the sequences `B`
    /// whose weight feeds the mass arriving at `self`. `B` is obtained from
    /// `self` by removing an initial `1`, removing a terminating `0`, or
    /// replacing a `01` by `10`. (The first two are shorter: at state level
    /// the removed symbol belongs to a neighboring segment before the move.)
    pub fn transitions_in(&self) -> Vec<BinarySequence> {
        let mut out = Vec::new();
        let n = self.len();
        if n == 0 {
            return out;
        }
        if self.bits[0] == 1 {
            out.push(BinarySequence {
                bits: self.bits[1..].to_vec(),
            });
        }
        if self.bits[n - 1] == 0 {
            out.push(BinarySequence {
                bits: self.bits[..n - 1].to_vec(),
            });
        }
        for i in self.factor_positions(&[0, 1]) {
            let mut bits = self.bits.clone();
            bits.swap(i, i + 1);
            out.push(BinarySequence { bits });
        }
        out
    }

    /// Checks the flow identity `Σ_{B → A} W(B) = W(A) · #(A → C)` for this
    /// segment. Holds for every nonempty sequence; the empty sequence is the
    /// known degenerate case (its nominal out-count formula reads 1 while no
    /// rewrite applies) and reports `false`.
    pub fn flow_balanced(&self) -> bool {
        if self.is_empty() {
            return false;
        }
        let inflow: BigUint = self.transitions_in().iter().map(|b| b.weight()).sum();
        let outflow = self.weight() * BigUint::from(self.transitions_out().len());
        inflow == outflow
    }
}

impl fmt::Display for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for BinarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self)
    }
}

impl FromStr for BinarySequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                other => Err(Error::BadSequenceChar(other)),
            })
            .collect::<Result<Vec<u8>>>()
            .map(|bits| BinarySequence { bits })
    }
}

/// Decomposition produced by [`BinarySequence::weight_identity_terms`].
#[derive(Clone, Debug)]
pub struct IdentityTerms {
    /// `X` when `A = X·0`.
    pub drop_last_zero: Option<BinarySequence>,
    /// `Y` when `A = 1·Y`.
    pub drop_first_one: Option<BinarySequence>,
    /// One `(X, Y)` per factorization `A = X·01·Y`.
    pub splits: Vec<(BinarySequence, BinarySequence)>,
}

impl IdentityTerms {
    /// Evaluates the right-hand side of the recursion; equals `W(A)`.
    pub fn total(&self) -> BigUint {
        let mut total = BigUint::zero();
        if let Some(x) = &self.drop_last_zero {
            total += x.weight();
        }
        if let Some(y) = &self.drop_first_one {
            total += y.weight();
        }
        for (x, y) in &self.splits {
            total += x.weight() * y.weight();
        }
        total
    }
}
