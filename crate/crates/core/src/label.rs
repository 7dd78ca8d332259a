//! Binary label vectors and their dominant label.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A fixed-length binary assignment. Index 0 is the leftmost character in
/// the textual form and the most significant bit in the mask form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelVector {
    bits: Vec<bool>,
}

impl LabelVector {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Parameter("label vector must have length >= 1".into()));
        }
        Ok(LabelVector { bits })
    }

    /// Builds a vector from 0/1 integers; any other value is rejected.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        let bits = bits
            .iter()
            .map(|&b| match b {
                0 => Ok(false),
                1 => Ok(true),
                other => Err(Error::Parameter(format!("label value {other} is not 0 or 1"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits)
    }

    /// Decodes the low `k` bits of `mask`, node 0 taken from bit `k - 1`.
    pub fn from_mask(mask: u64, k: usize) -> Result<Self> {
        if k == 0 || k > 64 {
            return Err(Error::Parameter(format!("mask length {k} outside 1..=64")));
        }
        Ok(LabelVector { bits: (0..k).map(|i| (mask >> (k - 1 - i)) & 1 == 1).collect() })
    }

    /// Inverse of [`LabelVector::from_mask`]; `None` when longer than 64.
    pub fn to_mask(&self) -> Option<u64> {
        if self.bits.len() > 64 {
            return None;
        }
        Some(self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
    }

    pub fn zeros(k: usize) -> Result<Self> {
        Self::new(vec![false; k])
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn as_slice(&self) -> &[bool] {
        &self.bits
    }

    pub fn iter(&self) -> impl Iterator<Item = bool> + '_ {
        self.bits.iter().copied()
    }

    /// `(n0, n1)`.
    pub fn counts(&self) -> (usize, usize) {
        let ones = self.bits.iter().filter(|&&b| b).count();
        (self.bits.len() - ones, ones)
    }

    pub fn complement(&self) -> LabelVector {
        LabelVector { bits: self.bits.iter().map(|b| !b).collect() }
    }

    /// The sub-vector at `indices`, in that order.
    pub fn restrict(&self, indices: &[usize]) -> Result<LabelVector> {
        let bits = indices
            .iter()
            .map(|&i| {
                self.bits
                    .get(i)
                    .copied()
                    .ok_or(Error::Range { index: i, max: self.bits.len() - 1 })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits)
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &LabelVector) -> bool {
        self.len() == other.len() && self.iter().zip(other.iter()).all(|(a, b)| !a || b)
    }
}

impl fmt::Display for LabelVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for LabelVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parameter(format!("invalid label character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits)
    }
}

/// Which label holds the strict majority, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Majority {
    Zero,
    One,
    Tie,
}

impl Majority {
    pub fn from_counts(n0: usize, n1: usize) -> Majority {
        match n0.cmp(&n1) {
            std::cmp::Ordering::Greater => Majority::Zero,
            std::cmp::Ordering::Less => Majority::One,
            std::cmp::Ordering::Equal => Majority::Tie,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Majority::Zero => "0",
            Majority::One => "1",
            Majority::Tie => "tie",
        }
    }
}

/// Dominant label together with the counts `(n0, n1)` it was decided from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dominant {
    pub majority: Majority,
    pub n0: usize,
    pub n1: usize,
}

pub fn dominant_label(x: &LabelVector) -> Dominant {
    let (n0, n1) = x.counts();
    Dominant { majority: Majority::from_counts(n0, n1), n0, n1 }
}

/// Number of coordinates disagreeing with the dominant label, `min(n0, n1)`.
/// On a tie both labels give the same count, so this is always defined.
pub fn deviation(x: &LabelVector) -> usize {
    let (n0, n1) = x.counts();
    n0.min(n1)
}

#[inline]
pub(crate) fn deviation_from_ones(ones: usize, k: usize) -> usize {
    ones.min(k - ones)
}
