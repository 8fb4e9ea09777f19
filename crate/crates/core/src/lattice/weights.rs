use std::fmt;

use super::mask::{check_arity, SubsetMask};
use crate::error::{Error, Result};

/// Per-coordinate cap keeping every subset sum inside `u64`.
pub const MAX_WEIGHT: u64 = 1 << 40;

/// Multiplicities `(n_1, ..., n_k)` of the multiset `S`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    weights: Vec<u64>,
    canonical: bool,
}

impl WeightVector {
    pub fn new(weights: Vec<u64>) -> Result<Self> {
        check_arity(weights.len())?;
        for (index, &value) in weights.iter().enumerate() {
            if value == 0 {
                return Err(Error::ZeroWeight { index: index + 1, value });
            }
            if value > MAX_WEIGHT {
                return Err(Error::WeightTooLarge { index: index + 1 });
            }
        }
        let canonical = weights.windows(2).all(|p| p[0] <= p[1]);
        Ok(WeightVector { weights, canonical })
    }

    /// `k` copies of `n`.
    pub fn uniform(n: u64, k: usize) -> Result<Self> {
        Self::new(vec![n; k])
    }

    pub fn arity(&self) -> usize {
        self.weights.len()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.weights
    }

    /// Whether the entries are nondecreasing.
    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    /// `n_i` for a 1-based coordinate.
    pub fn get(&self, i: usize) -> u64 {
        self.weights[i - 1]
    }

    pub fn total(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// `<I>` for a list of 1-based coordinates.
    pub fn angle(&self, coords: &[usize]) -> u64 {
        coords.iter().map(|&i| self.get(i)).sum()
    }

    /// Weight of every mask, indexed by its bit pattern.
    pub fn subset_weights(&self) -> Vec<u64> {
        let k = self.arity();
        let mut table = vec![0u64; 1 << k];
        for bits in 1usize..1 << k {
            let low = bits.trailing_zeros() as usize;
            table[bits] = table[bits & (bits - 1)] + self.weights[k - 1 - low];
        }
        table
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightVector{:?}", self.weights)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.weights.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// Depth of `s(mask)` in the multiset poset: `sum of n_i over i in mask`.
pub fn weight_of(mask: SubsetMask, w: &WeightVector) -> Result<u64> {
    if mask.arity() != w.arity() {
        return Err(Error::ArityMismatch { expected: w.arity(), found: mask.arity() });
    }
    Ok(mask.coords().into_iter().map(|i| w.get(i)).sum())
}
