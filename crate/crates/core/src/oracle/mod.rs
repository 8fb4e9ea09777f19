//! Independent machinery used to cross-check the solver and the closed
//! forms: exhaustive enumeration of good partitions, max-min formula
//! derivation, and a brute force over every interval partition of the full
//! multiset poset.

mod enumerate;
mod formula;
mod full_poset;

pub use enumerate::{derive_formula, enumerate_good_partitions, raw_formula, MAX_ENUMERATION_ARITY};
pub use formula::{suffix_dominates, IndexSet, MaxMinFormula, MinTerm};
pub use full_poset::{
    enumerate_full_partitions, full_poset_ndepth, induce_to_masks, is_full_partition,
    lift_good_partition, GeneralInterval, GeneralPoint, MAX_FULL_POSET,
};

use crate::formulas::sorted_grid;
use crate::lattice::WeightVector;

/// Result of comparing two evaluators on every sorted grid point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridAgreement {
    pub points: usize,
    /// First disagreeing point with both values, if any.
    pub mismatch: Option<(WeightVector, u64, u64)>,
}

impl GridAgreement {
    pub fn agrees(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares `lhs` and `rhs` on all sorted vectors with entries in
/// `1..=max_entry`.
pub fn grid_agreement(
    k: usize,
    max_entry: u64,
    lhs: impl Fn(&WeightVector) -> u64,
    rhs: impl Fn(&WeightVector) -> u64,
) -> GridAgreement {
    let grid = sorted_grid(k, max_entry);
    let mismatch = grid.iter().find_map(|w| {
        let (a, b) = (lhs(w), rhs(w));
        (a != b).then(|| (w.clone(), a, b))
    });
    GridAgreement { points: grid.len(), mismatch }
}
