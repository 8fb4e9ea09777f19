//! Exact computation of the new depth (`ndepth`) of the poset of nonempty
//! submultisets of a multiset, together with closed forms for up to five
//! distinct elements, brute-force oracles, and a checker for partition
//! certificates.
//!
//! A multiset with multiplicities `(n_1, ..., n_k)` is a [`WeightVector`].
//! Its optimal interval partitions can always be taken to be *good*, i.e.
//! described by an interval partition of the boolean lattice `B_k \ {∅}`
//! ([`GoodPartition`]); the depth of the top `s(y)` is the weight of the mask
//! `y`.

pub mod certificates;
pub mod error;
pub mod formulas;
pub mod lattice;
pub mod oracle;
pub mod solver;

pub use error::{Error, Result};
pub use lattice::{GoodPartition, Interval, SubsetMask, WeightVector};
