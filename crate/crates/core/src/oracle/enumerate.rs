use std::collections::HashSet;

use super::formula::{MaxMinFormula, MinTerm};
use crate::error::{Error, Result};
use crate::lattice::{narrow_interval_set, Interval, SubsetMask};

/// Largest arity for which exhaustive enumeration is allowed.
pub const MAX_ENUMERATION_ARITY: usize = 4;

fn check_enumerable(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::BadArity(0));
    }
    if k > MAX_ENUMERATION_ARITY {
        return Err(Error::Resource(format!(
            "enumerating all partitions for k = {k} is infeasible (limit {MAX_ENUMERATION_ARITY}); \
             use the exact solver for individual weight vectors instead"
        )));
    }
    Ok(())
}

/// Visits every interval partition of `B_k \ {∅}` exactly once and returns
/// how many there are.
///
/// Partitions are produced in canonical order: the smallest uncovered mask
/// is always the next bottom and its tops are tried in increasing order.
pub fn enumerate_good_partitions(k: usize, mut visitor: impl FnMut(&[Interval])) -> Result<u64> {
    check_enumerable(k)?;
    let full: u64 = (1u64 << (1u32 << k)) - 1;
    let mut stack = Vec::with_capacity(1 << k);
    let mut count = 0;
    walk(k, 1, full, &mut stack, &mut count, &mut visitor);
    Ok(count)
}

fn walk(
    k: usize,
    covered: u64,
    full: u64,
    stack: &mut Vec<Interval>,
    count: &mut u64,
    visitor: &mut impl FnMut(&[Interval]),
) {
    if covered == full {
        *count += 1;
        visitor(stack);
        return;
    }
    let x = (!covered).trailing_zeros();
    let universe = (1u32 << k) - 1;
    let free = universe & !x;
    // supersets of x in increasing order
    let mut sub = 0u32;
    loop {
        let y = x | sub;
        let set = narrow_interval_set(x, y);
        if set & covered == 0 {
            stack.push(Interval::new(SubsetMask::from_raw(x, k), SubsetMask::from_raw(y, k)).unwrap());
            walk(k, covered | set, full, stack, count, visitor);
            stack.pop();
        }
        sub = sub.wrapping_sub(free) & free;
        if sub == 0 {
            break;
        }
    }
}

/// Derives `ndepth` as a max-min formula over sorted weights by collecting
/// the tops of every partition, then simplifying with suffix dominance.
pub fn derive_formula(k: usize) -> Result<MaxMinFormula> {
    check_enumerable(k)?;
    let mut seen: HashSet<MinTerm> = HashSet::new();
    enumerate_good_partitions(k, |ivs| {
        let term = MinTerm::new(ivs.iter().map(Interval::top).collect()).expect("tops are nonempty");
        seen.insert(term.reduced());
    })?;
    Ok(MaxMinFormula::from_terms(k, seen.into_iter().collect())?.reduced())
}

/// Every distinct top set, unreduced: the formula whose value is `ndepth`
/// by definition.
pub fn raw_formula(k: usize) -> Result<MaxMinFormula> {
    check_enumerable(k)?;
    let mut seen: HashSet<MinTerm> = HashSet::new();
    enumerate_good_partitions(k, |ivs| {
        seen.insert(MinTerm::new(ivs.iter().map(Interval::top).collect()).expect("tops are nonempty"));
    })?;
    MaxMinFormula::from_terms(k, seen.into_iter().collect())
}
