//! Masks, weights, good intervals and good partitions of `B_k \ {∅}`.

mod interval;
mod mask;
mod partition;
mod weights;

pub use interval::{interval_cardinality, interval_contains, Interval};
pub use mask::{mask_depth, SubsetMask, MAX_ARITY};
pub use partition::{
    check_singleton_tops, lemma1_check, parse_interval_list, partition_ndepth, validate_good_partition,
    validate_mask_pairs, GoodPartition, LemmaOutcome, ValidationReport,
};
pub use weights::{weight_of, WeightVector, MAX_WEIGHT};

/// Builds a random valid partition by repeatedly giving the smallest
/// uncovered mask a top chosen by `pick(n)`, which must return a value
/// below `n`.
pub fn random_partition(k: usize, mut pick: impl FnMut(usize) -> usize) -> crate::Result<GoodPartition> {
    mask::SubsetMask::full(k)?;
    let n = 1usize << k;
    let mut covered = vec![false; n];
    covered[0] = true;
    let mut intervals = Vec::new();
    while let Some(x) = covered.iter().position(|c| !c) {
        let x = x as u32;
        let free = (n as u32 - 1) & !x;
        let mut options = Vec::new();
        // supersets of x
        let mut sub = 0u32;
        loop {
            let y = x | sub;
            let iv = Interval::new(SubsetMask::from_raw(x, k), SubsetMask::from_raw(y, k))?;
            if iv.members().all(|z| !covered[z.bits() as usize]) {
                options.push(iv);
            }
            sub = sub.wrapping_sub(free) & free;
            if sub == 0 {
                break;
            }
        }
        let iv = options[pick(options.len())];
        for z in iv.members() {
            covered[z.bits() as usize] = true;
        }
        intervals.push(iv);
    }
    Ok(GoodPartition::from_trusted(k, intervals))
}

/// Members of `[x, y]` as a bitset over mask values; requires `k <= 6`.
#[inline]
pub(crate) fn narrow_interval_set(x: u32, y: u32) -> u64 {
    let mut set = 1u64 << x;
    let mut free = y & !x;
    while free != 0 {
        let b = free.trailing_zeros();
        set |= set << (1u32 << b);
        free &= free - 1;
    }
    set
}
