//! Brute force over *all* interval partitions of `L_S \ 0`, not only the
//! good ones. Only tiny instances are accepted.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{GoodPartition, Interval, SubsetMask, WeightVector};

/// Largest number of poset elements (`prod(n_i + 1) - 1`) accepted.
pub const MAX_FULL_POSET: usize = 20;

/// A submultiset `(x_1, ..., x_k)` with `0 <= x_i <= n_i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralPoint {
    pub coords: Vec<u64>,
}

impl GeneralPoint {
    pub fn depth(&self) -> u64 {
        self.coords.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn leq(&self, other: &GeneralPoint) -> bool {
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }
}

impl fmt::Debug for GeneralPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GeneralInterval {
    pub bottom: GeneralPoint,
    pub top: GeneralPoint,
}

impl GeneralInterval {
    pub fn new(bottom: GeneralPoint, top: GeneralPoint) -> Result<Self> {
        if bottom.coords.len() != top.coords.len() {
            return Err(Error::ArityMismatch { expected: bottom.coords.len(), found: top.coords.len() });
        }
        if bottom.is_zero() {
            return Err(Error::EmptyBottom);
        }
        if !bottom.leq(&top) {
            return Err(Error::BottomNotInTop {
                bottom: format!("{bottom:?}"),
                top: format!("{top:?}"),
            });
        }
        Ok(GeneralInterval { bottom, top })
    }

    pub fn contains(&self, z: &GeneralPoint) -> bool {
        self.bottom.leq(z) && z.leq(&self.top)
    }
}

impl fmt::Debug for GeneralInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?},{:?}]", self.bottom, self.top)
    }
}

/// The product of chains `L_S` with points indexed in mixed radix, so that
/// `a <= b` componentwise implies `index(a) <= index(b)`.
struct ChainProduct {
    points: Vec<GeneralPoint>,
    /// `sets[a][b]`: bitset of `[a, b]`, or 0 when `a` is not below `b`.
    sets: Vec<Vec<u32>>,
}

impl ChainProduct {
    fn new(w: &WeightVector) -> Result<Self> {
        let size: u128 = w.as_slice().iter().map(|&n| n as u128 + 1).product();
        if size - 1 > MAX_FULL_POSET as u128 {
            return Err(Error::Resource(format!(
                "full poset of {w} has {} elements; the brute force accepts at most {MAX_FULL_POSET}",
                size - 1
            )));
        }
        let size = size as usize;
        let points: Vec<GeneralPoint> = (0..size)
            .map(|mut idx| {
                let mut coords = vec![0u64; w.arity()];
                for i in (0..w.arity()).rev() {
                    let radix = w.as_slice()[i] as usize + 1;
                    coords[i] = (idx % radix) as u64;
                    idx /= radix;
                }
                GeneralPoint { coords }
            })
            .collect();
        let sets = (0..size)
            .map(|a| {
                (0..size)
                    .map(|b| {
                        if !points[a].leq(&points[b]) {
                            return 0;
                        }
                        (0..size)
                            .filter(|&z| points[a].leq(&points[z]) && points[z].leq(&points[b]))
                            .fold(0u32, |acc, z| acc | 1 << z)
                    })
                    .collect()
            })
            .collect();
        Ok(ChainProduct { points, sets })
    }

    fn full(&self) -> u32 {
        ((1u64 << self.points.len()) - 1) as u32
    }

    fn index_of(&self, p: &GeneralPoint) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }
}

/// Visits every interval partition of the full poset `[S]`.
pub fn enumerate_full_partitions(
    w: &WeightVector,
    mut visitor: impl FnMut(&[GeneralInterval]),
) -> Result<u64> {
    let poset = ChainProduct::new(w)?;
    let mut stack = Vec::new();
    let mut count = 0;
    enumerate_walk(&poset, 1, &mut stack, &mut count, &mut visitor);
    Ok(count)
}

fn enumerate_walk(
    poset: &ChainProduct,
    covered: u32,
    stack: &mut Vec<(usize, usize)>,
    count: &mut u64,
    visitor: &mut impl FnMut(&[GeneralInterval]),
) {
    if covered == poset.full() {
        *count += 1;
        let ivs: Vec<GeneralInterval> = stack
            .iter()
            .map(|&(a, b)| GeneralInterval { bottom: poset.points[a].clone(), top: poset.points[b].clone() })
            .collect();
        visitor(&ivs);
        return;
    }
    let x = (!covered).trailing_zeros() as usize;
    for y in x..poset.points.len() {
        let set = poset.sets[x][y];
        if set != 0 && set & covered == 0 {
            stack.push((x, y));
            enumerate_walk(poset, covered | set, stack, count, visitor);
            stack.pop();
        }
    }
}

/// `max` over all interval partitions of `[S]` of `min` depth of the tops.
pub fn full_poset_ndepth(w: &WeightVector) -> Result<u64> {
    let poset = ChainProduct::new(w)?;
    let depth: Vec<u64> = poset.points.iter().map(GeneralPoint::depth).collect();
    let mut best = 0;
    best_walk(&poset, &depth, 1, u64::MAX, &mut best);
    Ok(best)
}

fn best_walk(poset: &ChainProduct, depth: &[u64], covered: u32, current: u64, best: &mut u64) {
    if covered == poset.full() {
        *best = (*best).max(current);
        return;
    }
    let x = (!covered).trailing_zeros() as usize;
    for y in x..poset.points.len() {
        let set = poset.sets[x][y];
        let next = current.min(depth[y]);
        if set != 0 && set & covered == 0 && next > *best {
            best_walk(poset, depth, covered | set, next, best);
        }
    }
}

/// Checks that `ivs` is an interval partition of the full poset `[S]`.
pub fn is_full_partition(ivs: &[GeneralInterval], w: &WeightVector) -> Result<bool> {
    let poset = ChainProduct::new(w)?;
    let mut covered = 1u32;
    for iv in ivs {
        let (Some(a), Some(b)) = (poset.index_of(&iv.bottom), poset.index_of(&iv.top)) else {
            return Ok(false);
        };
        let set = poset.sets[a][b];
        if set == 0 || set & covered != 0 {
            return Ok(false);
        }
        covered |= set;
    }
    Ok(covered == poset.full())
}

/// Intersects each interval with the copy of `[U_k]` (points with every
/// coordinate in `{0, 1}`) and reads the nonempty pieces as masks.
pub fn induce_to_masks(p: &[GeneralInterval], w: &WeightVector) -> Result<GoodPartition> {
    let k = w.arity();
    let to_mask = |coords: &[u64]| {
        let bits = coords.iter().fold(0u32, |acc, &c| (acc << 1) | u32::from(c > 0));
        SubsetMask::new(bits, k)
    };
    let mut intervals = Vec::new();
    for iv in p {
        if iv.bottom.coords.len() != k {
            return Err(Error::ArityMismatch { expected: k, found: iv.bottom.coords.len() });
        }
        if iv.bottom.coords.iter().any(|&c| c > 1) {
            continue;
        }
        intervals.push(Interval::new(to_mask(&iv.bottom.coords)?, to_mask(&iv.top.coords)?)?);
    }
    GoodPartition::new(k, intervals)
}

/// The full-poset partition a good partition stands for: mask interval
/// `[x, y]` becomes `[x, s(y)]`, i.e. every submultiset whose support lies
/// in `[x, y]`.
pub fn lift_good_partition(p: &GoodPartition, w: &WeightVector) -> Result<Vec<GeneralInterval>> {
    if p.arity() != w.arity() {
        return Err(Error::ArityMismatch { expected: p.arity(), found: w.arity() });
    }
    p.intervals()
        .iter()
        .map(|iv| {
            let bottom = (1..=w.arity()).map(|i| u64::from(iv.bottom().has(i))).collect();
            let top = (1..=w.arity()).map(|i| if iv.top().has(i) { w.get(i) } else { 0 }).collect();
            GeneralInterval::new(GeneralPoint { coords: bottom }, GeneralPoint { coords: top })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[u64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    fn pt(c: &[u64]) -> GeneralPoint {
        GeneralPoint { coords: c.to_vec() }
    }

    fn giv(a: &[u64], b: &[u64]) -> GeneralInterval {
        GeneralInterval::new(pt(a), pt(b)).unwrap()
    }

    #[test]
    fn ndepth_examples() {
        assert_eq!(full_poset_ndepth(&w(&[2])).unwrap(), 2);
        assert_eq!(full_poset_ndepth(&w(&[1, 2])).unwrap(), 2);
        assert_eq!(full_poset_ndepth(&w(&[1, 1, 1])).unwrap(), 2);
    }

    #[test]
    fn too_large_is_a_resource_error() {
        assert!(matches!(full_poset_ndepth(&w(&[2, 2, 2])), Err(Error::Resource(_))));
        assert!(full_poset_ndepth(&w(&[20])).is_ok());
        assert!(full_poset_ndepth(&w(&[21])).is_err());
    }

    #[test]
    fn induce_examples() {
        let p = [giv(&[1, 0], &[1, 2]), giv(&[0, 1], &[0, 2])];
        assert!(is_full_partition(&p, &w(&[1, 2])).unwrap());
        assert_eq!(induce_to_masks(&p, &w(&[1, 2])).unwrap().to_string(), "[10,11],[01]");

        let ones = w(&[1, 1, 1]);
        let mut singletons = Vec::new();
        enumerate_full_partitions(&ones, |ivs| {
            if ivs.iter().all(|iv| iv.bottom == iv.top) {
                singletons = ivs.to_vec();
            }
        })
        .unwrap();
        let induced = induce_to_masks(&singletons, &ones).unwrap();
        assert_eq!(induced.len(), 7);
        assert!(induced.intervals().iter().all(|iv| iv.bottom() == iv.top()));
    }

    #[test]
    fn lift_then_induce_is_identity() {
        let weights = w(&[2, 1, 3]);
        let good = GoodPartition::parse(3, "[110,111],[100,101],[010,011],[001]").unwrap();
        let lifted = lift_good_partition(&good, &weights).unwrap();
        assert!(lifted.iter().all(|iv| iv.bottom.coords.iter().all(|&c| c <= 1)));
        assert_eq!(induce_to_masks(&lifted, &weights).unwrap(), good);
        let min_top = lifted.iter().map(|iv| iv.top.depth()).min().unwrap();
        assert_eq!(min_top, good.ndepth(&weights).unwrap());
    }

    #[test]
    fn enumeration_counts_tiny_cases() {
        // [n] is a chain of n elements: compositions of n
        assert_eq!(enumerate_full_partitions(&w(&[1]), |_| {}).unwrap(), 1);
        assert_eq!(enumerate_full_partitions(&w(&[3]), |_| {}).unwrap(), 4);
        // [1,1] is B_2 \ 0
        assert_eq!(enumerate_full_partitions(&w(&[1, 1]), |_| {}).unwrap(), 3);
    }

    #[test]
    fn every_full_partition_induces_a_valid_mask_partition() {
        for v in [&[2, 1][..], &[1, 1, 1], &[2, 2], &[1, 1, 2]] {
            let weights = w(v);
            let mut checked = 0;
            enumerate_full_partitions(&weights, |ivs| {
                assert!(is_full_partition(ivs, &weights).unwrap());
                induce_to_masks(ivs, &weights).unwrap();
                checked += 1;
            })
            .unwrap();
            assert!(checked > 0);
        }
    }
}
