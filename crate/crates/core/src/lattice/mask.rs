use std::fmt;
use std::str::FromStr;

use crate::error::{Error, MaskSyntax, Result};

/// Largest supported number of coordinates.
pub const MAX_ARITY: usize = 16;

/// A subset of `{1..k}`, i.e. an element of the boolean lattice `B_k`.
///
/// Coordinate 1 is the leftmost character of the textual form, so `"10001"`
/// is `{1, 5}`. Internally coordinate `i` lives in bit `k - i`, which makes
/// the numeric order of masks coincide with the lexicographic order of their
/// strings.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    bits: u32,
    k: u8,
}

pub(crate) fn check_arity(k: usize) -> Result<()> {
    if (1..=MAX_ARITY).contains(&k) {
        Ok(())
    } else {
        Err(Error::BadArity(k))
    }
}

impl SubsetMask {
    pub fn new(bits: u32, k: usize) -> Result<Self> {
        check_arity(k)?;
        if bits >> k != 0 {
            return Err(Error::MaskOutOfRange { value: bits, k });
        }
        Ok(SubsetMask { bits, k: k as u8 })
    }

    /// Caller guarantees `1 <= k <= 16` and `bits < 2^k`.
    pub(crate) fn from_raw(bits: u32, k: usize) -> Self {
        debug_assert!(k <= MAX_ARITY && bits >> k == 0);
        SubsetMask { bits, k: k as u8 }
    }

    pub fn empty(k: usize) -> Result<Self> {
        Self::new(0, k)
    }

    pub fn full(k: usize) -> Result<Self> {
        check_arity(k)?;
        Ok(Self::from_raw((1u32 << k) - 1, k))
    }

    /// The singleton `{i}` for a 1-based coordinate `i`.
    pub fn singleton(i: usize, k: usize) -> Result<Self> {
        check_arity(k)?;
        if !(1..=k).contains(&i) {
            return Err(Error::Domain(format!("coordinate {i} outside 1..={k}")));
        }
        Ok(Self::from_raw(1 << (k - i), k))
    }

    /// Builds a mask from 1-based coordinates, e.g. `[1, 2]` for `<12>`.
    pub fn from_coords(coords: &[usize], k: usize) -> Result<Self> {
        let mut m = Self::empty(k)?;
        for &i in coords {
            m = m.union(Self::singleton(i, k)?);
        }
        Ok(m)
    }

    /// Parses a fixed-length 0/1 string; the arity is the string length.
    pub fn parse(s: &str) -> Result<Self> {
        let k = s.chars().count();
        Self::parse_with_arity(s, k)
    }

    pub fn parse_with_arity(s: &str, k: usize) -> Result<Self> {
        let bad = |reason| Error::InvalidMask { text: s.to_string(), reason };
        if let Some(c) = s.chars().find(|c| *c != '0' && *c != '1') {
            return Err(bad(MaskSyntax::InvalidCharacter(c)));
        }
        let found = s.len();
        if found != k {
            return Err(bad(MaskSyntax::WrongLength { expected: k, found }));
        }
        check_arity(k)?;
        let bits = s.bytes().fold(0u32, |acc, b| (acc << 1) | u32::from(b == b'1'));
        Ok(Self::from_raw(bits, k))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    #[inline]
    pub fn arity(self) -> usize {
        self.k as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    /// Whether 1-based coordinate `i` is set.
    #[inline]
    pub fn has(self, i: usize) -> bool {
        i >= 1 && i <= self.arity() && self.bits >> (self.arity() - i) & 1 == 1
    }

    #[inline]
    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.bits & !other.bits == 0
    }

    #[inline]
    pub fn union(self, other: SubsetMask) -> SubsetMask {
        SubsetMask { bits: self.bits | other.bits, k: self.k }
    }

    /// 1-based coordinates in increasing order.
    pub fn coords(self) -> Vec<usize> {
        (1..=self.arity()).filter(|&i| self.has(i)).collect()
    }

    /// Relabels coordinates: coordinate `i` of `self` becomes coordinate
    /// `perm[i - 1]` of the result. `perm` holds 1-based targets.
    pub fn permute(self, perm: &[usize]) -> SubsetMask {
        debug_assert_eq!(perm.len(), self.arity());
        let k = self.arity();
        let bits = self
            .coords()
            .into_iter()
            .fold(0u32, |acc, i| acc | 1 << (k - perm[i - 1]));
        SubsetMask::from_raw(bits, k)
    }
}

/// Depth of a mask in `B_k`: its number of elements.
#[inline]
pub fn mask_depth(mask: SubsetMask) -> u32 {
    mask.bits.count_ones()
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.bits, width = self.arity())
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubsetMask({self})")
    }
}

impl FromStr for SubsetMask {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
