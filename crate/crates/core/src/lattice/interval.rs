use std::fmt;
use std::str::FromStr;

use super::mask::{mask_depth, SubsetMask};
use crate::error::{Error, Result};

/// A good interval `[s(bottom), s(top)]`, written by its 0/1 endpoints.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    bottom: SubsetMask,
    top: SubsetMask,
}

impl Interval {
    pub fn new(bottom: SubsetMask, top: SubsetMask) -> Result<Self> {
        if bottom.arity() != top.arity() {
            return Err(Error::ArityMismatch { expected: bottom.arity(), found: top.arity() });
        }
        if bottom.is_empty() {
            return Err(Error::EmptyBottom);
        }
        if !bottom.is_subset_of(top) {
            return Err(Error::BottomNotInTop { bottom: bottom.to_string(), top: top.to_string() });
        }
        Ok(Interval { bottom, top })
    }

    pub fn singleton(mask: SubsetMask) -> Result<Self> {
        Self::new(mask, mask)
    }

    /// Parses `"[bottom,top]"` or the singleton shorthand `"[m]"`.
    pub fn parse(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::IntervalSyntax(s.to_string()))?;
        let mut parts = inner.split(',').map(str::trim);
        let bottom = SubsetMask::parse(parts.next().unwrap_or_default())?;
        let top = match parts.next() {
            Some(t) => SubsetMask::parse_with_arity(t, bottom.arity())?,
            None => bottom,
        };
        if parts.next().is_some() {
            return Err(Error::IntervalSyntax(s.to_string()));
        }
        Self::new(bottom, top)
    }

    #[inline]
    pub fn bottom(&self) -> SubsetMask {
        self.bottom
    }

    #[inline]
    pub fn top(&self) -> SubsetMask {
        self.top
    }

    #[inline]
    pub fn arity(&self) -> usize {
        self.bottom.arity()
    }

    #[inline]
    pub fn contains(&self, z: SubsetMask) -> bool {
        self.bottom.is_subset_of(z) && z.is_subset_of(self.top)
    }

    /// Number of masks in the interval.
    #[inline]
    pub fn cardinality(&self) -> u64 {
        1u64 << (mask_depth(self.top) - mask_depth(self.bottom))
    }

    /// Members in increasing numeric order.
    pub fn members(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        let free = self.top.bits() & !self.bottom.bits();
        let k = self.arity();
        let base = self.bottom.bits();
        // enumerate submasks of `free` upward
        let mut sub = 0u32;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = SubsetMask::from_raw(base | sub, k);
            sub = sub.wrapping_sub(free) & free;
            done = sub == 0;
            Some(out)
        })
    }

    pub fn permute(&self, perm: &[usize]) -> Interval {
        Interval { bottom: self.bottom.permute(perm), top: self.top.permute(perm) }
    }
}

/// `bottom ⊆ z ⊆ top`.
pub fn interval_contains(iv: &Interval, z: SubsetMask) -> bool {
    iv.contains(z)
}

pub fn interval_cardinality(iv: &Interval) -> u64 {
    iv.cardinality()
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bottom == self.top {
            write!(f, "[{}]", self.bottom)
        } else {
            write!(f, "[{},{}]", self.bottom, self.top)
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Interval{self}")
    }
}

impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}
