use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{SubsetMask, WeightVector};

/// Certifies `<s> >= <t>` for every weight vector `1 <= n_1 <= ... <= n_k`.
///
/// Writing `n_i = n_1 + d_2 + ... + d_i` with `d_j >= 0`, the difference
/// `<s> - <t>` is a nonnegative combination of the suffix-count differences
/// `|s ∩ {j..k}| - |t ∩ {j..k}|`, so it is nonnegative everywhere iff each
/// suffix count of `s` is at least that of `t`.
pub fn suffix_dominates(s: SubsetMask, t: SubsetMask) -> bool {
    debug_assert_eq!(s.arity(), t.arity());
    let (mut cs, mut ct) = (0u32, 0u32);
    // bit 0 is coordinate k, so walking bits upward walks suffixes
    for b in 0..s.arity() {
        cs += s.bits() >> b & 1;
        ct += t.bits() >> b & 1;
        if cs < ct {
            return false;
        }
    }
    true
}

fn set_order(a: &SubsetMask, b: &SubsetMask) -> Ordering {
    a.bits().count_ones().cmp(&b.bits().count_ones()).then_with(|| a.coords().cmp(&b.coords()))
}

/// A minimum of `<T>` over a nonempty collection of index sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MinTerm {
    sets: Vec<SubsetMask>,
}

impl MinTerm {
    pub fn new(mut sets: Vec<SubsetMask>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::Domain("min-term must contain at least one index set".into()));
        }
        if sets.iter().any(|s| s.is_empty()) {
            return Err(Error::Domain("min-term contains the empty index set".into()));
        }
        sets.sort_by(set_order);
        sets.dedup();
        Ok(MinTerm { sets })
    }

    pub fn sets(&self) -> &[SubsetMask] {
        &self.sets
    }

    pub fn evaluate(&self, w: &WeightVector) -> u64 {
        let table = w.subset_weights();
        self.evaluate_with(&table)
    }

    fn evaluate_with(&self, table: &[u64]) -> u64 {
        self.sets.iter().map(|s| table[s.bits() as usize]).min().unwrap_or(0)
    }

    /// Drops every set that suffix-dominates another member; such a set can
    /// never be the strict minimum on sorted weights.
    pub fn reduced(&self) -> MinTerm {
        let keep = self
            .sets
            .iter()
            .filter(|&&s| !self.sets.iter().any(|&t| t != s && suffix_dominates(s, t)))
            .copied()
            .collect();
        MinTerm { sets: keep }
    }

    /// `min self >= min other` on every sorted weight vector, certified by
    /// each member of `self` dominating some member of `other`.
    pub fn dominates(&self, other: &MinTerm) -> bool {
        self.sets.iter().all(|&a| other.sets.iter().any(|&b| suffix_dominates(a, b)))
    }
}

impl fmt::Display for MinTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "min(")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", IndexSet(*s))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MinTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Angle-bracket rendering of an index set, e.g. `<134>`.
#[derive(Clone, Copy)]
pub struct IndexSet(pub SubsetMask);

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords = self.0.coords();
        let sep = if self.0.arity() > 9 { "," } else { "" };
        let body: Vec<String> = coords.iter().map(usize::to_string).collect();
        write!(f, "<{}>", body.join(sep))
    }
}

fn term_order(a: &MinTerm, b: &MinTerm) -> Ordering {
    a.sets.len().cmp(&b.sets.len()).then_with(|| {
        a.sets
            .iter()
            .zip(&b.sets)
            .map(|(x, y)| set_order(x, y))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    })
}

/// `max` over min-terms of `min` over `<T>`.
#[derive(Clone, PartialEq, Eq)]
pub struct MaxMinFormula {
    k: usize,
    terms: Vec<MinTerm>,
}

impl MaxMinFormula {
    pub fn new(k: usize, terms: Vec<Vec<SubsetMask>>) -> Result<Self> {
        let terms = terms.into_iter().map(MinTerm::new).collect::<Result<Vec<_>>>()?;
        Self::from_terms(k, terms)
    }

    pub fn from_terms(k: usize, mut terms: Vec<MinTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Domain("formula must contain at least one min-term".into()));
        }
        for t in &terms {
            if let Some(s) = t.sets.iter().find(|s| s.arity() != k) {
                return Err(Error::ArityMismatch { expected: k, found: s.arity() });
            }
        }
        terms.sort_by(term_order);
        terms.dedup();
        Ok(MaxMinFormula { k, terms })
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[MinTerm] {
        &self.terms
    }

    /// Evaluates at `w` literally (no sorting is applied).
    pub fn evaluate(&self, w: &WeightVector) -> u64 {
        let table = w.subset_weights();
        self.terms.iter().map(|t| t.evaluate_with(&table)).max().unwrap_or(0)
    }

    /// Reduces each min-term, then drops min-terms dominated by a retained
    /// one. Sound on sorted weights; not guaranteed minimal.
    pub fn reduced(&self) -> MaxMinFormula {
        let mut terms: Vec<MinTerm> = self.terms.iter().map(MinTerm::reduced).collect();
        terms.sort_by(term_order);
        terms.dedup();
        let mut alive = vec![true; terms.len()];
        for b in 0..terms.len() {
            let dominated = (0..terms.len()).any(|a| a != b && alive[a] && terms[a].dominates(&terms[b]));
            if dominated {
                alive[b] = false;
            }
        }
        let terms = terms.into_iter().zip(alive).filter_map(|(t, keep)| keep.then_some(t)).collect();
        MaxMinFormula { k: self.k, terms }
    }
}

impl fmt::Display for MaxMinFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "max( ")?;
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, " )")
    }
}

impl fmt::Debug for MaxMinFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(coords: &[usize], k: usize) -> SubsetMask {
        SubsetMask::from_coords(coords, k).unwrap()
    }

    #[test]
    fn dominance_examples() {
        assert!(suffix_dominates(set(&[3, 4], 4), set(&[2, 4], 4)));
        assert!(!suffix_dominates(set(&[2, 4], 4), set(&[3, 4], 4)));
        assert!(!suffix_dominates(set(&[3], 3), set(&[1, 2], 3)));
        assert!(!suffix_dominates(set(&[1, 2], 3), set(&[3], 3)));
        let s = set(&[1, 3, 5], 5);
        assert!(suffix_dominates(s, s));
        assert!(suffix_dominates(set(&[1, 2, 3, 4], 5), set(&[2, 3, 4], 5)));
        assert!(!suffix_dominates(set(&[2, 3, 4], 5), set(&[1, 3, 5], 5)));
    }

    #[test]
    fn dominance_is_antisymmetric() {
        for k in 1..=5 {
            for a in 0..1u32 << k {
                for b in 0..1u32 << k {
                    let (sa, sb) = (SubsetMask::new(a, k).unwrap(), SubsetMask::new(b, k).unwrap());
                    if a != b {
                        assert!(!(suffix_dominates(sa, sb) && suffix_dominates(sb, sa)));
                    }
                }
            }
        }
    }

    #[test]
    fn min_term_reduction() {
        // tops of the second k = 3 example: <12>, <13>, <23>, <123>
        let t = MinTerm::new(vec![set(&[1, 2], 3), set(&[1, 3], 3), set(&[2, 3], 3), set(&[1, 2, 3], 3)])
            .unwrap();
        assert_eq!(t.reduced().to_string(), "min(<12>)");
        assert!(MinTerm::new(vec![]).is_err());
        assert!(MinTerm::new(vec![SubsetMask::empty(3).unwrap()]).is_err());
    }

    #[test]
    fn formula_display_and_reduction() {
        let f = MaxMinFormula::new(
            3,
            vec![vec![set(&[1, 2], 3)], vec![set(&[3], 3)], vec![set(&[1], 3)], vec![set(&[2], 3), set(&[3], 3)]],
        )
        .unwrap();
        assert_eq!(f.reduced().to_string(), "max( min(<3>), min(<12>) )");
    }

    proptest::proptest! {
        #[test]
        fn dominance_implies_inequality(
            a in 0u32..32, b in 0u32..32,
            mut v in proptest::collection::vec(1u64..1000, 5),
        ) {
            v.sort_unstable();
            let w = WeightVector::new(v).unwrap();
            let (sa, sb) = (SubsetMask::new(a, 5).unwrap(), SubsetMask::new(b, 5).unwrap());
            if suffix_dominates(sa, sb) {
                let t = w.subset_weights();
                proptest::prop_assert!(t[a as usize] >= t[b as usize]);
            }
        }
    }
}
