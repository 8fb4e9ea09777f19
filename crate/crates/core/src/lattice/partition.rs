use std::fmt;

use super::interval::Interval;
use super::mask::{check_arity, SubsetMask};
use super::weights::WeightVector;
use crate::error::{Error, Result};

/// Outcome of checking that a list of intervals partitions `B_k \ {∅}`.
///
/// Offending masks are always the numerically smallest witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationReport {
    Valid,
    Malformed { index: usize, reason: String },
    Uncovered(SubsetMask),
    DoubleCover(SubsetMask),
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        matches!(self, ValidationReport::Valid)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationReport::Valid => write!(f, "valid"),
            ValidationReport::Malformed { index, reason } => {
                write!(f, "interval #{index} is malformed: {reason}")
            }
            ValidationReport::Uncovered(m) => write!(f, "mask {m} is not covered"),
            ValidationReport::DoubleCover(m) => write!(f, "mask {m} is covered more than once"),
        }
    }
}

/// Checks raw `(bottom, top)` pairs, reporting structural problems by index
/// before looking at coverage.
pub fn validate_mask_pairs(pairs: &[(SubsetMask, SubsetMask)], k: usize) -> ValidationReport {
    let mut intervals = Vec::with_capacity(pairs.len());
    for (index, &(bottom, top)) in pairs.iter().enumerate() {
        if bottom.arity() != k || top.arity() != k {
            return ValidationReport::Malformed {
                index,
                reason: format!("arity {} where {k} was expected", bottom.arity().max(top.arity())),
            };
        }
        match Interval::new(bottom, top) {
            Ok(iv) => intervals.push(iv),
            Err(e) => return ValidationReport::Malformed { index, reason: e.to_string() },
        }
    }
    validate_good_partition(&intervals, k)
}

/// Checks that the intervals are pairwise disjoint and cover every nonzero
/// mask of arity `k`.
pub fn validate_good_partition(ivs: &[Interval], k: usize) -> ValidationReport {
    if let Err(e) = check_arity(k) {
        return ValidationReport::Malformed { index: 0, reason: e.to_string() };
    }
    let mut hits = vec![0u8; 1 << k];
    for (index, iv) in ivs.iter().enumerate() {
        if iv.arity() != k {
            return ValidationReport::Malformed {
                index,
                reason: format!("arity {} where {k} was expected", iv.arity()),
            };
        }
        for z in iv.members() {
            let h = &mut hits[z.bits() as usize];
            *h = h.saturating_add(1);
        }
    }
    // overlaps are reported before gaps, each at its smallest mask
    let first = |pred: fn(u8) -> bool| {
        hits.iter().enumerate().skip(1).find(|&(_, &h)| pred(h)).map(|(bits, _)| SubsetMask::from_raw(bits as u32, k))
    };
    if let Some(mask) = first(|h| h > 1) {
        return ValidationReport::DoubleCover(mask);
    }
    match first(|h| h == 0) {
        Some(mask) => ValidationReport::Uncovered(mask),
        None => ValidationReport::Valid,
    }
}

/// Parses a comma separated list of intervals in bracket notation without
/// checking that they form a partition.
pub fn parse_interval_list(text: &str) -> Result<Vec<Interval>> {
    let mut intervals = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        let end = rest.find(']').ok_or_else(|| Error::IntervalSyntax(rest.to_string()))?;
        intervals.push(Interval::parse(&rest[..=end])?);
        rest = rest[end + 1..].trim_start_matches(|c: char| c == ',' || c.is_whitespace());
    }
    Ok(intervals)
}

/// An interval partition of `B_k \ {∅}`; equivalently a good partition of
/// any multiset poset `[S]` with `k` distinct elements.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GoodPartition {
    k: usize,
    intervals: Vec<Interval>,
}

impl GoodPartition {
    pub fn new(k: usize, intervals: Vec<Interval>) -> Result<Self> {
        match validate_good_partition(&intervals, k) {
            ValidationReport::Valid => Ok(GoodPartition { k, intervals }),
            report => Err(Error::InvalidPartition(report)),
        }
    }

    /// Parses a comma separated interval list such as
    /// `"[110,111],[100,101],[010,011],[001]"`.
    pub fn parse(k: usize, text: &str) -> Result<Self> {
        Self::new(k, parse_interval_list(text)?)
    }

    pub(crate) fn from_trusted(k: usize, intervals: Vec<Interval>) -> Self {
        debug_assert!(validate_good_partition(&intervals, k).is_valid());
        GoodPartition { k, intervals }
    }

    pub fn arity(&self) -> usize {
        self.k
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn tops(&self) -> impl Iterator<Item = SubsetMask> + '_ {
        self.intervals.iter().map(Interval::top)
    }

    /// The interval containing `z`.
    pub fn interval_of(&self, z: SubsetMask) -> Option<&Interval> {
        self.intervals.iter().find(|iv| iv.contains(z))
    }

    /// Same partition with intervals sorted by bottom, for set comparisons.
    pub fn sorted(&self) -> GoodPartition {
        let mut intervals = self.intervals.clone();
        intervals.sort();
        GoodPartition { k: self.k, intervals }
    }

    pub fn permute(&self, perm: &[usize]) -> GoodPartition {
        GoodPartition {
            k: self.k,
            intervals: self.intervals.iter().map(|iv| iv.permute(perm)).collect(),
        }
    }

    /// `a(1), ..., a(k)`: the top of the interval whose bottom is `{i}`.
    pub fn singleton_tops(&self) -> Result<Vec<SubsetMask>> {
        singleton_tops(&self.intervals, self.k)
    }

    pub fn ndepth(&self, w: &WeightVector) -> Result<u64> {
        partition_ndepth(self, w)
    }
}

impl fmt::Display for GoodPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GoodPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GoodPartition(k={}; {self})", self.k)
    }
}

/// Minimum over intervals of the weight of the top.
pub fn partition_ndepth(p: &GoodPartition, w: &WeightVector) -> Result<u64> {
    if p.arity() != w.arity() {
        return Err(Error::ArityMismatch { expected: p.arity(), found: w.arity() });
    }
    let table = w.subset_weights();
    Ok(p.tops().map(|t| table[t.bits() as usize]).min().unwrap_or(0))
}

fn singleton_tops(ivs: &[Interval], k: usize) -> Result<Vec<SubsetMask>> {
    (1..=k)
        .map(|i| {
            let s = SubsetMask::singleton(i, k)?;
            ivs.iter()
                .find(|iv| iv.bottom() == s)
                .map(Interval::top)
                .ok_or_else(|| Error::SingletonNotBottom(s.to_string()))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaOutcome {
    Holds,
    /// `j ∈ a(i)` and `i ∈ a(j)`, 1-based.
    Violated { i: usize, j: usize },
}

/// For singleton tops `a(1..=k)`, checks that `a(i)_j > 0` forces `a(j)_i = 0`.
pub fn check_singleton_tops(tops: &[SubsetMask]) -> LemmaOutcome {
    let k = tops.len();
    for i in 1..=k {
        for j in i + 1..=k {
            if tops[i - 1].has(j) && tops[j - 1].has(i) {
                return LemmaOutcome::Violated { i, j };
            }
        }
    }
    LemmaOutcome::Holds
}

/// Validates the list, then checks the singleton-top exclusion property.
pub fn lemma1_check(ivs: &[Interval], k: usize) -> Result<LemmaOutcome> {
    match validate_good_partition(ivs, k) {
        ValidationReport::Valid => {}
        report => return Err(Error::InvalidPartition(report)),
    }
    Ok(check_singleton_tops(&singleton_tops(ivs, k)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ivs(text: &str) -> Vec<Interval> {
        text.split(';').map(|s| s.parse().unwrap()).collect()
    }

    fn w(v: &[u64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    const EX_3_1: &str = "[110,111],[100,101],[010,011],[001]";
    const EX_3_2: &str = "[100,110],[001,101],[010,011],[111]";
    const EX_4_1: &str = "[1100,1111],[1000,1011],[0100,0111],[0010,0011],[0001]";
    const EX_4_2: &str = "[1000,1011],[0100,1110],[0010,0011],[0001,0101],[1101,1111],[0111]";

    #[test]
    fn validate_examples() {
        let p = GoodPartition::parse(3, EX_3_1).unwrap();
        assert_eq!(validate_good_partition(p.intervals(), 3), ValidationReport::Valid);
        assert_eq!(
            validate_good_partition(&ivs("[10,11]"), 2),
            ValidationReport::Uncovered("01".parse().unwrap())
        );
        assert_eq!(
            validate_good_partition(&ivs("[100,111];[110,111]"), 3),
            ValidationReport::DoubleCover("110".parse().unwrap())
        );
        assert_eq!(validate_good_partition(&[], 2), ValidationReport::Uncovered("01".parse().unwrap()));
    }

    #[test]
    fn overlaps_reported_before_gaps() {
        // 001 uncovered, 110 and 111 doubly covered
        let report = validate_good_partition(&ivs("[100,111];[110,111];[010,011]"), 3);
        assert_eq!(report, ValidationReport::DoubleCover("110".parse().unwrap()));
        let report = validate_good_partition(&ivs("[100,111];[010,011]"), 3);
        assert_eq!(report, ValidationReport::Uncovered("001".parse().unwrap()));
    }

    #[test]
    fn malformed_pairs_reported_by_index() {
        let m = |s: &str| SubsetMask::parse(s).unwrap();
        let pairs = [(m("100"), m("111")), (m("011"), m("001"))];
        assert!(matches!(validate_mask_pairs(&pairs, 3), ValidationReport::Malformed { index: 1, .. }));
        let pairs = [(m("000"), m("111"))];
        assert!(matches!(validate_mask_pairs(&pairs, 3), ValidationReport::Malformed { index: 0, .. }));
        let pairs = [(m("10"), m("11")), (m("001"), m("001"))];
        assert!(matches!(validate_mask_pairs(&pairs, 2), ValidationReport::Malformed { index: 1, .. }));
        let pairs = [(m("10"), m("11")), (m("01"), m("01"))];
        assert!(validate_mask_pairs(&pairs, 2).is_valid());
    }

    #[test]
    fn ndepth_examples() {
        let p31 = GoodPartition::parse(3, EX_3_1).unwrap();
        let p32 = GoodPartition::parse(3, EX_3_2).unwrap();
        let p42 = GoodPartition::parse(4, EX_4_2).unwrap();
        assert_eq!(partition_ndepth(&p31, &w(&[1, 2, 5])).unwrap(), 5);
        assert_eq!(partition_ndepth(&p32, &w(&[2, 3, 4])).unwrap(), 5);
        assert_eq!(partition_ndepth(&p42, &w(&[1, 1, 1, 1])).unwrap(), 2);
        assert!(partition_ndepth(&p42, &w(&[1, 1, 1])).is_err());
    }

    #[test]
    fn invalid_partition_rejected() {
        assert!(matches!(
            GoodPartition::parse(2, "[10,11],[01,11]"),
            Err(Error::InvalidPartition(ValidationReport::DoubleCover(_)))
        ));
    }

    #[test]
    fn lemma_examples() {
        let p41 = GoodPartition::parse(4, EX_4_1).unwrap();
        let tops: Vec<String> = p41.singleton_tops().unwrap().iter().map(|t| t.to_string()).collect();
        assert_eq!(tops, ["1011", "0111", "0011", "0001"]);
        assert_eq!(lemma1_check(p41.intervals(), 4).unwrap(), LemmaOutcome::Holds);
        assert_eq!(lemma1_check(&ivs("[1]"), 1).unwrap(), LemmaOutcome::Holds);
        assert!(matches!(
            lemma1_check(&ivs("[10,11];[01,11]"), 2),
            Err(Error::InvalidPartition(_))
        ));
    }

    #[test]
    fn lemma_detects_mutual_tops() {
        let m = |s: &str| SubsetMask::parse(s).unwrap();
        assert_eq!(
            check_singleton_tops(&[m("110"), m("110"), m("001")]),
            LemmaOutcome::Violated { i: 1, j: 2 }
        );
        assert_eq!(check_singleton_tops(&[m("101"), m("011"), m("001")]), LemmaOutcome::Holds);
    }

    #[test]
    fn display_round_trip() {
        let p = GoodPartition::parse(4, EX_4_2).unwrap();
        assert_eq!(p.to_string(), EX_4_2);
    }
}
