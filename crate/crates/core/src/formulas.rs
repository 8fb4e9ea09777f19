//! Closed forms and bounds for `ndepth [n_1, ..., n_k]`.
//!
//! Every evaluator canonicalizes its input first: relabeling coordinates is
//! a poset isomorphism, so the value only depends on the sorted weights.

use crate::error::{Error, Result};
use crate::lattice::{SubsetMask, WeightVector};
use crate::oracle::MaxMinFormula;

/// Weights sorted ascending, with the relabeling that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalWeights {
    pub sorted: WeightVector,
    /// `permutation[i]` is the 1-based input position of `sorted[i]`.
    pub permutation: Vec<usize>,
}

impl CanonicalWeights {
    /// Undoes the sort.
    pub fn restore(&self) -> WeightVector {
        let mut out = vec![0; self.permutation.len()];
        for (i, &src) in self.permutation.iter().enumerate() {
            out[src - 1] = self.sorted.as_slice()[i];
        }
        WeightVector::new(out).expect("permutation of a valid vector")
    }
}

/// Stable ascending sort; ties keep their input order.
pub fn canonicalize(w: &WeightVector) -> CanonicalWeights {
    let mut permutation: Vec<usize> = (1..=w.arity()).collect();
    permutation.sort_by_key(|&i| w.get(i));
    let sorted = permutation.iter().map(|&i| w.get(i)).collect();
    CanonicalWeights {
        sorted: WeightVector::new(sorted).expect("permutation of a valid vector"),
        permutation,
    }
}

/// Same as [`canonicalize`] but starting from raw integers.
pub fn canonicalize_raw(weights: &[u64]) -> Result<CanonicalWeights> {
    WeightVector::new(weights.to_vec()).map(|w| canonicalize(&w))
}

fn sorted(w: &WeightVector) -> Vec<u64> {
    let mut v = w.as_slice().to_vec();
    v.sort_unstable();
    v
}

/// `max(<1..k-1>, <k>)` on sorted weights for `k >= 2`, and `n_1` for `k = 1`.
pub fn upper_bound(w: &WeightVector) -> u64 {
    let n = sorted(w);
    match n.split_last() {
        Some((&last, [])) => last,
        Some((&last, rest)) => rest.iter().sum::<u64>().max(last),
        None => 0,
    }
}

/// The known value of `ndepth [S]` for `1 <= k <= 5`.
pub fn closed_form(w: &WeightVector) -> Result<u64> {
    let n = sorted(w);
    // <I> with 1-based indices into the sorted weights
    let a = |idx: &[usize]| -> u64 { idx.iter().map(|&i| n[i - 1]).sum() };
    let value = match n.len() {
        1 => n[0],
        2 => n[1],
        3 => a(&[3]).max(a(&[1, 2])),
        4 => a(&[4]).max(a(&[2, 4]).min(a(&[1, 2, 3]))),
        5 => {
            let m1 = a(&[3, 5]).min(a(&[1, 2, 3, 4]));
            let m2 = a(&[4, 5]).min(a(&[2, 3, 4])).min(a(&[1, 3, 5]));
            let m3 = a(&[4, 5]).min(a(&[1, 2, 3, 4])).min(a(&[1, 2, 5]));
            let m4 = a(&[1, 2, 5]).min(a(&[1, 3, 4]));
            a(&[5]).max(m1).max(m2).max(m3).max(m4)
        }
        k => return Err(Error::NoClosedForm(k)),
    };
    Ok(value)
}

/// The closed forms as symbolic max-min formulas over sorted weights.
pub fn theorem_formula(k: usize) -> Result<MaxMinFormula> {
    let terms: &[&[&[usize]]] = match k {
        1 => &[&[&[1]]],
        2 => &[&[&[2]]],
        3 => &[&[&[3]], &[&[1, 2]]],
        4 => &[&[&[4]], &[&[2, 4], &[1, 2, 3]]],
        5 => &[
            &[&[5]],
            &[&[3, 5], &[1, 2, 3, 4]],
            &[&[4, 5], &[2, 3, 4], &[1, 3, 5]],
            &[&[4, 5], &[1, 2, 3, 4], &[1, 2, 5]],
            &[&[1, 2, 5], &[1, 3, 4]],
        ],
        _ => return Err(Error::NoClosedForm(k)),
    };
    let terms = terms
        .iter()
        .map(|term| term.iter().map(|set| SubsetMask::from_coords(set, k)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    MaxMinFormula::new(k, terms)
}

/// `ndepth n^k \ 0 = (n - 1) * ceil(k / 2)`.
pub fn chain_power_ndepth(n: u64, k: usize) -> Result<u64> {
    if n < 2 {
        return Err(Error::Domain(format!("chain length n = {n} must be at least 2")));
    }
    if k == 0 {
        return Err(Error::BadArity(0));
    }
    Ok((n - 1) * k.div_ceil(2) as u64)
}

/// All nondecreasing vectors of length `k` with entries in `1..=max_entry`,
/// in lexicographic order.
pub fn sorted_grid(k: usize, max_entry: u64) -> Vec<WeightVector> {
    let mut out = Vec::new();
    if max_entry == 0 {
        return out;
    }
    let mut cur = vec![1u64; k];
    loop {
        out.push(WeightVector::new(cur.clone()).expect("grid entries are valid"));
        // next nondecreasing tuple
        let Some(pos) = cur.iter().rposition(|&v| v < max_entry) else {
            break;
        };
        let v = cur[pos] + 1;
        cur[pos..].iter_mut().for_each(|c| *c = v);
    }
    out
}

/// Number of entries [`sorted_grid`] would produce: `C(max + k - 1, k)`.
pub fn sorted_grid_len(k: usize, max_entry: u64) -> u128 {
    let n = max_entry as u128 + k as u128 - 1;
    (0..k as u128).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}
