//! Covered-set representations for the partition search.

use crate::lattice::narrow_interval_set;

pub(crate) trait Cover: Clone + Send {
    fn new(k: usize) -> Self;
    fn first_uncovered(&self) -> Option<u32>;
    fn is_covered(&self, z: u32) -> bool;
    /// `[x, y]` shares no mask with the covered set.
    fn is_free(&self, x: u32, y: u32) -> bool;
    fn cover(&mut self, x: u32, y: u32);
    fn uncover(&mut self, x: u32, y: u32);
    /// Calls `f` on every uncovered mask until it returns `false`.
    fn all_uncovered(&self, f: impl FnMut(u32) -> bool) -> bool;
}

/// One word for `k <= 6`; bits at or above `2^k` are kept set.
#[derive(Clone, Copy)]
pub(crate) struct Narrow(u64);

impl Cover for Narrow {
    fn new(k: usize) -> Self {
        debug_assert!(k <= 6);
        let n = 1u32 << k;
        let high = if n == 64 { 0 } else { u64::MAX << n };
        Narrow(1 | high)
    }

    #[inline]
    fn first_uncovered(&self) -> Option<u32> {
        (self.0 != u64::MAX).then(|| (!self.0).trailing_zeros())
    }

    #[inline]
    fn is_covered(&self, z: u32) -> bool {
        self.0 >> z & 1 == 1
    }

    #[inline]
    fn is_free(&self, x: u32, y: u32) -> bool {
        narrow_interval_set(x, y) & self.0 == 0
    }

    #[inline]
    fn cover(&mut self, x: u32, y: u32) {
        self.0 |= narrow_interval_set(x, y);
    }

    #[inline]
    fn uncover(&mut self, x: u32, y: u32) {
        self.0 &= !narrow_interval_set(x, y);
    }

    fn all_uncovered(&self, mut f: impl FnMut(u32) -> bool) -> bool {
        let mut open = !self.0;
        while open != 0 {
            if !f(open.trailing_zeros()) {
                return false;
            }
            open &= open - 1;
        }
        true
    }
}

/// Multi-word bitset for `k > 6`.
#[derive(Clone)]
pub(crate) struct Wide {
    words: Vec<u64>,
    n: u32,
}

fn submasks(x: u32, y: u32, mut f: impl FnMut(u32) -> bool) -> bool {
    let free = y & !x;
    let mut sub = 0u32;
    loop {
        if !f(x | sub) {
            return false;
        }
        sub = sub.wrapping_sub(free) & free;
        if sub == 0 {
            return true;
        }
    }
}

impl Cover for Wide {
    fn new(k: usize) -> Self {
        let n = 1u32 << k;
        let mut words = vec![0u64; (n as usize).div_ceil(64)];
        words[0] = 1;
        Wide { words, n }
    }

    fn first_uncovered(&self) -> Option<u32> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, w)| **w != u64::MAX)
            .map(|(i, w)| i as u32 * 64 + (!w).trailing_zeros())
            .filter(|&z| z < self.n)
    }

    #[inline]
    fn is_covered(&self, z: u32) -> bool {
        self.words[(z / 64) as usize] >> (z % 64) & 1 == 1
    }

    fn is_free(&self, x: u32, y: u32) -> bool {
        submasks(x, y, |z| !self.is_covered(z))
    }

    fn cover(&mut self, x: u32, y: u32) {
        submasks(x, y, |z| {
            self.words[(z / 64) as usize] |= 1 << (z % 64);
            true
        });
    }

    fn uncover(&mut self, x: u32, y: u32) {
        submasks(x, y, |z| {
            self.words[(z / 64) as usize] &= !(1 << (z % 64));
            true
        });
    }

    fn all_uncovered(&self, mut f: impl FnMut(u32) -> bool) -> bool {
        (1..self.n).filter(|&z| !self.is_covered(z)).all(&mut f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exercise<C: Cover>(k: usize) {
        let mut c = C::new(k);
        assert_eq!(c.first_uncovered(), Some(1));
        assert!(c.is_covered(0));
        let top = (1u32 << k) - 1;
        assert!(c.is_free(1, top));
        c.cover(1, top);
        assert!(!c.is_free(2, 3));
        assert!(c.is_free(2, 2));
        assert_eq!(c.first_uncovered(), Some(2));
        c.uncover(1, top);
        assert_eq!(c.first_uncovered(), Some(1));
        // cover everything with singletons
        for z in 1..=top {
            c.cover(z, z);
        }
        assert_eq!(c.first_uncovered(), None);
        assert!(c.all_uncovered(|_| false));
    }

    #[test]
    fn narrow_and_wide_behave_alike() {
        for k in 2..=6 {
            exercise::<Narrow>(k);
            exercise::<Wide>(k);
        }
        exercise::<Wide>(8);
    }
}
