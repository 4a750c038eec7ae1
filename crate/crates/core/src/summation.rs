//! Compensated (twofold) summation and order-fixed parallel reduction.
//!
//! Every parallel reduction in the crate goes through [`par_block_sum`] or
//! [`tree_reduce`]: inputs are cut into blocks whose boundaries depend only on
//! the input length, each block is summed with [`TwoFold`], and the block
//! partials are merged along a fixed binary tree. Results are therefore
//! bitwise identical for any rayon worker count.

use num_complex::Complex64;
use rayon::prelude::*;

/// Block length used for order-fixed parallel reductions.
pub const BLOCK: usize = 4096;

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let err = (a - (s - bb)) + (b - bb);
    (s, err)
}

/// Sum2 accumulator: running sum plus accumulated rounding error.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TwoFold {
    sum: f64,
    err: f64,
}

impl TwoFold {
    pub const fn new() -> Self {
        TwoFold { sum: 0.0, err: 0.0 }
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let (s, e) = two_sum(self.sum, x);
        self.sum = s;
        self.err += e;
    }

    #[inline]
    pub fn merge(&mut self, other: &TwoFold) {
        let (s, e) = two_sum(self.sum, other.sum);
        self.sum = s;
        self.err += e + other.err;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.err
    }
}

impl FromIterator<f64> for TwoFold {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = TwoFold::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ComplexTwoFold {
    re: TwoFold,
    im: TwoFold,
}

impl ComplexTwoFold {
    pub const fn new() -> Self {
        ComplexTwoFold {
            re: TwoFold::new(),
            im: TwoFold::new(),
        }
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn merge(&mut self, other: &ComplexTwoFold) {
        self.re.merge(&other.re);
        self.im.merge(&other.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

impl FromIterator<Complex64> for ComplexTwoFold {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = ComplexTwoFold::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

/// Merge partials pairwise along a fixed binary tree.
pub fn tree_reduce<T: Clone>(mut parts: Vec<T>, identity: T, merge: impl Fn(&mut T, &T)) -> T {
    if parts.is_empty() {
        return identity;
    }
    while parts.len() > 1 {
        let mut next = Vec::with_capacity(parts.len().div_ceil(2));
        let mut it = parts.chunks(2);
        for pair in &mut it {
            let mut a = pair[0].clone();
            if let Some(b) = pair.get(1) {
                merge(&mut a, b);
            }
            next.push(a);
        }
        parts = next;
    }
    parts.pop().unwrap()
}

pub fn sum_real(xs: &[f64]) -> f64 {
    par_block_sum_real(xs.len(), |i| xs[i])
}

pub fn sum_complex(zs: &[Complex64]) -> Complex64 {
    par_block_sum(zs.len(), |i| zs[i])
}

/// `sum_{i < len} term(i)` with worker-count independent rounding.
pub fn par_block_sum<F>(len: usize, term: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    let blocks = len.div_ceil(BLOCK);
    let parts: Vec<ComplexTwoFold> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let lo = b * BLOCK;
            let hi = (lo + BLOCK).min(len);
            (lo..hi).map(&term).collect()
        })
        .collect();
    tree_reduce(parts, ComplexTwoFold::new(), |a, b| a.merge(b)).value()
}

pub fn par_block_sum_real<F>(len: usize, term: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let blocks = len.div_ceil(BLOCK);
    let parts: Vec<TwoFold> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let lo = b * BLOCK;
            let hi = (lo + BLOCK).min(len);
            (lo..hi).map(&term).collect()
        })
        .collect();
    tree_reduce(parts, TwoFold::new(), |a, b| a.merge(b)).value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensation_recovers_lost_bits() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        let naive: f64 = xs.iter().sum();
        let compensated: TwoFold = xs.iter().copied().collect();
        assert_eq!(naive, 1.0);
        assert_eq!(compensated.value(), 2.0);
    }

    #[test]
    fn tree_reduce_is_fixed_order() {
        let parts: Vec<u64> = (1..=9).collect();
        let s = tree_reduce(parts, 0, |a, b| *a += b);
        assert_eq!(s, 45);
        assert_eq!(tree_reduce(Vec::<u64>::new(), 7, |a, b| *a += b), 7);
    }

    #[test]
    fn parallel_sum_is_worker_count_invariant() {
        let xs: Vec<f64> = (0..100_000).map(|i| ((i as f64) * 0.37).sin() / (1.0 + i as f64)).collect();
        let mut results = Vec::new();
        for workers in [1, 3, 8] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build().unwrap();
            results.push(pool.install(|| sum_real(&xs)).to_bits());
        }
        assert!(results.windows(2).all(|w| w[0] == w[1]));
    }
}
