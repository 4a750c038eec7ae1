//! Fourier coefficients of the discriminant form `Delta = q prod (1 - q^n)^24`.
//!
//! The expansion is done exactly. `prod (1 - q^n)^3` is Jacobi's sparse series
//! `sum (-1)^k (2k+1) q^{k(k+1)/2}`; squaring it sparsely gives `eta^6`, and two
//! number-theoretic-transform squarings give `eta^24`. The work is repeated
//! modulo four NTT primes and recombined by CRT into `i128`, which holds
//! `|tau(n)| <= d(n) n^{11/2}` comfortably for `n <= 10^6`. A fifth prime is
//! used only to confirm the reconstruction.

use rayon::prelude::*;

use crate::arith::{factor, inv_mod, mul_mod, pow_mod};
use crate::error::{Error, Result};

/// Largest table size supported.
pub const DELTA_CEILING: u64 = 1_000_000;

const CRT_PRIMES: [u64; 4] = [2_013_265_921, 1_004_535_809, 998_244_353, 754_974_721];
const CHECK_PRIME: u64 = 469_762_049;

#[derive(Debug, Clone)]
pub struct DeltaTable {
    tau: Vec<i128>,
    normalized: Vec<f64>,
}

impl DeltaTable {
    /// Ramanujan tau values `tau(1..=n_max)`.
    pub fn new(n_max: u64) -> Result<Self> {
        if n_max > DELTA_CEILING {
            return Err(Error::CeilingExceeded {
                n: n_max,
                ceiling: DELTA_CEILING,
            });
        }
        let n = n_max.max(1) as usize;
        let eta6 = eta_sixth(n);
        let residues: Vec<Vec<u64>> = CRT_PRIMES
            .iter()
            .chain(std::iter::once(&CHECK_PRIME))
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|&p| eta24_mod(&eta6, n, p))
            .collect();
        let garner = Garner::new(&CRT_PRIMES);
        let mut tau = vec![0i128; n + 1];
        for k in 0..n {
            let r = [residues[0][k], residues[1][k], residues[2][k], residues[3][k]];
            let value = garner.reconstruct(&r);
            if value.rem_euclid(CHECK_PRIME as i128) as u64 != residues[4][k] {
                return Err(Error::InvalidParameters(format!(
                    "CRT reconstruction of tau({}) failed",
                    k + 1
                )));
            }
            tau[k + 1] = value;
        }
        let normalized = tau
            .iter()
            .enumerate()
            .map(|(i, &t)| if i == 0 { 0.0 } else { t as f64 / (i as f64).powf(5.5) })
            .collect();
        Ok(DeltaTable { tau, normalized })
    }

    pub fn len(&self) -> u64 {
        (self.tau.len() - 1) as u64
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Unnormalised `tau(n)`.
    pub fn tau(&self, n: u64) -> i128 {
        self.tau[n as usize]
    }

    /// `tau(n) / n^{11/2}`.
    pub fn lambda(&self, n: u64) -> f64 {
        self.normalized[n as usize]
    }
}

/// Coefficients of `prod (1 - q^n)^6` below `q^n`, exactly.
fn eta_sixth(n: usize) -> Vec<i64> {
    let mut terms = Vec::new();
    let mut k = 0i64;
    loop {
        let e = (k * (k + 1) / 2) as usize;
        if e >= n {
            break;
        }
        let sign = if k % 2 == 0 { 1 } else { -1 };
        terms.push((e, sign * (2 * k + 1)));
        k += 1;
    }
    let mut out = vec![0i64; n];
    for &(i, a) in &terms {
        for &(j, b) in &terms {
            if i + j >= n {
                break;
            }
            out[i + j] += a * b;
        }
    }
    out
}

fn eta24_mod(eta6: &[i64], n: usize, p: u64) -> Vec<u64> {
    let g = primitive_root(p);
    let a: Vec<u64> = eta6.iter().map(|&c| c.rem_euclid(p as i64) as u64).collect();
    let eta12 = square_truncated(&a, n, p, g);
    square_truncated(&eta12, n, p, g)
}

fn primitive_root(p: u64) -> u64 {
    let order_primes: Vec<u64> = factor(p - 1).into_iter().map(|(r, _)| r).collect();
    (2..p)
        .find(|&g| order_primes.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1))
        .unwrap()
}

fn ntt(a: &mut [u64], invert: bool, p: u64, g: u64) {
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w = pow_mod(g, (p - 1) / len as u64, p);
        if invert {
            w = inv_mod(w, p).unwrap();
        }
        let half = len / 2;
        let mut twiddles = Vec::with_capacity(half);
        let mut t = 1u64;
        for _ in 0..half {
            twiddles.push(t);
            t = t * w % p;
        }
        for chunk in a.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for k in 0..half {
                let u = lo[k];
                let v = hi[k] * twiddles[k] % p;
                lo[k] = if u + v >= p { u + v - p } else { u + v };
                hi[k] = if u >= v { u - v } else { u + p - v };
            }
        }
        len <<= 1;
    }
    if invert {
        let inv_n = inv_mod(n as u64 % p, p).unwrap();
        for x in a.iter_mut() {
            *x = *x * inv_n % p;
        }
    }
}

/// First `n` coefficients of `a^2` modulo `p`.
fn square_truncated(a: &[u64], n: usize, p: u64, g: u64) -> Vec<u64> {
    let size = (2 * n - 1).next_power_of_two();
    let mut buf = vec![0u64; size];
    buf[..n].copy_from_slice(&a[..n]);
    ntt(&mut buf, false, p, g);
    for x in buf.iter_mut() {
        *x = *x * *x % p;
    }
    ntt(&mut buf, true, p, g);
    buf.truncate(n);
    buf
}

struct Garner {
    moduli: Vec<u64>,
    /// inverse of m_0 * ... * m_{i-1} modulo m_i
    inverses: Vec<u64>,
    product: u128,
}

impl Garner {
    fn new(moduli: &[u64]) -> Self {
        let inverses = (0..moduli.len())
            .map(|i| {
                let prefix = moduli[..i].iter().fold(1u64, |acc, &m| mul_mod(acc, m, moduli[i]));
                inv_mod(prefix, moduli[i]).unwrap()
            })
            .collect();
        let product = moduli.iter().map(|&m| m as u128).product();
        Garner {
            moduli: moduli.to_vec(),
            inverses,
            product,
        }
    }

    /// Symmetric representative in `(-M/2, M/2]`.
    fn reconstruct(&self, residues: &[u64]) -> i128 {
        let k = self.moduli.len();
        let mut digits = vec![0u64; k];
        for i in 0..k {
            let mi = self.moduli[i];
            // value of the mixed-radix prefix modulo m_i
            let mut acc = 0u64;
            let mut radix = 1u64;
            for j in 0..i {
                acc = (acc + mul_mod(digits[j], radix, mi)) % mi;
                radix = mul_mod(radix, self.moduli[j] % mi, mi);
            }
            let diff = (residues[i] % mi + mi - acc) % mi;
            digits[i] = mul_mod(diff, self.inverses[i], mi);
        }
        let mut value = 0u128;
        let mut radix = 1u128;
        for i in 0..k {
            value += digits[i] as u128 * radix;
            radix *= self.moduli[i] as u128;
        }
        if value > self.product / 2 {
            -((self.product - value) as i128)
        } else {
            value as i128
        }
    }
}
