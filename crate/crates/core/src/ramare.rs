//! The Ramaré weight and the four-term rearrangement of a twisted sum.
//!
//! For a window `[P1, P2]` write `omega(m)` for the number of distinct primes
//! of `m` in the window. Then
//!
//! ```text
//! sum_{n <= X} f(n) chi(n) = bilinear + correction + overshoot + rough
//! ```
//!
//! where `bilinear` runs over blocks `e^{j/H} < p <= e^{(j+1)/H}` with the
//! condition `mp <= X` dropped, `overshoot` puts back exactly what dropping it
//! added (with sign), `correction` fixes the terms with `p | m`, and `rough`
//! is the sum over `n` with no prime factor in the window. Every component is
//! a finite sum, so the identity is exact up to rounding.

use num_complex::Complex64;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{factor, primes_up_to, window_omega_table};
use crate::characters::DirichletCharacter;
use crate::coefficients::MultiplicativeCoefficients;
use crate::error::{Error, Result};
use crate::summation::{par_block_sum, tree_reduce, ComplexTwoFold};

/// `sum_{pm = n, P1 <= p <= P2} 1 / (omega(m) + [p does not divide m])`.
pub fn ramare_weight(n: u64, p1: u64, p2: u64) -> Ratio<u64> {
    assert!(n >= 1);
    let window: Vec<u64> = factor(n)
        .into_iter()
        .map(|(p, _)| p)
        .filter(|&p| p1 <= p && p <= p2)
        .collect();
    let mut total = Ratio::from_integer(0u64);
    for &p in &window {
        let m = n / p;
        let omega_m = window.iter().filter(|&&r| m % r == 0).count() as u64;
        let coprime = u64::from(m % p != 0);
        total += Ratio::new(1, omega_m + coprime);
    }
    total
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecompositionPlan {
    pub x: u64,
    pub p1: u64,
    pub p2: u64,
    pub h: f64,
}

impl DecompositionPlan {
    pub fn new(x: u64, p1: u64, p2: u64, h: f64) -> Result<Self> {
        if p1 > p2 {
            return Err(Error::WindowOrdering {
                p1: p1 as f64,
                p2: p2 as f64,
                x: x as f64,
            });
        }
        if p1 < 2 || p2 > x {
            return Err(Error::InvalidParameters(format!(
                "need 2 <= P1 <= P2 <= X, got P1 = {p1}, P2 = {p2}, X = {x}"
            )));
        }
        if !(h >= 1.0 && h.is_finite()) {
            return Err(Error::InvalidParameters(format!("need H >= 1, got {h}")));
        }
        Ok(DecompositionPlan { x, p1, p2, h })
    }

    /// `e^{j/H}`; block `j` is `(block_edge(j), block_edge(j + 1)]`.
    pub fn block_edge(&self, j: i64) -> f64 {
        (j as f64 / self.h).exp()
    }

    pub fn j_min(&self) -> i64 {
        (self.h * (self.p1 as f64).ln()).floor() as i64
    }

    pub fn j_max(&self) -> i64 {
        (self.h * (self.p2 as f64).ln()).floor() as i64
    }

    /// Block index containing `p`, consistent with [`Self::block_edge`].
    pub fn block_of(&self, p: u64) -> i64 {
        let pf = p as f64;
        let mut j = (self.h * pf.ln()).ceil() as i64 - 1;
        while self.block_edge(j) >= pf {
            j -= 1;
        }
        while self.block_edge(j + 1) < pf {
            j += 1;
        }
        j
    }

    /// `floor(X e^{1/H})`, the largest `n` the overshoot can reach.
    pub fn overshoot_limit(&self) -> u64 {
        (self.x as f64 * (1.0 / self.h).exp()).floor() as u64
    }

    /// Primes of the window grouped by block, in increasing `j`.
    pub fn blocks(&self) -> Vec<(i64, Vec<u64>)> {
        let mut out: Vec<(i64, Vec<u64>)> = Vec::new();
        for p in primes_up_to(self.p2).into_iter().filter(|&p| p >= self.p1) {
            let j = self.block_of(p);
            match out.last_mut() {
                Some((last, ps)) if *last == j => ps.push(p),
                _ => out.push((j, vec![p])),
            }
        }
        out
    }

    /// `floor(X e^{-j/H})`, raised if needed so that `m <= X/p` is always
    /// inside for every `p` of block `j` despite rounding in `exp`.
    fn m_limit(&self, j: i64, p_min: u64) -> u64 {
        let raw = (self.x as f64 / self.block_edge(j)).floor() as u64;
        raw.max(self.x / p_min)
    }
}

/// The rule `P1 = exp(log^{beta+eps} X)`, `P2 = exp(log X / log log X)`,
/// `H = log^{2 gamma / 3} X`, with `P1, P2` rounded down (and `P1 >= 2`).
pub fn choose_parameters(x: u64, beta: f64, gamma: f64, epsilon: f64) -> Result<DecompositionPlan> {
    if !(0.0..1.0).contains(&beta) {
        return Err(Error::InvalidParameters(format!("need 0 <= beta < 1, got {beta}")));
    }
    if !(gamma > 0.0) {
        return Err(Error::InvalidParameters(format!("need gamma > 0, got {gamma}")));
    }
    if !(epsilon > 0.0 && beta + epsilon < 1.0) {
        return Err(Error::InvalidParameters(format!(
            "need 0 < epsilon < 1 - beta, got epsilon = {epsilon}, beta = {beta}"
        )));
    }
    let log_x = (x as f64).ln();
    let p1 = log_x.powf(beta + epsilon).exp().floor().max(2.0);
    // log X / log log X is increasing only once log log X > 1.
    let p2 = if log_x > std::f64::consts::E {
        (log_x / log_x.ln()).exp().floor()
    } else {
        0.0
    };
    if p1 > p2 {
        return Err(Error::WindowOrdering { p1, p2, x: x as f64 });
    }
    let h = log_x.powf(2.0 * gamma / 3.0).max(1.0);
    DecompositionPlan::new(x, p1 as u64, p2 as u64, h)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecompositionResult {
    pub bilinear_term: Complex64,
    pub p_divides_m_correction: Complex64,
    pub overshoot_term: Complex64,
    pub rough_term: Complex64,
    pub direct_sum: Complex64,
    /// `sum_{n <= X} |f(n)|`, the scale for relative residuals.
    pub absolute_mass: f64,
}

impl DecompositionResult {
    pub fn reconstructed(&self) -> Complex64 {
        self.bilinear_term + self.p_divides_m_correction + self.overshoot_term + self.rough_term
    }

    pub fn residual(&self) -> f64 {
        (self.reconstructed() - self.direct_sum).norm()
    }

    pub fn relative_residual(&self) -> f64 {
        if self.absolute_mass == 0.0 {
            self.residual()
        } else {
            self.residual() / self.absolute_mass
        }
    }
}

/// Shared tables for one `(f, chi, plan)`.
struct Tables {
    f: Vec<Complex64>,
    chi: Vec<Complex64>,
    omega: Vec<u8>,
    /// prefix sums of `f(m) chi(m) / (omega(m) + 1)`, `w_prefix[0] = 0`.
    w_prefix: Vec<Complex64>,
}

impl Tables {
    fn new(f: &MultiplicativeCoefficients, chi: &DirichletCharacter, plan: &DecompositionPlan) -> Result<Self> {
        let need = plan.overshoot_limit();
        if f.ceiling() < need {
            return Err(Error::CeilingExceeded {
                n: need,
                ceiling: f.ceiling(),
            });
        }
        let x = plan.x;
        let f_table = f.table(x)?;
        let chi_table = chi.values();
        let omega = window_omega_table(x, plan.p1, plan.p2);
        let mut w_prefix = Vec::with_capacity(x as usize + 1);
        let mut acc = ComplexTwoFold::new();
        w_prefix.push(acc.value());
        for m in 1..=x as usize {
            let c = chi_table[m % chi_table.len()];
            acc.add(f_table[m] * c / (omega[m] as f64 + 1.0));
            w_prefix.push(acc.value());
        }
        Ok(Tables {
            f: f_table,
            chi: chi_table,
            omega,
            w_prefix,
        })
    }

    fn chi(&self, n: u64) -> Complex64 {
        self.chi[(n % self.chi.len() as u64) as usize]
    }

    fn w_upto(&self, m: u64) -> Complex64 {
        self.w_prefix[(m as usize).min(self.w_prefix.len() - 1)]
    }
}

/// Exact four-term rearrangement of `sum_{n <= X} f(n) chi(n)`.
pub fn decompose(
    f: &MultiplicativeCoefficients,
    chi: &DirichletCharacter,
    plan: &DecompositionPlan,
) -> Result<DecompositionResult> {
    let t = Tables::new(f, chi, plan)?;
    let x = plan.x;
    let blocks = plan.blocks();

    // (bilinear, overshoot) per block, merged in block order.
    let parts: Vec<(ComplexTwoFold, ComplexTwoFold)> = blocks
        .par_iter()
        .map(|(j, primes)| {
            let m_lim = plan.m_limit(*j, primes[0]);
            let w_full = t.w_upto(m_lim);
            let mut bilinear = ComplexTwoFold::new();
            let mut over = ComplexTwoFold::new();
            for &p in primes {
                let fp = t.f[p as usize] * t.chi(p);
                bilinear.add(fp * w_full);
                over.add(-(fp * (w_full - t.w_upto(x / p))));
            }
            (bilinear, over)
        })
        .collect();
    let (bilinear, overshoot) = tree_reduce(parts, (ComplexTwoFold::new(), ComplexTwoFold::new()), |a, b| {
        a.0.merge(&b.0);
        a.1.merge(&b.1);
    });

    let window: Vec<u64> = blocks.iter().flat_map(|(_, ps)| ps.iter().copied()).collect();
    let parts: Vec<ComplexTwoFold> = window
        .par_iter()
        .map(|&p| {
            let mut acc = ComplexTwoFold::new();
            let fp = t.f[p as usize] * t.chi(p);
            // m = p k with m <= X/p
            let mut m = p;
            while m * p <= x {
                let om = t.omega[m as usize] as f64;
                let pm = p * m;
                acc.add(t.f[pm as usize] * t.chi(pm) / om);
                acc.add(-(fp * t.f[m as usize] * t.chi(m) / (om + 1.0)));
                m += p;
            }
            acc
        })
        .collect();
    let correction = tree_reduce(parts, ComplexTwoFold::new(), |a, b| a.merge(b));

    let len = x as usize;
    let rough = par_block_sum(len, |i| {
        let n = i + 1;
        if t.omega[n] == 0 {
            t.f[n] * t.chi(n as u64)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let direct = par_block_sum(len, |i| t.f[i + 1] * t.chi((i + 1) as u64));
    let mass = par_block_sum(len, |i| Complex64::new(t.f[i + 1].norm(), 0.0)).re;

    Ok(DecompositionResult {
        bilinear_term: bilinear.value(),
        p_divides_m_correction: correction.value(),
        overshoot_term: overshoot.value(),
        rough_term: rough,
        direct_sum: direct,
        absolute_mass: mass,
    })
}

/// The untwisted overshoot coefficients `d_n` for `X < n <= X e^{1/H}`,
/// returned as `(n, d_n)`; `overshoot_term = sum d_n chi(n)`.
pub fn overshoot_coefficients(
    f: &MultiplicativeCoefficients,
    plan: &DecompositionPlan,
) -> Result<Vec<(u64, Complex64)>> {
    let x = plan.x;
    let top = plan.overshoot_limit();
    let f_table = f.table(x)?;
    let omega = window_omega_table(x, plan.p1, plan.p2);
    let mut d = vec![ComplexTwoFold::new(); (top - x) as usize];
    for (j, primes) in plan.blocks() {
        let m_lim = plan.m_limit(j, primes[0]);
        for p in primes {
            for m in x / p + 1..=m_lim {
                let i = (p * m - x - 1) as usize;
                if i >= d.len() {
                    // rounding in exp() at a block edge
                    d.resize(i + 1, ComplexTwoFold::new());
                }
                d[i].add(-(f_table[p as usize] * f_table[m as usize] / (omega[m as usize] as f64 + 1.0)));
            }
        }
    }
    Ok(d
        .into_iter()
        .enumerate()
        .map(|(i, acc)| (x + 1 + i as u64, acc.value()))
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlockSum {
    pub value: Complex64,
    pub prime_count: u64,
    /// `sum |f(p)|` over the block, the trivial bound.
    pub trivial_bound: f64,
}

/// `sum f(p) chi(p)` over `e^{j/H} < p <= e^{(j+1)/H}`, `P1 <= p <= P2`.
pub fn prime_block_sum(
    f: &MultiplicativeCoefficients,
    chi: &DirichletCharacter,
    j: i64,
    h: f64,
    p1: u64,
    p2: u64,
) -> Result<BlockSum> {
    let lo = (j as f64 / h).exp();
    let hi = ((j + 1) as f64 / h).exp();
    let top = (hi.floor() as u64).min(p2);
    let mut value = ComplexTwoFold::new();
    let mut bound = 0.0;
    let mut count = 0;
    for p in primes_up_to(top) {
        let pf = p as f64;
        if p < p1 || pf <= lo || pf > hi {
            continue;
        }
        let fp = f.prime_value(p)?;
        value.add(fp * chi.evaluate(p as i64));
        bound += fp.norm();
        count += 1;
    }
    Ok(BlockSum {
        value: value.value(),
        prime_count: count,
        trivial_bound: bound,
    })
}
