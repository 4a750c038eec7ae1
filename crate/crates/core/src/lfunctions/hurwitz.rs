//! Hurwitz zeta by Euler-Maclaurin, and Dirichlet L-values built from it.

use num_complex::Complex64;

use super::gamma::digamma;
use crate::characters::DirichletCharacter;
use crate::error::{Error, Result};
use crate::summation::ComplexTwoFold;

/// Largest modulus accepted by [`hurwitz_oracle`].
pub const ORACLE_Q_CEILING: u64 = 1000;

const DIRECT_TERMS: usize = 30;

/// `B_{2j}` for `j = 1..=12`.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43_867.0 / 798.0,
    -174_611.0 / 330.0,
    854_513.0 / 138.0,
    -236_364_091.0 / 2730.0,
];

/// `zeta(s, a) = sum_{k >= 0} (k + a)^{-s}` for `a > 0`, `s != 1`.
pub fn hurwitz_zeta(s: Complex64, a: f64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole { re: 1.0, im: 0.0 });
    }
    assert!(a > 0.0, "Hurwitz parameter must be positive");
    let mut acc = ComplexTwoFold::new();
    for k in 0..DIRECT_TERMS {
        acc.add(Complex64::new(k as f64 + a, 0.0).powc(-s));
    }
    let w = DIRECT_TERMS as f64 + a;
    let w_c = Complex64::new(w, 0.0);
    acc.add(w_c.powc(1.0 - s) / (s - 1.0));
    acc.add(0.5 * w_c.powc(-s));
    // B_{2j} / (2j)! * s (s+1) ... (s+2j-2) * w^{-s-2j+1}
    let mut rising = s;
    let mut power = w_c.powc(-s - 1.0);
    let mut factorial = 2.0;
    for (j, &b) in BERNOULLI.iter().enumerate() {
        acc.add(b / factorial * rising * power);
        let m = 2.0 * (j + 1) as f64;
        rising *= (s + m - 1.0) * (s + m);
        power /= w * w;
        factorial *= (m + 1.0) * (m + 2.0);
    }
    Ok(acc.value())
}

/// `L(s, chi) = q^{-s} sum_{a=1}^{q} chi(a) zeta(s, a/q)`.
pub fn hurwitz_oracle(chi: &DirichletCharacter, s: Complex64) -> Result<Complex64> {
    let q = chi.q();
    if q > ORACLE_Q_CEILING {
        return Err(Error::ModulusTooLarge(q, ORACLE_Q_CEILING));
    }
    let qf = q as f64;
    if s == Complex64::new(1.0, 0.0) {
        if chi.is_principal() {
            return Err(Error::Pole { re: 1.0, im: 0.0 });
        }
        // the poles cancel: L(1, chi) = -(1/q) sum chi(a) psi(a/q)
        let mut acc = ComplexTwoFold::new();
        for a in 1..=q {
            acc.add(chi.evaluate(a as i64) * digamma(a as f64 / qf));
        }
        return Ok(-acc.value() / qf);
    }
    let mut acc = ComplexTwoFold::new();
    for a in 1..=q {
        let v = chi.evaluate(a as i64);
        if v != Complex64::new(0.0, 0.0) {
            acc.add(v * hurwitz_zeta(s, a as f64 / qf)?);
        }
    }
    Ok(Complex64::new(qf, 0.0).powc(-s) * acc.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::factor_modulus;
    use std::f64::consts::PI;
    use std::sync::Arc;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn zeta_values() {
        assert!((hurwitz_zeta(c(2.0), 1.0).unwrap() - PI * PI / 6.0).norm() < 1e-13);
        assert!((hurwitz_zeta(c(4.0), 1.0).unwrap() - PI.powi(4) / 90.0).norm() < 1e-13);
        // zeta(1/2) = -1.4603545088095868...
        assert!((hurwitz_zeta(c(0.5), 1.0).unwrap() + 1.460_354_508_809_586_8).norm() < 1e-13);
        // zeta(s, 1/2) = (2^s - 1) zeta(s)
        let s = Complex64::new(0.5, 14.0);
        let lhs = hurwitz_zeta(s, 0.5).unwrap();
        let rhs = (Complex64::new(2.0, 0.0).powc(s) - 1.0) * hurwitz_zeta(s, 1.0).unwrap();
        assert!((lhs - rhs).norm() < 1e-11);
    }

    #[test]
    fn dirichlet_values() {
        let zeta = Arc::new(factor_modulus(1).unwrap()).principal();
        assert!((hurwitz_oracle(&zeta, c(2.0)).unwrap() - PI * PI / 6.0).norm() < 1e-12);
        assert!(hurwitz_oracle(&zeta, c(1.0)).is_err());
        let m4 = Arc::new(factor_modulus(4).unwrap());
        let chi4 = m4.character(1).unwrap();
        assert!((hurwitz_oracle(&chi4, c(1.0)).unwrap() - PI / 4.0).norm() < 1e-13);
        // Catalan's constant
        assert!((hurwitz_oracle(&chi4, c(2.0)).unwrap() - 0.915_965_594_177_219).norm() < 1e-13);
    }

    /// Alternating-series acceleration (Cohen, Rodriguez Villegas, Zagier)
    /// for `sum (-1)^k a_k` with totally monotone `a_k`.
    fn alternating_sum(a: impl Fn(usize) -> f64, n: usize) -> f64 {
        let d = (3.0 + 8f64.sqrt()).powi(n as i32);
        let d = (d + 1.0 / d) / 2.0;
        let (mut b, mut cc, mut s) = (-1.0, -d, 0.0);
        for k in 0..n {
            cc = b - cc;
            s += cc * a(k);
            b *= (k as f64 + n as f64) * (k as f64 - n as f64) / ((k as f64 + 0.5) * (k as f64 + 1.0));
        }
        s / d
    }

    #[test]
    fn half_line_value_mod_4() {
        let chi4 = Arc::new(factor_modulus(4).unwrap()).character(1).unwrap();
        let oracle = hurwitz_oracle(&chi4, c(0.5)).unwrap();
        let series = alternating_sum(|k| 1.0 / ((2 * k + 1) as f64).sqrt(), 30);
        assert!((oracle.re - series).abs() < 1e-12, "{oracle} vs {series}");
        assert!(oracle.im.abs() < 1e-14);
    }
}
