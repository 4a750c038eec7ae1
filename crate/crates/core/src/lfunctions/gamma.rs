//! Complex gamma function and archimedean factors.
//!
//! `ln Gamma` uses the Stirling series after shifting the argument to
//! `|z| >= 15`, with the reflection formula for `Re z < 1/2`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const STIRLING_RADIUS: f64 = 15.0;

/// `B_{2k} / (2k (2k - 1))` for `k = 1..=10`.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43_867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

fn check_pole(z: Complex64) -> Result<()> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        return Err(Error::Pole { re: z.re, im: z.im });
    }
    Ok(())
}

fn ln_gamma_stirling(z: Complex64) -> Complex64 {
    let mut w = z;
    let mut shift = Complex64::new(1.0, 0.0);
    let mut log_shift = Complex64::new(0.0, 0.0);
    let mut k = 0;
    while w.norm() < STIRLING_RADIUS {
        shift *= w;
        w += 1.0;
        k += 1;
        if k % 8 == 0 {
            log_shift += shift.ln();
            shift = Complex64::new(1.0, 0.0);
        }
    }
    log_shift += shift.ln();
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut power = inv;
    for c in STIRLING {
        series += power * c;
        power *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * (2.0 * PI).ln() + series - log_shift
}

/// `ln Gamma(z)` on some branch; `exp` of it is `Gamma(z)`.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    check_pole(z)?;
    if z.re < 0.5 {
        // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
        let s = (z * PI).sin();
        Ok(Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_stirling(1.0 - z))
    } else {
        Ok(ln_gamma_stirling(z))
    }
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(z)?.exp())
}

/// `Gamma_R(s) = pi^{-s/2} Gamma(s/2)`.
pub fn gamma_r(s: Complex64) -> Result<Complex64> {
    ln_gamma_r(s).map(|v| v.exp())
}

pub fn ln_gamma_r(s: Complex64) -> Result<Complex64> {
    Ok(-s / 2.0 * PI.ln() + ln_gamma(s / 2.0)?)
}

/// Digamma `psi(x)` for real `x > 0`.
pub fn digamma(mut x: f64) -> f64 {
    let mut acc = 0.0;
    while x < 12.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv2 = 1.0 / (x * x);
    // psi(x) ~ ln x - 1/(2x) - sum B_{2k} / (2k x^{2k})
    let tail = inv2
        * (1.0 / 12.0
            - inv2 * (1.0 / 120.0 - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
    acc + x.ln() - 0.5 / x - tail
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Lanczos (g = 7, n = 9) as an independent path for `Re z >= 1/2`.
    fn lanczos(z: Complex64) -> Complex64 {
        const G: f64 = 7.0;
        const COEF: [f64; 9] = [
            0.999_999_999_999_809_9,
            676.520_368_121_885_1,
            -1_259.139_216_722_402_8,
            771.323_428_777_653_1,
            -176.615_029_162_140_6,
            12.507_343_278_686_905,
            -0.138_571_095_265_720_12,
            9.984_369_578_019_572e-6,
            1.505_632_735_149_311_6e-7,
        ];
        let z = z - 1.0;
        let mut x = c(COEF[0], 0.0);
        for (i, &k) in COEF.iter().enumerate().skip(1) {
            x += k / (z + i as f64);
        }
        let t = z + G + 0.5;
        (2.0 * PI).sqrt() * t.powc(z + 0.5) * (-t).exp() * x
    }

    /// Arithmetic-geometric mean.
    fn agm(mut a: f64, mut b: f64) -> f64 {
        for _ in 0..40 {
            let (na, nb) = ((a + b) / 2.0, (a * b).sqrt());
            a = na;
            b = nb;
        }
        a
    }

    #[test]
    fn classical_values() {
        assert!((gamma_r(c(1.0, 0.0)).unwrap() - 1.0).norm() < 1e-14);
        assert!((gamma_r(c(2.0, 0.0)).unwrap() - 1.0 / PI).norm() < 1e-14);
        // Gamma(1/4)^2 = (2 pi)^{3/2} / AGM(1, sqrt 2)
        let gamma_quarter = ((2.0 * PI).powf(1.5) / agm(1.0, 2f64.sqrt())).sqrt();
        let expected = PI.powf(-0.25) * gamma_quarter;
        let got = gamma_r(c(0.5, 0.0)).unwrap();
        assert!((got.re - expected).abs() < 1e-13 * expected, "{got} vs {expected}");
        assert!((expected - 2.723_291).abs() < 1e-5);
        assert!((gamma(c(5.0, 0.0)).unwrap().re - 24.0).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_lanczos() {
        for z in [c(0.6, 0.0), c(1.5, 3.0), c(7.25, -11.0), c(30.0, 40.0), c(2.0, 60.0), c(45.0, 0.1)] {
            let a = gamma(z).unwrap();
            let b = lanczos(z);
            assert!((a - b).norm() <= 1e-12 * b.norm(), "z = {z}: {a} vs {b}");
        }
    }

    #[test]
    fn reflection_region() {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        for z in [c(-3.7, 0.2), c(0.1, -5.0), c(-20.5, 0.0), c(-0.5, 30.0)] {
            let lhs = gamma(z).unwrap() * lanczos(1.0 - z);
            let rhs = PI / (z * PI).sin();
            assert!((lhs - rhs).norm() <= 1e-11 * rhs.norm(), "z = {z}");
        }
    }

    #[test]
    fn poles_are_rejected() {
        assert!(matches!(gamma_r(c(0.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(gamma_r(c(-4.0, 0.0)), Err(Error::Pole { .. })));
        assert!(gamma_r(c(-3.0, 0.0)).is_ok());
    }

    #[test]
    fn duplication() {
        // Gamma_R(s) Gamma_R(s + 1) = 2 (2 pi)^{-s} Gamma(s)
        for k in 0..20 {
            let s = c(0.3 + 0.9 * k as f64, -7.0 + 0.8 * k as f64);
            let lhs = gamma_r(s).unwrap() * gamma_r(s + 1.0).unwrap();
            let rhs = 2.0 * c(2.0 * PI, 0.0).powc(-s) * lanczos(s);
            assert!((lhs - rhs).norm() <= 1e-10 * rhs.norm(), "s = {s}");
        }
    }

    #[test]
    fn digamma_values() {
        let euler_gamma = 0.577_215_664_901_532_9;
        assert!((digamma(1.0) + euler_gamma).abs() < 1e-14);
        assert!((digamma(0.5) + euler_gamma + 2.0 * 2f64.ln()).abs() < 1e-14);
        assert!((digamma(0.25) - (-euler_gamma - PI / 2.0 - 3.0 * 2f64.ln())).abs() < 1e-13);
    }
}
