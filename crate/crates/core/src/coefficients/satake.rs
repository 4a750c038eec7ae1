//! Prime-power coefficients from Satake parameters.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Elementary symmetric functions `e_0, ..., e_d` of `alpha`.
pub fn elementary_symmetric(alpha: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); alpha.len() + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (j, &a) in alpha.iter().enumerate() {
        for k in (1..=j + 1).rev() {
            e[k] = e[k] + e[k - 1] * a;
        }
    }
    e
}

/// Complete homogeneous symmetric polynomials `h_0, ..., h_r_max` via the
/// linear recurrence `h_r = sum_{k=1}^{min(r,d)} (-1)^{k-1} e_k h_{r-k}`.
pub fn complete_homogeneous(alpha: &[Complex64], r_max: usize) -> Vec<Complex64> {
    let e = elementary_symmetric(alpha);
    let d = alpha.len();
    let mut h = Vec::with_capacity(r_max + 1);
    h.push(Complex64::new(1.0, 0.0));
    for r in 1..=r_max {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 1..=r.min(d) {
            let term = e[k] * h[r - k];
            if k % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        h.push(acc);
    }
    h
}

/// `lambda(p^r) = h_r(alpha_1, ..., alpha_d)`.
pub fn lambda_from_satake(alpha: &[Complex64], r: usize) -> Complex64 {
    complete_homogeneous(alpha, r)[r]
}

/// `a(p^k) = sum_j alpha_j^k`.
pub fn power_sum(alpha: &[Complex64], k: u32) -> Complex64 {
    alpha.iter().map(|a| a.powu(k)).sum()
}

/// Satake pair `(alpha, beta)` with `alpha + beta = lambda`, `alpha beta = 1`.
pub fn gl2_satake(lambda: Complex64) -> [Complex64; 2] {
    let disc = (lambda * lambda - 4.0).sqrt();
    let alpha = (lambda + disc) / 2.0;
    let beta = lambda - alpha;
    [alpha, beta]
}

/// Degree-3 Satake parameters `(alpha^2, 1, beta^2)` of the symmetric-square
/// lift of a GL(2) form with normalised Hecke eigenvalue `lambda` at `p`.
pub fn sym_square_lift(lambda: f64, enforce_grc: bool) -> Result<[Complex64; 3]> {
    if enforce_grc && lambda.abs() > 2.0 + 1e-12 {
        return Err(Error::GrcViolation {
            p: 0,
            value: lambda.abs(),
            bound: 2.0,
        });
    }
    let [alpha, beta] = gl2_satake(Complex64::new(lambda, 0.0));
    Ok([alpha * alpha, Complex64::new(1.0, 0.0), beta * beta])
}

/// Residuals of the Newton-type identity `sum_{k=0}^{min(r,d)} (-1)^k e_k h_{r-k} = 0`
/// for `1 <= r <= r_max`, given the prime-power values `h` (with `h[0] = 1`).
pub fn newton_residuals(alpha: &[Complex64], h: &[Complex64]) -> Vec<f64> {
    let e = elementary_symmetric(alpha);
    let d = alpha.len();
    (1..h.len())
        .map(|r| {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in 0..=r.min(d) {
                let term = e[k] * h[r - k];
                if k % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc.norm()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// Direct enumeration of `sum_{r_1+...+r_d = r} prod alpha_j^{r_j}`.
    fn compositions_sum(alpha: &[Complex64], r: usize) -> Complex64 {
        fn go(alpha: &[Complex64], r: usize) -> Complex64 {
            match alpha.split_first() {
                None => {
                    if r == 0 {
                        c(1.0)
                    } else {
                        c(0.0)
                    }
                }
                Some((&a, rest)) => (0..=r).map(|k| a.powu(k as u32) * go(rest, r - k)).sum(),
            }
        }
        go(alpha, r)
    }

    #[test]
    fn tau3_from_ones() {
        let ones = [c(1.0); 3];
        assert_eq!(lambda_from_satake(&ones, 2), c(6.0));
        assert_eq!(compositions_sum(&ones, 2), c(6.0));
        assert_eq!(lambda_from_satake(&ones, 0), c(1.0));
        assert_eq!(power_sum(&ones, 5), c(3.0));
    }

    #[test]
    fn recurrence_matches_enumeration() {
        let alpha = [
            Complex64::from_polar(1.0, 0.3),
            Complex64::from_polar(0.9, -1.1),
            Complex64::from_polar(1.0, 2.0),
            c(-0.4),
        ];
        for r in 0..8 {
            let diff = lambda_from_satake(&alpha, r) - compositions_sum(&alpha, r);
            assert!(diff.norm() < 1e-12, "r = {r}");
        }
    }

    #[test]
    fn gl2_pair() {
        let lambda = 1.3;
        let [a, b] = gl2_satake(c(lambda));
        assert!((a * b - 1.0).norm() < 1e-14);
        assert!((lambda_from_satake(&[a, b], 1) - lambda).norm() < 1e-14);
        // power_sum(alpha, 2) = lambda^2 - 2
        assert!((power_sum(&[a, b], 2) - (lambda * lambda - 2.0)).norm() < 1e-14);
        assert_eq!(power_sum(&[a, b], 1), lambda_from_satake(&[a, b], 1));
    }

    #[test]
    fn sym_square_examples() {
        let s = sym_square_lift(2.0, true).unwrap();
        for z in s {
            assert!((z - 1.0).norm() < 1e-12);
        }
        let s = sym_square_lift(0.0, true).unwrap();
        assert!((s[0] + 1.0).norm() < 1e-15 && (s[2] + 1.0).norm() < 1e-15);
        assert!((lambda_from_satake(&s, 1) + 1.0).norm() < 1e-15);
        for lambda in [-1.9, -0.5, 0.7, 1.99] {
            let s = sym_square_lift(lambda, true).unwrap();
            assert!(s.iter().all(|z| (z.norm() - 1.0).abs() < 1e-12));
            assert!((lambda_from_satake(&s, 1) - (lambda * lambda - 1.0)).norm() < 1e-12);
        }
        assert!(sym_square_lift(2.5, true).is_err());
        assert!(sym_square_lift(2.5, false).is_ok());
    }
}
