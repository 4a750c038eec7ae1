//! Archimedean data `(d, mu_j, N, theta)` and `L_inf(s) = N^{s/2} prod Gamma_R(s + mu_j)`.

use num_complex::Complex64;
use num_rational::Ratio;
use serde::Serialize;

use super::gamma::ln_gamma_r;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaFactorSpec {
    degree: u32,
    mu: Vec<Complex64>,
    conductor: f64,
    theta: f64,
    /// Spectral parameters to use instead of `mu` for odd characters.
    mu_odd: Option<Vec<Complex64>>,
}

impl GammaFactorSpec {
    /// Checks `Re(mu_j) >= -1 + theta` and the admissible `theta` range:
    /// `1/(2d) < theta < 1/2` for `d >= 2`, `0 < theta < 1/2` for `d = 1`.
    pub fn new(mu: Vec<Complex64>, conductor: f64, theta: f64) -> Result<Self> {
        let degree = mu.len() as u32;
        if degree == 0 {
            return Err(Error::SpecInvariant("degree must be at least 1".into()));
        }
        if !(conductor > 0.0 && conductor.is_finite()) {
            return Err(Error::SpecInvariant(format!("conductor must be positive, got {conductor}")));
        }
        let lower = if degree >= 2 { 1.0 / (2.0 * degree as f64) } else { 0.0 };
        if !(theta > lower && theta < 0.5) {
            return Err(Error::SpecInvariant(format!(
                "theta = {theta} outside ({lower}, 1/2) for degree {degree}"
            )));
        }
        check_mu(&mu, theta)?;
        Ok(GammaFactorSpec {
            degree,
            mu,
            conductor,
            theta,
            mu_odd: None,
        })
    }

    /// Degree-1 data of a character mod `q` with the given parity: `mu = delta`, `N = q`.
    pub fn dirichlet(q: u64, parity: i8) -> Self {
        let delta = if parity < 0 { 1.0 } else { 0.0 };
        GammaFactorSpec::new(vec![Complex64::new(delta, 0.0)], q as f64, 0.25).expect("valid degree-1 data")
    }

    /// Register the spectral parameters used for odd characters.
    pub fn with_odd_parameters(mut self, mu_odd: Vec<Complex64>) -> Result<Self> {
        if mu_odd.len() != self.mu.len() {
            return Err(Error::SpecInvariant("odd parameters must have the same degree".into()));
        }
        check_mu(&mu_odd, self.theta)?;
        self.mu_odd = Some(mu_odd);
        Ok(self)
    }

    /// The spec seen by a character of the given parity.
    pub fn for_parity(&self, parity: i8) -> GammaFactorSpec {
        let mut out = self.clone();
        if parity < 0 {
            if let Some(odd) = &self.mu_odd {
                out.mu = odd.clone();
            }
        }
        out.mu_odd = None;
        out
    }

    /// Spec of the dual form: conjugated spectral parameters.
    pub fn dual(&self) -> GammaFactorSpec {
        let conj = |v: &Vec<Complex64>| v.iter().map(|z| z.conj()).collect::<Vec<_>>();
        GammaFactorSpec {
            degree: self.degree,
            mu: conj(&self.mu),
            conductor: self.conductor,
            theta: self.theta,
            mu_odd: self.mu_odd.as_ref().map(conj),
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn mu(&self) -> &[Complex64] {
        &self.mu
    }

    pub fn conductor(&self) -> f64 {
        self.conductor
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `ln L_inf(s)` on some branch.
    pub fn ln_l_infty(&self, s: Complex64) -> Result<Complex64> {
        let mut acc = s / 2.0 * self.conductor.ln();
        for &m in &self.mu {
            acc += ln_gamma_r(s + m)?;
        }
        Ok(acc)
    }

    pub fn l_infty(&self, s: Complex64) -> Result<Complex64> {
        self.ln_l_infty(s).map(|v| v.exp())
    }
}

fn check_mu(mu: &[Complex64], theta: f64) -> Result<()> {
    for (j, m) in mu.iter().enumerate() {
        if m.re < -1.0 + theta - 1e-15 {
            return Err(Error::SpecInvariant(format!(
                "Re(mu_{}) = {} < -1 + theta = {}",
                j + 1,
                m.re,
                -1.0 + theta
            )));
        }
    }
    Ok(())
}

pub fn l_infty(spec: &GammaFactorSpec, s: Complex64) -> Result<Complex64> {
    spec.l_infty(s)
}

/// `theta_d`: `5/14` for `d = 3`, `9/22` for `d = 4`, `1/2 - 1/(d^2 + 1)` for `d >= 5`.
pub fn theta_d(d: u32) -> Result<Ratio<u64>> {
    match d {
        0..=2 => Err(Error::InvalidParameters(format!("theta_d is only tabulated for d >= 3, got {d}"))),
        3 => Ok(Ratio::new(5, 14)),
        4 => Ok(Ratio::new(9, 22)),
        _ => {
            let d2 = d as u64 * d as u64;
            Ok(Ratio::new(1, 2) - Ratio::new(1, d2 + 1))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn l_infty_examples() {
        let s = GammaFactorSpec::new(vec![c(0.0)], 1.0, 0.25).unwrap();
        assert!((s.l_infty(c(1.0)).unwrap() - 1.0).norm() < 1e-14);
        let s = GammaFactorSpec::new(vec![c(0.0), c(1.0)], 4.0, 0.3).unwrap();
        assert!((l_infty(&s, c(1.0)).unwrap() - 2.0 / PI).norm() < 1e-14);
    }

    #[test]
    fn invariants_are_enforced() {
        assert!(matches!(
            GammaFactorSpec::new(vec![c(-0.9), c(0.0), c(0.0)], 8.0, 5.0 / 14.0),
            Err(Error::SpecInvariant(_))
        ));
        assert!(GammaFactorSpec::new(vec![c(0.0), c(0.0), c(0.0)], 8.0, 0.1).is_err());
        assert!(GammaFactorSpec::new(vec![c(0.0)], 0.0, 0.25).is_err());
        assert!(GammaFactorSpec::new(vec![c(5.0 / 14.0 - 1.0), c(0.0), c(0.0)], 8.0, 5.0 / 14.0).is_ok());
    }

    #[test]
    fn parity_hook() {
        let s = GammaFactorSpec::new(vec![c(0.0), c(0.0)], 9.0, 0.3)
            .unwrap()
            .with_odd_parameters(vec![c(1.0), c(1.0)])
            .unwrap();
        assert_eq!(s.for_parity(1).mu(), &[c(0.0), c(0.0)]);
        assert_eq!(s.for_parity(-1).mu(), &[c(1.0), c(1.0)]);
        assert_eq!(GammaFactorSpec::dirichlet(5, -1).mu(), &[c(1.0)]);
    }

    #[test]
    fn theta_table() {
        assert_eq!(theta_d(3).unwrap(), Ratio::new(5, 14));
        assert_eq!(theta_d(4).unwrap(), Ratio::new(9, 22));
        assert_eq!(theta_d(5).unwrap(), Ratio::new(6, 13));
        assert!(theta_d(2).is_err());
        for d in 3..20 {
            let t = theta_d(d).unwrap();
            assert!(t > Ratio::new(1, 2 * d as u64) && t < Ratio::new(1, 2));
        }
    }
}
