//! Zero datasets and the prime/zero diagnostics built on them.

use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::SpfSieve;
use crate::characters::DirichletCharacter;
use crate::coefficients::{power_sum, CoefficientKind, MultiplicativeCoefficients};
use crate::error::{Error, Result};
use crate::summation::{ComplexTwoFold, TwoFold};

/// Ordinates `0 < gamma_1 <= gamma_2 <= ...` of nontrivial zeros of one L-function.
#[derive(Debug, Clone, Serialize)]
pub struct ZeroDataset {
    label: String,
    ordinates: Vec<f64>,
    critical_line: bool,
    source: Option<PathBuf>,
}

impl ZeroDataset {
    /// Parse a zero file: one positive ordinate per line, `#` comments, and a
    /// `critical-line: yes` header line (optionally behind `#`).
    pub fn parse(label: &str, text: &str) -> Result<Self> {
        let mut header = None;
        let mut ordinates = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let body = raw.trim();
            let stripped = body.trim_start_matches('#').trim();
            if let Some(rest) = stripped.strip_prefix("critical-line:") {
                header = Some(match rest.trim() {
                    "yes" => true,
                    "no" => false,
                    other => {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("critical-line must be yes or no, got {other:?}"),
                        })
                    }
                });
                continue;
            }
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            let gamma: f64 = body.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("not an ordinate: {body:?}"),
            })?;
            ordinates.push(gamma);
        }
        let critical_line = header.ok_or(Error::Parse {
            line: 1,
            message: "missing \"critical-line: yes\" header".into(),
        })?;
        Self::from_ordinates(label, ordinates, critical_line)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let label = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let mut ds = Self::parse(&label, &text)?;
        ds.source = Some(path.to_path_buf());
        Ok(ds)
    }

    pub fn from_ordinates(label: &str, ordinates: Vec<f64>, critical_line: bool) -> Result<Self> {
        if ordinates.is_empty() {
            return Err(Error::InvalidParameters("zero dataset is empty".into()));
        }
        for (k, g) in ordinates.iter().enumerate() {
            if !(*g > 0.0 && g.is_finite()) {
                return Err(Error::Parse {
                    line: k + 1,
                    message: format!("ordinate {g} is not positive"),
                });
            }
            if k > 0 && ordinates[k - 1] > *g {
                return Err(Error::Parse {
                    line: k + 1,
                    message: "ordinates are not sorted".into(),
                });
            }
        }
        Ok(ZeroDataset {
            label: label.to_string(),
            ordinates,
            critical_line,
            source: None,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ordinates(&self) -> &[f64] {
        &self.ordinates
    }

    pub fn critical_line(&self) -> bool {
        self.critical_line
    }

    pub fn source(&self) -> Option<&Path> {
        self.source.as_deref()
    }

    pub fn t_max(&self) -> f64 {
        *self.ordinates.last().expect("non-empty")
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }
}

/// `Lambda(n) a_F(n)` for `n <= n_max` (index 0 unused), with
/// `a_F(p^k) = sum_j alpha_j(p)^k`.
pub fn log_derivative_coefficients(f: &MultiplicativeCoefficients, n_max: u64) -> Result<Vec<Complex64>> {
    let sieve = SpfSieve::new(n_max.max(2));
    let mut out = vec![Complex64::new(0.0, 0.0); n_max as usize + 1];
    for &p in sieve.primes() {
        let p = p as u64;
        if p > n_max {
            break;
        }
        let alpha = f.satake(p)?.ok_or_else(|| {
            Error::InvalidParameters(format!("{} has no Satake parameters at {p}", f.label()))
        })?;
        let lp = (p as f64).ln();
        let mut pk = p;
        let mut k = 1;
        loop {
            out[pk as usize] = lp * power_sum(&alpha, k);
            match pk.checked_mul(p) {
                Some(next) if next <= n_max => {
                    pk = next;
                    k += 1;
                }
                _ => break,
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct ExplicitFormulaReport {
    pub x: f64,
    pub t: f64,
    pub zeros_used: usize,
    /// `sum_{n <= X} Lambda(n) a_F(n) chi(n)`.
    pub prime_side: f64,
    /// `X` for the zeta pole, else 0.
    pub pole_term: f64,
    /// `sum_{0 < gamma <= T} 2 Re(X^rho / rho)`.
    pub zero_sum: f64,
    pub residual: f64,
    /// `X / T (log X log(qT))^2`.
    pub envelope: f64,
}

/// `|psi_F(X, chi) - delta X + sum_{|gamma| <= T} X^rho / rho|` for real
/// degree-1 data, pairing `rho = 1/2 + i gamma` with its conjugate.
pub fn explicit_formula_residual(
    zeros: &ZeroDataset,
    f: &MultiplicativeCoefficients,
    chi: &DirichletCharacter,
    x: f64,
    t: f64,
) -> Result<ExplicitFormulaReport> {
    if !zeros.critical_line() {
        return Err(Error::NotCriticalLine);
    }
    if f.degree() != 1 {
        return Err(Error::InvalidParameters("the explicit formula check is degree 1 only".into()));
    }
    if t > zeros.t_max() * (1.0 + 1e-12) {
        return Err(Error::HeightExceeded { t, t_max: zeros.t_max() });
    }
    if !(x > 2.0) || (x.fract() - 0.5).abs() > 1e-9 {
        return Err(Error::InvalidParameters(format!("X must be > 2 with fractional part 1/2, got {x}")));
    }
    let n_max = x.floor() as u64;
    let coeffs = log_derivative_coefficients(f, n_max)?;
    let mut prime_side = ComplexTwoFold::new();
    for (n, c) in coeffs.iter().enumerate().skip(2) {
        if *c != Complex64::new(0.0, 0.0) {
            prime_side.add(*c * chi.evaluate(n as i64));
        }
    }
    let prime_side = prime_side.value();
    let zeta_like = chi.is_principal() && f.kind() == CoefficientKind::TauD(1);
    let pole_term = if zeta_like { x } else { 0.0 };
    let lx = x.ln();
    let mut zero_sum = TwoFold::new();
    let mut used = 0;
    for &g in zeros.ordinates() {
        if g > t {
            break;
        }
        let rho = Complex64::new(0.5, g);
        zero_sum.add(2.0 * ((rho * lx).exp() / rho).re);
        used += 1;
    }
    let zero_sum = zero_sum.value();
    let residual = (prime_side.re - pole_term + zero_sum).hypot(prime_side.im);
    let envelope = if t > 0.0 {
        x / t * (lx * (chi.q() as f64 * t).max(std::f64::consts::E).ln()).powi(2)
    } else {
        f64::INFINITY
    };
    Ok(ExplicitFormulaReport {
        x,
        t,
        zeros_used: used,
        prime_side: prime_side.re,
        pole_term,
        zero_sum,
        residual,
        envelope,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZeroCount {
    pub count: usize,
    /// `T` lies more than 1 beyond the last ordinate, so the count is not informative.
    pub out_of_range: bool,
}

/// Number of zeros `rho` with `|Im rho - T| <= 1`, counting `+-gamma`.
pub fn zero_count_window(zeros: &ZeroDataset, t: f64) -> ZeroCount {
    let count = zeros
        .ordinates()
        .iter()
        .map(|&g| usize::from((g - t).abs() <= 1.0) + usize::from((-g - t).abs() <= 1.0))
        .sum();
    ZeroCount {
        count,
        out_of_range: t.abs() > zeros.t_max() + 1.0,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CancellationReport {
    pub y: u64,
    pub h: u64,
    pub sum: Complex64,
    pub prime_count: u64,
    /// `|sum| / (h / log Y)`.
    pub ratio: f64,
}

/// `|sum_{Y <= p <= Y + h} lambda_F(p) chi(p)|` against `h / log Y`.
pub fn prime_cancellation_probe(
    f: &MultiplicativeCoefficients,
    chi: &DirichletCharacter,
    y: u64,
    h: u64,
) -> Result<CancellationReport> {
    if y < 3 {
        return Err(Error::InvalidParameters(format!("Y must be at least 3, got {y}")));
    }
    let yf = y as f64;
    if (h as f64) < yf.powf(1.0 / 2024.0) || h > y {
        return Err(Error::InvalidParameters(format!("h = {h} outside [Y^(1/2024), Y] for Y = {y}")));
    }
    let top = y + h;
    let sieve = SpfSieve::new(top);
    let mut acc = ComplexTwoFold::new();
    let mut count = 0;
    for &p in sieve.primes() {
        let p = p as u64;
        if p < y {
            continue;
        }
        if p > top {
            break;
        }
        acc.add(f.prime_value(p)? * chi.evaluate(p as i64));
        count += 1;
    }
    let sum = acc.value();
    Ok(CancellationReport {
        y,
        h,
        sum,
        prime_count: count,
        ratio: sum.norm() / (h as f64 / yf.ln()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;
    use crate::characters::factor_modulus;
    use std::sync::Arc;

    const FIRST_ZEROS: [f64; 10] = [
        14.134725141734694,
        21.022039638771555,
        25.010857580145689,
        30.424876125859513,
        32.935061587739190,
        37.586178158825671,
        40.918719012147495,
        43.327073280914999,
        48.005150881167160,
        49.773832477672302,
    ];

    fn zeta_zeros() -> ZeroDataset {
        ZeroDataset::from_ordinates("zeta", FIRST_ZEROS.to_vec(), true).unwrap()
    }

    #[test]
    fn parse_requires_header_and_order() {
        let ok = ZeroDataset::parse("z", "# critical-line: yes\n# comment\n14.13\n21.02\n").unwrap();
        assert_eq!(ok.len(), 2);
        assert_eq!(ok.t_max(), 21.02);
        assert!(ZeroDataset::parse("z", "14.13\n").is_err());
        assert!(ZeroDataset::parse("z", "critical-line: yes\n21.0\n14.0\n").is_err());
        assert!(ZeroDataset::parse("z", "critical-line: yes\n-1.0\n").is_err());
        let flagged_off = ZeroDataset::parse("z", "critical-line: no\n14.13\n").unwrap();
        assert!(!flagged_off.critical_line());
    }

    #[test]
    fn von_mangoldt_values() {
        let c = log_derivative_coefficients(&MultiplicativeCoefficients::one(), 30).unwrap();
        assert_eq!(c[6], Complex64::new(0.0, 0.0));
        assert!((c[8].re - 2f64.ln()).abs() < 1e-15);
        assert!((c[25].re - 5f64.ln()).abs() < 1e-15);
        let l = log_derivative_coefficients(&MultiplicativeCoefficients::liouville(), 30).unwrap();
        // a_F(p^k) = (-1)^k for liouville
        assert!((l[7].re + 7f64.ln()).abs() < 1e-15);
        assert!((l[9].re - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn zero_counts() {
        let z = zeta_zeros();
        assert_eq!(zero_count_window(&z, 14.0).count, 1);
        assert_eq!(zero_count_window(&z, 0.0).count, 0);
        let far = zero_count_window(&z, 1000.0);
        assert_eq!(far.count, 0);
        assert!(far.out_of_range);
        assert_eq!(zero_count_window(&z, -14.0).count, 1);
    }

    #[test]
    fn explicit_formula_checks() {
        let one = MultiplicativeCoefficients::one();
        let chi = Arc::new(factor_modulus(1).unwrap()).principal();
        let z = zeta_zeros();
        assert!(matches!(
            explicit_formula_residual(&z, &one, &chi, 100.5, 60.0),
            Err(Error::HeightExceeded { .. })
        ));
        assert!(explicit_formula_residual(&z, &one, &chi, 100.0, 40.0).is_err());
        let empty = explicit_formula_residual(&z, &one, &chi, 100.5, 0.0).unwrap();
        assert_eq!(empty.zeros_used, 0);
        assert!((empty.residual - (empty.prime_side - 100.5).abs()).abs() < 1e-12);
        let r = explicit_formula_residual(&z, &one, &chi, 100.5, z.t_max()).unwrap();
        assert!(r.residual < empty.residual);
        let off = ZeroDataset::from_ordinates("z", FIRST_ZEROS.to_vec(), false).unwrap();
        assert!(matches!(
            explicit_formula_residual(&off, &one, &chi, 100.5, 20.0),
            Err(Error::NotCriticalLine)
        ));
    }

    #[test]
    fn cancellation_probe_counts_primes() {
        let one = MultiplicativeCoefficients::one();
        let chi = Arc::new(factor_modulus(1).unwrap()).principal();
        let r = prime_cancellation_probe(&one, &chi, 10_000, 1000).unwrap();
        let expected = primes_up_to(11_000).iter().filter(|&&p| p >= 10_000).count() as u64;
        assert_eq!(r.prime_count, expected);
        assert!((r.sum.re - expected as f64).abs() < 1e-9);
        assert!(prime_cancellation_probe(&one, &chi, 10_000, 1).is_err());
        assert!(prime_cancellation_probe(&one, &chi, 10_000, 20_000).is_err());
    }
}
