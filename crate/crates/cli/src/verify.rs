//! Invariant suites behind `twistlab verify`.

use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Ratio;
use serde::Serialize;

use twistlab_core::arith::{factor, gcd};
use twistlab_core::characters::{enumerate_characters, factor_modulus, primitive_count, Selection};
use twistlab_core::coefficients::{check_ramanujan, mertens_prime_sum, newton_residuals, DeltaTable};
use twistlab_core::lfunctions::{
    central_values_afe, explicit_formula_residual, gamma, gamma_r, hurwitz_oracle, AfeWeight,
};
use twistlab_core::moments::{large_sieve_ratio, plancherel_moment, SieveFamily};
use twistlab_core::ramare::{decompose, ramare_weight, DecompositionPlan};
use twistlab_core::{Error, GammaFactorSpec, MultiplicativeCoefficients, Result};

use crate::commands::{bundled_zeta_zeros, random_sequences};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Characters,
    Coefficients,
    Ramare,
    Moments,
    Lfunctions,
    All,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "characters" => Ok(Suite::Characters),
            "coefficients" => Ok(Suite::Coefficients),
            "ramare" => Ok(Suite::Ramare),
            "moments" => Ok(Suite::Moments),
            "lfunctions" => Ok(Suite::Lfunctions),
            "all" => Ok(Suite::All),
            other => Err(Error::InvalidParameters(format!(
                "unknown suite '{other}' (characters, coefficients, ramare, moments, lfunctions, all)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
    pub failures: Vec<String>,
}

struct Recorder {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Recorder {
    fn new(suite: &'static str) -> Self {
        Recorder { suite, checks: Vec::new() }
    }

    fn record(&mut self, name: &str, outcome: Result<(bool, String)>) {
        let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            suite: self.suite,
            name: name.to_string(),
            passed,
            detail,
        });
    }
}

pub fn cmd_verify(suite: Suite) -> VerifyReport {
    let mut checks = Vec::new();
    let run = |s: Suite| suite == s || suite == Suite::All;
    if run(Suite::Characters) {
        checks.extend(characters_suite());
    }
    if run(Suite::Coefficients) {
        checks.extend(coefficients_suite());
    }
    if run(Suite::Ramare) {
        checks.extend(ramare_suite());
    }
    if run(Suite::Moments) {
        checks.extend(moments_suite());
    }
    if run(Suite::Lfunctions) {
        checks.extend(lfunctions_suite());
    }
    let failures: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}/{}", c.suite, c.name))
        .collect();
    VerifyReport {
        suite,
        passed: failures.is_empty(),
        checks,
        failures,
    }
}

fn characters_suite() -> Vec<Check> {
    let mut r = Recorder::new("characters");
    r.record("orthogonality-exact", (|| {
        let mut pairs = 0;
        for q in [12u64, 101, 1000, 1999] {
            let m = Arc::new(factor_modulus(q)?);
            for (a, b) in [(1i64, 1i64), (7, 7), (7, 11), (-1, 1), (13, 3 + q as i64 * 5)] {
                if gcd(a.unsigned_abs(), q) != 1 || gcd(b.unsigned_abs(), q) != 1 {
                    continue;
                }
                let defect = m.orthogonality_defect_exact(a, b)?;
                if defect.iter().any(|&c| c != 0) {
                    return Ok((false, format!("q = {q}, ({a}, {b}): {defect:?}")));
                }
                pairs += 1;
            }
        }
        Ok((true, format!("{pairs} pairs")))
    })());
    r.record("primitive-count", (|| {
        for q in 1..=300u64 {
            let m = Arc::new(factor_modulus(q)?);
            let n = enumerate_characters(&m, Selection::PrimitiveOnly)?.len() as u64;
            if n != primitive_count(q) {
                return Ok((false, format!("q = {q}: {n} vs {}", primitive_count(q))));
            }
        }
        Ok((true, "q <= 300".into()))
    })());
    r.record("complete-multiplicativity", (|| {
        let mut worst: f64 = 0.0;
        for q in [8u64, 15, 97, 360] {
            let m = Arc::new(factor_modulus(q)?);
            for chi in enumerate_characters(&m, Selection::All)?.iter() {
                for (a, b) in [(2i64, 3i64), (5, 7), (-1, 11), (17, 19)] {
                    worst = worst.max((chi.evaluate(a * b) - chi.evaluate(a) * chi.evaluate(b)).norm());
                }
            }
        }
        Ok((worst < 1e-12, format!("max defect {worst:e}")))
    })());
    r.checks
}

/// `q prod (1 - q^n)^24` by repeated series multiplication.
pub fn tau_by_convolution(n_max: usize) -> Vec<i128> {
    let mut series = vec![0i128; n_max + 1];
    series[0] = 1;
    for n in 1..=n_max {
        for _ in 0..24 {
            for k in (n..=n_max).rev() {
                series[k] -= series[k - n];
            }
        }
    }
    let mut tau = vec![0i128; n_max + 1];
    tau[1..].copy_from_slice(&series[..n_max]);
    tau
}

fn coefficients_suite() -> Vec<Check> {
    let mut r = Recorder::new("coefficients");
    r.record("delta-vs-convolution", (|| {
        let oracle = tau_by_convolution(60);
        let table = DeltaTable::new(60)?;
        for n in 1..=60u64 {
            if table.tau(n) != oracle[n as usize] {
                return Ok((false, format!("tau({n}) = {} vs {}", table.tau(n), oracle[n as usize])));
            }
        }
        let known = (table.tau(2), table.tau(3), table.tau(5));
        Ok((known == (-24, 252, 4830), format!("tau(2), tau(3), tau(5) = {known:?}")))
    })());
    r.record("hecke-recursion", (|| {
        let f = MultiplicativeCoefficients::gl2_delta(1 << 12)?;
        let mut worst: f64 = 0.0;
        for p in [2u64, 3, 5, 7, 11, 13] {
            let mut r_max = 1;
            while p.pow(r_max + 1) <= 1 << 12 {
                r_max += 1;
            }
            for k in 1..r_max {
                let next = f.prime_power_value(p, k + 1)?;
                let pred = f.prime_value(p)? * f.prime_power_value(p, k)? - f.prime_power_value(p, k - 1)?;
                worst = worst.max((next - pred).norm());
            }
        }
        Ok((worst < 1e-10, format!("max defect {worst:e}")))
    })());
    r.record("newton-identities", (|| {
        let f = MultiplicativeCoefficients::sym_square_delta(1000)?;
        let mut worst: f64 = 0.0;
        for p in [2u64, 3, 5, 7, 97, 997] {
            let alpha = f.satake(p)?.expect("sym2 has Satake data");
            let h: Vec<Complex64> = (0..=6).map(|k| f.prime_power_value(p, k)).collect::<Result<_>>()?;
            worst = newton_residuals(&alpha, &h).into_iter().fold(worst, f64::max);
        }
        Ok((worst < 1e-12, format!("max residual {worst:e}")))
    })());
    r.record("ramanujan-bound", (|| {
        for f in [
            MultiplicativeCoefficients::tau_d(3),
            MultiplicativeCoefficients::gl2_delta(10_000)?,
            MultiplicativeCoefficients::sym_square_delta(10_000)?,
        ] {
            let rep = check_ramanujan(&f, 10_000)?;
            if !rep.passed {
                return Ok((false, format!("{}: {:?}", f.label(), rep.first_violation)));
            }
        }
        Ok((true, "n <= 10^4".into()))
    })());
    r.record("mertens-liouville", (|| {
        let f = MultiplicativeCoefficients::liouville();
        let d: Vec<f64> = [10_000u64, 100_000]
            .iter()
            .map(|&x| mertens_prime_sum(&f, x).map(|m| m.deviation))
            .collect::<Result<_>>()?;
        Ok(((d[0] - d[1]).abs() <= 0.05, format!("deviations {d:?}")))
    })());
    r.checks
}

fn ramare_suite() -> Vec<Check> {
    let mut r = Recorder::new("ramare");
    r.record("weight-identity", (|| {
        for (p1, p2) in [(2u64, 10u64), (5, 50), (30, 200)] {
            for n in 1..=20_000u64 {
                let hit = factor(n).iter().any(|&(p, _)| p1 <= p && p <= p2);
                let expected = Ratio::from_integer(u64::from(hit));
                if ramare_weight(n, p1, p2) != expected {
                    return Ok((false, format!("n = {n}, window [{p1}, {p2}]")));
                }
            }
        }
        Ok((true, "n <= 20000, three windows".into()))
    })());
    r.record("reconstruction", (|| {
        let plan = DecompositionPlan::new(10_000, 3, 60, 4.0)?;
        let m = Arc::new(factor_modulus(7)?);
        let mut worst: f64 = 0.0;
        for f in [MultiplicativeCoefficients::liouville(), MultiplicativeCoefficients::tau_d(3)] {
            for chi in enumerate_characters(&m, Selection::PrimitiveOnly)?.iter() {
                worst = worst.max(decompose(&f, chi, &plan)?.relative_residual());
            }
        }
        Ok((worst <= 1e-9, format!("max relative residual {worst:e}")))
    })());
    r.checks
}

fn moments_suite() -> Vec<Check> {
    let mut r = Recorder::new("moments");
    r.record("plancherel-vs-brute-force", (|| {
        let mut worst: f64 = 0.0;
        for q in [12u64, 101] {
            let m = Arc::new(factor_modulus(q)?);
            let fam = enumerate_characters(&m, Selection::All)?;
            for a in random_sequences(3, 2000, q) {
                let brute: f64 = fam
                    .iter()
                    .map(|chi| {
                        let v = chi.values();
                        a.iter()
                            .enumerate()
                            .map(|(i, z)| z * v[(i + 1) % v.len()])
                            .sum::<Complex64>()
                            .norm_sqr()
                    })
                    .sum();
                worst = worst.max((plancherel_moment(&a, q) - brute).abs() / brute);
            }
        }
        Ok((worst <= 1e-10, format!("max relative error {worst:e}")))
    })());
    r.record("large-sieve-envelope", (|| {
        let mut worst: f64 = 0.0;
        for a in random_sequences(10, 1000, 1) {
            worst = worst.max(large_sieve_ratio(&a, SieveFamily::Modulus(101))?);
        }
        Ok((worst <= 3.0, format!("max ratio {worst}")))
    })());
    r.checks
}

fn lfunctions_suite() -> Vec<Check> {
    let mut r = Recorder::new("lfunctions");
    r.record("gamma-duplication", (|| {
        let mut worst: f64 = 0.0;
        for k in 0..20 {
            let s = Complex64::new(0.3 + 0.9 * k as f64, -7.0 + 0.8 * k as f64);
            let lhs = gamma_r(s)? * gamma_r(s + 1.0)?;
            let rhs = 2.0 * Complex64::new(2.0 * std::f64::consts::PI, 0.0).powc(-s) * gamma(s)?;
            worst = worst.max((lhs - rhs).norm() / rhs.norm());
        }
        Ok((worst <= 1e-10, format!("max relative defect {worst:e}")))
    })());
    r.record("afe-vs-oracle", (|| {
        let one = MultiplicativeCoefficients::one();
        let mut worst: f64 = 0.0;
        for q in [5u64, 7] {
            let m = Arc::new(factor_modulus(q)?);
            let chars = enumerate_characters(&m, Selection::PrimitiveOnly)?.members;
            let spec = GammaFactorSpec::dirichlet(q, 1).with_odd_parameters(vec![Complex64::new(1.0, 0.0)])?;
            for (chi, v) in chars.iter().zip(central_values_afe(&one, &chars, &spec, None, None)?) {
                worst = worst.max((v.value - hurwitz_oracle(chi, Complex64::new(0.5, 0.0))?).norm());
            }
        }
        Ok((worst <= 1e-8, format!("max deviation {worst:e}")))
    })());
    r.record("weight-decay", (|| {
        let theta = 5.0 / 14.0;
        let spec = GammaFactorSpec::new(
            vec![Complex64::new(theta - 1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)],
            1000.0,
            theta,
        )?;
        let slope = weight_slope(&AfeWeight::new(&spec, 0.5)?, 10.0, 3)?;
        Ok((slope <= -(0.5 - theta) + 0.05, format!("slope {slope}")))
    })());
    r.record("explicit-formula", (|| {
        let z = bundled_zeta_zeros();
        let one = MultiplicativeCoefficients::one();
        let chi = Arc::new(factor_modulus(1)?).principal();
        let rep = explicit_formula_residual(&z, &one, &chi, 1000.5, z.t_max())?;
        Ok((rep.residual <= 0.05 * rep.x, format!("residual {}", rep.residual)))
    })());
    r.checks
}

/// Least-squares slope of `log |g(x)|` against `log x` on `[q^{d/2}, q^d]`, 25 samples.
pub fn weight_slope(w: &AfeWeight, q: f64, d: u32) -> Result<f64> {
    let (a, b) = (d as f64 / 2.0 * q.ln(), d as f64 * q.ln());
    let pts: Vec<(f64, f64)> = (0..25)
        .map(|i| {
            let lx = a + (b - a) * i as f64 / 24.0;
            Ok((lx, w.g(lx.exp())?.norm().ln()))
        })
        .collect::<Result<_>>()?;
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn convolution_oracle() {
        let t = tau_by_convolution(12);
        assert_eq!(&t[1..7], &[1, -24, 252, -1472, 4830, -6048]);
    }

    #[test]
    fn suite_names() {
        assert_eq!("ramare".parse::<Suite>().unwrap(), Suite::Ramare);
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn ramare_suite_passes() {
        let rep = cmd_verify(Suite::Ramare);
        assert!(rep.passed, "{:?}", rep.failures);
    }
}
