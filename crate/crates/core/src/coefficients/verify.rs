//! Checks of the divisor, mean-square, sieve and prime-sum bounds on a
//! coefficient source. Bounds with unspecified constants are reported as
//! ratios; nothing here asserts a constant.

use serde::Serialize;

use super::MultiplicativeCoefficients;
use crate::arith::{primes_up_to, window_omega_table, SpfSieve};
use crate::error::{Error, Result};
use crate::summation::TwoFold;

/// Default `epsilon` in the range `X^{1-epsilon} <= Y <= X`.
pub const DEFAULT_INTERVAL_EPSILON: f64 = 0.1;

#[derive(Debug, Clone, Serialize)]
pub struct RamanujanReport {
    pub n_max: u64,
    pub degree: u32,
    pub passed: bool,
    /// `(n, |lambda(n)|, tau_d(n))` at the first failure.
    pub first_violation: Option<(u64, f64, f64)>,
    pub max_ratio: f64,
}

/// `|lambda(n)| <= tau_d(n)` for `n <= n_max`.
pub fn check_ramanujan(f: &MultiplicativeCoefficients, n_max: u64) -> Result<RamanujanReport> {
    let sieve = SpfSieve::new(n_max.max(1));
    let values = f.table_with_sieve(n_max, &sieve)?;
    let bound = MultiplicativeCoefficients::tau_d(f.degree()).table_with_sieve(n_max, &sieve)?;
    let mut first_violation = None;
    let mut max_ratio = 0.0f64;
    for n in 1..=n_max as usize {
        let v = values[n].norm();
        let b = bound[n].re;
        max_ratio = max_ratio.max(v / b);
        if first_violation.is_none() && v > b * (1.0 + 1e-12) {
            first_violation = Some((n as u64, v, b));
        }
    }
    Ok(RamanujanReport {
        n_max,
        degree: f.degree(),
        passed: first_violation.is_none(),
        first_violation,
        max_ratio,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct IntervalReport {
    pub x: u64,
    pub y: u64,
    pub sum: f64,
    /// `sum` divided by the number of terms `Y + 1`.
    pub ratio: f64,
    /// Whether `X^{1-epsilon} <= Y <= X`.
    pub in_range: bool,
}

/// `sum_{X <= n <= X+Y} |lambda(n)|^2`.
pub fn interval_mean_square(
    f: &MultiplicativeCoefficients,
    x: u64,
    y: u64,
    epsilon: f64,
) -> Result<IntervalReport> {
    if x == 0 {
        return Err(Error::InvalidParameters("interval start must be >= 1".into()));
    }
    let sieve = SpfSieve::new(x + y);
    let values = f.table_with_sieve(x + y, &sieve)?;
    let sum: TwoFold = values[x as usize..=(x + y) as usize].iter().map(|z| z.norm_sqr()).collect();
    let sum = sum.value();
    let xf = x as f64;
    let in_range = (y as f64) >= xf.powf(1.0 - epsilon) && y <= x;
    Ok(IntervalReport {
        x,
        y,
        sum,
        ratio: sum / (y + 1) as f64,
        in_range,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SieveReport {
    pub x: u64,
    pub p1: u64,
    pub p2: u64,
    pub sum: f64,
    /// `sum / (X log P1 / log P2)`.
    pub ratio: f64,
}

/// `sum_{n <= X, (n, prod_{P1 <= p <= P2} p) = 1} |lambda(n)|^2`.
pub fn sieve_restricted_mean_square(
    f: &MultiplicativeCoefficients,
    x: u64,
    p1: u64,
    p2: u64,
) -> Result<SieveReport> {
    if p1 < 2 || p1 > p2 || p2 > x {
        return Err(Error::InvalidParameters(format!(
            "need 2 <= P1 <= P2 <= X, got P1 = {p1}, P2 = {p2}, X = {x}"
        )));
    }
    let values = f.table(x)?;
    let omega = window_omega_table(x, p1, p2);
    let sum: TwoFold = (1..=x as usize)
        .filter(|&n| omega[n] == 0)
        .map(|n| values[n].norm_sqr())
        .collect();
    let sum = sum.value();
    let scale = x as f64 * (p1 as f64).ln() / (p2 as f64).ln();
    Ok(SieveReport {
        x,
        p1,
        p2,
        sum,
        ratio: sum / scale,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MertensReport {
    pub x: u64,
    pub sum: f64,
    /// `sum - log log X`.
    pub deviation: f64,
}

/// `sum_{p <= X} |lambda(p)|^2 / p`.
pub fn mertens_prime_sum(f: &MultiplicativeCoefficients, x: u64) -> Result<MertensReport> {
    if x < 3 {
        return Err(Error::InvalidParameters("need X >= 3 so that log log X is defined".into()));
    }
    let mut acc = TwoFold::new();
    for p in primes_up_to(x) {
        acc.add(f.prime_value(p)?.norm_sqr() / p as f64);
    }
    let sum = acc.value();
    Ok(MertensReport {
        x,
        sum,
        deviation: sum - (x as f64).ln().ln(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ramanujan_examples() {
        let r = check_ramanujan(&MultiplicativeCoefficients::tau_d(3), 2000).unwrap();
        assert!(r.passed);
        assert_eq!(r.max_ratio, 1.0);
        assert!(check_ramanujan(&MultiplicativeCoefficients::liouville(), 2000).unwrap().passed);
        let sym = MultiplicativeCoefficients::sym_square_delta(10_000).unwrap();
        assert!(check_ramanujan(&sym, 10_000).unwrap().passed);
    }

    #[test]
    fn ramanujan_reports_first_violation() {
        let data = super::super::FileCoefficients::parse("2 3\n3 0.5\n", super::super::PrimePowerRule::Explicit).unwrap();
        let f = MultiplicativeCoefficients::from_file_data(data);
        let r = check_ramanujan(&f, 3).unwrap();
        assert!(!r.passed);
        assert_eq!(r.first_violation, Some((2, 3.0, 1.0)));
    }

    #[test]
    fn interval_examples() {
        let r = interval_mean_square(&MultiplicativeCoefficients::liouville(), 10_000, 1000, 0.3).unwrap();
        assert_eq!(r.ratio, 1.0);
        assert!(r.in_range);
        let r = interval_mean_square(&MultiplicativeCoefficients::one(), 50, 10, 0.1).unwrap();
        assert_eq!(r.ratio, 1.0);
    }

    #[test]
    fn sieve_examples() {
        let lv = MultiplicativeCoefficients::liouville();
        assert_eq!(sieve_restricted_mean_square(&lv, 100, 2, 2).unwrap().sum, 50.0);
        assert_eq!(sieve_restricted_mean_square(&lv, 100, 2, 100).unwrap().sum, 1.0);
        assert!(sieve_restricted_mean_square(&lv, 100, 5, 3).is_err());
        assert!(sieve_restricted_mean_square(&lv, 100, 1, 3).is_err());
    }

    #[test]
    fn mertens_reciprocal_primes() {
        let r = mertens_prime_sum(&MultiplicativeCoefficients::liouville(), 100_000).unwrap();
        let oracle: f64 = primes_up_to(100_000).iter().map(|&p| 1.0 / p as f64).sum();
        assert!((r.sum - oracle).abs() < 1e-12);
        // Meissel-Mertens constant 0.26149...
        assert!((r.deviation - 0.2615).abs() < 0.01);
    }
}
