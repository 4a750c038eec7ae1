//! Multiplicative coefficient engines `lambda_F(n)`.
//!
//! A [`MultiplicativeCoefficients`] value is defined by its values at prime
//! powers; everything else comes from multiplicativity. Bulk tables are built
//! over a linear smallest-prime-factor sieve so each `lambda(n)` costs one
//! multiplication once the prime-power values are known.

mod delta;
mod file;
mod satake;
mod verify;

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{binomial, factor, SpfSieve};
use crate::error::{Error, Result};

pub use delta::{DeltaTable, DELTA_CEILING};
pub use file::{FileCoefficients, PrimePowerRule};
pub use satake::{
    complete_homogeneous, elementary_symmetric, gl2_satake, lambda_from_satake, newton_residuals,
    power_sum, sym_square_lift,
};
pub use verify::{
    check_ramanujan, interval_mean_square, mertens_prime_sum, sieve_restricted_mean_square,
    IntervalReport, MertensReport, RamanujanReport, SieveReport, DEFAULT_INTERVAL_EPSILON,
};

/// Default ceiling for arithmetic coefficient kinds.
pub const DEFAULT_CEILING: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientKind {
    TauD(u32),
    Liouville,
    Moebius,
    Gl2Delta,
    SymSquareDelta,
    FileBacked,
}

/// Why a source satisfies (or fails) the generalised Ramanujan bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GrcStatus {
    Unconditional,
    Deligne,
    CheckedAtLoad(bool),
}

impl GrcStatus {
    pub fn holds(&self) -> bool {
        !matches!(self, GrcStatus::CheckedAtLoad(false))
    }
}

#[derive(Debug, Clone)]
enum Source {
    TauD(u32),
    Liouville,
    Moebius,
    Delta(Arc<DeltaTable>),
    SymSquare(Arc<DeltaTable>),
    File(Arc<FileCoefficients>),
}

#[derive(Debug, Clone)]
pub struct MultiplicativeCoefficients {
    kind: CoefficientKind,
    degree: u32,
    grc: GrcStatus,
    ceiling: u64,
    source: Source,
}

impl MultiplicativeCoefficients {
    /// The `d`-fold divisor function; `tau_d(1)` is the constant `1`.
    pub fn tau_d(d: u32) -> Self {
        assert!(d >= 1, "tau_d needs d >= 1");
        MultiplicativeCoefficients {
            kind: CoefficientKind::TauD(d),
            degree: d,
            grc: GrcStatus::Unconditional,
            ceiling: DEFAULT_CEILING,
            source: Source::TauD(d),
        }
    }

    pub fn one() -> Self {
        Self::tau_d(1)
    }

    pub fn liouville() -> Self {
        MultiplicativeCoefficients {
            kind: CoefficientKind::Liouville,
            degree: 1,
            grc: GrcStatus::Unconditional,
            ceiling: DEFAULT_CEILING,
            source: Source::Liouville,
        }
    }

    pub fn moebius() -> Self {
        MultiplicativeCoefficients {
            kind: CoefficientKind::Moebius,
            degree: 1,
            grc: GrcStatus::Unconditional,
            ceiling: DEFAULT_CEILING,
            source: Source::Moebius,
        }
    }

    /// Normalised Hecke eigenvalues of Delta, valid up to `n_max`.
    pub fn gl2_delta(n_max: u64) -> Result<Self> {
        let table = Arc::new(DeltaTable::new(n_max)?);
        check_deligne(&table)?;
        Ok(MultiplicativeCoefficients {
            kind: CoefficientKind::Gl2Delta,
            degree: 2,
            grc: GrcStatus::Deligne,
            ceiling: table.len(),
            source: Source::Delta(table),
        })
    }

    /// Symmetric-square lift of Delta, valid up to `n_max`.
    pub fn sym_square_delta(n_max: u64) -> Result<Self> {
        let table = Arc::new(DeltaTable::new(n_max)?);
        check_deligne(&table)?;
        Ok(Self::sym_square_from_table(table))
    }

    pub fn sym_square_from_table(table: Arc<DeltaTable>) -> Self {
        MultiplicativeCoefficients {
            kind: CoefficientKind::SymSquareDelta,
            degree: 3,
            grc: GrcStatus::Deligne,
            ceiling: table.len(),
            source: Source::SymSquare(table),
        }
    }

    pub fn from_file_data(data: FileCoefficients) -> Self {
        let grc = GrcStatus::CheckedAtLoad(data.satisfies_grc());
        MultiplicativeCoefficients {
            kind: CoefficientKind::FileBacked,
            degree: data.degree(),
            grc,
            ceiling: DEFAULT_CEILING,
            source: Source::File(Arc::new(data)),
        }
    }

    pub fn from_file(path: &std::path::Path, rule: PrimePowerRule) -> Result<Self> {
        Ok(Self::from_file_data(FileCoefficients::load(path, rule)?))
    }

    pub fn with_ceiling(mut self, ceiling: u64) -> Self {
        self.ceiling = match self.source {
            Source::Delta(ref t) | Source::SymSquare(ref t) => ceiling.min(t.len()),
            _ => ceiling,
        };
        self
    }

    pub fn kind(&self) -> CoefficientKind {
        self.kind
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn grc(&self) -> GrcStatus {
        self.grc
    }

    pub fn ceiling(&self) -> u64 {
        self.ceiling
    }

    pub fn label(&self) -> String {
        match self.kind {
            CoefficientKind::TauD(d) => format!("tau_{d}"),
            CoefficientKind::Liouville => "liouville".into(),
            CoefficientKind::Moebius => "moebius".into(),
            CoefficientKind::Gl2Delta => "gl2_delta".into(),
            CoefficientKind::SymSquareDelta => "sym2_delta".into(),
            CoefficientKind::FileBacked => "file".into(),
        }
    }

    /// Satake parameters at `p`, when the source has them.
    pub fn satake(&self, p: u64) -> Result<Option<Vec<Complex64>>> {
        let one = Complex64::new(1.0, 0.0);
        Ok(match &self.source {
            Source::TauD(d) => Some(vec![one; *d as usize]),
            Source::Liouville => Some(vec![-one]),
            Source::Moebius => None,
            Source::Delta(t) => {
                self.check_prime_in_table(p, t)?;
                Some(gl2_satake(Complex64::new(t.lambda(p), 0.0)).to_vec())
            }
            Source::SymSquare(t) => {
                self.check_prime_in_table(p, t)?;
                Some(sym_square_lift(t.lambda(p), true).map_err(|_| grc_error(p, t.lambda(p)))?.to_vec())
            }
            Source::File(f) => f.satake(p)?,
        })
    }

    fn check_prime_in_table(&self, p: u64, t: &DeltaTable) -> Result<()> {
        if p > t.len() {
            return Err(Error::CeilingExceeded { n: p, ceiling: t.len() });
        }
        Ok(())
    }

    /// `lambda(p)`.
    pub fn prime_value(&self, p: u64) -> Result<Complex64> {
        self.prime_power_value(p, 1)
    }

    /// `lambda(p^r)` for a prime `p`.
    pub fn prime_power_value(&self, p: u64, r: u32) -> Result<Complex64> {
        if r == 0 {
            return Ok(Complex64::new(1.0, 0.0));
        }
        let v = match &self.source {
            Source::TauD(d) => binomial(r as u64 + *d as u64 - 1, *d as u64 - 1),
            Source::Liouville => {
                if r % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
            Source::Moebius => {
                if r == 1 {
                    -1.0
                } else {
                    0.0
                }
            }
            Source::Delta(t) => {
                let pr = p.checked_pow(r).filter(|&v| v <= t.len());
                match pr {
                    Some(pr) => t.lambda(pr),
                    None => {
                        self.check_prime_in_table(p, t)?;
                        let alpha = gl2_satake(Complex64::new(t.lambda(p), 0.0));
                        return Ok(lambda_from_satake(&alpha, r as usize));
                    }
                }
            }
            Source::SymSquare(_) | Source::File(_) => {
                if let Source::File(f) = &self.source {
                    if let Some(v) = f.direct_value(p, r)? {
                        return Ok(v);
                    }
                }
                let alpha = self.satake(p)?.expect("satake-backed source");
                return Ok(lambda_from_satake(&alpha, r as usize));
            }
        };
        Ok(Complex64::new(v, 0.0))
    }

    /// `lambda(n)` for a single `n`, by factorisation.
    pub fn lambda_value(&self, n: u64) -> Result<Complex64> {
        if n == 0 {
            return Err(Error::InvalidParameters("lambda is defined for n >= 1".into()));
        }
        if n > self.ceiling {
            return Err(Error::CeilingExceeded { n, ceiling: self.ceiling });
        }
        let mut acc = Complex64::new(1.0, 0.0);
        for (p, e) in factor(n) {
            acc *= self.prime_power_value(p, e)?;
        }
        Ok(acc)
    }

    /// `lambda(0..=n_max)` with `lambda(0) = 0`.
    pub fn table(&self, n_max: u64) -> Result<Vec<Complex64>> {
        let sieve = SpfSieve::new(n_max.max(1));
        self.table_with_sieve(n_max, &sieve)
    }

    pub fn table_with_sieve(&self, n_max: u64, sieve: &SpfSieve) -> Result<Vec<Complex64>> {
        if n_max > self.ceiling {
            return Err(Error::CeilingExceeded { n: n_max, ceiling: self.ceiling });
        }
        assert!(sieve.limit() >= n_max);
        if let Source::Delta(t) = &self.source {
            return Ok((0..=n_max).map(|n| Complex64::new(t.lambda(n), 0.0)).collect());
        }
        let mut out = vec![Complex64::new(0.0, 0.0); n_max as usize + 1];
        if n_max >= 1 {
            out[1] = Complex64::new(1.0, 0.0);
        }
        for n in 2..=n_max {
            let (p, e, pe) = sieve.head(n);
            out[n as usize] = if pe == n {
                self.prime_power_value(p, e)?
            } else {
                out[pe as usize] * out[(n / pe) as usize]
            };
        }
        Ok(out)
    }

    /// `(p, lambda(p))` for primes `p <= x`.
    pub fn prime_values(&self, x: u64) -> Result<Vec<(u64, Complex64)>> {
        crate::arith::primes_up_to(x)
            .into_iter()
            .map(|p| self.prime_value(p).map(|v| (p, v)))
            .collect()
    }
}

fn grc_error(p: u64, value: f64) -> Error {
    Error::GrcViolation {
        p,
        value: value.abs(),
        bound: 2.0,
    }
}

fn check_deligne(t: &DeltaTable) -> Result<()> {
    for p in crate::arith::primes_up_to(t.len()) {
        if t.lambda(p).abs() > 2.0 {
            return Err(grc_error(p, t.lambda(p)));
        }
    }
    Ok(())
}

/// `lambda(n)` for a coefficient source, as a free function.
pub fn lambda_value(f: &MultiplicativeCoefficients, n: u64) -> Result<Complex64> {
    f.lambda_value(n)
}

/// Normalised Hecke eigenvalues `tau(n) / n^{11/2}` for `n <= n_max` (index 0 unused).
pub fn delta_hecke_eigenvalues(n_max: u64) -> Result<Vec<f64>> {
    let t = DeltaTable::new(n_max)?;
    Ok((0..=n_max).map(|n| t.lambda(n)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::tau_d;

    #[test]
    fn basic_values() {
        assert_eq!(MultiplicativeCoefficients::tau_d(3).lambda_value(12).unwrap(), Complex64::new(18.0, 0.0));
        assert_eq!(MultiplicativeCoefficients::liouville().lambda_value(12).unwrap(), Complex64::new(-1.0, 0.0));
        for f in [
            MultiplicativeCoefficients::tau_d(4),
            MultiplicativeCoefficients::liouville(),
            MultiplicativeCoefficients::moebius(),
        ] {
            assert_eq!(f.lambda_value(1).unwrap(), Complex64::new(1.0, 0.0));
        }
        assert_eq!(MultiplicativeCoefficients::moebius().lambda_value(30).unwrap(), Complex64::new(-1.0, 0.0));
        assert_eq!(MultiplicativeCoefficients::moebius().lambda_value(12).unwrap(), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn tau_d_prime_powers_match_brute_force() {
        for d in 1..=6u32 {
            let f = MultiplicativeCoefficients::tau_d(d);
            for p in [2u64, 3, 5, 7, 97] {
                for r in 0..=10u32 {
                    let v = f.prime_power_value(p, r).unwrap().re;
                    // brute-force count of ordered d-tuples of exponents summing to r
                    let brute = count_compositions(r, d);
                    assert_eq!(v, brute as f64, "d={d} p={p} r={r}");
                }
            }
        }
    }

    fn count_compositions(r: u32, d: u32) -> u64 {
        if d == 1 {
            return 1;
        }
        (0..=r).map(|k| count_compositions(r - k, d - 1)).sum()
    }

    #[test]
    fn table_agrees_with_pointwise() {
        let f = MultiplicativeCoefficients::tau_d(3);
        let t = f.table(2000).unwrap();
        for n in 1..=2000 {
            assert_eq!(t[n as usize].re, tau_d(n, 3));
        }
        let sym = MultiplicativeCoefficients::sym_square_delta(3000).unwrap();
        let t = sym.table(3000).unwrap();
        for n in [1u64, 2, 12, 360, 2048, 2999] {
            assert!((t[n as usize] - sym.lambda_value(n).unwrap()).norm() < 1e-12);
        }
    }

    #[test]
    fn delta_prime_values_and_ceiling() {
        let f = MultiplicativeCoefficients::gl2_delta(100).unwrap();
        let l2 = f.prime_value(2).unwrap().re;
        assert!((l2 - (-24.0 / 2f64.powf(5.5))).abs() < 1e-15);
        assert!(matches!(f.lambda_value(101), Err(Error::CeilingExceeded { .. })));
        let sym = MultiplicativeCoefficients::sym_square_delta(100).unwrap();
        assert!((sym.prime_value(2).unwrap().re - (l2 * l2 - 1.0)).abs() < 1e-14);
    }
}
