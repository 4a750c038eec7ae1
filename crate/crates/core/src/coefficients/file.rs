//! Coefficients read from a text file of prime values.
//!
//! Format: one entry per line, `p value_real [value_imag]`, with `#` starting
//! a comment. The prime-power rule decides how a line is interpreted.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use super::satake::gl2_satake;
use crate::arith::is_prime;
use crate::error::{Error, Result};

const GRC_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimePowerRule {
    /// Each line is `lambda(p)`; `alpha + beta = lambda(p)`, `alpha beta = 1`.
    SatakeDegree2,
    /// Each line is one Satake parameter; a prime repeats once per parameter.
    SatakeFromList,
    /// Each line is `lambda(p)`; `lambda(p^r) = 0` for `r >= 2`.
    Explicit,
}

impl FromStr for PrimePowerRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "satake-degree-2" => Ok(PrimePowerRule::SatakeDegree2),
            "satake-from-list" => Ok(PrimePowerRule::SatakeFromList),
            "explicit" => Ok(PrimePowerRule::Explicit),
            other => Err(Error::InvalidParameters(format!("unknown prime-power rule '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FileCoefficients {
    rule: PrimePowerRule,
    degree: u32,
    entries: BTreeMap<u64, Vec<Complex64>>,
    grc: bool,
}

impl FileCoefficients {
    pub fn load(path: &Path, rule: PrimePowerRule) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text, rule)
    }

    pub fn parse(text: &str, rule: PrimePowerRule) -> Result<Self> {
        let mut entries: BTreeMap<u64, Vec<Complex64>> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |message: String| Error::Parse { line: i + 1, message };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() < 2 || fields.len() > 3 {
                return Err(bad(format!("expected 'p re [im]', got {} fields", fields.len())));
            }
            let p: u64 = fields[0]
                .parse()
                .map_err(|_| bad(format!("'{}' is not a positive integer", fields[0])))?;
            if !is_prime(p) {
                return Err(bad(format!("{p} is not prime")));
            }
            let parse_f = |s: &str| s.parse::<f64>().map_err(|_| bad(format!("'{s}' is not a number")));
            let re = parse_f(fields[1])?;
            let im = if fields.len() == 3 { parse_f(fields[2])? } else { 0.0 };
            let slot = entries.entry(p).or_default();
            if rule != PrimePowerRule::SatakeFromList && !slot.is_empty() {
                return Err(bad(format!("prime {p} listed twice")));
            }
            slot.push(Complex64::new(re, im));
        }

        let degree = match rule {
            PrimePowerRule::SatakeDegree2 => 2,
            PrimePowerRule::Explicit => 1,
            PrimePowerRule::SatakeFromList => {
                let mut lens = entries.values().map(Vec::len);
                let d = lens.next().unwrap_or(1);
                if let Some((&p, v)) = entries.iter().find(|(_, v)| v.len() != d) {
                    return Err(Error::InvalidParameters(format!(
                        "prime {p} has {} Satake parameters, expected {d}",
                        v.len()
                    )));
                }
                d as u32
            }
        };

        let mut data = FileCoefficients {
            rule,
            degree,
            entries,
            grc: true,
        };
        data.grc = data.entries.keys().all(|&p| data.grc_at(p));
        Ok(data)
    }

    fn grc_at(&self, p: u64) -> bool {
        let v = &self.entries[&p];
        match self.rule {
            PrimePowerRule::Explicit => v[0].norm() <= 1.0 + GRC_SLACK,
            PrimePowerRule::SatakeFromList => v.iter().all(|a| a.norm() <= 1.0 + GRC_SLACK),
            PrimePowerRule::SatakeDegree2 => gl2_satake(v[0]).iter().all(|a| a.norm() <= 1.0 + 1e-9),
        }
    }

    pub fn rule(&self) -> PrimePowerRule {
        self.rule
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn satisfies_grc(&self) -> bool {
        self.grc
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.keys().copied()
    }

    fn entry(&self, p: u64) -> Result<&[Complex64]> {
        self.entries.get(&p).map(Vec::as_slice).ok_or(Error::MissingPrime(p))
    }

    pub fn satake(&self, p: u64) -> Result<Option<Vec<Complex64>>> {
        let v = self.entry(p)?;
        Ok(match self.rule {
            PrimePowerRule::SatakeDegree2 => Some(gl2_satake(v[0]).to_vec()),
            PrimePowerRule::SatakeFromList => Some(v.to_vec()),
            PrimePowerRule::Explicit => None,
        })
    }

    /// Values not derived from Satake parameters, if this rule has them.
    pub fn direct_value(&self, p: u64, r: u32) -> Result<Option<Complex64>> {
        if self.rule != PrimePowerRule::Explicit {
            return Ok(None);
        }
        let v = self.entry(p)?;
        Ok(Some(match r {
            0 => Complex64::new(1.0, 0.0),
            1 => v[0],
            _ => Complex64::new(0.0, 0.0),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coefficients::MultiplicativeCoefficients;

    #[test]
    fn parses_comments_and_imaginary_parts() {
        let text = "# header\n2 0.5\n3 0.25 -0.5 # trailing\n\n5 -1\n";
        let f = FileCoefficients::parse(text, PrimePowerRule::Explicit).unwrap();
        assert_eq!(f.primes().collect::<Vec<_>>(), vec![2, 3, 5]);
        assert_eq!(f.direct_value(3, 1).unwrap(), Some(Complex64::new(0.25, -0.5)));
        assert_eq!(f.direct_value(3, 2).unwrap(), Some(Complex64::new(0.0, 0.0)));
        assert!(f.satisfies_grc());
    }

    #[test]
    fn rejects_non_primes_and_duplicates() {
        let err = FileCoefficients::parse("4 1.0\n", PrimePowerRule::Explicit).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!(FileCoefficients::parse("2 1\n2 1\n", PrimePowerRule::SatakeDegree2).is_err());
        assert!(FileCoefficients::parse("x 1\n", PrimePowerRule::Explicit).is_err());
    }

    #[test]
    fn satake_list_needs_uniform_degree() {
        let ok = "2 1\n2 -1\n3 0 1\n3 0 -1\n";
        let f = FileCoefficients::parse(ok, PrimePowerRule::SatakeFromList).unwrap();
        assert_eq!(f.degree(), 2);
        assert!(FileCoefficients::parse("2 1\n2 1\n3 1\n", PrimePowerRule::SatakeFromList).is_err());
    }

    #[test]
    fn grc_is_flagged_not_fatal() {
        let f = FileCoefficients::parse("2 2.5\n", PrimePowerRule::SatakeDegree2).unwrap();
        assert!(!f.satisfies_grc());
        let f = FileCoefficients::parse("2 1.9\n3 -2\n", PrimePowerRule::SatakeDegree2).unwrap();
        assert!(f.satisfies_grc());
    }

    #[test]
    fn missing_prime_is_named() {
        let f = FileCoefficients::parse("2 1\n3 -1\n", PrimePowerRule::Explicit).unwrap();
        let mc = MultiplicativeCoefficients::from_file_data(f);
        assert_eq!(mc.lambda_value(6).unwrap(), Complex64::new(-1.0, 0.0));
        assert_eq!(mc.lambda_value(4).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(mc.lambda_value(10), Err(Error::MissingPrime(5)));
    }
}
