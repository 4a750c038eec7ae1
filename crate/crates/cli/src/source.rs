//! Coefficient source names used on the command line and in configs.
//!
//! `one`, `liouville`, `moebius`, `tau_d:K` (or `tauK`), `delta`,
//! `sym2-delta`, and `file:PATH[:RULE]` with `RULE` one of
//! `satake-degree-2`, `satake-from-list`, `explicit`.

use std::path::PathBuf;

use twistlab_core::coefficients::PrimePowerRule;
use twistlab_core::{Error, MultiplicativeCoefficients, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Source {
    TauD(u32),
    Liouville,
    Moebius,
    Delta,
    SymSquareDelta,
    File(PathBuf, PrimePowerRule),
}

impl Source {
    pub fn parse(name: &str) -> Result<Self> {
        let bad = || Error::InvalidParameters(format!("unknown coefficient source '{name}'"));
        let s = name.trim();
        if let Some(rest) = s.strip_prefix("file:") {
            let (path, rule) = match rest.rsplit_once(':') {
                Some((p, r)) if r.parse::<PrimePowerRule>().is_ok() => (p, r.parse()?),
                _ => (rest, PrimePowerRule::SatakeFromList),
            };
            return Ok(Source::File(PathBuf::from(path), rule));
        }
        let tau = s.strip_prefix("tau_d:").or_else(|| s.strip_prefix("tau"));
        if let Some(d) = tau {
            let d: u32 = d.parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            return Ok(Source::TauD(d));
        }
        match s {
            "one" => Ok(Source::TauD(1)),
            "liouville" => Ok(Source::Liouville),
            "moebius" | "mobius" => Ok(Source::Moebius),
            "delta" => Ok(Source::Delta),
            "sym2-delta" | "sym2delta" => Ok(Source::SymSquareDelta),
            _ => Err(bad()),
        }
    }

    pub fn file_path(&self) -> Option<&PathBuf> {
        match self {
            Source::File(p, _) => Some(p),
            _ => None,
        }
    }

    pub fn degree(&self) -> Option<u32> {
        match self {
            Source::TauD(d) => Some(*d),
            Source::Liouville | Source::Moebius => Some(1),
            Source::Delta => Some(2),
            Source::SymSquareDelta => Some(3),
            Source::File(..) => None,
        }
    }

    /// Coefficients valid at least up to `n_max`.
    pub fn build(&self, n_max: u64) -> Result<MultiplicativeCoefficients> {
        match self {
            Source::TauD(d) => Ok(MultiplicativeCoefficients::tau_d(*d)),
            Source::Liouville => Ok(MultiplicativeCoefficients::liouville()),
            Source::Moebius => Ok(MultiplicativeCoefficients::moebius()),
            Source::Delta => MultiplicativeCoefficients::gl2_delta(n_max.max(2)),
            Source::SymSquareDelta => MultiplicativeCoefficients::sym_square_delta(n_max.max(2)),
            Source::File(p, rule) => MultiplicativeCoefficients::from_file(p, *rule),
        }
    }
}
