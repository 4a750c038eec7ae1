//! The computations behind each subcommand, free of any I/O.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use twistlab_core::characters::{enumerate_characters, factor_modulus, Selection};
use twistlab_core::coefficients::{mertens_prime_sum, MertensReport};
use twistlab_core::lfunctions::{
    central_values_afe, explicit_formula_residual, hurwitz_oracle, theta_d, ExplicitFormulaReport, DEFAULT_TAIL_TOL,
    ORACLE_Q_CEILING,
};
use twistlab_core::moments::{decay_scan, large_sieve_ratio, DecayScan, SieveFamily};
use twistlab_core::ramare::{choose_parameters, decompose};
use twistlab_core::{Error, ExperimentConfig, GammaFactorSpec, MultiplicativeCoefficients, Result, ZeroDataset};

use crate::source::Source;

/// Bundled ordinates of the first 100 zeros of the Riemann zeta function.
pub const ZETA_ZEROS_100: &str = include_str!("../../../data/zeta_zeros_100.txt");

pub fn bundled_zeta_zeros() -> ZeroDataset {
    ZeroDataset::parse("zeta-first-100", ZETA_ZEROS_100).expect("bundled zero file parses")
}

/// Run `f` on a dedicated pool with `workers` threads.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .expect("thread pool");
    pool.install(f)
}

pub fn cmd_moment_scan(cfg: &ExperimentConfig) -> Result<DecayScan> {
    cfg.validate()?;
    let source = Source::parse(&cfg.coefficients)?;
    let f = source.build(cfg.x_max)?;
    decay_scan(&f, cfg)
}

#[derive(Debug, Clone, Default)]
pub struct AfeRequest {
    pub q: u64,
    /// `None` means every primitive character.
    pub index: Option<u64>,
    /// Real spectral parameters; `None` gives the degree-1 Dirichlet data.
    pub mu: Option<Vec<f64>>,
    pub mu_odd: Option<Vec<f64>>,
    pub conductor: Option<f64>,
    pub theta: Option<f64>,
    pub kappa: Option<Complex64>,
    pub coefficients: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AfeRow {
    pub q: u64,
    pub index: u64,
    pub parity: i8,
    pub value: Complex64,
    pub partial: bool,
    pub kappa: Option<Complex64>,
    pub terms: u64,
    pub panels: usize,
    /// Bound on the truncated part of each Dirichlet series.
    pub tail_bound: f64,
    pub oracle: Option<Complex64>,
    pub oracle_delta: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AfeReport {
    pub spec: GammaFactorSpec,
    pub coefficients: String,
    pub rows: Vec<AfeRow>,
}

impl AfeRequest {
    pub fn spec(&self) -> Result<GammaFactorSpec> {
        let real = |v: &[f64]| v.iter().map(|&x| Complex64::new(x, 0.0)).collect::<Vec<_>>();
        match &self.mu {
            None => {
                let mut spec = GammaFactorSpec::dirichlet(self.q, 1);
                if self.conductor.is_some() || self.theta.is_some() {
                    spec = GammaFactorSpec::new(
                        spec.mu().to_vec(),
                        self.conductor.unwrap_or(self.q as f64),
                        self.theta.unwrap_or(spec.theta()),
                    )?;
                }
                spec.with_odd_parameters(vec![Complex64::new(1.0, 0.0)])
            }
            Some(mu) => {
                let d = mu.len() as u32;
                let theta = match (self.theta, d) {
                    (Some(t), _) => t,
                    (None, 1) => 0.25,
                    (None, 2) => {
                        return Err(Error::InvalidParameters("degree 2 needs an explicit theta".into()));
                    }
                    (None, d) => {
                        let t = theta_d(d)?;
                        *t.numer() as f64 / *t.denom() as f64
                    }
                };
                let conductor = self.conductor.unwrap_or((self.q as f64).powi(d as i32));
                let spec = GammaFactorSpec::new(real(mu), conductor, theta)?;
                match &self.mu_odd {
                    Some(odd) => spec.with_odd_parameters(real(odd)),
                    None => Ok(spec),
                }
            }
        }
    }
}

pub fn cmd_afe(req: &AfeRequest) -> Result<AfeReport> {
    let spec = req.spec()?;
    let modulus = Arc::new(factor_modulus(req.q)?);
    let chars = match req.index {
        Some(i) => {
            let chi = modulus.character(i)?;
            if !chi.is_primitive() {
                return Err(Error::InvalidParameters(format!("character {i} mod {} is not primitive", req.q)));
            }
            vec![chi]
        }
        None => enumerate_characters(&modulus, Selection::PrimitiveOnly)?.members,
    };
    let name = req.coefficients.clone().unwrap_or_else(|| match spec.degree() {
        1 => "one".into(),
        d => format!("tau_d:{d}"),
    });
    let source = Source::parse(&name)?;
    let f = source.build(twistlab_core::coefficients::DELTA_CEILING)?;
    let values = central_values_afe(&f, &chars, &spec, None, req.kappa)?;
    let degree_one_zeta = spec.degree() == 1 && source == Source::TauD(1);
    let rows = chars
        .iter()
        .zip(values)
        .map(|(chi, v)| {
            let oracle = if degree_one_zeta && req.q <= ORACLE_Q_CEILING {
                hurwitz_oracle(chi, Complex64::new(0.5, 0.0)).ok()
            } else {
                None
            };
            AfeRow {
                q: req.q,
                index: chi.index(),
                parity: chi.parity(),
                value: v.value,
                partial: v.partial,
                kappa: v.kappa,
                terms: v.terms,
                panels: v.panels,
                tail_bound: DEFAULT_TAIL_TOL,
                oracle,
                oracle_delta: oracle.map(|o| (o - v.value).norm()),
            }
        })
        .collect();
    Ok(AfeReport {
        spec,
        coefficients: f.label(),
        rows,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct DecomposeRow {
    pub q: u64,
    pub index: u64,
    pub x: u64,
    pub p1: u64,
    pub p2: u64,
    pub h: f64,
    pub bilinear: Complex64,
    pub correction: Complex64,
    pub overshoot: Complex64,
    pub rough: Complex64,
    pub direct: Complex64,
    pub relative_residual: f64,
}

pub fn cmd_decompose(source: &Source, q: u64, x: u64, beta: f64, gamma: f64, epsilon: f64) -> Result<Vec<DecomposeRow>> {
    let plan = choose_parameters(x, beta, gamma, epsilon)?;
    let f = source.build(plan.overshoot_limit())?;
    decompose_family(&f, q, &plan)
}

pub fn decompose_family(
    f: &MultiplicativeCoefficients,
    q: u64,
    plan: &twistlab_core::DecompositionPlan,
) -> Result<Vec<DecomposeRow>> {
    let modulus = Arc::new(factor_modulus(q)?);
    let family = enumerate_characters(&modulus, Selection::PrimitiveOnly)?;
    family
        .iter()
        .map(|chi| {
            let r = decompose(f, chi, plan)?;
            Ok(DecomposeRow {
                q,
                index: chi.index(),
                x: plan.x,
                p1: plan.p1,
                p2: plan.p2,
                h: plan.h,
                bilinear: r.bilinear_term,
                correction: r.p_divides_m_correction,
                overshoot: r.overshoot_term,
                rough: r.rough_term,
                direct: r.direct_sum,
                relative_residual: r.relative_residual(),
            })
        })
        .collect()
}

/// `count` sequences of length `len` with entries uniform in the square `[-1, 1]^2`.
pub fn random_sequences(count: usize, len: usize, seed: u64) -> Vec<Vec<Complex64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            (0..len)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SieveRow {
    /// `q` for a single modulus, `Q` for the range `[Q, 2Q]`.
    pub q: u64,
    pub range: bool,
    pub x: u64,
    pub sequences: usize,
    pub max_ratio: f64,
    pub mean_ratio: f64,
}

pub fn cmd_large_sieve(qs: &[u64], xs: &[u64], count: usize, seed: u64, range: bool) -> Result<Vec<SieveRow>> {
    let mut rows = Vec::new();
    for &x in xs {
        let seqs = random_sequences(count, x as usize, seed ^ x);
        for &q in qs {
            let family = if range { SieveFamily::Range(q) } else { SieveFamily::Modulus(q) };
            let ratios = seqs
                .par_iter()
                .map(|a| large_sieve_ratio(a, family))
                .collect::<Result<Vec<f64>>>()?;
            let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
            let mean_ratio = ratios.iter().sum::<f64>() / ratios.len().max(1) as f64;
            rows.push(SieveRow {
                q,
                range,
                x,
                sequences: count,
                max_ratio,
                mean_ratio,
            });
        }
    }
    Ok(rows)
}

/// Explicit-formula residuals for `zeta` (principal character mod 1) or a
/// twist by a primitive character.
pub fn cmd_explicit_formula(
    zeros: &ZeroDataset,
    source: &Source,
    q: u64,
    index: u64,
    xs: &[f64],
    ts: &[f64],
) -> Result<Vec<ExplicitFormulaReport>> {
    let x_top = xs.iter().copied().fold(0.0, f64::max) as u64;
    let f = source.build(x_top)?;
    let chi = Arc::new(factor_modulus(q)?).character(index)?;
    let mut out = Vec::new();
    for &x in xs {
        for &t in ts {
            out.push(explicit_formula_residual(zeros, &f, &chi, x, t)?);
        }
    }
    Ok(out)
}

pub fn cmd_mertens(source: &Source, xs: &[u64]) -> Result<Vec<MertensReport>> {
    let x_top = xs.iter().copied().max().unwrap_or(3);
    let f = source.build(x_top)?;
    xs.iter().map(|&x| mertens_prime_sum(&f, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_sequences_are_seeded() {
        let a = random_sequences(2, 10, 7);
        let b = random_sequences(2, 10, 7);
        assert_eq!(a, b);
        assert_ne!(a, random_sequences(2, 10, 8));
    }

    #[test]
    fn afe_q2_is_empty() {
        let r = cmd_afe(&AfeRequest { q: 2, ..Default::default() }).unwrap();
        assert!(r.rows.is_empty());
    }

    #[test]
    fn afe_degree_three_without_root_number_is_partial() {
        let req = AfeRequest {
            q: 3,
            mu: Some(vec![5.0 / 14.0 - 1.0, 0.0, 0.0]),
            ..Default::default()
        };
        let r = cmd_afe(&req).unwrap();
        assert!(!r.rows.is_empty());
        assert!(r.rows.iter().all(|row| row.partial));
    }

    #[test]
    fn bundled_zeros() {
        let z = bundled_zeta_zeros();
        assert_eq!(z.len(), 100);
        assert!(z.critical_line());
    }

    #[test]
    fn small_x_window_error_is_surfaced() {
        let err = cmd_decompose(&Source::Liouville, 7, 10, 0.0, 1.0, 0.1).unwrap_err();
        assert!(matches!(err, Error::WindowOrdering { .. }));
    }
}
