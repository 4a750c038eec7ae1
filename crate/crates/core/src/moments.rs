//! Second moments of twisted sums over character families.
//!
//! Everything is routed through residue-class sums `A_b = sum_{n = b mod q} a_n`:
//! a twisted sum is `sum_b chi(b) A_b`, and the full-family moment collapses to
//! `phi(q) sum_{(b, q) = 1} |A_b|^2`. Sequences passed to the functions here
//! are 1-based in meaning: `a[i]` is the coefficient of `n = i + 1`.

use std::sync::Arc;
use std::time::Instant;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{euler_phi, gcd};
use crate::characters::{enumerate_characters, factor_modulus, unit_root, DirichletCharacter, Selection};
use crate::coefficients::MultiplicativeCoefficients;
use crate::error::{Error, Result};
use crate::summation::{par_block_sum, tree_reduce, ComplexTwoFold, TwoFold, BLOCK};

/// Desk ceiling for the lower end `Q` of a family scan.
pub const FAMILY_Q_CEILING: u64 = 2000;

const CLASS_CHUNK: usize = 16 * BLOCK;

fn merge_classes(a: &mut Vec<ComplexTwoFold>, b: &Vec<ComplexTwoFold>) {
    for (x, y) in a.iter_mut().zip(b) {
        x.merge(y);
    }
}

/// Residue-class accumulators for `n` in `lo..hi` (1-based `n`), `a[n - 1]`.
fn class_sums_range(a: &[Complex64], q: u64, lo: usize, hi: usize) -> Vec<ComplexTwoFold> {
    let q = q as usize;
    let chunks = (hi.saturating_sub(lo)).div_ceil(CLASS_CHUNK);
    let parts: Vec<Vec<ComplexTwoFold>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = lo + c * CLASS_CHUNK;
            let end = (start + CLASS_CHUNK).min(hi);
            let mut acc = vec![ComplexTwoFold::new(); q];
            for n in start..end {
                acc[n % q].add(a[n - 1]);
            }
            acc
        })
        .collect();
    tree_reduce(parts, vec![ComplexTwoFold::new(); q], merge_classes)
}

/// `A_b = sum_{n <= len, n = b mod q} a_n` for `b = 0, ..., q - 1`.
pub fn residue_class_sums(a: &[Complex64], q: u64) -> Vec<Complex64> {
    class_sums_range(a, q, 1, a.len() + 1).iter().map(|c| c.value()).collect()
}

/// `phi(q) sum_{(b, q) = 1} |A_b|^2`, which equals `sum_{chi mod q} |sum a_n chi(n)|^2`.
pub fn plancherel_moment(a: &[Complex64], q: u64) -> f64 {
    plancherel_from_classes(&residue_class_sums(a, q), q)
}

fn plancherel_from_classes(classes: &[Complex64], q: u64) -> f64 {
    let acc: TwoFold = classes
        .iter()
        .enumerate()
        .filter(|&(b, _)| gcd(b as u64, q) == 1)
        .map(|(_, z)| z.norm_sqr())
        .collect();
    euler_phi(q) as f64 * acc.value()
}

/// `sum_b chi(b) A_b` for each character, in family order.
pub fn character_sums_from_classes(classes: &[Complex64], members: &[DirichletCharacter]) -> Vec<Complex64> {
    let q = classes.len() as u64;
    let units: Vec<u64> = (0..q).filter(|&b| gcd(b, q) == 1).collect();
    members
        .par_iter()
        .map(|chi| {
            let l = chi.modulus().group_exponent();
            let mut acc = ComplexTwoFold::new();
            for &b in &units {
                let k = chi.angle_index(b as i64).expect("unit");
                acc.add(unit_root(k, l) * classes[b as usize]);
            }
            acc.value()
        })
        .collect()
}

fn sum_norm_sqr(values: &[Complex64]) -> f64 {
    let parts: Vec<f64> = values.iter().map(|z| z.norm_sqr()).collect();
    let acc: TwoFold = parts.into_iter().collect();
    acc.value()
}

fn max_abs(values: &[Complex64]) -> Option<f64> {
    values.iter().map(|z| z.norm()).fold(None, |m, v| Some(m.map_or(v, |m: f64| m.max(v))))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    All,
    Primitive,
}

impl FamilyKind {
    pub fn label(&self) -> &'static str {
        match self {
            FamilyKind::All => "all",
            FamilyKind::Primitive => "primitive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentReport {
    /// Single modulus, or the lower end `Q` of a `[Q, 2Q]` scan.
    pub q: u64,
    pub q_range: Option<(u64, u64)>,
    pub x: u64,
    pub family: FamilyKind,
    pub characters: u64,
    pub s: f64,
    pub s_over_x2: f64,
    pub eta: f64,
    pub s_logeta_over_x2: f64,
    /// Largest `|sum_{n <= X} lambda(n) chi(n)|` over the family, when the
    /// evaluation path saw individual characters.
    pub max_twisted_sum: Option<f64>,
    pub per_q: Vec<(u64, f64)>,
    #[serde(skip)]
    pub elapsed_secs: f64,
}

impl MomentReport {
    fn new(q: u64, x: u64, family: FamilyKind, characters: u64, s: f64) -> Self {
        let mut r = MomentReport {
            q,
            q_range: None,
            x,
            family,
            characters,
            s,
            s_over_x2: 0.0,
            eta: 0.0,
            s_logeta_over_x2: 0.0,
            max_twisted_sum: None,
            per_q: Vec::new(),
            elapsed_secs: 0.0,
        };
        r.set_eta(0.5);
        r
    }

    /// Recompute the normalisations for a given log exponent.
    pub fn set_eta(&mut self, eta: f64) {
        let x = self.x as f64;
        self.eta = eta;
        if self.x == 0 {
            self.s_over_x2 = 0.0;
            self.s_logeta_over_x2 = 0.0;
        } else {
            self.s_over_x2 = self.s / (x * x);
            self.s_logeta_over_x2 = self.s_over_x2 * x.ln().powf(eta);
        }
    }
}

fn coefficient_slice(f: &MultiplicativeCoefficients, x: u64) -> Result<Vec<Complex64>> {
    if x == 0 {
        return Ok(Vec::new());
    }
    let mut t = f.table(x)?;
    t.remove(0);
    Ok(t)
}

/// `sum_{n <= X} lambda(n) chi(n)`.
pub fn twisted_sum(f: &MultiplicativeCoefficients, chi: &DirichletCharacter, x: u64) -> Result<Complex64> {
    let a = coefficient_slice(f, x)?;
    let chi_values = chi.values();
    let q = chi_values.len();
    Ok(par_block_sum(a.len(), |i| a[i] * chi_values[(i + 1) % q]))
}

/// `sum_{chi mod q} |sum_{n <= X} lambda(n) chi(n)|^2` via the residue-class identity.
pub fn moment_all_characters(f: &MultiplicativeCoefficients, q: u64, x: u64) -> Result<MomentReport> {
    let start = Instant::now();
    let a = coefficient_slice(f, x)?;
    let s = plancherel_moment(&a, q);
    let mut r = MomentReport::new(q, x, FamilyKind::All, euler_phi(q), s);
    r.elapsed_secs = start.elapsed().as_secs_f64();
    Ok(r)
}

/// Primitive-family moment of an arbitrary sequence.
pub fn primitive_moment_of(a: &[Complex64], q: u64) -> Result<(f64, Vec<Complex64>)> {
    let modulus = Arc::new(factor_modulus(q)?);
    let family = enumerate_characters(&modulus, Selection::PrimitiveOnly)?;
    let classes = residue_class_sums(a, q);
    let sums = character_sums_from_classes(&classes, &family.members);
    Ok((sum_norm_sqr(&sums), sums))
}

/// `sum*_{chi mod q} |sum_{n <= X} lambda(n) chi(n)|^2` over primitive characters.
pub fn moment_primitive(f: &MultiplicativeCoefficients, q: u64, x: u64) -> Result<MomentReport> {
    let start = Instant::now();
    let a = coefficient_slice(f, x)?;
    let (s, sums) = primitive_moment_of(&a, q)?;
    let mut r = MomentReport::new(q, x, FamilyKind::Primitive, sums.len() as u64, s);
    r.max_twisted_sum = max_abs(&sums);
    r.elapsed_secs = start.elapsed().as_secs_f64();
    Ok(r)
}

/// `sum_{Q <= q <= 2Q}` of the primitive moments, with the per-`q` breakdown.
pub fn moment_family_scan(f: &MultiplicativeCoefficients, q_lo: u64, x: u64) -> Result<MomentReport> {
    if q_lo == 0 || q_lo > FAMILY_Q_CEILING {
        return Err(Error::InvalidParameters(format!(
            "family scan needs 1 <= Q <= {FAMILY_Q_CEILING}, got {q_lo}"
        )));
    }
    let start = Instant::now();
    let a = coefficient_slice(f, x)?;
    let mut per_q = Vec::new();
    let mut total = TwoFold::new();
    let mut count = 0;
    let mut largest: Option<f64> = None;
    for q in q_lo..=2 * q_lo {
        let (s, sums) = primitive_moment_of(&a, q)?;
        total.add(s);
        count += sums.len() as u64;
        if let Some(m) = max_abs(&sums) {
            largest = Some(largest.map_or(m, |l| l.max(m)));
        }
        per_q.push((q, s));
    }
    let mut r = MomentReport::new(q_lo, x, FamilyKind::Primitive, count, total.value());
    r.q_range = Some((q_lo, 2 * q_lo));
    r.per_q = per_q;
    r.max_twisted_sum = largest;
    r.elapsed_secs = start.elapsed().as_secs_f64();
    Ok(r)
}

/// Modulus data for [`large_sieve_ratio`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SieveFamily {
    Modulus(u64),
    /// All `Q <= q <= 2Q`.
    Range(u64),
}

/// `sum* |sum a_n chi(n)|^2 / ((q + X) sum |a_n|^2)`, or with `Q^2 + X` for a range.
pub fn large_sieve_ratio(a: &[Complex64], family: SieveFamily) -> Result<f64> {
    if a.is_empty() {
        return Err(Error::InvalidParameters("sequence length must be >= 1".into()));
    }
    let energy = sum_norm_sqr(a);
    if energy == 0.0 {
        return Ok(0.0);
    }
    let x = a.len() as f64;
    let (lhs, scale) = match family {
        SieveFamily::Modulus(q) => (primitive_moment_of(a, q)?.0, q as f64 + x),
        SieveFamily::Range(q_lo) => {
            let mut acc = TwoFold::new();
            for q in q_lo..=2 * q_lo {
                acc.add(primitive_moment_of(a, q)?.0);
            }
            (acc.value(), (q_lo * q_lo) as f64 + x)
        }
    };
    Ok(lhs / (scale * energy))
}

/// Spearman rank correlation of `ys` against its index order; `None` with
/// fewer than two points or a constant series.
pub fn spearman_trend(ys: &[f64]) -> Option<f64> {
    let n = ys.len();
    if n < 2 {
        return None;
    }
    let ry = ranks(ys);
    let rx: Vec<f64> = (1..=n).map(|i| i as f64).collect();
    pearson(&rx, &ry)
}

fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&i, &j| v[i].total_cmp(&v[j]));
    let mut out = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            out[k] = avg;
        }
        i = j + 1;
    }
    out
}

fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some(sxy / (sxx * syy).sqrt())
}

/// Parameters of a moment-decay experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub coefficients: String,
    pub q: Vec<u64>,
    pub x_min: u64,
    pub x_max: u64,
    pub x_steps_per_decade: u32,
    pub eta: f64,
    pub beta: f64,
    pub gamma: f64,
    pub epsilon: f64,
    pub family: FamilyKind,
    pub output_csv: Option<String>,
    pub output_json: Option<String>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            coefficients: "liouville".into(),
            q: vec![101],
            x_min: 1000,
            x_max: 1_000_000,
            x_steps_per_decade: 2,
            eta: 0.5,
            beta: 0.0,
            gamma: 1.0,
            epsilon: 0.1,
            family: FamilyKind::Primitive,
            output_csv: None,
            output_json: None,
        }
    }
}

impl ExperimentConfig {
    /// Parse the flat `key = value` format. Blank lines and `#` comments are
    /// ignored; unknown keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |message: String| Error::Parse { line: i + 1, message };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("expected 'key = value', got '{line}'")))?;
            let (key, value) = (key.trim(), value.trim());
            let int = |v: &str| v.replace('_', "").parse::<u64>().map_err(|_| bad(format!("{key}: '{v}' is not an integer")));
            let real = |v: &str| v.parse::<f64>().map_err(|_| bad(format!("{key}: '{v}' is not a number")));
            match key {
                "coefficients" => cfg.coefficients = value.to_string(),
                "q" => {
                    cfg.q = value
                        .split(',')
                        .map(|s| int(s.trim()))
                        .collect::<Result<Vec<_>>>()?;
                }
                "x_min" => cfg.x_min = int(value)?,
                "x_max" => cfg.x_max = int(value)?,
                "x_steps_per_decade" => cfg.x_steps_per_decade = int(value)? as u32,
                "eta" => cfg.eta = real(value)?,
                "beta" => cfg.beta = real(value)?,
                "gamma" => cfg.gamma = real(value)?,
                "epsilon" => cfg.epsilon = real(value)?,
                "family" => {
                    cfg.family = match value {
                        "all" => FamilyKind::All,
                        "primitive" => FamilyKind::Primitive,
                        other => return Err(bad(format!("family: unknown value '{other}'"))),
                    }
                }
                "output_csv" => cfg.output_csv = Some(value.to_string()),
                "output_json" => cfg.output_json = Some(value.to_string()),
                other => return Err(bad(format!("unknown key '{other}'"))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.q.is_empty() || self.q.contains(&0) {
            return Err(Error::InvalidParameters("q list must be non-empty and positive".into()));
        }
        if self.x_min == 0 || self.x_min > self.x_max {
            return Err(Error::InvalidParameters(format!(
                "empty X grid: x_min = {}, x_max = {}",
                self.x_min, self.x_max
            )));
        }
        if self.x_steps_per_decade == 0 {
            return Err(Error::InvalidParameters("x_steps_per_decade must be >= 1".into()));
        }
        if !(self.eta >= 0.0) {
            return Err(Error::InvalidParameters(format!("eta must be >= 0, got {}", self.eta)));
        }
        Ok(())
    }

    /// `round(x_min 10^{k / steps})` up to `x_max`, strictly increasing.
    pub fn x_grid(&self) -> Vec<u64> {
        geometric_grid(self.x_min, self.x_max, self.x_steps_per_decade)
    }
}

pub fn geometric_grid(x_min: u64, x_max: u64, steps_per_decade: u32) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::new();
    if x_min == 0 || steps_per_decade == 0 {
        return out;
    }
    let top = (x_max as f64).log10() + 1e-9;
    let base = (x_min as f64).log10();
    let mut k = 0u32;
    loop {
        let e = base + k as f64 / steps_per_decade as f64;
        if e > top {
            break;
        }
        let x = 10f64.powf(e).round() as u64;
        if out.last().map_or(true, |&l| x > l) {
            out.push(x.min(x_max));
        }
        k += 1;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub q: u64,
    pub x: u64,
    pub family: FamilyKind,
    pub s: f64,
    pub s_over_x2: f64,
    pub s_logeta_over_x2: f64,
    /// `X < q^{1 + epsilon}`: outside the range the moment bound speaks about.
    pub below_range: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayScan {
    pub rows: Vec<ScanRow>,
    /// Spearman correlation of `S/X^2` against `X`, per modulus.
    pub trend: Vec<(u64, Option<f64>)>,
}

impl DecayScan {
    pub fn trend_for(&self, q: u64) -> Option<f64> {
        self.trend.iter().find(|(m, _)| *m == q).and_then(|(_, t)| *t)
    }

    pub const CSV_HEADER: &'static str = "q,X,family,S,S_over_X2,S_logeta_over_X2,trend_stat,range_flag";

    /// CSV rows with floats printed to 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(Self::CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let trend = match self.trend_for(r.q) {
                Some(t) => fmt17(t),
                None => "NA".into(),
            };
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.q,
                r.x,
                r.family.label(),
                fmt17(r.s),
                fmt17(r.s_over_x2),
                fmt17(r.s_logeta_over_x2),
                trend,
                if r.below_range { "below-range" } else { "ok" }
            ));
        }
        out
    }
}

/// 17 significant digits, enough to round-trip any `f64`.
pub fn fmt17(v: f64) -> String {
    format!("{v:.16e}")
}

/// Moments along the configured X grid for every modulus in the config.
pub fn decay_scan(f: &MultiplicativeCoefficients, cfg: &ExperimentConfig) -> Result<DecayScan> {
    cfg.validate()?;
    let grid = cfg.x_grid();
    let x_top = *grid.last().expect("validated grid is non-empty");
    let a = coefficient_slice(f, x_top)?;
    let mut rows = Vec::new();
    let mut trend = Vec::new();
    for &q in &cfg.q {
        let modulus = Arc::new(factor_modulus(q)?);
        let selection = match cfg.family {
            FamilyKind::All => Selection::All,
            FamilyKind::Primitive => Selection::PrimitiveOnly,
        };
        let family = enumerate_characters(&modulus, selection)?;
        let mut classes = vec![ComplexTwoFold::new(); q as usize];
        let mut done = 0usize;
        let mut normalized = Vec::new();
        for &x in &grid {
            let step = class_sums_range(&a, q, done + 1, x as usize + 1);
            merge_classes(&mut classes, &step);
            done = x as usize;
            let values: Vec<Complex64> = classes.iter().map(|c| c.value()).collect();
            let s = match cfg.family {
                FamilyKind::All => plancherel_from_classes(&values, q),
                FamilyKind::Primitive => sum_norm_sqr(&character_sums_from_classes(&values, &family.members)),
            };
            let mut report = MomentReport::new(q, x, cfg.family, family.len() as u64, s);
            report.set_eta(cfg.eta);
            normalized.push(report.s_over_x2);
            rows.push(ScanRow {
                q,
                x,
                family: cfg.family,
                s,
                s_over_x2: report.s_over_x2,
                s_logeta_over_x2: report.s_logeta_over_x2,
                below_range: (x as f64) < (q as f64).powf(1.0 + cfg.epsilon),
            });
        }
        trend.push((q, spearman_trend(&normalized)));
    }
    Ok(DecayScan { rows, trend })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> MultiplicativeCoefficients {
        MultiplicativeCoefficients::one()
    }

    #[test]
    fn twisted_sum_examples() {
        let m = Arc::new(factor_modulus(12).unwrap());
        let principal = m.principal();
        assert_eq!(twisted_sum(&one(), &principal, 100).unwrap().re, 33.0);
        let chi = m.character(1).unwrap();
        assert!(twisted_sum(&one(), &chi, 120).unwrap().norm() < 1e-12);

        let m3 = Arc::new(factor_modulus(3).unwrap());
        let chi3 = m3.character(1).unwrap();
        let lv = MultiplicativeCoefficients::liouville();
        let direct: Complex64 = (1..=10u64)
            .map(|n| lv.lambda_value(n).unwrap() * chi3.evaluate(n as i64))
            .sum();
        assert!((twisted_sum(&lv, &chi3, 10).unwrap() - direct).norm() < 1e-14);
    }

    #[test]
    fn all_character_moment_examples() {
        assert_eq!(moment_all_characters(&one(), 3, 3).unwrap().s, 4.0);
        assert_eq!(moment_all_characters(&one(), 3, 0).unwrap().s, 0.0);
    }

    #[test]
    fn primitive_moment_examples() {
        let lv = MultiplicativeCoefficients::liouville();
        let all = moment_all_characters(&lv, 101, 3000).unwrap().s;
        let prim = moment_primitive(&lv, 101, 3000).unwrap().s;
        let principal = twisted_sum(&lv, &Arc::new(factor_modulus(101).unwrap()).principal(), 3000).unwrap();
        assert!((all - principal.norm_sqr() - prim).abs() < 1e-9 * all);

        let m8 = Arc::new(factor_modulus(8).unwrap());
        let fam = enumerate_characters(&m8, Selection::PrimitiveOnly).unwrap();
        let brute: f64 = fam
            .iter()
            .map(|chi| (1..=8).map(|n| chi.evaluate(n)).sum::<Complex64>().norm_sqr())
            .sum();
        assert!((moment_primitive(&one(), 8, 8).unwrap().s - brute).abs() < 1e-12);
        assert_eq!(moment_primitive(&one(), 2, 100).unwrap().s, 0.0);
    }

    #[test]
    fn family_scan_q2() {
        let r = moment_family_scan(&one(), 2, 10).unwrap();
        assert_eq!(r.per_q.len(), 3);
        assert_eq!(r.per_q[0].1, 0.0);
        let brute = |q: u64| {
            let m = Arc::new(factor_modulus(q).unwrap());
            enumerate_characters(&m, Selection::PrimitiveOnly)
                .unwrap()
                .iter()
                .map(|chi| (1..=10).map(|n| chi.evaluate(n)).sum::<Complex64>().norm_sqr())
                .sum::<f64>()
        };
        assert!((r.s - brute(3) - brute(4)).abs() < 1e-12);
        assert_eq!(moment_family_scan(&one(), 2, 0).unwrap().s, 0.0);
    }

    #[test]
    fn large_sieve_examples() {
        let mut a = vec![Complex64::new(0.0, 0.0); 50];
        a[6] = Complex64::new(1.0, 0.0);
        let r = large_sieve_ratio(&a, SieveFamily::Modulus(101)).unwrap();
        assert!((r - 99.0 / 151.0).abs() < 1e-12);
        let zero = vec![Complex64::new(0.0, 0.0); 10];
        assert_eq!(large_sieve_ratio(&zero, SieveFamily::Modulus(7)).unwrap(), 0.0);
    }

    #[test]
    fn spearman_examples() {
        assert_eq!(spearman_trend(&[3.0, 2.0, 1.0]), Some(-1.0));
        assert_eq!(spearman_trend(&[1.0, 5.0, 9.0, 20.0]), Some(1.0));
        assert_eq!(spearman_trend(&[1.0]), None);
    }

    #[test]
    fn grid_arithmetic() {
        assert_eq!(geometric_grid(1000, 1_000_000, 4).len(), 13);
        assert_eq!(geometric_grid(1000, 1_000_000, 2), vec![1000, 3162, 10_000, 31_623, 100_000, 316_228, 1_000_000]);
    }

    #[test]
    fn config_parsing() {
        let cfg = ExperimentConfig::parse("coefficients = liouville\nq = 101, 103\nx_min=1000\nx_max = 100_000 # c\n").unwrap();
        assert_eq!(cfg.q, vec![101, 103]);
        assert_eq!(cfg.x_max, 100_000);
        assert!(matches!(ExperimentConfig::parse("q = 7\ncolour = red\n"), Err(Error::Parse { line: 2, .. })));
        assert!(ExperimentConfig::parse("x_min = 100\nx_max = 10\n").is_err());
    }

    #[test]
    fn scan_for_constant_function_decreases() {
        let cfg = ExperimentConfig {
            coefficients: "tau_1".into(),
            q: vec![101],
            x_min: 1000,
            x_max: 100_000,
            x_steps_per_decade: 2,
            ..ExperimentConfig::default()
        };
        let scan = decay_scan(&one(), &cfg).unwrap();
        assert_eq!(scan.rows.len(), 5);
        assert_eq!(scan.trend_for(101), Some(-1.0));
        assert!(!scan.rows[0].below_range);
        assert!(scan.to_csv().starts_with(DecayScan::CSV_HEADER));
        // incremental classes agree with a fresh evaluation
        let last = scan.rows.last().unwrap();
        assert!((last.s - moment_primitive(&one(), 101, last.x).unwrap().s).abs() <= 1e-12 * last.s);
    }
}
