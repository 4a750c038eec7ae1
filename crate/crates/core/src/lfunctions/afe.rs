//! The AFE weight and central values.
//!
//! With `R(s) = L_inf(1/2 + s) / L_inf(1/2)` the weight is
//!
//! ```text
//! g(x) = (1 / 2 pi i) int_(c) (s + 1/2) R(s) e^{s^2} x^{-s} ds / s
//! ```
//!
//! and the first half of the central value is `int_1^inf S(x) g(x) x^{-3/2} dx`
//! with `S(x) = sum_{n <= x} a_n`. Because `S` is a step function this is
//! `sum_n a_n W(n)` with `W(n) = int_n^inf g(x) x^{-3/2} dx`, and the inner
//! `x`-integral is done in closed form at every contour node:
//! `W(n) = (1 / 2 pi i) int_(c) R(s) e^{s^2} n^{-s-1/2} ds / s`.
//!
//! The contour integral is a Gauss-Legendre panel rule on `|Im s| <= T`,
//! where `e^{-T^2}` is far below `10^{-18}`. The panel count is doubled until
//! two successive rules agree.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::spec::GammaFactorSpec;
use crate::arith::SpfSieve;
use crate::characters::DirichletCharacter;
use crate::coefficients::MultiplicativeCoefficients;
use crate::error::{Error, Result};
use crate::summation::{par_block_sum, tree_reduce, ComplexTwoFold};

const GL_ORDER: usize = 20;
const MIN_PANELS: usize = 4;
const MAX_PANELS: usize = 512;
/// Panels per task in [`AfeWeight::tail_table`]; each task holds one table.
const PANELS_PER_TASK: usize = 8;
/// Truncation height: `e^{-T^2} < 10^{-20}`.
const T_MAX: f64 = 6.9;
/// Self-convergence target for the panel doubling.
const PANEL_TOL: f64 = 1e-12;
/// Default contour abscissa.
pub const DEFAULT_ABSCISSA: f64 = 0.5;
/// Bound on the neglected tail `sum_{n > n0} |a_n W(n)|`.
pub const DEFAULT_TAIL_TOL: f64 = 1e-12;

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn gl20() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(GL_ORDER))
}

/// Nodes `t_k` and weights on `[-t_max, t_max]` with `panels` equal panels.
fn panel_rule(t_max: f64, panels: usize) -> Vec<(f64, f64)> {
    let (x, w) = gl20();
    let width = 2.0 * t_max / panels as f64;
    let mut out = Vec::with_capacity(panels * GL_ORDER);
    for p in 0..panels {
        let mid = -t_max + (p as f64 + 0.5) * width;
        for (xi, wi) in x.iter().zip(w) {
            out.push((mid + xi * width / 2.0, wi * width / 2.0));
        }
    }
    out
}

#[derive(Debug, Clone, Copy)]
struct Node {
    s: Complex64,
    /// `dt / (2 pi) * R(s) e^{s^2} / s`.
    kernel: Complex64,
}

#[derive(Debug, Clone)]
pub struct AfeWeight {
    spec: GammaFactorSpec,
    c: f64,
    t_max: f64,
    panels: usize,
    nodes: Vec<Node>,
}

impl AfeWeight {
    /// Weight on the line `Re s = c`; requires `c > 1/2 - theta`.
    pub fn new(spec: &GammaFactorSpec, c: f64) -> Result<Self> {
        let bound = 0.5 - spec.theta();
        if !(c > bound) || !c.is_finite() {
            return Err(Error::ForbiddenAbscissa { c, bound });
        }
        let probes = probe_points(spec);
        let mut panels = MIN_PANELS;
        let mut w = Self::with_panels(spec, c, panels)?;
        loop {
            let finer = Self::with_panels(spec, c, 2 * panels)?;
            let mut scale: f64 = 0.0;
            let mut diff: f64 = 0.0;
            for &x in &probes {
                let (a, b) = (w.g(x)?, finer.g(x)?);
                let (ta, tb) = (w.tail(x), finer.tail(x));
                scale = scale.max(b.norm()).max(tb.norm());
                diff = diff.max((a - b).norm()).max((ta - tb).norm());
            }
            w = finer;
            panels *= 2;
            if diff <= PANEL_TOL * scale || panels >= MAX_PANELS {
                break;
            }
        }
        Ok(w)
    }

    /// Fixed panel count, no convergence loop.
    pub fn with_panels(spec: &GammaFactorSpec, c: f64, panels: usize) -> Result<Self> {
        let bound = 0.5 - spec.theta();
        if !(c > bound) {
            return Err(Error::ForbiddenAbscissa { c, bound });
        }
        let centre = spec.ln_l_infty(Complex64::new(0.5, 0.0))?;
        let nodes = panel_rule(T_MAX, panels)
            .into_iter()
            .map(|(t, wt)| {
                let s = Complex64::new(c, t);
                let ratio = (spec.ln_l_infty(s + 0.5)? - centre + s * s).exp();
                Ok(Node {
                    s,
                    kernel: ratio * wt / (2.0 * PI) / s,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(AfeWeight {
            spec: spec.clone(),
            c,
            t_max: T_MAX,
            panels,
            nodes,
        })
    }

    pub fn spec(&self) -> &GammaFactorSpec {
        &self.spec
    }

    pub fn abscissa(&self) -> f64 {
        self.c
    }

    pub fn truncation_height(&self) -> f64 {
        self.t_max
    }

    pub fn panels(&self) -> usize {
        self.panels
    }

    /// `g(x)`.
    pub fn g(&self, x: f64) -> Result<Complex64> {
        if !(x > 0.0) {
            return Err(Error::InvalidParameters(format!("weight needs x > 0, got {x}")));
        }
        let lx = x.ln();
        let acc: ComplexTwoFold = self
            .nodes
            .iter()
            .map(|nd| nd.kernel * (nd.s + 0.5) * (-nd.s * lx).exp())
            .collect();
        Ok(acc.value())
    }

    /// `W(x) = int_x^inf g(u) u^{-3/2} du` for `x >= 1`.
    pub fn tail(&self, x: f64) -> Complex64 {
        let lx = x.ln();
        let acc: ComplexTwoFold = self
            .nodes
            .iter()
            .map(|nd| nd.kernel * (-(nd.s + 0.5) * lx).exp())
            .collect();
        acc.value()
    }

    /// `W(1), ..., W(n_max)` (index 0 is zero), using `n^{-s} = prod p^{-s}`
    /// so that only prime arguments need an exponential.
    pub fn tail_table(&self, n_max: u64, sieve: &SpfSieve) -> Vec<Complex64> {
        assert!(sieve.limit() >= n_max);
        let len = n_max as usize + 1;
        let parts: Vec<Vec<Complex64>> = self
            .nodes
            .par_chunks(GL_ORDER * PANELS_PER_TASK)
            .map(|panel| {
                let mut acc = vec![Complex64::new(0.0, 0.0); len];
                let mut pw = vec![Complex64::new(0.0, 0.0); len];
                for nd in panel {
                    let e = -(nd.s + 0.5);
                    if len > 1 {
                        pw[1] = Complex64::new(1.0, 0.0);
                    }
                    for n in 2..len {
                        let (p, k, pk) = sieve.head(n as u64);
                        pw[n] = if pk as usize == n {
                            if k == 1 {
                                (e * (p as f64).ln()).exp()
                            } else {
                                pw[n / p as usize] * pw[p as usize]
                            }
                        } else {
                            pw[pk as usize] * pw[n / pk as usize]
                        };
                    }
                    for n in 1..len {
                        acc[n] += nd.kernel * pw[n];
                    }
                }
                acc
            })
            .collect();
        tree_reduce(parts, vec![Complex64::new(0.0, 0.0); len], |a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        })
    }

    /// Smallest `n0` with `sum_{n > n0} n^{growth} |W(n)| <= tol`, from the
    /// bound `|W(n)| <= M(c') n^{-c'-1/2}` on shifted lines `Re s = c'`.
    pub fn cutoff(&self, tol: f64, growth: f64) -> Result<u64> {
        let centre = self.spec.ln_l_infty(Complex64::new(0.5, 0.0))?;
        let rule = panel_rule(T_MAX + 1.0, 32);
        let mut best = f64::INFINITY;
        for c_shift in 1..=16 {
            let cs = c_shift as f64;
            let exponent = cs - 0.5 - growth;
            if exponent < 0.25 {
                continue;
            }
            let mut m = 0.0;
            for &(t, wt) in &rule {
                let s = Complex64::new(cs, t);
                let ratio = (self.spec.ln_l_infty(s + 0.5)? - centre + s * s).exp();
                m += wt * ratio.norm() / s.norm();
            }
            m /= 2.0 * PI;
            // sum_{n > n0} n^{-exponent - 1} <= n0^{-exponent} / exponent
            let n0 = (m / (exponent * tol)).powf(1.0 / exponent);
            best = best.min(n0);
        }
        Ok(best.ceil().max(1.0) as u64)
    }
}

fn probe_points(spec: &GammaFactorSpec) -> Vec<f64> {
    let root = spec.conductor().sqrt().max(1.0);
    vec![1.0, root, root * 4f64.exp(), root * 8f64.exp(), root * 12f64.exp()]
}

pub fn afe_weight(weight: &AfeWeight, x: f64) -> Result<Complex64> {
    weight.g(x)
}

/// `tau(chi) / (i^delta sqrt q)` for a primitive character.
pub fn root_number(chi: &DirichletCharacter) -> Result<Complex64> {
    if !chi.is_primitive() {
        return Err(Error::InvalidParameters("root number needs a primitive character".into()));
    }
    let q = chi.q();
    let gauss = par_block_sum(q as usize, |a| {
        chi.evaluate(a as i64) * Complex64::from_polar(1.0, 2.0 * PI * a as f64 / q as f64)
    });
    let i_delta = if chi.parity() < 0 {
        Complex64::new(0.0, 1.0)
    } else {
        Complex64::new(1.0, 0.0)
    };
    Ok(gauss / (i_delta * (q as f64).sqrt()))
}

#[derive(Debug, Clone, Serialize)]
pub struct CentralValue {
    pub q: u64,
    pub character_index: u64,
    pub value: Complex64,
    pub first_integral: Complex64,
    pub dual_integral: Complex64,
    pub kappa: Option<Complex64>,
    /// Only the first integral is present (no root number supplied).
    pub partial: bool,
    /// Number of Dirichlet terms kept.
    pub terms: u64,
    pub panels: usize,
}

/// Weight tables for one gamma-factor spec, shared by the characters that use it.
pub struct AfeEvaluator {
    weight: AfeWeight,
    dual_weight: AfeWeight,
    /// `L_inf(1/2, dual) / L_inf(1/2)`.
    dual_ratio: Complex64,
    table: Vec<Complex64>,
    dual_table: Vec<Complex64>,
}

impl AfeEvaluator {
    pub fn new(spec: &GammaFactorSpec, c: f64, tol: f64) -> Result<Self> {
        let weight = AfeWeight::new(spec, c)?;
        Self::from_weight(weight, tol)
    }

    pub fn from_weight(weight: AfeWeight, tol: f64) -> Result<Self> {
        let spec = weight.spec().clone();
        let dual_spec = spec.dual();
        let dual_weight = if dual_spec == spec {
            weight.clone()
        } else {
            AfeWeight::with_panels(&dual_spec, weight.abscissa(), weight.panels())?
        };
        let growth = if spec.degree() == 1 { 0.0 } else { 0.25 };
        let n0 = weight.cutoff(tol, growth)?.max(dual_weight.cutoff(tol, growth)?);
        let sieve = SpfSieve::new(n0);
        let table = weight.tail_table(n0, &sieve);
        let dual_table = if dual_spec == spec {
            table.clone()
        } else {
            dual_weight.tail_table(n0, &sieve)
        };
        let half = Complex64::new(0.5, 0.0);
        let dual_ratio = (dual_spec.ln_l_infty(half)? - spec.ln_l_infty(half)?).exp();
        Ok(AfeEvaluator {
            weight,
            dual_weight,
            dual_ratio,
            table,
            dual_table,
        })
    }

    pub fn terms(&self) -> u64 {
        (self.table.len() - 1) as u64
    }

    pub fn weight(&self) -> &AfeWeight {
        &self.weight
    }

    pub fn dual_weight(&self) -> &AfeWeight {
        &self.dual_weight
    }

    /// `L(1/2, F x chi)` from coefficient tables `a[n] = lambda_F(n)`,
    /// `dual[n] = lambda_{F~}(n)`, both indexed from `n = 0`.
    pub fn evaluate(
        &self,
        a: &[Complex64],
        dual: &[Complex64],
        chi: &DirichletCharacter,
        kappa: Option<Complex64>,
    ) -> Result<CentralValue> {
        let n0 = self.terms() as usize;
        if a.len() <= n0 || dual.len() <= n0 {
            return Err(Error::CeilingExceeded {
                n: n0 as u64,
                ceiling: a.len().min(dual.len()) as u64 - 1,
            });
        }
        let chi_values = chi.values();
        let q = chi_values.len();
        let first = par_block_sum(n0, |i| a[i + 1] * chi_values[(i + 1) % q] * self.table[i + 1]);
        let dual_sum = par_block_sum(n0, |i| dual[i + 1] * chi_values[(i + 1) % q].conj() * self.dual_table[i + 1]);
        let dual_integral = dual_sum * self.dual_ratio;
        let value = match kappa {
            Some(k) => first + k * dual_integral,
            None => first,
        };
        Ok(CentralValue {
            q: chi.q(),
            character_index: chi.index(),
            value,
            first_integral: first,
            dual_integral,
            kappa,
            partial: kappa.is_none(),
            terms: n0 as u64,
            panels: self.weight.panels(),
        })
    }
}

/// `L(1/2, F x chi)` by the approximate functional equation.
///
/// For degree 1 the root number is computed from the Gauss sum when `kappa`
/// is `None`; for higher degree a missing `kappa` gives a partial value.
pub fn central_value_afe(
    f: &MultiplicativeCoefficients,
    chi: &DirichletCharacter,
    spec: &GammaFactorSpec,
    dual_f: Option<&MultiplicativeCoefficients>,
    kappa: Option<Complex64>,
) -> Result<CentralValue> {
    let mut out = central_values_afe(f, std::slice::from_ref(chi), spec, dual_f, kappa)?;
    Ok(out.remove(0))
}

/// [`central_value_afe`] for several characters of one modulus, sharing the
/// weight tables between characters of equal parity.
pub fn central_values_afe(
    f: &MultiplicativeCoefficients,
    chars: &[DirichletCharacter],
    spec: &GammaFactorSpec,
    dual_f: Option<&MultiplicativeCoefficients>,
    kappa: Option<Complex64>,
) -> Result<Vec<CentralValue>> {
    for chi in chars {
        if chi.q() < 2 || !chi.is_primitive() {
            return Err(Error::InvalidParameters(
                "central values need a primitive character of modulus >= 2".into(),
            ));
        }
    }
    let mut out: Vec<Option<CentralValue>> = vec![None; chars.len()];
    for parity in [1i8, -1] {
        let members: Vec<usize> = (0..chars.len()).filter(|&i| chars[i].parity() == parity).collect();
        if members.is_empty() {
            continue;
        }
        let spec = spec.for_parity(parity);
        let eval = AfeEvaluator::new(&spec, DEFAULT_ABSCISSA, DEFAULT_TAIL_TOL)?;
        let n0 = eval.terms();
        let a = f.table(n0)?;
        let dual = match dual_f {
            Some(d) => d.table(n0)?,
            None => a.iter().map(|z| z.conj()).collect(),
        };
        for i in members {
            let chi = &chars[i];
            let k = match kappa {
                Some(k) => Some(k),
                None if spec.degree() == 1 => Some(root_number(chi)?),
                None => None,
            };
            out[i] = Some(eval.evaluate(&a, &dual, chi, k)?);
        }
    }
    Ok(out.into_iter().map(|v| v.expect("every parity handled")).collect())
}

/// Truncation point `q^{d/2} log^{20} q` of the `x`-integral (reported only;
/// the evaluator truncates the `n`-sum by [`AfeWeight::cutoff`] instead).
pub fn nominal_truncation(q: u64, d: u32) -> f64 {
    let qf = q as f64;
    qf.powf(d as f64 / 2.0) * qf.ln().powi(20)
}
