//! Archimedean factors, central values and zero diagnostics.

pub mod afe;
pub mod explicit;
pub mod gamma;
pub mod hurwitz;
pub mod spec;

pub use afe::{
    afe_weight, central_value_afe, central_values_afe, gauss_legendre, nominal_truncation, root_number, AfeEvaluator, AfeWeight,
    CentralValue, DEFAULT_ABSCISSA, DEFAULT_TAIL_TOL,
};
pub use explicit::{
    explicit_formula_residual, log_derivative_coefficients, prime_cancellation_probe, zero_count_window,
    CancellationReport, ExplicitFormulaReport, ZeroCount, ZeroDataset,
};
pub use gamma::{digamma, gamma, gamma_r, ln_gamma, ln_gamma_r};
pub use hurwitz::{hurwitz_oracle, hurwitz_zeta, ORACLE_Q_CEILING};
pub use spec::{l_infty, theta_d, GammaFactorSpec};
