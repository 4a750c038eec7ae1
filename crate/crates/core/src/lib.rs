//! Numerical laboratory for second moments of twisted L-functions.
//!
//! The crate is organised bottom-up:
//!
//! * [`arith`] and [`summation`] hold the integer and floating-point plumbing
//!   shared by everything else.
//! * [`characters`] builds Dirichlet characters from discrete-log tables.
//! * [`coefficients`] provides degree-`d` multiplicative coefficient engines
//!   (divisor functions, Liouville, Möbius, the Ramanujan Δ form and its
//!   symmetric square, file-backed data) and the mean-value verifiers.
//! * [`ramare`] implements the Ramaré weight and the exact four-term
//!   rearrangement of a twisted sum.
//! * [`moments`] evaluates character-family second moments and large-sieve
//!   diagnostics.
//! * [`lfunctions`] covers gamma factors, the approximate functional
//!   equation, a Hurwitz-zeta oracle and the explicit-formula checker.

pub mod arith;
pub mod characters;
pub mod coefficients;
pub mod error;
pub mod lfunctions;
pub mod moments;
pub mod ramare;
pub mod summation;

pub use characters::{CharacterFamily, DirichletCharacter, FactoredModulus, RootOfUnity, Selection};
pub use coefficients::{CoefficientKind, MultiplicativeCoefficients};
pub use error::{Error, Result};
pub use lfunctions::{AfeWeight, GammaFactorSpec, ZeroDataset};
pub use moments::{ExperimentConfig, MomentReport};
pub use num_complex::Complex64;
pub use ramare::{DecompositionPlan, DecompositionResult};
