//! Joint measurements for noisy quantum observables built from the adaptive
//! (guess-and-assign) strategy, together with steering witnesses that show
//! the resulting noise levels cannot be improved.
//!
//! * [`operator`] and [`povm`]: Hermitian operators, observables, joint
//!   observables, marginals and white-noise mixing.
//! * [`combine`]: the general adaptive combiner over auxiliary observables.
//! * [`qubit`]: the sign-rule strategy for binary qubit observables and the
//!   configuration catalog.
//! * [`mub`]: the superposition construction for two mutually unbiased bases.
//! * [`steering`]: steering bounds, tightness reports and the 4-Specker window.

// `!(x <= tol)` is used on purpose so that NaN fails every check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod combine;
pub mod error;
pub mod io;
pub mod mub;
pub mod operator;
pub mod povm;
pub mod qubit;
pub mod steering;
pub mod tolerance;

pub use catalog::{default_catalog, ConfigId, Platonic};
pub use error::{Error, Result};
pub use operator::{min_eigenvalue, HermitianOperator};
pub use povm::{
    marginal, mix_white_noise, transpose_observable, validate_povm, JointObservable, Observable,
    ValidationReport,
};
pub use tolerance::ToleranceConfig;
