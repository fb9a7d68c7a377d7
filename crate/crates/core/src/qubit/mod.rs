//! Binary qubit observables and the sign-rule joint measurement.

mod bloch;
mod catalog;
mod strategy;

pub use bloch::{
    binary_alphabet, bloch_from_observable, observable_from_bloch, plus_effect_bloch,
    BinaryQubitObservable, BlochVector, Sign,
};
pub use catalog::{
    dodecahedron_axes, golden_ratio, icosahedron_axes, planar_config, planar_lambda,
    platonic_config, PLATONIC_NAMES,
};
pub use strategy::{
    adaptive_joint, marginal_noise, noise_from_marginal, optimal_pair, sign_rule,
    sign_rule_post_processing, OptimalPair, QubitConfig,
};
