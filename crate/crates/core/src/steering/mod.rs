//! Steering-based upper bounds on the noise parameter.

mod assemblage;
mod mub_witness;
mod qubit_bound;
mod report;
mod specker;

pub use assemblage::{
    assemblage_from_max_entangled, conditional_state, isotropic_state, maximally_entangled_state,
    Assemblage,
};
pub use mub_witness::{
    build_mub_witness, mub_steering_value, mub_steering_value_closed_form, mub_threshold,
    witness_coefficients, MubWitness, WitnessChecks,
};
pub use qubit_bound::{
    planar_bound, qubit_bound, qubit_steering_value, qubit_witness, qubit_witness_partitioned,
    QubitWitness, MAX_SETTINGS,
};
pub use report::{
    construction_lambda, qubit_witness_threshold, tightness_report, witness_directions,
    witness_lambda, WitnessReport,
};
pub use specker::{
    quadruple_threshold, specker_classify, specker_window, triple_threshold, SpeckerClass,
};
