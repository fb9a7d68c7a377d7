//! Matching lower (construction) and upper (steering witness) noise bounds.

use serde::Serialize;

use crate::catalog::ConfigId;
use crate::error::{Error, Result};
use crate::mub::projective_marginal_noise;
use crate::povm::Observable;
use crate::qubit::{adaptive_joint, noise_from_marginal, BinaryQubitObservable, BlochVector, QubitConfig};
use crate::tolerance::TIGHTNESS_TOL;

use super::assemblage::assemblage_from_max_entangled;
use super::mub_witness::MubWitness;
use super::qubit_bound::{qubit_bound, qubit_steering_value};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub config: String,
    pub lambda_construction: f64,
    pub lambda_witness: f64,
    pub tight: bool,
    pub gap: f64,
}

impl WitnessReport {
    pub fn new(config: String, lambda_construction: f64, lambda_witness: f64) -> Self {
        let gap = lambda_witness - lambda_construction;
        Self {
            config,
            lambda_construction,
            lambda_witness,
            tight: gap.abs() <= TIGHTNESS_TOL,
            gap,
        }
    }
}

/// Noise level above which Alice's `targets` violate the qubit steering
/// inequality with Bob's `directions`, i.e. `C_n / value(lambda = 1)`.
///
/// Alice measures the transposed targets on the maximally entangled state.
pub fn qubit_witness_threshold(targets: &[Observable], directions: &[BlochVector]) -> Result<f64> {
    let alice: Vec<Observable> = targets.iter().map(Observable::transpose).collect();
    let assemblage = assemblage_from_max_entangled(&alice)?;
    let value = qubit_steering_value(&assemblage, directions)?;
    if !(value > 0.0) {
        return Err(Error::WitnessInvariant(format!(
            "witness directions give non-positive steering value {value}"
        )));
    }
    Ok(qubit_bound(directions)? / value)
}

/// Bob's measurement directions for the qubit witness.
///
/// Symmetric sets use the targets themselves. A two-direction pair uses
/// `(b_1 +- b_2) / sqrt 2` built from the guesses, which rotates the targets
/// to an orthogonal pair with the same bisectors.
pub fn witness_directions(config: &QubitConfig) -> Result<Vec<BlochVector>> {
    if config.name == "pair" {
        let (b1, b2) = (config.guesses[0], config.guesses[1]);
        Ok(vec![(b1 + b2).normalized()?, (b1 - b2).normalized()?])
    } else {
        Ok(config.targets.clone())
    }
}

fn sharp_targets(config: &QubitConfig) -> Result<Vec<Observable>> {
    config
        .targets
        .iter()
        .map(|a| BinaryQubitObservable::new(*a, 1.0).map(|o| o.observable()))
        .collect()
}

/// Smallest marginal noise parameter actually realized by the construction.
pub fn construction_lambda(id: &ConfigId) -> Result<f64> {
    if let Some(pair) = id.mub_pair()? {
        let joint = id.construct()?;
        let first = projective_marginal_noise(&joint.marginal(0)?, pair.first())?;
        let second = projective_marginal_noise(&joint.marginal(1)?, pair.second())?;
        return Ok(first.min(second));
    }
    let config = id.qubit_config()?.expect("non-MUB ids are qubit configurations");
    let joint = adaptive_joint(&config)?;
    config
        .targets
        .iter()
        .enumerate()
        .map(|(slot, a)| noise_from_marginal(&joint.marginal(slot)?, slot, a))
        .try_fold(f64::INFINITY, |acc, l| l.map(|l| acc.min(l)))
}

/// Steering-based upper bound on the noise parameter.
pub fn witness_lambda(id: &ConfigId) -> Result<f64> {
    if let Some(pair) = id.mub_pair()? {
        return MubWitness::build(&pair)?.violation_threshold();
    }
    let config = id.qubit_config()?.expect("non-MUB ids are qubit configurations");
    qubit_witness_threshold(&sharp_targets(&config)?, &witness_directions(&config)?)
}

pub fn tightness_report(id: &ConfigId) -> Result<WitnessReport> {
    Ok(WitnessReport::new(
        id.to_string(),
        construction_lambda(id)?,
        witness_lambda(id)?,
    ))
}
