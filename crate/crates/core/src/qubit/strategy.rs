//! Sign-rule adaptive strategy for binary qubit observables.
//!
//! Pick guessing directions `b_k`, measure `S^{b_k}` with probability
//! `mu_k`, and report outcome `beta` for every target `a_l` with
//! `a_l . b_k > 0` and `-beta` for the rest.

use crate::combine::PostProcessing;
use crate::error::{Error, Result};
use crate::povm::{JointObservable, Observable, OutcomeTuple};
use crate::tolerance::ToleranceConfig;

use super::bloch::{binary_alphabet, plus_effect_bloch, BinaryQubitObservable, BlochVector, Sign};

/// Targets, guessing directions and weights for one run of the strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitConfig {
    pub name: String,
    pub targets: Vec<BlochVector>,
    pub guesses: Vec<BlochVector>,
    pub weights: Vec<f64>,
}

impl QubitConfig {
    /// Uniform weights over the guesses.
    pub fn uniform(
        name: impl Into<String>,
        targets: Vec<BlochVector>,
        guesses: Vec<BlochVector>,
    ) -> Result<Self> {
        let n = guesses.len();
        let weights = vec![1.0 / n as f64; n];
        Self::weighted(name, targets, guesses, weights)
    }

    pub fn weighted(
        name: impl Into<String>,
        targets: Vec<BlochVector>,
        guesses: Vec<BlochVector>,
        weights: Vec<f64>,
    ) -> Result<Self> {
        let config = Self {
            name: name.into(),
            targets,
            guesses,
            weights,
        };
        config.validate(&ToleranceConfig::default())?;
        Ok(config)
    }

    pub fn validate(&self, tol: &ToleranceConfig) -> Result<()> {
        if self.targets.is_empty() || self.guesses.is_empty() {
            return Err(Error::InvalidFormat(
                "configuration needs targets and guesses".into(),
            ));
        }
        for v in self.targets.iter().chain(&self.guesses) {
            v.require_unit()?;
        }
        if self.weights.len() != self.guesses.len() {
            return Err(Error::InvalidWeights(format!(
                "{} weights for {} guesses",
                self.weights.len(),
                self.guesses.len()
            )));
        }
        if let Some(w) = self.weights.iter().find(|w| !(**w >= 0.0)) {
            return Err(Error::InvalidWeights(format!("negative weight {w}")));
        }
        let total: f64 = self.weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidWeights(format!("weights sum to {total}")));
        }
        for a in &self.targets {
            for b in &self.guesses {
                sign_rule(a, b, tol)?;
            }
        }
        Ok(())
    }

    /// Outcome tuple assigned when `S^{b_k}` reports `+`.
    pub fn assignment(&self, guess: usize, tol: &ToleranceConfig) -> Result<Vec<Sign>> {
        let b = &self.guesses[guess];
        self.targets.iter().map(|a| sign_rule(a, b, tol)).collect()
    }

    fn slots(&self) -> Vec<Vec<String>> {
        vec![binary_alphabet(); self.targets.len()]
    }
}

/// Sign of `a . b`; errors when the pair is orthogonal within `dot_tol`.
pub fn sign_rule(a: &BlochVector, b: &BlochVector, tol: &ToleranceConfig) -> Result<Sign> {
    let dot = a.dot(b);
    if !(dot.abs() >= tol.dot_tol) {
        return Err(Error::OrthogonalPair { dot });
    }
    Ok(if dot > 0.0 { Sign::Plus } else { Sign::Minus })
}

fn tuple_of(signs: &[Sign]) -> OutcomeTuple {
    signs.iter().map(|s| s.index()).collect()
}

fn flipped(signs: &[Sign]) -> Vec<Sign> {
    signs.iter().map(|s| s.flip()).collect()
}

/// Joint observable produced by the sign rule. Only `2N` tuples can be nonzero.
pub fn adaptive_joint(config: &QubitConfig) -> Result<JointObservable> {
    let tol = ToleranceConfig::default();
    config.validate(&tol)?;
    let mut joint = JointObservable::new(2, config.slots())?;
    for (k, (b, mu)) in config.guesses.iter().zip(&config.weights).enumerate() {
        let guess = BinaryQubitObservable::new(*b, 1.0)?;
        let signs = config.assignment(k, &tol)?;
        joint.accumulate(tuple_of(&signs), *mu, &guess.effect(Sign::Plus))?;
        joint.accumulate(tuple_of(&flipped(&signs)), *mu, &guess.effect(Sign::Minus))?;
    }
    Ok(joint)
}

/// The sign rule written as a deterministic post-processing for [`crate::combine::adaptive_combine`].
pub fn sign_rule_post_processing(config: &QubitConfig) -> Result<(Vec<Observable>, PostProcessing)> {
    let tol = ToleranceConfig::default();
    config.validate(&tol)?;
    let mut auxiliaries = Vec::with_capacity(config.guesses.len());
    let mut rules = Vec::with_capacity(config.guesses.len());
    for (k, b) in config.guesses.iter().enumerate() {
        auxiliaries.push(BinaryQubitObservable::new(*b, 1.0)?.observable());
        let signs = config.assignment(k, &tol)?;
        rules.push(vec![tuple_of(&signs), tuple_of(&flipped(&signs))]);
    }
    Ok((auxiliaries, PostProcessing::deterministic(config.slots(), rules)?))
}

const PARALLEL_TOL: f64 = 1e-10;

/// Noise parameter of every marginal, from `m_l = sum_k mu_k sign(a_l . b_k) b_k`.
pub fn marginal_noise(config: &QubitConfig) -> Result<Vec<f64>> {
    let tol = ToleranceConfig::default();
    config.validate(&tol)?;
    config
        .targets
        .iter()
        .enumerate()
        .map(|(slot, a)| {
            let mut m = BlochVector::new(0.0, 0.0, 0.0);
            for (b, mu) in config.guesses.iter().zip(&config.weights) {
                m = m + *b * (mu * sign_rule(a, b, &tol)?.value());
            }
            require_parallel(slot, &m, a)
        })
        .collect()
}

fn require_parallel(slot: usize, m: &BlochVector, a: &BlochVector) -> Result<f64> {
    let deviation = m.cross(a).norm();
    if deviation > PARALLEL_TOL || m.dot(a) < 0.0 {
        return Err(Error::RotatedMarginal { slot, deviation });
    }
    Ok(m.norm())
}

/// Noise parameter read off a binary marginal against its target direction.
pub fn noise_from_marginal(marginal: &Observable, slot: usize, target: &BlochVector) -> Result<f64> {
    let r = plus_effect_bloch(marginal)?;
    let trace = marginal
        .effect_by_label("+")
        .expect("checked by plus_effect_bloch")
        .trace();
    // A biased marginal has tr[E(+)] != 1.
    if (trace - 1.0).abs() > PARALLEL_TOL {
        return Err(Error::RotatedMarginal {
            slot,
            deviation: (trace - 1.0).abs(),
        });
    }
    require_parallel(slot, &r, target)
}

/// Result of the two-direction construction for an arbitrary pair.
#[derive(Debug, Clone)]
pub struct OptimalPair {
    pub mu: f64,
    pub lambda: f64,
    pub config: QubitConfig,
    pub joint: JointObservable,
}

/// Joint observable for `S^{l a1}, S^{l a2}` with guesses along `a1 +- a2`.
pub fn optimal_pair(a1: BlochVector, a2: BlochVector) -> Result<OptimalPair> {
    a1.require_unit()?;
    a2.require_unit()?;
    let tol = ToleranceConfig::default();
    let sum = a1 + a2;
    let diff = a1 - a2;
    let (p, q) = (sum.norm(), diff.norm());
    if p <= tol.dot_tol || q <= tol.dot_tol {
        return Err(Error::DegeneratePair);
    }
    let mu = p / (p + q);
    let lambda = 2.0 / (p + q);
    let config = QubitConfig::weighted(
        "pair",
        vec![a1, a2],
        vec![sum * (1.0 / p), diff * (1.0 / q)],
        vec![mu, 1.0 - mu],
    )?;
    let joint = adaptive_joint(&config)?;
    Ok(OptimalPair {
        mu,
        lambda,
        config,
        joint,
    })
}
