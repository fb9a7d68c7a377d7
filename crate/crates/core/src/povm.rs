//! Observables (POVMs), joint observables, and the operations on them.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::operator::HermitianOperator;
use crate::tolerance::ToleranceConfig;

/// A finite-outcome measurement: one effect per outcome label.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    dim: usize,
    outcomes: Vec<String>,
    effects: Vec<HermitianOperator>,
}

/// Outcome tuple, stored as indices into each slot's alphabet.
pub type OutcomeTuple = Vec<usize>;

/// A POVM over outcome tuples. Tuples missing from `effects` are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct JointObservable {
    dim: usize,
    slots: Vec<Vec<String>>,
    effects: BTreeMap<OutcomeTuple, HermitianOperator>,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct EffectCheck {
    pub outcome: String,
    pub min_eigenvalue: f64,
}

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct ValidationReport {
    pub effects: Vec<EffectCheck>,
    pub min_eigenvalue: f64,
    pub normalization_residual: f64,
    pub positive: bool,
    pub normalized: bool,
    pub passed: bool,
}

fn validate_effects<'a>(
    dim: usize,
    effects: impl Iterator<Item = (String, &'a HermitianOperator)>,
    tol: &ToleranceConfig,
) -> Result<ValidationReport> {
    let mut sum = HermitianOperator::zeros(dim);
    let mut checks = Vec::new();
    for (outcome, effect) in effects {
        if effect.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: effect.dim(),
            });
        }
        let min_eigenvalue = crate::operator::min_eigenvalue(effect)?;
        sum.add_scaled(1.0, effect);
        checks.push(EffectCheck {
            outcome,
            min_eigenvalue,
        });
    }
    let normalization_residual = sum.max_abs_diff(&HermitianOperator::identity(dim));
    let min_eigenvalue = checks
        .iter()
        .map(|c| c.min_eigenvalue)
        .fold(f64::INFINITY, f64::min);
    // NaN entries must fail both checks.
    let positive = checks.iter().all(|c| c.min_eigenvalue >= -tol.psd_tol);
    let normalized = normalization_residual <= tol.eq_tol;
    Ok(ValidationReport {
        effects: checks,
        min_eigenvalue,
        normalization_residual,
        positive,
        normalized,
        passed: positive && normalized,
    })
}

/// Positivity and normalization report for an observable.
pub fn validate_povm(obs: &Observable, tol: &ToleranceConfig) -> Result<ValidationReport> {
    obs.validate(tol)
}

/// White-noise mixing of a single effect: `l E + (1 - l) tr[E] I / d`.
fn mix_effect(effect: &HermitianOperator, lambda: f64) -> HermitianOperator {
    let d = effect.dim();
    let mut out = effect.scale(lambda);
    let shift = (1.0 - lambda) * effect.trace() / d as f64;
    out.add_scaled(shift, &HermitianOperator::identity(d));
    out
}

fn check_noise(lambda: f64) -> Result<()> {
    if (0.0..=1.0).contains(&lambda) {
        Ok(())
    } else {
        Err(Error::NoiseOutOfRange(lambda))
    }
}

impl Observable {
    pub fn new(outcomes: Vec<String>, effects: Vec<HermitianOperator>) -> Result<Self> {
        if outcomes.len() != effects.len() {
            return Err(Error::InvalidFormat(format!(
                "{} labels for {} effects",
                outcomes.len(),
                effects.len()
            )));
        }
        let dim = effects
            .first()
            .map(HermitianOperator::dim)
            .ok_or_else(|| Error::InvalidFormat("observable without outcomes".into()))?;
        if let Some(bad) = effects.iter().find(|e| e.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        let mut seen = outcomes.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != outcomes.len() {
            return Err(Error::InvalidFormat("duplicate outcome labels".into()));
        }
        Ok(Self {
            dim,
            outcomes,
            effects,
        })
    }

    /// Observable with outcomes labelled `0..n`.
    pub fn indexed(effects: Vec<HermitianOperator>) -> Result<Self> {
        let labels = (0..effects.len()).map(|i| i.to_string()).collect();
        Self::new(labels, effects)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn effects(&self) -> &[HermitianOperator] {
        &self.effects
    }

    pub fn len(&self) -> usize {
        self.effects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.effects.is_empty()
    }

    pub fn effect(&self, index: usize) -> &HermitianOperator {
        &self.effects[index]
    }

    pub fn effect_by_label(&self, label: &str) -> Option<&HermitianOperator> {
        self.outcomes
            .iter()
            .position(|l| l == label)
            .map(|i| &self.effects[i])
    }

    pub fn validate(&self, tol: &ToleranceConfig) -> Result<ValidationReport> {
        validate_effects(
            self.dim,
            self.outcomes.iter().cloned().zip(self.effects.iter()),
            tol,
        )
    }

    pub fn mix_white_noise(&self, lambda: f64) -> Result<Self> {
        check_noise(lambda)?;
        Ok(Self {
            dim: self.dim,
            outcomes: self.outcomes.clone(),
            effects: self.effects.iter().map(|e| mix_effect(e, lambda)).collect(),
        })
    }

    pub fn transpose(&self) -> Self {
        Self {
            dim: self.dim,
            outcomes: self.outcomes.clone(),
            effects: self.effects.iter().map(HermitianOperator::transpose).collect(),
        }
    }

    /// Largest elementwise deviation between matching effects.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.outcomes != other.outcomes || self.dim != other.dim {
            return f64::INFINITY;
        }
        self.effects
            .iter()
            .zip(&other.effects)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }
}

/// `lambda A(x) + (1 - lambda) tr[A(x)] I / d` for every outcome.
pub fn mix_white_noise(obs: &Observable, lambda: f64) -> Result<Observable> {
    obs.mix_white_noise(lambda)
}

pub fn transpose_observable(obs: &Observable) -> Observable {
    obs.transpose()
}

/// Sum of `G` over every tuple whose entry at `slot` equals each outcome.
pub fn marginal(joint: &JointObservable, slot: usize) -> Result<Observable> {
    joint.marginal(slot)
}

impl JointObservable {
    /// Empty (all-zero) joint observable over the given alphabets.
    pub fn new(dim: usize, slots: Vec<Vec<String>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidFormat("dimension must be positive".into()));
        }
        if slots.is_empty() || slots.iter().any(Vec::is_empty) {
            return Err(Error::InvalidFormat("every slot needs an outcome".into()));
        }
        Ok(Self {
            dim,
            slots,
            effects: BTreeMap::new(),
        })
    }

    /// A single observable viewed as a one-slot joint observable.
    pub fn from_observable(obs: &Observable) -> Self {
        let effects = obs
            .effects()
            .iter()
            .enumerate()
            .map(|(i, e)| (vec![i], e.clone()))
            .collect();
        Self {
            dim: obs.dim(),
            slots: vec![obs.outcomes().to_vec()],
            effects,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn slots(&self) -> &[Vec<String>] {
        &self.slots
    }

    pub fn num_slots(&self) -> usize {
        self.slots.len()
    }

    /// Stored (nonzero) effects in tuple order.
    pub fn effects(&self) -> &BTreeMap<OutcomeTuple, HermitianOperator> {
        &self.effects
    }

    pub fn effect(&self, tuple: &[usize]) -> Option<&HermitianOperator> {
        self.effects.get(tuple)
    }

    fn check_tuple(&self, tuple: &[usize]) -> Result<()> {
        if tuple.len() != self.slots.len() {
            return Err(Error::DimensionMismatch {
                expected: self.slots.len(),
                found: tuple.len(),
            });
        }
        for (index, alphabet) in tuple.iter().zip(&self.slots) {
            if *index >= alphabet.len() {
                return Err(Error::IndexOutOfRange {
                    index: *index,
                    len: alphabet.len(),
                });
            }
        }
        Ok(())
    }

    /// `G(tuple) += factor * effect`.
    pub fn accumulate(
        &mut self,
        tuple: OutcomeTuple,
        factor: f64,
        effect: &HermitianOperator,
    ) -> Result<()> {
        self.check_tuple(&tuple)?;
        if effect.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: effect.dim(),
            });
        }
        self.effects
            .entry(tuple)
            .or_insert_with(|| HermitianOperator::zeros(self.dim))
            .add_scaled(factor, effect);
        Ok(())
    }

    /// Replace `G(tuple)`.
    pub fn set(&mut self, tuple: OutcomeTuple, effect: HermitianOperator) -> Result<()> {
        self.check_tuple(&tuple)?;
        if effect.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: effect.dim(),
            });
        }
        self.effects.insert(tuple, effect);
        Ok(())
    }

    /// Comma-joined label string for a tuple.
    pub fn tuple_key(&self, tuple: &[usize]) -> String {
        tuple
            .iter()
            .zip(&self.slots)
            .map(|(i, alphabet)| alphabet[*i].as_str())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Inverse of [`Self::tuple_key`].
    pub fn parse_tuple_key(&self, key: &str) -> Result<OutcomeTuple> {
        let parts: Vec<&str> = key.split(',').collect();
        if parts.len() != self.slots.len() {
            return Err(Error::InvalidFormat(format!(
                "tuple `{key}` has {} entries, expected {}",
                parts.len(),
                self.slots.len()
            )));
        }
        parts
            .iter()
            .zip(&self.slots)
            .map(|(label, alphabet)| {
                alphabet
                    .iter()
                    .position(|l| l == label)
                    .ok_or_else(|| Error::InvalidFormat(format!("unknown outcome `{label}`")))
            })
            .collect()
    }

    pub fn marginal(&self, slot: usize) -> Result<Observable> {
        let alphabet = self.slots.get(slot).ok_or(Error::IndexOutOfRange {
            index: slot,
            len: self.slots.len(),
        })?;
        let mut effects = vec![HermitianOperator::zeros(self.dim); alphabet.len()];
        for (tuple, effect) in &self.effects {
            effects[tuple[slot]].add_scaled(1.0, effect);
        }
        Observable::new(alphabet.clone(), effects)
    }

    pub fn validate(&self, tol: &ToleranceConfig) -> Result<ValidationReport> {
        validate_effects(
            self.dim,
            self.effects
                .iter()
                .map(|(tuple, effect)| (self.tuple_key(tuple), effect)),
            tol,
        )
    }

    /// Mix every stored effect with white noise. Absent tuples stay zero.
    pub fn mix_white_noise(&self, lambda: f64) -> Result<Self> {
        check_noise(lambda)?;
        Ok(Self {
            dim: self.dim,
            slots: self.slots.clone(),
            effects: self
                .effects
                .iter()
                .map(|(t, e)| (t.clone(), mix_effect(e, lambda)))
                .collect(),
        })
    }

    pub fn transpose(&self) -> Self {
        Self {
            dim: self.dim,
            slots: self.slots.clone(),
            effects: self
                .effects
                .iter()
                .map(|(t, e)| (t.clone(), e.transpose()))
                .collect(),
        }
    }

    /// Largest elementwise deviation over the union of stored tuples.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.slots != other.slots || self.dim != other.dim {
            return f64::INFINITY;
        }
        let zero = HermitianOperator::zeros(self.dim);
        self.effects
            .keys()
            .chain(other.effects.keys())
            .map(|t| {
                let a = self.effects.get(t).unwrap_or(&zero);
                let b = other.effects.get(t).unwrap_or(&zero);
                a.max_abs_diff(b)
            })
            .fold(0.0, f64::max)
    }
}
