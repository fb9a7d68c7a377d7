//! The general adaptive combiner: measure a randomly chosen auxiliary
//! observable, then draw the target outcomes from a distribution
//! conditioned on what was seen.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::povm::{JointObservable, Observable, OutcomeTuple};

const DISTRIBUTION_TOL: f64 = 1e-12;

/// Conditional distributions `p(tuple | B_k = beta)` over target outcome tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct PostProcessing {
    slots: Vec<Vec<String>>,
    /// `conditionals[k][beta]` maps outcome tuples to probabilities.
    conditionals: Vec<Vec<BTreeMap<OutcomeTuple, f64>>>,
}

impl PostProcessing {
    pub fn new(
        slots: Vec<Vec<String>>,
        conditionals: Vec<Vec<BTreeMap<OutcomeTuple, f64>>>,
    ) -> Result<Self> {
        if slots.is_empty() || slots.iter().any(Vec::is_empty) {
            return Err(Error::InvalidPostProcessing("empty target alphabet".into()));
        }
        for (k, per_outcome) in conditionals.iter().enumerate() {
            for (beta, dist) in per_outcome.iter().enumerate() {
                let mut total = 0.0;
                for (tuple, p) in dist {
                    if tuple.len() != slots.len()
                        || tuple.iter().zip(&slots).any(|(i, a)| *i >= a.len())
                    {
                        return Err(Error::InvalidPostProcessing(format!(
                            "tuple {tuple:?} does not fit the target alphabets (k={k}, beta={beta})"
                        )));
                    }
                    if !(*p >= 0.0) {
                        return Err(Error::InvalidPostProcessing(format!(
                            "negative probability {p} (k={k}, beta={beta})"
                        )));
                    }
                    total += p;
                }
                if (total - 1.0).abs() > DISTRIBUTION_TOL {
                    return Err(Error::InvalidPostProcessing(format!(
                        "distribution sums to {total} (k={k}, beta={beta})"
                    )));
                }
            }
        }
        Ok(Self {
            slots,
            conditionals,
        })
    }

    /// Every auxiliary outcome maps deterministically to one tuple.
    pub fn deterministic(slots: Vec<Vec<String>>, rules: Vec<Vec<OutcomeTuple>>) -> Result<Self> {
        let conditionals = rules
            .into_iter()
            .map(|per_outcome| {
                per_outcome
                    .into_iter()
                    .map(|tuple| BTreeMap::from([(tuple, 1.0)]))
                    .collect()
            })
            .collect();
        Self::new(slots, conditionals)
    }

    pub fn slots(&self) -> &[Vec<String>] {
        &self.slots
    }

    pub fn conditionals(&self) -> &[Vec<BTreeMap<OutcomeTuple, f64>>] {
        &self.conditionals
    }
}

/// `G(tuple) = sum_k mu_k sum_beta p(tuple | B_k = beta) B_k(beta)`.
pub fn adaptive_combine(
    auxiliaries: &[Observable],
    weights: &[f64],
    post: &PostProcessing,
) -> Result<JointObservable> {
    if auxiliaries.is_empty() {
        return Err(Error::InvalidWeights("no auxiliary observables".into()));
    }
    if weights.len() != auxiliaries.len() {
        return Err(Error::InvalidWeights(format!(
            "{} weights for {} auxiliaries",
            weights.len(),
            auxiliaries.len()
        )));
    }
    if let Some(w) = weights.iter().find(|w| !(**w >= 0.0)) {
        return Err(Error::InvalidWeights(format!("negative weight {w}")));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > DISTRIBUTION_TOL {
        return Err(Error::InvalidWeights(format!("weights sum to {total}")));
    }
    if post.conditionals.len() != auxiliaries.len() {
        return Err(Error::InvalidPostProcessing(format!(
            "{} conditional families for {} auxiliaries",
            post.conditionals.len(),
            auxiliaries.len()
        )));
    }
    let dim = auxiliaries[0].dim();
    let mut joint = JointObservable::new(dim, post.slots.clone())?;
    for ((aux, mu), per_outcome) in auxiliaries.iter().zip(weights).zip(&post.conditionals) {
        if aux.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: aux.dim(),
            });
        }
        if per_outcome.len() != aux.len() {
            return Err(Error::InvalidPostProcessing(format!(
                "{} conditionals for an auxiliary with {} outcomes",
                per_outcome.len(),
                aux.len()
            )));
        }
        for (effect, dist) in aux.effects().iter().zip(per_outcome) {
            for (tuple, p) in dist {
                joint.accumulate(tuple.clone(), mu * p, effect)?;
            }
        }
    }
    Ok(joint)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{pauli_combination, HermitianOperator};
    use crate::tolerance::ToleranceConfig;

    fn sharp(axis: [f64; 3]) -> Observable {
        let id = HermitianOperator::identity(2);
        let s = pauli_combination(axis);
        Observable::new(
            vec!["+".into(), "-".into()],
            vec![id.add(&s).scale(0.5), id.sub(&s).scale(0.5)],
        )
        .unwrap()
    }

    fn pm() -> Vec<String> {
        vec!["+".into(), "-".into()]
    }

    #[test]
    fn outcome_independent_two_auxiliaries() {
        // G(a1, a2) = mu p(a2) A1(a1) + (1 - mu) p(a1) A2(a2)
        let a1 = sharp([1.0, 0.0, 0.0]);
        let a2 = sharp([0.0, 0.0, 1.0]);
        let p = [0.25, 0.75];
        let mu = 0.4;
        let first: Vec<_> = (0..2)
            .map(|b| (0..2).map(|j| (vec![b, j], p[j])).collect())
            .collect();
        let second: Vec<_> = (0..2)
            .map(|b| (0..2).map(|i| (vec![i, b], p[i])).collect())
            .collect();
        let post = PostProcessing::new(vec![pm(), pm()], vec![first, second]).unwrap();
        let g = adaptive_combine(&[a1.clone(), a2.clone()], &[mu, 1.0 - mu], &post).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let expected = a1
                    .effect(i)
                    .scale(mu * p[j])
                    .add(&a2.effect(j).scale((1.0 - mu) * p[i]));
                assert!(g.effect(&[i, j]).unwrap().max_abs_diff(&expected) < 1e-15);
            }
        }
        assert!(g.validate(&ToleranceConfig::default()).unwrap().passed);
    }

    #[test]
    fn single_auxiliary_identity_relabels() {
        let b = sharp([0.0, 1.0, 0.0]);
        let post = PostProcessing::deterministic(vec![pm()], vec![vec![vec![0], vec![1]]]).unwrap();
        let g = adaptive_combine(std::slice::from_ref(&b), &[1.0], &post).unwrap();
        assert_eq!(g.marginal(0).unwrap(), b);
    }

    #[test]
    fn weights_must_normalize() {
        let b = sharp([0.0, 1.0, 0.0]);
        let post = PostProcessing::deterministic(vec![pm()], vec![vec![vec![0], vec![1]]]).unwrap();
        assert!(matches!(
            adaptive_combine(&[b], &[0.9], &post),
            Err(Error::InvalidWeights(_))
        ));
    }

    #[test]
    fn distribution_must_normalize() {
        let bad = vec![vec![
            BTreeMap::from([(vec![0], 0.5)]),
            BTreeMap::from([(vec![1], 1.0)]),
        ]];
        assert!(matches!(
            PostProcessing::new(vec![pm()], bad),
            Err(Error::InvalidPostProcessing(_))
        ));
        let negative = vec![vec![BTreeMap::from([(vec![0], 1.5), (vec![1], -0.5)])]];
        assert!(PostProcessing::new(vec![pm()], negative).is_err());
    }
}
