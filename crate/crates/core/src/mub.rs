//! Joint measurement of two mutually unbiased bases from equal superpositions.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::operator::{basis_ket, inner, Complex, HermitianOperator, Ket};
use crate::povm::{JointObservable, Observable};

const ORTHONORMAL_TOL: f64 = 1e-12;
const UNBIASED_TOL: f64 = 1e-10;
const NORMALIZATION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalBasis {
    vectors: Vec<Ket>,
}

impl OrthonormalBasis {
    pub fn new(vectors: Vec<Ket>) -> Result<Self> {
        let d = vectors.len();
        if d == 0 {
            return Err(Error::InvalidBasis("empty basis".into()));
        }
        if let Some(v) = vectors.iter().find(|v| v.len() != d) {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: v.len(),
            });
        }
        for (i, u) in vectors.iter().enumerate() {
            for (j, v) in vectors.iter().enumerate().skip(i) {
                let expected = if i == j { 1.0 } else { 0.0 };
                let deviation = (inner(u, v) - Complex::new(expected, 0.0)).norm();
                if deviation > ORTHONORMAL_TOL {
                    return Err(Error::InvalidBasis(format!(
                        "<{i}|{j}> deviates from delta by {deviation:e}"
                    )));
                }
            }
        }
        Ok(Self { vectors })
    }

    pub fn computational(dim: usize) -> Self {
        Self {
            vectors: (0..dim).map(|i| basis_ket(dim, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Ket] {
        &self.vectors
    }

    pub fn vector(&self, index: usize) -> &Ket {
        &self.vectors[index]
    }

    /// Sharp observable `{|v_j><v_j|}` with outcomes `0..d`.
    pub fn observable(&self) -> Observable {
        Observable::indexed(self.vectors.iter().map(HermitianOperator::projector).collect())
            .expect("basis projectors share a dimension")
    }

    /// Same basis with every vector multiplied by its own phase.
    pub fn rephased(&self, phases: &[f64]) -> Self {
        Self {
            vectors: self
                .vectors
                .iter()
                .zip(phases)
                .map(|(v, p)| v * Complex::from_polar(1.0, *p))
                .collect(),
        }
    }
}

/// Two orthonormal bases with all overlaps of modulus `1 / sqrt d`.
#[derive(Debug, Clone, PartialEq)]
pub struct MubPair {
    first: OrthonormalBasis,
    second: OrthonormalBasis,
}

impl MubPair {
    pub fn new(first: OrthonormalBasis, second: OrthonormalBasis) -> Result<Self> {
        let d = first.dim();
        if second.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: second.dim(),
            });
        }
        let target = 1.0 / (d as f64).sqrt();
        for (j, phi) in first.vectors.iter().enumerate() {
            for (k, psi) in second.vectors.iter().enumerate() {
                let overlap = inner(phi, psi).norm();
                if (overlap - target).abs() > UNBIASED_TOL {
                    return Err(Error::NotMutuallyUnbiased(format!(
                        "|<phi_{j}|psi_{k}>| = {overlap}, expected {target}"
                    )));
                }
            }
        }
        Ok(Self { first, second })
    }

    pub fn dim(&self) -> usize {
        self.first.dim()
    }

    pub fn first(&self) -> &OrthonormalBasis {
        &self.first
    }

    pub fn second(&self) -> &OrthonormalBasis {
        &self.second
    }
}

/// Computational basis and its discrete Fourier transform.
pub fn fourier_mub(dim: usize) -> Result<MubPair> {
    if dim < 2 {
        return Err(Error::InvalidBasis(format!("dimension {dim} < 2")));
    }
    let scale = 1.0 / (dim as f64).sqrt();
    let fourier = (0..dim)
        .map(|k| {
            Ket::from_fn(dim, |j, _| {
                let angle = 2.0 * PI * ((j * k) % dim) as f64 / dim as f64;
                Complex::from_polar(scale, angle)
            })
        })
        .collect();
    MubPair::new(
        OrthonormalBasis::computational(dim),
        OrthonormalBasis::new(fourier)?,
    )
}

/// Unit vector `b = N (phi_j + e^{i theta} psi_k)` with `e^{i theta} = sqrt d <psi_k|phi_j>`.
#[derive(Debug, Clone, PartialEq)]
pub struct Superposition {
    pub vector: Ket,
    pub phase: Complex,
}

impl Superposition {
    pub fn theta(&self) -> f64 {
        self.phase.arg()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuperpositionFamily {
    dim: usize,
    normalization_sq: f64,
    entries: Vec<Vec<Superposition>>,
}

impl SuperpositionFamily {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `N^2 = 1 / (2 + 2 / sqrt d)`.
    pub fn normalization_sq(&self) -> f64 {
        self.normalization_sq
    }

    pub fn get(&self, j: usize, k: usize) -> &Superposition {
        &self.entries[j][k]
    }
}

/// Closed-form `N^2`.
pub fn superposition_normalization_sq(dim: usize) -> f64 {
    1.0 / (2.0 + 2.0 / (dim as f64).sqrt())
}

pub fn superpositions(pair: &MubPair) -> Result<SuperpositionFamily> {
    let d = pair.dim();
    let root_d = (d as f64).sqrt();
    let expected = superposition_normalization_sq(d);
    let mut entries = Vec::with_capacity(d);
    for phi in pair.first.vectors() {
        let mut row = Vec::with_capacity(d);
        for psi in pair.second.vectors() {
            let phase = inner(psi, phi) * root_d;
            let raw = phi + psi * phase;
            let found = 1.0 / raw.norm_squared();
            if (found - expected).abs() > NORMALIZATION_TOL {
                return Err(Error::PhaseConvention { expected, found });
            }
            row.push(Superposition {
                vector: raw * Complex::new(found.sqrt(), 0.0),
                phase,
            });
        }
        entries.push(row);
    }
    Ok(SuperpositionFamily {
        dim: d,
        normalization_sq: expected,
        entries,
    })
}

/// `G(j, k) = |b_jk><b_jk| / d` for unit `b_jk`.
pub fn mub_joint(pair: &MubPair) -> Result<JointObservable> {
    let family = superpositions(pair)?;
    let d = pair.dim();
    let labels: Vec<String> = (0..d).map(|i| i.to_string()).collect();
    let mut joint = JointObservable::new(d, vec![labels.clone(), labels])?;
    for j in 0..d {
        for k in 0..d {
            let effect = HermitianOperator::projector(&family.get(j, k).vector);
            joint.accumulate(vec![j, k], 1.0 / d as f64, &effect)?;
        }
    }
    Ok(joint)
}

/// `1/2 (1 + 1 / (1 + sqrt d))`.
pub fn mub_lambda(dim: usize) -> f64 {
    0.5 * (1.0 + 1.0 / (1.0 + (dim as f64).sqrt()))
}

const MARGINAL_TOL: f64 = 1e-10;

/// Noise parameter of `marginal` as a smeared version of `basis`.
///
/// Errors if some effect is not of the form `l P_j + (1 - l) I / d`.
pub fn projective_marginal_noise(marginal: &Observable, basis: &OrthonormalBasis) -> Result<f64> {
    let d = basis.dim();
    if marginal.dim() != d || marginal.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: marginal.len(),
        });
    }
    let inv_d = 1.0 / d as f64;
    let lambda = (marginal.effect(0).expectation(basis.vector(0)) - inv_d) / (1.0 - inv_d);
    let sharp = basis.observable();
    let smeared = sharp.mix_white_noise(lambda.clamp(0.0, 1.0))?;
    let deviation = marginal.max_abs_diff(&smeared);
    if deviation > MARGINAL_TOL {
        return Err(Error::RotatedMarginal { slot: 0, deviation });
    }
    Ok(lambda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerance::ToleranceConfig;

    #[test]
    fn hadamard_pair() {
        let pair = fourier_mub(2).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = pair.second().vector(0);
        let minus = pair.second().vector(1);
        assert!((plus[0] - Complex::new(h, 0.0)).norm() < 1e-15);
        assert!((plus[1] - Complex::new(h, 0.0)).norm() < 1e-15);
        assert!((minus[1] + Complex::new(h, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn fourier_overlaps() {
        for d in [3, 4] {
            let pair = fourier_mub(d).unwrap();
            for phi in pair.first().vectors() {
                for psi in pair.second().vectors() {
                    assert!((inner(phi, psi).norm() - 1.0 / (d as f64).sqrt()).abs() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn not_unbiased_rejected() {
        let z = OrthonormalBasis::computational(2);
        assert!(matches!(
            MubPair::new(z.clone(), z),
            Err(Error::NotMutuallyUnbiased(_))
        ));
    }

    #[test]
    fn qubit_superposition_points_between_bases() {
        let family = superpositions(&fourier_mub(2).unwrap()).unwrap();
        let b = &family.get(0, 0).vector;
        // |0> + |+> normalized: amplitudes proportional to (1 + 1/sqrt2, 1/sqrt2)
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let ratio = b[1] / b[0];
        assert!((ratio - Complex::new(h / (1.0 + h), 0.0)).norm() < 1e-14);
        assert!((b.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn d4_diagonal_overlap() {
        let pair = fourier_mub(4).unwrap();
        let family = superpositions(&pair).unwrap();
        let b = &family.get(1, 2).vector;
        let overlap = inner(pair.first().vector(1), b).norm_sqr();
        assert!((overlap - 0.75).abs() < 1e-12);
        assert!((family.normalization_sq() - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn closed_form_values() {
        assert!((mub_lambda(2) - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
        assert!((mub_lambda(4) - 2.0 / 3.0).abs() < 1e-15);
        assert!((mub_lambda(3) - 0.6830127018922193).abs() < 1e-12);
        for d in 2..40 {
            assert!(mub_lambda(d + 1) < mub_lambda(d));
            assert!(mub_lambda(d) > 0.5);
        }
    }

    #[test]
    fn joint_is_valid_with_expected_marginals() {
        for d in [2, 3, 4] {
            let pair = fourier_mub(d).unwrap();
            let g = mub_joint(&pair).unwrap();
            assert_eq!(g.effects().len(), d * d);
            assert!(g.validate(&ToleranceConfig::default()).unwrap().passed);
            let l0 = projective_marginal_noise(&g.marginal(0).unwrap(), pair.first()).unwrap();
            let l1 = projective_marginal_noise(&g.marginal(1).unwrap(), pair.second()).unwrap();
            assert!((l0 - mub_lambda(d)).abs() < 1e-12);
            assert!((l1 - mub_lambda(d)).abs() < 1e-12);
        }
    }
}
