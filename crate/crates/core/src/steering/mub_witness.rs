//! Two-setting steering witness for a pair of mutually unbiased bases.
//!
//! Positive operators `Z_jk` with `Z_jk = Z_jt + Z_sk - Z_st` give, for any
//! assemblage admitting a local-hidden-state model,
//! `sum_j tr[Z_jt sigma_{j|1}] + sum_k tr[Z_sk sigma_{k|2}] - tr[Z_st rho] >= 0`.

use crate::error::{Error, Result};
use crate::mub::MubPair;
use crate::operator::{inner, Complex, HermitianOperator, Ket};
use crate::steering::assemblage::assemblage_from_max_entangled;

const SINGULAR_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;
const EXACT_TOL: f64 = 1e-12;

/// `(a, b, c)` of the `Z_jk` family in dimension `d`.
pub fn witness_coefficients(dim: usize) -> Result<(f64, f64, f64)> {
    let r = (dim as f64).sqrt();
    let base = (r - 1.0) * (r + 2.0);
    let scaled = r * base;
    if base.abs() < SINGULAR_TOL || scaled.abs() < SINGULAR_TOL {
        return Err(Error::CoefficientSingularity(dim));
    }
    Ok((-1.0 / base, (r + 1.0) / scaled, 2.0 / scaled))
}

/// Worst-case deviations found while checking the witness.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct WitnessChecks {
    pub min_eigenvalue: f64,
    pub max_trace_deviation: f64,
    pub max_linear_residual: f64,
    pub max_chi_overlap: f64,
    pub phase_cancellation: f64,
    pub max_form_disagreement: f64,
}

#[derive(Debug, Clone)]
pub struct MubWitness {
    pair: MubPair,
    a: f64,
    b: f64,
    c: f64,
    n_plus_sq: f64,
    n_minus_sq: f64,
    operators: Vec<Vec<HermitianOperator>>,
    checks: WitnessChecks,
}

/// `|chi^+-_jk> = (phi_j +- e^{-i theta} psi_k) / N_+-` with `<phi_j|psi_k> = e^{i theta} / sqrt d`.
fn chi_pair(pair: &MubPair, j: usize, k: usize) -> (Ket, Ket, f64, f64) {
    let d = pair.dim() as f64;
    let phi = pair.first().vector(j);
    let psi = pair.second().vector(k);
    let phase = inner(phi, psi) * d.sqrt();
    let rotated = psi * phase.conj();
    let plus = phi + &rotated;
    let minus = phi - &rotated;
    let (np, nm) = (plus.norm_squared(), minus.norm_squared());
    (
        plus * Complex::new(1.0 / np.sqrt(), 0.0),
        minus * Complex::new(1.0 / nm.sqrt(), 0.0),
        np,
        nm,
    )
}

impl MubWitness {
    pub fn build(pair: &MubPair) -> Result<Self> {
        let d = pair.dim();
        let (a, b, c) = witness_coefficients(d)?;
        let id = HermitianOperator::identity(d);
        let mut operators = Vec::with_capacity(d);
        let mut checks = WitnessChecks {
            min_eigenvalue: f64::INFINITY,
            ..Default::default()
        };
        let (mut n_plus_sq, mut n_minus_sq) = (0.0, 0.0);
        for j in 0..d {
            let mut row = Vec::with_capacity(d);
            let p_phi = HermitianOperator::projector(pair.first().vector(j));
            for k in 0..d {
                let p_psi = HermitianOperator::projector(pair.second().vector(k));
                let mut z = p_phi.add(&p_psi).scale(a);
                z.add_scaled(b, &id);

                let (plus, minus, np, nm) = chi_pair(pair, j, k);
                n_plus_sq = np;
                n_minus_sq = nm;
                let proj_minus = HermitianOperator::projector(&minus);
                let proj_plus = HermitianOperator::projector(&plus);
                let mut z2 = proj_minus.scale(c);
                z2.add_scaled(b, &id.sub(&proj_minus).sub(&proj_plus));

                checks.min_eigenvalue = checks.min_eigenvalue.min(z.min_eigenvalue());
                checks.max_trace_deviation = checks.max_trace_deviation.max((z.trace() - 1.0).abs());
                checks.max_chi_overlap = checks.max_chi_overlap.max(inner(&plus, &minus).norm());
                checks.phase_cancellation = checks
                    .phase_cancellation
                    .max(((c - b) / nm + b / np).abs());
                checks.max_form_disagreement = checks.max_form_disagreement.max(z.max_abs_diff(&z2));
                row.push(z);
            }
            operators.push(row);
        }
        let mut witness = Self {
            pair: pair.clone(),
            a,
            b,
            c,
            n_plus_sq,
            n_minus_sq,
            operators,
            checks,
        };
        witness.checks.max_linear_residual = witness.max_linear_residual();
        witness.verify()?;
        Ok(witness)
    }

    fn verify(&self) -> Result<()> {
        let c = &self.checks;
        let failures = [
            (c.min_eigenvalue < -PSD_TOL, "negative eigenvalue", c.min_eigenvalue),
            (c.max_trace_deviation > EXACT_TOL, "trace deviation", c.max_trace_deviation),
            (c.max_linear_residual > EXACT_TOL, "linear-constraint residual", c.max_linear_residual),
            (c.max_chi_overlap > EXACT_TOL, "chi overlap", c.max_chi_overlap),
            (c.phase_cancellation > EXACT_TOL, "phase cancellation", c.phase_cancellation),
            (c.max_form_disagreement > EXACT_TOL, "form disagreement", c.max_form_disagreement),
        ];
        match failures.iter().find(|f| f.0 || f.2.is_nan()) {
            Some((_, what, value)) => Err(Error::WitnessInvariant(format!("{what}: {value:e}"))),
            None => Ok(()),
        }
    }

    pub fn dim(&self) -> usize {
        self.pair.dim()
    }

    pub fn pair(&self) -> &MubPair {
        &self.pair
    }

    pub fn coefficients(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    /// `(N_+^2, N_-^2)`, independent of `(j, k)`.
    pub fn chi_normalizations_sq(&self) -> (f64, f64) {
        (self.n_plus_sq, self.n_minus_sq)
    }

    pub fn checks(&self) -> &WitnessChecks {
        &self.checks
    }

    pub fn operator(&self, j: usize, k: usize) -> &HermitianOperator {
        &self.operators[j][k]
    }

    /// `Z_jk` rebuilt from the orthogonal superpositions.
    pub fn operator_from_superpositions(&self, j: usize, k: usize) -> HermitianOperator {
        let (plus, minus, _, _) = chi_pair(&self.pair, j, k);
        let proj_minus = HermitianOperator::projector(&minus);
        let proj_plus = HermitianOperator::projector(&plus);
        let id = HermitianOperator::identity(self.dim());
        let mut z = proj_minus.scale(self.c);
        z.add_scaled(self.b, &id.sub(&proj_minus).sub(&proj_plus));
        z
    }

    /// `max |Z_jk - (Z_jt + Z_sk - Z_st)|`.
    pub fn linear_residual(&self, j: usize, k: usize, s: usize, t: usize) -> f64 {
        let z = &self.operators;
        let rhs = z[j][t].add(&z[s][k]).sub(&z[s][t]);
        z[j][k].max_abs_diff(&rhs)
    }

    fn max_linear_residual(&self) -> f64 {
        let d = self.dim();
        let mut worst = 0.0f64;
        for j in 0..d {
            for k in 0..d {
                for s in 0..d {
                    for t in 0..d {
                        worst = worst.max(self.linear_residual(j, k, s, t));
                    }
                }
            }
        }
        worst
    }

    /// Witness value on the assemblage of the noisy bases, scaled by `d`.
    ///
    /// Alice measures the transposed smeared projectors on the maximally
    /// entangled state, so Bob holds `sigma_{j|1} = A_1^l(j) / d`.
    pub fn steering_value(&self, lambda: f64, s: usize, t: usize) -> Result<f64> {
        let d = self.dim();
        for index in [s, t] {
            if index >= d {
                return Err(Error::IndexOutOfRange { index, len: d });
            }
        }
        let alice: Vec<_> = [self.pair.first(), self.pair.second()]
            .iter()
            .map(|basis| basis.observable().mix_white_noise(lambda).map(|o| o.transpose()))
            .collect::<Result<_>>()?;
        let assemblage = assemblage_from_max_entangled(&alice)?;
        let rho = assemblage.reduced_state(0);
        let mut value = 0.0;
        for j in 0..d {
            value += self.operators[j][t].trace_product(assemblage.state(0, j));
        }
        for k in 0..d {
            value += self.operators[s][k].trace_product(assemblage.state(1, k));
        }
        value -= self.operators[s][t].trace_product(&rho);
        Ok(d as f64 * value)
    }

    /// Noise level where the witness value crosses zero.
    pub fn violation_threshold(&self) -> Result<f64> {
        // The value is affine in lambda.
        let v0 = self.steering_value(0.0, 0, 0)?;
        let v1 = self.steering_value(1.0, 0, 0)?;
        Ok(v0 / (v0 - v1))
    }
}

pub fn build_mub_witness(pair: &MubPair) -> Result<MubWitness> {
    MubWitness::build(pair)
}

pub fn mub_steering_value(pair: &MubPair, lambda: f64, s: usize, t: usize) -> Result<f64> {
    MubWitness::build(pair)?.steering_value(lambda, s, t)
}

/// Closed-form value `2 {1 - l (1 - 1/(sqrt d + 2))} - 1`.
pub fn mub_steering_value_closed_form(dim: usize, lambda: f64) -> f64 {
    2.0 * (1.0 - lambda * (1.0 - 1.0 / ((dim as f64).sqrt() + 2.0))) - 1.0
}

/// Largest noise parameter compatible with the witness.
pub fn mub_threshold(dim: usize) -> f64 {
    0.5 * (1.0 + 1.0 / (1.0 + (dim as f64).sqrt()))
}
