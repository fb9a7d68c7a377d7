use crate::error::{Error, Result};
use crate::operator::{Complex, HermitianOperator, Ket};
use crate::povm::Observable;
use crate::tolerance::ToleranceConfig;

/// Bob's non-normalized conditional states `sigma_{x|k}`.
///
/// A local-hidden-state model would write each as
/// `sum_eta p(x|k, eta) sigma_eta`; witnesses refute that decomposition,
/// nothing here searches for it.
#[derive(Debug, Clone, PartialEq)]
pub struct Assemblage {
    dim: usize,
    settings: Vec<Vec<HermitianOperator>>,
}

impl Assemblage {
    pub fn new(settings: Vec<Vec<HermitianOperator>>) -> Result<Self> {
        let dim = settings
            .first()
            .and_then(|s| s.first())
            .map(HermitianOperator::dim)
            .ok_or_else(|| Error::InvalidFormat("empty assemblage".into()))?;
        for op in settings.iter().flatten() {
            if op.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: op.dim(),
                });
            }
        }
        Ok(Self { dim, settings })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn settings(&self) -> &[Vec<HermitianOperator>] {
        &self.settings
    }

    pub fn state(&self, setting: usize, outcome: usize) -> &HermitianOperator {
        &self.settings[setting][outcome]
    }

    /// `rho = sum_x sigma_{x|k}` for a given setting.
    pub fn reduced_state(&self, setting: usize) -> HermitianOperator {
        let mut rho = HermitianOperator::zeros(self.dim);
        for sigma in &self.settings[setting] {
            rho.add_scaled(1.0, sigma);
        }
        rho
    }

    /// Each `sigma_{x|k}` positive and `rho` independent of `k`.
    pub fn validate(&self, tol: &ToleranceConfig) -> Result<()> {
        for (k, states) in self.settings.iter().enumerate() {
            for (x, sigma) in states.iter().enumerate() {
                let min = sigma.min_eigenvalue();
                if min < -tol.psd_tol {
                    return Err(Error::InvalidFormat(format!(
                        "sigma_{{{x}|{k}}} has eigenvalue {min}"
                    )));
                }
            }
        }
        let rho = self.reduced_state(0);
        for k in 1..self.settings.len() {
            let deviation = self.reduced_state(k).max_abs_diff(&rho);
            if deviation > tol.eq_tol {
                return Err(Error::InvalidFormat(format!(
                    "reduced state of setting {k} deviates by {deviation:e}"
                )));
            }
        }
        Ok(())
    }
}

/// `sigma_{x|k} = A_k(x)^T / d` for Alice measuring the maximally entangled state.
pub fn assemblage_from_max_entangled(observables: &[Observable]) -> Result<Assemblage> {
    let dim = observables
        .first()
        .map(Observable::dim)
        .ok_or_else(|| Error::InvalidFormat("no observables".into()))?;
    let mut settings = Vec::with_capacity(observables.len());
    for obs in observables {
        if obs.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: obs.dim(),
            });
        }
        settings.push(
            obs.effects()
                .iter()
                .map(|e| e.transpose().scale(1.0 / dim as f64))
                .collect(),
        );
    }
    Assemblage::new(settings)
}

/// `|psi><psi|` with `|psi> = sum_i |ii> / sqrt d`.
pub fn maximally_entangled_state(dim: usize) -> HermitianOperator {
    let amp = 1.0 / (dim as f64).sqrt();
    let ket = Ket::from_fn(dim * dim, |idx, _| {
        if idx / dim == idx % dim {
            Complex::new(amp, 0.0)
        } else {
            Complex::new(0.0, 0.0)
        }
    });
    HermitianOperator::projector(&ket)
}

/// `lambda |psi><psi| + (1 - lambda) I / d^2`.
pub fn isotropic_state(dim: usize, lambda: f64) -> Result<HermitianOperator> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::NoiseOutOfRange(lambda));
    }
    let d2 = dim * dim;
    let mut rho = maximally_entangled_state(dim).scale(lambda);
    rho.add_scaled((1.0 - lambda) / d2 as f64, &HermitianOperator::identity(d2));
    Ok(rho)
}

/// `tr_A[(E (x) I) rho]` for a bipartite state on `C^d (x) C^d`.
pub fn conditional_state(effect: &HermitianOperator, state: &HermitianOperator) -> Result<HermitianOperator> {
    let d = effect.dim();
    if state.dim() != d * d {
        return Err(Error::DimensionMismatch {
            expected: d * d,
            found: state.dim(),
        });
    }
    let lifted = effect.kron(&HermitianOperator::identity(d));
    let product = lifted.matrix() * state.matrix();
    // E (x) I times a state is not Hermitian in general; its partial trace is.
    let d_b = d;
    let reduced = nalgebra::DMatrix::from_fn(d_b, d_b, |i, j| {
        (0..d).map(|a| product[(a * d_b + i, a * d_b + j)]).sum::<Complex>()
    });
    HermitianOperator::new(reduced)
}
