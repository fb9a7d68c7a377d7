use crate::error::{Error, Result};

/// Numeric tolerances shared by every check in the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// Smallest admissible eigenvalue is `-psd_tol`.
    pub psd_tol: f64,
    /// Max elementwise deviation of a POVM sum from the identity.
    pub eq_tol: f64,
    /// Agreement required between two exact constructions.
    pub exact_tol: f64,
    /// Step-one guard on `|a . b|`.
    pub dot_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            psd_tol: 1e-10,
            eq_tol: 1e-10,
            exact_tol: 1e-12,
            dot_tol: 1e-9,
        }
    }
}

impl ToleranceConfig {
    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("psd_tol", self.psd_tol),
            ("eq_tol", self.eq_tol),
            ("exact_tol", self.exact_tol),
            ("dot_tol", self.dot_tol),
        ] {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::InvalidTolerance { name, value });
            }
        }
        Ok(())
    }
}

/// Tolerance for comparing two independently computed noise thresholds.
pub const TIGHTNESS_TOL: f64 = 1e-10;

/// Hermiticity check applied on construction of every operator.
pub const HERMITICITY_TOL: f64 = 1e-12;
