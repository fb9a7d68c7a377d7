//! Noise window in which four planar qubit observables at `pi/4` spacing
//! are incompatible while every triple among them is compatible.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SpeckerClass {
    AllCompatible,
    Specker4,
    SomeTripleIncompatible,
}

impl SpeckerClass {
    pub fn as_str(self) -> &'static str {
        match self {
            SpeckerClass::AllCompatible => "all_compatible",
            SpeckerClass::Specker4 => "specker_4",
            SpeckerClass::SomeTripleIncompatible => "some_triple_incompatible",
        }
    }
}

impl fmt::Display for SpeckerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Joint-measurability limit of the full quadruple, `1 / (4 sin(pi/8))`.
pub fn quadruple_threshold() -> f64 {
    1.0 / (4.0 * (PI / 8.0).sin())
}

/// Joint-measurability limit of any triple, `1 / (cos(pi/4) + 2 sin(pi/8))`.
/// Taken as a known constant, not derived here.
pub fn triple_threshold() -> f64 {
    1.0 / ((PI / 4.0).cos() + 2.0 * (PI / 8.0).sin())
}

/// `(lo, hi)`: every `lambda` in `(lo, hi]` yields a 4-Specker set.
pub fn specker_window() -> (f64, f64) {
    (quadruple_threshold(), triple_threshold())
}

pub fn specker_classify(lambda: f64) -> Result<SpeckerClass> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::NoiseOutOfRange(lambda));
    }
    let (lo, hi) = specker_window();
    Ok(if lambda <= lo {
        SpeckerClass::AllCompatible
    } else if lambda <= hi {
        SpeckerClass::Specker4
    } else {
        SpeckerClass::SomeTripleIncompatible
    })
}
