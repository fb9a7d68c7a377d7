//! Local-hidden-state bound for the linear qubit steering inequality
//! `(1/n) sum_k sum_x x tr[sigma_{x|k} c_k . sigma] <= C_n`.
//!
//! The largest eigenvalue of `v . sigma` is `|v|`, so
//! `C_n = (1/n) max_x |sum_k x_k c_k|` over sign patterns `x`.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qubit::BlochVector;

use super::assemblage::Assemblage;

/// Largest `n` accepted by the exhaustive enumeration.
pub const MAX_SETTINGS: usize = 24;

const PARALLEL_THRESHOLD: usize = 14;

#[derive(Debug, Clone, PartialEq)]
pub struct QubitWitness {
    pub directions: Vec<BlochVector>,
    pub bound: f64,
    /// Maximizing signs, with `x_1 = +1` fixed.
    pub pattern: Vec<i8>,
}

fn check_directions(directions: &[BlochVector]) -> Result<()> {
    let n = directions.len();
    if n == 0 {
        return Err(Error::InvalidFormat("no witness directions".into()));
    }
    if n > MAX_SETTINGS {
        return Err(Error::TooManySettings {
            n,
            max: MAX_SETTINGS,
        });
    }
    for c in directions {
        c.require_unit()?;
    }
    Ok(())
}

fn pattern_norm(directions: &[BlochVector], mask: u64) -> f64 {
    let (first, rest) = directions.split_first().expect("non-empty");
    let mut v = *first;
    for (i, c) in rest.iter().enumerate() {
        if mask >> i & 1 == 1 {
            v = v - *c;
        } else {
            v = v + *c;
        }
    }
    v.norm()
}

/// Best `(norm, mask)` in `[start, end)`; ties keep the smallest mask.
fn best_in_range(directions: &[BlochVector], start: u64, end: u64) -> (f64, u64) {
    let mut best = (f64::NEG_INFINITY, start);
    for mask in start..end {
        let value = pattern_norm(directions, mask);
        if value > best.0 {
            best = (value, mask);
        }
    }
    best
}

fn merge(a: (f64, u64), b: (f64, u64)) -> (f64, u64) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

fn into_witness(directions: &[BlochVector], (norm, mask): (f64, u64)) -> QubitWitness {
    let n = directions.len();
    let pattern = std::iter::once(1)
        .chain((0..n - 1).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }))
        .collect();
    QubitWitness {
        directions: directions.to_vec(),
        bound: norm / n as f64,
        pattern,
    }
}

/// Exhaustive maximization split into `parts` contiguous ranges.
pub fn qubit_witness_partitioned(directions: &[BlochVector], parts: usize) -> Result<QubitWitness> {
    check_directions(directions)?;
    let total = 1u64 << (directions.len() - 1);
    let parts = (parts.max(1) as u64).min(total);
    let chunk = total.div_ceil(parts);
    let best = (0..parts)
        .into_par_iter()
        .map(|p| {
            let start = p * chunk;
            let end = ((p + 1) * chunk).min(total);
            best_in_range(directions, start, end)
        })
        .reduce(|| (f64::NEG_INFINITY, u64::MAX), merge);
    Ok(into_witness(directions, best))
}

pub fn qubit_witness(directions: &[BlochVector]) -> Result<QubitWitness> {
    check_directions(directions)?;
    let n = directions.len();
    if n >= PARALLEL_THRESHOLD {
        qubit_witness_partitioned(directions, rayon::current_num_threads() * 4)
    } else {
        Ok(into_witness(
            directions,
            best_in_range(directions, 0, 1u64 << (n - 1)),
        ))
    }
}

/// `C_n` for the given Bloch vectors.
pub fn qubit_bound(directions: &[BlochVector]) -> Result<f64> {
    qubit_witness(directions).map(|w| w.bound)
}

/// Closed-form `C_M` for `M` equally spaced half-plane directions.
pub fn planar_bound(m: usize) -> f64 {
    1.0 / (m as f64 * (PI / (2 * m) as f64).sin())
}

/// Left-hand side of the qubit steering inequality, with outcome 0 read as
/// `x = +1` and outcome 1 as `x = -1`.
pub fn qubit_steering_value(assemblage: &Assemblage, directions: &[BlochVector]) -> Result<f64> {
    if assemblage.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: assemblage.dim(),
        });
    }
    if assemblage.settings().len() != directions.len() {
        return Err(Error::DimensionMismatch {
            expected: directions.len(),
            found: assemblage.settings().len(),
        });
    }
    let n = directions.len() as f64;
    let mut total = 0.0;
    for (states, c) in assemblage.settings().iter().zip(directions) {
        if states.len() != 2 {
            return Err(Error::InvalidFormat("binary settings expected".into()));
        }
        let bob = c.pauli_operator();
        total += states[0].trace_product(&bob) - states[1].trace_product(&bob);
    }
    Ok(total / n)
}
