use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::operator::{pauli, pauli_combination, HermitianOperator};
use crate::povm::Observable;

const UNIT_TOL: f64 = 1e-12;

/// Real 3-vector on (or inside) the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl BlochVector {
    pub const X: Self = Self::new(1.0, 0.0, 0.0);
    pub const Y: Self = Self::new(0.0, 1.0, 0.0);
    pub const Z: Self = Self::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Normalized copy; errors on (near) zero vectors.
    pub fn unit(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::new(x, y, z).normalized()
    }

    /// `cos(angle) x + sin(angle) y`.
    pub fn in_xy_plane(angle: f64) -> Self {
        Self::new(angle.cos(), angle.sin(), 0.0)
    }

    pub fn components(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if !(n > 1e-15) || !n.is_finite() {
            return Err(Error::NotUnit { norm: n });
        }
        Ok(*self * (1.0 / n))
    }

    pub fn is_unit(&self) -> bool {
        (self.norm() - 1.0).abs() <= UNIT_TOL
    }

    pub fn require_unit(&self) -> Result<()> {
        if self.is_unit() {
            Ok(())
        } else {
            Err(Error::NotUnit { norm: self.norm() })
        }
    }

    /// `self . sigma`.
    pub fn pauli_operator(&self) -> HermitianOperator {
        pauli_combination(self.components())
    }
}

impl Add for BlochVector {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl Sub for BlochVector {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl Neg for BlochVector {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for BlochVector {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        Self::new(self.x * rhs, self.y * rhs, self.z * rhs)
    }
}

impl fmt::Display for BlochVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// Outcome of a binary qubit observable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// Position in the `["+", "-"]` alphabet.
    pub fn index(self) -> usize {
        match self {
            Sign::Plus => 0,
            Sign::Minus => 1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// The `["+", "-"]` outcome alphabet shared by every binary observable.
pub fn binary_alphabet() -> Vec<String> {
    vec!["+".to_string(), "-".to_string()]
}

/// `S^{l a}(+-) = 1/2 (I +- l a.sigma)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BinaryQubitObservable {
    pub direction: BlochVector,
    pub noise: f64,
}

impl BinaryQubitObservable {
    pub fn new(direction: BlochVector, noise: f64) -> Result<Self> {
        direction.require_unit()?;
        if !(0.0..=1.0).contains(&noise) {
            return Err(Error::NoiseOutOfRange(noise));
        }
        Ok(Self { direction, noise })
    }

    pub fn effect(&self, sign: Sign) -> HermitianOperator {
        let mut out = HermitianOperator::identity(2).scale(0.5);
        out.add_scaled(0.5 * sign.value() * self.noise, &self.direction.pauli_operator());
        out
    }

    pub fn observable(&self) -> Observable {
        Observable::new(
            binary_alphabet(),
            vec![self.effect(Sign::Plus), self.effect(Sign::Minus)],
        )
        .expect("binary qubit effects share a dimension")
    }
}

/// Binary observable along `a` with noise parameter `lambda`.
pub fn observable_from_bloch(a: BlochVector, lambda: f64) -> Result<BinaryQubitObservable> {
    BinaryQubitObservable::new(a, lambda)
}

/// Bloch vector `r_i = tr[E sigma_i]` of the `+` effect of a binary qubit observable.
pub fn plus_effect_bloch(obs: &Observable) -> Result<BlochVector> {
    if obs.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: obs.dim(),
        });
    }
    let plus = obs
        .effect_by_label("+")
        .ok_or_else(|| Error::InvalidFormat("binary observable needs a `+` outcome".into()))?;
    let r: Vec<f64> = (0..3).map(|i| plus.trace_product(&pauli(i))).collect();
    Ok(BlochVector::new(r[0], r[1], r[2]))
}

/// Recover `(direction, noise)` from the effects of a binary qubit observable.
pub fn bloch_from_observable(obs: &Observable) -> Result<BinaryQubitObservable> {
    let r = plus_effect_bloch(obs)?;
    let noise = r.norm();
    if noise == 0.0 {
        return Err(Error::InvalidFormat("trivial observable has no direction".into()));
    }
    BinaryQubitObservable::new(r * (1.0 / noise), noise.min(1.0))
}
