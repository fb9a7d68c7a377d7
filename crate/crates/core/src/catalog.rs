//! String identifiers for every configuration the toolkit can build.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::mub::{fourier_mub, mub_joint, MubPair};
use crate::povm::JointObservable;
use crate::qubit::{
    adaptive_joint, optimal_pair, planar_config, platonic_config, BlochVector, QubitConfig,
    PLATONIC_NAMES,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Platonic {
    Octahedron3,
    Tetrahedron4,
    Icosahedron6,
    Dodecahedron10,
}

impl Platonic {
    pub const ALL: [Platonic; 4] = [
        Platonic::Octahedron3,
        Platonic::Tetrahedron4,
        Platonic::Icosahedron6,
        Platonic::Dodecahedron10,
    ];

    pub fn name(self) -> &'static str {
        PLATONIC_NAMES[self as usize]
    }

    pub fn observables(self) -> usize {
        [3, 4, 6, 10][self as usize]
    }
}

/// A parsed configuration id such as `planar:M=4` or `mub:d=3`.
#[derive(Debug, Clone, PartialEq)]
pub enum ConfigId {
    Planar(usize),
    Platonic(Platonic),
    Mub(usize),
    /// Bloch vectors as given; normalized on use.
    Pair([f64; 3], [f64; 3]),
}

fn parse_vector(text: &str, id: &str) -> Result<[f64; 3]> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::UnknownConfig(id.to_string()))?;
    match parts.as_slice() {
        [x, y, z] if parts.iter().all(|v| v.is_finite()) => Ok([*x, *y, *z]),
        _ => Err(Error::UnknownConfig(id.to_string())),
    }
}

fn parse_param(text: &str, key: &str, id: &str) -> Result<usize> {
    text.strip_prefix(key)
        .and_then(|v| v.parse::<usize>().ok())
        .ok_or_else(|| Error::UnknownConfig(id.to_string()))
}

impl FromStr for ConfigId {
    type Err = Error;

    fn from_str(id: &str) -> Result<Self> {
        if let Some(rest) = id.strip_prefix("planar:") {
            let m = parse_param(rest, "M=", id)?;
            if m < 2 {
                return Err(Error::UnknownConfig(id.to_string()));
            }
            return Ok(ConfigId::Planar(m));
        }
        if let Some(rest) = id.strip_prefix("mub:") {
            let d = parse_param(rest, "d=", id)?;
            if d < 2 {
                return Err(Error::UnknownConfig(id.to_string()));
            }
            return Ok(ConfigId::Mub(d));
        }
        if let Some(rest) = id.strip_prefix("pair:") {
            let (first, second) = rest
                .split_once(':')
                .ok_or_else(|| Error::UnknownConfig(id.to_string()))?;
            return Ok(ConfigId::Pair(
                parse_vector(first, id)?,
                parse_vector(second, id)?,
            ));
        }
        Platonic::ALL
            .iter()
            .find(|p| p.name() == id)
            .map(|p| ConfigId::Platonic(*p))
            .ok_or_else(|| Error::UnknownConfig(id.to_string()))
    }
}

impl fmt::Display for ConfigId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigId::Planar(m) => write!(f, "planar:M={m}"),
            ConfigId::Platonic(p) => f.write_str(p.name()),
            ConfigId::Mub(d) => write!(f, "mub:d={d}"),
            ConfigId::Pair(a, b) => write!(
                f,
                "pair:{},{},{}:{},{},{}",
                a[0], a[1], a[2], b[0], b[1], b[2]
            ),
        }
    }
}

impl ConfigId {
    fn kind_rank(&self) -> u8 {
        match self {
            ConfigId::Planar(_) => 0,
            ConfigId::Platonic(_) => 1,
            ConfigId::Mub(_) => 2,
            ConfigId::Pair(..) => 3,
        }
    }

    /// Number of observables (qubit families) or Hilbert-space dimension (MUBs).
    pub fn size(&self) -> usize {
        match self {
            ConfigId::Planar(m) => *m,
            ConfigId::Platonic(p) => p.observables(),
            ConfigId::Mub(d) => *d,
            ConfigId::Pair(..) => 2,
        }
    }

    /// Family first, then size, then the id text.
    pub fn sort_cmp(&self, other: &Self) -> Ordering {
        (self.kind_rank(), self.size())
            .cmp(&(other.kind_rank(), other.size()))
            .then_with(|| self.to_string().cmp(&other.to_string()))
    }

    /// The qubit configuration behind a qubit id; `None` for MUB ids.
    pub fn qubit_config(&self) -> Result<Option<QubitConfig>> {
        match self {
            ConfigId::Planar(m) => planar_config(*m).map(Some),
            ConfigId::Platonic(p) => platonic_config(p.name()).map(Some),
            ConfigId::Mub(_) => Ok(None),
            ConfigId::Pair(a, b) => {
                let (a1, a2) = self.pair_vectors(a, b)?;
                optimal_pair(a1, a2).map(|p| Some(p.config))
            }
        }
    }

    fn pair_vectors(&self, a: &[f64; 3], b: &[f64; 3]) -> Result<(BlochVector, BlochVector)> {
        Ok((
            BlochVector::unit(a[0], a[1], a[2])?,
            BlochVector::unit(b[0], b[1], b[2])?,
        ))
    }

    pub fn mub_pair(&self) -> Result<Option<MubPair>> {
        match self {
            ConfigId::Mub(d) => fourier_mub(*d).map(Some),
            _ => Ok(None),
        }
    }

    /// Build the joint observable for this configuration.
    pub fn construct(&self) -> Result<JointObservable> {
        match self {
            ConfigId::Mub(d) => mub_joint(&fourier_mub(*d)?),
            ConfigId::Pair(a, b) => {
                let (a1, a2) = self.pair_vectors(a, b)?;
                Ok(optimal_pair(a1, a2)?.joint)
            }
            _ => adaptive_joint(
                &self
                    .qubit_config()?
                    .expect("planar and platonic ids are qubit configurations"),
            ),
        }
    }
}

/// Default catalog: planar M = 2..12, the four Platonic sets, MUBs for d in {2,3,4,5,7,8,9,16}, and the x/y pair.
pub fn default_catalog() -> Vec<ConfigId> {
    let mut ids: Vec<ConfigId> = (2..=12).map(ConfigId::Planar).collect();
    ids.extend(Platonic::ALL.iter().map(|p| ConfigId::Platonic(*p)));
    ids.extend([2, 3, 4, 5, 7, 8, 9, 16].into_iter().map(ConfigId::Mub));
    ids.push(ConfigId::Pair([1.0, 0.0, 0.0], [0.0, 1.0, 0.0]));
    ids
}
