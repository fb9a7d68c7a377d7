//! Target/guess configurations with known unbiased marginals.

use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::bloch::BlochVector;
use super::strategy::QubitConfig;

/// Golden ratio `(1 + sqrt 5) / 2`.
pub fn golden_ratio() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// `M` directions spread over the upper half of the xy-plane at angles `(k-1) pi / M`.
///
/// Odd `M` guesses along the targets themselves; even `M` rotates every
/// guess counterclockwise by `pi / 2M` so no guess is orthogonal to a target.
pub fn planar_config(m: usize) -> Result<QubitConfig> {
    if m < 2 {
        return Err(Error::InvalidFormat(format!(
            "planar configuration needs M >= 2, got {m}"
        )));
    }
    let angle = |k: usize| k as f64 * PI / m as f64;
    let targets: Vec<_> = (0..m).map(|k| BlochVector::in_xy_plane(angle(k))).collect();
    let guesses = if m % 2 == 1 {
        targets.clone()
    } else {
        let shift = PI / (2 * m) as f64;
        (0..m)
            .map(|k| BlochVector::in_xy_plane(angle(k) + shift))
            .collect()
    };
    QubitConfig::uniform(format!("planar:M={m}"), targets, guesses)
}

/// Closed-form planar noise `1 / (M sin(pi / 2M))`.
pub fn planar_lambda(m: usize) -> f64 {
    1.0 / (m as f64 * (PI / (2 * m) as f64).sin())
}

pub const PLATONIC_NAMES: [&str; 4] = ["octahedron3", "tetrahedron4", "icosahedron6", "dodecahedron10"];

pub fn platonic_config(name: &str) -> Result<QubitConfig> {
    match name {
        "octahedron3" => octahedron3(),
        "tetrahedron4" => tetrahedron4(),
        "icosahedron6" => icosahedron6(),
        "dodecahedron10" => dodecahedron10(),
        _ => Err(Error::UnknownConfig(name.to_string())),
    }
}

fn scaled(v: [f64; 3], s: f64) -> BlochVector {
    BlochVector::new(v[0] * s, v[1] * s, v[2] * s)
}

fn octahedron3() -> Result<QubitConfig> {
    let r = 1.0 / 3f64.sqrt();
    let guesses = [
        [1.0, 1.0, 1.0],
        [-1.0, 1.0, 1.0],
        [1.0, -1.0, 1.0],
        [-1.0, -1.0, 1.0],
    ]
    .map(|v| scaled(v, r));
    QubitConfig::uniform(
        "octahedron3",
        vec![BlochVector::X, BlochVector::Y, BlochVector::Z],
        guesses.to_vec(),
    )
}

fn tetrahedron4() -> Result<QubitConfig> {
    let r = 1.0 / 3f64.sqrt();
    let targets = [
        [1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
    ]
    .map(|v| scaled(v, r));
    QubitConfig::uniform(
        "tetrahedron4",
        targets.to_vec(),
        vec![BlochVector::X, BlochVector::Y, BlochVector::Z],
    )
}

/// Six icosahedron axes; `n = (5 + sqrt 5) / 2 = 1 + chi^2`.
pub fn icosahedron_axes() -> Vec<BlochVector> {
    let chi = golden_ratio();
    let r = 1.0 / ((5.0 + 5f64.sqrt()) / 2.0).sqrt();
    [
        [0.0, 1.0, chi],
        [0.0, -1.0, chi],
        [1.0, chi, 0.0],
        [-1.0, chi, 0.0],
        [chi, 0.0, 1.0],
        [-chi, 0.0, 1.0],
    ]
    .map(|v| scaled(v, r))
    .to_vec()
}

/// Ten dodecahedron axes (one per antipodal vertex pair).
pub fn dodecahedron_axes() -> Vec<BlochVector> {
    let chi = golden_ratio();
    let inv = 1.0 / chi;
    let r = 1.0 / 3f64.sqrt();
    [
        [1.0, 1.0, 1.0],
        [1.0, -1.0, 1.0],
        [-1.0, 1.0, 1.0],
        [1.0, 1.0, -1.0],
        [0.0, inv, chi],
        [0.0, -inv, chi],
        [inv, chi, 0.0],
        [-inv, chi, 0.0],
        [chi, 0.0, inv],
        [-chi, 0.0, inv],
    ]
    .map(|v| scaled(v, r))
    .to_vec()
}

fn icosahedron6() -> Result<QubitConfig> {
    let axes = icosahedron_axes();
    QubitConfig::uniform("icosahedron6", axes.clone(), axes)
}

fn dodecahedron10() -> Result<QubitConfig> {
    let axes = dodecahedron_axes();
    QubitConfig::uniform("dodecahedron10", axes.clone(), axes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit::strategy::marginal_noise;

    #[test]
    fn golden_identity() {
        let chi = golden_ratio();
        assert!((chi * chi - chi - 1.0).abs() < 1e-15);
    }

    #[test]
    fn planar_small_m() {
        let cases = [
            (2, std::f64::consts::FRAC_1_SQRT_2),
            (3, 2.0 / 3.0),
            (4, 1.0 / (4.0 * (PI / 8.0).sin())),
        ];
        for (m, expected) in cases {
            let noise = marginal_noise(&planar_config(m).unwrap()).unwrap();
            for l in noise {
                assert!((l - expected).abs() < 1e-12, "M={m}: {l} vs {expected}");
            }
        }
        // odd-M cosine sum at M = 3: (1 + 2 cos(pi/3)) / 3
        assert!((planar_lambda(3) - (1.0 + 2.0 * (PI / 3.0).cos()) / 3.0).abs() < 1e-15);
        assert!((planar_lambda(4) - 0.6532814824381883).abs() < 1e-12);
    }

    #[test]
    fn planar_rejects_small_m() {
        assert!(planar_config(1).is_err());
    }

    #[test]
    fn octahedron_guesses_are_cube_diagonals() {
        let c = platonic_config("octahedron3").unwrap();
        let r = 1.0 / 3f64.sqrt();
        assert_eq!(c.guesses[0], BlochVector::new(r, r, r));
        assert_eq!(c.guesses.len(), 4);
    }

    #[test]
    fn listed_axes() {
        let chi = golden_ratio();
        let n = (5.0 + 5f64.sqrt()) / 2.0;
        let ico = platonic_config("icosahedron6").unwrap();
        let a1 = BlochVector::new(0.0, 1.0 / n.sqrt(), chi / n.sqrt());
        assert!((ico.targets[0] - a1).norm() < 1e-15);
        assert_eq!(ico.targets, ico.guesses);

        let dod = platonic_config("dodecahedron10").unwrap();
        let a5 = BlochVector::new(0.0, 1.0 / chi / 3f64.sqrt(), chi / 3f64.sqrt());
        assert!((dod.targets[4] - a5).norm() < 1e-15);
        for v in &dod.targets {
            assert!(v.is_unit());
        }
    }

    #[test]
    fn unknown_platonic_name() {
        assert!(matches!(
            platonic_config("cube8"),
            Err(Error::UnknownConfig(_))
        ));
    }
}
