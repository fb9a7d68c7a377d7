use std::collections::BTreeMap;
use std::f64::consts::PI;

use jmeas::combine::{adaptive_combine, PostProcessing};
use jmeas::mub::{fourier_mub, mub_joint, superpositions, MubPair, OrthonormalBasis};
use jmeas::operator::inner;
use jmeas::qubit::{
    adaptive_joint, binary_alphabet, marginal_noise, noise_from_marginal, observable_from_bloch,
    planar_config, planar_lambda, BlochVector, QubitConfig,
};
use jmeas::steering::{
    build_mub_witness, conditional_state, isotropic_state, maximally_entangled_state,
    mub_steering_value_closed_form, qubit_bound, qubit_witness_partitioned,
};
use jmeas::{default_catalog, Observable, ToleranceConfig};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn unit_vector() -> impl Strategy<Value = BlochVector> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0)
        .prop_filter("away from zero", |(x, y, z)| x * x + y * y + z * z > 0.01)
        .prop_map(|(x, y, z)| BlochVector::unit(x, y, z).unwrap())
}

fn random_unit(rng: &mut impl Rng) -> BlochVector {
    loop {
        let v = BlochVector::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        if v.norm() > 0.1 {
            return v.normalized().unwrap();
        }
    }
}

fn qutrit_observable() -> Observable {
    // Mix of two MUB observables: a genuinely non-sharp d = 3 POVM.
    let pair = fourier_mub(3).unwrap();
    let a = pair.first().observable();
    let b = pair.second().observable();
    let effects = a
        .effects()
        .iter()
        .zip(b.effects())
        .map(|(x, y)| x.scale(0.3).add(&y.scale(0.7)))
        .collect();
    Observable::indexed(effects).unwrap()
}

proptest! {
    #[test]
    fn white_noise_composes(a in unit_vector(), l0 in 0.0f64..1.0, l1 in 0.0f64..1.0, l2 in 0.0f64..1.0) {
        for obs in [observable_from_bloch(a, l0).unwrap().observable(), qutrit_observable()] {
            let twice = obs.mix_white_noise(l1).unwrap().mix_white_noise(l2).unwrap();
            let once = obs.mix_white_noise(l1 * l2).unwrap();
            prop_assert!(twice.max_abs_diff(&once) <= 1e-12);
        }
    }

    #[test]
    fn transpose_is_an_involution(a in unit_vector(), l in 0.0f64..1.0) {
        let obs = observable_from_bloch(a, l).unwrap().observable();
        prop_assert_eq!(obs.transpose().transpose(), obs);
        let q = qutrit_observable();
        prop_assert_eq!(q.transpose().transpose(), q);
    }

    #[test]
    fn transpose_preserves_validity_and_spectra(d in 2usize..7) {
        let tol = ToleranceConfig::default();
        let pair = fourier_mub(d).unwrap();
        let obs = pair.second().observable();
        let t = obs.transpose();
        prop_assert!(t.validate(&tol).unwrap().passed);
        for (e, et) in obs.effects().iter().zip(t.effects()) {
            let (s, st) = (e.eigenvalues_general(), et.eigenvalues_general());
            for (x, y) in s.iter().zip(&st) {
                prop_assert!((x - y).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn random_post_processing_closes_under_marginals(
        guesses in prop::collection::vec(unit_vector(), 1..4),
        probs in prop::collection::vec(0.01f64..1.0, 48),
        raw_weights in prop::collection::vec(0.05f64..1.0, 3),
    ) {
        let slots = vec![binary_alphabet(), vec!["0".into(), "1".into(), "2".into()]];
        let tuples: Vec<Vec<usize>> = (0..2).flat_map(|i| (0..3).map(move |j| vec![i, j])).collect();
        let mut p = probs.iter();
        let conditionals = guesses
            .iter()
            .map(|_| {
                (0..2)
                    .map(|_| {
                        let raw: Vec<f64> = tuples.iter().map(|_| *p.next().unwrap()).collect();
                        let total: f64 = raw.iter().sum();
                        tuples.iter().cloned().zip(raw.iter().map(|r| r / total)).collect::<BTreeMap<_, _>>()
                    })
                    .collect()
            })
            .collect();
        let post = PostProcessing::new(slots, conditionals).unwrap();
        let aux: Vec<_> = guesses.iter().map(|b| observable_from_bloch(*b, 1.0).unwrap().observable()).collect();
        let w: Vec<f64> = raw_weights[..guesses.len()].to_vec();
        let total: f64 = w.iter().sum();
        let w: Vec<f64> = w.iter().map(|x| x / total).collect();
        let fix = 1.0 - w[..w.len() - 1].iter().sum::<f64>();
        let mut w = w;
        *w.last_mut().unwrap() = fix;
        let g = adaptive_combine(&aux, &w, &post).unwrap();
        let tol = ToleranceConfig::default();
        prop_assert!(g.validate(&tol).unwrap().passed);
        for slot in 0..2 {
            prop_assert!(g.marginal(slot).unwrap().validate(&tol).unwrap().passed);
        }
    }

    #[test]
    fn marginal_commutes_with_mixing(l in 0.0f64..1.0) {
        for id in ["tetrahedron4", "planar:M=5", "mub:d=3"] {
            let g = id.parse::<jmeas::ConfigId>().unwrap().construct().unwrap();
            for slot in 0..g.num_slots() {
                let a = g.mix_white_noise(l).unwrap().marginal(slot).unwrap();
                let b = g.marginal(slot).unwrap().mix_white_noise(l).unwrap();
                prop_assert!(a.max_abs_diff(&b) <= 1e-12);
            }
        }
    }

    #[test]
    fn flipping_a_guess_leaves_the_joint_unchanged(k in 0usize..4, name in prop::sample::select(vec!["octahedron3", "tetrahedron4", "icosahedron6"])) {
        let config = jmeas::qubit::platonic_config(name).unwrap();
        let k = k % config.guesses.len();
        let mut flipped = config.clone();
        flipped.guesses[k] = -flipped.guesses[k];
        let a = adaptive_joint(&config).unwrap();
        let b = adaptive_joint(&flipped).unwrap();
        prop_assert!(a.max_abs_diff(&b) <= 1e-15);
    }

    #[test]
    fn partition_does_not_change_the_bound(dirs in prop::collection::vec(unit_vector(), 1..12), parts in 1usize..9) {
        let serial = qubit_witness_partitioned(&dirs, 1).unwrap();
        let split = qubit_witness_partitioned(&dirs, parts).unwrap();
        prop_assert_eq!(serial, split);
    }

    #[test]
    fn pair_marginals_are_exact(a1 in unit_vector(), a2 in unit_vector()) {
        prop_assume!((a1 + a2).norm() > 1e-3 && (a1 - a2).norm() > 1e-3);
        let pair = jmeas::qubit::optimal_pair(a1, a2).unwrap();
        for (slot, a) in [a1, a2].iter().enumerate() {
            let m = pair.joint.marginal(slot).unwrap();
            let expected = observable_from_bloch(*a, 1.0).unwrap().observable().mix_white_noise(pair.lambda).unwrap();
            prop_assert!(m.max_abs_diff(&expected) <= 1e-12);
        }
    }
}

#[test]
fn catalog_joints_are_valid_with_exact_marginals() {
    let tol = ToleranceConfig::default();
    for id in default_catalog() {
        let g = id.construct().unwrap();
        let report = g.validate(&tol).unwrap();
        assert!(report.min_eigenvalue >= -1e-10, "{id}");
        assert!(report.normalization_residual <= 1e-10, "{id}");
        if let Some(config) = id.qubit_config().unwrap() {
            let noise = marginal_noise(&config).unwrap();
            for (slot, (a, l)) in config.targets.iter().zip(&noise).enumerate() {
                let expected = observable_from_bloch(*a, 1.0)
                    .unwrap()
                    .observable()
                    .mix_white_noise(*l)
                    .unwrap();
                let m = g.marginal(slot).unwrap();
                assert!(m.max_abs_diff(&expected) <= 1e-12, "{id} slot {slot}");
                assert!((noise_from_marginal(&m, slot, a).unwrap() - l).abs() <= 1e-12);
                assert!((l - noise[0]).abs() <= 1e-12, "{id}: asymmetric noise");
            }
        }
    }
}

#[test]
fn planar_noise_matches_trigonometric_sums() {
    for m in 2..=50usize {
        let mf = m as f64;
        let sum_form = if m % 2 == 1 {
            (1.0 + 2.0 * (1..=(m - 1) / 2).map(|k| (k as f64 * PI / mf).cos()).sum::<f64>()) / mf
        } else {
            2.0 / mf * (1..=m / 2).map(|k| ((2 * k - 1) as f64 * PI / (2.0 * mf)).cos()).sum::<f64>()
        };
        let closed = planar_lambda(m);
        assert!((sum_form - closed).abs() <= 1e-12, "M={m}");
        for l in marginal_noise(&planar_config(m).unwrap()).unwrap() {
            assert!((l - closed).abs() <= 1e-12, "M={m}");
        }
    }
}

#[test]
fn icosahedron_outcome_rows() {
    // Nonzero tuples for the six icosahedron axes, one row per guess.
    let rows = [
        "++++++", "++--++", "+-+++-", "+-++-+", "+++-+-", "++-+-+",
    ];
    let config = jmeas::qubit::platonic_config("icosahedron6").unwrap();
    let tol = ToleranceConfig::default();
    for (k, row) in rows.iter().enumerate() {
        let signs: String = config.assignment(k, &tol).unwrap().iter().map(|s| s.symbol()).collect();
        assert_eq!(&signs, row, "guess {}", k + 1);
    }
    assert_eq!(adaptive_joint(&config).unwrap().effects().len(), 12);
}

#[test]
fn isotropic_state_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let psi = maximally_entangled_state(2);
    for _ in 0..100 {
        let a = random_unit(&mut rng);
        let sharpness = rng.gen_range(0.0..=1.0);
        let obs = observable_from_bloch(a, sharpness).unwrap().observable();
        for lambda in [0.0, 0.3, 1.0] {
            let rho = isotropic_state(2, lambda).unwrap();
            let noisy = obs.mix_white_noise(lambda).unwrap();
            for (e, en) in obs.effects().iter().zip(noisy.effects()) {
                let lhs = conditional_state(e, &rho).unwrap();
                let rhs = conditional_state(en, &psi).unwrap();
                assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
            }
        }
    }
}

#[test]
fn mub_structure() {
    for d in 2..=16 {
        let pair = fourier_mub(d).unwrap();
        let family = superpositions(&pair).unwrap();
        for j in 0..d {
            let completeness: f64 = pair
                .second()
                .vectors()
                .iter()
                .map(|psi| inner(pair.first().vector(j), psi).norm_sqr())
                .sum();
            assert!((completeness - 1.0).abs() <= 1e-12);
            for k in 0..d {
                let b = &family.get(j, k).vector;
                assert!((b.norm() - 1.0).abs() <= 1e-12);
                let phase = family.get(j, k).phase;
                let expected = inner(pair.second().vector(k), pair.first().vector(j)) * (d as f64).sqrt();
                assert!((phase - expected).norm() <= 1e-12);
                assert!((phase.norm() - 1.0).abs() <= 1e-12);
                let first: Vec<f64> = pair.first().vectors().iter().map(|v| inner(v, b).norm_sqr()).collect();
                let second: Vec<f64> = pair.second().vectors().iter().map(|v| inner(v, b).norm_sqr()).collect();
                for m in 0..d {
                    if m != j {
                        assert!(first[j] > first[m] + 1e-9);
                    }
                    if m != k {
                        assert!(second[k] > second[m] + 1e-9);
                    }
                }
            }
        }
        let g = mub_joint(&pair).unwrap();
        assert!(g.validate(&ToleranceConfig::default()).unwrap().normalization_residual <= 1e-10);
    }
}

#[test]
fn mub_joint_ignores_basis_phases() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for d in [2, 3, 5] {
        let pair = fourier_mub(d).unwrap();
        let phases: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..2.0 * PI)).collect();
        let rephased = MubPair::new(pair.first().clone(), pair.second().rephased(&phases)).unwrap();
        let a = mub_joint(&pair).unwrap();
        let b = mub_joint(&rephased).unwrap();
        assert!(a.max_abs_diff(&b) <= 1e-12);
    }
}

#[test]
fn witness_value_is_monotone_and_changes_sign() {
    for d in [2, 3, 4, 7] {
        let w = build_mub_witness(&fourier_mub(d).unwrap()).unwrap();
        let l_max = jmeas::mub::mub_lambda(d);
        assert!(w.steering_value(l_max + 0.01, 0, 0).unwrap() < 0.0);
        assert!(w.steering_value(l_max - 0.01, 0, 0).unwrap() > 0.0);
        let mut previous = f64::INFINITY;
        for i in 0..=20 {
            let l = i as f64 / 20.0;
            let v = w.steering_value(l, 1 % d, 0).unwrap();
            assert!(v < previous);
            assert!((v - mub_steering_value_closed_form(d, l)).abs() <= 1e-12);
            previous = v;
        }
    }
}

#[test]
fn thresholds_survive_transposition() {
    use jmeas::steering::{qubit_witness_threshold, witness_directions};
    // Transposition reflects y; reflect Bob's directions to match.
    let reflect = |v: &BlochVector| BlochVector::new(v.x, -v.y, v.z);
    for id in ["planar:M=5", "tetrahedron4", "dodecahedron10", "pair:1,0,0:0.3,0.9,0.1"] {
        let config = id.parse::<jmeas::ConfigId>().unwrap().qubit_config().unwrap().unwrap();
        let targets: Vec<Observable> = config
            .targets
            .iter()
            .map(|a| observable_from_bloch(*a, 1.0).unwrap().observable())
            .collect();
        let dirs = witness_directions(&config).unwrap();
        let base = qubit_witness_threshold(&targets, &dirs).unwrap();
        let transposed: Vec<Observable> = targets.iter().map(Observable::transpose).collect();
        let reflected: Vec<BlochVector> = dirs.iter().map(reflect).collect();
        let t = qubit_witness_threshold(&transposed, &reflected).unwrap();
        assert!((base - t).abs() <= 1e-12, "{id}");

        let mirrored = QubitConfig::weighted(
            "mirror",
            config.targets.iter().map(reflect).collect(),
            config.guesses.iter().map(reflect).collect(),
            config.weights.clone(),
        )
        .unwrap();
        let lc = marginal_noise(&config).unwrap();
        let lt = marginal_noise(&mirrored).unwrap();
        for (x, y) in lc.iter().zip(&lt) {
            assert!((x - y).abs() <= 1e-12, "{id}");
        }
    }
}

#[test]
fn bound_equals_eigenvalue_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let dirs: Vec<BlochVector> = (0..7).map(|_| random_unit(&mut rng)).collect();
    let n = dirs.len();
    let mut best = f64::NEG_INFINITY;
    for mask in 0..(1u32 << n) {
        let mut k = jmeas::HermitianOperator::zeros(2);
        for (i, c) in dirs.iter().enumerate() {
            let x = if mask >> i & 1 == 1 { -1.0 } else { 1.0 };
            k.add_scaled(x / n as f64, &c.pauli_operator());
        }
        best = best.max(*k.eigenvalues_general().last().unwrap());
    }
    assert!((qubit_bound(&dirs).unwrap() - best).abs() <= 1e-12);
}

#[test]
fn orthogonal_basis_is_checked() {
    let z = OrthonormalBasis::computational(3);
    let mut vectors = z.vectors().to_vec();
    vectors[1] = vectors[0].clone();
    assert!(OrthonormalBasis::new(vectors).is_err());
}
