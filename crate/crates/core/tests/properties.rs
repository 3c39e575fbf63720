use approx::assert_relative_eq;
use dkcert_core::bounds::{
    epsilon_shift, epsilon_shift_closed_form, m_generic_pi, m_sin2theta, m_tan2theta, m_tantheta,
};
use dkcert_core::generators::random::{random_orthonormal_basis, random_perturbation_with, Field, PerturbationClass};
use dkcert_core::generators::stream_rng;
use dkcert_core::{
    analyze, eigh, operator_norm, spectral_projection, subspace_max_angle, Disposition, HermitianOperator,
    OrthogonalProjection, SpectralPartition, Tolerances, C64,
};
use nalgebra::DMatrix;
use proptest::prelude::*;
use rand::Rng;
use rand_distr::StandardNormal;

fn field(complex: bool) -> Field {
    if complex {
        Field::Complex
    } else {
        Field::Real
    }
}

fn gaussian_hermitian(n: usize, seed: u64, complex: bool) -> HermitianOperator {
    let mut rng = stream_rng(seed, 99);
    let m = DMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = if complex { rng.sample(StandardNormal) } else { 0.0 };
        C64::new(re, im)
    });
    let h = (&m + m.adjoint()) * C64::new(0.5, 0.0);
    dkcert_core::validate_hermitian(&h, 1e-12).unwrap()
}

fn random_projection(n: usize, k: usize, seed: u64, complex: bool) -> OrthogonalProjection {
    let u = random_orthonormal_basis(n, field(complex), &mut stream_rng(seed, 7));
    OrthogonalProjection::coordinate(n, &(0..k).collect::<Vec<_>>()).conjugated_by(&u)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigh_reconstructs(n in 1usize..=24, seed: u64, complex: bool, scale in 1e-3f64..1e3) {
        let a = gaussian_hermitian(n, seed, complex).scaled(scale);
        let eig = eigh(&a).unwrap();
        let norm = operator_norm(&a).unwrap();
        prop_assert!(eig.reconstruction_residual(&a).unwrap() <= 1e-10 * (1.0 + norm));
        prop_assert!(eig.gram_deviation() <= 1e-12);
        prop_assert!(eig.values().windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn projection_distance_is_at_most_one(n in 2usize..=10, seed: u64, complex: bool) {
        let k = 1 + (seed as usize) % (n - 1);
        let l = 1 + (seed as usize / 7) % (n - 1);
        let p = random_projection(n, k, seed, complex);
        let q = random_projection(n, l, seed.wrapping_add(1), complex);
        let angle = subspace_max_angle(&p, &q).unwrap();
        prop_assert!((0.0..=1.0).contains(&angle.norm_difference));
        prop_assert!(angle.theta >= 0.0 && angle.theta <= std::f64::consts::FRAC_PI_2);
    }

    #[test]
    fn complement_symmetry(n in 2usize..=10, seed: u64, complex: bool) {
        let k = 1 + (seed as usize) % (n - 1);
        let p = random_projection(n, k, seed, complex);
        let q = random_projection(n, k, seed ^ 0x5555, complex);
        let direct = subspace_max_angle(&p, &q).unwrap().theta;
        let comp = subspace_max_angle(&p.complement(), &q.complement()).unwrap().theta;
        prop_assert!((direct - comp).abs() < 1e-10);
    }

    #[test]
    fn operator_norm_is_a_norm(n in 1usize..=12, seed: u64, complex: bool, c in -5.0f64..5.0) {
        let a = gaussian_hermitian(n, seed, complex);
        let b = gaussian_hermitian(n, seed.wrapping_add(17), complex);
        let na = operator_norm(&a).unwrap();
        let nb = operator_norm(&b).unwrap();
        prop_assert!((operator_norm(&a.scaled(c)).unwrap() - c.abs() * na).abs() <= 1e-10 * (1.0 + c.abs() * na));
        prop_assert!(operator_norm(&(&a + &b)).unwrap() <= na + nb + 1e-10);
        prop_assert!(na >= 0.0);
    }

    #[test]
    fn weyl_confinement(n in 2usize..=12, seed: u64, complex: bool, t in 0.0f64..3.0) {
        let a = gaussian_hermitian(n, seed, complex);
        let v = gaussian_hermitian(n, seed.wrapping_add(3), complex);
        let v = v.scaled(t / operator_norm(&v).unwrap());
        let spec_a = eigh(&a).unwrap().values().to_vec();
        let spec_h = eigh(&(&a + &v)).unwrap().values().to_vec();
        let norm_v = operator_norm(&v).unwrap();
        for e in spec_h {
            let dist = spec_a.iter().map(|x| (x - e).abs()).fold(f64::INFINITY, f64::min);
            prop_assert!(dist <= norm_v + 1e-10);
        }
    }

    #[test]
    fn rank_one_angle_matches_overlap(n in 2usize..=10, seed: u64, complex: bool, x in 0.0f64..0.49) {
        let a = gaussian_hermitian(n, seed, complex);
        let eig = eigh(&a).unwrap();
        let part = SpectralPartition::from_values(eig.values(), &[0], &Tolerances::default());
        prop_assume!(part.is_ok());
        let d = part.unwrap().d();
        let p = spectral_projection(&eig, &[0]).unwrap();
        let v = random_perturbation_with(x * d, PerturbationClass::General, &p, field(complex), &mut stream_rng(seed, 5)).unwrap();
        let r = analyze(&a, &v, &[0]).unwrap();
        let overlap = r.ground_state_overlap.unwrap();
        prop_assert!((r.theta_exact - overlap.min(1.0).acos()).abs() <= 1e-10);
    }

    #[test]
    fn partition_invariants(n in 2usize..=12, seed: u64, mask in 1u32..4095) {
        let mut rng = stream_rng(seed, 0);
        let mut values: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 10.0).collect();
        values.sort_by(f64::total_cmp);
        let sigma: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        prop_assume!(!sigma.is_empty() && sigma.len() < n);
        let part = SpectralPartition::from_values(&values, &sigma, &Tolerances::default());
        prop_assume!(part.is_ok());
        let part = part.unwrap();
        let brute = sigma
            .iter()
            .flat_map(|&i| (0..n).filter(|j| !sigma.contains(j)).map(move |j| (i, j)))
            .map(|(i, j)| (values[i] - values[j]).abs())
            .fold(f64::INFINITY, f64::min);
        prop_assert_eq!(part.d(), brute);
        if part.disposition() == Disposition::SigmaInFiniteGap {
            let big_d = part.gap_length().unwrap();
            prop_assert!(big_d >= 2.0 * part.d());
            prop_assert!((big_d * part.d()).sqrt() >= std::f64::consts::SQRT_2 * part.d() - 1e-12);
        }
    }

    #[test]
    fn offdiagonal_draws_anticommute(n in 2usize..=10, seed: u64, complex: bool, norm in 0.0f64..10.0) {
        let k = 1 + (seed as usize) % (n - 1);
        let p = random_projection(n, k, seed, complex);
        let v = random_perturbation_with(norm, PerturbationClass::Offdiagonal, &p, field(complex), &mut stream_rng(seed, 1)).unwrap();
        let (flag, _) = dkcert_core::analyzer::is_offdiagonal(&v, &p, 1e-12).unwrap();
        prop_assert!(flag);
        prop_assert!((operator_norm(&v).unwrap() - norm).abs() <= 1e-12 * (1.0 + norm));
    }
}

#[test]
fn estimating_functions_are_monotone_capped_and_ordered() {
    use std::f64::consts::{FRAC_PI_4, SQRT_2};
    let grid = 1000;
    let mut prev = [0.0f64; 4];
    for i in 0..grid {
        let t = i as f64 / grid as f64;
        let values = [
            m_sin2theta(0.5 * t).unwrap(),
            m_generic_pi(t / std::f64::consts::PI).unwrap(),
            m_tan2theta(10.0 * t).unwrap(),
            m_tantheta(SQRT_2 * t).unwrap(),
        ];
        for (v, p) in values.iter().zip(prev.iter()) {
            assert!(v >= p);
        }
        assert!(values[0] < FRAC_PI_4);
        assert!(values[2] < FRAC_PI_4);
        assert!(values[3] < SQRT_2.atan());
        let x = 0.5 * t;
        assert!(m_tan2theta(x).unwrap() <= m_sin2theta(x).unwrap());
        let y = SQRT_2 * t;
        assert!(m_tan2theta(y).unwrap() <= m_tantheta(y).unwrap());
        prev = values;
    }
    assert_eq!(m_sin2theta(0.0).unwrap(), 0.0);
    assert_eq!(m_generic_pi(0.0).unwrap(), 0.0);
    assert_eq!(m_tan2theta(0.0).unwrap(), 0.0);
    assert_eq!(m_tantheta(0.0).unwrap(), 0.0);
}

#[test]
fn epsilon_shift_is_increasing_and_below_norm() {
    let d = 0.7;
    let mut prev = -1.0;
    for i in 0..1000 {
        let norm = 10.0 * i as f64 / 1000.0;
        let eps = epsilon_shift(norm, d).unwrap().epsilon_v;
        assert!(eps > prev);
        assert_relative_eq!(eps, epsilon_shift_closed_form(norm, d), epsilon = 1e-12, max_relative = 1e-12);
        if norm > 0.0 {
            assert!(eps < norm);
        }
        prev = eps;
    }
}

#[test]
fn eigh_reconstructs_at_dimension_64() {
    for (n, seed) in [(32, 1), (48, 2), (64, 3)] {
        for complex in [false, true] {
            let a = gaussian_hermitian(n, seed, complex);
            let eig = eigh(&a).unwrap();
            let norm = operator_norm(&a).unwrap();
            assert!(eig.reconstruction_residual(&a).unwrap() <= 1e-10 * (1.0 + norm));
        }
    }
}
