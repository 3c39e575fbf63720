//! Random operators with prescribed spectra and dispositions.

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::stream_rng;
use crate::analyzer::offdiagonal_split;
use crate::hermitian::{operator_norm, HermitianOperator};
use crate::projection::OrthogonalProjection;
use crate::spectrum::Disposition;
use crate::{Error, Result, C64};

/// Raw draws with a norm below this are redrawn.
const DEGENERATE_NORM: f64 = 1e-13;
const MAX_DRAWS: usize = 8;

/// Scalar field of the random bases and perturbations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    #[default]
    Real,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PerturbationClass {
    #[default]
    General,
    Offdiagonal,
}

impl PerturbationClass {
    pub fn is_offdiagonal(self) -> bool {
        self == PerturbationClass::Offdiagonal
    }
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R, field: Field) -> C64 {
    match field {
        Field::Real => C64::new(rng.sample(StandardNormal), 0.0),
        Field::Complex => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            C64::new(s * rng.sample::<f64, _>(StandardNormal), s * rng.sample::<f64, _>(StandardNormal))
        }
    }
}

fn gaussian_matrix<R: Rng + ?Sized>(n: usize, field: Field, rng: &mut R) -> DMatrix<C64> {
    // Row-major fill so the draw order does not depend on storage layout.
    let mut m = DMatrix::<C64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = gaussian(rng, field);
        }
    }
    m
}

/// Haar-distributed orthogonal (real field) or unitary (complex field)
/// matrix: QR of a Gaussian matrix with `diag(R)` made positive.
pub fn random_orthonormal_basis<R: Rng + ?Sized>(n: usize, field: Field, rng: &mut R) -> DMatrix<C64> {
    let qr = gaussian_matrix(n, field, rng).qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let rjj = r[(j, j)];
        let norm = rjj.norm();
        if norm > 0.0 {
            let phase = rjj / norm;
            for i in 0..n {
                q[(i, j)] *= phase;
            }
        }
    }
    q
}

/// `A = U diag(spectrum) U^dagger` together with `U`.
pub fn random_hermitian_with_basis<R: Rng + ?Sized>(
    spectrum: &[f64],
    field: Field,
    rng: &mut R,
) -> (HermitianOperator, DMatrix<C64>) {
    let n = spectrum.len();
    let u = random_orthonormal_basis(n, field, rng);
    let a = HermitianOperator::diagonal(spectrum).conjugated_by(&u.adjoint());
    (a, u)
}

/// Real symmetric matrix with the given spectrum in a uniformly random basis.
pub fn random_hermitian_with_spectrum(spectrum: &[f64], seed: u64) -> HermitianOperator {
    if spectrum.windows(2).all(|w| w[0] == w[1]) {
        return HermitianOperator::diagonal(spectrum);
    }
    random_hermitian_with_basis(spectrum, Field::Real, &mut stream_rng(seed, 0)).0
}

/// Gaussian Hermitian matrix, off-diagonal w.r.t. `p` for that class,
/// rescaled to operator norm `target_norm`.
pub fn random_perturbation_with<R: Rng + ?Sized>(
    target_norm: f64,
    class: PerturbationClass,
    p: &OrthogonalProjection,
    field: Field,
    rng: &mut R,
) -> Result<HermitianOperator> {
    if !(target_norm >= 0.0) || !target_norm.is_finite() {
        return Err(Error::DomainViolation {
            function: "random_perturbation",
            value: target_norm,
        });
    }
    let n = p.dim();
    if target_norm == 0.0 {
        return Ok(HermitianOperator::zeros(n));
    }
    for _ in 0..MAX_DRAWS {
        let g = gaussian_matrix(n, field, rng);
        let mut v = HermitianOperator::symmetrized(&g);
        if class.is_offdiagonal() {
            v = offdiagonal_split(&v, p)?.offdiagonal;
        }
        let norm = operator_norm(&v)?;
        if norm >= DEGENERATE_NORM {
            return Ok(v.scaled(target_norm / norm));
        }
    }
    Err(Error::DegenerateDraw { attempts: MAX_DRAWS })
}

/// Real-field [`random_perturbation_with`] seeded directly.
pub fn random_perturbation(
    target_norm: f64,
    class: PerturbationClass,
    p: &OrthogonalProjection,
    seed: u64,
) -> Result<HermitianOperator> {
    random_perturbation_with(target_norm, class, p, Field::Real, &mut stream_rng(seed, 0))
}

/// A sorted spectrum with the positions of `sigma`.
#[derive(Debug, Clone, PartialEq)]
pub struct DispositionDraw {
    pub values: Vec<f64>,
    pub sigma: Vec<usize>,
}

/// Whether `k` of `n` levels can be arranged with the given disposition.
pub fn disposition_feasible(n: usize, k: usize, disposition: Disposition) -> bool {
    if n < 2 || k == 0 || k >= n {
        return false;
    }
    match disposition {
        Disposition::Subordinated => true,
        Disposition::SigmaInFiniteGap => n - k >= 2,
        Disposition::ComplementInFiniteGap => k >= 2,
        Disposition::Generic => k >= 2 && n - k >= 2,
    }
}

fn runs(labels: &[bool]) -> usize {
    1 + labels.windows(2).filter(|w| w[0] != w[1]).count()
}

fn label_pattern<R: Rng + ?Sized>(n: usize, k: usize, disposition: Disposition, rng: &mut R) -> Vec<bool> {
    let block = |before: usize, len: usize, inner: bool| -> Vec<bool> {
        (0..n).map(|i| (i >= before && i < before + len) == inner).collect()
    };
    match disposition {
        Disposition::Subordinated => {
            if rng.random::<bool>() {
                block(0, k, true)
            } else {
                block(n - k, k, true)
            }
        }
        Disposition::SigmaInFiniteGap => block(rng.random_range(1..n - k), k, true),
        Disposition::ComplementInFiniteGap => block(rng.random_range(1..k), n - k, false),
        Disposition::Generic => {
            let mut labels: Vec<bool> = (0..n).map(|i| i < k).collect();
            for _ in 0..1000 {
                labels.shuffle(rng);
                if runs(&labels) >= 4 {
                    return labels;
                }
            }
            // sigma, Sigma, sigma..., Sigma...
            let mut fallback = vec![false; n];
            fallback[0] = true;
            for flag in fallback.iter_mut().skip(2).take(k - 1) {
                *flag = true;
            }
            fallback
        }
    }
}

/// `n` sorted levels from `U[0, 1]` with `min_separation` inserted at every
/// change between `sigma` and its complement, so that `d >= min_separation`.
pub fn draw_disposition_spectrum<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    disposition: Disposition,
    min_separation: f64,
    rng: &mut R,
) -> Result<DispositionDraw> {
    if !disposition_feasible(n, k, disposition) {
        return Err(Error::ConfigInvalid(format!(
            "disposition {disposition} is impossible with |sigma| = {k} of n = {n}"
        )));
    }
    let labels = label_pattern(n, k, disposition, rng);
    let mut values: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
    values.sort_by(f64::total_cmp);
    let mut offset = 0.0;
    for i in 0..n {
        if i > 0 && labels[i] != labels[i - 1] {
            offset += min_separation;
        }
        values[i] += offset;
    }
    let sigma = (0..n).filter(|&i| labels[i]).collect();
    Ok(DispositionDraw { values, sigma })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::eigh;
    use crate::spectrum::SpectralPartition;
    use crate::Tolerances;

    #[test]
    fn two_level_spectrum_round_trip() {
        for seed in 0..5 {
            let a = random_hermitian_with_spectrum(&[0.0, 1.0], seed);
            let values = eigh(&a).unwrap().values().to_vec();
            assert!((values[0] - 0.0).abs() < 1e-12 && (values[1] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_spectrum_gives_scalar_matrix() {
        assert_eq!(
            random_hermitian_with_spectrum(&[2.5; 4], 7),
            HermitianOperator::diagonal(&[2.5; 4])
        );
    }

    #[test]
    fn same_seed_same_matrix() {
        let spec = [0.0, 0.3, 1.1, 2.0];
        assert_eq!(random_hermitian_with_spectrum(&spec, 11), random_hermitian_with_spectrum(&spec, 11));
        assert_ne!(random_hermitian_with_spectrum(&spec, 11), random_hermitian_with_spectrum(&spec, 12));
    }

    #[test]
    fn bases_are_unitary() {
        let mut rng = stream_rng(3, 0);
        for field in [Field::Real, Field::Complex] {
            let u = random_orthonormal_basis(6, field, &mut rng);
            let dev = (u.adjoint() * &u - DMatrix::<C64>::identity(6, 6))
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            assert!(dev < 1e-13);
        }
    }

    #[test]
    fn zero_target_gives_zero() {
        let p = OrthogonalProjection::coordinate(3, &[0]);
        let v = random_perturbation(0.0, PerturbationClass::General, &p, 1).unwrap();
        assert_eq!(v, HermitianOperator::zeros(3));
    }

    #[test]
    fn offdiagonal_two_by_two_has_cross_entries_only() {
        let p = OrthogonalProjection::coordinate(2, &[0]);
        let v = random_perturbation(0.4, PerturbationClass::Offdiagonal, &p, 5).unwrap();
        let m = v.matrix();
        assert!(m[(0, 0)].norm() < 1e-15 && m[(1, 1)].norm() < 1e-15);
        assert!((m[(0, 1)].norm() - 0.4).abs() < 1e-12);
        assert_eq!(m[(0, 1)], m[(1, 0)].conj());
    }

    #[test]
    fn general_rescaling_hits_the_target() {
        let p = OrthogonalProjection::coordinate(8, &[0, 1]);
        for seed in 0..10 {
            let v = random_perturbation(0.3, PerturbationClass::General, &p, seed).unwrap();
            assert!((operator_norm(&v).unwrap() - 0.3).abs() < 1e-12);
        }
    }

    #[test]
    fn negative_target_is_rejected() {
        let p = OrthogonalProjection::coordinate(2, &[0]);
        assert!(random_perturbation(-1.0, PerturbationClass::General, &p, 0).is_err());
    }

    #[test]
    fn drawn_spectra_have_the_requested_disposition() {
        let mut rng = stream_rng(9, 0);
        let tol = Tolerances::default();
        for disposition in Disposition::ALL {
            for (n, k) in [(4, 2), (8, 3), (12, 5)] {
                for _ in 0..50 {
                    let draw = draw_disposition_spectrum(n, k, disposition, 0.1, &mut rng).unwrap();
                    let part = SpectralPartition::from_values(&draw.values, &draw.sigma, &tol).unwrap();
                    assert_eq!(part.disposition(), disposition);
                    assert!(part.d() >= 0.1 - 1e-15);
                }
            }
        }
    }

    #[test]
    fn infeasible_dispositions_are_config_errors() {
        let mut rng = stream_rng(0, 0);
        assert!(matches!(
            draw_disposition_spectrum(3, 1, Disposition::Generic, 0.1, &mut rng),
            Err(Error::ConfigInvalid(_))
        ));
        assert!(!disposition_feasible(2, 1, Disposition::SigmaInFiniteGap));
        assert!(disposition_feasible(3, 1, Disposition::SigmaInFiniteGap));
    }
}
