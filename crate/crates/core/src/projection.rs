//! Spectral projections and the maximal angle between their ranges.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::eigen::EigenDecomposition;
use crate::hermitian::{operator_norm, HermitianOperator};
use crate::{Error, Result, Tolerances, C64};

#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalProjection {
    matrix: HermitianOperator,
    rank: usize,
}

impl OrthogonalProjection {
    /// Projection onto the span of the listed eigenvectors.
    pub fn from_eigenvectors(eig: &EigenDecomposition, indices: &[usize]) -> Self {
        let n = eig.dim();
        let mut m = DMatrix::<C64>::zeros(n, n);
        for &k in indices {
            let u = eig.vectors().column(k);
            m += &u * u.adjoint();
        }
        Self {
            matrix: HermitianOperator::symmetrized(&m),
            rank: indices.len(),
        }
    }

    /// Coordinate projection `sum_{i in indices} |e_i><e_i|`.
    pub fn coordinate(n: usize, indices: &[usize]) -> Self {
        let mut diag = vec![0.0; n];
        for &i in indices {
            diag[i] = 1.0;
        }
        Self {
            matrix: HermitianOperator::diagonal(&diag),
            rank: indices.len(),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.matrix
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        self.matrix.matrix()
    }

    /// `I - P`.
    pub fn complement(&self) -> Self {
        let n = self.dim();
        Self {
            matrix: &HermitianOperator::identity(n) - &self.matrix,
            rank: n - self.rank,
        }
    }

    /// `J = P - P_perp = 2P - I`.
    pub fn reflection(&self) -> DMatrix<C64> {
        let n = self.dim();
        self.matrix() * C64::new(2.0, 0.0) - DMatrix::<C64>::identity(n, n)
    }

    /// `U^dagger P U`, again a projection of the same rank when `U` is unitary.
    pub fn conjugated_by(&self, u: &DMatrix<C64>) -> Self {
        Self {
            matrix: self.matrix.conjugated_by(u),
            rank: self.rank,
        }
    }

    /// Max-abs entry of `P^2 - P`.
    pub fn idempotency_defect(&self) -> f64 {
        let p = self.matrix();
        (p * p - p).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Groups of consecutive eigenvalues closer than `tol * (1 + ||A||)`.
pub(crate) fn degenerate_groups(values: &[f64], tol: f64) -> Vec<std::ops::Range<usize>> {
    let scale = 1.0 + values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let mut groups = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        if i == values.len() || values[i] - values[i - 1] > tol * scale {
            groups.push(start..i);
            start = i;
        }
    }
    groups
}

/// Sorted, deduplicated, range-checked copy of an index set, rejecting the
/// empty and the full set.
pub(crate) fn normalize_indices(indices: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut out = indices.to_vec();
    out.sort_unstable();
    out.dedup();
    if let Some(&bad) = out.iter().find(|&&i| i >= n) {
        return Err(Error::IndexOutOfRange { index: bad, n });
    }
    if out.is_empty() || out.len() == n {
        return Err(Error::EmptySet);
    }
    Ok(out)
}

pub(crate) fn check_no_split(values: &[f64], sigma: &[usize], tol: f64) -> Result<()> {
    let mut member = vec![false; values.len()];
    for &i in sigma {
        member[i] = true;
    }
    for group in degenerate_groups(values, tol) {
        let inside = group.clone().filter(|&i| member[i]).count();
        if inside != 0 && inside != group.len() {
            return Err(Error::SplitDegeneracy { index: group.start });
        }
    }
    Ok(())
}

/// `P = sum_{i in sigma} |u_i><u_i|` with the default degeneracy tolerance.
pub fn spectral_projection(
    eig: &EigenDecomposition,
    sigma_indices: &[usize],
) -> Result<OrthogonalProjection> {
    spectral_projection_with(eig, sigma_indices, &Tolerances::default())
}

pub fn spectral_projection_with(
    eig: &EigenDecomposition,
    sigma_indices: &[usize],
    tol: &Tolerances,
) -> Result<OrthogonalProjection> {
    let sigma = normalize_indices(sigma_indices, eig.dim())?;
    check_no_split(eig.values(), &sigma, tol.degeneracy)?;
    Ok(OrthogonalProjection::from_eigenvectors(eig, &sigma))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxAngle {
    /// `arcsin(clamp(||P - Q||, 0, 1))`, radians.
    pub theta: f64,
    pub norm_difference: f64,
    pub equal_rank: bool,
}

impl MaxAngle {
    /// `||P - Q|| < 1`: the projections are unitarily equivalent.
    pub fn unitarily_equivalent(&self) -> bool {
        self.norm_difference < 1.0
    }
}

pub fn subspace_max_angle(p: &OrthogonalProjection, q: &OrthogonalProjection) -> Result<MaxAngle> {
    p.operator().check_same_dim(q.operator())?;
    let raw = operator_norm(&(p.operator() - q.operator()))?;
    debug_assert!(raw <= 1.0 + 1e-10, "||P - Q|| = {raw} exceeds 1");
    let norm_difference = raw.clamp(0.0, 1.0);
    Ok(MaxAngle {
        theta: norm_difference.asin(),
        norm_difference,
        equal_rank: p.rank() == q.rank(),
    })
}
