//! Dense complex Hermitian operators.

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;

use crate::eigen::eigh;
use crate::{Error, Result, C64};

/// Imaginary parts at or below this magnitude are treated as zero when
/// choosing the real-arithmetic eigensolver path.
pub const REAL_PATH_CUTOFF: f64 = 1e-14;

/// A dense `n x n` Hermitian matrix.
///
/// Every constructor leaves the stored matrix exactly Hermitian: the upper
/// triangle is the conjugate of the lower one and the diagonal is real.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: DMatrix<C64>,
    residual: f64,
}

impl HermitianOperator {
    /// Symmetrizes `m` without checking it first. Use
    /// [`validate_hermitian`] for untrusted input.
    pub(crate) fn symmetrized(m: &DMatrix<C64>) -> Self {
        let n = m.nrows();
        let mut out = DMatrix::<C64>::zeros(n, n);
        let mut residual = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let a = m[(i, j)];
                let b = m[(j, i)].conj();
                residual = residual.max((a - b).norm());
                out[(i, j)] = (a + b) * 0.5;
            }
            out[(i, i)] = C64::new(out[(i, i)].re, 0.0);
        }
        // Force exact conjugate symmetry (the averaging above already gives
        // it, but rounding in `(a + b) / 2` vs `(b + a) / 2` is asymmetric).
        for i in 0..n {
            for j in (i + 1)..n {
                out[(j, i)] = out[(i, j)].conj();
            }
        }
        Self {
            matrix: out,
            residual,
        }
    }

    pub fn from_real(m: &DMatrix<f64>) -> Result<Self> {
        validate_hermitian(&m.map(|x| C64::new(x, 0.0)), 0.0)
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let n = values.len();
        let mut m = DMatrix::<C64>::zeros(n, n);
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = C64::new(*v, 0.0);
        }
        Self {
            matrix: m,
            residual: 0.0,
        }
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            matrix: DMatrix::zeros(n, n),
            residual: 0.0,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: DMatrix::identity(n, n),
            residual: 0.0,
        }
    }

    /// `lambda |phi><phi|` with `phi` normalized first.
    pub fn rank_one(lambda: f64, phi: &[C64]) -> Result<Self> {
        let norm = phi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if phi.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        if !(norm > 0.0) {
            return Err(Error::ConfigInvalid("rank-one profile has zero norm".into()));
        }
        let n = phi.len();
        let mut m = DMatrix::<C64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = phi[i] * phi[j].conj() * (lambda / (norm * norm));
            }
        }
        Ok(Self::symmetrized(&m))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.matrix
    }

    /// Largest `|M - M^dagger|` entry seen when this operator was symmetrized.
    pub fn symmetrization_residual(&self) -> f64 {
        self.residual
    }

    pub fn is_real(&self) -> bool {
        self.matrix.iter().all(|z| z.im.abs() <= REAL_PATH_CUTOFF)
    }

    pub fn real_part(&self) -> DMatrix<f64> {
        self.matrix.map(|z| z.re)
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::symmetrized(&(&self.matrix * C64::new(factor, 0.0)))
    }

    /// `U^dagger self U` for a unitary (or any square) `u`.
    pub fn conjugated_by(&self, u: &DMatrix<C64>) -> Self {
        Self::symmetrized(&(u.adjoint() * &self.matrix * u))
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).sum()
    }

    /// `<x|self|x>` for a column vector `x`.
    pub fn expectation(&self, x: &[C64]) -> f64 {
        let n = self.dim();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            let mut row = C64::new(0.0, 0.0);
            for j in 0..n {
                row += self.matrix[(i, j)] * x[j];
            }
            acc += x[i].conj() * row;
        }
        acc.re
    }

    pub(crate) fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        Ok(())
    }
}

impl Add for &HermitianOperator {
    type Output = HermitianOperator;
    fn add(self, rhs: Self) -> HermitianOperator {
        HermitianOperator::symmetrized(&(&self.matrix + &rhs.matrix))
    }
}

impl Sub for &HermitianOperator {
    type Output = HermitianOperator;
    fn sub(self, rhs: Self) -> HermitianOperator {
        HermitianOperator::symmetrized(&(&self.matrix - &rhs.matrix))
    }
}

/// Plain matrix product; the result is generally not Hermitian.
impl Mul for &HermitianOperator {
    type Output = DMatrix<C64>;
    fn mul(self, rhs: Self) -> DMatrix<C64> {
        &self.matrix * &rhs.matrix
    }
}

/// Accepts `m` as Hermitian when `max |M - M^dagger| <= tol * (1 + max |M|)`
/// and returns the symmetrized operator `(M + M^dagger) / 2`.
pub fn validate_hermitian(m: &DMatrix<C64>, tol: f64) -> Result<HermitianOperator> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotSquare {
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    if m.nrows() == 0 {
        return Err(Error::EmptyMatrix);
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Format("matrix has non-finite entries".into()));
    }
    let op = HermitianOperator::symmetrized(m);
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let allowed = tol * (1.0 + scale);
    if op.residual > allowed {
        return Err(Error::NotHermitian {
            residual: op.residual,
            allowed,
        });
    }
    Ok(op)
}

/// Row-major convenience wrapper around [`validate_hermitian`].
pub fn validate_rows(rows: &[Vec<C64>], tol: f64) -> Result<HermitianOperator> {
    let n = rows.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare {
            rows: n,
            cols: bad.len(),
        });
    }
    let m = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    validate_hermitian(&m, tol)
}

/// `max(|min spec V|, |max spec V|)`.
pub fn operator_norm(v: &HermitianOperator) -> Result<f64> {
    let eig = eigh(v)?;
    let values = eig.values();
    let lo = values[0].abs();
    let hi = values[values.len() - 1].abs();
    Ok(lo.max(hi))
}
