//! Cyclic Jacobi eigensolver for Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the classical real Jacobi rotation, so the same
//! code serves the real-symmetric fast path (`T = f64`, phases are signs) and
//! the complex Hermitian path (`T = C64`).

use std::ops::{Add, Mul, Sub};

use nalgebra::DMatrix;

use crate::hermitian::HermitianOperator;
use crate::{Error, Result, C64};

/// Eigenvalues in ascending order with orthonormal eigenvectors stored as the
/// columns of `vectors` in the same order.
///
/// Each eigenvector carries a fixed phase: its largest-magnitude component
/// (the first one, on ties) is real and nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenDecomposition {
    values: Vec<f64>,
    vectors: DMatrix<C64>,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn vectors(&self) -> &DMatrix<C64> {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> Vec<C64> {
        self.vectors.column(i).iter().copied().collect()
    }

    /// `U diag(values) U^dagger`.
    pub fn reconstruct(&self) -> DMatrix<C64> {
        let n = self.dim();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            for i in 0..n {
                scaled[(i, j)] *= self.values[j];
            }
        }
        scaled * self.vectors.adjoint()
    }

    /// Max-abs entry of `U^dagger U - I`.
    pub fn gram_deviation(&self) -> f64 {
        let n = self.dim();
        let g = self.vectors.adjoint() * &self.vectors;
        let mut worst = 0.0_f64;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - C64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    /// Spectral norm of `A - U diag(values) U^dagger`.
    pub fn reconstruction_residual(&self, a: &HermitianOperator) -> Result<f64> {
        let diff = HermitianOperator::symmetrized(&(a.matrix() - self.reconstruct()));
        crate::hermitian::operator_norm(&diff)
    }

    pub fn max_abs_value(&self) -> f64 {
        match (self.values.first(), self.values.last()) {
            (Some(lo), Some(hi)) => lo.abs().max(hi.abs()),
            _ => 0.0,
        }
    }
}

trait JacobiScalar: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> {
    fn zero() -> Self;
    fn one() -> Self;
    fn modulus(self) -> f64;
    fn conjugate(self) -> Self;
    fn real(self) -> f64;
    fn scale(self, s: f64) -> Self;
    fn into_c64(self) -> C64;
}

impl JacobiScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn modulus(self) -> f64 {
        self.abs()
    }
    fn conjugate(self) -> Self {
        self
    }
    fn real(self) -> f64 {
        self
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn into_c64(self) -> C64 {
        C64::new(self, 0.0)
    }
}

impl JacobiScalar for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn modulus(self) -> f64 {
        self.norm()
    }
    fn conjugate(self) -> Self {
        self.conj()
    }
    fn real(self) -> f64 {
        self.re
    }
    fn scale(self, s: f64) -> Self {
        self * s
    }
    fn into_c64(self) -> C64 {
        self
    }
}

/// Row-major Jacobi diagonalization. Returns the (unsorted) diagonal and the
/// accumulated rotation, row-major.
fn jacobi<T: JacobiScalar>(mut a: Vec<T>, n: usize) -> Result<(Vec<f64>, Vec<T>)> {
    let mut v = vec![T::zero(); n * n];
    for i in 0..n {
        v[i * n + i] = T::one();
    }
    if n == 1 {
        return Ok((vec![a[0].real()], v));
    }

    let budget = 100 * n * n;
    let mut steps = 0usize;
    let mut sweep = 0usize;
    loop {
        let off: f64 = (0..n)
            .flat_map(|p| ((p + 1)..n).map(move |q| (p, q)))
            .map(|(p, q)| a[p * n + q].modulus().powi(2))
            .sum();
        if off == 0.0 {
            break;
        }
        sweep += 1;
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                steps += 1;
                if steps > budget {
                    return Err(Error::ConvergenceFailure { steps: budget });
                }
                let apq = a[p * n + q];
                let mag = apq.modulus();
                if mag == 0.0 {
                    continue;
                }
                let app = a[p * n + p].real();
                let aqq = a[q * n + q].real();
                let g = 100.0 * mag;
                if sweep > 4 && app.abs() + g == app.abs() && aqq.abs() + g == aqq.abs() {
                    a[p * n + q] = T::zero();
                    a[q * n + p] = T::zero();
                    continue;
                }
                let phase = apq.scale(1.0 / mag);
                let theta = 0.5 * (aqq - app) / mag;
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let phase_bar = phase.conjugate();

                // A <- A U, V <- V U
                for k in 0..n {
                    let x = a[k * n + p];
                    let y = a[k * n + q] * phase_bar;
                    a[k * n + p] = x.scale(c) - y.scale(s);
                    a[k * n + q] = x.scale(s) + y.scale(c);
                    let x = v[k * n + p];
                    let y = v[k * n + q] * phase_bar;
                    v[k * n + p] = x.scale(c) - y.scale(s);
                    v[k * n + q] = x.scale(s) + y.scale(c);
                }
                // A <- U^dagger A
                for k in 0..n {
                    let x = a[p * n + k];
                    let y = a[q * n + k] * phase;
                    a[p * n + k] = x.scale(c) - y.scale(s);
                    a[q * n + k] = x.scale(s) + y.scale(c);
                }
                a[p * n + q] = T::zero();
                a[q * n + p] = T::zero();
                a[p * n + p] = T::one().scale(a[p * n + p].real());
                a[q * n + q] = T::one().scale(a[q * n + q].real());
            }
        }
    }
    let diag = (0..n).map(|i| a[i * n + i].real()).collect();
    Ok((diag, v))
}

/// Hermitian eigendecomposition.
///
/// Real input (all imaginary parts at most `1e-14`) is diagonalized in real
/// arithmetic. The result is a deterministic function of the input matrix.
pub fn eigh(a: &HermitianOperator) -> Result<EigenDecomposition> {
    let n = a.dim();
    let m = a.matrix();
    let (diag, rot): (Vec<f64>, Vec<C64>) = if a.is_real() {
        let data: Vec<f64> = (0..n * n).map(|k| m[(k / n, k % n)].re).collect();
        let (d, v) = jacobi(data, n)?;
        (d, v.into_iter().map(JacobiScalar::into_c64).collect())
    } else {
        let data: Vec<C64> = (0..n * n).map(|k| m[(k / n, k % n)]).collect();
        jacobi(data, n)?
    };

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]).then(i.cmp(&j)));

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = DMatrix::<C64>::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        let column: Vec<C64> = (0..n).map(|r| rot[r * n + src]).collect();
        let biggest = column.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let pivot = column
            .iter()
            .position(|z| z.norm() >= biggest * (1.0 - 1e-12))
            .unwrap_or(0);
        let norm = column[pivot].norm();
        let fix = if norm > 0.0 {
            column[pivot].conj() / norm
        } else {
            C64::new(1.0, 0.0)
        };
        for r in 0..n {
            vectors[(r, col)] = column[r] * fix;
        }
        vectors[(pivot, col)] = C64::new(vectors[(pivot, col)].norm(), 0.0);
    }
    Ok(EigenDecomposition { values, vectors })
}
