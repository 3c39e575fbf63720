//! A priori bounds on the rotation of spectral subspaces of Hermitian
//! matrices under Hermitian perturbations, together with the exact
//! finite-dimensional machinery needed to check them instance by instance.
//!
//! The crate is organised bottom-up:
//!
//! - [`hermitian`], [`eigen`], [`projection`]: dense Hermitian algebra, a
//!   cyclic Jacobi eigensolver, spectral projections and the maximal angle
//!   `arcsin ||P - Q||` between subspaces.
//! - [`spectrum`]: the partition `spec(A) = sigma ∪ Sigma`, the separation
//!   distance `d`, the disposition of the two sets and the perturbed
//!   components `omega`, `Omega`.
//! - [`bounds`]: the estimating functions, their thresholds, the off-diagonal
//!   shift `eps_V` and the spectral enclosures it implies.
//! - [`analyzer`]: end-to-end certification of one `(A, V, sigma)` instance.
//! - [`generators`]: random ensembles, one-dimensional few-body models,
//!   parameter sweeps and a derivative-free sharpness search.
//! - [`io`]: the JSON matrix format and the sweep CSV layout.

pub mod analyzer;
pub mod bounds;
pub mod eigen;
mod error;
pub mod generators;
pub mod hermitian;
pub mod io;
pub mod par;
pub mod projection;
pub mod spectrum;
mod tolerance;

pub use analyzer::{analyze, analyze_with, verify_report, AnalysisReport, Violation};
pub use bounds::{BoundEvaluation, BoundKind, ShiftBound};
pub use eigen::{eigh, EigenDecomposition};
pub use error::{Error, Result};
pub use hermitian::{operator_norm, validate_hermitian, HermitianOperator};
pub use projection::{spectral_projection, subspace_max_angle, OrthogonalProjection};
pub use spectrum::{build_partition, perturbed_components, Disposition, SpectralPartition};
pub use tolerance::Tolerances;

pub use nalgebra::Complex;

/// Complex double, the scalar type of every operator in the crate.
pub type C64 = Complex<f64>;
