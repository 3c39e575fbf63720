use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("NotSquare: matrix is {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("NotHermitian: asymmetry {residual:.3e} exceeds tolerance {allowed:.3e}")]
    NotHermitian { residual: f64, allowed: f64 },

    #[error("EmptyMatrix: dimension must be at least 1")]
    EmptyMatrix,

    #[error("ConvergenceFailure: Jacobi iteration did not converge within {steps} rotations")]
    ConvergenceFailure { steps: usize },

    #[error("SplitDegeneracy: index set splits the degenerate eigenvalue group at index {index}")]
    SplitDegeneracy { index: usize },

    #[error("EmptySet: sigma and its complement must both be nonempty")]
    EmptySet,

    #[error("IndexOutOfRange: index {index} is out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("DimensionMismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("ZeroSeparation: dist(sigma, Sigma) = {d:.3e} is not positive")]
    ZeroSeparation { d: f64 },

    #[error("DomainViolation: {function} is undefined at {value}")]
    DomainViolation { function: &'static str, value: f64 },

    #[error("DispositionMismatch: expected {expected}, found {found}")]
    DispositionMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("ConditionViolated: {0}")]
    ConditionViolated(String),

    #[error("DegenerateDraw: random draw had vanishing norm after {attempts} attempts")]
    DegenerateDraw { attempts: usize },

    #[error("ConfigInvalid: {0}")]
    ConfigInvalid(String),

    #[error("FormatError: {0}")]
    Format(String),
}
