use serde::{Deserialize, Serialize};

/// Finite-precision cut-offs used throughout the crate.
///
/// The mathematics is exact; these only decide how much floating-point noise
/// is absorbed before a statement is treated as false.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Relative asymmetry accepted by [`crate::validate_hermitian`].
    pub hermiticity: f64,
    /// Relative gap below which eigenvalues are one degenerate group.
    pub degeneracy: f64,
    /// Slack on `bound - exact` before a bound counts as violated.
    pub margin: f64,
    /// Relative anticommutator residual below which `V` is off-diagonal.
    pub offdiagonal: f64,
    /// Slack on the closed neighbourhood membership test.
    pub neighborhood: f64,
    /// Relative slack on enclosure and spectrum-free interval checks.
    pub enclosure: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermiticity: 1e-12,
            degeneracy: 1e-9,
            margin: 1e-8,
            offdiagonal: 1e-10,
            neighborhood: 1e-12,
            enclosure: 1e-10,
        }
    }
}
