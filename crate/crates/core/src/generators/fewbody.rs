//! One-dimensional single-channel toy Hamiltonians.
//!
//! `A = H0 + diag(V0(x_i))` on the interior points `x_i = i h`,
//! `i = 1..=m`, `h = L / (m + 1)`, with `H0` the Dirichlet three-point
//! Laplacian in units where `hbar^2 / 2 mu = 1`. The perturbation is either a
//! rank-one operator `lambda |phi><phi|` or a bounded local potential.

use serde::{Deserialize, Serialize};

use crate::hermitian::HermitianOperator;
use crate::spectrum::sigma_from_interval;
use crate::{Error, Result, C64};

/// Samples of a potential on the interior grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case", deny_unknown_fields)]
pub enum PotentialSpec {
    Zero,
    /// One value per interior grid point.
    Samples { values: Vec<f64> },
    /// `strength (x - L/2)^2`.
    Harmonic { strength: f64 },
    /// `-depth` on `|x - center| < width / 2`, zero elsewhere.
    SquareWell { depth: f64, center: f64, width: f64 },
    /// `amplitude exp(-(x - center)^2 / (2 width^2))`.
    Gaussian { amplitude: f64, center: f64, width: f64 },
}

impl PotentialSpec {
    pub fn sample(&self, grid: &[f64], length: f64) -> Result<Vec<f64>> {
        let out: Vec<f64> = match self {
            PotentialSpec::Zero => vec![0.0; grid.len()],
            PotentialSpec::Samples { values } => {
                if values.len() != grid.len() {
                    return Err(Error::ConfigInvalid(format!(
                        "potential samples: expected {} values, got {}",
                        grid.len(),
                        values.len()
                    )));
                }
                values.clone()
            }
            PotentialSpec::Harmonic { strength } => {
                grid.iter().map(|x| strength * (x - 0.5 * length).powi(2)).collect()
            }
            PotentialSpec::SquareWell { depth, center, width } => grid
                .iter()
                .map(|x| if (x - center).abs() < 0.5 * width { -depth } else { 0.0 })
                .collect(),
            PotentialSpec::Gaussian {
                amplitude,
                center,
                width,
            } => {
                if !(*width > 0.0) {
                    return Err(Error::ConfigInvalid(format!("potential width: must be > 0, got {width}")));
                }
                grid.iter()
                    .map(|x| amplitude * (-(x - center).powi(2) / (2.0 * width * width)).exp())
                    .collect()
            }
        };
        if out.iter().any(|v| !v.is_finite()) {
            return Err(Error::ConfigInvalid("potential: samples must be finite".into()));
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PerturbationSpec {
    /// `lambda |phi><phi|` with `phi` normalised before use.
    RankOne { lambda: f64, profile: PotentialSpec },
    /// `diag(W(x_i))`.
    Local { potential: PotentialSpec },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "select", rename_all = "snake_case", deny_unknown_fields)]
pub enum SigmaSelection {
    /// The `k` lowest levels.
    Lowest { k: usize },
    /// Explicit level indices.
    Indices { indices: Vec<usize> },
    /// Levels inside the closed energy window `[lo, hi]`.
    Window { lo: f64, hi: f64 },
}

impl SigmaSelection {
    pub fn resolve(&self, spectrum_a: &[f64]) -> Vec<usize> {
        match self {
            SigmaSelection::Lowest { k } => (0..(*k).min(spectrum_a.len())).collect(),
            SigmaSelection::Indices { indices } => indices.clone(),
            SigmaSelection::Window { lo, hi } => sigma_from_interval(spectrum_a, *lo, *hi),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FewBodyConfig {
    /// Interior grid points.
    pub m: usize,
    /// Box length.
    pub length: f64,
    pub base_potential: PotentialSpec,
    pub perturbation: PerturbationSpec,
    pub sigma: SigmaSelection,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FewBodyInstance {
    pub a: HermitianOperator,
    pub v: HermitianOperator,
    pub grid: Vec<f64>,
    pub h: f64,
}

impl FewBodyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.m < 3 {
            return Err(Error::ConfigInvalid(format!("m: must be at least 3, got {}", self.m)));
        }
        if !(self.length.is_finite() && self.length > 0.0) {
            return Err(Error::ConfigInvalid(format!("length: must be > 0, got {}", self.length)));
        }
        Ok(())
    }

    pub fn grid(&self) -> (Vec<f64>, f64) {
        let h = self.length / (self.m + 1) as f64;
        ((1..=self.m).map(|i| i as f64 * h).collect(), h)
    }
}

/// Dirichlet `-d^2/dx^2` on `m` interior points with spacing `h`.
pub fn dirichlet_laplacian(m: usize, h: f64) -> HermitianOperator {
    let scale = 1.0 / (h * h);
    let mut mat = nalgebra::DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        mat[(i, i)] = 2.0 * scale;
        if i + 1 < m {
            mat[(i, i + 1)] = -scale;
            mat[(i + 1, i)] = -scale;
        }
    }
    HermitianOperator::from_real(&mat).expect("tridiagonal Laplacian is symmetric")
}

pub fn few_body_hamiltonian(config: &FewBodyConfig) -> Result<FewBodyInstance> {
    config.validate()?;
    let (grid, h) = config.grid();
    let v0 = config.base_potential.sample(&grid, config.length)?;
    let a = &dirichlet_laplacian(config.m, h) + &HermitianOperator::diagonal(&v0);
    let v = match &config.perturbation {
        PerturbationSpec::RankOne { lambda, profile } => {
            if !lambda.is_finite() {
                return Err(Error::ConfigInvalid("perturbation.lambda: must be finite".into()));
            }
            let phi: Vec<C64> = profile
                .sample(&grid, config.length)?
                .into_iter()
                .map(|x| C64::new(x, 0.0))
                .collect();
            HermitianOperator::rank_one(*lambda, &phi)
                .map_err(|e| Error::ConfigInvalid(format!("perturbation.profile: {e}")))?
        }
        PerturbationSpec::Local { potential } => HermitianOperator::diagonal(&potential.sample(&grid, config.length)?),
    };
    Ok(FewBodyInstance { a, v, grid, h })
}
