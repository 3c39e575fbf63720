//! Ensemble sweeps over a grid of `x = ||V|| / d`.

use serde::{Deserialize, Serialize};

use super::random::{
    disposition_feasible, draw_disposition_spectrum, random_hermitian_with_basis, random_perturbation_with,
    DispositionDraw, Field, PerturbationClass,
};
use super::stream_rng;
use crate::analyzer::{analyze_with, AnalysisReport, Violation};
use crate::bounds::BoundKind;
use crate::par::{map_indexed, Execution};
use crate::projection::OrthogonalProjection;
use crate::spectrum::{Disposition, SpectralPartition};
use crate::{Error, Result, Tolerances};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "law", rename_all = "snake_case", deny_unknown_fields)]
pub enum SpectrumLaw {
    /// Fixed sorted levels and the positions of `sigma`.
    Explicit { values: Vec<f64>, sigma: Vec<usize> },
    /// `n` levels from `U[0, 1]` with a gap of at least `min_separation`
    /// wherever `sigma` and its complement meet.
    Uniform { min_separation: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleConfig {
    pub n: usize,
    pub disposition: Disposition,
    pub k: usize,
    pub spectrum: SpectrumLaw,
    pub x_grid: Vec<f64>,
    pub trials: usize,
    pub class: PerturbationClass,
    pub seed: u64,
    #[serde(default)]
    pub field: Field,
}

impl EnsembleConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::ConfigInvalid(msg));
        if self.n < 2 {
            return bad(format!("n: must be at least 2, got {}", self.n));
        }
        if self.k == 0 || self.k >= self.n {
            return bad(format!("k: must satisfy 1 <= k <= n - 1, got {}", self.k));
        }
        if self.trials == 0 {
            return bad("trials: must be at least 1".into());
        }
        if self.x_grid.is_empty() {
            return bad("x_grid: must not be empty".into());
        }
        if let Some(x) = self.x_grid.iter().find(|x| !(x.is_finite() && **x >= 0.0)) {
            return bad(format!("x_grid: values must be finite and >= 0, got {x}"));
        }
        if !disposition_feasible(self.n, self.k, self.disposition) {
            return bad(format!(
                "disposition: {} is impossible with k = {} of n = {}",
                self.disposition, self.k, self.n
            ));
        }
        match &self.spectrum {
            SpectrumLaw::Uniform { min_separation } => {
                if !(min_separation.is_finite() && *min_separation > 0.0) {
                    return bad(format!("spectrum.min_separation: must be > 0, got {min_separation}"));
                }
            }
            SpectrumLaw::Explicit { values, sigma } => {
                if values.len() != self.n {
                    return bad(format!("spectrum.values: expected {} levels, got {}", self.n, values.len()));
                }
                if values.windows(2).any(|w| !(w[0] <= w[1])) {
                    return bad("spectrum.values: must be finite and ascending".into());
                }
                if sigma.len() != self.k {
                    return bad(format!("spectrum.sigma: expected {} indices, got {}", self.k, sigma.len()));
                }
                let part = SpectralPartition::from_values(values, sigma, &Tolerances::default())
                    .map_err(|e| Error::ConfigInvalid(format!("spectrum: {e}")))?;
                if part.disposition() != self.disposition {
                    return bad(format!(
                        "spectrum: explicit levels have disposition {}, expected {}",
                        part.disposition(),
                        self.disposition
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.x_grid.len() * self.trials
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Bound value and margin of one catalog entry, empty when inapplicable.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct BoundCell {
    pub bound: Option<f64>,
    pub margin: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecordOutcome {
    pub d: f64,
    #[serde(rename = "D")]
    pub gap_length: Option<f64>,
    pub offdiagonal: bool,
    pub theta_exact: f64,
    pub sin2theta: BoundCell,
    pub generic_pi: BoundCell,
    pub tan2theta: BoundCell,
    pub tantheta: BoundCell,
    #[serde(rename = "dist_omega_Omega", serialize_with = "crate::io::float_or_inf")]
    pub dist_omega_big_omega: f64,
    pub enclosures_pass: bool,
    pub violations: Vec<Violation>,
}

impl RecordOutcome {
    fn from_report(r: &AnalysisReport) -> Self {
        let cell = |kind: BoundKind| {
            let b = r.bound(kind);
            BoundCell {
                bound: b.bound_radians,
                margin: b.margin,
            }
        };
        Self {
            d: r.d,
            gap_length: r.gap_length,
            offdiagonal: r.offdiagonal,
            theta_exact: r.theta_exact,
            sin2theta: cell(BoundKind::Sin2Theta),
            generic_pi: cell(BoundKind::GenericPi),
            tan2theta: cell(BoundKind::Tan2ThetaOffdiag),
            tantheta: cell(BoundKind::TanThetaOffdiagGap),
            dist_omega_big_omega: r.dist_omega_big_omega,
            enclosures_pass: r.enclosures_pass(),
            violations: r.violations.clone(),
        }
    }

    pub fn margins(&self) -> impl Iterator<Item = f64> + '_ {
        [self.sin2theta, self.generic_pi, self.tan2theta, self.tantheta]
            .into_iter()
            .filter_map(|c| c.margin)
    }
}

/// One `(grid point, trial)` of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleRecord {
    /// Master seed of the sweep.
    pub seed: u64,
    pub grid_index: usize,
    /// Trial index within the grid point.
    pub trial: usize,
    pub n: usize,
    pub disposition: Disposition,
    pub x: f64,
    pub offdiagonal: bool,
    pub outcome: Option<RecordOutcome>,
    pub error: Option<String>,
}

impl EnsembleRecord {
    pub fn min_margin(&self) -> Option<f64> {
        self.outcome.as_ref()?.margins().reduce(f64::min)
    }

    pub fn violations(&self) -> &[Violation] {
        self.outcome.as_ref().map_or(&[], |o| &o.violations)
    }
}

/// The `(A, V, sigma)` instance behind a record, regenerated from the
/// configuration alone.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub a: crate::HermitianOperator,
    pub v: crate::HermitianOperator,
    pub sigma: Vec<usize>,
}

pub fn instance(config: &EnsembleConfig, grid_index: usize, trial: usize) -> Result<Instance> {
    let stream = (grid_index * config.trials + trial) as u64;
    let mut rng = stream_rng(config.seed, stream);
    let DispositionDraw { values, sigma } = match &config.spectrum {
        SpectrumLaw::Explicit { values, sigma } => DispositionDraw {
            values: values.clone(),
            sigma: sigma.clone(),
        },
        SpectrumLaw::Uniform { min_separation } => {
            draw_disposition_spectrum(config.n, config.k, config.disposition, *min_separation, &mut rng)?
        }
    };
    let part = SpectralPartition::from_values(&values, &sigma, &Tolerances::default())?;
    let (a, u) = random_hermitian_with_basis(&values, config.field, &mut rng);
    let p = OrthogonalProjection::coordinate(config.n, &sigma).conjugated_by(&u.adjoint());
    let x = config.x_grid[grid_index];
    let v = random_perturbation_with(x * part.d(), config.class, &p, config.field, &mut rng)?;
    Ok(Instance { a, v, sigma })
}

pub fn sweep(config: &EnsembleConfig) -> Result<Vec<EnsembleRecord>> {
    sweep_with(config, &Tolerances::default(), Execution::default())
}

/// Runs every `(grid point, trial)`; per-instance failures are recorded in
/// [`EnsembleRecord::error`] instead of aborting the sweep. Output order is
/// `(grid index, trial)` whatever the execution mode.
pub fn sweep_with(config: &EnsembleConfig, tol: &Tolerances, exec: Execution) -> Result<Vec<EnsembleRecord>> {
    config.validate()?;
    let records = map_indexed(config.len(), exec, |idx| {
        let (grid_index, trial) = (idx / config.trials, idx % config.trials);
        let result = instance(config, grid_index, trial)
            .and_then(|inst| analyze_with(&inst.a, &inst.v, &inst.sigma, tol));
        let (outcome, error) = match result {
            Ok(report) => (Some(RecordOutcome::from_report(&report)), None),
            Err(e) => (None, Some(e.to_string())),
        };
        EnsembleRecord {
            seed: config.seed,
            grid_index,
            trial,
            n: config.n,
            disposition: config.disposition,
            x: config.x_grid[grid_index],
            offdiagonal: outcome
                .as_ref()
                .map_or(config.class.is_offdiagonal(), |o| o.offdiagonal),
            outcome,
            error,
        }
    });
    Ok(records)
}
