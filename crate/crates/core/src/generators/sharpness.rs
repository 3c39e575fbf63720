//! Multi-start derivative-free search for near-extremal instances.
//!
//! `A` is kept diagonal (its spectrum is the parameter), so `P` is a
//! coordinate projection. `V` is a free Hermitian matrix that is projected to
//! the off-diagonal block structure when required and always rescaled to
//! `||V|| = x_fixed d`. Each restart starts from a random draw and runs a
//! coordinate search with a geometrically shrinking step.

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::random::{disposition_feasible, draw_disposition_spectrum, Field, PerturbationClass};
use super::stream_rng;
use crate::analyzer::{analyze_with, offdiagonal_split, AnalysisReport};
use crate::bounds::{BoundKind, GENERIC_PI_THRESHOLD, SIN2THETA_THRESHOLD, TANTHETA_THRESHOLD};
use crate::hermitian::{operator_norm, HermitianOperator};
use crate::par::{map_indexed, Execution};
use crate::projection::OrthogonalProjection;
use crate::spectrum::{Disposition, SpectralPartition};
use crate::{Error, Result, Tolerances, C64};

const INITIAL_STEP: f64 = 0.1;
const MIN_STEP: f64 = 1e-10;
const INITIAL_SEPARATION: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// `theta - M(x)` for the bound that governs the configuration.
    MaximizeThetaMinusBound,
    /// `dist(omega, Omega) / d`, minimised. Normalised by `d` so that
    /// rescaling `A` cannot shrink it.
    MinimizeGapDistance,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchConfig {
    pub objective: Objective,
    pub disposition: Disposition,
    pub class: PerturbationClass,
    pub x_fixed: f64,
    pub n: usize,
    pub k: usize,
    /// Total number of objective evaluations over all restarts.
    pub budget: usize,
    pub seed: u64,
    #[serde(default)]
    pub restarts: Option<usize>,
    #[serde(default)]
    pub field: Field,
}

impl SearchConfig {
    /// The catalog entry compared against by `MaximizeThetaMinusBound`.
    pub fn governing_bound(&self) -> Option<BoundKind> {
        let offdiag = self.class.is_offdiagonal();
        let x = self.x_fixed;
        match self.disposition {
            Disposition::Subordinated if offdiag => Some(BoundKind::Tan2ThetaOffdiag),
            // D >= 2d here, so sqrt(D/d) >= sqrt 2 for every instance.
            Disposition::SigmaInFiniteGap if offdiag && x < TANTHETA_THRESHOLD => Some(BoundKind::TanThetaOffdiagGap),
            d if d.is_gap() && x < SIN2THETA_THRESHOLD => Some(BoundKind::Sin2Theta),
            _ if x <= GENERIC_PI_THRESHOLD => Some(BoundKind::GenericPi),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::ConfigInvalid(m));
        if self.budget == 0 {
            return bad("budget: must be at least 1".into());
        }
        if !(self.x_fixed.is_finite() && self.x_fixed >= 0.0) {
            return bad(format!("x_fixed: must be finite and >= 0, got {}", self.x_fixed));
        }
        if !disposition_feasible(self.n, self.k, self.disposition) {
            return bad(format!(
                "disposition: {} is impossible with k = {} of n = {}",
                self.disposition, self.k, self.n
            ));
        }
        if self.restarts == Some(0) {
            return bad("restarts: must be at least 1".into());
        }
        if self.objective == Objective::MaximizeThetaMinusBound && self.governing_bound().is_none() {
            return bad(format!(
                "x_fixed: no bound covers x = {} for {} with {:?} perturbations",
                self.x_fixed, self.disposition, self.class
            ));
        }
        Ok(())
    }

    fn restart_count(&self) -> usize {
        self.restarts.unwrap_or((self.budget / 200).clamp(1, 8)).min(self.budget)
    }

    fn v_params(&self) -> usize {
        match self.field {
            Field::Real => self.n * (self.n + 1) / 2,
            Field::Complex => self.n * self.n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceEntry {
    pub restart: usize,
    pub evaluation: usize,
    pub objective: f64,
    pub best: f64,
    pub step: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub objective: Objective,
    pub bound_kind: Option<BoundKind>,
    /// Best objective value in its natural sign (`theta - M` or the relative
    /// distance).
    pub best_value: f64,
    pub restart: usize,
    pub theta: f64,
    pub bound: Option<f64>,
    #[serde(rename = "dist_omega_Omega", serialize_with = "crate::io::float_or_inf")]
    pub dist_omega_big_omega: f64,
    #[serde(skip)]
    pub a: HermitianOperator,
    #[serde(skip)]
    pub v: HermitianOperator,
    pub sigma: Vec<usize>,
    pub evaluations: usize,
    #[serde(skip)]
    pub trace: Vec<TraceEntry>,
}

struct Evaluated {
    score: f64,
    a: HermitianOperator,
    v: HermitianOperator,
    report: AnalysisReport,
}

struct Problem<'a> {
    config: &'a SearchConfig,
    sigma: Vec<usize>,
    tol: &'a Tolerances,
}

impl Problem<'_> {
    fn build_v(&self, params: &[f64]) -> HermitianOperator {
        let n = self.config.n;
        let mut m = nalgebra::DMatrix::<C64>::zeros(n, n);
        let mut it = params.iter().copied();
        for i in 0..n {
            m[(i, i)] = C64::new(it.next().unwrap_or(0.0), 0.0);
            for j in i + 1..n {
                let re = it.next().unwrap_or(0.0);
                let im = match self.config.field {
                    Field::Real => 0.0,
                    Field::Complex => it.next().unwrap_or(0.0),
                };
                m[(i, j)] = C64::new(re, im);
                m[(j, i)] = C64::new(re, -im);
            }
        }
        HermitianOperator::symmetrized(&m)
    }

    /// Score to maximise, or `None` for infeasible parameters.
    fn evaluate(&self, params: &[f64]) -> Option<Evaluated> {
        let n = self.config.n;
        let values = &params[..n];
        if values.iter().any(|v| !v.is_finite()) || values.windows(2).any(|w| !(w[0] < w[1])) {
            return None;
        }
        let part = SpectralPartition::from_values(values, &self.sigma, self.tol).ok()?;
        if part.disposition() != self.config.disposition {
            return None;
        }
        let a = HermitianOperator::diagonal(values);
        let mut v = self.build_v(&params[n..]);
        if self.config.class.is_offdiagonal() {
            let p = OrthogonalProjection::coordinate(n, &self.sigma);
            v = offdiagonal_split(&v, &p).ok()?.offdiagonal;
        }
        let norm = operator_norm(&v).ok()?;
        if norm < 1e-13 {
            return None;
        }
        let v = v.scaled(self.config.x_fixed * part.d() / norm);
        let report = analyze_with(&a, &v, &self.sigma, self.tol).ok()?;
        let score = match self.config.objective {
            Objective::MaximizeThetaMinusBound => {
                let kind = self.config.governing_bound()?;
                report.theta_exact - report.bound(kind).bound_radians?
            }
            Objective::MinimizeGapDistance => -report.dist_omega_big_omega / report.d,
        };
        score.is_finite().then_some(Evaluated { score, a, v, report })
    }
}

struct RestartOutcome {
    best: Option<(Vec<f64>, Evaluated)>,
    trace: Vec<TraceEntry>,
    evaluations: usize,
}

fn run_restart(config: &SearchConfig, tol: &Tolerances, restart: usize, budget: usize) -> RestartOutcome {
    let mut rng = stream_rng(config.seed, restart as u64);
    let mut trace = Vec::new();
    let Ok(draw) = draw_disposition_spectrum(config.n, config.k, config.disposition, INITIAL_SEPARATION, &mut rng)
    else {
        return RestartOutcome {
            best: None,
            trace,
            evaluations: 0,
        };
    };
    let problem = Problem {
        config,
        sigma: draw.sigma,
        tol,
    };
    let mut params = draw.values;
    params.extend((0..config.v_params()).map(|_| rng.sample::<f64, _>(StandardNormal)));

    let mut evaluations = 0;
    let mut step = INITIAL_STEP;
    let mut best = problem.evaluate(&params);
    evaluations += 1;
    let mut best_score = best.as_ref().map_or(f64::NEG_INFINITY, |e| e.score);
    trace.push(TraceEntry {
        restart,
        evaluation: 0,
        objective: best_score,
        best: best_score,
        step,
    });

    while evaluations < budget && step > MIN_STEP {
        let mut improved = false;
        'coords: for i in 0..params.len() {
            for sign in [1.0, -1.0] {
                if evaluations >= budget {
                    break 'coords;
                }
                let mut trial = params.clone();
                trial[i] += sign * step;
                let result = problem.evaluate(&trial);
                let score = result.as_ref().map_or(f64::NEG_INFINITY, |e| e.score);
                if score > best_score {
                    best_score = score;
                    best = result;
                    params = trial;
                    improved = true;
                }
                trace.push(TraceEntry {
                    restart,
                    evaluation: evaluations,
                    objective: score,
                    best: best_score,
                    step,
                });
                evaluations += 1;
                if improved {
                    break;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    RestartOutcome {
        best: best.map(|e| (params, e)),
        trace,
        evaluations,
    }
}

pub fn sharpness_search(config: &SearchConfig) -> Result<SearchResult> {
    sharpness_search_with(config, &Tolerances::default(), Execution::default())
}

/// Restarts run independently (in parallel when enabled) and are merged by
/// restart index, so the result depends only on the configuration.
pub fn sharpness_search_with(config: &SearchConfig, tol: &Tolerances, exec: Execution) -> Result<SearchResult> {
    config.validate()?;
    let restarts = config.restart_count();
    let share = config.budget / restarts;
    let extra = config.budget % restarts;
    let outcomes = map_indexed(restarts, exec, |r| {
        run_restart(config, tol, r, share + usize::from(r < extra))
    });

    let evaluations = outcomes.iter().map(|o| o.evaluations).sum();
    let mut trace = Vec::with_capacity(outcomes.iter().map(|o| o.trace.len()).sum());
    let mut winner: Option<(usize, Evaluated)> = None;
    for (r, outcome) in outcomes.into_iter().enumerate() {
        trace.extend(outcome.trace);
        if let Some((_, e)) = outcome.best {
            if winner.as_ref().is_none_or(|(_, w)| e.score > w.score) {
                winner = Some((r, e));
            }
        }
    }
    let (restart, best) = winner.ok_or_else(|| {
        Error::ConditionViolated("sharpness search found no feasible instance within the budget".into())
    })?;
    let bound_kind = match config.objective {
        Objective::MaximizeThetaMinusBound => config.governing_bound(),
        Objective::MinimizeGapDistance => None,
    };
    Ok(SearchResult {
        objective: config.objective,
        bound_kind,
        best_value: match config.objective {
            Objective::MaximizeThetaMinusBound => best.score,
            Objective::MinimizeGapDistance => -best.score,
        },
        restart,
        theta: best.report.theta_exact,
        bound: bound_kind.and_then(|k| best.report.bound(k).bound_radians),
        dist_omega_big_omega: best.report.dist_omega_big_omega,
        a: best.a,
        v: best.v,
        sigma: best.report.sigma_indices.clone(),
        evaluations,
        trace,
    })
}
