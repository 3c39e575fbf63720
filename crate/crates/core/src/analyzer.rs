//! End-to-end certification of a single `(A, V, sigma)` instance.
//!
//! [`analyze`] computes every exact quantity (spectra, the perturbed
//! components, the maximal angle, the ground-state overlap), evaluates the
//! whole bound catalog at `x = ||V|| / d` and checks each applicable bound and
//! enclosure against the exact values. [`verify_report`] re-derives the list
//! of violations from a report alone.
//!
//! Because every bound is a theorem, a violation on an instance that meets
//! the preconditions points at a numerical or software defect.

use std::fmt;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::bounds::{
    applicability, enclosures_finite_gap, enclosures_highest_levels, enclosures_lowest_levels,
    epsilon_shift, BoundEvaluation, BoundKind, EnclosureSet, Interval, SIN2THETA_THRESHOLD,
};
use crate::eigen::eigh;
use crate::hermitian::{operator_norm, HermitianOperator};
use crate::projection::{check_no_split, subspace_max_angle, OrthogonalProjection};
use crate::spectrum::{
    nearest_components, ordered_components, perturbed_components_with, Disposition,
    PerturbedComponents, SpectralPartition,
};
use crate::{Error, Result, Tolerances, C64};

/// `V = V_diag + V_offdiag` with `V_diag` commuting and `V_offdiag`
/// anticommuting with `J = 2P - I`.
#[derive(Debug, Clone, PartialEq)]
pub struct OffDiagonalSplit {
    pub diagonal: HermitianOperator,
    pub offdiagonal: HermitianOperator,
    /// `||V_offdiag J + J V_offdiag||`.
    pub anticommutator_residual: f64,
}

fn anticommutator(v: &DMatrix<C64>, j: &DMatrix<C64>) -> HermitianOperator {
    HermitianOperator::symmetrized(&(v * j + j * v))
}

pub fn offdiagonal_split(v: &HermitianOperator, p: &OrthogonalProjection) -> Result<OffDiagonalSplit> {
    v.check_same_dim(p.operator())?;
    let j = p.reflection();
    let jvj = &j * v.matrix() * &j;
    let offdiagonal = HermitianOperator::symmetrized(&((v.matrix() - &jvj) * C64::new(0.5, 0.0)));
    let diagonal = v - &offdiagonal;
    let anticommutator_residual = operator_norm(&anticommutator(offdiagonal.matrix(), &j))?;
    Ok(OffDiagonalSplit {
        diagonal,
        offdiagonal,
        anticommutator_residual,
    })
}

/// Whether `||VJ + JV|| <= tol (1 + ||V||)`; returns the residual as well.
pub fn is_offdiagonal(v: &HermitianOperator, p: &OrthogonalProjection, tol: f64) -> Result<(bool, f64)> {
    v.check_same_dim(p.operator())?;
    let residual = operator_norm(&anticommutator(v.matrix(), &p.reflection()))?;
    let norm_v = operator_norm(v)?;
    Ok((residual <= tol * (1.0 + norm_v), residual))
}

/// How the perturbed eigenvalues were split into `omega` and `Omega`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Assignment {
    /// Closed `||V||`-neighbourhoods, unambiguous.
    Neighborhood,
    /// Closed `eps_V`-neighbourhoods (off-diagonal `V`), unambiguous.
    OffdiagonalShift,
    /// Sorted positions, valid when the gaps provably stay open
    /// (off-diagonal `V`, subordinated or finite-gap within threshold).
    Ordering,
    /// Nearer of the two sets; reported only, never certified.
    Nearest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// Every `omega` eigenvalue lies in the closed interval.
    ContainsOmega,
    /// No eigenvalue of `H` lies in the open interval.
    SpectrumFree,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnclosureCheck {
    pub interval: Interval,
    pub expectation: Expectation,
    /// Eigenvalues that violate the expectation.
    pub offending: Vec<f64>,
    pub slack: f64,
    pub pass: bool,
}

impl EnclosureCheck {
    fn evaluate(interval: Interval, expectation: Expectation, spectrum_h: &[f64], omega: &[f64], slack: f64) -> Self {
        let offending: Vec<f64> = match expectation {
            Expectation::ContainsOmega => omega
                .iter()
                .copied()
                .filter(|&x| !interval.contains_closed(x, slack))
                .collect(),
            Expectation::SpectrumFree => spectrum_h
                .iter()
                .copied()
                .filter(|&x| interval.contains_open(x, slack))
                .collect(),
        };
        Self {
            pass: offending.is_empty(),
            interval,
            expectation,
            offending,
            slack,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum Violation {
    BoundExceeded {
        kind: BoundKind,
        bound: f64,
        exact: f64,
        margin: f64,
    },
    GuaranteeFailed {
        kind: BoundKind,
        guarantee: &'static str,
    },
    EnclosureFailed {
        label: String,
        expectation: Expectation,
        offending: Vec<f64>,
    },
    DisjointnessUnavailable {
        kinds: Vec<BoundKind>,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BoundExceeded {
                kind,
                bound,
                exact,
                margin,
            } => write!(f, "{kind}: exact {exact:.12e} exceeds bound {bound:.12e} (margin {margin:.3e})"),
            Violation::GuaranteeFailed { kind, guarantee } => write!(f, "{kind}: guarantee '{guarantee}' fails"),
            Violation::EnclosureFailed {
                label,
                expectation,
                offending,
            } => write!(f, "enclosure '{label}' ({expectation:?}) fails at {offending:?}"),
            Violation::DisjointnessUnavailable { kinds } => {
                let names: Vec<&str> = kinds.iter().map(|k| k.name()).collect();
                write!(f, "disjointness unavailable for {}", names.join(", "))
            }
        }
    }
}

/// Full certified record for one instance. Angles are radians.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub sigma_indices: Vec<usize>,
    pub spectrum_a: Vec<f64>,
    pub spectrum_h: Vec<f64>,
    pub d: f64,
    #[serde(rename = "D")]
    pub gap_length: Option<f64>,
    pub disposition: Disposition,
    pub norm_v: f64,
    pub x: f64,
    pub offdiagonal: bool,
    pub offdiagonal_residual: f64,
    pub epsilon_v: f64,
    /// Components from the closed `||V||`-neighbourhoods.
    pub components: PerturbedComponents,
    pub assignment: Assignment,
    pub omega_indices: Vec<usize>,
    #[serde(rename = "dist_omega_Omega", serialize_with = "crate::io::float_or_inf")]
    pub dist_omega_big_omega: f64,
    pub theta_exact: f64,
    pub norm_p_minus_q: f64,
    pub equal_rank: bool,
    pub ground_state_overlap: Option<f64>,
    pub bounds: Vec<BoundEvaluation>,
    pub enclosure_checks: Vec<EnclosureCheck>,
    pub margin_tolerance: f64,
    pub violations: Vec<Violation>,
    /// Applicable bounds plus enclosure checks that were tested.
    pub claims_checked: usize,
    /// No violations. Vacuously true when `claims_checked == 0`.
    pub certified: bool,
    pub notes: Vec<String>,
}

impl AnalysisReport {
    pub fn bound(&self, kind: BoundKind) -> &BoundEvaluation {
        self.bounds
            .iter()
            .find(|b| b.kind == kind)
            .expect("every kind is evaluated")
    }

    pub fn omega(&self) -> Vec<f64> {
        self.omega_indices.iter().map(|&i| self.spectrum_h[i]).collect()
    }

    pub fn enclosures_pass(&self) -> bool {
        self.enclosure_checks.iter().all(|c| c.pass)
    }
}

pub fn analyze(a: &HermitianOperator, v: &HermitianOperator, sigma_indices: &[usize]) -> Result<AnalysisReport> {
    analyze_with(a, v, sigma_indices, &Tolerances::default())
}

pub fn analyze_with(
    a: &HermitianOperator,
    v: &HermitianOperator,
    sigma_indices: &[usize],
    tol: &Tolerances,
) -> Result<AnalysisReport> {
    a.check_same_dim(v)?;
    let n = a.dim();
    let eig_a = eigh(a)?;
    let h = a + v;
    let eig_h = eigh(&h)?;
    let partition = SpectralPartition::from_values(eig_a.values(), sigma_indices, tol)?;
    let p = OrthogonalProjection::from_eigenvectors(&eig_a, partition.sigma_indices());

    let norm_v = operator_norm(v)?;
    let d = partition.d();
    let x = norm_v / d;
    let (offdiagonal, offdiagonal_residual) = is_offdiagonal(v, &p, tol.offdiagonal)?;
    let shift = epsilon_shift(norm_v, d)?;
    let spectrum_h = eig_h.values().to_vec();
    let mut notes = Vec::new();

    let components = perturbed_components_with(&spectrum_h, &partition, norm_v, tol.neighborhood);
    let (assignment, resolved) = resolve(&spectrum_h, &partition, &components, offdiagonal, shift.epsilon_v, x, tol);
    if assignment == Assignment::Nearest {
        notes.push("perturbed components are not separated; omega taken as the nearer-set assignment".into());
    }
    if check_no_split(&spectrum_h, &resolved.omega_indices, tol.degeneracy).is_err() {
        notes.push("omega splits a degenerate eigenvalue group of H".into());
    }

    let q = OrthogonalProjection::from_eigenvectors(&eig_h, &resolved.omega_indices);
    let angle = subspace_max_angle(&p, &q)?;

    let ground_state_overlap = (partition.sigma_indices() == [0] && resolved.omega_indices.len() == 1).then(|| {
        let psi0 = eig_a.vectors().column(0);
        let psi0_h = eig_h.vectors().column(resolved.omega_indices[0]);
        psi0.dotc(&psi0_h).norm()
    });

    let mut bounds = applicability(&partition, offdiagonal, x);
    for b in bounds.iter_mut() {
        if !b.applicable {
            continue;
        }
        if b.bound_radians.is_some() {
            *b = b.clone().with_exact(angle.theta);
        } else {
            b.guarantee_holds = Some(match b.kind {
                BoundKind::GenericConstantThreshold => angle.norm_difference < 1.0,
                _ => separated(assignment, &resolved, &partition),
            });
        }
        if b.kind == BoundKind::GenericConstantThreshold {
            notes.push(
                "generic_constant_threshold: no finite bound value available; only theta < pi/2 is certified".into(),
            );
        }
    }
    if !offdiagonal && x >= SIN2THETA_THRESHOLD {
        notes.push("condition ||V|| < d/2 violated; no general certification available".into());
    }

    let enclosure_set = if offdiagonal {
        enclosures_for(&partition, x, &shift)?
    } else {
        None
    };
    let omega: Vec<f64> = resolved.omega.clone();
    let scale = 1.0 + eig_a.max_abs_value() + norm_v;
    let slack = tol.enclosure * scale;
    let mut enclosure_checks = Vec::new();
    if let Some(set) = enclosure_set {
        for i in set.confined {
            enclosure_checks.push(EnclosureCheck::evaluate(i, Expectation::ContainsOmega, &spectrum_h, &omega, slack));
        }
        for i in set.forbidden {
            enclosure_checks.push(EnclosureCheck::evaluate(i, Expectation::SpectrumFree, &spectrum_h, &omega, slack));
        }
    }

    let mut report = AnalysisReport {
        n,
        sigma_indices: partition.sigma_indices().to_vec(),
        spectrum_a: eig_a.values().to_vec(),
        spectrum_h,
        d,
        gap_length: partition.gap_length(),
        disposition: partition.disposition(),
        norm_v,
        x,
        offdiagonal,
        offdiagonal_residual,
        epsilon_v: shift.epsilon_v,
        components,
        assignment,
        omega_indices: resolved.omega_indices.clone(),
        dist_omega_big_omega: resolved.dist_omega_big_omega,
        theta_exact: angle.theta,
        norm_p_minus_q: angle.norm_difference,
        equal_rank: angle.equal_rank,
        ground_state_overlap,
        bounds,
        enclosure_checks,
        margin_tolerance: tol.margin,
        violations: vec![],
        claims_checked: 0,
        certified: false,
        notes,
    };
    report.claims_checked =
        report.bounds.iter().filter(|b| b.applicable).count() + report.enclosure_checks.len();
    report.violations = verify_report(&report);
    report.certified = report.violations.is_empty();
    Ok(report)
}

fn separated(assignment: Assignment, c: &PerturbedComponents, partition: &SpectralPartition) -> bool {
    assignment != Assignment::Nearest
        && c.ambiguous.is_empty()
        && c.omega.len() == partition.sigma_indices().len()
        && c.dist_omega_big_omega > 0.0
}

fn resolve(
    spectrum_h: &[f64],
    partition: &SpectralPartition,
    by_norm: &PerturbedComponents,
    offdiagonal: bool,
    epsilon_v: f64,
    x: f64,
    tol: &Tolerances,
) -> (Assignment, PerturbedComponents) {
    let k = partition.sigma_indices().len();
    let usable = |c: &PerturbedComponents| c.is_clean() && c.omega.len() == k;
    if usable(by_norm) {
        return (Assignment::Neighborhood, by_norm.clone());
    }
    if offdiagonal {
        let by_shift = perturbed_components_with(spectrum_h, partition, epsilon_v, tol.neighborhood);
        if usable(&by_shift) {
            return (Assignment::OffdiagonalShift, by_shift);
        }
        let gaps_stay_open = match partition.disposition() {
            Disposition::Subordinated => true,
            Disposition::SigmaInFiniteGap => partition
                .gap_length()
                .is_some_and(|gap| x < (gap / partition.d()).sqrt()),
            _ => false,
        };
        if gaps_stay_open {
            return (Assignment::Ordering, ordered_components(spectrum_h, partition));
        }
    }
    (Assignment::Nearest, nearest_components(spectrum_h, partition))
}

fn enclosures_for(
    partition: &SpectralPartition,
    x: f64,
    shift: &crate::bounds::ShiftBound,
) -> Result<Option<EnclosureSet>> {
    match partition.disposition() {
        Disposition::Subordinated => {
            let levels = partition.sigma_values();
            let set = if partition.sigma_below() {
                enclosures_lowest_levels(&levels, partition.complement_min(), shift)?
            } else {
                enclosures_highest_levels(&levels, partition.complement_max(), shift)?
            };
            Ok(Some(set))
        }
        Disposition::SigmaInFiniteGap => {
            let gap = partition.gap_length().expect("finite gap has a length");
            if x < (gap / partition.d()).sqrt() {
                match enclosures_finite_gap(partition, shift) {
                    Ok(set) => Ok(Some(set)),
                    Err(Error::ConditionViolated(_)) => Ok(None),
                    Err(e) => Err(e),
                }
            } else {
                Ok(None)
            }
        }
        _ => Ok(None),
    }
}

/// Violations implied by the report's own fields.
///
/// Margins are recomputed from `theta_exact` and the stored bound values, and
/// enclosure checks are re-run against `spectrum_h`, so a report edited after
/// the fact is judged on its current contents.
pub fn verify_report(report: &AnalysisReport) -> Vec<Violation> {
    let mut out = Vec::new();
    let general_disjoint = report.components.is_clean();
    let offdiag_disjoint = report.assignment != Assignment::Nearest;

    let mut missing: Vec<BoundKind> = Vec::new();
    for b in report.bounds.iter().filter(|b| b.applicable) {
        let disjoint = if b.kind.requires_offdiagonal() {
            offdiag_disjoint
        } else {
            general_disjoint
        };
        if !disjoint {
            missing.push(b.kind);
        }
    }
    if !missing.is_empty() {
        out.push(Violation::DisjointnessUnavailable { kinds: missing });
    }

    let omega = report.omega();
    for b in report.bounds.iter().filter(|b| b.applicable) {
        if let Some(bound) = b.bound_radians {
            let margin = bound - report.theta_exact;
            if margin < -report.margin_tolerance {
                out.push(Violation::BoundExceeded {
                    kind: b.kind,
                    bound,
                    exact: report.theta_exact,
                    margin,
                });
            }
        } else {
            let holds = match b.kind {
                BoundKind::GenericConstantThreshold => report.norm_p_minus_q < 1.0,
                _ => {
                    offdiag_disjoint
                        && omega.len() == report.sigma_indices.len()
                        && report.dist_omega_big_omega > 0.0
                }
            };
            if !holds {
                out.push(Violation::GuaranteeFailed {
                    kind: b.kind,
                    guarantee: b.kind.guarantee().unwrap_or(""),
                });
            }
        }
    }

    for check in &report.enclosure_checks {
        let again = EnclosureCheck::evaluate(
            check.interval.clone(),
            check.expectation,
            &report.spectrum_h,
            &omega,
            check.slack,
        );
        if !again.pass {
            out.push(Violation::EnclosureFailed {
                label: again.interval.label,
                expectation: again.expectation,
                offending: again.offending,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn real(rows: &[&[f64]]) -> HermitianOperator {
        let n = rows.len();
        HermitianOperator::from_real(&DMatrix::from_fn(n, n, |i, j| rows[i][j])).unwrap()
    }

    #[test]
    fn block_diagonal_v_has_no_offdiagonal_part() {
        let p = OrthogonalProjection::coordinate(3, &[0]);
        let v = real(&[&[0.3, 0.0, 0.0], &[0.0, 0.1, 0.2], &[0.0, 0.2, -0.4]]);
        let split = offdiagonal_split(&v, &p).unwrap();
        assert!(split.offdiagonal.max_abs_entry() < 1e-16);
        assert_eq!(split.diagonal, v);
    }

    #[test]
    fn cross_block_v_is_purely_offdiagonal() {
        let p = OrthogonalProjection::coordinate(3, &[0]);
        let v = real(&[&[0.0, 0.5, -0.2], &[0.5, 0.0, 0.0], &[-0.2, 0.0, 0.0]]);
        let split = offdiagonal_split(&v, &p).unwrap();
        assert!(split.diagonal.max_abs_entry() < 1e-16);
        assert_eq!(split.offdiagonal, v);
        assert!(split.anticommutator_residual < 1e-15);
        assert!(is_offdiagonal(&v, &p, 1e-10).unwrap().0);
    }

    #[test]
    fn identity_is_not_offdiagonal() {
        let p = OrthogonalProjection::coordinate(3, &[0, 1]);
        let (flag, residual) = is_offdiagonal(&HermitianOperator::identity(3), &p, 1e-10).unwrap();
        assert!(!flag);
        assert!((residual - 2.0).abs() < 1e-14);
    }

    #[test]
    fn zero_is_offdiagonal() {
        let p = OrthogonalProjection::coordinate(2, &[0]);
        assert_eq!(is_offdiagonal(&HermitianOperator::zeros(2), &p, 1e-10).unwrap(), (true, 0.0));
    }

    #[test]
    fn dimension_mismatch() {
        let p = OrthogonalProjection::coordinate(2, &[0]);
        assert!(matches!(
            offdiagonal_split(&HermitianOperator::zeros(3), &p),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            analyze(&HermitianOperator::zeros(2), &HermitianOperator::zeros(3), &[0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sharp_tan2theta_instance() {
        let a = HermitianOperator::diagonal(&[0.0, 1.0]);
        let v = real(&[&[0.0, 0.5], &[0.5, 0.0]]);
        let r = analyze(&a, &v, &[0]).unwrap();
        assert!(r.offdiagonal);
        assert!((r.theta_exact - PI / 8.0).abs() < 1e-12);
        let tan2 = r.bound(BoundKind::Tan2ThetaOffdiag);
        assert!(tan2.margin.unwrap().abs() < 1e-12);
        assert!((r.spectrum_h[0] - (0.0 - r.epsilon_v)).abs() < 1e-15);
        assert!(r.certified, "{:?}", r.violations);
        assert_eq!(r.assignment, Assignment::Neighborhood);
        assert!(r.enclosure_checks.len() >= 2);
    }

    #[test]
    fn sharp_sin2theta_instance() {
        let s = 3f64.sqrt() / 2.0;
        let a = HermitianOperator::diagonal(&[0.0, 1.0]);
        let v = real(&[&[0.125, 0.25 * s], &[0.25 * s, -0.125]]);
        let r = analyze(&a, &v, &[0]).unwrap();
        assert!(!r.offdiagonal);
        assert!((r.norm_v - 0.25).abs() < 1e-15);
        assert!((r.theta_exact - PI / 12.0).abs() < 1e-12);
        assert!(r.bound(BoundKind::Sin2Theta).margin.unwrap().abs() < 1e-12);
        assert!(r.certified);
        let overlap = r.ground_state_overlap.unwrap();
        assert!((overlap.acos() - r.theta_exact).abs() < 1e-12);
    }

    #[test]
    fn zero_perturbation() {
        let a = HermitianOperator::diagonal(&[0.0, 1.0, 3.0]);
        let r = analyze(&a, &HermitianOperator::zeros(3), &[0, 1]).unwrap();
        assert_eq!(r.theta_exact, 0.0);
        for b in r.bounds.iter().filter(|b| b.bound_radians.is_some()) {
            assert_eq!(b.margin, b.bound_radians);
        }
        assert!(r.certified);
    }

    #[test]
    fn ambiguity_blocks_general_certification() {
        let a = HermitianOperator::diagonal(&[0.0, 1.0]);
        let s = 3f64.sqrt() / 2.0;
        let v = real(&[&[0.5 * 0.48, 0.48 * s], &[0.48 * s, -0.5 * 0.48]]);
        let mut r = analyze(&a, &v, &[0]).unwrap();
        assert!(r.certified);
        assert!(verify_report(&r).is_empty());
        r.components.ambiguous.push(0.5);
        r.components.ambiguous_indices.push(0);
        let violations = verify_report(&r);
        assert_eq!(violations.len(), 1);
        assert_eq!(
            violations[0],
            Violation::DisjointnessUnavailable {
                kinds: vec![BoundKind::Sin2Theta]
            }
        );
        assert!(violations[0].to_string().contains("disjointness unavailable"));
    }

    #[test]
    fn corrupted_theta_is_reported() {
        let a = HermitianOperator::diagonal(&[0.0, 1.0]);
        let v = real(&[&[0.0, 0.2], &[0.2, 0.0]]);
        let mut r = analyze(&a, &v, &[0]).unwrap();
        assert!(r.certified);
        let bound = r.bound(BoundKind::Sin2Theta).bound_radians.unwrap();
        r.theta_exact = bound + 0.01;
        let violations = verify_report(&r);
        assert!(violations.iter().any(|v| matches!(
            v,
            Violation::BoundExceeded { kind: BoundKind::Sin2Theta, margin, .. } if (*margin + 0.01).abs() < 1e-12
        )));
    }

    #[test]
    fn large_offdiagonal_coupling_uses_ordering() {
        let a = HermitianOperator::diagonal(&[0.0, 0.1, 1.0, 1.5]);
        let v = real(&[
            &[0.0, 0.0, 2.0, 1.0],
            &[0.0, 0.0, -1.0, 3.0],
            &[2.0, -1.0, 0.0, 0.0],
            &[1.0, 3.0, 0.0, 0.0],
        ]);
        let r = analyze(&a, &v, &[0, 1]).unwrap();
        assert!(r.offdiagonal);
        assert!(r.x > 3.0);
        assert_ne!(r.assignment, Assignment::Nearest);
        assert!(r.certified, "{:?}", r.violations);
        // Nothing from H inside (0.1, 1.0).
        assert!(r.spectrum_h.iter().all(|&e| !(0.1 < e && e < 1.0)));
    }

    #[test]
    fn report_serializes_with_stable_keys() {
        let a = HermitianOperator::diagonal(&[0.0, 1.0]);
        let v = real(&[&[0.0, 0.5], &[0.5, 0.0]]);
        let r = analyze(&a, &v, &[0]).unwrap();
        let json = serde_json::to_value(&r).unwrap();
        for key in ["theta_exact", "d", "D", "disposition", "bounds", "enclosure_checks", "certified", "dist_omega_Omega"] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
        assert_eq!(json["disposition"], "subordinated");
        assert_eq!(json["bounds"][3]["kind"], "tan2theta_offdiag");
        assert_eq!(json["bounds"][3]["condition_threshold"], "inf");
    }
}
