//! Estimating functions `M(x)`, their thresholds in `x = ||V|| / d`, the
//! off-diagonal energy shift `eps_V` and the spectral enclosures built on it.
//!
//! All angles are radians.

use std::f64::consts::{FRAC_1_PI, PI, SQRT_2};

use serde::Serialize;

use crate::spectrum::{Disposition, SpectralPartition};
use crate::{Error, Result};

/// `c* = 1/2` for the gap dispositions.
pub const SIN2THETA_THRESHOLD: f64 = 0.5;
/// `||V|| <= d / pi` for the generic `arcsin(pi x) / 2` bound.
pub const GENERIC_PI_THRESHOLD: f64 = FRAC_1_PI;
/// Lower estimate of the generic optimal constant, guaranteeing `theta < pi/2`.
pub const GENERIC_CONSTANT_THRESHOLD: f64 = 0.454839;
/// Universal gap-non-closing threshold for `sigma` in a finite gap, off-diagonal `V`.
pub const TANTHETA_THRESHOLD: f64 = SQRT_2;
/// `sqrt(3)/2`: off-diagonal `V` cannot close the gaps between `sigma` and `Sigma`.
pub const OFFDIAG_GENERIC_THRESHOLD: f64 = 0.866_025_403_784_438_6;
/// Lower estimate of the generic optimal constant for off-diagonal `V`.
/// Documented only; no check in the crate depends on it.
pub const OFFDIAG_GENERIC_CONSTANT: f64 = 0.675989;

fn check_domain(function: &'static str, x: f64, ok: bool) -> Result<()> {
    if ok && x.is_finite() {
        Ok(())
    } else {
        Err(Error::DomainViolation { function, value: x })
    }
}

/// `arcsin(2x) / 2` on `[0, 1/2)`.
pub fn m_sin2theta(x: f64) -> Result<f64> {
    check_domain("M_sin2theta", x, (0.0..SIN2THETA_THRESHOLD).contains(&x))?;
    Ok(0.5 * (2.0 * x).asin())
}

/// `arcsin(pi x) / 2` on `[0, 1/pi]`.
pub fn m_generic_pi(x: f64) -> Result<f64> {
    check_domain("M_generic_pi", x, (0.0..=GENERIC_PI_THRESHOLD).contains(&x))?;
    Ok(0.5 * (PI * x).min(1.0).asin())
}

/// `arctan(2x) / 2` on `[0, inf)`.
pub fn m_tan2theta(x: f64) -> Result<f64> {
    check_domain("M_tan2theta", x, x >= 0.0)?;
    Ok(0.5 * (2.0 * x).atan())
}

/// `arctan(x)` on `[0, sqrt 2)`.
pub fn m_tantheta(x: f64) -> Result<f64> {
    check_domain("M_tantheta", x, (0.0..TANTHETA_THRESHOLD).contains(&x))?;
    Ok(x.atan())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShiftBound {
    pub epsilon_v: f64,
    pub norm_v: f64,
    pub d: f64,
}

/// `eps_V = ||V|| tan(arctan(2 ||V|| / d) / 2)`.
pub fn epsilon_shift(norm_v: f64, d: f64) -> Result<ShiftBound> {
    check_domain("epsilon_shift(d)", d, d > 0.0)?;
    check_domain("epsilon_shift(norm_v)", norm_v, norm_v >= 0.0)?;
    let epsilon_v = norm_v * (0.5 * (2.0 * norm_v / d).atan()).tan();
    debug_assert!(
        (epsilon_v - epsilon_shift_closed_form(norm_v, d)).abs() <= 1e-12 * epsilon_v.max(1.0),
        "eps_V disagrees with its closed form"
    );
    Ok(ShiftBound {
        epsilon_v,
        norm_v,
        d,
    })
}

/// `(d/2) (sqrt(1 + 4 (||V||/d)^2) - 1)`.
pub fn epsilon_shift_closed_form(norm_v: f64, d: f64) -> f64 {
    let x = norm_v / d;
    0.5 * d * ((1.0 + 4.0 * x * x).sqrt() - 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    #[serde(rename = "sin2theta")]
    Sin2Theta,
    GenericPi,
    #[serde(rename = "tan2theta_offdiag")]
    Tan2ThetaOffdiag,
    #[serde(rename = "tantheta_offdiag_gap")]
    TanThetaOffdiagGap,
    GenericOffdiagThreshold,
    GenericConstantThreshold,
}

impl BoundKind {
    pub const ALL: [BoundKind; 6] = [
        BoundKind::Sin2Theta,
        BoundKind::GenericPi,
        BoundKind::GenericConstantThreshold,
        BoundKind::Tan2ThetaOffdiag,
        BoundKind::TanThetaOffdiagGap,
        BoundKind::GenericOffdiagThreshold,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Sin2Theta => "sin2theta",
            BoundKind::GenericPi => "generic_pi",
            BoundKind::Tan2ThetaOffdiag => "tan2theta_offdiag",
            BoundKind::TanThetaOffdiagGap => "tantheta_offdiag_gap",
            BoundKind::GenericOffdiagThreshold => "generic_offdiag_threshold",
            BoundKind::GenericConstantThreshold => "generic_constant_threshold",
        }
    }

    pub fn requires_offdiagonal(self) -> bool {
        matches!(
            self,
            BoundKind::Tan2ThetaOffdiag
                | BoundKind::TanThetaOffdiagGap
                | BoundKind::GenericOffdiagThreshold
        )
    }

    /// Kinds that certify a condition but carry no estimating function.
    pub fn condition_only(self) -> bool {
        matches!(
            self,
            BoundKind::GenericConstantThreshold | BoundKind::GenericOffdiagThreshold
        )
    }

    pub fn admits(self, disposition: Disposition) -> bool {
        match self {
            BoundKind::Sin2Theta => disposition.is_gap(),
            BoundKind::Tan2ThetaOffdiag => disposition == Disposition::Subordinated,
            BoundKind::TanThetaOffdiagGap => disposition == Disposition::SigmaInFiniteGap,
            BoundKind::GenericPi
            | BoundKind::GenericConstantThreshold
            | BoundKind::GenericOffdiagThreshold => true,
        }
    }

    /// What a condition-only kind guarantees.
    pub fn guarantee(self) -> Option<&'static str> {
        match self {
            BoundKind::GenericConstantThreshold => Some("||P - Q|| < 1 (theta < pi/2)"),
            BoundKind::GenericOffdiagThreshold => Some("dist(omega, Omega) > 0"),
            _ => None,
        }
    }
}

impl std::fmt::Display for BoundKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One entry of the bound catalog evaluated at `x = ||V|| / d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundEvaluation {
    pub kind: BoundKind,
    /// Disposition and perturbation class match and `x` is below the threshold.
    pub applicable: bool,
    /// Disposition and perturbation class match, regardless of `x`.
    pub requirement_met: bool,
    /// Largest admissible `x`; `+inf` when unrestricted.
    #[serde(serialize_with = "crate::io::float_or_inf")]
    pub condition_threshold: f64,
    /// `sqrt 2` reported next to the partition-specific `sqrt(D/d)`.
    pub universal_threshold: Option<f64>,
    pub x: f64,
    pub bound_radians: Option<f64>,
    pub exact_radians: Option<f64>,
    /// `bound - exact`.
    pub margin: Option<f64>,
    pub guarantee: Option<&'static str>,
    pub guarantee_holds: Option<bool>,
}

impl BoundEvaluation {
    fn new(kind: BoundKind, requirement_met: bool, threshold: f64, inclusive: bool, x: f64) -> Self {
        let below = if inclusive { x <= threshold } else { x < threshold };
        Self {
            kind,
            applicable: requirement_met && below,
            requirement_met,
            condition_threshold: threshold,
            universal_threshold: None,
            x,
            bound_radians: None,
            exact_radians: None,
            margin: None,
            guarantee: kind.guarantee(),
            guarantee_holds: None,
        }
    }

    /// Records the exact angle and the resulting margin.
    pub fn with_exact(mut self, theta: f64) -> Self {
        if let Some(bound) = self.bound_radians {
            self.exact_radians = Some(theta);
            self.margin = Some(bound - theta);
        }
        self
    }
}

/// Evaluates every catalog entry for the given partition, perturbation class
/// and `x`. Exact values are left empty.
pub fn applicability(partition: &SpectralPartition, offdiagonal: bool, x: f64) -> Vec<BoundEvaluation> {
    let disposition = partition.disposition();
    let structural = |kind: BoundKind| kind.admits(disposition) && (offdiagonal || !kind.requires_offdiagonal());

    let mut out = Vec::with_capacity(BoundKind::ALL.len());
    for kind in BoundKind::ALL {
        let ok = structural(kind);
        let mut eval = match kind {
            BoundKind::Sin2Theta => BoundEvaluation::new(kind, ok, SIN2THETA_THRESHOLD, false, x),
            BoundKind::GenericPi => BoundEvaluation::new(kind, ok, GENERIC_PI_THRESHOLD, true, x),
            BoundKind::GenericConstantThreshold => {
                BoundEvaluation::new(kind, ok, GENERIC_CONSTANT_THRESHOLD, false, x)
            }
            BoundKind::Tan2ThetaOffdiag => BoundEvaluation::new(kind, ok, f64::INFINITY, false, x),
            BoundKind::TanThetaOffdiagGap => {
                let threshold = partition
                    .gap_length()
                    .map(|gap| (gap / partition.d()).sqrt())
                    .unwrap_or(TANTHETA_THRESHOLD);
                let mut e = BoundEvaluation::new(kind, ok, threshold, false, x);
                e.universal_threshold = Some(TANTHETA_THRESHOLD);
                e
            }
            BoundKind::GenericOffdiagThreshold => {
                BoundEvaluation::new(kind, ok, OFFDIAG_GENERIC_THRESHOLD, false, x)
            }
        };
        if eval.applicable {
            eval.bound_radians = match kind {
                BoundKind::Sin2Theta => m_sin2theta(x).ok(),
                BoundKind::GenericPi => m_generic_pi(x).ok(),
                BoundKind::Tan2ThetaOffdiag => m_tan2theta(x).ok(),
                // Certification runs up to sqrt(D/d) >= sqrt 2; arctan(x) is
                // kept as the estimate on the whole admissible range.
                BoundKind::TanThetaOffdiagGap => Some(m_tantheta(x).unwrap_or_else(|_| x.atan())),
                BoundKind::GenericConstantThreshold | BoundKind::GenericOffdiagThreshold => None,
            };
        }
        out.push(eval);
    }
    out
}

/// A labelled interval. Whether it is open or closed depends on whether it
/// sits in [`EnclosureSet::confined`] (closed) or [`EnclosureSet::forbidden`]
/// (open).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Interval {
    pub label: String,
    #[serde(serialize_with = "crate::io::float_or_inf")]
    pub lo: f64,
    #[serde(serialize_with = "crate::io::float_or_inf")]
    pub hi: f64,
}

impl Interval {
    fn new(label: impl Into<String>, lo: f64, hi: f64) -> Self {
        Self {
            label: label.into(),
            lo,
            hi,
        }
    }

    pub fn contains_closed(&self, x: f64, slack: f64) -> bool {
        self.lo - slack <= x && x <= self.hi + slack
    }

    pub fn contains_open(&self, x: f64, slack: f64) -> bool {
        self.lo + slack < x && x < self.hi - slack
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct EnclosureSet {
    /// Closed intervals that must contain every `omega` eigenvalue.
    pub confined: Vec<Interval>,
    /// Open intervals that must contain no eigenvalue of `H`.
    pub forbidden: Vec<Interval>,
}

impl EnclosureSet {
    fn forbid(&mut self, label: &str, lo: f64, hi: f64) {
        if lo < hi {
            self.forbidden.push(Interval::new(label, lo, hi));
        }
    }

    fn negated(self) -> Self {
        let flip = |i: Interval| Interval::new(i.label, -i.hi, -i.lo);
        Self {
            confined: self.confined.into_iter().map(flip).collect(),
            forbidden: self.forbidden.into_iter().map(flip).collect(),
        }
    }
}

/// Enclosures for an off-diagonal perturbation when `sigma` is the group of
/// lowest levels `E_0 <= ... <= E_n` below `min(Sigma)`.
pub fn enclosures_lowest_levels(levels: &[f64], min_complement: f64, shift: &ShiftBound) -> Result<EnclosureSet> {
    let (Some(&e0), Some(&en)) = (levels.first(), levels.last()) else {
        return Err(Error::EmptySet);
    };
    if !(en < min_complement) || levels.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::DispositionMismatch {
            expected: "sigma = lowest levels below min(Sigma)",
            found: "levels not below min(Sigma)",
        });
    }
    let eps = shift.epsilon_v;
    let mut set = EnclosureSet {
        confined: vec![Interval::new("omega", e0 - eps, en)],
        forbidden: vec![],
    };
    set.forbid("gap (max sigma, min Sigma)", en, min_complement);
    set.forbid("below spectrum", f64::NEG_INFINITY, e0 - eps);
    Ok(set)
}

/// Mirror image of [`enclosures_lowest_levels`] for `sigma` above `Sigma`.
pub fn enclosures_highest_levels(levels: &[f64], max_complement: f64, shift: &ShiftBound) -> Result<EnclosureSet> {
    let mirrored: Vec<f64> = levels.iter().rev().map(|v| -v).collect();
    let mut set = enclosures_lowest_levels(&mirrored, -max_complement, shift)?.negated();
    for i in set.forbidden.iter_mut() {
        match i.label.as_str() {
            "gap (max sigma, min Sigma)" => i.label = "gap (max Sigma, min sigma)".into(),
            "below spectrum" => i.label = "above spectrum".into(),
            _ => {}
        }
    }
    Ok(set)
}

/// Enclosures for an off-diagonal perturbation when `sigma` lies in the
/// finite gap `(max Sigma_-, min Sigma_+)` and `||V|| < sqrt(d D)`.
pub fn enclosures_finite_gap(partition: &SpectralPartition, shift: &ShiftBound) -> Result<EnclosureSet> {
    let gap = partition.gap().ok_or(Error::DispositionMismatch {
        expected: Disposition::SigmaInFiniteGap.as_str(),
        found: partition.disposition().as_str(),
    })?;
    let limit = (partition.d() * gap.length()).sqrt();
    if !(shift.norm_v < limit) {
        return Err(Error::ConditionViolated(format!(
            "||V|| = {} is not below sqrt(d D) = {}",
            shift.norm_v, limit
        )));
    }
    let eps = shift.epsilon_v;
    let lo = partition.sigma_min() - eps;
    let hi = partition.sigma_max() + eps;
    let e0 = partition.eigenvalues()[0];
    let mut set = EnclosureSet {
        confined: vec![Interval::new("omega", lo, hi)],
        forbidden: vec![],
    };
    set.forbid("(max Sigma_-, min sigma - eps_V)", gap.lower, lo);
    set.forbid("(max sigma + eps_V, min Sigma_+)", hi, gap.upper);
    set.forbid("below spectrum", f64::NEG_INFINITY, e0 - eps);
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;
    use crate::Tolerances;

    fn partition(values: &[f64], sigma: &[usize]) -> SpectralPartition {
        SpectralPartition::from_values(values, sigma, &Tolerances::default()).unwrap()
    }

    #[test]
    fn sin2theta_values() {
        assert_eq!(m_sin2theta(0.0).unwrap(), 0.0);
        assert!((m_sin2theta(0.25).unwrap() - PI / 12.0).abs() < 1e-15);
        assert!((m_sin2theta(0.25).unwrap() - 0.26180).abs() < 1e-5);
        assert!(matches!(m_sin2theta(0.5), Err(Error::DomainViolation { .. })));
        assert!(m_sin2theta(-1e-300).is_err());
    }

    #[test]
    fn generic_pi_values() {
        assert_eq!(m_generic_pi(0.0).unwrap(), 0.0);
        assert!((m_generic_pi(FRAC_1_PI).unwrap() - FRAC_PI_4).abs() < 1e-15);
        // arcsin(0.2 pi) / 2 from the Taylor series of arcsin.
        let z = 0.2 * PI;
        let mut term = z;
        let mut series = z;
        for k in 1..200 {
            let k = k as f64;
            term *= z * z * (2.0 * k - 1.0) * (2.0 * k - 1.0) / ((2.0 * k) * (2.0 * k + 1.0));
            series += term;
        }
        assert!((m_generic_pi(0.2).unwrap() - 0.5 * series).abs() < 1e-14);
        assert!((m_generic_pi(0.2).unwrap() - 0.339695).abs() < 1e-6);
        assert!(m_generic_pi(FRAC_1_PI + 1e-12).is_err());
    }

    #[test]
    fn tan2theta_values() {
        assert_eq!(m_tan2theta(0.0).unwrap(), 0.0);
        assert!((m_tan2theta(0.5).unwrap() - PI / 8.0).abs() < 1e-15);
        assert!(m_tan2theta(1e6).unwrap() < FRAC_PI_4);
        assert!(m_tan2theta(-0.1).is_err());
    }

    #[test]
    fn tantheta_values() {
        assert_eq!(m_tantheta(0.0).unwrap(), 0.0);
        assert!((m_tantheta(1.0).unwrap() - FRAC_PI_4).abs() < 1e-15);
        assert!(m_tantheta(SQRT_2).is_err());
    }

    #[test]
    fn epsilon_shift_values() {
        assert_eq!(epsilon_shift(0.0, 1.0).unwrap().epsilon_v, 0.0);
        let e = epsilon_shift(0.5, 1.0).unwrap().epsilon_v;
        assert!((e - (0.5f64.sqrt() - 0.5)).abs() < 1e-15);
        assert!((e - 0.20711).abs() < 1e-5);
        assert!((epsilon_shift(SQRT_2, 1.0).unwrap().epsilon_v - 1.0).abs() < 1e-14);
        assert!(epsilon_shift(1.0, 0.0).is_err());
        assert!(epsilon_shift(-1.0, 1.0).is_err());
    }

    #[test]
    fn threshold_constants_pinned() {
        assert_eq!(format!("{:.12}", SIN2THETA_THRESHOLD), "0.500000000000");
        assert_eq!(format!("{:.12}", GENERIC_PI_THRESHOLD), "0.318309886184");
        assert_eq!(format!("{:.12}", GENERIC_CONSTANT_THRESHOLD), "0.454839000000");
        assert_eq!(format!("{:.12}", TANTHETA_THRESHOLD), "1.414213562373");
        assert_eq!(format!("{:.12}", OFFDIAG_GENERIC_THRESHOLD), "0.866025403784");
        assert_eq!(format!("{:.12}", OFFDIAG_GENERIC_CONSTANT), "0.675989000000");
        assert_eq!(OFFDIAG_GENERIC_THRESHOLD, 3f64.sqrt() / 2.0);
    }

    fn find(evals: &[BoundEvaluation], kind: BoundKind) -> &BoundEvaluation {
        evals.iter().find(|e| e.kind == kind).unwrap()
    }

    #[test]
    fn subordinated_offdiagonal_large_x() {
        let p = partition(&[0.0, 1.0, 2.0], &[0]);
        let evals = applicability(&p, true, 5.0);
        let tan2 = find(&evals, BoundKind::Tan2ThetaOffdiag);
        assert!(tan2.applicable);
        assert_eq!(tan2.bound_radians, Some(0.5 * 10f64.atan()));
        assert!(!find(&evals, BoundKind::Sin2Theta).applicable);
        assert!(find(&evals, BoundKind::Sin2Theta).requirement_met);
    }

    #[test]
    fn finite_gap_offdiagonal() {
        let p = partition(&[-1.0, 0.0, 1.0], &[1]);
        let evals = applicability(&p, true, 1.2);
        let tan = find(&evals, BoundKind::TanThetaOffdiagGap);
        assert!(tan.applicable);
        assert!((tan.condition_threshold - SQRT_2).abs() < 1e-15);
        assert_eq!(tan.bound_radians, Some(1.2f64.atan()));
        assert_eq!(tan.universal_threshold, Some(SQRT_2));
    }

    #[test]
    fn generic_general_perturbation() {
        let p = partition(&[0.0, 1.0, 2.0, 3.0], &[0, 2]);
        let evals = applicability(&p, false, 0.4);
        assert!(!find(&evals, BoundKind::GenericPi).applicable);
        assert!(find(&evals, BoundKind::GenericPi).requirement_met);
        assert!(find(&evals, BoundKind::GenericConstantThreshold).applicable);
        assert!(!find(&evals, BoundKind::Sin2Theta).requirement_met);
        assert!(!find(&evals, BoundKind::GenericOffdiagThreshold).requirement_met);
        assert_eq!(find(&evals, BoundKind::GenericConstantThreshold).bound_radians, None);
    }

    #[test]
    fn lowest_level_enclosures() {
        let set = enclosures_lowest_levels(&[0.0], 1.0, &epsilon_shift(0.5, 1.0).unwrap()).unwrap();
        let eps = 0.5f64.sqrt() - 0.5;
        assert!((set.confined[0].lo + eps).abs() < 1e-15);
        assert_eq!(set.confined[0].hi, 0.0);
        assert_eq!((set.forbidden[0].lo, set.forbidden[0].hi), (0.0, 1.0));

        let set = enclosures_lowest_levels(&[0.0, 0.5], 1.0, &epsilon_shift(0.0, 0.5).unwrap()).unwrap();
        assert_eq!((set.confined[0].lo, set.confined[0].hi), (0.0, 0.5));
        assert_eq!((set.forbidden[0].lo, set.forbidden[0].hi), (0.5, 1.0));
    }

    #[test]
    fn three_lowest_levels() {
        let d = 0.8;
        let shift = epsilon_shift(1.0, d).unwrap();
        let set = enclosures_lowest_levels(&[0.0, 0.1, 0.2], 1.0, &shift).unwrap();
        let expect = 0.5 * d * ((1.0 + 4.0 * (1.0f64 / d).powi(2)).sqrt() - 1.0);
        assert!((set.confined[0].lo + expect).abs() < 1e-14);
        assert_eq!(set.confined[0].hi, 0.2);
    }

    #[test]
    fn lowest_levels_need_subordination() {
        let shift = epsilon_shift(0.1, 1.0).unwrap();
        assert!(matches!(
            enclosures_lowest_levels(&[0.0, 2.0], 1.0, &shift),
            Err(Error::DispositionMismatch { .. })
        ));
    }

    #[test]
    fn highest_levels_mirror() {
        let shift = epsilon_shift(0.5, 1.0).unwrap();
        let set = enclosures_highest_levels(&[2.0], 1.0, &shift).unwrap();
        assert_eq!(set.confined[0].lo, 2.0);
        assert!((set.confined[0].hi - (2.0 + shift.epsilon_v)).abs() < 1e-15);
        assert_eq!((set.forbidden[0].lo, set.forbidden[0].hi), (1.0, 2.0));
        assert_eq!(set.forbidden[1].hi, f64::INFINITY);
    }

    #[test]
    fn finite_gap_enclosures() {
        let p = partition(&[-1.0, 0.0, 1.0], &[1]);
        let shift = epsilon_shift(0.5, p.d()).unwrap();
        let set = enclosures_finite_gap(&p, &shift).unwrap();
        let eps = shift.epsilon_v;
        assert!((set.confined[0].lo + 0.20711).abs() < 1e-5);
        assert_eq!((set.confined[0].lo, set.confined[0].hi), (-eps, eps));
        assert_eq!((set.forbidden[0].lo, set.forbidden[0].hi), (-1.0, -eps));
        assert_eq!((set.forbidden[1].lo, set.forbidden[1].hi), (eps, 1.0));

        let zero = enclosures_finite_gap(&p, &epsilon_shift(0.0, p.d()).unwrap()).unwrap();
        assert_eq!((zero.confined[0].lo, zero.confined[0].hi), (0.0, 0.0));
        assert_eq!((zero.forbidden[0].lo, zero.forbidden[0].hi), (-1.0, 0.0));
        assert_eq!((zero.forbidden[1].lo, zero.forbidden[1].hi), (0.0, 1.0));

        let at_limit = epsilon_shift((p.d() * 2.0).sqrt(), p.d()).unwrap();
        assert!(matches!(enclosures_finite_gap(&p, &at_limit), Err(Error::ConditionViolated(_))));

        let sub = partition(&[0.0, 1.0], &[0]);
        assert!(matches!(enclosures_finite_gap(&sub, &shift), Err(Error::DispositionMismatch { .. })));
    }
}
