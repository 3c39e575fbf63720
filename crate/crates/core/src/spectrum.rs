//! The partition `spec(A) = sigma ∪ Sigma` and the perturbed components.

use serde::Serialize;

use crate::eigen::EigenDecomposition;
use crate::projection::{check_no_split, normalize_indices};
use crate::{Error, Result, Tolerances};

/// Mutual arrangement of `sigma` and `Sigma` on the real line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Disposition {
    /// `max(sigma) < min(Sigma)` or `max(Sigma) < min(sigma)`.
    Subordinated,
    /// `sigma` lies in a bounded gap of `Sigma`.
    SigmaInFiniteGap,
    /// `Sigma` lies in a bounded gap of `sigma`.
    ComplementInFiniteGap,
    Generic,
}

impl Disposition {
    pub const ALL: [Disposition; 4] = [
        Disposition::Subordinated,
        Disposition::SigmaInFiniteGap,
        Disposition::ComplementInFiniteGap,
        Disposition::Generic,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Disposition::Subordinated => "subordinated",
            Disposition::SigmaInFiniteGap => "sigma_in_finite_gap",
            Disposition::ComplementInFiniteGap => "complement_in_finite_gap",
            Disposition::Generic => "generic",
        }
    }

    /// One of the two sets lies in a finite or infinite gap of the other.
    pub fn is_gap(self) -> bool {
        !matches!(self, Disposition::Generic)
    }
}

impl std::fmt::Display for Disposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Disposition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Disposition::ALL
            .into_iter()
            .find(|d| d.as_str() == s)
            .ok_or_else(|| Error::ConfigInvalid(format!("unknown disposition '{s}'")))
    }
}

/// The finite gap `(max Sigma_-, min Sigma_+)` that contains `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiniteGap {
    pub lower: f64,
    pub upper: f64,
}

impl FiniteGap {
    /// `D = min(Sigma_+) - max(Sigma_-)`.
    pub fn length(&self) -> f64 {
        self.upper - self.lower
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralPartition {
    eigenvalues: Vec<f64>,
    sigma: Vec<usize>,
    complement: Vec<usize>,
    d: f64,
    disposition: Disposition,
    gap: Option<FiniteGap>,
}

impl SpectralPartition {
    pub fn from_values(values: &[f64], sigma_indices: &[usize], tol: &Tolerances) -> Result<Self> {
        debug_assert!(values.windows(2).all(|w| w[0] <= w[1]));
        let n = values.len();
        let sigma = normalize_indices(sigma_indices, n)?;
        check_no_split(values, &sigma, tol.degeneracy)?;

        let mut member = vec![false; n];
        for &i in &sigma {
            member[i] = true;
        }
        let complement: Vec<usize> = (0..n).filter(|&i| !member[i]).collect();

        // Values are sorted, so the closest (s, t) pair is always adjacent.
        let d = (1..n)
            .filter(|&i| member[i] != member[i - 1])
            .map(|i| values[i] - values[i - 1])
            .fold(f64::INFINITY, f64::min);
        let scale = 1.0 + values.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        if !(d > tol.degeneracy * scale) {
            return Err(Error::ZeroSeparation { d });
        }

        // Runs of equal membership along the sorted spectrum decide the
        // disposition: d > 0 rules out interleaving within a tie.
        let mut runs: Vec<bool> = Vec::new();
        for &m in &member {
            if runs.last() != Some(&m) {
                runs.push(m);
            }
        }
        let disposition = match runs.as_slice() {
            [_, _] => Disposition::Subordinated,
            [false, true, false] => Disposition::SigmaInFiniteGap,
            [true, false, true] => Disposition::ComplementInFiniteGap,
            _ => Disposition::Generic,
        };
        let gap = (disposition == Disposition::SigmaInFiniteGap).then(|| FiniteGap {
            lower: values[sigma[0] - 1],
            upper: values[sigma[sigma.len() - 1] + 1],
        });

        Ok(Self {
            eigenvalues: values.to_vec(),
            sigma,
            complement,
            d,
            disposition,
            gap,
        })
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn sigma_indices(&self) -> &[usize] {
        &self.sigma
    }

    pub fn complement_indices(&self) -> &[usize] {
        &self.complement
    }

    pub fn sigma_values(&self) -> Vec<f64> {
        self.sigma.iter().map(|&i| self.eigenvalues[i]).collect()
    }

    pub fn complement_values(&self) -> Vec<f64> {
        self.complement.iter().map(|&i| self.eigenvalues[i]).collect()
    }

    /// `dist(sigma, Sigma)`.
    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn disposition(&self) -> Disposition {
        self.disposition
    }

    pub fn gap(&self) -> Option<FiniteGap> {
        self.gap
    }

    /// `D`, present only for [`Disposition::SigmaInFiniteGap`].
    pub fn gap_length(&self) -> Option<f64> {
        self.gap.map(|g| g.length())
    }

    pub fn sigma_min(&self) -> f64 {
        self.eigenvalues[self.sigma[0]]
    }

    pub fn sigma_max(&self) -> f64 {
        self.eigenvalues[*self.sigma.last().unwrap()]
    }

    pub fn complement_min(&self) -> f64 {
        self.eigenvalues[self.complement[0]]
    }

    pub fn complement_max(&self) -> f64 {
        self.eigenvalues[*self.complement.last().unwrap()]
    }

    /// For subordinated partitions: whether `sigma` is the lower part.
    pub fn sigma_below(&self) -> bool {
        self.sigma[0] == 0
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub(crate) fn dist_to_sigma(&self, x: f64) -> f64 {
        dist_to(x, self.sigma.iter().map(|&i| self.eigenvalues[i]))
    }

    pub(crate) fn dist_to_complement(&self, x: f64) -> f64 {
        dist_to(x, self.complement.iter().map(|&i| self.eigenvalues[i]))
    }
}

fn dist_to(x: f64, set: impl Iterator<Item = f64>) -> f64 {
    set.map(|s| (x - s).abs()).fold(f64::INFINITY, f64::min)
}

/// Builds the partition for `eig.values()` with the default tolerances.
pub fn build_partition(eig: &EigenDecomposition, sigma_indices: &[usize]) -> Result<SpectralPartition> {
    SpectralPartition::from_values(eig.values(), sigma_indices, &Tolerances::default())
}

/// Indices of the eigenvalues inside the closed interval `[lo, hi]`.
pub fn sigma_from_interval(values: &[f64], lo: f64, hi: f64) -> Vec<usize> {
    values
        .iter()
        .enumerate()
        .filter(|(_, &v)| lo <= v && v <= hi)
        .map(|(i, _)| i)
        .collect()
}

/// The perturbed spectrum split into the part near `sigma` (`omega`), the part
/// near `Sigma` (`Omega`) and the part near both.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PerturbedComponents {
    /// Neighbourhood radius used for the assignment.
    pub radius: f64,
    pub omega: Vec<f64>,
    pub omega_indices: Vec<usize>,
    #[serde(rename = "Omega")]
    pub big_omega: Vec<f64>,
    #[serde(rename = "Omega_indices")]
    pub big_omega_indices: Vec<usize>,
    pub ambiguous: Vec<f64>,
    pub ambiguous_indices: Vec<usize>,
    /// Members of `Omega` that lie in neither neighbourhood.
    pub escaped_indices: Vec<usize>,
    #[serde(rename = "dist_omega_Omega", serialize_with = "crate::io::float_or_inf")]
    pub dist_omega_big_omega: f64,
}

impl PerturbedComponents {
    fn from_labels(spec_h: &[f64], radius: f64, labels: &[Label]) -> Self {
        let mut out = PerturbedComponents {
            radius,
            omega: vec![],
            omega_indices: vec![],
            big_omega: vec![],
            big_omega_indices: vec![],
            ambiguous: vec![],
            ambiguous_indices: vec![],
            escaped_indices: vec![],
            dist_omega_big_omega: f64::INFINITY,
        };
        for (i, (&value, label)) in spec_h.iter().zip(labels).enumerate() {
            match label {
                Label::Sigma => {
                    out.omega.push(value);
                    out.omega_indices.push(i);
                }
                Label::Complement | Label::Escaped => {
                    out.big_omega.push(value);
                    out.big_omega_indices.push(i);
                    if *label == Label::Escaped {
                        out.escaped_indices.push(i);
                    }
                }
                Label::Both => {
                    out.ambiguous.push(value);
                    out.ambiguous_indices.push(i);
                }
            }
        }
        out.dist_omega_big_omega = out
            .omega
            .iter()
            .flat_map(|a| out.big_omega.iter().map(move |b| (a - b).abs()))
            .fold(f64::INFINITY, f64::min);
        out
    }

    /// No ambiguous and no escaped eigenvalues.
    pub fn is_clean(&self) -> bool {
        self.ambiguous.is_empty() && self.escaped_indices.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    Sigma,
    Complement,
    Both,
    Escaped,
}

/// Assigns each perturbed eigenvalue by membership in the closed
/// `norm_v`-neighbourhoods of `sigma` and `Sigma`.
pub fn perturbed_components(
    spec_h: &[f64],
    partition: &SpectralPartition,
    norm_v: f64,
) -> PerturbedComponents {
    perturbed_components_with(spec_h, partition, norm_v, Tolerances::default().neighborhood)
}

pub fn perturbed_components_with(
    spec_h: &[f64],
    partition: &SpectralPartition,
    radius: f64,
    slack: f64,
) -> PerturbedComponents {
    let labels: Vec<Label> = spec_h
        .iter()
        .map(|&x| {
            let reach = radius + slack * (1.0 + x.abs());
            let near_sigma = partition.dist_to_sigma(x) <= reach;
            let near_complement = partition.dist_to_complement(x) <= reach;
            match (near_sigma, near_complement) {
                (true, false) => Label::Sigma,
                (false, true) => Label::Complement,
                (true, true) => Label::Both,
                (false, false) => Label::Escaped,
            }
        })
        .collect();
    PerturbedComponents::from_labels(spec_h, radius, &labels)
}

/// Assigns each perturbed eigenvalue to the nearer of the two sets; exact
/// ties are ambiguous.
pub fn nearest_components(spec_h: &[f64], partition: &SpectralPartition) -> PerturbedComponents {
    let labels: Vec<Label> = spec_h
        .iter()
        .map(|&x| {
            let a = partition.dist_to_sigma(x);
            let b = partition.dist_to_complement(x);
            if a < b {
                Label::Sigma
            } else if b < a {
                Label::Complement
            } else {
                Label::Both
            }
        })
        .collect();
    PerturbedComponents::from_labels(spec_h, f64::NAN, &labels)
}

/// Assigns the perturbed eigenvalue at sorted position `i` to the set that
/// owns position `i` in `spec(A)`. This is the assignment by continuity
/// whenever the gaps between `sigma` and `Sigma` stay open along `A + tV`.
pub fn ordered_components(spec_h: &[f64], partition: &SpectralPartition) -> PerturbedComponents {
    let mut labels = vec![Label::Complement; spec_h.len()];
    for &i in partition.sigma_indices() {
        labels[i] = Label::Sigma;
    }
    PerturbedComponents::from_labels(spec_h, f64::NAN, &labels)
}
