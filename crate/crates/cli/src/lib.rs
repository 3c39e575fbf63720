//! Command implementations behind the `dkcert` binary.
//!
//! Each `cmd_*` function reads its inputs, writes its output files atomically
//! and returns the process exit code: 0 when everything is certified, 2 when
//! any violation was found. Input problems surface as errors (exit 1).

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use dkcert_core::generators::fewbody::FewBodyConfig;
use dkcert_core::generators::sharpness::{sharpness_search_with, SearchConfig, SearchResult};
use dkcert_core::generators::sweep::{sweep_with, EnsembleConfig, EnsembleRecord};
use dkcert_core::generators::few_body_hamiltonian;
use dkcert_core::io::{write_sweep_csv, MatrixFile, MATRIX_FILE_TOLERANCE};
use dkcert_core::par::Execution;
use dkcert_core::spectrum::sigma_from_interval;
use dkcert_core::{analyze_with, eigh, AnalysisReport, HermitianOperator, Tolerances};

pub const EXIT_CERTIFIED: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default)]
pub struct GlobalOptions {
    pub seed: Option<u64>,
    pub tol_herm: Option<f64>,
    pub tol_margin: Option<f64>,
    pub out: Option<PathBuf>,
    pub sequential: bool,
    pub quiet: bool,
}

impl GlobalOptions {
    fn execution(&self) -> Execution {
        if self.sequential {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    fn tolerances(&self, base: Option<Tolerances>) -> Tolerances {
        let mut tol = base.unwrap_or_default();
        if let Some(t) = self.tol_herm {
            tol.hermiticity = t;
        }
        if let Some(t) = self.tol_margin {
            tol.margin = t;
        }
        tol
    }

    fn say(&self, text: &str) {
        if !self.quiet {
            print!("{text}");
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    /// JSON report or result.
    pub json: Option<PathBuf>,
    /// CSV table (sweep records, search trace, few-body levels).
    pub csv: Option<PathBuf>,
}

/// Declarative run description. Exactly the section needed by the command
/// must be present; unknown keys anywhere are rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfigFile {
    #[serde(default)]
    pub ensemble: Option<EnsembleConfig>,
    #[serde(default)]
    pub fewbody: Option<FewBodyConfig>,
    #[serde(default)]
    pub search: Option<SearchConfig>,
    #[serde(default)]
    pub output: OutputPaths,
    #[serde(default)]
    pub tolerances: Option<Tolerances>,
}

impl RunConfigFile {
    pub fn load(path: &Path) -> Result<(Self, PathBuf)> {
        let text = fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let config: Self =
            serde_json::from_str(&text).with_context(|| format!("config {}: schema violation", path.display()))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((config, base))
    }
}

/// Writes through a temporary file in the destination directory, then
/// renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir).with_context(|| format!("temporary file in {}", dir.display()))?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn sibling(primary: &Path, suffix: &str, ext: &str) -> PathBuf {
    let stem = primary.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    primary.with_file_name(format!("{stem}{suffix}.{ext}"))
}

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn load_matrix(path: &Path, tol: f64) -> Result<HermitianOperator> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: MatrixFile =
        serde_json::from_str(&text).with_context(|| format!("{}: Format: not a matrix file", path.display()))?;
    file.decode_with(tol).with_context(|| format!("{}", path.display()))
}

/// `"0,1,2"` or `"lo:hi"` (closed energy window over `spec_a`).
pub fn parse_sigma(spec: &str, spec_a: &[f64]) -> Result<Vec<usize>> {
    let spec = spec.trim();
    if let Some((lo, hi)) = spec.split_once(':') {
        let lo: f64 = lo.trim().parse().with_context(|| format!("sigma: bad lower bound '{lo}'"))?;
        let hi: f64 = hi.trim().parse().with_context(|| format!("sigma: bad upper bound '{hi}'"))?;
        if !(lo <= hi) {
            bail!("sigma: empty window {lo}:{hi}");
        }
        return Ok(sigma_from_interval(spec_a, lo, hi));
    }
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .with_context(|| format!("sigma: bad index '{}'", s.trim()))
        })
        .collect()
}

fn degrees(rad: f64) -> f64 {
    rad.to_degrees()
}

/// The bound catalog with thresholds, values and (optionally) margins.
fn bound_table(report: &AnalysisReport, with_exact: bool) -> String {
    let mut s = String::new();
    for b in &report.bounds {
        let status = if b.applicable {
            "applicable"
        } else if b.requirement_met {
            "above threshold"
        } else {
            "not applicable"
        };
        let _ = write!(s, "  {:<28} {:<16} threshold {:<12}", b.kind.name(), status, format!("{:.6}", b.condition_threshold));
        if let Some(m) = b.bound_radians {
            let _ = write!(s, " M = {m:.10} rad ({:.6} deg)", degrees(m));
        } else if let (true, Some(g)) = (b.applicable, b.guarantee) {
            let _ = write!(s, " guarantees {g}");
        }
        if with_exact {
            if let Some(margin) = b.margin {
                let _ = write!(s, " margin {margin:+.3e}");
            }
            if let Some(holds) = b.guarantee_holds {
                let _ = write!(s, " holds {holds}");
            }
        }
        s.push('\n');
    }
    s
}

fn a_priori_summary(report: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "a priori (A and ||V|| only)");
    let _ = writeln!(s, "  n = {}, sigma = {:?}", report.n, report.sigma_indices);
    let _ = writeln!(s, "  disposition = {}", report.disposition);
    let _ = writeln!(s, "  d = {:.10}", report.d);
    if let Some(gap) = report.gap_length {
        let _ = writeln!(s, "  D = {gap:.10}, sqrt(D/d) = {:.10}", (gap / report.d).sqrt());
    }
    let _ = writeln!(s, "  ||V|| = {:.10}, x = ||V||/d = {:.10}", report.norm_v, report.x);
    let _ = writeln!(s, "  off-diagonal V: {} (residual {:.2e})", report.offdiagonal, report.offdiagonal_residual);
    if report.offdiagonal {
        let _ = writeln!(s, "  eps_V = {:.10}", report.epsilon_v);
    }
    s.push_str(&bound_table(report, false));
    for c in &report.enclosure_checks {
        let i = &c.interval;
        let line = match c.expectation {
            dkcert_core::analyzer::Expectation::ContainsOmega => format!("[{:.10}, {:.10}] contains omega", i.lo, i.hi),
            dkcert_core::analyzer::Expectation::SpectrumFree => format!("({:.10}, {:.10}) spectrum-free", i.lo, i.hi),
        };
        let _ = writeln!(s, "  {}: {line}", i.label);
    }
    for note in &report.notes {
        if note.starts_with("condition") || note.starts_with("generic_constant") {
            let _ = writeln!(s, "  note: {note}");
        }
    }
    s
}

fn exact_summary(report: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "exact (H = A + V)");
    let _ = writeln!(
        s,
        "  theta = {:.12} rad ({:.8} deg), ||P - Q|| = {:.12}",
        report.theta_exact,
        degrees(report.theta_exact),
        report.norm_p_minus_q
    );
    let _ = writeln!(s, "  omega indices {:?} via {:?}", report.omega_indices, report.assignment);
    let _ = writeln!(s, "  dist(omega, Omega) = {}", report.dist_omega_big_omega);
    if let Some(o) = report.ground_state_overlap {
        let _ = writeln!(s, "  |<psi0|psi0'>| = {o:.12}");
    }
    s.push_str(&bound_table(report, true));
    let failed = report.enclosure_checks.iter().filter(|c| !c.pass).count();
    let _ = writeln!(s, "  enclosure checks: {} passed, {failed} failed", report.enclosure_checks.len() - failed);
    for note in &report.notes {
        let _ = writeln!(s, "  note: {note}");
    }
    for v in &report.violations {
        let _ = writeln!(s, "  VIOLATION: {v}");
    }
    if report.claims_checked == 0 {
        let _ = writeln!(s, "  certified: {} (vacuous, no applicable bound or enclosure)", report.certified);
    } else {
        let _ = writeln!(s, "  certified: {} ({} claims checked)", report.certified, report.claims_checked);
    }
    s
}

fn report_exit(report: &AnalysisReport) -> i32 {
    if report.certified {
        EXIT_CERTIFIED
    } else {
        EXIT_VIOLATION
    }
}

pub fn cmd_analyze(path_a: &Path, path_v: &Path, sigma: &str, opts: &GlobalOptions) -> Result<i32> {
    let tol = opts.tolerances(None);
    let file_tol = opts.tol_herm.unwrap_or(MATRIX_FILE_TOLERANCE);
    let a = load_matrix(path_a, file_tol)?;
    let v = load_matrix(path_v, file_tol)?;
    if a.dim() != v.dim() {
        bail!("DimensionMismatch: A is {}x{}, V is {}x{}", a.dim(), a.dim(), v.dim(), v.dim());
    }
    let spec_a = eigh(&a).context("eigendecomposition of A")?;
    let sigma = parse_sigma(sigma, spec_a.values())?;
    let report = analyze_with(&a, &v, &sigma, &tol).context("sigma")?;
    let out = opts.out.clone().unwrap_or_else(|| PathBuf::from("report.json"));
    write_atomic(&out, serde_json::to_string_pretty(&report)?.as_bytes())?;
    opts.say(&a_priori_summary(&report));
    opts.say(&exact_summary(&report));
    opts.say(&format!("report written to {}\n", out.display()));
    Ok(report_exit(&report))
}

pub struct SweepOutcome {
    pub records: Vec<EnsembleRecord>,
    pub csv: PathBuf,
    pub exit: i32,
}

pub fn run_sweep(config_path: &Path, opts: &GlobalOptions) -> Result<SweepOutcome> {
    let (file, base) = RunConfigFile::load(config_path)?;
    let Some(mut ensemble) = file.ensemble else {
        bail!("config {}: missing 'ensemble' section", config_path.display());
    };
    if let Some(seed) = opts.seed {
        ensemble.seed = seed;
    }
    ensemble.validate().context("ensemble")?;
    let tol = opts.tolerances(file.tolerances);
    let records = sweep_with(&ensemble, &tol, opts.execution())?;

    let csv = opts
        .out
        .clone()
        .or_else(|| file.output.csv.map(|p| resolve(&base, &p)))
        .unwrap_or_else(|| PathBuf::from("sweep.csv"));
    let mut bytes = Vec::new();
    write_sweep_csv(&records, &mut bytes)?;
    write_atomic(&csv, &bytes)?;

    let failed = records.iter().filter(|r| r.error.is_some()).count();
    for r in records.iter().filter(|r| r.error.is_some()) {
        eprintln!("grid {} trial {}: {}", r.grid_index, r.trial, r.error.as_deref().unwrap_or(""));
    }
    if failed == records.len() {
        bail!("every instance failed; see diagnostics above");
    }
    let violating = records.iter().filter(|r| !r.violations().is_empty()).count();
    let min_margin = records.iter().filter_map(EnsembleRecord::min_margin).fold(f64::INFINITY, f64::min);
    let max_theta = records
        .iter()
        .filter_map(|r| r.outcome.as_ref().map(|o| o.theta_exact))
        .fold(0.0, f64::max);
    opts.say(&format!(
        "{} records ({} grid points x {} trials), {failed} failed, {violating} with violations\n\
         min margin {min_margin:.3e}, max theta {max_theta:.10} rad\n\
         csv written to {}\n",
        records.len(),
        ensemble.x_grid.len(),
        ensemble.trials,
        csv.display()
    ));
    for r in records.iter().filter(|r| !r.violations().is_empty()).take(10) {
        eprintln!("grid {} trial {} x = {}: {:?}", r.grid_index, r.trial, r.x, r.violations());
    }
    let exit = if violating > 0 { EXIT_VIOLATION } else { EXIT_CERTIFIED };
    Ok(SweepOutcome { records, csv, exit })
}

pub fn cmd_sweep(config_path: &Path, opts: &GlobalOptions) -> Result<i32> {
    Ok(run_sweep(config_path, opts)?.exit)
}

#[derive(Serialize)]
struct SharpnessOutput<'a> {
    config: &'a SearchConfig,
    result: &'a SearchResult,
    a: MatrixFile,
    v: MatrixFile,
    report: &'a AnalysisReport,
}

pub fn cmd_sharpness(config_path: &Path, opts: &GlobalOptions) -> Result<i32> {
    let (file, base) = RunConfigFile::load(config_path)?;
    let Some(mut search) = file.search else {
        bail!("config {}: missing 'search' section", config_path.display());
    };
    if let Some(seed) = opts.seed {
        search.seed = seed;
    }
    search.validate().context("search")?;
    let tol = opts.tolerances(file.tolerances);
    let result = sharpness_search_with(&search, &tol, opts.execution())?;
    let report = analyze_with(&result.a, &result.v, &result.sigma, &tol)?;

    let json = opts
        .out
        .clone()
        .or_else(|| file.output.json.map(|p| resolve(&base, &p)))
        .unwrap_or_else(|| PathBuf::from("sharpness.json"));
    let csv = file
        .output
        .csv
        .map(|p| resolve(&base, &p))
        .unwrap_or_else(|| sibling(&json, "_trace", "csv"));
    let payload = SharpnessOutput {
        config: &search,
        result: &result,
        a: MatrixFile::encode(&result.a),
        v: MatrixFile::encode(&result.v),
        report: &report,
    };
    write_atomic(&json, serde_json::to_string_pretty(&payload)?.as_bytes())?;
    let mut trace = String::from("restart,evaluation,objective,best,step\n");
    for t in &result.trace {
        let _ = writeln!(trace, "{},{},{},{},{}", t.restart, t.evaluation, t.objective, t.best, t.step);
    }
    write_atomic(&csv, trace.as_bytes())?;

    let mut s = format!(
        "objective {:?}, best value {:.3e} after {} evaluations (restart {})\n  theta = {:.12} rad",
        result.objective, result.best_value, result.evaluations, result.restart, result.theta
    );
    if let (Some(kind), Some(bound)) = (result.bound_kind, result.bound) {
        let _ = write!(s, ", {} = {bound:.12} rad", kind.name());
    }
    let _ = writeln!(
        s,
        "\n  dist(omega, Omega) = {}, d = {}",
        result.dist_omega_big_omega, report.d
    );
    let _ = writeln!(s, "  result written to {}, trace to {}", json.display(), csv.display());
    opts.say(&s);
    for v in &report.violations {
        eprintln!("VIOLATION: {v}");
    }
    Ok(report_exit(&report))
}

#[derive(Serialize)]
struct FewBodyOutput<'a> {
    config: &'a FewBodyConfig,
    a_priori: APriori<'a>,
    exact: &'a AnalysisReport,
}

#[derive(Serialize)]
struct APriori<'a> {
    d: f64,
    #[serde(rename = "D")]
    gap_length: Option<f64>,
    disposition: dkcert_core::Disposition,
    norm_v: f64,
    x: f64,
    offdiagonal: bool,
    epsilon_v: f64,
    bounds: Vec<APrioriBound<'a>>,
    notes: Vec<&'a str>,
}

#[derive(Serialize)]
struct APrioriBound<'a> {
    kind: dkcert_core::BoundKind,
    applicable: bool,
    bound_radians: Option<f64>,
    bound_degrees: Option<f64>,
    guarantee: Option<&'a str>,
}

pub fn cmd_fewbody(config_path: &Path, opts: &GlobalOptions) -> Result<i32> {
    let (file, base) = RunConfigFile::load(config_path)?;
    let Some(config) = file.fewbody else {
        bail!("config {}: missing 'fewbody' section", config_path.display());
    };
    let tol = opts.tolerances(file.tolerances);
    let inst = few_body_hamiltonian(&config).context("fewbody")?;
    let eig_a = eigh(&inst.a)?;
    let sigma = config.sigma.resolve(eig_a.values());
    let report = analyze_with(&inst.a, &inst.v, &sigma, &tol).context("fewbody.sigma")?;
    let eig_h = eigh(&(&inst.a + &inst.v))?;

    let a_priori = APriori {
        d: report.d,
        gap_length: report.gap_length,
        disposition: report.disposition,
        norm_v: report.norm_v,
        x: report.x,
        offdiagonal: report.offdiagonal,
        epsilon_v: report.epsilon_v,
        bounds: report
            .bounds
            .iter()
            .map(|b| APrioriBound {
                kind: b.kind,
                applicable: b.applicable,
                bound_radians: b.bound_radians,
                bound_degrees: b.bound_radians.map(degrees),
                guarantee: b.guarantee,
            })
            .collect(),
        notes: report
            .notes
            .iter()
            .filter(|n| n.starts_with("condition") || n.starts_with("generic_constant"))
            .map(String::as_str)
            .collect(),
    };
    let json = opts
        .out
        .clone()
        .or_else(|| file.output.json.map(|p| resolve(&base, &p)))
        .unwrap_or_else(|| PathBuf::from("fewbody.json"));
    let csv = file
        .output
        .csv
        .map(|p| resolve(&base, &p))
        .unwrap_or_else(|| sibling(&json, "_levels", "csv"));
    let payload = FewBodyOutput {
        config: &config,
        a_priori,
        exact: &report,
    };
    write_atomic(&json, serde_json::to_string_pretty(&payload)?.as_bytes())?;

    let mut table = String::from("level,E_A,E_H,shift,in_sigma,angle\n");
    for i in 0..report.n {
        let overlap = eig_a.vectors().column(i).dotc(&eig_h.vectors().column(i)).norm();
        let _ = writeln!(
            table,
            "{i},{},{},{},{},{}",
            report.spectrum_a[i],
            report.spectrum_h[i],
            report.spectrum_h[i] - report.spectrum_a[i],
            report.sigma_indices.contains(&i),
            overlap.min(1.0).acos()
        );
    }
    write_atomic(&csv, table.as_bytes())?;

    opts.say(&a_priori_summary(&report));
    opts.say(&exact_summary(&report));
    opts.say(&format!("report written to {}, levels to {}\n", json.display(), csv.display()));
    Ok(report_exit(&report))
}
