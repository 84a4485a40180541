//! Command implementations behind the `fano-spectra` binary.
//!
//! Each command builds a deterministic report (JSON by default, CSV on
//! request), writes it to `--out` or standard output, and maps failures
//! onto the fixed exit-code contract:
//!
//! - 0: success
//! - 2: invalid instance (Fano range or coprimality) or bad parameters
//! - 3: certification-regime failure at this n (reported, not an error)
//! - 4: numerical non-convergence
//! - 1: anything else (I/O, ...)

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::Serialize;

use crate::certify::{
    check_varep_inequalities, classify_modulus, partition_roots, LocalizationCertificate, Region,
};
use crate::error::{Error, Result};
use crate::model::{multivariate_critical_points, BundleInstance};
use crate::reduction::{constraint_system, reduce, ReducedSystem};
use crate::report;
use crate::rootfinder::{
    companion_roots, find_roots, matching_distance, positive_root, Precision, RootSet,
    COMPANION_MAX_DEGREE,
};
use crate::spectrum::{analyze, critical_values, SpectrumReport};

/// Matching tolerance for the oracle-equivalence gate.
pub const ORACLE_MATCH_TOL: f64 = 1e-8;

/// Environment variable capping scan-level parallelism.
pub const THREADS_ENV: &str = "FANO_SPECTRA_THREADS";

#[derive(Debug, Clone, Copy)]
pub struct CommonOpts {
    pub tol: f64,
    pub precision: Precision,
    pub seed: u64,
}

impl Default for CommonOpts {
    fn default() -> Self {
        CommonOpts {
            tol: 1e-10,
            precision: Precision::Auto,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!("unknown format '{other}'")),
        }
    }
}

/// What a command produced: text destined for stdout/stderr plus the
/// process exit code.
#[derive(Debug, Clone)]
pub struct CmdOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CmdOutcome {
    fn ok(stdout: String) -> Self {
        CmdOutcome {
            exit_code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn from_error(err: &Error) -> Self {
        CmdOutcome {
            exit_code: exit_code_for(err),
            stdout: String::new(),
            stderr: format!("error: {err}"),
        }
    }
}

pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::FanoRange { .. }
        | Error::Coprimality { .. }
        | Error::OracleGuard { .. }
        | Error::OutOfRange(_)
        | Error::ArityMismatch { .. }
        | Error::ZeroCoordinate
        | Error::EmptyInput(_) => 2,
        Error::NonConvergence { .. } | Error::BudgetExhausted { .. } | Error::Eigen(_) => 4,
        Error::Io(_) => 1,
    }
}

/// The full univariate pipeline for one instance.
pub fn solve_instance(
    n: u32,
    a: u32,
    opts: &CommonOpts,
) -> Result<(ReducedSystem, RootSet, SpectrumReport)> {
    let instance = BundleInstance::new(n, a)?;
    let system = reduce(&instance)?;
    let roots = find_roots(&system, opts.precision, opts.tol)?;
    let report = analyze(&system, &roots, opts.tol)?;
    Ok((system, roots, report))
}

/// Agreement record between the univariate pipeline and the two
/// independent oracles (direct multivariate Newton, companion matrix).
#[derive(Debug, Clone, Serialize)]
pub struct OracleComparison {
    pub n: u32,
    pub a: u32,
    pub seed: u64,
    pub budget: usize,
    pub univariate_count: usize,
    pub multivariate_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub companion_count: Option<usize>,
    /// Optimal-matching distance between {g(α)} and the oracle f-values.
    pub univariate_vs_multivariate: f64,
    /// Matching distance between Aberth-derived and companion-derived
    /// eigenvalues; absent above the companion degree guard.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub univariate_vs_companion: Option<f64>,
    /// Max relative spread among the first n coordinates over all oracle
    /// points (they coincide at every true critical point).
    pub coordinate_symmetry_defect: f64,
    pub tolerance: f64,
    pub pass: bool,
}

pub fn oracle_comparison(
    n: u32,
    a: u32,
    seed: u64,
    budget: usize,
    opts: &CommonOpts,
) -> Result<OracleComparison> {
    let instance = BundleInstance::new(n, a)?;
    let system = reduce(&instance)?;
    let roots = find_roots(&system, opts.precision, opts.tol)?;
    let (values, _) = critical_values(&system, &roots);

    let points = multivariate_critical_points(&instance, seed, budget)?;
    let oracle_values: Vec<Complex64> = points.iter().map(|p| p.value).collect();
    let univariate_vs_multivariate = matching_distance(&values, &oracle_values);

    let mut coordinate_symmetry_defect = 0.0f64;
    for p in &points {
        let scale = 1.0 + p.coords[0].norm();
        for x in &p.coords[..n as usize] {
            coordinate_symmetry_defect =
                coordinate_symmetry_defect.max((x - p.coords[0]).norm() / scale);
        }
    }

    let (companion_count, univariate_vs_companion) =
        if instance.eigenvalue_count() <= COMPANION_MAX_DEGREE {
            let comp = companion_roots(&system)?;
            let (comp_values, _) = critical_values(&system, &comp);
            (
                Some(comp.len()),
                Some(matching_distance(&values, &comp_values)),
            )
        } else {
            (None, None)
        };

    let pass = points.len() == values.len()
        && univariate_vs_multivariate < ORACLE_MATCH_TOL
        && univariate_vs_companion.map_or(true, |d| d < ORACLE_MATCH_TOL)
        && coordinate_symmetry_defect < 1e-8;

    Ok(OracleComparison {
        n,
        a,
        seed,
        budget,
        univariate_count: values.len(),
        multivariate_count: points.len(),
        companion_count,
        univariate_vs_multivariate,
        univariate_vs_companion,
        coordinate_symmetry_defect,
        tolerance: ORACLE_MATCH_TOL,
        pass,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScanStatus {
    #[serde(rename = "ok")]
    Ok,
    #[serde(rename = "excluded-coprimality")]
    ExcludedCoprimality,
    #[serde(rename = "excluded-fano-range")]
    ExcludedFanoRange,
}

impl ScanStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            ScanStatus::Ok => "ok",
            ScanStatus::ExcludedCoprimality => "excluded-coprimality",
            ScanStatus::ExcludedFanoRange => "excluded-fano-range",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRow {
    pub n: u32,
    pub a: u32,
    pub status: ScanStatus,
    pub rho: Option<f64>,
    pub bound: f64,
    pub galkin_holds: Option<bool>,
    pub conjecture_o_part1: Option<bool>,
    pub margin: Option<f64>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanResult {
    pub a: u32,
    pub n_min: u32,
    pub n_max: u32,
    pub rows: Vec<ScanRow>,
    /// Smallest admissible n with a Galkin failure, if any.
    pub smallest_galkin_failure: Option<u32>,
}

fn scan_one(n: u32, a: u32, opts: &CommonOpts) -> Result<ScanRow> {
    let bound = f64::from(n) + 2.0;
    match solve_instance(n, a, opts) {
        Ok((_, _, report)) => Ok(ScanRow {
            n,
            a,
            status: ScanStatus::Ok,
            rho: Some(report.rho),
            bound,
            galkin_holds: Some(report.galkin_holds),
            conjecture_o_part1: Some(report.conjecture_o_part1),
            margin: Some(report.galkin_margin),
            warnings: report.warnings,
        }),
        Err(Error::FanoRange { .. }) => Ok(ScanRow {
            n,
            a,
            status: ScanStatus::ExcludedFanoRange,
            rho: None,
            bound,
            galkin_holds: None,
            conjecture_o_part1: None,
            margin: None,
            warnings: Vec::new(),
        }),
        Err(Error::Coprimality { .. }) => Ok(ScanRow {
            n,
            a,
            status: ScanStatus::ExcludedCoprimality,
            rho: None,
            bound,
            galkin_holds: None,
            conjecture_o_part1: None,
            margin: None,
            warnings: Vec::new(),
        }),
        Err(e) => Err(e),
    }
}

/// Scans n over [n_min, n_max] at fixed a. Rows for every n, excluded
/// instances labeled; instance-level parallelism capped by
/// `FANO_SPECTRA_THREADS`.
pub fn scan_instances(a: u32, n_min: u32, n_max: u32, opts: &CommonOpts) -> Result<ScanResult> {
    if n_min > n_max {
        return Err(Error::OutOfRange(format!(
            "scan range empty: n_min {n_min} > n_max {n_max}"
        )));
    }
    let ns: Vec<u32> = (n_min..=n_max).collect();
    let results: Vec<Result<ScanRow>> = match scan_pool()? {
        Some(pool) => pool.install(|| {
            use rayon::prelude::*;
            ns.par_iter().map(|&n| scan_one(n, a, opts)).collect()
        }),
        None => {
            use rayon::prelude::*;
            ns.par_iter().map(|&n| scan_one(n, a, opts)).collect()
        }
    };
    let mut rows = results.into_iter().collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.a, r.n));
    let smallest_galkin_failure = rows
        .iter()
        .find(|r| r.galkin_holds == Some(false))
        .map(|r| r.n);
    Ok(ScanResult {
        a,
        n_min,
        n_max,
        rows,
        smallest_galkin_failure,
    })
}

fn scan_pool() -> Result<Option<rayon::ThreadPool>> {
    match std::env::var(THREADS_ENV) {
        Ok(raw) => {
            let threads: usize = raw.parse().map_err(|_| {
                Error::OutOfRange(format!("{THREADS_ENV} must be a positive integer, got '{raw}'"))
            })?;
            if threads == 0 {
                return Err(Error::OutOfRange(format!("{THREADS_ENV} must be positive")));
            }
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .map_err(|e| Error::OutOfRange(format!("thread pool: {e}")))?;
            Ok(Some(pool))
        }
        Err(_) => Ok(None),
    }
}

fn write_or_stdout(rendered: String, out: Option<&Path>) -> Result<CmdOutcome> {
    match out {
        Some(path) => {
            fs::write(path, rendered.as_bytes())?;
            Ok(CmdOutcome::ok(format!("wrote {}", path.display())))
        }
        None => Ok(CmdOutcome::ok(rendered)),
    }
}

/// Options specific to `solve`.
#[derive(Debug, Clone, Default)]
pub struct SolveArgs {
    pub oracle: bool,
    pub oracle_budget: usize,
    pub plot_data: Option<PathBuf>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

pub fn run_solve(n: u32, a: u32, opts: &CommonOpts, args: &SolveArgs) -> CmdOutcome {
    let attempt = || -> Result<CmdOutcome> {
        let (system, roots, report) = solve_instance(n, a, opts)?;
        let scatter = eigenvalue_scatter(&system, &roots);
        if let Some(path) = &args.plot_data {
            fs::write(path, report::eigenvalue_csv(&scatter).as_bytes())?;
        }
        let oracle = if args.oracle {
            let budget = if args.oracle_budget == 0 {
                default_oracle_budget(n)
            } else {
                args.oracle_budget
            };
            Some(oracle_comparison(n, a, opts.seed, budget, opts)?)
        } else {
            None
        };
        let rendered = match args.format.unwrap_or(OutputFormat::Json) {
            OutputFormat::Json => report::to_json(&report::spectrum_doc(&report, oracle)),
            OutputFormat::Csv => report::eigenvalue_csv(&scatter),
        };
        write_or_stdout(rendered, args.out.as_deref())
    };
    attempt().unwrap_or_else(|e| CmdOutcome::from_error(&e))
}

pub fn default_oracle_budget(n: u32) -> usize {
    (64 * (2 * n as usize + 2)).max(256)
}

fn eigenvalue_scatter(system: &ReducedSystem, roots: &RootSet) -> Vec<(Complex64, Region)> {
    let n = system.instance().n();
    let (values, _) = critical_values(system, roots);
    roots
        .roots()
        .iter()
        .zip(values)
        .map(|(root, value)| (value, classify_modulus(root.norm(), n).0))
        .collect()
}

#[derive(Debug, Clone, Default)]
pub struct ScanArgs {
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

pub fn run_scan(a: u32, n_min: u32, n_max: u32, opts: &CommonOpts, args: &ScanArgs) -> CmdOutcome {
    let attempt = || -> Result<CmdOutcome> {
        let scan = scan_instances(a, n_min, n_max, opts)?;
        let rendered = match args.format.unwrap_or(OutputFormat::Json) {
            OutputFormat::Json => report::to_json(&report::scan_doc(&scan)),
            OutputFormat::Csv => report::scan_csv(&scan),
        };
        write_or_stdout(rendered, args.out.as_deref())
    };
    attempt().unwrap_or_else(|e| CmdOutcome::from_error(&e))
}

#[derive(Debug, Clone, Default)]
pub struct CertifyArgs {
    pub varep_only: bool,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
}

/// Builds the localization certificate for one instance.
///
/// Certification concerns the roots of `h - 1` and runs for any
/// Fano-range pair with a >= 1; coprimality is reported in the
/// certificate but not required, since only the eigenvalue
/// interpretation of the critical values depends on it.
pub fn certify_instance(n: u32, a: u32, opts: &CommonOpts) -> Result<LocalizationCertificate> {
    let instance = BundleInstance::new_fano_only(n, a)?;
    let system = constraint_system(&instance)?;
    let roots = find_roots(&system, opts.precision, opts.tol)?;
    let a_plus = positive_root(&system, 1e-14);
    Ok(partition_roots(&roots, &system, &a_plus))
}

pub fn run_certify(
    n: Option<u32>,
    a: Option<u32>,
    opts: &CommonOpts,
    args: &CertifyArgs,
) -> CmdOutcome {
    let attempt = || -> Result<CmdOutcome> {
        if args.varep_only {
            let margins = check_varep_inequalities();
            let rendered = report::to_json(&report::varep_doc(margins));
            let mut outcome = write_or_stdout(rendered, args.out.as_deref())?;
            if !margins.all_positive() {
                outcome.exit_code = 3;
            }
            return Ok(outcome);
        }
        let (n, a) = match (n, a) {
            (Some(n), Some(a)) => (n, a),
            _ => {
                return Err(Error::OutOfRange(
                    "certify requires --n and --a unless --varep-only is set".into(),
                ))
            }
        };
        let cert = certify_instance(n, a, opts)?;
        let failing = cert.failing_checks();
        let rendered = match args.format.unwrap_or(OutputFormat::Json) {
            OutputFormat::Json => {
                report::to_json(&report::certify_doc(&cert, check_varep_inequalities()))
            }
            OutputFormat::Csv => report::certify_csv(&cert),
        };
        let mut outcome = write_or_stdout(rendered, args.out.as_deref())?;
        if !failing.is_empty() {
            outcome.exit_code = 3;
            outcome.stderr = format!("failing checks at n={n}: {}", failing.join("; "));
        }
        Ok(outcome)
    };
    attempt().unwrap_or_else(|e| CmdOutcome::from_error(&e))
}

#[derive(Debug, Clone, Default)]
pub struct OracleArgs {
    pub budget: usize,
    pub out: Option<PathBuf>,
}

pub fn run_oracle(n: u32, a: u32, opts: &CommonOpts, args: &OracleArgs) -> CmdOutcome {
    let attempt = || -> Result<CmdOutcome> {
        let budget = if args.budget == 0 {
            default_oracle_budget(n)
        } else {
            args.budget
        };
        let cmp = oracle_comparison(n, a, opts.seed, budget, opts)?;
        let pass = cmp.pass;
        let rendered = report::to_json(&report::oracle_doc(cmp));
        let mut outcome = write_or_stdout(rendered, args.out.as_deref())?;
        if !pass {
            outcome.exit_code = 4;
        }
        Ok(outcome)
    };
    attempt().unwrap_or_else(|e| CmdOutcome::from_error(&e))
}
