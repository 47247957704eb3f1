//! Command-line front end: reads a run configuration, dispatches to the
//! core crate and writes JSON reports or CSV tables.
//!
//! Exit statuses: 0 success, 2 invalid input, 3 a hypothesis of the theory
//! fails (e.g. `B(r,s)` is not continuous), 4 an internal invariant broke.

pub mod args;
pub mod config;
pub mod report;
pub mod verify;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

use clap::Parser;
use serde::Serialize;

use bandspec_core::ergodics::{cesaro_experiment, classify_ergodic, CesaroTable};
use bandspec_core::grading::{graded_fine_spectrum, per_grade_crosscheck};
use bandspec_core::operator::operator_norm_bounds;
use bandspec_core::pseudospectrum::{pseudo_grid, GridSpec};
use bandspec_core::resolvent::{resolvent_apply, summability_certificates};
use bandspec_core::spectra::{fine_spectrum, spectral_radius};
use bandspec_core::weights::weighted_norm;
use bandspec_core::{Citation, Complex64, Error, SeqVector, SpaceDescriptor, Tail};

use crate::config::{Command, Format, RunConfig};
use crate::report::*;

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Validation(String),
    Hypothesis(String),
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Hypothesis(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid input: {m}"),
            CliError::Hypothesis(m) => write!(f, "hypothesis not met: {m}"),
            CliError::Invariant(m) => write!(f, "invariant violated: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::InvalidParameter(_) | Error::Parse(_) | Error::DeclaredMismatch { .. } => CliError::Validation(msg),
            // a point inside the spectrum is a bad request, not a broken theory
            Error::SpectrumViolation { .. } => CliError::Validation(msg),
            Error::HypothesisFailure(_) | Error::ContinuityFailure(_) | Error::UnboundedRatio => {
                CliError::Hypothesis(msg)
            }
            Error::AggregationViolation(_) => CliError::Invariant(msg),
        }
    }
}

/// Text produced by a run, before it is written anywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifacts {
    /// Goes to the output path, or standard output.
    pub main: String,
    /// The pseudospectrum summary in CSV mode.
    pub summary: Option<String>,
    /// Human-readable notes for standard error.
    pub notes: Vec<String>,
    /// Set when the run completed but found a broken invariant.
    pub violation: Option<CliError>,
}

impl Artifacts {
    fn main(main: String) -> Self {
        Artifacts {
            main,
            summary: None,
            notes: Vec::new(),
            violation: None,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

/// Runs a validated configuration and returns what it produced.
pub fn run(config: &RunConfig) -> Result<Artifacts, CliError> {
    config.validate()?;
    match config.command {
        Command::Classify => classify(config),
        Command::Ergodics => ergodics(config),
        Command::Resolve => resolve(config),
        Command::Cesaro => cesaro(config),
        Command::Pseudospec => pseudospec(config),
        Command::Verify => {
            let rep = verify::verify(config.numeric.seed, config.numeric.cases);
            let mut out = Artifacts::main(to_json(&rep));
            out.notes
                .push(format!("verify: {} passed, {} failed", rep.passed, rep.failed));
            if rep.failed > 0 {
                out.violation = Some(CliError::Invariant(format!("{} self-checks failed", rep.failed)));
            }
            Ok(out)
        }
    }
}

fn band_of(config: &RunConfig) -> config::Band {
    config.band.expect("validated")
}

fn classify(config: &RunConfig) -> Result<Artifacts, CliError> {
    let b = config.band()?;
    let space = config.space.descriptor()?;
    let mut citations = BTreeMap::new();
    let report = match &space {
        SpaceDescriptor::Weighted { p, weight, asymptotics } => {
            let fs = fine_spectrum(&b, *p, weight)?;
            let sigma_cites: &[Citation] = if *weight == bandspec_core::WeightFamily::Unit {
                &[Citation::UnweightedFineSpectrum, Citation::WeightedSpectrumDisk]
            } else {
                &[Citation::WeightedSpectrumDisk]
            };
            citations.insert("sigma".into(), cite(sigma_cites));
            citations.insert("point".into(), cite(&[Citation::WeightedPointSpectrumEmpty]));
            citations.insert(
                "residual".into(),
                cite(&[
                    Citation::ResidualEqualsAdjointPoint,
                    Citation::AdjointEigenvectorBracket,
                    Citation::GeometricEigenvectorSeries,
                ]),
            );
            citations.insert("continuous".into(), cite(&[Citation::ContinuousOutsideResidualDisk]));
            citations.insert("undetermined".into(), cite(&[Citation::GeometricEigenvectorSeries]));
            citations.insert("waelbroeck".into(), cite(&[Citation::WaelbroeckEqualsSpectrum]));
            citations.insert("spectral_radius".into(), cite(&[Citation::SpectralRadius]));
            citations.insert(
                "norm_bounds".into(),
                cite(&[Citation::ContinuityCriterion, Citation::NormBounds]),
            );
            ClassifyReport {
                command: "classify".into(),
                space: space.label().into(),
                band: band_of(config),
                sigma: fs.spectrum(),
                point: fs.point(),
                residual: fs.residual(),
                continuous: fs.continuous(),
                undetermined: fs.undetermined(),
                waelbroeck: fs.spectrum(),
                citations,
                weighted: Some(WeightedDetails {
                    p: *p,
                    asymptotics: *asymptotics,
                    boundary_rule: fs.boundary_rule,
                    spectral_radius: spectral_radius(&b, weight)?,
                    norm_bounds: operator_norm_bounds(&b, *p, asymptotics)?,
                }),
                graded: None,
            }
        }
        SpaceDescriptor::PowerSeries { space: sp } => {
            let g = graded_fine_spectrum(&b, sp)?;
            let check = per_grade_crosscheck(&b, sp, config.numeric.k_max)?;
            for field in ["sigma", "point", "residual", "continuous"] {
                citations.insert(field.to_string(), cite(&g.citations[..1]));
            }
            citations.insert("undetermined".into(), cite(&g.citations[..1]));
            citations.insert("waelbroeck".into(), cite(&[Citation::WaelbroeckEqualsSpectrum]));
            citations.insert("crosscheck".into(), cite(&[check.citation]));
            ClassifyReport {
                command: "classify".into(),
                space: space.label().into(),
                band: band_of(config),
                sigma: g.sigma,
                point: g.point,
                residual: g.residual,
                continuous: g.continuous,
                undetermined: bandspec_core::Region::Empty,
                waelbroeck: g.waelbroeck,
                citations,
                weighted: None,
                graded: Some(GradedDetails {
                    alpha: sp.alpha.clone(),
                    l: sp.l,
                    log_bound_c: sp.log_bound_c,
                    nuclear: sp.nuclear,
                    prefix_only: sp.prefix_only,
                    crosscheck: check,
                }),
            }
        }
    };
    Ok(Artifacts::main(to_json(&report)))
}

fn ergodics(config: &RunConfig) -> Result<Artifacts, CliError> {
    let b = config.band()?;
    let space = config.space.descriptor()?;
    let report = classify_ergodic(&b, &space)?;
    let chain_violations = report.chain_violations();
    let mut out = Artifacts::main(to_json(&ErgodicsReport {
        command: "ergodics".into(),
        band: band_of(config),
        report,
        chain_violations: chain_violations.clone(),
    }));
    if !chain_violations.is_empty() {
        out.violation = Some(CliError::Invariant(format!(
            "implication chain broken: {chain_violations:?}"
        )));
    }
    Ok(out)
}

fn resolve(config: &RunConfig) -> Result<Artifacts, CliError> {
    let b = config.band()?;
    let (p, v) = config.space.weighted("resolve")?;
    let cfg = config.numeric.truncation;
    let m = cfg.m;
    let alpha: Complex64 = config.numeric.alpha.expect("validated").into();
    let y = match &config.numeric.y {
        Some(values) => SeqVector::from_real(values, Tail::Zero),
        None => SeqVector::basis(0, 1),
    }
    .resized(m);
    let x = resolvent_apply(&b, alpha, &y, &cfg, &v)?;
    let certificates = summability_certificates(&b, alpha, &v, p, m)?;
    let back = b.apply_shifted(alpha, &x);
    let head = m - 1;
    let diff: Vec<Complex64> = (0..head).map(|n| back.get(n) - y.get(n)).collect();
    let ys: Vec<Complex64> = (0..head).map(|n| y.get(n)).collect();
    let num = weighted_norm(&SeqVector::new(diff, Tail::Zero), p, &v).log_norm;
    let den = weighted_norm(&SeqVector::new(ys, Tail::Zero), p, &v).log_norm;
    let relative_residual = if den == f64::NEG_INFINITY {
        0.0
    } else {
        (num - den).exp()
    };
    let report = ResolveReport {
        command: "resolve".into(),
        space: SpaceDescriptor::weighted(p, v.clone())?.label().into(),
        band: band_of(config),
        alpha,
        m,
        x: x.into_entries(),
        relative_residual,
        tolerance: cfg.tol,
        certificates,
        citations: cite(&[Citation::WeightedSpectrumDisk]),
    };
    let mut out = Artifacts::main(to_json(&report));
    if relative_residual.is_nan() || relative_residual > cfg.tol {
        out.violation = Some(CliError::Invariant(format!(
            "resolvent residual {relative_residual:e} exceeds {:e}",
            cfg.tol
        )));
    }
    Ok(out)
}

/// `n,probe,cesaro_norm,power_norm_over_n` with 17 significant digits.
pub fn cesaro_csv(table: &CesaroTable) -> String {
    let mut out = String::from("n,probe,cesaro_norm,power_norm_over_n\n");
    for row in &table.rows {
        let _ = writeln!(
            out,
            "{},{},{:.16e},{:.16e}",
            row.n,
            row.probe,
            row.cesaro_norm(),
            row.power_norm_over_n()
        );
    }
    out
}

fn cesaro(config: &RunConfig) -> Result<Artifacts, CliError> {
    let b = config.band()?;
    let space = config.space.descriptor()?;
    let table = cesaro_experiment(&b, &space, config.numeric.n_max, &config.numeric.probes)?;
    let notes = table.diagnostics.iter().map(|d| format!("diagnostic: {d}")).collect();
    let main = match config.format() {
        Format::Csv => cesaro_csv(&table),
        Format::Json => to_json(&CesaroReport {
            command: "cesaro".into(),
            space: space.label().into(),
            band: band_of(config),
            table,
        }),
    };
    Ok(Artifacts {
        notes,
        ..Artifacts::main(main)
    })
}

fn pseudospec(config: &RunConfig) -> Result<Artifacts, CliError> {
    let b = config.band()?;
    let (_, v) = config.space.weighted("pseudospec")?;
    let spec = config.numeric.grid.apply(GridSpec::around_spectrum(&b, v)?);
    let grid = pseudo_grid(&b, &spec)?;
    let mut report = PseudoReport {
        command: "pseudospec".into(),
        band: band_of(config),
        spec: grid.spec.clone(),
        summary: grid.summary.clone(),
        sigma_min: None,
    };
    let mut out = match config.format() {
        Format::Csv => Artifacts {
            summary: Some(to_json(&report)),
            ..Artifacts::main(grid.to_csv())
        },
        Format::Json => {
            report.sigma_min = Some(grid.sigma_min.clone());
            Artifacts::main(to_json(&report))
        }
    };
    if !grid.summary.nested {
        out.violation = Some(CliError::Invariant("sublevel sets are not nested".into()));
    }
    Ok(out)
}

/// `grid.csv` -> `grid.summary.json`.
pub fn default_summary_path(output: &str) -> String {
    Path::new(output)
        .with_extension("summary.json")
        .to_string_lossy()
        .into_owned()
}

fn write_file(path: &str, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Validation(format!("cannot write {path}: {e}")))
}

/// Writes the artifacts where the configuration asks for them.
pub fn emit(config: &RunConfig, art: &Artifacts, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let io = |e: std::io::Error| CliError::Validation(format!("cannot write output: {e}"));
    match &config.output.path {
        Some(path) => write_file(path, &art.main)?,
        None => out.write_all(art.main.as_bytes()).map_err(io)?,
    }
    if let Some(summary) = &art.summary {
        let target = config
            .output
            .summary_path
            .clone()
            .or_else(|| config.output.path.as_deref().map(default_summary_path));
        match target {
            Some(path) => write_file(&path, summary)?,
            None => err.write_all(summary.as_bytes()).map_err(io)?,
        }
    }
    for note in &art.notes {
        writeln!(err, "{note}").map_err(io)?;
    }
    Ok(())
}

/// Parses `args`, runs, writes, and returns the exit status.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match args::Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
        }
    };
    let result = cli.into_config().and_then(|config| {
        let art = run(&config)?;
        emit(&config, &art, out, err)?;
        art.violation.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "bandspec: {e}");
            e.exit_code()
        }
    }
}
