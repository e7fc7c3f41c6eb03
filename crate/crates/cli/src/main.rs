//! `gbed` — score-equation analysis of Gumbel's Type-I bivariate
//! exponential data: exact ML-degree, MLE on [0, 1], likelihood curves,
//! seeded simulation, and structural fixture generation.

mod document;

use clap::{Parser, Subcommand, ValueEnum};
use document::{AnalysisDocument, InputEcho};
use gbed_core::mldeg::MlDegreeError;
use gbed_core::mle::{likelihood_curve, solve_mle};
use gbed_core::model::Dataset;
use gbed_core::rational::{parse_rational, to_f64, to_ratio_string, Rational};
use gbed_core::sampler::{
    approx_coordinates, build_fixture, exact_coordinates, sample_gbed, FixtureError, FixtureSpec,
    GroupSpec,
};
use gbed_core::variety::classify;
use gbed_core::MlDegreeReport;
use serde::Deserialize;
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_PARSE: u8 = 2;
const EXIT_DISAGREEMENT: u8 = 3;
const EXIT_UNREALIZABLE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "gbed",
    about = "ML-degree and MLE analysis for GBED-I bivariate exponential data",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a dataset: score polynomials, ML-degree, MLE.
    Analyze {
        /// CSV with two numeric columns (header `x,y` optional; `#` comments ignored)
        input: PathBuf,
        /// Interpret columns as exact coefficient pairs (c, d) instead of coordinates
        #[arg(long)]
        coeffs: bool,
        /// Float-pipeline tolerance for root refinement
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the likelihood curve over [0, 1] as CSV.
    Curve {
        input: PathBuf,
        #[arg(long)]
        coeffs: bool,
        /// Number of grid points (inclusive endpoints)
        #[arg(long, default_value_t = 1001)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate GBED(θ) datasets and tabulate ML-degrees and MLEs.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        theta: f64,
        #[arg(long, default_value_t = 50)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a dataset CSV realizing a structural fixture spec.
    Fixture {
        /// JSON spec: {"groups":[{"root":"3","members":2,"double":false}],"singles":1,"seed":1}
        #[arg(long)]
        spec: PathBuf,
        /// Emit irrational coordinates as 20-digit decimals instead of failing
        #[arg(long)]
        approx: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn parse(msg: impl Into<String>) -> Self {
        CliError { code: EXIT_PARSE, message: msg.into() }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { input, coeffs, tol, format, out } => {
            let (ds, echo) = load_dataset(&input, coeffs)?;
            let report = MlDegreeReport::compute(&ds).map_err(map_mldeg_err)?;
            let mle = solve_mle(&ds, &report, tol)
                .map_err(|e| CliError::parse(e.to_string()))?;
            let curve = likelihood_curve(&ds, 201)
                .map_err(|e| CliError::parse(e.to_string()))?;
            let doc = AnalysisDocument::build(&ds, &report, &mle, curve.shape_flag, echo, tol);
            let rendered = match format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&doc)
                        .expect("report serializes");
                    s.push('\n');
                    s
                }
                Format::Text => doc.to_text(),
            };
            emit(out.as_deref(), &rendered)
        }
        Command::Curve { input, coeffs, points, out } => {
            if points < 2 {
                return Err(CliError::parse("--points must be at least 2"));
            }
            let (ds, _) = load_dataset(&input, coeffs)?;
            let curve = likelihood_curve(&ds, points)
                .map_err(|e| CliError::parse(e.to_string()))?;
            let mut s = String::from("theta,loglik,likelihood_shape\n");
            for p in &curve.grid {
                s.push_str(&format!(
                    "{:.16e},{:.16e},{:.16e}\n",
                    p.theta, p.loglik, p.likelihood_shape
                ));
            }
            emit(out.as_deref(), &s)
        }
        Command::Simulate { n, theta, reps, seed, tol, out } => {
            let mut s = String::from("replicate,seed,ml_degree,real_roots_in_unit,theta_hat\n");
            let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
            for rep in 0..reps {
                let rep_seed = seed.wrapping_add(rep as u64);
                let ds = sample_gbed(n, theta, rep_seed)
                    .map_err(|e| CliError::parse(e.to_string()))?;
                let report = MlDegreeReport::compute(&ds).map_err(map_mldeg_err)?;
                let mle = solve_mle(&ds, &report, tol)
                    .map_err(|e| CliError::parse(e.to_string()))?;
                *hist.entry(report.ml_degree_direct).or_default() += 1;
                s.push_str(&format!(
                    "{},{},{},{},{:.16e}\n",
                    rep, rep_seed, report.ml_degree_direct, mle.real_root_count_in_unit,
                    mle.theta_hat
                ));
            }
            s.push_str("# ml_degree histogram\n");
            for (deg, count) in &hist {
                s.push_str(&format!("# ml_degree={deg}: {count}\n"));
            }
            emit(out.as_deref(), &s)
        }
        Command::Fixture { spec, approx, out } => cmd_fixture(&spec, approx, out.as_deref()),
    }
}

fn map_mldeg_err(e: MlDegreeError) -> CliError {
    let code = match e {
        MlDegreeError::Disagreement { .. } | MlDegreeError::BoundViolation { .. } => {
            EXIT_DISAGREEMENT
        }
        _ => EXIT_PARSE,
    };
    CliError { code, message: e.to_string() }
}

fn emit(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Reads a two-column CSV into exact rationals. Lines starting with `#`
/// and blank lines are skipped; a `x,y` / `c,d` header is optional.
fn read_pairs(path: &Path) -> Result<Vec<(Rational, Rational, usize)>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if rows.is_empty() && cells.iter().all(|c| c.parse::<f64>().is_err() && !c.contains('/')) {
            // header row
            continue;
        }
        if cells.len() != 2 {
            return Err(CliError::parse(format!(
                "line {}: expected 2 columns, found {}",
                lineno + 1,
                cells.len()
            )));
        }
        let a = parse_rational(cells[0]).map_err(|e| {
            CliError::parse(format!("line {}, column 1: {e}", lineno + 1))
        })?;
        let b = parse_rational(cells[1]).map_err(|e| {
            CliError::parse(format!("line {}, column 2: {e}", lineno + 1))
        })?;
        rows.push((a, b, lineno + 1));
    }
    Ok(rows)
}

fn load_dataset(path: &Path, coeffs: bool) -> Result<(Dataset, InputEcho), CliError> {
    let rows = read_pairs(path)?;
    let pairs: Vec<(Rational, Rational)> =
        rows.iter().map(|(a, b, _)| (a.clone(), b.clone())).collect();
    let ds = if coeffs {
        Dataset::from_coeff_pairs(&pairs)
    } else {
        Dataset::validate(&pairs)
    }
    .map_err(|e| CliError::parse(e.to_string()))?;
    let echo = InputEcho {
        mode: if coeffs { "cd".into() } else { "xy".into() },
        rows: pairs
            .iter()
            .map(|(a, b)| vec![to_ratio_string(a), to_ratio_string(b)])
            .collect(),
    };
    Ok((ds, echo))
}

#[derive(Deserialize)]
struct GroupSpecFile {
    root: String,
    members: usize,
    #[serde(default)]
    double: bool,
}

#[derive(Deserialize)]
struct FixtureSpecFile {
    groups: Vec<GroupSpecFile>,
    #[serde(default)]
    singles: usize,
    #[serde(default)]
    seed: u64,
}

fn cmd_fixture(spec_path: &Path, approx: bool, out: Option<&Path>) -> Result<(), CliError> {
    let text = fs::read_to_string(spec_path)
        .map_err(|e| CliError::parse(format!("cannot read {}: {e}", spec_path.display())))?;
    let file: FixtureSpecFile =
        serde_json::from_str(&text).map_err(|e| CliError::parse(format!("bad spec: {e}")))?;
    let groups = file
        .groups
        .iter()
        .map(|g| {
            Ok(GroupSpec {
                shared_root: parse_rational(&g.root)
                    .map_err(|e| CliError::parse(format!("bad group root: {e}")))?,
                member_count: g.members,
                anchor_double: g.double,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let spec = FixtureSpec { groups, singles: file.singles, seed: file.seed };
    let ds = build_fixture(&spec).map_err(map_fixture_err)?;
    let config = classify(&ds).map_err(|e| CliError::parse(e.to_string()))?;
    let predicted = gbed_core::mldeg::ml_degree_structural(&config);

    let mut csv = String::from("x,y\n");
    for (i, s) in ds.coeffs().iter().enumerate() {
        let coords = exact_coordinates(&s.c, &s.d)
            .map(|(x, y)| (to_ratio_string(&x), to_ratio_string(&y)))
            .or_else(|| {
                approx
                    .then(|| approx_coordinates(&s.c, &s.d, 20))
                    .flatten()
                    .map(|(x, y)| (format!("{:.18}", to_f64(&x)), format!("{:.18}", to_f64(&y))))
            });
        match coords {
            Some((x, y)) => csv.push_str(&format!("{x},{y}\n")),
            None => {
                return Err(CliError {
                    code: EXIT_UNREALIZABLE,
                    message: format!(
                        "sample {} has irrational coordinates; re-run with --approx \
                         (note: decimal re-ingestion loses exact root coincidences)",
                        i + 1
                    ),
                })
            }
        }
    }
    eprintln!("configuration: {}", config.case.label());
    eprintln!("predicted structural ML-degree: {predicted}");
    emit(out, &csv)
}

fn map_fixture_err(e: FixtureError) -> CliError {
    let code = match e {
        FixtureError::UnrealizableRoots(_) => EXIT_UNREALIZABLE,
        _ => EXIT_PARSE,
    };
    CliError { code, message: e.to_string() }
}
