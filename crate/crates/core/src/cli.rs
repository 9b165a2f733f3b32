//! Command-line front end. Each `cmd_*` returns the text to print and the
//! process exit code so the commands can be driven from tests without spawning
//! a process.
//!
//! Exit codes: 0 success, 1 engines disagree beyond tolerance, 2 usage or
//! validation error.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::engines::{Solver, Strategy};
use crate::error::Error;
use crate::lattice::{node_at, node_index, LatticeSpec, LatticeTopology, NodeRef, ResistorNetwork};
use crate::oracle;
use crate::spectra1d::{spectrum, BoundaryKind};

/// Environment variable capping sweep parallelism.
pub const THREADS_ENV: &str = "LATRES_THREADS";

/// Default node cap for oracle tables.
pub const DEFAULT_ORACLE_NODE_CAP: usize = 5000;

/// Largest network on which `verify` checks every triple for the triangle inequality.
pub const TRIANGLE_CHECK_MAX_NODES: usize = 150;

#[derive(Debug, Parser)]
#[command(
    name = "latres",
    version,
    about = "Two-point resistances on lattice resistor networks"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Resistance between two nodes.
    Resist(ResistArgs),
    /// CSV of all-pairs (or one-row) resistances.
    Table(TableArgs),
    /// Cross-check every engine against the oracle over all pairs.
    Verify(VerifyArgs),
    /// JSON dump of a 1D chain spectrum.
    Spectrum(SpectrumArgs),
    /// Kirchhoff index (sum of resistances over all node pairs).
    Kirchhoff(KirchhoffArgs),
    /// Edge list of the explicit network.
    Export(ExportArgs),
}

fn parse_topology(s: &str) -> Result<LatticeTopology, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_node(s: &str) -> Result<NodeRef, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_boundary(s: &str) -> Result<BoundaryKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Clone, Args)]
pub struct LatticeArgs {
    /// free | cylinder | torus | cobweb | fan | globe
    #[arg(long, value_parser = parse_topology)]
    pub topology: Option<LatticeTopology>,
    /// Number of rows (y direction, bonds s).
    #[arg(short = 'M', long = "rows")]
    pub m: Option<usize>,
    /// Number of columns (x direction, bonds r).
    #[arg(short = 'N', long = "cols")]
    pub n: Option<usize>,
    /// Latitudinal (x) bond resistance in ohms.
    #[arg(short = 'r', default_value_t = 1.0)]
    pub r: f64,
    /// Longitudinal (y) bond resistance in ohms.
    #[arg(short = 's', default_value_t = 1.0)]
    pub s: f64,
}

impl LatticeArgs {
    pub fn spec(&self) -> Result<LatticeSpec, CliError> {
        let topology = self.topology.ok_or_else(|| CliError::usage("--topology is required"))?;
        let m = self.m.ok_or_else(|| CliError::usage("-M is required"))?;
        let n = self.n.ok_or_else(|| CliError::usage("-N is required"))?;
        Ok(LatticeSpec::new(topology, m, n, self.r, self.s)?)
    }

    fn given(&self) -> bool {
        self.topology.is_some() || self.m.is_some() || self.n.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodSelector {
    Fast,
    Double,
    Oracle,
    All,
}

impl MethodSelector {
    fn strategy(self) -> Option<Strategy> {
        match self {
            MethodSelector::Fast => Some(Strategy::Fast),
            MethodSelector::Double => Some(Strategy::Double),
            MethodSelector::Oracle => Some(Strategy::Oracle),
            MethodSelector::All => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct ResistArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    /// Source node: O, O' or x,y.
    #[arg(long, value_parser = parse_node)]
    pub from: NodeRef,
    /// Sink node: O, O' or x,y.
    #[arg(long, value_parser = parse_node)]
    pub to: NodeRef,
    #[arg(long, value_enum, default_value_t = MethodSelector::Fast)]
    pub method: MethodSelector,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,
    /// Relative tolerance for --method all.
    #[arg(long = "tol", default_value_t = 1e-9)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    /// Restrict to pairs involving this node.
    #[arg(long, value_parser = parse_node)]
    pub from: Option<NodeRef>,
    #[arg(long, value_enum, default_value_t = MethodSelector::Fast)]
    pub method: MethodSelector,
    /// Node cap for the oracle method.
    #[arg(long, default_value_t = DEFAULT_ORACLE_NODE_CAP)]
    pub max_nodes: usize,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    #[arg(long = "tol", default_value_t = 1e-9)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    /// periodic | free | dd | dn
    #[arg(long = "bc", value_parser = parse_boundary)]
    pub kind: BoundaryKind,
    #[arg(short = 'N', long = "size")]
    pub size: usize,
}

#[derive(Debug, Clone, Args)]
pub struct KirchhoffArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    /// Edge-list file instead of a lattice.
    #[arg(long, conflicts_with = "topology")]
    pub input: Option<PathBuf>,
    #[arg(long = "tol", default_value_t = 1e-9)]
    pub tolerance: f64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    /// Write to a file instead of stdout.
    #[arg(short = 'o', long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    Usage(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        2
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Text destined for stdout plus the exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub stdout: String,
    pub exit_code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, exit_code: 0 }
    }

    fn checked(stdout: String, pass: bool) -> Self {
        Outcome {
            stdout,
            exit_code: if pass { 0 } else { 1 },
        }
    }
}

/// Validated inputs of a lattice query.
#[derive(Debug, Clone, PartialEq)]
pub struct QueryConfig {
    pub spec: LatticeSpec,
    pub from: NodeRef,
    pub to: NodeRef,
    pub method: MethodSelector,
    pub format: OutputFormat,
    pub tolerance: f64,
}

impl QueryConfig {
    pub fn from_args(args: &ResistArgs) -> Result<Self, CliError> {
        let spec = args.lattice.spec()?;
        spec.check_node(args.from)?;
        spec.check_node(args.to)?;
        check_tolerance(args.tolerance)?;
        Ok(QueryConfig {
            spec,
            from: args.from,
            to: args.to,
            method: args.method,
            format: args.format,
            tolerance: args.tolerance,
        })
    }
}

fn check_tolerance(tol: f64) -> Result<(), CliError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(CliError::usage(format!("tolerance must be positive, got {tol}")))
    }
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Resist(a) => cmd_resist(&QueryConfig::from_args(a)?),
        Command::Table(a) => cmd_table(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Spectrum(a) => cmd_spectrum(a.kind, a.size),
        Command::Kirchhoff(a) => cmd_kirchhoff(a),
        Command::Export(a) => cmd_export(a),
    }
}

/// `x` with `digits` significant digits, trailing zeros dropped (like `%.12g`).
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let digits = digits.max(1);
    let rounded = round_sig(x, digits);
    let exp = rounded.abs().log10().floor() as i32;
    if exp < -5 || exp >= digits as i32 {
        let s = format!("{:.*e}", digits - 1, rounded);
        let (mant, e) = s.split_once('e').expect("exponent form");
        let mant = if mant.contains('.') {
            mant.trim_end_matches('0').trim_end_matches('.')
        } else {
            mant
        };
        format!("{mant}e{e}")
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        let s = format!("{rounded:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    }
}

/// `x` rounded to `digits` significant digits.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits.max(1) - 1, x).parse().unwrap_or(x)
}

fn num(x: f64) -> String {
    format_sig(x, 12)
}

fn j12(x: f64) -> f64 {
    round_sig(x, 12)
}

fn relative_deviation(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serializable");
    s.push('\n');
    s
}

/// Runs `f` on a pool capped by `LATRES_THREADS` when set.
fn with_thread_cap<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let cap = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0);
    match cap.and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

#[derive(Serialize)]
struct EngineValue {
    method: String,
    #[serde(rename = "R_ohms")]
    ohms: f64,
}

#[derive(Serialize)]
struct ResistJson {
    topology: String,
    #[serde(rename = "M")]
    m: usize,
    #[serde(rename = "N")]
    n: usize,
    r: f64,
    s: f64,
    from: String,
    to: String,
    method: String,
    #[serde(rename = "R_ohms")]
    ohms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_deviation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    engines: Option<Vec<EngineValue>>,
}

pub fn cmd_resist(config: &QueryConfig) -> Result<Outcome, CliError> {
    let solver = Solver::new(config.spec)?;
    let strategies = match config.method.strategy() {
        Some(s) => vec![s],
        None => Strategy::all_for(config.spec.topology),
    };
    let results = strategies
        .iter()
        .map(|&st| solver.resistance(config.from, config.to, st))
        .collect::<Result<Vec<_>, _>>()?;

    let all = config.method == MethodSelector::All;
    let mut max_dev: f64 = 0.0;
    for a in &results {
        for b in &results {
            max_dev = max_dev.max(relative_deviation(a.ohms, b.ohms));
        }
    }
    let pass = !all || max_dev <= config.tolerance;
    let spec = &config.spec;
    let primary = results[0];

    let text = match config.format {
        OutputFormat::Human => {
            let mut out = String::new();
            if all {
                let _ = writeln!(
                    out,
                    "R({}, {}) on {} M={} N={} r={} s={}",
                    config.from,
                    config.to,
                    spec.topology,
                    spec.m,
                    spec.n,
                    num(spec.r),
                    num(spec.s)
                );
                for res in &results {
                    let _ = writeln!(out, "  {:<18} {} Ω", res.method.name(), num(res.ohms));
                }
                let _ = writeln!(
                    out,
                    "  max relative deviation {} (tolerance {})",
                    format_sig(max_dev, 3),
                    format_sig(config.tolerance, 3)
                );
                let _ = writeln!(out, "{}", if pass { "PASS" } else { "FAIL" });
            } else {
                let _ = writeln!(
                    out,
                    "R({}, {}) = {} Ω [{}]",
                    config.from,
                    config.to,
                    num(primary.ohms),
                    primary.method
                );
            }
            out
        }
        OutputFormat::Json => to_json(&ResistJson {
            topology: spec.topology.name().into(),
            m: spec.m,
            n: spec.n,
            r: j12(spec.r),
            s: j12(spec.s),
            from: config.from.to_string(),
            to: config.to.to_string(),
            method: if all {
                "all".into()
            } else {
                primary.method.name().into()
            },
            ohms: j12(primary.ohms),
            max_deviation: all.then(|| j12(max_dev)),
            engines: all.then(|| {
                results
                    .iter()
                    .map(|r| EngineValue {
                        method: r.method.name().into(),
                        ohms: j12(r.ohms),
                    })
                    .collect()
            }),
        }),
        OutputFormat::Csv => {
            let mut out = String::from("topology,M,N,r,s,from,to,method,R_ohms\n");
            for res in &results {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{}",
                    spec.topology,
                    spec.m,
                    spec.n,
                    num(spec.r),
                    num(spec.s),
                    csv_field(&config.from.to_string()),
                    csv_field(&config.to.to_string()),
                    res.method,
                    num(res.ohms)
                );
            }
            out
        }
    };
    Ok(Outcome::checked(text, pass))
}

fn node_columns(node: NodeRef) -> (String, String) {
    match node {
        NodeRef::Grid { x, y } => (x.to_string(), y.to_string()),
        pole => (pole.to_string(), String::new()),
    }
}

/// Index pairs `(i, j)`, `i < j`, in lexicographic order; restricted to pairs
/// touching `only` when given.
fn index_pairs(t: usize, only: Option<usize>) -> Vec<(usize, usize)> {
    match only {
        Some(k) => (0..t).filter(|&j| j != k).map(|j| (k.min(j), k.max(j))).collect(),
        None => (0..t).flat_map(|i| ((i + 1)..t).map(move |j| (i, j))).collect(),
    }
}

fn closed_form_values(solver: &Solver, pairs: &[(usize, usize)], strategy: Strategy) -> Result<Vec<f64>, CliError> {
    let spec = *solver.spec();
    let values = with_thread_cap(|| {
        pairs
            .par_iter()
            .map(|&(i, j)| {
                let a = node_at(&spec, i)?;
                let b = node_at(&spec, j)?;
                solver.resistance(a, b, strategy).map(|r| r.ohms)
            })
            .collect::<Result<Vec<f64>, Error>>()
    })?;
    Ok(values)
}

pub fn cmd_table(args: &TableArgs) -> Result<Outcome, CliError> {
    let spec = args.lattice.spec()?;
    let strategy = args
        .method
        .strategy()
        .ok_or_else(|| CliError::usage("table takes --method fast, double or oracle"))?;
    let t = spec.node_count();
    if strategy == Strategy::Oracle && t > args.max_nodes {
        return Err(CliError::usage(format!(
            "{t} nodes exceeds the oracle cap of {} (raise --max-nodes or use --method fast)",
            args.max_nodes
        )));
    }
    let only = match args.from {
        Some(node) => Some(node_index(&spec, node)?),
        None => None,
    };
    let pairs = index_pairs(t, only);
    let solver = Solver::new(spec)?;
    let values = if strategy == Strategy::Oracle {
        let r = oracle::resistance_matrix(solver.network())?;
        pairs.iter().map(|&(i, j)| r[(i, j)]).collect()
    } else {
        closed_form_values(&solver, &pairs, strategy)?
    };

    let mut out = String::from("x1,y1,x2,y2,R_ohms\n");
    for (&(i, j), v) in pairs.iter().zip(&values) {
        let (x1, y1) = node_columns(node_at(&spec, i)?);
        let (x2, y2) = node_columns(node_at(&spec, j)?);
        let _ = writeln!(out, "{x1},{y1},{x2},{y2},{}", num(*v));
    }
    Ok(Outcome::ok(out))
}

#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub engine: String,
    pub reference: String,
    pub max_abs: f64,
    pub max_rel: f64,
    pub worst_pair: Option<(String, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub topology: String,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub r: f64,
    pub s: f64,
    pub nodes: usize,
    pub pairs: usize,
    pub comparisons: Vec<Comparison>,
    pub max_rel_deviation: f64,
    pub symmetry_max_rel: f64,
    pub triangle_triples: usize,
    pub triangle_violations: usize,
    pub tolerance: f64,
    pub pass: bool,
}

/// All-pairs sweep of every route against the oracle, plus metric checks.
pub fn verify_sweep(spec: &LatticeSpec, tolerance: f64) -> Result<VerifyReport, Error> {
    let solver = Solver::new(*spec)?;
    let t = spec.node_count();
    let pairs = index_pairs(t, None);
    let oracle_r = oracle::resistance_matrix(solver.network())?;
    let reference: Vec<f64> = pairs.iter().map(|&(i, j)| oracle_r[(i, j)]).collect();

    let closed: Vec<Strategy> = Strategy::all_for(spec.topology)
        .into_iter()
        .filter(|&s| s != Strategy::Oracle)
        .collect();
    let mut series: Vec<(String, Vec<f64>)> = Vec::new();
    for &st in &closed {
        let vals = closed_form_values(&solver, &pairs, st).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let name = match pairs.first() {
            Some(&(i, j)) => solver
                .resistance(node_at(spec, i)?, node_at(spec, j)?, st)?
                .method
                .name()
                .to_string(),
            None => format!("{st:?}"),
        };
        series.push((name, vals));
    }
    series.push(("oracle".into(), reference));

    let mut comparisons = Vec::new();
    let mut max_rel_all: f64 = 0.0;
    for a in 0..series.len() {
        for b in (a + 1)..series.len() {
            let (mut max_abs, mut max_rel, mut worst) = (0.0_f64, 0.0_f64, None);
            for (k, &(i, j)) in pairs.iter().enumerate() {
                let (va, vb) = (series[a].1[k], series[b].1[k]);
                let rel = relative_deviation(va, vb);
                max_abs = max_abs.max((va - vb).abs());
                if rel > max_rel || worst.is_none() {
                    max_rel = max_rel.max(rel);
                    worst = Some((node_at(spec, i)?.to_string(), node_at(spec, j)?.to_string()));
                }
            }
            max_rel_all = max_rel_all.max(max_rel);
            comparisons.push(Comparison {
                engine: series[a].0.clone(),
                reference: series[b].0.clone(),
                max_abs,
                max_rel,
                worst_pair: worst,
            });
        }
    }

    // symmetry and metric checks on the primary closed form
    let primary = &series[0].1;
    let mut full = vec![0.0; t * t];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        full[i * t + j] = primary[k];
    }
    let swapped = with_thread_cap(|| {
        pairs
            .par_iter()
            .map(|&(i, j)| -> Result<f64, Error> {
                Ok(solver
                    .resistance(node_at(spec, j)?, node_at(spec, i)?, Strategy::Fast)?
                    .ohms)
            })
            .collect::<Result<Vec<f64>, Error>>()
    })?;
    let mut symmetry: f64 = 0.0;
    for (k, &(i, j)) in pairs.iter().enumerate() {
        symmetry = symmetry.max(relative_deviation(primary[k], swapped[k]));
        full[j * t + i] = swapped[k];
    }
    let (mut triples, mut violations) = (0usize, 0usize);
    if t <= TRIANGLE_CHECK_MAX_NODES {
        let scale = primary.iter().fold(0.0_f64, |a, &b| a.max(b));
        for a in 0..t {
            for b in 0..t {
                for c in 0..t {
                    if a == b || b == c || a == c {
                        continue;
                    }
                    triples += 1;
                    if full[a * t + c] > full[a * t + b] + full[b * t + c] + 1e-12 * scale {
                        violations += 1;
                    }
                }
            }
        }
    }

    let pass = max_rel_all <= tolerance && symmetry <= tolerance && violations == 0;
    Ok(VerifyReport {
        topology: spec.topology.name().into(),
        m: spec.m,
        n: spec.n,
        r: spec.r,
        s: spec.s,
        nodes: t,
        pairs: pairs.len(),
        comparisons,
        max_rel_deviation: max_rel_all,
        symmetry_max_rel: symmetry,
        triangle_triples: triples,
        triangle_violations: violations,
        tolerance,
        pass,
    })
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let spec = args.lattice.spec()?;
    check_tolerance(args.tolerance)?;
    let report = verify_sweep(&spec, args.tolerance)?;
    let text = match args.format {
        OutputFormat::Json => {
            let mut rounded = report.clone();
            for c in &mut rounded.comparisons {
                c.max_abs = j12(c.max_abs);
                c.max_rel = j12(c.max_rel);
            }
            rounded.max_rel_deviation = j12(rounded.max_rel_deviation);
            rounded.symmetry_max_rel = j12(rounded.symmetry_max_rel);
            to_json(&rounded)
        }
        _ => {
            let mut out = String::new();
            let _ = writeln!(
                out,
                "verify {} M={} N={} r={} s={} ({} nodes, {} pairs)",
                report.topology,
                report.m,
                report.n,
                num(report.r),
                num(report.s),
                report.nodes,
                report.pairs
            );
            for c in &report.comparisons {
                let worst = c
                    .worst_pair
                    .as_ref()
                    .map(|(a, b)| format!(", worst ({a})-({b})"))
                    .unwrap_or_default();
                let _ = writeln!(
                    out,
                    "  {} vs {}: max abs {}, max rel {}{}",
                    c.engine,
                    c.reference,
                    format_sig(c.max_abs, 3),
                    format_sig(c.max_rel, 3),
                    worst
                );
            }
            let _ = writeln!(out, "  symmetry: max rel {}", format_sig(report.symmetry_max_rel, 3));
            if report.triangle_triples > 0 {
                let _ = writeln!(
                    out,
                    "  triangle inequality: {} violations over {} triples",
                    report.triangle_violations, report.triangle_triples
                );
            } else {
                let _ = writeln!(
                    out,
                    "  triangle inequality: skipped (more than {TRIANGLE_CHECK_MAX_NODES} nodes)"
                );
            }
            let _ = writeln!(
                out,
                "max relative deviation {} (tolerance {})",
                format_sig(report.max_rel_deviation, 3),
                format_sig(report.tolerance, 3)
            );
            let _ = writeln!(out, "{}", if report.pass { "PASS" } else { "FAIL" });
            out
        }
    };
    Ok(Outcome::checked(text, report.pass))
}

#[derive(Serialize)]
struct SpectrumJson {
    kind: String,
    #[serde(rename = "N")]
    n: usize,
    angles: Vec<f64>,
    eigenvalues: Vec<f64>,
    /// `eigenvectors[n][x-1] = [re, im]`
    eigenvectors: Vec<Vec<[f64; 2]>>,
}

pub fn cmd_spectrum(kind: BoundaryKind, size: usize) -> Result<Outcome, CliError> {
    let sp = spectrum(kind, size)?;
    // clean rounding noise so exact values print exactly
    let tidy = |v: f64| {
        let r = j12(v);
        if r.abs() < 1e-13 {
            0.0
        } else {
            r
        }
    };
    let json = SpectrumJson {
        kind: kind.name().into(),
        n: size,
        angles: sp.angles().iter().map(|&a| tidy(a)).collect(),
        eigenvalues: sp.eigenvalues().iter().map(|&l| tidy(l)).collect(),
        eigenvectors: sp
            .eigenvector_table()
            .into_iter()
            .map(|col| col.into_iter().map(|z| [tidy(z.re), tidy(z.im)]).collect())
            .collect(),
    };
    Ok(Outcome::ok(to_json(&json)))
}

#[derive(Serialize)]
struct KirchhoffJson {
    source: String,
    nodes: usize,
    kirchhoff_spectral: f64,
    kirchhoff_pairwise: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    kirchhoff_closed_form: Option<f64>,
    max_deviation: f64,
}

pub fn cmd_kirchhoff(args: &KirchhoffArgs) -> Result<Outcome, CliError> {
    check_tolerance(args.tolerance)?;
    let (source, network, solver) = match &args.input {
        Some(path) => {
            if args.lattice.given() {
                return Err(CliError::usage("give either --input or a lattice, not both"));
            }
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            (
                path.display().to_string(),
                ResistorNetwork::from_edge_list(&text)?,
                None,
            )
        }
        None => {
            let spec = args.lattice.spec()?;
            let solver = Solver::new(spec)?;
            let label = format!(
                "{} M={} N={} r={} s={}",
                spec.topology,
                spec.m,
                spec.n,
                num(spec.r),
                num(spec.s)
            );
            (label, solver.network().clone(), Some(solver))
        }
    };
    let spectral = oracle::kirchhoff_index(&network)?;
    let pairwise = oracle::kirchhoff_index_pairwise(&network)?;
    let closed = match &solver {
        Some(solver) => {
            let pairs = index_pairs(network.node_count(), None);
            Some(closed_form_values(solver, &pairs, Strategy::Fast)?.iter().sum::<f64>())
        }
        None => None,
    };
    let mut dev = relative_deviation(spectral, pairwise);
    if let Some(c) = closed {
        dev = dev.max(relative_deviation(spectral, c));
    }
    let pass = dev <= args.tolerance;
    let text = match args.format {
        OutputFormat::Json => to_json(&KirchhoffJson {
            source,
            nodes: network.node_count(),
            kirchhoff_spectral: j12(spectral),
            kirchhoff_pairwise: j12(pairwise),
            kirchhoff_closed_form: closed.map(j12),
            max_deviation: j12(dev),
        }),
        _ => {
            let mut out = format!(
                "Kirchhoff index = {} Ω ({source}, {} nodes)\n",
                num(spectral),
                network.node_count()
            );
            let _ = writeln!(out, "  spectral     {}", num(spectral));
            let _ = writeln!(out, "  pairwise     {}", num(pairwise));
            if let Some(c) = closed {
                let _ = writeln!(out, "  closed form  {}", num(c));
            }
            let _ = writeln!(out, "  max relative deviation {}", format_sig(dev, 3));
            out
        }
    };
    Ok(Outcome::checked(text, pass))
}

pub fn cmd_export(args: &ExportArgs) -> Result<Outcome, CliError> {
    let spec = args.lattice.spec()?;
    let text = crate::lattice::build_network(&spec)?.to_edge_list();
    match &args.output {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
            Ok(Outcome::ok(String::new()))
        }
        None => Ok(Outcome::ok(text)),
    }
}
