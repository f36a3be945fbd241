//! Command-line front end.
//!
//! One verb per activity: `analyze` (single-point steering report), `sweep`
//! (parameter grids to CSV/JSON), `wigner` (grid export of the subtracted
//! state's Wigner function), `verify` (closed forms against the truncated
//! Fock oracle), and `graph-info` (edge-list inspection).
//!
//! Settings resolve as flags > config file (JSON) > built-in defaults.
//! Exit codes: 0 success, 2 domain/precondition error, 3 I/O error,
//! 4 verification failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::{DVector, Vector2};
use serde::Deserialize;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use crate::analysis::{analyze, wigner_grid, SteeringReport, WignerGrid, WignerWindow};
use crate::error::{Error, Result};
use crate::factories::{epr_state, graph_state, load_graph, Squeezing, ThermalNoise};
use crate::fock::{oracle_reduced_wigner, OracleConfig};
use crate::state::{ModePair, ModeVector};
use crate::sweep::{
    format_float, run_sweep, write_records_csv, write_records_json, Axis, StateFamily,
    SweepSpec,
};
use crate::symplectic::Cov2;

const CONVENTION: &str = "x = a + a^dag, p = i(a^dag - a), vacuum covariance = identity";

#[derive(Parser)]
#[command(
    name = "steerwig",
    version,
    about = "Decide and quantify remote Wigner negativity from photon subtraction",
    after_help = "Convention: x = a + a^dag, p = i(a^dag - a); vacuum covariance is the \
                  identity. Squeezing is entered in dB (ratio 10^(dB/10)); thermal noise n \
                  is vacuum-normalized (n = 1 is pure)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one state: steering, attainable negativity, Wigner minima
    Analyze(AnalyzeArgs),
    /// Sweep parameter grids and write one record per point
    Sweep(SweepArgs),
    /// Export the subtracted remote mode's Wigner function on a grid
    Wigner(WignerArgs),
    /// Cross-check closed forms against the truncated-Fock oracle
    Verify(VerifyArgs),
    /// Inspect a graph edge-list file
    GraphInfo(GraphInfoArgs),
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum FamilyArg {
    /// Two-mode squeezed thermal resource
    Epr,
    /// Graph state from an edge list
    Graph,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum PreOpArg {
    /// No pre-operation (bare subtraction)
    Identity,
    /// Trace-optimal local symplectic on the subtraction mode
    Optimal,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

/// Optional JSON config file; any field a flag does not override.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    family: Option<String>,
    n: Option<f64>,
    sdb: Option<f64>,
    sdb2: Option<f64>,
    graph: Option<PathBuf>,
    f: Option<usize>,
    g: Option<usize>,
    /// Full mode vectors (length 2m, interleaved x/p), overriding f/g
    /// indices for graph-family analyses.
    f_vec: Option<Vec<f64>>,
    g_vec: Option<Vec<f64>>,
    xi_g: Option<[f64; 2]>,
    n_axis: Option<AxisConfig>,
    sdb_axis: Option<AxisConfig>,
    asym_axis: Option<AxisConfig>,
    cutoff: Option<usize>,
    window: Option<f64>,
    resolution: Option<usize>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
struct AxisConfig {
    min: f64,
    max: f64,
    steps: usize,
}

impl FileConfig {
    fn load(path: Option<&Path>) -> Result<Self> {
        match path {
            None => Ok(FileConfig::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)?;
                Ok(serde_json::from_str(&text)?)
            }
        }
    }
}

#[derive(Args)]
struct AnalyzeArgs {
    /// State family to analyze
    #[arg(value_enum)]
    family: Option<FamilyArg>,
    /// Thermal noise n >= 1 (default 1.2)
    #[arg(long)]
    n: Option<f64>,
    /// Squeezing of mode 1 in dB (default 4)
    #[arg(long)]
    sdb: Option<f64>,
    /// Squeezing of mode 2 in dB (default: same as --sdb)
    #[arg(long)]
    sdb2: Option<f64>,
    /// Graph edge-list file (graph family)
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Remote mode index, 0-based (graph family; default 0)
    #[arg(long)]
    f: Option<usize>,
    /// Subtraction mode index, 0-based (graph family; default 1)
    #[arg(long)]
    g: Option<usize>,
    /// JSON config file supplying any unset option
    #[arg(long)]
    config: Option<PathBuf>,
    /// Emit the report as JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Axis over thermal noise: "min:max:steps" or a single value
    /// (default 1:2:101)
    #[arg(long, value_parser = parse_axis)]
    n: Option<Axis>,
    /// Axis over the squeezing geometric mean in dB (default 0:10:101)
    #[arg(long, value_parser = parse_axis)]
    sdb: Option<Axis>,
    /// Axis over the squeezing ratio s1/s2 in dB (default fixed 0)
    #[arg(long, value_parser = parse_axis)]
    asym: Option<Axis>,
    /// State family to sweep (default epr)
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// Graph edge-list file (graph family)
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Remote mode index (graph family; default 0)
    #[arg(long)]
    f: Option<usize>,
    /// Subtraction mode index (graph family; default 1)
    #[arg(long)]
    g: Option<usize>,
    /// JSON config file supplying any unset option
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format (default csv)
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct WignerArgs {
    /// State family
    #[arg(value_enum)]
    family: Option<FamilyArg>,
    /// Thermal noise n >= 1 (default 1.2)
    #[arg(long)]
    n: Option<f64>,
    /// Squeezing of mode 1 in dB (default 4)
    #[arg(long)]
    sdb: Option<f64>,
    /// Squeezing of mode 2 in dB (default: same as --sdb)
    #[arg(long)]
    sdb2: Option<f64>,
    /// Graph edge-list file (graph family)
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Remote mode index (graph family; default 0)
    #[arg(long)]
    f: Option<usize>,
    /// Subtraction mode index (graph family; default 1)
    #[arg(long)]
    g: Option<usize>,
    /// Pre-operation on the subtraction mode (default identity)
    #[arg(long, value_enum)]
    r: Option<PreOpArg>,
    /// Half-width of the square phase-space window (default 6)
    #[arg(long)]
    window: Option<f64>,
    /// Samples per axis (default 101)
    #[arg(long)]
    resolution: Option<usize>,
    /// JSON config file supplying any unset option
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output file (default: standard output)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format (default csv)
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Thermal noise n >= 1 (default 1.2)
    #[arg(long)]
    n: Option<f64>,
    /// Squeezing of mode 1 in dB (default 4)
    #[arg(long)]
    sdb: Option<f64>,
    /// Squeezing of mode 2 in dB (default: same as --sdb)
    #[arg(long)]
    sdb2: Option<f64>,
    /// Displacement of the subtraction mode as "x,p" (default 0,0)
    #[arg(long, value_parser = parse_point)]
    xi_g: Option<(f64, f64)>,
    /// Pre-operation on the subtraction mode (default identity)
    #[arg(long, value_enum)]
    r: Option<PreOpArg>,
    /// Fock-space dimension per mode (default 30)
    #[arg(long)]
    cutoff: Option<usize>,
    /// Half-width of the square phase-space window (default 5)
    #[arg(long)]
    window: Option<f64>,
    /// Samples per axis (default 41)
    #[arg(long)]
    resolution: Option<usize>,
    /// JSON config file supplying any unset option
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct GraphInfoArgs {
    /// Graph edge-list file
    #[arg(long)]
    graph: PathBuf,
}

/// Agreement threshold for `verify`: largest tolerated pointwise deviation
/// between the closed-form and oracle grids, and relative deviation between
/// the two subtraction weights.
const VERIFY_TOLERANCE: f64 = 1e-3;

fn parse_axis(raw: &str) -> std::result::Result<Axis, String> {
    let parts: Vec<&str> = raw.split(':').collect();
    let parse = |s: &str| s.trim().parse::<f64>().map_err(|e| format!("bad number {s:?}: {e}"));
    match parts.as_slice() {
        [v] => Axis::fixed(parse(v)?).map_err(|e| e.to_string()),
        [min, max, steps] => {
            let steps = steps.trim().parse::<usize>().map_err(|e| format!("bad step count: {e}"))?;
            Axis::new(parse(min)?, parse(max)?, steps).map_err(|e| e.to_string())
        }
        _ => Err(format!("expected VALUE or MIN:MAX:STEPS, got {raw:?}")),
    }
}

fn parse_point(raw: &str) -> std::result::Result<(f64, f64), String> {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected X,P, got {raw:?}"));
    }
    let x = parts[0].trim().parse::<f64>().map_err(|e| e.to_string())?;
    let p = parts[1].trim().parse::<f64>().map_err(|e| e.to_string())?;
    Ok((x, p))
}

/// Entry point used by the binary: parse, dispatch, map errors to the
/// documented exit codes.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        // Clap handles --help/--version (exit 0) and usage errors (exit 2).
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Analyze(args) => cmd_analyze(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Wigner(args) => cmd_wigner(&args),
        Command::Verify(args) => cmd_verify(&args),
        Command::GraphInfo(args) => cmd_graph_info(&args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

/// Process exit code for a failed command: 3 for I/O failures, 4 when the
/// brute-force cross-check disagrees with the closed form, 2 for every
/// domain error (matching the conventional usage-error code).
fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 3,
        Error::VerificationFailed(_) => 4,
        _ => 2,
    }
}

/// Everything needed to describe one analyzed state in output.
struct ResolvedState {
    pair: ModePair,
    family_label: String,
    parameters: serde_json::Value,
    parameters_text: String,
}

fn resolve_family(flag: Option<FamilyArg>, config: &FileConfig) -> Result<FamilyArg> {
    if let Some(f) = flag {
        return Ok(f);
    }
    match config.family.as_deref() {
        None => Ok(FamilyArg::Epr),
        Some("epr") => Ok(FamilyArg::Epr),
        Some("graph") => Ok(FamilyArg::Graph),
        Some(other) => Err(Error::InvalidInput(format!(
            "unknown family {other:?} in config (expected \"epr\" or \"graph\")"
        ))),
    }
}

fn mode_vector_from(values: &[f64], modes: usize, name: &str) -> Result<ModeVector> {
    if values.len() != 2 * modes {
        return Err(Error::InvalidInput(format!(
            "{name} must have length {} for a {modes}-mode state, got {}",
            2 * modes,
            values.len()
        )));
    }
    ModeVector::new(DVector::from_column_slice(values))
}

/// Build the state and mode pair shared by `analyze` and `wigner`.
fn resolve_state(
    family: Option<FamilyArg>,
    n: Option<f64>,
    sdb: Option<f64>,
    sdb2: Option<f64>,
    graph_path: Option<&Path>,
    f: Option<usize>,
    g: Option<usize>,
    config: &FileConfig,
) -> Result<ResolvedState> {
    let family = resolve_family(family, config)?;
    let n_value = n.or(config.n).unwrap_or(1.2);
    let sdb1 = sdb.or(config.sdb).unwrap_or(4.0);
    let sdb2 = sdb2.or(config.sdb2).unwrap_or(sdb1);
    let noise = ThermalNoise::new(n_value)?;
    match family {
        FamilyArg::Epr => {
            let s1 = Squeezing::from_db(sdb1)?;
            let s2 = Squeezing::from_db(sdb2)?;
            let pair = epr_state(s1, s2, noise).extract_canonical_pair(0, 1)?;
            Ok(ResolvedState {
                pair,
                family_label: "epr".into(),
                parameters: serde_json::json!({
                    "n": n_value, "s1_db": sdb1, "s2_db": sdb2,
                }),
                parameters_text: format!("n = {n_value}, s1 = {sdb1} dB, s2 = {sdb2} dB"),
            })
        }
        FamilyArg::Graph => {
            let path = graph_path
                .map(Path::to_path_buf)
                .or_else(|| config.graph.clone())
                .ok_or_else(|| {
                    Error::InvalidInput("graph family needs --graph FILE".into())
                })?;
            let (graph, warnings) = load_graph(&path)?;
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            let s = Squeezing::from_db(sdb1)?;
            let state = graph_state(&graph, s, noise)?;
            let modes = state.modes();
            let f_index = f.or(config.f).unwrap_or(0);
            let g_index = g.or(config.g).unwrap_or(1);
            // Config may name the two modes by full vectors instead.
            let pair = match (&config.f_vec, &config.g_vec) {
                (Some(fv), Some(gv)) => state.extract_pair(
                    &mode_vector_from(fv, modes, "f_vec")?,
                    &mode_vector_from(gv, modes, "g_vec")?,
                )?,
                (None, None) => state.extract_canonical_pair(f_index, g_index)?,
                _ => {
                    return Err(Error::InvalidInput(
                        "f_vec and g_vec must be given together".into(),
                    ))
                }
            };
            let modes_text = if config.f_vec.is_some() {
                "custom mode vectors".to_string()
            } else {
                format!("f = {f_index}, g = {g_index}")
            };
            Ok(ResolvedState {
                pair,
                family_label: "graph".into(),
                parameters: serde_json::json!({
                    "n": n_value, "s_db": sdb1, "graph": path.display().to_string(),
                    "f": f_index, "g": g_index,
                    "mode_vectors": config.f_vec.is_some(),
                }),
                parameters_text: format!(
                    "n = {n_value}, s = {sdb1} dB, graph = {}, {modes_text}",
                    path.display()
                ),
            })
        }
    }
}

fn cov2_json(m: &Cov2) -> serde_json::Value {
    serde_json::json!([[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]])
}

fn cov2_text(m: &Cov2) -> String {
    format!(
        "[[{:+.6}, {:+.6}], [{:+.6}, {:+.6}]]",
        m[(0, 0)],
        m[(0, 1)],
        m[(1, 0)],
        m[(1, 1)]
    )
}

fn report_json(state: &ResolvedState, report: &SteeringReport) -> serde_json::Value {
    let two_pi = std::f64::consts::TAU;
    serde_json::json!({
        "convention": CONVENTION,
        "family": state.family_label,
        "parameters": state.parameters,
        "v_conditional": cov2_json(&report.v_conditional),
        "nu": report.nu,
        "s": cov2_json(&report.s),
        "r_opt": cov2_json(&report.r_opt),
        "tr_conditional": report.tr_conditional,
        "tr_conditional_opt": report.tr_conditional_opt,
        "negativity_bare": report.negativity_bare,
        "negativity_steered": report.negativity_steered,
        "marginal_bare": report.marginal_bare,
        "marginal_steered": report.marginal_steered,
        "w_min_bare": report.w_min_bare,
        "w_min_opt": report.w_min_opt,
        "two_pi_w_min_bare": report.w_min_bare.map(|w| two_pi * w),
        "two_pi_w_min_opt": report.w_min_opt.map(|w| two_pi * w),
    })
}

fn yes_no(v: bool) -> &'static str {
    if v {
        "yes"
    } else {
        "no"
    }
}

fn print_report(state: &ResolvedState, report: &SteeringReport) {
    let two_pi = std::f64::consts::TAU;
    println!("steering analysis ({CONVENTION})");
    println!("  family: {} ({})", state.family_label, state.parameters_text);
    println!("  conditional covariance V_g|f : {}", cov2_text(&report.v_conditional));
    println!("  symplectic eigenvalue nu     : {:.10}", report.nu);
    println!(
        "  tr V_g|f (bare subtraction)  : {:.10}  -> negativity: {}",
        report.tr_conditional,
        yes_no(report.negativity_bare)
    );
    println!(
        "  tr with optimal pre-operation: {:.10}  -> negativity: {}",
        report.tr_conditional_opt,
        yes_no(report.negativity_steered)
    );
    println!("  optimal pre-operation R_opt  : {}", cov2_text(&report.r_opt));
    match report.w_min_bare {
        Some(w) => println!(
            "  Wigner minimum (bare)        : {:.10}  (2 pi w = {:.6})",
            w,
            two_pi * w
        ),
        None => println!("  Wigner minimum (bare)        : undefined (nothing to subtract)"),
    }
    match report.w_min_opt {
        Some(w) => println!(
            "  Wigner minimum (optimal)     : {:.10}  (2 pi w = {:.6})",
            w,
            two_pi * w
        ),
        None => println!("  Wigner minimum (optimal)     : undefined (nothing to subtract)"),
    }
    if report.marginal_bare || report.marginal_steered {
        println!("  note: verdict lies within numerical tolerance of the decision boundary");
    }
    println!(
        "  steering (remote negativity attainable): {}",
        yes_no(report.negativity_steered)
    );
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<()> {
    let config = FileConfig::load(args.config.as_deref())?;
    let state = resolve_state(
        args.family,
        args.n,
        args.sdb,
        args.sdb2,
        args.graph.as_deref(),
        args.f,
        args.g,
        &config,
    )?;
    let report = analyze(&state.pair)?;
    // A state with nothing to subtract cannot produce any subtracted-state
    // Wigner function; a single-point query on it is a precondition error
    // even though the steering verdict itself is well defined.
    if report.w_min_bare.is_none() {
        return Err(Error::NoPhotonToSubtract {
            mean_photons: (state.pair.v_g.trace() + state.pair.xi_g.norm_squared() - 2.0) / 4.0,
        });
    }
    if args.json {
        println!("{}", serde_json::to_string_pretty(&report_json(&state, &report))?);
    } else {
        print_report(&state, &report);
    }
    Ok(())
}

/// Writer that targets a file when `--out` is given, stdout otherwise.
fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    match path {
        Some(p) => Ok(Box::new(std::fs::File::create(p)?)),
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<()> {
    let config = FileConfig::load(args.config.as_deref())?;
    let axis_from = |cfg: Option<AxisConfig>| -> Result<Option<Axis>> {
        cfg.map(|a| Axis::new(a.min, a.max, a.steps)).transpose()
    };
    let n = match args.n {
        Some(a) => a,
        None => axis_from(config.n_axis)?.unwrap_or(Axis::new(1.0, 2.0, 101)?),
    };
    let sdb = match args.sdb {
        Some(a) => a,
        None => axis_from(config.sdb_axis)?.unwrap_or(Axis::new(0.0, 10.0, 101)?),
    };
    let asym_db = match args.asym {
        Some(a) => a,
        None => axis_from(config.asym_axis)?.unwrap_or(Axis::fixed(0.0)?),
    };
    let family = match resolve_family(args.family, &config)? {
        FamilyArg::Epr => StateFamily::Epr,
        FamilyArg::Graph => {
            let path = args
                .graph
                .clone()
                .or_else(|| config.graph.clone())
                .ok_or_else(|| Error::InvalidInput("graph family needs --graph FILE".into()))?;
            let (graph, warnings) = load_graph(&path)?;
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            StateFamily::Graph {
                graph,
                f: args.f.or(config.f).unwrap_or(0),
                g: args.g.or(config.g).unwrap_or(1),
            }
        }
    };
    let spec = SweepSpec { family, n, sdb, asym_db };
    let records = run_sweep(&spec)?;
    let mut out = open_output(args.out.as_deref())?;
    match args.format.unwrap_or(FormatArg::Csv) {
        FormatArg::Csv => write_records_csv(&mut out, &spec, &records)?,
        FormatArg::Json => write_records_json(&mut out, &spec, &records)?,
    }
    Ok(())
}

fn choose_pre_op(choice: Option<PreOpArg>, report: &SteeringReport) -> Cov2 {
    match choice.unwrap_or(PreOpArg::Identity) {
        PreOpArg::Identity => Cov2::identity(),
        PreOpArg::Optimal => report.r_opt,
    }
}

fn write_grid_csv<W: Write>(
    out: &mut W,
    grid: &WignerGrid,
    extra: &[(String, String)],
) -> Result<()> {
    writeln!(out, "# generator: steerwig v{}", env!("CARGO_PKG_VERSION"))?;
    writeln!(out, "# convention: {CONVENTION}")?;
    for (k, v) in extra {
        writeln!(out, "# {k}: {v}")?;
    }
    match (grid.w_min, grid.min_location) {
        (Some(w), Some((x, p))) => {
            writeln!(out, "# w_min: {}", format_float(w))?;
            writeln!(out, "# min_location: {} {}", format_float(x), format_float(p))?;
        }
        _ => writeln!(out, "# w_min: undefined")?,
    }
    writeln!(out, "x,p,w")?;
    for ix in 0..grid.nx {
        for ip in 0..grid.np {
            writeln!(
                out,
                "{},{},{}",
                format_float(grid.x_at(ix)),
                format_float(grid.p_at(ip)),
                format_float(grid.value(ix, ip))
            )?;
        }
    }
    Ok(())
}

fn write_grid_json<W: Write>(
    out: &mut W,
    grid: &WignerGrid,
    extra: &[(String, String)],
) -> Result<()> {
    let mut meta = serde_json::Map::new();
    meta.insert("generator".into(), format!("steerwig v{}", env!("CARGO_PKG_VERSION")).into());
    meta.insert("convention".into(), CONVENTION.into());
    for (k, v) in extra {
        meta.insert(k.clone(), v.clone().into());
    }
    meta.insert("w_min".into(), serde_json::json!(grid.w_min));
    meta.insert(
        "min_location".into(),
        serde_json::json!(grid.min_location.map(|(x, p)| vec![x, p])),
    );
    let records: Vec<serde_json::Value> = (0..grid.nx)
        .flat_map(|ix| {
            (0..grid.np).map(move |ip| {
                serde_json::json!({
                    "x": grid.x_at(ix),
                    "p": grid.p_at(ip),
                    "w": grid.value(ix, ip),
                })
            })
        })
        .collect();
    let doc = serde_json::json!({ "metadata": meta, "records": records });
    serde_json::to_writer_pretty(&mut *out, &doc)?;
    writeln!(out)?;
    Ok(())
}

fn cmd_wigner(args: &WignerArgs) -> Result<()> {
    let config = FileConfig::load(args.config.as_deref())?;
    let state = resolve_state(
        args.family,
        args.n,
        args.sdb,
        args.sdb2,
        args.graph.as_deref(),
        args.f,
        args.g,
        &config,
    )?;
    let report = analyze(&state.pair)?;
    let r = choose_pre_op(args.r, &report);
    let half = args.window.or(config.window).unwrap_or(6.0);
    let resolution = args.resolution.or(config.resolution).unwrap_or(101);
    let grid = wigner_grid(&state.pair, &r, WignerWindow::symmetric(half), resolution, resolution)?;
    let pre_op_label = match args.r.unwrap_or(PreOpArg::Identity) {
        PreOpArg::Identity => "identity".to_string(),
        PreOpArg::Optimal => format!("optimal {}", cov2_text(&report.r_opt)),
    };
    let extra = vec![
        ("family".to_string(), format!("{} ({})", state.family_label, state.parameters_text)),
        ("pre_op".to_string(), pre_op_label),
        ("nu".to_string(), format_float(report.nu)),
    ];
    let mut out = open_output(args.out.as_deref())?;
    match args.format.unwrap_or(FormatArg::Csv) {
        FormatArg::Csv => write_grid_csv(&mut out, &grid, &extra)?,
        FormatArg::Json => write_grid_json(&mut out, &grid, &extra)?,
    }
    Ok(())
}

fn cmd_verify(args: &VerifyArgs) -> Result<()> {
    let config = FileConfig::load(args.config.as_deref())?;
    let n_value = args.n.or(config.n).unwrap_or(1.2);
    let sdb1 = args.sdb.or(config.sdb).unwrap_or(4.0);
    let sdb2 = args.sdb2.or(config.sdb2).unwrap_or(sdb1);
    let xi = args
        .xi_g
        .or(config.xi_g.map(|[x, p]| (x, p)))
        .unwrap_or((0.0, 0.0));
    let cutoff = args.cutoff.or(config.cutoff).unwrap_or(30);
    let half = args.window.or(config.window).unwrap_or(5.0);
    let resolution = args.resolution.or(config.resolution).unwrap_or(41);

    let noise = ThermalNoise::new(n_value)?;
    let s1 = Squeezing::from_db(sdb1)?;
    let s2 = Squeezing::from_db(sdb2)?;
    let xi_g = Vector2::new(xi.0, xi.1);

    // Closed-form side: displaced resource, analytic grid.
    let mut state = epr_state(s1, s2, noise);
    if xi_g != Vector2::zeros() {
        state = state.displace(&DVector::from_vec(vec![0.0, 0.0, xi_g[0], xi_g[1]]))?;
    }
    let pair = state.extract_canonical_pair(0, 1)?;
    let report = analyze(&pair)?;
    let r = choose_pre_op(args.r, &report);
    let window = WignerWindow::symmetric(half);
    let analytic = wigner_grid(&pair, &r, window, resolution, resolution)?;
    let transformed_v_g = r.transpose() * pair.v_g * r;
    let transformed_xi = r.transpose() * pair.xi_g;
    let analytic_weight =
        (transformed_v_g.trace() + transformed_xi.norm_squared() - 2.0) / 4.0;

    // Brute-force side.
    let oracle = oracle_reduced_wigner(
        s1,
        s2,
        noise,
        &xi_g,
        &r,
        window,
        resolution,
        resolution,
        &OracleConfig { cutoff, ..Default::default() },
    )?;

    let sup = analytic.sup_distance(&oracle.grid)?;
    let weight_rel = if analytic_weight.abs() > 0.0 {
        (analytic_weight - oracle.click_weight).abs() / analytic_weight.abs()
    } else {
        (analytic_weight - oracle.click_weight).abs()
    };
    let pre_op_label = match args.r.unwrap_or(PreOpArg::Identity) {
        PreOpArg::Identity => "identity",
        PreOpArg::Optimal => "optimal",
    };
    println!("truncated-Fock oracle vs closed form ({CONVENTION})");
    println!(
        "  parameters: n = {n_value}, s1 = {sdb1} dB, s2 = {sdb2} dB, xi_g = ({}, {}), pre-op: {}",
        xi.0, xi.1, pre_op_label
    );
    println!(
        "  cutoff: {cutoff} levels/mode, window: +/-{half}, resolution: {resolution}x{resolution}"
    );
    println!("  truncation leakage           : {:.3e}", oracle.leakage);
    println!("  sup |W_closed - W_oracle|    : {sup:.3e}  (tolerance {VERIFY_TOLERANCE:.0e})");
    println!(
        "  subtraction weight           : closed form {:.12}, oracle {:.12} (relative diff {:.3e})",
        analytic_weight, oracle.click_weight, weight_rel
    );
    if sup <= VERIFY_TOLERANCE && weight_rel <= VERIFY_TOLERANCE {
        println!("  PASS");
        Ok(())
    } else {
        println!("  FAIL");
        Err(Error::VerificationFailed(format!(
            "sup deviation {sup:.3e}, weight deviation {weight_rel:.3e} \
             (tolerance {VERIFY_TOLERANCE:.0e})"
        )))
    }
}

fn cmd_graph_info(args: &GraphInfoArgs) -> Result<()> {
    let (graph, warnings) = load_graph(&args.graph)?;
    println!("graph file: {}", args.graph.display());
    println!("  vertices: {}", graph.vertex_count());
    println!("  edges: {}", graph.edge_count());
    for (a, b) in graph.edges() {
        // Stored 0-based; edge lists are written 1-based.
        println!("    {} -- {}", a + 1, b + 1);
    }
    let degrees: Vec<String> =
        (0..graph.vertex_count()).map(|v| graph.degree(v).to_string()).collect();
    println!("  degrees: [{}]", degrees.join(", "));
    for w in &warnings {
        println!("  warning: {w}");
    }
    Ok(())
}
