//! Command-line interface: `scan`, `mc`, `verify`, `isochrone`, `plotgrid`.
//!
//! Exit codes: `0` success, `1` usage or input validation, `2` a numerical
//! threshold was not met (verification failure, form disagreement,
//! travel-time failure), `3` an I/O failure. The `CONJSCAN_TOL` environment
//! variable supplies a default tolerance for the commands that take
//! `--tol`; an explicit flag always wins.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use crate::conjugacy::{self, ConjugacyResult};
use crate::error::{Error, Result};
use crate::field::VectorField;
use crate::geometry::TorusGeometry;
use crate::io;
use crate::isochrone::{
    max_relative_spread, period_table, EllipticVortex, RadialPower, StreamFunction,
};
use crate::kolmogorov::{self, KolmogorovFlow};
use crate::ops;
use crate::tol;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// The process exit code an error maps to.
pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Io(_) => EXIT_IO,
        Error::Parse(_)
        | Error::InvalidParameter(_)
        | Error::GeometryMismatch(_, _)
        | Error::ZeroField => EXIT_VALIDATION,
        Error::NotDivergenceFree { .. }
        | Error::Inconclusive(_)
        | Error::Stagnation(_)
        | Error::NoReturn(_)
        | Error::ContourNotClosed(_)
        | Error::InvalidLevel(_, _, _) => EXIT_NUMERICAL,
    }
}

#[derive(Parser)]
#[command(
    name = "conjscan",
    version,
    about = "Conjugate-point criterion and streamline-period toolkit for steady 2-D ideal flows"
)]
pub struct Cli {
    /// Worker threads for grid scans (0 = automatic).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Scan the (n, m) grid of cellular flows at a fixed torus aspect.
    Scan(ScanArgs),
    /// Evaluate the conjugate-point criterion for one flow and direction.
    Mc(McArgs),
    /// Check closed forms against the mode algebra, or validate a field file.
    Verify(VerifyArgs),
    /// Streamline travel times across level sets of a planar flow.
    Isochrone(IsochroneArgs),
    /// Dense grids of the positive closed-form values, for plotting.
    Plotgrid(PlotgridArgs),
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    Both,
}

#[derive(Args)]
pub struct ScanArgs {
    /// Torus aspect ratio α (> 0).
    #[arg(long)]
    pub alpha: f64,
    #[arg(long, default_value_t = 8)]
    pub n_max: u32,
    #[arg(long, default_value_t = 8)]
    pub m_max: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct McArgs {
    /// Cellular-flow index n (with --m and --alpha).
    #[arg(long)]
    pub n: Option<i32>,
    /// Cellular-flow index m (with --n and --alpha).
    #[arg(long)]
    pub m: Option<i32>,
    /// Torus aspect ratio α.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Which canonical test direction(s) to probe (built-in flows only).
    #[arg(long, value_enum, default_value_t = Direction::Both)]
    pub direction: Direction,
    /// Base flow from a JSON mode file instead of --n/--m/--alpha.
    #[arg(long)]
    pub field: Option<PathBuf>,
    /// Test direction from a JSON mode file.
    #[arg(long)]
    pub test_field: Option<PathBuf>,
    /// Threshold on the relative gap between the two criterion forms.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Emit machine-readable JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Torus aspect ratio α for closed-form verification.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Restrict closed-form verification to one n (default: whole grid).
    #[arg(long)]
    pub n: Option<i32>,
    /// Restrict closed-form verification to one m (default: whole grid).
    #[arg(long)]
    pub m: Option<i32>,
    #[arg(long, default_value_t = 4)]
    pub n_max: u32,
    #[arg(long, default_value_t = 4)]
    pub m_max: u32,
    /// Validate a JSON field file instead of closed forms.
    #[arg(long)]
    pub field: Option<PathBuf>,
    /// Additionally require the field to be a steady flow.
    #[arg(long)]
    pub steady: bool,
    /// Acceptance threshold (default 1e-9 for closed forms, 1e-12 for
    /// field residuals; see also CONJSCAN_TOL).
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Args)]
pub struct IsochroneArgs {
    /// Flow: "elliptic:A,B", "power4", or "radial:P".
    #[arg(long)]
    pub flow: String,
    /// Comma-separated level values, e.g. "0.5,1,2".
    #[arg(long)]
    pub levels: String,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Threshold on the gap between the two travel-time algorithms.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Args)]
pub struct PlotgridArgs {
    /// Fixed-aspect layout: grid over (n, m) at this α.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Fixed-n layout: grid over (α, m) at this n.
    #[arg(long)]
    pub n: Option<i32>,
    #[arg(long)]
    pub alpha_min: Option<f64>,
    #[arg(long)]
    pub alpha_max: Option<f64>,
    #[arg(long, default_value_t = 41)]
    pub alpha_count: usize,
    /// Space the α axis logarithmically.
    #[arg(long)]
    pub log: bool,
    #[arg(long, default_value_t = 8)]
    pub n_max: u32,
    #[arg(long, default_value_t = 8)]
    pub m_max: u32,
    /// Output path (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses and dispatches; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_VALIDATION,
            };
        }
    };
    if cli.threads > 0 {
        // Ignore the error if a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global();
    }
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Scan(args) => cmd_scan(args),
        Command::Mc(args) => cmd_mc(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Isochrone(args) => cmd_isochrone(args),
        Command::Plotgrid(args) => cmd_plotgrid(args),
    }
}

/// Resolves a tolerance: explicit flag, then `CONJSCAN_TOL`, then default.
fn resolve_tol(flag: Option<f64>, default: f64) -> Result<f64> {
    let check = |t: f64, origin: &str| {
        if t.is_finite() && t > 0.0 {
            Ok(t)
        } else {
            Err(Error::InvalidParameter(format!(
                "tolerance from {origin} must be finite and positive, got {t}"
            )))
        }
    };
    if let Some(t) = flag {
        return check(t, "--tol");
    }
    if let Ok(raw) = std::env::var("CONJSCAN_TOL") {
        let t: f64 = raw.parse().map_err(|_| {
            Error::InvalidParameter(format!("CONJSCAN_TOL is not a number: {raw:?}"))
        })?;
        return check(t, "CONJSCAN_TOL");
    }
    Ok(default)
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn read_field(path: &Path) -> Result<VectorField> {
    let text = fs::read_to_string(path)?;
    io::read_field_str(&text)
}

// ---------------------------------------------------------------------
// scan
// ---------------------------------------------------------------------

fn cmd_scan(args: ScanArgs) -> Result<i32> {
    let records = kolmogorov::scan_grid(args.alpha, args.n_max, args.m_max)?;
    let content = match args.format {
        Format::Csv => io::scan_csv_string(&records),
        Format::Json => io::to_json_pretty(&io::ScanDocument {
            alpha: args.alpha,
            n_max: args.n_max,
            m_max: args.m_max,
            records,
        })?,
    };
    emit(&args.out, &content)?;
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------
// mc
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct DirectionOutput {
    label: String,
    #[serde(flatten)]
    result: ConjugacyResult,
    /// Per-unit-energy value `mc / (4π²·⟨|u0|²⟩)`.
    mc_hat: f64,
    /// `π√(2/mc_hat)` when `mc_hat > 0`.
    tc_hat: Option<f64>,
}

#[derive(Serialize)]
struct McDocument {
    flow: String,
    mean_energy_density: f64,
    stationarity: f64,
    results: Vec<DirectionOutput>,
}

fn normalized(result: &ConjugacyResult, energy_density: f64) -> (f64, Option<f64>) {
    let mc_hat = result.mc / (4.0 * PI * PI * energy_density);
    let tc_hat = if mc_hat > 0.0 {
        Some(PI * (2.0 / mc_hat).sqrt())
    } else {
        None
    };
    (mc_hat, tc_hat)
}

fn cmd_mc(args: McArgs) -> Result<i32> {
    let gap_tol = resolve_tol(args.tol, tol::FORM_GAP)?;
    let triple = (args.n, args.m, args.alpha);
    let (u0, flow_label, builtin): (VectorField, String, Option<KolmogorovFlow>) =
        match (&args.field, triple) {
            (Some(path), (None, None, None)) => {
                (read_field(path)?, format!("file: {}", path.display()), None)
            }
            (None, (Some(n), Some(m), Some(alpha))) => {
                let geometry = TorusGeometry::new(alpha)?;
                let flow = KolmogorovFlow::new(geometry, n, m)?;
                (
                    flow.velocity(),
                    format!("cellular (n, m) = ({n}, {m}), alpha = {alpha}"),
                    Some(flow),
                )
            }
            _ => {
                return Err(Error::InvalidParameter(
                    "give either --field FILE or all of --n, --m, --alpha".into(),
                ))
            }
        };

    let mut pairs: Vec<(String, VectorField)> = Vec::new();
    if let Some(path) = &args.test_field {
        pairs.push((format!("file: {}", path.display()), read_field(path)?));
    } else if let Some(flow) = &builtin {
        if matches!(args.direction, Direction::One | Direction::Both) {
            pairs.push(("direction 1".into(), flow.test_direction_1()));
        }
        if matches!(args.direction, Direction::Two | Direction::Both) {
            pairs.push(("direction 2".into(), flow.test_direction_2()));
        }
    } else {
        return Err(Error::InvalidParameter(
            "a file-based flow needs --test-field for the direction".into(),
        ));
    }

    let energy_density = u0.norm2() / u0.geometry().area();
    let stationarity = ops::stationarity_residual(&u0);
    let mut outputs = Vec::new();
    for (label, v) in &pairs {
        let result = conjugacy::evaluate(&u0, v)?;
        let (mc_hat, tc_hat) = normalized(&result, energy_density);
        outputs.push(DirectionOutput {
            label: label.clone(),
            result,
            mc_hat,
            tc_hat,
        });
    }

    let worst_gap = outputs
        .iter()
        .map(|o| o.result.form_gap)
        .fold(0.0f64, f64::max);

    if args.json {
        let doc = McDocument {
            flow: flow_label,
            mean_energy_density: energy_density,
            stationarity,
            results: outputs,
        };
        print!("{}", io::to_json_pretty(&doc)?);
    } else {
        println!("flow: {flow_label}");
        println!("mean energy density = {energy_density:.16e}");
        println!("stationarity residual = {stationarity:.3e}");
        for o in &outputs {
            println!("{}:", o.label);
            match o.result.tc {
                Some(tc) => println!("  mc     = {:.16e}   tc     = {:.16e}", o.result.mc, tc),
                None => println!(
                    "  mc     = {:.16e}   (no conjugate point certified)",
                    o.result.mc
                ),
            }
            match o.tc_hat {
                Some(tc) => println!("  mc_hat = {:.16e}   tc_hat = {:.16e}", o.mc_hat, tc),
                None => println!("  mc_hat = {:.16e}", o.mc_hat),
            }
            println!(
                "  curvature term = {:.16e}   projection defect = {:.16e}   form gap = {:.3e}",
                o.result.curvature_term, o.result.p_advect_norm2, o.result.form_gap
            );
        }
    }
    if stationarity > tol::STATIONARITY_WARN {
        eprintln!("warning: base flow is not numerically steady (residual {stationarity:.3e})");
    }
    if worst_gap > gap_tol {
        eprintln!(
            "error: criterion forms disagree beyond tolerance ({worst_gap:.3e} > {gap_tol:.3e})"
        );
        return Ok(EXIT_NUMERICAL);
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------

fn cmd_verify(args: VerifyArgs) -> Result<i32> {
    match (&args.field, args.alpha) {
        (Some(path), None) => {
            let tol_value = resolve_tol(args.tol, tol::TOL_DIVFREE)?;
            verify_field(path, args.steady, tol_value)
        }
        (None, Some(alpha)) => {
            let tol_value = resolve_tol(args.tol, tol::VERIFY_REL)?;
            verify_closed_forms(alpha, args.n, args.m, args.n_max, args.m_max, tol_value)
        }
        _ => Err(Error::InvalidParameter(
            "give either --field FILE or --alpha A".into(),
        )),
    }
}

fn verify_field(path: &Path, steady: bool, tol_value: f64) -> Result<i32> {
    let field = read_field(path)?;
    println!(
        "field: alpha = {}, {} + {} modes",
        field.geometry().alpha(),
        field.x().num_modes(),
        field.y().num_modes()
    );
    let div = field.div_residual();
    let mut pass = div <= tol_value;
    println!(
        "divergence residual = {div:.3e}  (tol {tol_value:.1e})  {}",
        if div <= tol_value { "PASS" } else { "FAIL" }
    );
    if steady {
        let st = ops::stationarity_residual(&field);
        let ok = st <= tol_value;
        pass &= ok;
        println!(
            "stationarity residual = {st:.3e}  (tol {tol_value:.1e})  {}",
            if ok { "PASS" } else { "FAIL" }
        );
    }
    Ok(if pass { EXIT_OK } else { EXIT_NUMERICAL })
}

fn verify_closed_forms(
    alpha: f64,
    n_only: Option<i32>,
    m_only: Option<i32>,
    n_max: u32,
    m_max: u32,
    tol_value: f64,
) -> Result<i32> {
    TorusGeometry::new(alpha)?;
    let ns: Vec<i32> = match n_only {
        Some(n) => vec![n],
        None => (-(n_max as i32)..=n_max as i32).collect(),
    };
    let ms: Vec<i32> = match m_only {
        Some(m) => vec![m],
        None => (-(m_max as i32)..=m_max as i32).collect(),
    };
    let mut cells = 0usize;
    let mut worst = (0.0f64, 0i32, 0i32, 1u8);
    for &n in &ns {
        for &m in &ms {
            if n == 0 && m == 0 {
                continue;
            }
            let rec = kolmogorov::scan_cell(alpha, n, m)?;
            let scale1 = rec.mc_num_1.abs().max(1.0);
            let dev1 = (rec.mc_num_1 - kolmogorov::mc_closed_form_1(n, m, alpha)).abs() / scale1;
            let scale2 = rec.mc_num_2.abs().max(1.0);
            let dev2 = (rec.mc_num_2 - kolmogorov::mc_closed_form_2(n, m, alpha)).abs() / scale2;
            if dev1 > worst.0 {
                worst = (dev1, n, m, 1);
            }
            if dev2 > worst.0 {
                worst = (dev2, n, m, 2);
            }
            cells += 1;
        }
    }
    println!("closed-form check: alpha = {alpha}, {cells} cells");
    println!(
        "max relative deviation = {:.3e} at (n, m) = ({}, {}), direction {}",
        worst.0, worst.1, worst.2, worst.3
    );
    if worst.0 <= tol_value {
        println!("PASS (tol {tol_value:.1e})");
        Ok(EXIT_OK)
    } else {
        println!("FAIL (tol {tol_value:.1e})");
        Ok(EXIT_NUMERICAL)
    }
}

// ---------------------------------------------------------------------
// isochrone
// ---------------------------------------------------------------------

enum AnyFlow {
    Elliptic(EllipticVortex),
    Radial(RadialPower),
}

impl StreamFunction for AnyFlow {
    fn psi(&self, x: f64, y: f64) -> f64 {
        match self {
            AnyFlow::Elliptic(f) => f.psi(x, y),
            AnyFlow::Radial(f) => f.psi(x, y),
        }
    }

    fn grad_psi(&self, x: f64, y: f64) -> (f64, f64) {
        match self {
            AnyFlow::Elliptic(f) => f.grad_psi(x, y),
            AnyFlow::Radial(f) => f.grad_psi(x, y),
        }
    }
}

fn parse_flow(expr: &str) -> Result<(AnyFlow, String)> {
    let bad = |s: &str| {
        Error::InvalidParameter(format!(
            "unknown flow {s:?}; expected elliptic:A,B, power4, or radial:P"
        ))
    };
    if expr == "power4" {
        return Ok((AnyFlow::Radial(RadialPower::power4()), "radial(p=4)".into()));
    }
    if let Some(rest) = expr.strip_prefix("elliptic:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            return Err(bad(expr));
        }
        let a: f64 = parts[0].trim().parse().map_err(|_| bad(expr))?;
        let b: f64 = parts[1].trim().parse().map_err(|_| bad(expr))?;
        let flow = EllipticVortex::new(a, b)?;
        return Ok((AnyFlow::Elliptic(flow), format!("elliptic(a={a}, b={b})")));
    }
    if let Some(rest) = expr.strip_prefix("radial:") {
        let p: f64 = rest.trim().parse().map_err(|_| bad(expr))?;
        let flow = RadialPower::new(p)?;
        return Ok((AnyFlow::Radial(flow), format!("radial(p={p})")));
    }
    Err(bad(expr))
}

fn parse_levels(expr: &str) -> Result<Vec<f64>> {
    let levels: Vec<f64> = expr
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| Error::InvalidParameter(format!("bad level value {s:?}")))
        })
        .collect::<Result<_>>()?;
    if levels.is_empty() {
        return Err(Error::InvalidParameter(
            "level list must be nonempty".into(),
        ));
    }
    Ok(levels)
}

fn cmd_isochrone(args: IsochroneArgs) -> Result<i32> {
    let tol_value = resolve_tol(args.tol, tol::ISO_TOL)?;
    let (flow, label) = parse_flow(&args.flow)?;
    let levels = parse_levels(&args.levels)?;
    let results = period_table(&flow, &levels);
    let spread = max_relative_spread(&results);
    let content = match args.format {
        Format::Csv => {
            let mut buf = Vec::new();
            io::write_period_csv(&mut buf, &results, spread)?;
            String::from_utf8(buf).expect("CSV output is ASCII")
        }
        Format::Json => io::to_json_pretty(&io::IsochroneDocument {
            flow: label.clone(),
            results: results.clone(),
            max_relative_spread: spread,
        })?,
    };
    emit(&args.out, &content)?;

    let failed_rows = results.iter().filter(|r| r.status != "ok").count();
    let worst_gap = results
        .iter()
        .filter_map(|r| r.discrepancy)
        .fold(0.0f64, f64::max);
    match spread {
        Some(s) => eprintln!(
            "{label}: spread across levels = {s:.3e}; isochronal within {tol_value:.1e}: {}",
            if s <= tol_value { "yes" } else { "no" }
        ),
        None => eprintln!("{label}: no level succeeded"),
    }
    if failed_rows > 0 {
        eprintln!("error: {failed_rows} level(s) failed");
        return Ok(EXIT_NUMERICAL);
    }
    if worst_gap > tol_value {
        eprintln!("error: travel-time algorithms disagree ({worst_gap:.3e} > {tol_value:.1e})");
        return Ok(EXIT_NUMERICAL);
    }
    Ok(EXIT_OK)
}

// ---------------------------------------------------------------------
// plotgrid
// ---------------------------------------------------------------------

fn cmd_plotgrid(args: PlotgridArgs) -> Result<i32> {
    let grid = match (args.alpha, args.n) {
        (Some(alpha), None) => io::plotgrid_fixed_alpha(alpha, args.n_max, args.m_max)?,
        (None, Some(n)) => {
            let (lo, hi) = match (args.alpha_min, args.alpha_max) {
                (Some(lo), Some(hi)) if lo > 0.0 && hi > lo && hi.is_finite() => (lo, hi),
                _ => {
                    return Err(Error::InvalidParameter(
                        "fixed-n layout needs --alpha-min < --alpha-max (both > 0)".into(),
                    ))
                }
            };
            if args.alpha_count < 2 {
                return Err(Error::InvalidParameter(
                    "--alpha-count must be at least 2".into(),
                ));
            }
            let k = args.alpha_count;
            let alphas: Vec<f64> = (0..k)
                .map(|i| {
                    let t = i as f64 / (k - 1) as f64;
                    if args.log {
                        (lo.ln() + t * (hi.ln() - lo.ln())).exp()
                    } else {
                        lo + t * (hi - lo)
                    }
                })
                .collect();
            io::plotgrid_fixed_n(n, &alphas, args.m_max)?
        }
        _ => {
            return Err(Error::InvalidParameter(
                "give exactly one of --alpha (fixed aspect) or --n (fixed n)".into(),
            ))
        }
    };
    let content = io::to_json_pretty(&grid)?;
    emit(&args.out, &content)?;
    Ok(EXIT_OK)
}
