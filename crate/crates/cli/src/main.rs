//! `levy-laplace`: evaluate one-sided stable densities and the transforms
//! built from them, and run the verification suites.
//!
//! Exit codes: 0 success, 1 evaluation or verification failure, 2 usage
//! error, 3 infrastructure error (threads, output file).

mod grid;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use levy_laplace::{
    catalog, catalog_entry, correlation_F, correlation_F_by_quadrature, run_suite, transforms, CorrelationParams,
    DensityEvaluator, DensityMethod, QuadratureConfig, RationalOrder, Suite, TransformKind,
};
use rayon::prelude::*;
use serde_json::json;

use grid::Grid;
use output::{Cell, Format, Output};

const THREADS_ENV: &str = "LEVY_LAPLACE_THREADS";

#[derive(Parser)]
#[command(name = "levy-laplace", version, about = "One-sided Lévy stable densities and their Laplace identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate g_α(x) on a grid.
    Density {
        /// Stability index as "l/k".
        #[arg(long)]
        alpha: String,
        /// start:stop:count[:lin|:log]
        #[arg(long)]
        grid: Grid,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the tilde or bar transform of a catalog function on a grid.
    Transform {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        alpha: String,
        /// Catalog function name (see `catalog`).
        #[arg(long = "f")]
        f: String,
        #[arg(long)]
        grid: Grid,
        /// Relative quadrature tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate the correlation function F_{α,β}(p, y) on a grid of p.
    Correlate {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        beta: String,
        #[arg(long, default_value_t = 1.0)]
        y: f64,
        /// Grid of p values.
        #[arg(long)]
        grid: Grid,
        /// Also evaluate the double integral by quadrature.
        #[arg(long)]
        quadrature: bool,
        /// Relative tolerance for the quadrature column.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        /// Pass threshold; defaults to the suite's own.
        #[arg(long)]
        tol: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// List the built-in Laplace pairs.
    Catalog {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    ClosedForm,
    Series,
    Integral,
    Talbot,
}

impl From<MethodArg> for DensityMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => DensityMethod::Auto,
            MethodArg::ClosedForm => DensityMethod::ClosedForm,
            MethodArg::Series => DensityMethod::Series,
            MethodArg::Integral => DensityMethod::Integral,
            MethodArg::Talbot => DensityMethod::Talbot,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Tilde,
    Bar,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse::<Suite>().map_err(|_| {
        let names: Vec<_> = Suite::VALUES.iter().map(|s| s.name()).collect();
        format!("unknown suite {s:?}; expected one of {}", names.join(", "))
    })
}

enum Failure {
    Evaluation(String),
    Usage(String),
    Infrastructure(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Evaluation(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Infrastructure(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Evaluation(m) | Failure::Usage(m) | Failure::Infrastructure(m) => m,
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn order_arg(flag: &str, s: &str) -> CliResult<RationalOrder> {
    let (order, original) = RationalOrder::parse_reducing(s).map_err(|e| Failure::Usage(format!("--{flag}: {e}")))?;
    if let Some((l, k)) = original {
        eprintln!("warning: --{flag} {l}/{k} reduced to {order}");
    }
    Ok(order)
}

fn positive_tol(flag: &str, t: f64) -> CliResult<f64> {
    if t > 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(Failure::Usage(format!("--{flag} must be positive, got {t}")))
    }
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("{THREADS_ENV} must be a non-negative integer, got {raw:?}")))?;
    if n > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Infrastructure(format!("thread pool: {e}")))?;
    }
    Ok(())
}

fn emit(out: &Output, common: &Common) -> CliResult<()> {
    let infra = |e: io::Error| Failure::Infrastructure(format!("writing output: {e}"));
    match &common.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| Failure::Infrastructure(format!("{}: {e}", path.display())))?;
            let mut w = BufWriter::new(file);
            out.write(common.format, &mut w).map_err(infra)?;
            w.flush().map_err(infra)
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            out.write(common.format, &mut lock).map_err(infra)
        }
    }
}

fn method_name(m: DensityMethod) -> String {
    match json!(m) {
        serde_json::Value::String(s) => s,
        other => other.to_string(),
    }
}

fn density_cmd(alpha: &str, grid: &Grid, method: MethodArg, common: &Common) -> CliResult<()> {
    let order = order_arg("alpha", alpha)?;
    let eval = DensityEvaluator::new(order).with_method(method.into());
    let values = grid
        .points()
        .par_iter()
        .map(|&x| eval.evaluate(x).map(|v| (x, v)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Evaluation(format!("density: {e}")))?;
    let warned = values.iter().filter(|(_, v)| v.warning.is_some()).count();
    if warned > 0 {
        eprintln!("warning: {warned} point(s) carry an accuracy warning (underflow or tolerance not met)");
    }
    let mut out = Output::new("density", vec!["x", "value", "ln_value", "method"])
        .meta("alpha", order.to_string());
    out.rows = values
        .into_iter()
        .map(|(x, v)| vec![x.into(), v.value.into(), v.ln_value.into(), method_name(v.method).into()])
        .collect();
    emit(&out, common)
}

fn transform_cmd(kind: KindArg, alpha: &str, f: &str, grid: &Grid, tol: f64, common: &Common) -> CliResult<()> {
    let order = order_arg("alpha", alpha)?;
    let tol = positive_tol("tol", tol)?;
    let pair = catalog_entry(f).ok_or_else(|| {
        let names: Vec<_> = catalog().iter().map(|p| p.name).collect();
        Failure::Usage(format!("unknown function {f:?}; available: {}", names.join(", ")))
    })?;
    let kind = match kind {
        KindArg::Tilde => TransformKind::Tilde,
        KindArg::Bar => TransformKind::Bar,
    };
    let quad = QuadratureConfig::new(1e-14, tol, 2000, 1.0).map_err(|e| Failure::Usage(format!("--tol: {e}")))?;
    let values = grid
        .points()
        .par_iter()
        .map(|&x| transforms::transform(kind, pair, order, x, &quad).map(|v| (x, v)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::Evaluation(format!("{} transform: {e}", kind.as_str())))?;
    let mut out = Output::new("transform", vec!["x", "value"])
        .meta("kind", kind.as_str())
        .meta("alpha", order.to_string())
        .meta("f", pair.name);
    out.rows = values.into_iter().map(|(x, v)| vec![x.into(), v.into()]).collect();
    emit(&out, common)
}

#[allow(clippy::too_many_arguments)]
fn correlate_cmd(
    alpha: &str,
    beta: &str,
    y: f64,
    grid: &Grid,
    quadrature: bool,
    tol: f64,
    common: &Common,
) -> CliResult<()> {
    let params = CorrelationParams::new(order_arg("alpha", alpha)?, order_arg("beta", beta)?);
    params.product().map_err(|e| Failure::Usage(format!("alpha·beta: {e}")))?;
    let tol = positive_tol("tol", tol)?;
    if !(y >= 0.0 && y.is_finite()) || (quadrature && y == 0.0) {
        return Err(Failure::Usage(format!("--y must be positive, got {y}")));
    }
    let quad = QuadratureConfig::new(1e-13, tol, 2000, 1.0).map_err(|e| Failure::Usage(format!("--tol: {e}")))?;
    let rows = grid
        .points()
        .par_iter()
        .map(|&p| {
            let closed = correlation_F(&params, p, y)?;
            let mut row: Vec<Cell> = vec![p.into(), y.into(), closed.into()];
            if quadrature {
                let q = correlation_F_by_quadrature(&params, p, y, &quad)?;
                row.push(q.into());
                row.push(((q - closed) / closed).abs().into());
            }
            Ok(row)
        })
        .collect::<levy_laplace::Result<Vec<_>>>()
        .map_err(|e| Failure::Evaluation(format!("correlation: {e}")))?;
    let mut columns = vec!["p", "y", "F"];
    if quadrature {
        columns.extend(["F_quadrature", "rel_error"]);
    }
    let mut out = Output::new("correlate", columns)
        .meta("alpha", params.alpha.to_string())
        .meta("beta", params.beta.to_string());
    out.rows = rows;
    emit(&out, common)
}

fn verify_cmd(suite: Suite, tol: Option<f64>, common: &Common) -> CliResult<()> {
    if let Some(t) = tol {
        positive_tol("tol", t)?;
    }
    let reports = run_suite(suite, tol).map_err(|e| match e {
        levy_laplace::Error::Config(m) => Failure::Usage(m),
        other => Failure::Infrastructure(format!("suite {}: {other}", suite.name())),
    })?;
    let failed = reports.iter().filter(|r| !r.pass).count();
    let mut out = Output::new(
        "verify",
        vec!["identity", "params", "observed", "expected", "observed_error", "tolerance", "pass", "note"],
    )
    .meta("suite", suite.name())
    .meta("pass", failed == 0);
    if let Some(t) = tol {
        out = out.meta("tolerance", t);
    }
    out.rows = reports
        .iter()
        .map(|r| {
            vec![
                r.identity.as_str().into(),
                r.params_summary().into(),
                r.observed.into(),
                r.expected.into(),
                r.observed_error.into(),
                r.tolerance.into(),
                r.pass.into(),
                r.note.clone().unwrap_or_default().into(),
            ]
        })
        .collect();
    out.json_rows = Some(reports.iter().map(|r| json!(r)).collect());
    emit(&out, common)?;
    eprintln!("{}: {} of {} checks passed", suite.name(), reports.len() - failed, reports.len());
    if failed > 0 {
        return Err(Failure::Evaluation(format!("{failed} check(s) failed")));
    }
    Ok(())
}

fn catalog_cmd(common: &Common) -> CliResult<()> {
    let mut out = Output::new("catalog", vec!["name", "description"]);
    out.rows = catalog().iter().map(|p| vec![p.name.into(), p.description.into()]).collect();
    emit(&out, common)
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match &cli.command {
        Command::Density {
            alpha,
            grid,
            method,
            common,
        } => density_cmd(alpha, grid, *method, common),
        Command::Transform {
            kind,
            alpha,
            f,
            grid,
            tol,
            common,
        } => transform_cmd(*kind, alpha, f, grid, *tol, common),
        Command::Correlate {
            alpha,
            beta,
            y,
            grid,
            quadrature,
            tol,
            common,
        } => correlate_cmd(alpha, beta, *y, grid, *quadrature, *tol, common),
        Command::Verify { suite, tol, common } => verify_cmd(*suite, *tol, common),
        Command::Catalog { common } => catalog_cmd(common),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
