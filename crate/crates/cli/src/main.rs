//! `vwq`: exact q-series and localization-integral calculator.
//!
//! One subcommand per computation, machine-readable output everywhere.
//! Exit codes: 0 success, 2 usage error (nothing is written on a usage
//! error), 1 internal invariant violation or a failed verification run.

mod config;
mod output;

use std::io::Write;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use vwq_core::chern::{self, SurfaceChernData};
use vwq_core::hilb_euler;
use vwq_core::modular;
use vwq_core::rootstack::{self, MonopoleSeriesConfig};
use vwq_core::table::CoeffTable;
use vwq_core::verify::{run_with_threads, VerifyConfig};
use vwq_core::{Error as CoreError, QSeries};

const EXIT_OK: i32 = 0;
const EXIT_INTERNAL: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "vwq", version, about = "exact q-series and localization integrals for surface-stack invariants")]
struct Cli {
    /// Optional key = value file supplying default truncation parameters
    #[arg(long, global = true)]
    config: Option<std::path::PathBuf>,

    /// Write the report to a file instead of standard output
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,

    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Monopole-branch generating series of the r-th root stack
    RootStack(RootStackArgs),
    /// Hurwitz class number H(delta)
    Hurwitz(HurwitzArgs),
    /// Weighted-projective-plane series: lattice sum, class-number side,
    /// full right-hand side and the reconciliation report
    P112(P112Args),
    /// Cyclotomically weighted theta series of an A_n singularity
    ThetaAn(ThetaAnArgs),
    /// Euler-characteristic series for Hilbert schemes of points with A_n
    /// singularities
    HilbEuler(HilbEulerArgs),
    /// Vertical-term integral from surface intersection numbers
    AdeVertical(AdeVerticalArgs),
    /// Run every acceptance criterion and report PASS/FAIL
    VerifyAll(VerifyAllArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Direct,
    Residue,
    Bruteforce,
    Closed,
}

#[derive(Debug, Args)]
struct RootStackArgs {
    /// Curve genus (at least 2)
    #[arg(long, allow_negative_numbers = true)]
    genus: i64,
    /// Truncation order in q
    #[arg(long, allow_negative_numbers = true)]
    order: Option<i64>,
    /// Gerbe order r
    #[arg(long, default_value = "1", allow_negative_numbers = true)]
    gerbe: i64,
    #[arg(long, value_enum, default_value = "direct")]
    route: Route,
}

#[derive(Debug, Args)]
struct HurwitzArgs {
    /// Positive discriminant argument
    #[arg(long, allow_negative_numbers = true)]
    delta: i64,
}

#[derive(Debug, Args)]
struct P112Args {
    /// First Chern number
    #[arg(long, allow_negative_numbers = true)]
    c1: i64,
    /// Lower exponent bound of the lattice window
    #[arg(long, allow_negative_numbers = true)]
    emin: Option<i64>,
    /// Truncation order of the eta/theta prefactor
    #[arg(long, allow_negative_numbers = true)]
    order: Option<i64>,
}

#[derive(Debug, Args)]
struct ThetaAnArgs {
    /// Singularity rank n (the root of unity has order n+2)
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, allow_negative_numbers = true)]
    order: Option<i64>,
}

#[derive(Debug, Args)]
struct HilbEulerArgs {
    /// Euler number of the resolution
    #[arg(long, allow_negative_numbers = true)]
    chi: i64,
    /// Comma-separated A_n ranks, e.g. 1,2,2
    #[arg(long, value_delimiter = ',')]
    an: Vec<i64>,
    #[arg(long, allow_negative_numbers = true)]
    order: Option<i64>,
}

#[derive(Debug, Args)]
struct AdeVerticalArgs {
    /// c2 of the resolution
    #[arg(long = "c2t", allow_negative_numbers = true)]
    c2t: i64,
    /// mixed pairing of the resolution and stack first Chern classes
    #[arg(long, allow_negative_numbers = true)]
    mixed: i64,
    /// c1^2 of the resolution
    #[arg(long = "c1sq", allow_negative_numbers = true)]
    c1sq: i64,
    /// exponent of the (-2)^(-dim) prefactor
    #[arg(long, allow_negative_numbers = true)]
    dim: i64,
}

#[derive(Debug, Args)]
struct VerifyAllArgs {
    /// Seed for the randomized criteria
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, allow_negative_numbers = true)]
    root_order: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    gerby_order: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    eta_order: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    theta_order: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    gottsche_order: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    p112_emin: Option<i64>,
    /// Fault-injection self-test: perturb one coefficient and expect FAIL
    #[arg(long, hide = true)]
    inject_fault: bool,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };

    let cfg = match cli.config.as_deref().map(config::load) {
        None => config::FileConfig::default(),
        Some(Ok(c)) => c,
        Some(Err(msg)) => return usage_error(&msg),
    };

    let rendered = match &cli.command {
        Command::RootStack(args) => cmd_root_stack(args, &cfg, cli.format),
        Command::Hurwitz(args) => cmd_hurwitz(args, cli.format),
        Command::P112(args) => cmd_p112(args, &cfg, cli.format),
        Command::ThetaAn(args) => cmd_theta_an(args, &cfg, cli.format),
        Command::HilbEuler(args) => cmd_hilb_euler(args, &cfg, cli.format),
        Command::AdeVertical(args) => cmd_ade_vertical(args, cli.format),
        Command::VerifyAll(args) => {
            return cmd_verify_all(args, &cfg, cli.format, cli.out.as_deref());
        }
    };

    match rendered {
        Ok(text) => emit(&text, cli.out.as_deref()),
        Err(code) => code,
    }
}

fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn internal_error(e: &CoreError) -> i32 {
    eprintln!("internal invariant violation: {e}");
    EXIT_INTERNAL
}

fn emit(text: &str, out: Option<&std::path::Path>) -> i32 {
    match out {
        None => {
            print!("{text}");
            EXIT_OK
        }
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                EXIT_INTERNAL
            }
        },
    }
}

fn render_series(series: &QSeries, format: Format) -> String {
    let table = CoeffTable::from_series(series);
    match format {
        Format::Text => table.to_text(),
        Format::Json => {
            let mut s = table.to_json();
            s.push('\n');
            s
        }
        Format::Csv => table.to_csv(),
    }
}

fn render_scalar(name: &str, value: &vwq_core::Rat, format: Format) -> String {
    match format {
        Format::Text => format!("{value}\n"),
        Format::Json => format!(
            "{}\n",
            serde_json::json!({
                name: { "num": value.numer().to_string(), "den": value.denom().to_string() }
            })
        ),
        Format::Csv => format!("name,num,den\n{name},{},{}\n", value.numer(), value.denom()),
    }
}

fn cmd_root_stack(args: &RootStackArgs, cfg: &config::FileConfig, format: Format) -> Result<String, i32> {
    let order = args.order.or(cfg.order).unwrap_or(vwq_core::DEFAULT_ORDER);
    if args.genus < 2 {
        return Err(usage_error("--genus must be at least 2"));
    }
    if order < 0 {
        return Err(usage_error("--order must be nonnegative"));
    }
    if args.gerbe < 1 {
        return Err(usage_error("--gerbe must be at least 1"));
    }
    let series = match args.route {
        Route::Direct => {
            rootstack::monopole_series_direct(&MonopoleSeriesConfig::new(args.genus, order, args.gerbe))
        }
        Route::Bruteforce => rootstack::bivariate_rational(args.genus, order, order).diagonal(),
        Route::Residue => {
            rootstack::diagonal_via_residue(args.genus, order).map_err(|e| internal_error(&e))?
        }
        Route::Closed => {
            let record = rootstack::sign_normalization_probe(args.genus)
                .map_err(|e| internal_error(&e))?;
            rootstack::closed_form_normalized(args.genus, order, &record)
                .map_err(|e| internal_error(&e))?
        }
    };
    Ok(render_series(&series, format))
}

fn cmd_hurwitz(args: &HurwitzArgs, format: Format) -> Result<String, i32> {
    if args.delta <= 0 {
        return Err(usage_error("--delta must be positive"));
    }
    let h = modular::hurwitz_h(args.delta).map_err(|e| internal_error(&e))?;
    Ok(render_scalar("h", &h, format))
}

fn cmd_p112(args: &P112Args, cfg: &config::FileConfig, format: Format) -> Result<String, i32> {
    let emin = args.emin.or(cfg.emin).unwrap_or(-20);
    let order = args.order.or(cfg.order).unwrap_or(vwq_core::DEFAULT_ORDER);
    if order < 0 {
        return Err(usage_error("--order must be nonnegative"));
    }
    let lattice = modular::lattice_sum_c(args.c1, emin);
    let class_side = modular::hurwitz_series(modular::C1Parity::of(args.c1), emin)
        .map_err(|e| internal_error(&e))?;
    let rhs = modular::p112_rhs(args.c1, emin, order).map_err(|e| internal_error(&e))?;
    let recon = modular::reconcile_p112(args.c1, emin).map_err(|e| internal_error(&e))?;
    Ok(output::render_p112(
        args.c1, emin, order, &lattice, &class_side, &rhs, &recon,
        matches!(format, Format::Json),
        matches!(format, Format::Csv),
    ))
}

fn cmd_theta_an(args: &ThetaAnArgs, cfg: &config::FileConfig, format: Format) -> Result<String, i32> {
    let order = args.order.or(cfg.order).unwrap_or(vwq_core::DEFAULT_ORDER);
    if args.n < 1 {
        return Err(usage_error("--n must be at least 1"));
    }
    if order < 0 {
        return Err(usage_error("--order must be nonnegative"));
    }
    let series = hilb_euler::theta_an(args.n as usize, order).map_err(|e| internal_error(&e))?;
    Ok(render_series(&series, format))
}

fn cmd_hilb_euler(args: &HilbEulerArgs, cfg: &config::FileConfig, format: Format) -> Result<String, i32> {
    let order = args.order.or(cfg.order).unwrap_or(vwq_core::DEFAULT_ORDER);
    if order < 0 {
        return Err(usage_error("--order must be nonnegative"));
    }
    if args.an.iter().any(|n| *n < 1) {
        return Err(usage_error("every --an rank must be at least 1"));
    }
    let ranks: Vec<usize> = args.an.iter().map(|n| *n as usize).collect();
    let series =
        hilb_euler::hilb_euler_series(args.chi, &ranks, order).map_err(|e| internal_error(&e))?;
    Ok(render_series(&series, format))
}

fn cmd_ade_vertical(args: &AdeVerticalArgs, format: Format) -> Result<String, i32> {
    let data = SurfaceChernData {
        // the stack-side self-pairing cancels from the integral; the mixed
        // pairing is the crepant-pullback convention
        c1_sq: args.mixed,
        c2_top: 0,
        res_c1_sq: args.c1sq,
        res_c2: args.c2t,
        mixed: args.mixed,
        dim_param: args.dim,
    };
    let value = chern::vertical_degree2_integral(&data);
    Ok(render_scalar("integral", &value, format))
}

fn thread_count() -> Result<usize, String> {
    match std::env::var("VWQ_THREADS") {
        Err(_) => Ok(1),
        Ok(raw) => raw
            .parse::<usize>()
            .ok()
            .filter(|n| *n >= 1)
            .ok_or_else(|| format!("VWQ_THREADS must be a positive integer, got {raw:?}")),
    }
}

fn cmd_verify_all(
    args: &VerifyAllArgs,
    cfg: &config::FileConfig,
    format: Format,
    out: Option<&std::path::Path>,
) -> i32 {
    let threads = match thread_count() {
        Ok(t) => t,
        Err(msg) => return usage_error(&msg),
    };
    let defaults = VerifyConfig::default();
    let vcfg = VerifyConfig {
        seed: args.seed.or(cfg.seed).unwrap_or(defaults.seed),
        root_order: args.root_order.unwrap_or(defaults.root_order),
        gerby_order: args.gerby_order.unwrap_or(defaults.gerby_order),
        eta_order: args.eta_order.unwrap_or(defaults.eta_order),
        p112_emin: args.p112_emin.or(cfg.emin).unwrap_or(defaults.p112_emin),
        theta_order: args.theta_order.unwrap_or(defaults.theta_order),
        gottsche_order: args.gottsche_order.unwrap_or(defaults.gottsche_order),
        random_integrands: defaults.random_integrands,
        random_chern: defaults.random_chern,
        ring_cases: defaults.ring_cases,
        perturb: args.inject_fault,
    };
    if vcfg.root_order < 2 {
        return usage_error("--root-order must be at least 2 for the probe");
    }

    let started = std::time::Instant::now();
    let report = run_with_threads(&vcfg, threads);
    // timing is diagnostic only; the report itself stays byte-identical
    // across runs with the same seed
    let mut err = std::io::stderr();
    for c in &report.criteria {
        let _ = writeln!(err, "criterion {:2} took {:.2?}", c.id, c.elapsed);
    }
    let _ = writeln!(
        err,
        "verify-all finished in {:.2?} on {} thread(s)",
        started.elapsed(),
        threads
    );

    let code = match out {
        // file target: machine-readable JSON in the file, the table on
        // standard output alongside
        Some(path) => {
            print!("{}", report.to_text());
            emit(&(report.to_json() + "\n"), Some(path))
        }
        None => {
            let rendered = match format {
                Format::Json => report.to_json() + "\n",
                _ => report.to_text(),
            };
            emit(&rendered, None)
        }
    };
    if code != EXIT_OK {
        return code;
    }
    if report.all_pass {
        EXIT_OK
    } else {
        EXIT_INTERNAL
    }
}
