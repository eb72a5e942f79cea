//! The `tcs` command line: `solve`, `transform`, `classify`, `bench`, `gen`.
//!
//! Exit codes: 0 success, 2 no unique solution or singular operator,
//! 3 spurious solution or non-convergence, 4 I/O or parse error, 5 bad flags.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{run_bench, speedups};
use crate::error::{Error, Result};
use crate::generate::generate;
use crate::matcore::Mat;
use crate::matio::{read_matrix_file, write_matrix_file, Format};
use crate::oracle::classify_solvability;
use crate::solvers::{solve_tcs, Method, SolveOptions, SolveReport, SteinSolver};
use crate::transform::{to_stein_via_a, to_stein_via_b, to_sylvester, TcsProblem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO_UNIQUE: i32 = 2;
pub const EXIT_SOLVER: i32 = 3;
pub const EXIT_IO: i32 = 4;
pub const EXIT_USAGE: i32 = 5;

/// Maps a library error onto the stable exit-code contract.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoUniqueSolution { .. } | Error::SingularOperator { .. } | Error::SingularMatrix(_) => EXIT_NO_UNIQUE,
        Error::SpuriousSolution(_) | Error::NotConvergent(_) | Error::Capacity(_) => EXIT_SOLVER,
        Error::Io(_)
        | Error::Parse { .. }
        | Error::Value(_)
        | Error::ValueAt { .. }
        | Error::Dimension(_)
        | Error::DimensionAt { .. }
        | Error::UnsupportedShape(_) => EXIT_IO,
    }
}

#[derive(Parser, Debug)]
#[command(name = "tcs", version, about = "Solve AX + X^T B = C through Stein and Sylvester reductions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve for X and report residuals.
    Solve(SolveArgs),
    /// Write the reduced-equation coefficients.
    Transform(TransformArgs),
    /// Report whether the solution is unique, non-unique, or absent.
    Classify(ProblemFiles),
    /// Time the dense oracle against the Smith pipeline, as CSV.
    Bench(BenchArgs),
    /// Generate a problem bundle with a known solution.
    Gen(GenArgs),
}

#[derive(Args, Debug)]
struct ProblemFiles {
    #[arg(long = "a", value_name = "FILE")]
    a: PathBuf,
    #[arg(long = "b", value_name = "FILE")]
    b: PathBuf,
    #[arg(long = "c", value_name = "FILE")]
    c: PathBuf,
    /// Input file format.
    #[arg(long, value_enum, default_value_t = FormatArg::Native)]
    format: FormatArg,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FormatArg {
    Native,
    Mm,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum MethodArg {
    LyapunovA,
    LyapunovB,
    Sylvester,
    Oracle,
    Auto,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum SteinArg {
    Direct,
    Smith,
    Auto,
}

#[derive(Copy, Clone, Debug, ValueEnum, PartialEq)]
enum ReportArg {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum FormArg {
    SteinA,
    SteinB,
    Sylvester,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[command(flatten)]
    files: ProblemFiles,
    /// Where to write X.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,
    #[arg(long = "stein-solver", value_enum, default_value_t = SteinArg::Auto)]
    stein_solver: SteinArg,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long = "max-iter", default_value_t = 64)]
    max_iter: usize,
    #[arg(long, value_enum, default_value_t = ReportArg::Text)]
    report: ReportArg,
}

#[derive(Args, Debug)]
struct TransformArgs {
    #[command(flatten)]
    files: ProblemFiles,
    #[arg(long, value_enum)]
    form: FormArg,
    #[arg(long = "out-prefix", value_name = "PREFIX")]
    out_prefix: String,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// Comma-separated problem sizes.
    #[arg(long = "n-list", value_delimiter = ',', required = true)]
    n_list: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    seeds: u64,
    #[arg(long, default_value_t = 0.8)]
    rho: f64,
    /// Write CSV here instead of standard output.
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value_t = 0.5)]
    rho: f64,
    #[arg(long = "out-prefix", value_name = "PREFIX")]
    out_prefix: String,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Transform(a) => cmd_transform(a),
        Command::Classify(a) => cmd_classify(a, out),
        Command::Bench(a) => cmd_bench(a, out, err),
        Command::Gen(a) => cmd_gen(a),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Lib(e)) => {
            if let Error::SpuriousSolution(report) = &e {
                let _ = write_text_report(out, report);
            }
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

enum CliError {
    Usage(String),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Lib(Error::Io(e))
    }
}

fn read_input(path: &Path, format: FormatArg) -> Result<Mat> {
    let format = match format {
        FormatArg::Native => Format::Native,
        FormatArg::Mm => Format::MatrixMarket,
    };
    read_matrix_file(path, format).map_err(|e| match e {
        Error::Io(io) => Error::Io(std::io::Error::new(io.kind(), format!("{}: {io}", path.display()))),
        Error::Parse { line, message } => Error::Parse { line, message: format!("{}: {message}", path.display()) },
        other => other,
    })
}

fn load_problem(files: &ProblemFiles) -> Result<TcsProblem> {
    let a = read_input(&files.a, files.format)?;
    let b = read_input(&files.b, files.format)?;
    let c = read_input(&files.c, files.format)?;
    TcsProblem::new(a, b, c)
}

fn with_suffix(prefix: &str, suffix: &str) -> PathBuf {
    PathBuf::from(format!("{prefix}.{suffix}"))
}

fn report_json(report: &SolveReport) -> serde_json::Value {
    serde_json::json!({
        "method": report.method_used.as_str(),
        "stein_solver": report.stein_solver_used.map(|s| s.as_str()),
        "residual_original": report.residual_original,
        "residual_reduced": report.residual_reduced,
        "rho_estimate": report.spectral_radius_estimate,
        "iterations": report.iterations,
        "wall_time_ms": report.wall_time.as_secs_f64() * 1e3,
        "n": report.x.rows(),
        "warnings": report.warnings,
    })
}

fn write_text_report(out: &mut dyn Write, report: &SolveReport) -> std::io::Result<()> {
    writeln!(out, "method: {}", report.method_used)?;
    if let Some(s) = report.stein_solver_used {
        writeln!(out, "stein_solver: {s}")?;
    }
    writeln!(out, "residual_original: {:.6e}", report.residual_original)?;
    writeln!(out, "residual_reduced: {:.6e}", report.residual_reduced)?;
    match report.spectral_radius_estimate {
        Some(r) => writeln!(out, "rho_estimate: {r:.6}")?,
        None => writeln!(out, "rho_estimate: n/a")?,
    }
    writeln!(out, "iterations: {}", report.iterations)?;
    writeln!(out, "wall_time_ms: {:.3}", report.wall_time.as_secs_f64() * 1e3)?;
    for w in &report.warnings {
        writeln!(out, "warning: {w}")?;
    }
    Ok(())
}

fn cmd_solve(args: SolveArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let p = load_problem(&args.files)?;
    let opts = SolveOptions {
        tol: args.tol,
        max_iter: args.max_iter,
        stein_solver: match args.stein_solver {
            SteinArg::Direct => SteinSolver::Direct,
            SteinArg::Smith => SteinSolver::Smith,
            SteinArg::Auto => SteinSolver::Auto,
        },
        method: match args.method {
            MethodArg::LyapunovA => Method::LyapunovViaA,
            MethodArg::LyapunovB => Method::LyapunovViaB,
            MethodArg::Sylvester => Method::Sylvester,
            MethodArg::Oracle => Method::Oracle,
            MethodArg::Auto => Method::Auto,
        },
        ..SolveOptions::default()
    };
    if opts.validate().is_err() {
        return Err(CliError::Usage("--tol must be positive and --max-iter at least 1".into()));
    }
    let report = solve_tcs(&p, &opts)?;
    if let Some(path) = &args.out {
        write_matrix_file(path, &report.x)?;
    }
    match args.report {
        ReportArg::Json => writeln!(out, "{}", report_json(&report))?,
        ReportArg::Text => write_text_report(out, &report)?,
    }
    Ok(EXIT_OK)
}

fn cmd_transform(args: TransformArgs) -> Result<i32, CliError> {
    let p = load_problem(&args.files)?;
    let outputs: Vec<(&str, Mat)> = match args.form {
        FormArg::SteinA | FormArg::SteinB => {
            let s = if matches!(args.form, FormArg::SteinA) { to_stein_via_a(&p)? } else { to_stein_via_b(&p)? };
            vec![("M", s.m_coef), ("Q", s.q)]
        }
        FormArg::Sylvester => {
            let f = to_sylvester(&p)?;
            vec![("negM", f.neg_m), ("MinvT", f.m_inv_t), ("Qprime", f.q_prime)]
        }
    };
    for (suffix, m) in &outputs {
        write_matrix_file(with_suffix(&args.out_prefix, suffix), m)?;
    }
    Ok(EXIT_OK)
}

fn cmd_classify(files: ProblemFiles, out: &mut dyn Write) -> Result<i32, CliError> {
    let p = load_problem(&files)?;
    let cls = classify_solvability(&p)?;
    writeln!(out, "{}", cls.solvability)?;
    writeln!(out, "rank(L) = {} of {}", cls.rank_operator, cls.size)?;
    writeln!(out, "rank([L|c]) = {}", cls.rank_augmented)?;
    Ok(EXIT_OK)
}

fn cmd_bench(args: BenchArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    if !(0.0..1.0).contains(&args.rho) {
        return Err(CliError::Usage(format!("--rho must lie in [0, 1), got {}", args.rho)));
    }
    if let Some(&n) = args.n_list.iter().find(|&&n| n > crate::oracle::ORACLE_MAX_N) {
        return Err(CliError::Usage(format!(
            "--n-list entry {n} exceeds the oracle limit of {}",
            crate::oracle::ORACLE_MAX_N
        )));
    }
    let rows = run_bench(&args.n_list, args.seeds, args.rho)?;
    let sink: Box<dyn Write + '_> = match &args.csv {
        Some(path) => Box::new(std::fs::File::create(path)?),
        None => Box::new(&mut *out),
    };
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["n", "seed", "method", "wall_time_ms", "residual"]).map_err(csv_err)?;
    for r in &rows {
        w.write_record([
            r.n.to_string(),
            r.seed.to_string(),
            r.method.to_string(),
            format!("{:.6}", r.wall_time_ms),
            format!("{:e}", r.residual),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    drop(w);
    for (n, ratio) in speedups(&rows) {
        writeln!(err, "n = {n}: oracle / pipeline median time ratio = {ratio:.1}")?;
    }
    Ok(EXIT_OK)
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Lib(Error::Io(std::io::Error::other(e)))
}

fn cmd_gen(args: GenArgs) -> Result<i32, CliError> {
    if !args.rho.is_finite() || args.rho < 0.0 {
        return Err(CliError::Usage(format!("--rho must be a non-negative number, got {}", args.rho)));
    }
    let inst = generate(args.n, args.seed, args.rho)?;
    let p = &inst.problem;
    for (suffix, m) in [("A", p.a()), ("B", p.b()), ("C", p.c()), ("Xtrue", &inst.x_true)] {
        write_matrix_file(with_suffix(&args.out_prefix, suffix), m)?;
    }
    Ok(EXIT_OK)
}
