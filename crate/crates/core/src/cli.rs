//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 numerical or search
//! failure.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::{DMatrix, DVector};

use crate::corner::{
    corner_search, curvature_profile, dense_corner_oracle, CornerSearchConfig, Scale,
    DEFAULT_EPSILON, DEFAULT_LAMBDA_HI, DEFAULT_LAMBDA_LO, DEFAULT_MAX_ITERATIONS,
};
use crate::error::Error;
use crate::io::{format_f64, read_matrix, read_vector, write_matrix, write_vector, CsvError};
use crate::lcurve::{log_grid, RegularizedProblem};
use crate::problems::TestProblem;
use crate::trace::TraceDocument;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

/// Tikhonov regularization parameter selection by L-curve corner search.
#[derive(Debug, Parser)]
#[command(name = "lcurve-corner", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for the L-curve corner and emit the iteration trace.
    Corner(CornerArgs),
    /// Sample the L-curve on a log-spaced grid with per-point curvature.
    Lcurve(LcurveArgs),
    /// Solve the regularized system at a given lambda.
    Solve(SolveArgs),
    /// Write a seeded synthetic test problem as CSV files.
    Demo(DemoArgs),
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    /// Operator matrix CSV (one row per line)
    pub matrix: PathBuf,
    /// Right-hand side CSV (one value per line)
    pub rhs: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct CornerArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Initial lower search extreme
    #[arg(long, default_value_t = DEFAULT_LAMBDA_LO, allow_negative_numbers = true)]
    pub lambda_min: f64,
    /// Initial upper search extreme
    #[arg(long, default_value_t = DEFAULT_LAMBDA_HI, allow_negative_numbers = true)]
    pub lambda_max: f64,
    /// Relative-width termination threshold
    #[arg(long, default_value_t = DEFAULT_EPSILON, allow_negative_numbers = true)]
    pub epsilon: f64,
    /// Coordinate for golden-section placement
    #[arg(long, value_enum, default_value_t = Scale::Linear)]
    pub scale: Scale,
    /// Cap on iteration records
    #[arg(long, default_value_t = DEFAULT_MAX_ITERATIONS)]
    pub max_iter: usize,
    /// Write the trace here instead of standard output
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Trace format: JSON document or per-iteration CSV table
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct LcurveArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, default_value_t = DEFAULT_LAMBDA_LO, allow_negative_numbers = true)]
    pub lambda_min: f64,
    #[arg(long, default_value_t = DEFAULT_LAMBDA_HI, allow_negative_numbers = true)]
    pub lambda_max: f64,
    /// Number of grid points (at least 3)
    #[arg(long, default_value_t = 200)]
    pub points: usize,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Regularization parameter
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Write the solution vector here instead of standard output
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DemoArgs {
    /// Problem size
    #[arg(long, default_value_t = 32)]
    pub n: usize,
    /// Gaussian kernel width
    #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
    pub width: f64,
    /// Relative noise level
    #[arg(long, default_value_t = 1e-2, allow_negative_numbers = true)]
    pub noise: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Output directory for matrix.csv, rhs.csv, x_true.csv
    #[arg(short, long, default_value = ".")]
    pub output: PathBuf,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: CsvError },
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Numeric(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Numeric(e) if !e.is_input_error() => EXIT_NUMERICAL,
            _ => EXIT_USAGE,
        }
    }

    fn label(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "Usage",
            CliError::Read { .. } => "MalformedInput",
            CliError::Io(_) => "Io",
            CliError::Numeric(e) => e.variant_name(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error[{}]: {}", e.label(), e);
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Corner(args) => cmd_corner(args, stdout, stderr),
        Command::Lcurve(args) => cmd_lcurve(args, stdout, stderr),
        Command::Solve(args) => cmd_solve(args, stdout, stderr),
        Command::Demo(args) => cmd_demo(args, stdout),
    }
}

fn load_system(system: &SystemArgs) -> CliResult<RegularizedProblem> {
    let open = |path: &Path| {
        File::open(path).map_err(|e| CliError::Read {
            path: path.to_path_buf(),
            source: CsvError::Io(e),
        })
    };
    let operator = read_matrix(open(&system.matrix)?).map_err(|source| CliError::Read {
        path: system.matrix.clone(),
        source,
    })?;
    let rhs = read_vector(open(&system.rhs)?).map_err(|source| CliError::Read {
        path: system.rhs.clone(),
        source,
    })?;
    Ok(RegularizedProblem::new(operator, rhs)?)
}

fn check_interval(lo: f64, hi: f64) -> CliResult<()> {
    if lo > 0.0 && hi > lo && hi.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInterval { lo, hi }.into())
    }
}

/// Runs `emit` against the output file if one is given, otherwise stdout.
/// Returns whether stdout was used.
fn with_sink(
    output: Option<&Path>,
    stdout: &mut dyn Write,
    emit: impl FnOnce(&mut dyn Write) -> std::io::Result<()>,
) -> CliResult<bool> {
    match output {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            emit(&mut file)?;
            file.flush()?;
            Ok(false)
        }
        None => {
            emit(stdout)?;
            Ok(true)
        }
    }
}

pub fn cmd_corner(
    args: &CornerArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CliResult<()> {
    check_interval(args.lambda_min, args.lambda_max)?;
    let config = CornerSearchConfig::new(args.lambda_min, args.lambda_max, args.epsilon)
        .with_scale(args.scale)
        .with_max_iterations(args.max_iter);
    config.validate()?;
    let problem = load_system(&args.system)?;

    let result = corner_search(|lambda| problem.l_curve_point(lambda), &config)?;
    let doc = TraceDocument::new(&config, &result);

    let to_stdout = with_sink(args.output.as_deref(), stdout, |w| match args.format {
        Format::Json => {
            let json = doc.to_json().map_err(std::io::Error::other)?;
            writeln!(w, "{json}")
        }
        Format::Csv => write_trace_csv(w, &doc),
    })?;

    let summary: &mut dyn Write = if to_stdout { stderr } else { stdout };
    let [l1, _, _, l4] = result.final_lambdas();
    writeln!(summary, "iterations: {}", result.iterations())?;
    writeln!(summary, "evaluations: {}", result.evaluations)?;
    writeln!(summary, "final window: [{l1:e}, {l4:e}]")?;
    if result.touches_lower || result.touches_upper {
        writeln!(
            summary,
            "warning: final window touches the {} search extreme; the corner may lie outside the interval",
            if result.touches_lower { "lower" } else { "upper" }
        )?;
    }
    writeln!(summary, "lambda_opt: {:e}", result.lambda_opt)?;
    Ok(())
}

fn write_trace_csv(w: &mut dyn Write, doc: &TraceDocument) -> std::io::Result<()> {
    writeln!(
        w,
        "index,branch,lambda1,lambda2,lambda3,lambda4,c2,c3,new_lambda,new_xi,new_eta"
    )?;
    for rec in &doc.iterations {
        let branch = serde_json::to_value(rec.branch)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default();
        let mut fields = vec![rec.index.to_string(), branch];
        fields.extend(rec.lambdas.iter().map(|&l| format_f64(l)));
        fields.extend(
            [
                rec.c2,
                rec.c3,
                rec.new_point.lambda,
                rec.new_point.xi,
                rec.new_point.eta,
            ]
            .iter()
            .map(|&v| format_f64(v)),
        );
        writeln!(w, "{}", fields.join(","))?;
    }
    Ok(())
}

pub fn cmd_lcurve(
    args: &LcurveArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CliResult<()> {
    if args.points < 3 {
        return Err(CliError::Usage(format!(
            "--points must be at least 3, got {}",
            args.points
        )));
    }
    check_interval(args.lambda_min, args.lambda_max)?;
    let problem = load_system(&args.system)?;
    let grid = log_grid(args.lambda_min, args.lambda_max, args.points)?;
    let points = problem.l_curve_sample(&grid)?;

    let (profile, corner) = match dense_corner_oracle(&points) {
        Ok(c) => (c.profile.clone(), Some(c.index)),
        Err(Error::NoPositiveCurvature) => {
            writeln!(stderr, "warning: no positive curvature on the sampled grid")?;
            (curvature_profile(&points)?, None)
        }
        Err(e) => return Err(e.into()),
    };

    with_sink(args.output.as_deref(), stdout, |w| match args.format {
        Format::Csv => {
            writeln!(w, "lambda,xi,eta,curvature,is_corner")?;
            for (i, (p, c)) in points.iter().zip(&profile).enumerate() {
                writeln!(
                    w,
                    "{},{},{},{},{}",
                    format_f64(p.lambda),
                    format_f64(p.xi),
                    format_f64(p.eta),
                    c.map(format_f64).unwrap_or_default(),
                    u8::from(corner == Some(i))
                )?;
            }
            Ok(())
        }
        Format::Json => {
            let rows: Vec<_> = points
                .iter()
                .zip(&profile)
                .enumerate()
                .map(|(i, (p, c))| {
                    serde_json::json!({
                        "lambda": p.lambda,
                        "xi": p.xi,
                        "eta": p.eta,
                        "curvature": c,
                        "is_corner": corner == Some(i),
                    })
                })
                .collect();
            let json = serde_json::to_string_pretty(&rows).map_err(std::io::Error::other)?;
            writeln!(w, "{json}")
        }
    })?;
    if let Some(i) = corner {
        writeln!(stderr, "corner: lambda = {:e}", points[i].lambda)?;
    }
    Ok(())
}

pub fn cmd_solve(
    args: &SolveArgs,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> CliResult<()> {
    if !(args.lambda >= 0.0) || !args.lambda.is_finite() {
        return Err(Error::NegativeLambda(args.lambda).into());
    }
    let problem = load_system(&args.system)?;
    let sol = problem.solve(args.lambda)?;
    let to_stdout = with_sink(args.output.as_deref(), stdout, |w| write_vector(w, &sol.x))?;
    let summary: &mut dyn Write = if to_stdout { stderr } else { stdout };
    writeln!(summary, "lambda: {:e}", sol.lambda)?;
    writeln!(summary, "residual_sq: {:e}", sol.residual_sq)?;
    writeln!(summary, "norm_sq: {:e}", sol.norm_sq)?;
    Ok(())
}

pub fn cmd_demo(args: &DemoArgs, stdout: &mut dyn Write) -> CliResult<()> {
    if !(args.noise >= 0.0 && args.noise.is_finite()) {
        return Err(CliError::Usage(format!(
            "--noise must be finite and non-negative, got {}",
            args.noise
        )));
    }
    let demo = TestProblem::smoothing(args.n, args.width, args.noise, args.seed)?;
    fs::create_dir_all(&args.output)?;

    let write_file = |name: &str,
                      emit: &dyn Fn(&mut BufWriter<File>) -> std::io::Result<()>|
     -> CliResult<PathBuf> {
        let path = args.output.join(name);
        let mut w = BufWriter::new(File::create(&path)?);
        emit(&mut w)?;
        w.flush()?;
        Ok(path)
    };
    let operator: &DMatrix<f64> = demo.problem.operator();
    let rhs: &DVector<f64> = demo.problem.data();
    let paths = [
        write_file("matrix.csv", &|w| write_matrix(w, operator))?,
        write_file("rhs.csv", &|w| write_vector(w, rhs))?,
        write_file("x_true.csv", &|w| write_vector(w, &demo.x_true))?,
    ];
    for p in &paths {
        writeln!(stdout, "wrote {}", p.display())?;
    }
    writeln!(
        stdout,
        "n = {}, width = {}, noise = {}, seed = {}, realized noise = {:e}, condition number = {:e}",
        args.n,
        args.width,
        args.noise,
        args.seed,
        demo.realized_noise(),
        demo.condition_number()
    )?;
    Ok(())
}
