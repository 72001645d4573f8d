//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse or usage error,
//! 3 infinite standard-monomial set, 4 monomial condition violated.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::checks::{
    suite_decomp, suite_exp, suite_inverse, suite_lu, suite_powers, suite_riordan, suite_transform, Suite,
    SuiteReport,
};
use crate::error::Error;
use crate::expr::parse_rational_expr;
use crate::io::{
    matrix_to_csv, matrix_to_json, matrix_to_text, parse_generators, parse_ideal, parse_point_set, parse_sequence,
    sequence_to_json, series_to_json, Sequence,
};
use crate::matrix::ExactMatrix;
use crate::mindex::MultiIndex;
use crate::pascal::{binomial_transform, build_a, build_l, build_l_power, build_s, build_u};
use crate::pointset::{degree_window, minimal_generators, standard_monomials, PointSet};
use crate::random::{random_downset, random_small_downset, rng};
use crate::riordan::{riordan_inverse, riordan_matrix, RiordanBasis};
use crate::stirling::{build_stirling_matrix, stirling_poly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFINITE: i32 = 3;
pub const EXIT_MONOMIAL: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "mvpascal", version, about = "Exact multivariate Pascal matrices, Stirling polynomials and Riordan arrays")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the standard monomials of a monomial ideal in grevlex order.
    Std(StdArgs),
    /// Minimal generators of the ideal whose standard monomials are the given set.
    Gens(GensArgs),
    /// Emit L, U, S or A on a point set.
    Matrix(MatrixArgs),
    /// Run a verification suite and print a JSON report.
    Verify(VerifyArgs),
    /// A Stirling polynomial, or the factorial Stirling matrix of a set.
    Stirling(StirlingArgs),
    /// Binomial transform of a sequence file.
    Transform(TransformArgs),
    /// Matrix of a Riordan basis given by rational expressions in z1..zn.
    Riordan(RiordanArgs),
}

#[derive(Args, Debug)]
struct Output {
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
struct SetSource {
    /// Point set as a JSON array, e.g. '[[0,0],[0,1],[1,0]]'.
    #[arg(long, conflicts_with_all = ["set_file", "degree"])]
    set: Option<String>,
    /// File holding a point set as a JSON array.
    #[arg(long, conflicts_with = "degree")]
    set_file: Option<PathBuf>,
    /// Number of variables (for windows, random sets, or an empty set).
    #[arg(long)]
    n: Option<usize>,
    /// Use the window of all multi-indices of total degree at most this.
    #[arg(long, requires = "n")]
    degree: Option<u32>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum ListFormat {
    Json,
    Lines,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MatrixFormat {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug)]
struct StdArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Generators as a JSON array of exponent arrays.
    #[arg(long, conflicts_with = "ideal_file", requires = "n")]
    gens: Option<String>,
    /// File of the form {"n": …, "generators": [[…], …]}.
    #[arg(long)]
    ideal_file: Option<PathBuf>,
    /// Keep only monomials of total degree at most this.
    #[arg(long)]
    bound: Option<u32>,
    #[arg(long, value_enum, default_value = "json")]
    format: ListFormat,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct GensArgs {
    #[command(flatten)]
    source: SetSource,
    #[command(flatten)]
    output: Output,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    L,
    U,
    S,
    A,
}

#[derive(Args, Debug)]
struct MatrixArgs {
    #[arg(long, value_enum, ignore_case = true)]
    kind: Kind,
    #[command(flatten)]
    source: SetSource,
    /// Integer power; supported for L and U.
    #[arg(long, allow_hyphen_values = true)]
    power: Option<i64>,
    #[arg(long, value_enum, default_value = "json")]
    format: MatrixFormat,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    suite: Suite,
    #[command(flatten)]
    source: SetSource,
    /// Check this many random downward-closed sets (or random bases for riordan).
    #[arg(long)]
    random: Option<usize>,
    /// Largest random set size.
    #[arg(long, default_value_t = 40)]
    max_size: usize,
    /// Powers p, comma separated; default -3..3 without 0.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    p: Vec<i64>,
    /// Second powers q for the power laws; defaults to the p list.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    q: Vec<i64>,
    /// Stirling orders, comma separated; default 1..5.
    #[arg(long, value_delimiter = ',')]
    ell: Vec<u32>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct StirlingArgs {
    /// A single multi-index, e.g. "0,1".
    #[arg(long, conflicts_with_all = ["set", "set_file", "degree"])]
    k: Option<MultiIndex>,
    #[arg(long)]
    ell: u32,
    #[command(flatten)]
    source: SetSource,
    #[arg(long, value_enum, default_value = "json")]
    format: MatrixFormat,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct TransformArgs {
    #[command(flatten)]
    source: SetSource,
    /// Sequence file {"n": …, "values": [{"k": […], "value": "…"}, …]}.
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    inverse: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args, Debug)]
struct RiordanArgs {
    /// The unit series G.
    #[arg(long, allow_hyphen_values = true)]
    g: String,
    /// One variable X_i per occurrence, in order.
    #[arg(long, required = true, allow_hyphen_values = true)]
    x: Vec<String>,
    /// Truncation degree; the matrix covers all indices up to this degree.
    #[arg(long)]
    degree: u32,
    /// Represent the inverse basis instead.
    #[arg(long)]
    inverse: bool,
    /// Print the truncated series of the basis instead of its matrix.
    #[arg(long)]
    series: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: MatrixFormat,
    #[command(flatten)]
    output: Output,
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InfiniteSet { .. } => EXIT_INFINITE,
            Error::MonomialConditionViolated => EXIT_MONOMIAL,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

type CmdResult = std::result::Result<(String, i32), Failure>;

fn read(path: &PathBuf) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn load_set(source: &SetSource) -> std::result::Result<PointSet, Failure> {
    if let Some(text) = &source.set {
        return Ok(parse_point_set(text, source.n)?);
    }
    if let Some(path) = &source.set_file {
        return Ok(parse_point_set(&read(path)?, source.n)?);
    }
    match (source.n, source.degree) {
        (Some(n), Some(d)) if n > 0 => Ok(degree_window(n, d)),
        _ => Err(usage("give --set, --set-file, or --n with --degree")),
    }
}

fn has_set(source: &SetSource) -> bool {
    source.set.is_some() || source.set_file.is_some() || source.degree.is_some()
}

fn emit_matrix<T: std::fmt::Display>(m: &ExactMatrix<T>, format: MatrixFormat) -> String {
    match format {
        MatrixFormat::Json => format!("{}\n", matrix_to_json(m)),
        MatrixFormat::Csv => matrix_to_csv(m),
        MatrixFormat::Text => matrix_to_text(m),
    }
}

fn cmd_std(a: &StdArgs) -> CmdResult {
    let ideal = match (&a.gens, &a.ideal_file) {
        (Some(g), _) => parse_generators(g, a.n.expect("required by clap"))?,
        (None, Some(path)) => {
            let ideal = parse_ideal(&read(path)?)?;
            if a.n.is_some_and(|n| n != ideal.dim()) {
                return Err(usage("--n disagrees with the ideal file"));
            }
            ideal
        }
        (None, None) => return Err(usage("give --gens or --ideal-file")),
    };
    let set = standard_monomials(&ideal, a.bound)?;
    let text = match a.format {
        ListFormat::Json => format!("{}\n", serde_json::to_string(&set).expect("plain data")),
        ListFormat::Lines => set.iter().map(|k| format!("{k}\n")).collect(),
    };
    Ok((text, EXIT_OK))
}

fn cmd_gens(a: &GensArgs) -> CmdResult {
    let set = load_set(&a.source)?;
    let ideal = minimal_generators(&set)?;
    let gens: Vec<&[u32]> = ideal.generators().iter().map(MultiIndex::exps).collect();
    Ok((format!("{}\n", json!({"n": ideal.dim(), "generators": gens})), EXIT_OK))
}

fn cmd_matrix(a: &MatrixArgs) -> CmdResult {
    let r = load_set(&a.source)?;
    let m = match (a.kind, a.power) {
        (Kind::L, None) => build_l(&r),
        (Kind::U, None) => build_u(&r),
        (Kind::S, None) => build_s(&r),
        (Kind::A, None) => build_a(&r),
        (Kind::L, Some(p)) => build_l_power(&r, p)?,
        (Kind::U, Some(p)) => build_l_power(&r, p)?.transpose(),
        (_, Some(_)) => return Err(usage("--power is supported for L and U only")),
    };
    Ok((emit_matrix(&m, a.format), EXIT_OK))
}

fn default_powers() -> Vec<i64> {
    vec![-3, -2, -1, 1, 2, 3]
}

fn cmd_verify(a: &VerifyArgs) -> CmdResult {
    let powers = if a.p.is_empty() { default_powers() } else { a.p.clone() };
    let others = if a.q.is_empty() { powers.clone() } else { a.q.clone() };
    let ells = if a.ell.is_empty() { (1..=5).collect() } else { a.ell.clone() };
    let mut g = rng(a.seed);

    let report: SuiteReport = if a.suite == Suite::Riordan {
        let (Some(n), Some(d)) = (a.source.n, a.source.degree) else {
            return Err(usage("the riordan suite needs --n and --degree"));
        };
        if n == 0 {
            return Err(usage("--n must be positive"));
        }
        suite_riordan(n, d, &powers, a.random.unwrap_or(0), &mut g)?
    } else {
        let sets: Vec<PointSet> = match a.random {
            Some(count) if !has_set(&a.source) => {
                if a.max_size == 0 {
                    return Err(usage("--max-size must be positive"));
                }
                (0..count)
                    .map(|_| match a.source.n {
                        Some(n) if n > 0 => random_downset(&mut g, n, a.max_size),
                        _ => random_small_downset(&mut g, a.max_size),
                    })
                    .collect()
            }
            Some(_) => return Err(usage("--random cannot be combined with an explicit set")),
            None => vec![load_set(&a.source)?],
        };
        match a.suite {
            Suite::Lu => suite_lu(&sets)?,
            Suite::Inverse => suite_inverse(&sets)?,
            Suite::Powers => suite_powers(&sets, &powers, &others)?,
            Suite::Exp => suite_exp(&sets, &powers)?,
            Suite::Transform => suite_transform(&sets, &ells, &mut g)?,
            Suite::Decomp => suite_decomp(&sets, &ells)?,
            Suite::Riordan => unreachable!("handled above"),
        }
    };
    let code = if report.passed() { EXIT_OK } else { EXIT_VERIFY_FAILED };
    Ok((format!("{}\n", serde_json::to_string(&report).expect("plain data")), code))
}

fn cmd_stirling(a: &StirlingArgs) -> CmdResult {
    if let Some(k) = &a.k {
        return Ok((format!("{}\n", stirling_poly(k, a.ell)), EXIT_OK));
    }
    let r = load_set(&a.source)?;
    Ok((emit_matrix(&build_stirling_matrix(&r, a.ell), a.format), EXIT_OK))
}

fn cmd_transform(a: &TransformArgs) -> CmdResult {
    let seq = parse_sequence(&read(&a.input)?)?;
    let r = if has_set(&a.source) {
        load_set(&a.source)?
    } else {
        PointSet::new(seq.n, seq.values.keys().cloned().collect())?
    };
    if r.dim() != seq.n {
        return Err(Error::DimensionMismatch {
            left: r.dim(),
            right: seq.n,
        }
        .into());
    }
    let values = binomial_transform(&r, &seq.values, a.inverse)?;
    let out = Sequence { n: seq.n, values };
    Ok((format!("{}\n", sequence_to_json(&out)), EXIT_OK))
}

fn cmd_riordan(a: &RiordanArgs) -> CmdResult {
    let n = a.x.len();
    let g = parse_rational_expr(&a.g, n, a.degree)?;
    let x = a
        .x
        .iter()
        .map(|t| parse_rational_expr(t, n, a.degree))
        .collect::<crate::Result<Vec<_>>>()?;
    let mut basis = RiordanBasis::new(g, x)?;
    if a.inverse {
        basis = riordan_inverse(&basis)?;
    }
    if a.series {
        let xs: Vec<_> = basis.x().iter().map(series_to_json).collect();
        return Ok((format!("{}\n", json!({"g": series_to_json(basis.g()), "x": xs})), EXIT_OK));
    }
    let m = riordan_matrix(&basis, &degree_window(n, a.degree))?;
    Ok((emit_matrix(&m, a.format), EXIT_OK))
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
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let (result, output) = match &cli.command {
        Command::Std(a) => (cmd_std(a), &a.output),
        Command::Gens(a) => (cmd_gens(a), &a.output),
        Command::Matrix(a) => (cmd_matrix(a), &a.output),
        Command::Verify(a) => (cmd_verify(a), &a.output),
        Command::Stirling(a) => (cmd_stirling(a), &a.output),
        Command::Transform(a) => (cmd_transform(a), &a.output),
        Command::Riordan(a) => (cmd_riordan(a), &a.output),
    };
    match result {
        Ok((text, code)) => {
            let written = match &output.out {
                Some(path) => fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => out.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => code,
                Err(msg) => {
                    let _ = writeln!(err, "error: {msg}");
                    EXIT_USAGE
                }
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
