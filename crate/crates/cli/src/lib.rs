//! Command-line front end for `qc-distance`.
//!
//! Every subcommand is a thin wrapper over the library. [`run`] parses an
//! argument list and returns the exit code and output text, so the binary
//! and the tests share one code path.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qc_distance::bounds::{
    bound_best, bound_poly, bound_poly_rowremoval, bound_weight, bound_weight_rowremoval,
    estimate_cost, BoundInput, SearchOptions,
};
use qc_distance::codeword::{
    build_punctured_codeword, build_rowremoved_codeword, verify, QcCodeword, Verification,
};
use qc_distance::expansion::{
    expand, expand_puncture_set, expand_two_step, fixture, parse_puncture_set, to_binary,
    weight_matrix_of_binary, ShiftAssignment, FIXTURES,
};
use qc_distance::girth::{
    measure_girth, qc_girth_limit, tree_girth_bound_transmitted, TannerGraph,
};
use qc_distance::oracle::{
    dimensionality_preserved, dimensionality_preserved_qc, exact_min_distance,
    exact_min_distance_by, Route,
};
use qc_distance::report::Report;
use qc_distance::{BinaryMatrix, Error, IndexSet, PolyMatrix, WeightMatrix};

/// Exit statuses. Clap's own usage errors also exit with 2.
pub mod exit {
    pub const OK: i32 = 0;
    /// `verify`: the vector is not a codeword.
    pub const NOT_A_CODEWORD: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const IO: i32 = 3;
    pub const PARSE: i32 = 4;
    pub const CAPACITY: i32 = 5;
    pub const PRECONDITION: i32 = 6;
}

/// The dimension check runs the binary expansion through Gaussian
/// elimination, so it is skipped for large circulants.
pub const DIMENSION_CHECK_MAX_N: usize = 64;

/// Column-set counts above this get a cost estimate on stderr.
const ESTIMATE_THRESHOLD: u128 = 100_000;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{context}: {source}")]
    Library { context: String, source: Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Io { .. } => exit::IO,
            CliError::Library { source, .. } => match source {
                Error::Parse { .. } => exit::PARSE,
                Error::Capacity(_) | Error::Overflow(_) => exit::CAPACITY,
                _ => exit::PRECONDITION,
            },
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

trait Context<T> {
    fn context(self, what: impl Into<String>) -> Result<T>;
}

impl<T> Context<T> for qc_distance::Result<T> {
    fn context(self, what: impl Into<String>) -> Result<T> {
        self.map_err(|source| CliError::Library {
            context: what.into(),
            source,
        })
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "qcdist",
    version,
    about = "Minimum distance bounds, expansion and girth for quasi-cyclic LDPC codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Upper-bound the minimum distance from permanents of submatrices.
    Bound(BoundArgs),
    /// Lift a protomatrix to a polynomial or binary parity-check matrix.
    Expand(ExpandArgs),
    /// Measure girth, or bound it from a protomatrix.
    Girth(GirthArgs),
    /// Check a codeword against a polynomial parity-check matrix.
    Verify(VerifyArgs),
    /// Exact minimum distance of a small code by exhaustive search.
    Oracle(OracleArgs),
    /// Built-in example matrices.
    #[command(subcommand)]
    Fixtures(FixturesCommand),
}

/// A matrix given as a file path or a built-in fixture name. The format is
/// taken from the flag used; a bare argument is detected from its header
/// ("J L" for a weight matrix, "J L N" for a polynomial matrix).
#[derive(Debug, Clone, Default, Args)]
pub struct InputArgs {
    /// Matrix file or fixture name, format detected from the header.
    pub input: Option<String>,
    /// Weight matrix (protomatrix) file or fixture name.
    #[arg(long, value_name = "PATH")]
    pub weight: Option<String>,
    /// Polynomial matrix file or fixture name.
    #[arg(long, value_name = "PATH")]
    pub poly: Option<String>,
    /// Dense 0/1 matrix file.
    #[arg(long, value_name = "PATH")]
    pub binary: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TheoremArg {
    Poly,
    Weight,
    PolyRowremoval,
    WeightRowremoval,
    Best,
}

#[derive(Debug, Clone, Default, Args)]
pub struct PunctureArgs {
    /// Punctured columns, comma separated.
    #[arg(long, value_name = "LIST", conflicts_with = "puncture_file")]
    pub puncture: Option<String>,
    /// File holding the punctured columns on one line.
    #[arg(long, value_name = "PATH")]
    pub puncture_file: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[command(flatten)]
    pub puncture: PunctureArgs,
    #[arg(long, value_enum, default_value = "best")]
    pub theorem: TheoremArg,
    /// Largest number of removed rows (default J - 1).
    #[arg(long, value_name = "T")]
    pub max_t: Option<usize>,
    /// Stop after this many column sets.
    #[arg(long, value_name = "COUNT")]
    pub budget: Option<u64>,
    /// Worker threads (default: all cores).
    #[arg(long, value_name = "COUNT")]
    pub workers: Option<usize>,
    /// Add the wall-clock time to the report.
    #[arg(long)]
    pub timing: bool,
    /// Suppress the cost estimate and warnings on stderr.
    #[arg(long)]
    pub quiet: bool,
    /// Write the witness codeword here (polynomial theorems only).
    #[arg(long, value_name = "PATH")]
    pub codeword: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long, short, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Poly,
    Binary,
    Weight,
    /// The binary matrix written as a 0/1 weight matrix, ready to be
    /// lifted again.
    Intermediate,
}

#[derive(Debug, Clone, Args)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Shift file for the first lifting.
    #[arg(long, value_name = "PATH", group = "first")]
    pub shifts: Option<PathBuf>,
    /// Random first lifting by factor N.
    #[arg(long, value_name = "N", group = "first")]
    pub random: Option<usize>,
    /// Lifting by factor N with every shift 0 (0/1 matrices only).
    #[arg(long, value_name = "N", group = "first")]
    pub identity: Option<usize>,
    /// Shift file for a second lifting of the first result.
    #[arg(long, value_name = "PATH", group = "second")]
    pub second_shifts: Option<PathBuf>,
    /// Random second lifting by factor N.
    #[arg(long, value_name = "N", group = "second")]
    pub second_random: Option<usize>,
    /// Seed for random liftings; the second step uses seed + 1.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "poly")]
    pub format: MatrixFormat,
    /// Also write the shift assignment(s) used.
    #[arg(long, value_name = "PATH")]
    pub save_shifts: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long, short, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct GirthArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Girth ceiling imposed by quasi-cyclic lifting of a protomatrix.
    #[arg(long)]
    pub limit: bool,
    /// Tree-method bound for a protomatrix at this transmitted block length.
    #[arg(long, value_name = "N")]
    pub tree: Option<usize>,
    #[command(flatten)]
    pub puncture: PunctureArgs,
    /// Write the result here instead of stdout.
    #[arg(long, short, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Codeword file: one subblock per line, `phi` for punctured ones.
    #[arg(long, value_name = "PATH")]
    pub codeword: PathBuf,
    /// Write the result here instead of stdout.
    #[arg(long, short, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Auto,
    Codewords,
    Supports,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Punctured subblocks (polynomial input) or positions (binary input).
    #[command(flatten)]
    pub puncture: PunctureArgs,
    #[arg(long, value_enum, default_value = "auto")]
    pub route: RouteArg,
    /// Write the result here instead of stdout.
    #[arg(long, short, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum FixturesCommand {
    /// List the built-in matrices.
    List,
    /// Print a built-in matrix with its description.
    Show { name: String },
    /// Write a built-in matrix in its file format.
    Export {
        name: String,
        /// Write the matrix here instead of stdout.
        #[arg(long, short, value_name = "PATH")]
        output: Option<PathBuf>,
    },
}

/// Result of one invocation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    code: exit::USAGE,
                    stderr: text,
                    ..Outcome::default()
                }
            } else {
                Outcome {
                    code: exit::OK,
                    stdout: text,
                    ..Outcome::default()
                }
            }
        }
    }
}

pub fn execute(cli: Cli) -> Outcome {
    let mut log = Vec::new();
    let result = match &cli.command {
        Command::Bound(a) => {
            cmd_bound(a, &mut log).and_then(|r| emit(&r.to_string(), a.output.as_deref()))
        }
        Command::Expand(a) => cmd_expand(a).and_then(|t| emit(&t, a.output.as_deref())),
        Command::Girth(a) => cmd_girth(a).and_then(|r| emit(&r.to_string(), a.output.as_deref())),
        Command::Verify(a) => cmd_verify(a).and_then(|r| {
            let code = if r.get("codeword") == Some("true") {
                exit::OK
            } else {
                exit::NOT_A_CODEWORD
            };
            emit(&r.to_string(), a.output.as_deref()).map(|o| Outcome { code, ..o })
        }),
        Command::Oracle(a) => cmd_oracle(a).and_then(|r| emit(&r.to_string(), a.output.as_deref())),
        Command::Fixtures(c) => cmd_fixtures(c).and_then(|(text, out)| emit(&text, out.as_deref())),
    };
    let mut outcome = result.unwrap_or_else(|e| Outcome {
        code: e.exit_code(),
        stderr: format!("error: {e}\n"),
        ..Outcome::default()
    });
    let mut notes: String = log.iter().map(|l| format!("{l}\n")).collect();
    notes.push_str(&outcome.stderr);
    outcome.stderr = notes;
    outcome
}

fn emit(text: &str, output: Option<&Path>) -> Result<Outcome> {
    match output {
        Some(path) => {
            write_file(path, text)?;
            Ok(Outcome::default())
        }
        None => Ok(Outcome {
            stdout: text.to_string(),
            ..Outcome::default()
        }),
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// A loaded input matrix.
#[derive(Debug, Clone)]
pub enum Matrix {
    Weight(WeightMatrix),
    Poly(PolyMatrix),
    Binary(BinaryMatrix),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Weight,
    Poly,
    Binary,
}

/// Resolves a path or fixture name; returns the text and the fixture kind
/// if it was a fixture. A fixture name may carry a `.wm`, `.pm` or `.txt`
/// suffix.
fn resolve(source: &str) -> Result<(String, Option<Kind>)> {
    let path = Path::new(source);
    if path.exists() {
        return Ok((read_file(path)?, None));
    }
    let name = [".wm", ".pm", ".txt"]
        .iter()
        .find_map(|ext| source.strip_suffix(ext))
        .unwrap_or(source);
    match fixture(name) {
        Some(f) => Ok((
            f.text.to_string(),
            Some(if f.poly { Kind::Poly } else { Kind::Weight }),
        )),
        None => Err(CliError::Io {
            path: path.to_path_buf(),
            source: std::io::Error::new(
                std::io::ErrorKind::NotFound,
                "no such file or built-in fixture",
            ),
        }),
    }
}

fn detect(text: &str) -> Result<Kind> {
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .ok_or_else(|| CliError::Usage("input is empty".into()))?;
    let numeric = header
        .split_whitespace()
        .all(|t| t.parse::<usize>().is_ok());
    match header.split_whitespace().count() {
        2 if numeric => Ok(Kind::Weight),
        3 if numeric => Ok(Kind::Poly),
        _ => Err(CliError::Usage(
            "cannot tell the input format; use --weight, --poly or --binary".into(),
        )),
    }
}

impl InputArgs {
    fn source(&self) -> Result<(&str, Option<Kind>)> {
        let given: Vec<(&str, Option<Kind>)> = [
            (self.input.as_deref(), None),
            (self.weight.as_deref(), Some(Kind::Weight)),
            (self.poly.as_deref(), Some(Kind::Poly)),
            (self.binary.as_deref(), Some(Kind::Binary)),
        ]
        .into_iter()
        .filter_map(|(s, k)| s.map(|s| (s, k)))
        .collect();
        match given[..] {
            [one] => Ok(one),
            [] => Err(CliError::Usage("no input matrix given".into())),
            _ => Err(CliError::Usage("give exactly one input matrix".into())),
        }
    }

    /// Loads the matrix and a label for reports.
    pub fn load(&self) -> Result<(Matrix, String)> {
        let (source, flag) = self.source()?;
        let (text, fixture_kind) = resolve(source)?;
        let kind = match (flag, fixture_kind) {
            (Some(Kind::Binary), Some(_)) => {
                return Err(CliError::Usage(format!(
                    "fixture {source} is not a binary matrix"
                )))
            }
            // a polynomial fixture read with --weight contributes its weight matrix
            (Some(Kind::Weight), Some(Kind::Poly)) => Kind::Poly,
            (Some(Kind::Poly), Some(Kind::Weight)) => {
                return Err(CliError::Usage(format!(
                    "fixture {source} is a weight matrix"
                )))
            }
            (Some(k), _) | (None, Some(k)) => k,
            (None, None) => detect(&text)?,
        };
        let matrix = match kind {
            Kind::Weight => Matrix::Weight(WeightMatrix::parse(&text).context(source)?),
            Kind::Poly => {
                let h = PolyMatrix::parse(&text).context(source)?;
                if flag == Some(Kind::Weight) {
                    Matrix::Weight(h.weight_matrix())
                } else {
                    Matrix::Poly(h)
                }
            }
            Kind::Binary => Matrix::Binary(BinaryMatrix::parse_dense(&text).context(source)?),
        };
        Ok((matrix, source.to_string()))
    }
}

impl PunctureArgs {
    fn load(&self, cols: usize) -> Result<IndexSet> {
        if let Some(list) = &self.puncture {
            return IndexSet::parse(list, cols).context("--puncture");
        }
        if let Some(path) = &self.puncture_file {
            let text = read_file(path)?;
            return parse_puncture_set(&text, cols).context(path.display().to_string());
        }
        Ok(IndexSet::empty())
    }
}

fn shape(m: &Matrix) -> (usize, usize, Option<usize>) {
    match m {
        Matrix::Weight(a) => (a.rows(), a.cols(), None),
        Matrix::Poly(h) => (h.rows(), h.cols(), Some(h.modulus_degree())),
        Matrix::Binary(b) => (b.rows(), b.cols(), None),
    }
}

fn or_dash<T: ToString>(v: Option<T>) -> String {
    v.map_or("-".to_string(), |v| v.to_string())
}

pub fn cmd_bound(args: &BoundArgs, log: &mut Vec<String>) -> Result<Report> {
    let (matrix, label) = args.input.load()?;
    let (rows, cols, n) = shape(&matrix);
    let p = args.puncture.load(cols)?;
    let opts = SearchOptions {
        budget: args.budget,
        workers: args.workers,
    };
    if args.workers == Some(0) {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    let input = match &matrix {
        Matrix::Weight(a) => BoundInput::Weight(a),
        Matrix::Poly(h) => BoundInput::Poly(h),
        Matrix::Binary(_) => {
            return Err(CliError::Usage(
                "bounds need a weight or polynomial matrix, not a binary one".into(),
            ))
        }
    };
    let removal = matches!(
        args.theorem,
        TheoremArg::PolyRowremoval | TheoremArg::WeightRowremoval | TheoremArg::Best
    );
    if args.max_t.is_some() && !removal {
        return Err(CliError::Usage(
            "--max-t applies to row-removal theorems only".into(),
        ));
    }
    let max_t = args.max_t.unwrap_or(rows.saturating_sub(1));

    if !args.quiet && args.budget.is_none() {
        if let Ok(est) = estimate_cost(input, 32) {
            if est.subsets >= ESTIMATE_THRESHOLD {
                log.push(format!(
                    "estimate: {} column sets x {} permanents at {:.1} us each, about {:.0} s per theorem",
                    est.subsets,
                    est.permanents_per_subset,
                    est.seconds_per_permanent * 1e6,
                    est.estimated_seconds
                ));
            }
        }
    }

    let start = Instant::now();
    let report = match (args.theorem, input) {
        (TheoremArg::Poly, BoundInput::Poly(h)) => bound_poly(h, &p, &opts),
        (TheoremArg::PolyRowremoval, BoundInput::Poly(h)) => {
            bound_poly_rowremoval(h, &p, max_t, &opts)
        }
        (TheoremArg::Poly | TheoremArg::PolyRowremoval, BoundInput::Weight(_)) => {
            return Err(CliError::Usage(
                "polynomial theorems need a polynomial matrix (--poly)".into(),
            ))
        }
        (TheoremArg::Weight, _) => bound_weight(&weight_of(input), &p, &opts),
        (TheoremArg::WeightRowremoval, _) => {
            bound_weight_rowremoval(&weight_of(input), &p, max_t, &opts)
        }
        (TheoremArg::Best, _) => bound_best(input, &p, Some(max_t), &opts),
    }
    .context("bound")?;
    let elapsed = start.elapsed();

    let dimension = match &matrix {
        Matrix::Poly(_) if p.is_empty() => "true".to_string(),
        Matrix::Poly(h) if h.modulus_degree() <= DIMENSION_CHECK_MAX_N => {
            let kept = dimensionality_preserved_qc(h, &p).context("dimension check")?;
            if !kept && !args.quiet {
                log.push(
                    "warning: puncturing erases a nonzero codeword; the bound applies to the punctured code only"
                        .to_string(),
                );
            }
            kept.to_string()
        }
        _ if p.is_empty() => "true".to_string(),
        _ => "unchecked".to_string(),
    };

    if let Some(path) = &args.codeword {
        let Matrix::Poly(h) = &matrix else {
            return Err(CliError::Usage(
                "--codeword needs a polynomial matrix".into(),
            ));
        };
        let text = match &report.witness_s {
            Some(s) if report.theorem.name().starts_with("poly") => {
                let c = if report.witness_t.is_empty() {
                    build_punctured_codeword(h, s, &p)
                } else {
                    build_rowremoved_codeword(h, s, &report.witness_t, &p)
                }
                .context("witness codeword")?;
                c.to_string()
            }
            _ => {
                return Err(CliError::Usage(
                    "no polynomial witness to write; the bound came from the weight matrix".into(),
                ))
            }
        };
        write_file(path, &text)?;
    }

    let mut doc = Report::new("bound");
    doc.push("input", label)
        .push("rows", rows)
        .push("cols", cols)
        .push("modulus", or_dash(n))
        .push("requested", theorem_name(args.theorem))
        .push(
            "max_t",
            if removal {
                max_t.to_string()
            } else {
                "-".into()
            },
        )
        .push("budget", or_dash(args.budget));
    doc.append(Report::from_bound(&report));
    doc.push("dimension_preserved", dimension);
    if args.timing {
        doc.push("wall_time_s", format!("{:.3}", elapsed.as_secs_f64()));
    }
    Ok(doc)
}

fn weight_of(input: BoundInput<'_>) -> WeightMatrix {
    match input {
        BoundInput::Weight(a) => a.clone(),
        BoundInput::Poly(h) => h.weight_matrix(),
    }
}

fn theorem_name(t: TheoremArg) -> &'static str {
    match t {
        TheoremArg::Poly => "poly",
        TheoremArg::Weight => "weight",
        TheoremArg::PolyRowremoval => "poly-rowremoval",
        TheoremArg::WeightRowremoval => "weight-rowremoval",
        TheoremArg::Best => "best",
    }
}

pub fn cmd_expand(args: &ExpandArgs) -> Result<String> {
    let (matrix, _) = args.input.load()?;
    let h = match matrix {
        Matrix::Poly(h) => {
            if args.shifts.is_some() || args.random.is_some() || args.identity.is_some() {
                return Err(CliError::Usage(
                    "a polynomial matrix is already lifted".into(),
                ));
            }
            h
        }
        Matrix::Binary(_) => {
            return Err(CliError::Usage(
                "expand takes a weight or polynomial matrix".into(),
            ))
        }
        Matrix::Weight(a) => {
            let first = if let Some(path) = &args.shifts {
                ShiftAssignment::parse(&read_file(path)?).context(path.display().to_string())?
            } else if let Some(n) = args.random {
                ShiftAssignment::random(&a, n, args.seed).context("--random")?
            } else if let Some(n) = args.identity {
                ShiftAssignment::identity(&a, n).context("--identity")?
            } else {
                return Err(CliError::Usage(
                    "give one of --shifts, --random or --identity".into(),
                ));
            };
            let second = if let Some(path) = &args.second_shifts {
                Some(
                    ShiftAssignment::parse(&read_file(path)?)
                        .context(path.display().to_string())?,
                )
            } else if let Some(n) = args.second_random {
                let inter = weight_matrix_of_binary(&to_binary(
                    &expand(&a, &first).context("first lifting")?,
                ));
                Some(
                    ShiftAssignment::random(&inter, n, args.seed.wrapping_add(1))
                        .context("--second-random")?,
                )
            } else {
                None
            };
            if let Some(path) = &args.save_shifts {
                let mut text = first.to_string();
                if let Some(s) = &second {
                    text.push('\n');
                    text.push_str(&s.to_string());
                }
                write_file(path, &text)?;
            }
            match second {
                Some(s) => {
                    expand_two_step(&a, &first, &s)
                        .context("two-step lifting")?
                        .0
                }
                None => expand(&a, &first).context("lifting")?,
            }
        }
    };
    Ok(match args.format {
        MatrixFormat::Poly => h.to_string(),
        MatrixFormat::Binary => to_binary(&h).to_string(),
        MatrixFormat::Weight => h.weight_matrix().to_string(),
        MatrixFormat::Intermediate => weight_matrix_of_binary(&to_binary(&h)).to_string(),
    })
}

pub fn cmd_girth(args: &GirthArgs) -> Result<Report> {
    let (matrix, label) = args.input.load()?;
    let mut doc = Report::new("girth");
    doc.push("input", label);
    if args.limit || args.tree.is_some() {
        let a = match &matrix {
            Matrix::Weight(a) => a.clone(),
            Matrix::Poly(h) => h.weight_matrix(),
            Matrix::Binary(_) => {
                return Err(CliError::Usage(
                    "--limit and --tree take a protomatrix".into(),
                ))
            }
        };
        if args.limit {
            doc.push("qc_limit", or_dash(qc_girth_limit(&a)));
        }
        if let Some(n) = args.tree {
            let p = args.puncture.load(a.cols())?;
            let bound = tree_girth_bound_transmitted(&a, n, p.len()).context("--tree")?;
            doc.push("block_length", n)
                .push("punctured", &p)
                .push("expansion_factor", n / (a.cols() - p.len()))
                .push(
                    "tree_bound",
                    bound.map_or("inf".to_string(), |g| g.to_string()),
                );
        }
        return Ok(doc);
    }
    let h = match matrix {
        Matrix::Binary(b) => b,
        Matrix::Poly(h) => to_binary(&h),
        Matrix::Weight(_) => return Err(CliError::Usage(
            "a protomatrix has no single Tanner graph; use --limit or --tree, or expand it first"
                .into(),
        )),
    };
    let graph = TannerGraph::from_binary(&h);
    doc.push("variables", graph.variable_count())
        .push("checks", graph.check_count())
        .push("edges", graph.edge_count())
        .push(
            "girth",
            measure_girth(&h).map_or("inf".to_string(), |g| g.to_string()),
        );
    Ok(doc)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<Report> {
    let (matrix, label) = args.input.load()?;
    let Matrix::Poly(h) = matrix else {
        return Err(CliError::Usage("verify needs a polynomial matrix".into()));
    };
    let text = read_file(&args.codeword)?;
    let c = QcCodeword::parse(&text, h.modulus_degree())
        .context(args.codeword.display().to_string())?;
    let verdict = verify(&h, &c).context("verify")?;
    let mut doc = Report::new("verify");
    doc.push("input", label)
        .push("codeword", verdict.is_codeword())
        .push(
            "violated_row",
            match verdict {
                Verification::Codeword => "-".to_string(),
                Verification::Violated { row } => row.to_string(),
            },
        )
        .push("weight", c.hamming_weight())
        .push("all_zero", c.is_all_zero());
    Ok(doc)
}

pub fn cmd_oracle(args: &OracleArgs) -> Result<Report> {
    let (matrix, label) = args.input.load()?;
    let (h, p, subblocks) = match matrix {
        Matrix::Poly(h) => {
            let p = args.puncture.load(h.cols())?;
            let n = h.modulus_degree();
            (to_binary(&h), expand_puncture_set(&p, n), p)
        }
        Matrix::Binary(b) => {
            let p = args.puncture.load(b.cols())?;
            (b, p.clone(), p)
        }
        Matrix::Weight(_) => {
            return Err(CliError::Usage(
                "the oracle needs a polynomial or binary matrix".into(),
            ))
        }
    };
    let dimension = h.cols() - h.rank();
    let (d, route) = match args.route {
        RouteArg::Auto => (exact_min_distance(&h, &p), "auto"),
        RouteArg::Codewords => (exact_min_distance_by(&h, &p, Route::Codewords), "codewords"),
        RouteArg::Supports => (exact_min_distance_by(&h, &p, Route::Supports), "supports"),
    };
    let d = d.context("oracle")?;
    let kept = dimensionality_preserved(&h, &p).context("dimension check")?;
    let mut doc = Report::new("oracle");
    doc.push("input", label)
        .push("length", h.cols())
        .push("dimension", dimension)
        .push("puncture", &subblocks)
        .push("route", route)
        .push("distance", d)
        .push("dimension_preserved", kept);
    Ok(doc)
}

pub fn cmd_fixtures(cmd: &FixturesCommand) -> Result<(String, Option<PathBuf>)> {
    let find = |name: &str| {
        fixture(name).ok_or_else(|| {
            CliError::Usage(format!("unknown fixture {name:?}; see `fixtures list`"))
        })
    };
    match cmd {
        FixturesCommand::List => {
            let width = FIXTURES.iter().map(|f| f.name.len()).max().unwrap_or(0);
            let pwidth = FIXTURES
                .iter()
                .map(|f| f.puncture_set().to_string().len())
                .max()
                .unwrap_or(0);
            let mut out = String::new();
            for f in FIXTURES {
                let m = f.matrix();
                let a = m.weight_matrix();
                let kind = if f.poly { "poly" } else { "weight" };
                out.push_str(&format!(
                    "{:width$}  {:6}  {:>2}x{:<2}  puncture {:pwidth$}  {}\n",
                    f.name,
                    kind,
                    a.rows(),
                    a.cols(),
                    f.puncture_set().to_string(),
                    f.description,
                ));
            }
            Ok((out, None))
        }
        FixturesCommand::Show { name } => {
            let f = find(name)?;
            Ok((
                format!(
                    "# {}\n# {}\n# suggested puncture set: {}\n{}",
                    f.name,
                    f.description,
                    f.puncture_set(),
                    f.matrix()
                ),
                None,
            ))
        }
        FixturesCommand::Export { name, output } => {
            Ok((find(name)?.text.to_string(), output.clone()))
        }
    }
}
