//! `ghw`: build a trace code from a quadratic-form level set over
//! `F_{p^m}`, report its invariants, and compute its generalized Hamming
//! weight hierarchy in closed form, by exhaustive search, or both.
//!
//! Exit codes: 0 success/verified, 2 verification disagreement, 3 request
//! out of the tool's scope, 4 input error, 5 enumeration budget exceeded.

mod output;
mod parallel;

use clap::{Parser, ValueEnum};
use ghw_core::code::MAX_ENUM_FIELD;
use ghw_core::hierarchy::{verify_with, FormProfile};
use ghw_core::{
    CodeError, FieldCtx, FormExpr, FormSpecError, GfError, HierarchyError, OracleBudget,
    QformError, QuadraticForm, ReportStatus, TraceCode, VerifyOptions,
};
use std::fmt;
use std::io::Write;
use std::process::ExitCode;

const EXIT_DISAGREE: u8 = 2;
const EXIT_OUT_OF_SCOPE: u8 = 3;
const EXIT_INPUT: u8 = 4;
const EXIT_BUDGET: u8 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Form invariants plus code length and dimension
    Invariants,
    /// Closed-form hierarchy only (no searches)
    Hierarchy,
    /// Closed form cross-checked against both exhaustive searches
    Verify,
    /// Weight distribution by full codeword enumeration
    Wdist,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Invariants => "invariants",
            Mode::Hierarchy => "hierarchy",
            Mode::Verify => "verify",
            Mode::Wdist => "wdist",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    JsonLines,
    Csv,
}

/// Weight hierarchies of trace codes defined by quadratic-form level sets.
#[derive(Parser, Debug)]
#[command(name = "ghw", version)]
struct Cli {
    /// Field characteristic, an odd prime
    #[arg(long)]
    p: u64,

    /// Extension degree of the field F_{p^m}
    #[arg(long)]
    m: usize,

    /// Irreducible modulus coefficients, constant term first (defaults to a
    /// built-in modulus for the given p and m)
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u64>>,

    /// Form expression, e.g. "tr: x^2 - x^4"
    #[arg(long)]
    form: String,

    /// Target value in F_p; the code is indexed by {x != 0 : f(x) = a}
    #[arg(long)]
    a: u64,

    #[arg(long, value_enum, default_value_t = Mode::Verify)]
    mode: Mode,

    /// Hierarchy positions to report, comma separated (default: 1..=m)
    #[arg(long, value_delimiter = ',')]
    r: Option<Vec<usize>>,

    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Cap on the number of subspaces each search may enumerate
    #[arg(long, default_value_t = 2_000_000)]
    budget: u128,

    /// Worker threads for the exhaustive searches
    #[arg(long, default_value_t = 1)]
    threads: usize,

    /// Corrupt the sign invariant fed to the closed forms; verification must
    /// then report FAILED (self-test hook)
    #[arg(long)]
    inject_sign_flip: bool,
}

#[derive(Debug)]
enum CliError {
    Field(GfError),
    Spec(FormSpecError),
    Form(QformError),
    Code(CodeError),
    Hierarchy(HierarchyError),
    OutOfScope(String),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Field(e) => write!(f, "{e}"),
            CliError::Spec(e) => write!(f, "form spec: {e}"),
            CliError::Form(e) => write!(f, "{e}"),
            CliError::Code(e) => write!(f, "{e}"),
            CliError::Hierarchy(e) => write!(f, "{e}"),
            CliError::OutOfScope(what) => write!(f, "out of scope: {what}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<GfError> for CliError {
    fn from(e: GfError) -> CliError {
        CliError::Field(e)
    }
}

impl From<FormSpecError> for CliError {
    fn from(e: FormSpecError) -> CliError {
        CliError::Spec(e)
    }
}

impl From<QformError> for CliError {
    fn from(e: QformError) -> CliError {
        CliError::Form(e)
    }
}

impl From<CodeError> for CliError {
    fn from(e: CodeError) -> CliError {
        CliError::Code(e)
    }
}

impl From<HierarchyError> for CliError {
    fn from(e: HierarchyError) -> CliError {
        CliError::Hierarchy(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Io(e)
    }
}

fn code_exit(e: &CodeError) -> u8 {
    match e {
        CodeError::EmptyDefiningSet { .. } => EXIT_INPUT,
        CodeError::TooLarge { .. } => EXIT_BUDGET,
        CodeError::DegenerateCode { .. } => EXIT_OUT_OF_SCOPE,
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Field(_) | CliError::Spec(_) | CliError::Form(_) => EXIT_INPUT,
            CliError::Code(e) => code_exit(e),
            CliError::Hierarchy(e) => match e {
                HierarchyError::AZeroOutOfScope
                | HierarchyError::RankZero
                | HierarchyError::DimensionDeficit { .. } => EXIT_OUT_OF_SCOPE,
                HierarchyError::BadR { .. } => EXIT_INPUT,
                HierarchyError::BudgetExceeded { .. } => EXIT_BUDGET,
                HierarchyError::Code(e) => code_exit(e),
            },
            CliError::OutOfScope(_) => EXIT_OUT_OF_SCOPE,
            CliError::Io(_) => 1,
        }
    }
}

/// Length and dimension for the invariants summary. Degenerate and empty
/// codes are reported, not rejected; fields past the enumeration cap fall
/// back to the exact point-count formula, where a nonempty level set of a
/// nonzero target always spans the field.
fn code_shape(form: &QuadraticForm, a: u64, profile: &FormProfile) -> Result<(u64, usize), CliError> {
    let ctx = form.ctx();
    if ctx.size() <= MAX_ENUM_FIELD {
        return Ok(match TraceCode::build(form, a) {
            Ok(code) => (code.len() as u64, code.dim()),
            Err(CodeError::EmptyDefiningSet { .. }) => (0, 0),
            Err(e) => return Err(e.into()),
        });
    }
    if a % ctx.p() == 0 {
        return Err(CliError::OutOfScope(
            "dimension of a zero-target code past the enumeration cap".into(),
        ));
    }
    Ok((profile.expected_length(), profile.expected_dim()))
}

fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    let ctx = FieldCtx::new(cli.p, cli.m, cli.modulus.as_deref())?;
    let expr = FormExpr::parse(&cli.form)?;
    let eval = expr.evaluator(&ctx)?;
    let form = QuadraticForm::from_fn(&ctx, eval)?;

    let mut r_list: Vec<usize> = cli.r.clone().unwrap_or_else(|| (1..=cli.m).collect());
    r_list.sort_unstable();
    r_list.dedup();
    for &r in &r_list {
        if r < 1 || r > cli.m {
            return Err(HierarchyError::BadR { r, m: cli.m }.into());
        }
    }

    let config = output::ConfigRecord {
        p: ctx.p(),
        m: ctx.m(),
        modulus: ctx.modulus().to_vec(),
        form: expr.to_string(),
        a: cli.a,
        mode: cli.mode.name().to_string(),
        r: r_list,
        budget: cli.budget,
        threads: cli.threads,
    };
    let budget = OracleBudget { max_field: MAX_ENUM_FIELD, max_subspaces: cli.budget };

    match cli.mode {
        Mode::Invariants => {
            let profile = FormProfile::new(&form, cli.a);
            let inv = output::InvariantsRecord::from_profile(&profile);
            let (n, dim) = code_shape(&form, cli.a, &profile)?;
            output::emit_invariants(out, cli.format, &config, &inv, n, dim)?;
            Ok(0)
        }
        Mode::Hierarchy | Mode::Verify => {
            let opts = VerifyOptions {
                r_values: cli.r.clone(),
                budget,
                with_closed: true,
                with_oracles: cli.mode == Mode::Verify,
                flip_sign: cli.inject_sign_flip,
            };
            let threads = cli.threads;
            let report = verify_with(
                &form,
                cli.a,
                &opts,
                |code, r, budget| parallel::intersection_search(code, r, budget, threads),
                |code, r, budget| parallel::support_search(code, r, budget, threads),
            )?;
            let status = match (report.status, cli.mode) {
                (ReportStatus::Failed, _) => "FAILED",
                (ReportStatus::Verified, Mode::Verify) => "VERIFIED",
                (ReportStatus::Verified, _) => "OK",
            };
            output::emit_report(out, cli.format, &config, &report, status)?;
            Ok(if report.status == ReportStatus::Failed { EXIT_DISAGREE } else { 0 })
        }
        Mode::Wdist => {
            let code = TraceCode::build(&form, cli.a)?;
            let dist = code.weight_distribution()?;
            let profile = FormProfile::new(&form, cli.a);
            let inv = output::InvariantsRecord::from_profile(&profile);
            output::emit_wdist(out, cli.format, &config, &inv, code.len() as u64, code.dim(), &dist)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    // clap's own error exit code collides with the disagreement code, so
    // parse failures are mapped to the input-error code by hand.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut out = std::io::stdout().lock();
    match run(&cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
