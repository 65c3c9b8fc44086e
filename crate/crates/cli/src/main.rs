mod output;

use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use invwalk::closedform::{theorem_lower_bound, theorem_upper_bound};
use invwalk::extract::{extract_d, extract_g};
use invwalk::heatflow::{self, ModelVariant, Scalar};
use invwalk::perm::{enumerate_total_inversions, monte_carlo_e, WalkSpec, DEFAULT_ENUM_BUDGET};
use invwalk::{Error, Poly, Rational};

use output::{Format, Table};

const BUDGET_ENV: &str = "INVWALK_ENUM_BUDGET";

/// Expected inversion count of random adjacent-transposition walks, computed
/// exactly by heat flow, by sampling, or by enumeration.
#[derive(Debug, Parser)]
#[command(name = "invwalk", version)]
struct Cli {
    /// Row encoding for tabular output
    #[arg(long, value_enum, global = true, default_value_t = Format::Csv)]
    format: Format,
    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// E_nt from the heat-flow recursion
    Exact(ExactArgs),
    /// Monte Carlo estimate of E_nt
    Simulate(SimulateArgs),
    /// Lower bound, exact value and upper bound at x = 1/n
    Bounds(BoundsArgs),
    /// Extract the d and g coefficient sequences
    Extract(ExtractArgs),
    /// E over a grid of n and t, one row per pair (n outer, t inner)
    Table(TableArgs),
    /// Exhaustive total over all n^t generator words (budget: INVWALK_ENUM_BUDGET)
    Enumerate(EnumerateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Rational,
    Float,
    Poly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Variant {
    FullGrid,
    Grid,
    Triangle,
    Diamond,
}

impl From<Variant> for ModelVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::FullGrid => ModelVariant::FullGridCrossDiagonal,
            Variant::Grid => ModelVariant::GridHotDiagonal,
            Variant::Triangle => ModelVariant::TriangleHotBoundary,
            Variant::Diamond => ModelVariant::DiamondHotBoundary,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    D,
    G,
    All,
}

/// Conductivity as given on the command line.
#[derive(Debug, Clone, PartialEq)]
enum XArg {
    InverseN,
    Exact(Rational),
    Float(f64),
}

impl FromStr for XArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.trim() == "1/n" {
            return Ok(XArg::InverseN);
        }
        if let Ok(r) = s.parse::<Rational>() {
            return Ok(XArg::Exact(r));
        }
        match s.parse::<f64>() {
            Ok(f) if f.is_finite() => Ok(XArg::Float(f)),
            _ => Err(format!("expected `1/n`, `p/q` or a decimal, got {s:?}")),
        }
    }
}

impl fmt::Display for XArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            XArg::InverseN => f.write_str("1/n"),
            XArg::Exact(r) => write!(f, "{r}"),
            XArg::Float(v) => write!(f, "{v:?}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Range {
    lo: usize,
    hi: usize,
}

impl FromStr for Range {
    type Err = String;

    /// `a:b` (inclusive) or a single value.
    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |v: &str| v.trim().parse::<usize>().map_err(|e| format!("{v:?}: {e}"));
        let (lo, hi) = match s.split_once(':') {
            Some((a, b)) => (parse(a)?, parse(b)?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(Range { lo, hi })
    }
}

#[derive(Debug, Args)]
struct ExactArgs {
    /// Number of generators (the walk is on n+1 letters)
    #[arg(long)]
    n: usize,
    /// Number of steps
    #[arg(long)]
    t: usize,
    /// Conductivity: `1/n` or an exact `p/q`; decimals only in float mode
    #[arg(long, default_value = "1/n")]
    x: XArg,
    #[arg(long, value_enum, default_value_t = Mode::Rational)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Variant::Triangle)]
    variant: Variant,
    /// Also print every cell of the final field
    #[arg(long)]
    dump_matrix: bool,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Independent streams; the estimate depends on this value
    #[arg(long, default_value_t = 8)]
    shards: u64,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    t: usize,
}

#[derive(Debug, Args)]
struct ExtractArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[arg(long)]
    t: usize,
    /// Values of n for g (comma separated, all >= t); default t, t+1, t+2
    #[arg(long, value_delimiter = ',')]
    n_set: Option<Vec<u64>>,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// `a:b` inclusive
    #[arg(long)]
    n: Range,
    /// `a:b` inclusive
    #[arg(long)]
    t: Range,
    #[arg(long, default_value = "1/n")]
    x: XArg,
    #[arg(long, value_enum, default_value_t = Mode::Rational)]
    mode: Mode,
    #[arg(long, value_enum, default_value_t = Variant::Triangle)]
    variant: Variant,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    t: u32,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Budget(String),
    Math(String),
    Io(io::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
            Failure::Math(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Budget(m) | Failure::Math(m) => f.write_str(m),
            Failure::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::BudgetExceeded { .. } | Error::BruteForceBudget { .. } => Failure::Budget(msg),
            Error::NotPolynomialInInverseN { .. }
            | Error::LeadingTermMismatch { .. }
            | Error::NonIntegerD { .. }
            | Error::GDependsOnN { .. }
            | Error::NonzeroLowOrderCorrection { .. }
            | Error::MissingD(_) => Failure::Math(msg),
            _ => Failure::Usage(msg),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type CliResult<T> = Result<T, Failure>;

/// Scalar-specific pieces the subcommands need: conductivity from the
/// command line and the printed form of E.
trait CliScalar: Scalar {
    fn conductivity(x: &XArg, n: usize) -> CliResult<Self>;
    fn show(&self) -> String;
}

impl CliScalar for Rational {
    fn conductivity(x: &XArg, n: usize) -> CliResult<Self> {
        match x {
            XArg::InverseN => Ok(Rational::recip_of(n as u64)?),
            XArg::Exact(r) => Ok(r.clone()),
            XArg::Float(_) => Err(Failure::Usage(format!(
                "decimal x = {x} is not allowed in rational mode; pass p/q or 1/n"
            ))),
        }
    }

    fn show(&self) -> String {
        self.to_string()
    }
}

impl CliScalar for f64 {
    fn conductivity(x: &XArg, n: usize) -> CliResult<Self> {
        match x {
            XArg::InverseN if n == 0 => Err(Error::InvalidN.into()),
            XArg::InverseN => Ok(1.0 / n as f64),
            XArg::Exact(r) => Ok(r.to_f64()),
            XArg::Float(v) => Ok(*v),
        }
    }

    fn show(&self) -> String {
        format!("{self:?}")
    }
}

impl CliScalar for Poly {
    fn conductivity(x: &XArg, _n: usize) -> CliResult<Self> {
        match x {
            XArg::InverseN => Ok(Poly::x()),
            _ => Err(Failure::Usage(format!(
                "x = {x} given in poly mode, where x stays symbolic"
            ))),
        }
    }

    fn show(&self) -> String {
        self.to_string()
    }
}

/// Energies `E_0..=E_t` and the final field cells `(i, j, value)`.
type RunOutput = (Vec<String>, Vec<(i64, i64, String)>);

fn run_as<S: CliScalar>(
    n: usize,
    t: usize,
    x: &XArg,
    variant: ModelVariant,
) -> CliResult<RunOutput> {
    let x = S::conductivity(x, n)?;
    let report = heatflow::run(n, t, &x, variant)?;
    let energy = report.energy.iter().map(S::show).collect();
    let cells = report
        .field
        .cells()
        .map(|((i, j), v)| (i, j, v.dump()))
        .collect();
    Ok((energy, cells))
}

fn run_mode(
    mode: Mode,
    n: usize,
    t: usize,
    x: &XArg,
    variant: ModelVariant,
) -> CliResult<RunOutput> {
    match mode {
        Mode::Rational => run_as::<Rational>(n, t, x, variant),
        Mode::Float => run_as::<f64>(n, t, x, variant),
        Mode::Poly => run_as::<Poly>(n, t, x, variant),
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Rational => "rational",
        Mode::Float => "float",
        Mode::Poly => "poly",
    }
}

fn cmd_exact(a: &ExactArgs, format: Format, out: &mut dyn Write) -> CliResult<()> {
    let (energy, cells) = run_mode(a.mode, a.n, a.t, &a.x, a.variant.into())?;
    let e = &energy[a.t];
    match format {
        Format::Csv => {
            let label = if a.mode == Mode::Poly { "E(x)" } else { "E" };
            writeln!(out, "{label}={e}")?;
        }
        Format::Jsonl => {
            let mut t = Table::new(&["n", "t", "x", "mode", "E"]);
            let x = if a.mode == Mode::Poly {
                "x".to_string()
            } else {
                a.x.to_string()
            };
            t.push(vec![
                a.n.to_string(),
                a.t.to_string(),
                x,
                mode_name(a.mode).into(),
                e.clone(),
            ]);
            t.write(format, out)?;
        }
    }
    if a.dump_matrix {
        let mut t = Table::new(&["i", "j", "value"]);
        for (i, j, v) in cells {
            t.push(vec![i.to_string(), j.to_string(), v]);
        }
        t.write(format, out)?;
    }
    Ok(())
}

fn cmd_simulate(a: &SimulateArgs) -> CliResult<Table> {
    let est = monte_carlo_e(&WalkSpec {
        n: a.n,
        t: a.t,
        seed: a.seed,
        samples: a.samples,
        shards: a.shards,
    })?;
    let mut t = Table::new(&["mean", "stderr", "samples", "seed"]);
    t.push(vec![
        format!("{:?}", est.mean),
        format!("{:?}", est.stderr),
        est.samples.to_string(),
        est.seed.to_string(),
    ]);
    Ok(t)
}

fn cmd_bounds(a: &BoundsArgs) -> CliResult<Table> {
    let exact = heatflow::exact_e(a.n, a.t)?;
    let (n, t) = (to_u32(a.n)?, to_u32(a.t)?);
    let lower = theorem_lower_bound(n, t);
    let upper = theorem_upper_bound(n, t);
    if !(lower <= exact && exact <= upper) {
        return Err(Failure::Math(format!(
            "bound violated at n = {n}, t = {t}: lower {lower}, exact {exact}, upper {upper}"
        )));
    }
    let mut table = Table::new(&["n", "t", "lower", "exact", "upper"]);
    table.push(vec![
        n.to_string(),
        t.to_string(),
        lower.to_string(),
        exact.to_string(),
        upper.to_string(),
    ]);
    Ok(table)
}

fn to_u32(v: usize) -> CliResult<u32> {
    u32::try_from(v).map_err(|_| Failure::Usage(format!("{v} is too large")))
}

fn join_n_set(ns: &[u64]) -> String {
    ns.iter().map(u64::to_string).collect::<Vec<_>>().join(";")
}

fn cmd_extract(a: &ExtractArgs) -> CliResult<Table> {
    let mut table = Table::new(&["kind", "r", "value", "source_t", "source_n_set"]);
    if matches!(a.kind, Kind::D | Kind::All) {
        let d = extract_d(a.t)?;
        let ns = join_n_set(&d.n_set);
        for (r, v) in &d.d {
            table.push(vec![
                "d".into(),
                r.to_string(),
                v.to_string(),
                d.t.to_string(),
                ns.clone(),
            ]);
        }
    }
    if matches!(a.kind, Kind::G | Kind::All) {
        let n_set = match &a.n_set {
            Some(ns) => ns.clone(),
            None => {
                let lo = (a.t as u64).max(1);
                vec![lo, lo + 1, lo + 2]
            }
        };
        let g = extract_g(a.t, &n_set)?;
        let ns = join_n_set(&g.n_set);
        for (r, v) in &g.g {
            table.push(vec![
                "g".into(),
                r.to_string(),
                v.to_string(),
                g.t.to_string(),
                ns.clone(),
            ]);
        }
    }
    Ok(table)
}

fn cmd_table(a: &TableArgs) -> CliResult<Table> {
    let mut table = Table::new(&["n", "t", "E"]);
    for n in a.n.lo..=a.n.hi {
        let (energy, _) = run_mode(a.mode, n, a.t.hi, &a.x, a.variant.into())?;
        for (t, e) in energy.into_iter().enumerate().skip(a.t.lo) {
            table.push(vec![n.to_string(), t.to_string(), e]);
        }
    }
    Ok(table)
}

fn enum_budget() -> CliResult<u64> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Usage(format!("{BUDGET_ENV}={v:?} is not a non-negative integer"))
        }),
        Err(_) => Ok(DEFAULT_ENUM_BUDGET),
    }
}

fn cmd_enumerate(a: &EnumerateArgs) -> CliResult<Table> {
    let total = enumerate_total_inversions(a.n, a.t, enum_budget()?)?;
    let words = num_words(a.n, a.t);
    let e = Rational::from_str(&format!("{total}/{words}"))?;
    let mut table = Table::new(&["n", "t", "total", "words", "E"]);
    table.push(vec![
        a.n.to_string(),
        a.t.to_string(),
        total.to_string(),
        words,
        e.to_string(),
    ]);
    Ok(table)
}

/// `n^t` as a decimal string; only called after enumeration succeeded, so
/// the value fits the budget.
fn num_words(n: u64, t: u32) -> String {
    n.pow(t).to_string()
}

fn execute(cli: &Cli) -> CliResult<()> {
    let mut out = output::open(cli.output.as_deref())?;
    let table = match &cli.command {
        Command::Exact(a) => {
            cmd_exact(a, cli.format, &mut out)?;
            None
        }
        Command::Simulate(a) => Some(cmd_simulate(a)?),
        Command::Bounds(a) => Some(cmd_bounds(a)?),
        Command::Extract(a) => Some(cmd_extract(a)?),
        Command::Table(a) => Some(cmd_table(a)?),
        Command::Enumerate(a) => Some(cmd_enumerate(a)?),
    };
    if let Some(table) = table {
        table.write(cli.format, &mut out)?;
    }
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("invwalk: {e}");
            ExitCode::from(e.code())
        }
    }
}
