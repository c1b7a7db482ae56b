//! `cuspfill` command-line front end.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 theorem inapplicable,
//! 3 verification failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use crate::cusp::{parse_complex, CuspShape, Slope};
use crate::error::Error;
use crate::filling::{
    self, evaluate, min_admissible_twist, PipelineReport, Rounding, Status, TheoremInput,
};
use crate::verify::{self, TrialReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INAPPLICABLE: i32 = 2;
pub const EXIT_VERIFY_FAILED: i32 = 3;

pub const PRECISION_ENV: &str = "CUSPFILL_PRECISION_DIGITS";
pub const DEFAULT_PRECISION: usize = 12;

#[derive(Debug, Parser)]
#[command(
    name = "cuspfill",
    version,
    about = "Cusp geometry and Dehn filling length bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Length interval for the core curve after the n-th twist filling.
    Bounds(BoundsArgs),
    /// Flat lengths, area and normalized length for a cusp shape.
    Cusp(CuspArgs),
    /// Run a seeded verification suite.
    Verify(VerifyArgs),
    /// Tabulate bounds over genus and twist-power ranges.
    Table(TableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct ShapeArgs {
    /// Translation of α, as `<real>[+|-]<real>i`.
    #[arg(long, allow_hyphen_values = true, value_parser = complex_arg)]
    pub tau_alpha: Option<Complex64>,
    /// Translation of β, as `<real>[+|-]<real>i`.
    #[arg(long, allow_hyphen_values = true, value_parser = complex_arg)]
    pub tau_beta: Option<Complex64>,
    /// Height T of the cusp horosphere.
    #[arg(long)]
    pub height: Option<f64>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub genus: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub n: i64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Widen reported endpoints outward by 8 ulps.
    #[arg(long)]
    pub outward: bool,
}

#[derive(Debug, Args)]
pub struct CuspArgs {
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Slope as `p,q`.
    #[arg(long, allow_hyphen_values = true)]
    pub slope: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemma,
    Fact1,
    Fact2,
    TorusArea,
    CuspArea,
    All,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    /// Trial count; for torus-area, the grid size (clamped to 100..=1000).
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Record wall-clock time in the report.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Inclusive genus range `a..b`.
    #[arg(long, allow_hyphen_values = true)]
    pub genus: String,
    /// Inclusive twist-power range `c..d`.
    #[arg(long, allow_hyphen_values = true)]
    pub n: String,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

fn complex_arg(s: &str) -> Result<Complex64, String> {
    parse_complex(s).map_err(|e| e.to_string())
}

/// A failure that ends the command with a message and exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

struct Printer {
    digits: usize,
}

impl Printer {
    fn from_env() -> Result<Self, Failure> {
        match std::env::var(PRECISION_ENV) {
            Err(_) => Ok(Self {
                digits: DEFAULT_PRECISION,
            }),
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(d @ 1..=17) => Ok(Self { digits: d }),
                _ => Err(Failure::usage(format!(
                    "{PRECISION_ENV} must be an integer in 1..=17, got {v:?}"
                ))),
            },
        }
    }

    fn num(&self, x: f64) -> String {
        format_significant(x, self.digits)
    }

    fn opt(&self, x: Option<f64>) -> String {
        x.map(|v| self.num(v)).unwrap_or_default()
    }
}

/// `%g`-style formatting with `digits` significant digits.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 {
            "0".to_string()
        } else {
            x.to_string()
        };
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -5 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn format_complex(z: Complex64) -> String {
    format!(
        "{}{}{}i",
        z.re,
        if z.im.is_sign_negative() { "-" } else { "+" },
        z.im.abs()
    )
}

/// Parses args, runs the command, and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{rendered}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{rendered}");
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = Printer::from_env().and_then(|printer| match cli.command {
        Command::Bounds(a) => cmd_bounds(&a, &printer, stdout),
        Command::Cusp(a) => cmd_cusp(&a, &printer, stdout),
        Command::Verify(a) => cmd_verify(&a, &printer, stdout),
        Command::Table(a) => cmd_table(&a, &printer, stdout),
    });
    match outcome {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn reject_csv(format: OutputFormat) -> Result<(), Failure> {
    if format == OutputFormat::Csv {
        return Err(Failure::usage(
            "csv output is only available for the table command",
        ));
    }
    Ok(())
}

fn shape_from(args: &ShapeArgs) -> Result<Option<CuspShape>, Failure> {
    match (args.tau_alpha, args.tau_beta, args.height) {
        (None, None, None) => Ok(None),
        (Some(a), Some(b), Some(t)) => Ok(Some(CuspShape::new(a, b, t)?)),
        _ => Err(Failure::usage(
            "a cusp shape needs --tau-alpha, --tau-beta and --height together",
        )),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports contain only finite numbers")
}

fn render_pipeline(r: &PipelineReport, p: &Printer) -> String {
    let mode = match r.mode {
        filling::Mode::WorstCase => "worst-case",
        filling::Mode::Shape => "shape",
    };
    let opt = |x: Option<f64>| x.map(|v| p.num(v)).unwrap_or_else(|| "none".into());
    let mut s = String::new();
    let _ = writeln!(s, "genus: {}", r.genus);
    let _ = writeln!(s, "n: {}", r.n);
    let _ = writeln!(s, "epsilon: {}", p.num(r.epsilon));
    let _ = writeln!(s, "r_eps: {}", p.num(r.r_eps));
    let _ = writeln!(s, "mode: {mode}");
    let _ = writeln!(s, "L_squared_lo: {}", p.num(r.l_squared_lo));
    let _ = writeln!(s, "L_squared_hi: {}", p.num(r.l_squared_hi));
    let _ = writeln!(s, "length_lo: {}", opt(r.length_lo));
    let _ = writeln!(s, "length_hi: {}", opt(r.length_hi));
    let _ = writeln!(s, "admissible: {}", r.admissible);
    let _ = writeln!(s, "min_n: {}", r.min_n);
    s
}

fn cmd_bounds(args: &BoundsArgs, p: &Printer, out: &mut dyn Write) -> Result<i32, Failure> {
    reject_csv(args.format)?;
    let shape = shape_from(&args.shape)?;
    let input = TheoremInput::new(args.genus, args.n)?;
    let rounding = if args.outward {
        Rounding::Outward
    } else {
        Rounding::Nearest
    };
    let report = evaluate(input, shape.as_ref(), rounding)?;
    match args.format {
        OutputFormat::Json => writeln!(out, "{}", to_json(&report))?,
        _ => write!(out, "{}", render_pipeline(&report, p))?,
    }
    let reason = match report.status {
        Status::Admissible => return Ok(EXIT_OK),
        Status::TwistPowerTooSmall => Error::TwistPowerTooSmall {
            n: report.n,
            min_n: report.min_n,
        },
        Status::LengthBelowGate { l } => Error::NormalizedLengthTooShort(l),
        Status::ThinCusp { inj } => Error::InvalidShape {
            inj,
            r_eps: report.r_eps,
        },
    };
    Err(Failure {
        code: EXIT_INAPPLICABLE,
        message: format!("theorem inapplicable: {reason}"),
    })
}

#[derive(Debug, Serialize)]
struct CuspReport {
    tau_alpha: String,
    tau_beta: String,
    height: f64,
    slope: String,
    flat_length: f64,
    area: f64,
    injectivity_radius: f64,
    normalized_length: f64,
}

fn cmd_cusp(args: &CuspArgs, p: &Printer, out: &mut dyn Write) -> Result<i32, Failure> {
    reject_csv(args.format)?;
    let shape = shape_from(&args.shape)?
        .ok_or_else(|| Failure::usage("cusp needs --tau-alpha, --tau-beta and --height"))?;
    let slope: Slope = args.slope.parse()?;
    let report = CuspReport {
        tau_alpha: format_complex(shape.tau_alpha()),
        tau_beta: format_complex(shape.tau_beta()),
        height: shape.height(),
        slope: slope.to_string(),
        flat_length: shape.flat_length(slope),
        area: shape.torus_area(),
        injectivity_radius: shape.injectivity_radius(),
        normalized_length: shape.normalized_length(slope),
    };
    match args.format {
        OutputFormat::Json => writeln!(out, "{}", to_json(&report))?,
        _ => {
            writeln!(out, "tau_alpha: {}", report.tau_alpha)?;
            writeln!(out, "tau_beta: {}", report.tau_beta)?;
            writeln!(out, "height: {}", p.num(report.height))?;
            writeln!(out, "slope: {}", report.slope)?;
            writeln!(out, "flat_length: {}", p.num(report.flat_length))?;
            writeln!(out, "area: {}", p.num(report.area))?;
            writeln!(
                out,
                "injectivity_radius: {}",
                p.num(report.injectivity_radius)
            )?;
            writeln!(
                out,
                "normalized_length: {}",
                p.num(report.normalized_length)
            )?;
        }
    }
    Ok(EXIT_OK)
}

const SUITE_ORDER: [(Suite, &str); 5] = [
    (Suite::Lemma, "lemma"),
    (Suite::Fact1, "fact1"),
    (Suite::Fact2, "fact2"),
    (Suite::TorusArea, "torus-area"),
    (Suite::CuspArea, "cusp-area"),
];

struct SuiteResult {
    name: &'static str,
    report: TrialReport,
    detail: Vec<String>,
}

fn run_suite(
    suite: Suite,
    name: &'static str,
    args: &VerifyArgs,
    p: &Printer,
) -> Result<SuiteResult, Failure> {
    let (trials, seed) = (args.trials, args.seed);
    let time = |f: &dyn Fn() -> TrialReport| if args.timing { verify::timed(f) } else { f() };
    let mut detail = Vec::new();
    let report = match suite {
        Suite::Lemma => time(&|| verify::lemma_campaign(trials, seed)),
        Suite::Fact1 => time(&|| verify::shadow_sweep(trials, seed)),
        Suite::Fact2 => time(&|| verify::crossing_sweep(trials, seed)),
        Suite::CuspArea => time(&|| verify::cusp_area_suite(trials, seed)),
        Suite::TorusArea => {
            let grid = trials.clamp(100, 1000) as usize;
            let start = std::time::Instant::now();
            let (report, scans) = verify::torus_area_suite(grid)?;
            for (r, scan) in scans {
                detail.push(format!(
                    "  r={} grid={} min_area={} floor={} ratio={}",
                    p.num(r),
                    grid,
                    p.num(scan.min_area),
                    p.num(scan.floor),
                    p.num(scan.min_area / scan.floor)
                ));
            }
            let wall_ms = args.timing.then(|| start.elapsed().as_millis() as u64);
            TrialReport {
                seed,
                wall_ms,
                ..report
            }
        }
        Suite::All => unreachable!("expanded by the caller"),
    };
    Ok(SuiteResult {
        name,
        report,
        detail,
    })
}

#[derive(Debug, Serialize)]
struct AllReport {
    lemma: Option<TrialReport>,
    fact1: Option<TrialReport>,
    fact2: Option<TrialReport>,
    #[serde(rename = "torus-area")]
    torus_area: Option<TrialReport>,
    #[serde(rename = "cusp-area")]
    cusp_area: Option<TrialReport>,
}

fn cmd_verify(args: &VerifyArgs, p: &Printer, out: &mut dyn Write) -> Result<i32, Failure> {
    reject_csv(args.format)?;
    if args.trials < 1 {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    let selected: Vec<_> = SUITE_ORDER
        .iter()
        .filter(|(s, _)| args.suite == Suite::All || *s == args.suite)
        .map(|&(s, name)| run_suite(s, name, args, p))
        .collect::<Result<_, _>>()?;

    match args.format {
        OutputFormat::Json => {
            if args.suite == Suite::All {
                let by_name =
                    |name: &str| selected.iter().find(|r| r.name == name).map(|r| r.report);
                let all = AllReport {
                    lemma: by_name("lemma"),
                    fact1: by_name("fact1"),
                    fact2: by_name("fact2"),
                    torus_area: by_name("torus-area"),
                    cusp_area: by_name("cusp-area"),
                };
                writeln!(out, "{}", to_json(&all))?;
            } else {
                writeln!(out, "{}", to_json(&selected[0].report))?;
            }
        }
        _ => {
            for r in &selected {
                let rep = &r.report;
                let wall = rep
                    .wall_ms
                    .map(|ms| format!(" wall_ms={ms}"))
                    .unwrap_or_default();
                writeln!(
                    out,
                    "{}: {} trials={} failures={} worst_margin={} seed={}{}",
                    r.name,
                    if rep.passed() { "PASS" } else { "FAIL" },
                    rep.trials,
                    rep.failures,
                    p.num(rep.worst_margin),
                    rep.seed,
                    wall
                )?;
                for line in &r.detail {
                    writeln!(out, "{line}")?;
                }
            }
        }
    }
    let reports: Vec<_> = selected.iter().map(|r| r.report).collect();
    match verify_exit_code(&reports) {
        EXIT_OK => Ok(EXIT_OK),
        code => Err(Failure {
            code,
            message: "verification failures recorded".into(),
        }),
    }
}

/// 0 when every report passed, 3 otherwise.
pub fn verify_exit_code(reports: &[TrialReport]) -> i32 {
    if reports.iter().all(TrialReport::passed) {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    }
}

/// Parses an inclusive range `a..b` with `a <= b`.
pub fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let bad = || format!("range {s:?} is not of the form a..b with a <= b");
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: i64 = a.parse().map_err(|_| bad())?;
    let b: i64 = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

#[derive(Debug, Serialize)]
struct TableRow {
    genus: i64,
    n: i64,
    admissible: bool,
    min_n: i64,
    length_lo: Option<f64>,
    length_hi: Option<f64>,
    intro_lo: Option<f64>,
    intro_hi: Option<f64>,
}

fn table_rows(genus: (i64, i64), n: (i64, i64)) -> Result<Vec<TableRow>, Failure> {
    let mut rows = Vec::new();
    for g in genus.0..=genus.1 {
        let min_n = min_admissible_twist(g)?;
        for n in n.0..=n.1 {
            let input = TheoremInput::new(g, n)?;
            let bounds = filling::theorem_bounds(input).ok();
            let intro = filling::intro_bounds(input).ok();
            rows.push(TableRow {
                genus: g,
                n,
                admissible: bounds.is_some(),
                min_n,
                length_lo: bounds.map(|b| b.lo),
                length_hi: bounds.map(|b| b.hi),
                intro_lo: intro.map(|b| b.lo),
                intro_hi: intro.map(|b| b.hi),
            });
        }
    }
    Ok(rows)
}

fn cmd_table(args: &TableArgs, p: &Printer, out: &mut dyn Write) -> Result<i32, Failure> {
    if args.format == OutputFormat::Text {
        return Err(Failure::usage("table supports csv and json output"));
    }
    let genus = parse_range(&args.genus).map_err(Failure::usage)?;
    let n = parse_range(&args.n).map_err(Failure::usage)?;
    if genus.0 < 2 {
        return Err(Failure::usage(format!(
            "genus range must start at 2 or above, got {}",
            genus.0
        )));
    }
    let rows = table_rows(genus, n)?;

    let body = if args.format == OutputFormat::Json {
        format!("{}\n", to_json(&rows))
    } else {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let header = [
            "genus",
            "n",
            "admissible",
            "min_n",
            "length_lo",
            "length_hi",
            "intro_lo",
            "intro_hi",
        ];
        w.write_record(header)
            .map_err(|e| Failure::usage(e.to_string()))?;
        for r in &rows {
            let record = [
                r.genus.to_string(),
                r.n.to_string(),
                r.admissible.to_string(),
                r.min_n.to_string(),
                p.opt(r.length_lo),
                p.opt(r.length_hi),
                p.opt(r.intro_lo),
                p.opt(r.intro_hi),
            ];
            w.write_record(&record)
                .map_err(|e| Failure::usage(e.to_string()))?;
        }
        String::from_utf8(w.into_inner().map_err(|e| Failure::usage(e.to_string()))?)
            .expect("ascii csv")
    };

    match &args.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?,
        None => out.write_all(body.as_bytes())?,
    }
    Ok(EXIT_OK)
}
