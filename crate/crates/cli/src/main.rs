use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cube_influence::json::{fmt_real, Real};
use cube_influence::scan::{tribes_row, vee_row, TribesRow, VeeRow};
use cube_influence::suite::{self, CheckConfig, Plan, Row, Suite};
use cube_influence::verify::compute_constants;
use cube_influence::zoo::default_tribe_width;
use cube_influence::{influence_report, FunctionSpec, InfluenceReport};
use serde::Serialize;

/// Failed checks reported on stderr before the rest are only counted.
const MAX_REPORTED_FAILURES: usize = 20;

#[derive(Parser)]
#[command(
    name = "cubeinf",
    version,
    about = "Fourier spectra, influences and verification suites on the discrete cube"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write output here instead of stdout. For `verify` this receives the verdict stream.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Sample,
    Examples,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Tribes,
    Vee,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Identities,
    Inequalities,
    Theorems,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Walsh-Fourier coefficients of a function, one row per mask.
    Spectrum { spec: FunctionSpec },
    /// Influence report: I_i, I_ij, total influence, theta and degree weights.
    Influences {
        spec: FunctionSpec,
        /// Only report coordinate i and its row of pair influences.
        #[arg(long)]
        i: Option<usize>,
    },
    /// Run a verification suite and print a per-statement summary.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
        #[arg(long, value_enum, default_value = "examples")]
        mode: Mode,
        /// Dimensions: `4`, `2-4` or `5,8,10`.
        #[arg(long, value_parser = parse_dims)]
        n: Option<Dims>,
        /// Units to sample (each is one Boolean and one real table).
        #[arg(long, default_value_t = 100)]
        count: u64,
        #[arg(long)]
        seed: Option<u64>,
        /// Dichotomy constant (default: the computed theorem constant).
        #[arg(long)]
        c: Option<f64>,
    },
    /// Scaling scan over the tribes or V family, one CSV row per configuration.
    Scan {
        #[arg(value_enum)]
        family: Family,
        #[arg(long, value_parser = parse_dims)]
        n: Option<Dims>,
        /// Tribe widths, one per `--n` entry (default: the width heuristic).
        #[arg(long, value_parser = parse_dims)]
        w: Option<Dims>,
    },
    /// Numerical constants of the pair-influence dichotomy, as JSON.
    Constants,
}

/// A list of dimensions or widths: `4`, `2-4` or `5,8,10`.
#[derive(Clone, Debug)]
struct Dims(Vec<usize>);

fn parse_dims(s: &str) -> Result<Dims, String> {
    let num = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    if let Some((a, b)) = s.split_once('-') {
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(format!("empty range `{s}`"));
        }
        return Ok(Dims((a..=b).collect()));
    }
    s.split(',').map(num).collect::<Result<_, _>>().map(Dims)
}

enum Failure {
    /// Usage, parse or IO problem (exit 2).
    Error(String),
    /// At least one check failed (exit 1).
    Checks,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Error(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be at least 1");
            return ExitCode::from(2);
        }
        builder = builder.num_threads(w);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match pool.install(|| run(&cli, &pool)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn output(cli: &Cli) -> io::Result<Box<dyn Write>> {
    Ok(match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: &Cli, pool: &rayon::ThreadPool) -> Outcome {
    match &cli.command {
        Command::Spectrum { spec } => spectrum(cli, spec),
        Command::Influences { spec, i } => influences(cli, spec, *i),
        Command::Verify {
            suite,
            mode,
            n,
            count,
            seed,
            c,
        } => verify(cli, pool, *suite, *mode, n.clone().map(|d| d.0), *count, *seed, *c),
        Command::Scan { family, n, w } => scan(cli, *family, n.clone().map(|d| d.0), w.clone().map(|d| d.0)),
        Command::Constants => {
            let mut out = output(cli)?;
            serde_json::to_writer_pretty(&mut out, &compute_constants()?)?;
            writeln!(out)?;
            Ok(out.flush()?)
        }
    }
}

fn spectrum(cli: &Cli, spec: &FunctionSpec) -> Outcome {
    let s = spec.generate()?.analyze();
    let n = s.n();
    let mut out = output(cli)?;
    match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(["mask", "bits", "coefficient"])?;
            for (mask, &c) in s.coeffs().iter().enumerate() {
                w.write_record([mask.to_string(), format!("0b{mask:0n$b}"), fmt_real(c)])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let spectrum: Vec<_> = s.coeffs().iter().enumerate().map(|(m, &c)| (m, Real(c))).collect();
            serde_json::to_writer(
                &mut out,
                &SpectrumReport {
                    function: spec.to_string(),
                    n,
                    spectrum,
                },
            )?;
            writeln!(out)?;
        }
    }
    Ok(out.flush()?)
}

#[derive(Serialize)]
struct SpectrumReport {
    function: String,
    n: usize,
    /// `(mask, coefficient)` sorted by mask.
    spectrum: Vec<(usize, Real)>,
}

#[derive(Serialize)]
struct FullReport<'a> {
    function: String,
    report: &'a InfluenceReport,
}

#[derive(Serialize)]
struct CoordinateReport {
    function: String,
    i: usize,
    #[serde(rename = "I")]
    influence: Real,
    /// `(j, I_ij)` for `j != i`.
    row: Vec<(usize, Real)>,
    row_sum: Real,
}

fn influences(cli: &Cli, spec: &FunctionSpec, i: Option<usize>) -> Outcome {
    if cli.format == Some(Format::Csv) {
        return Err(Failure::Error("influence reports are JSON only".into()));
    }
    let table = spec.generate()?;
    let report = influence_report(&table)?;
    let function = spec.to_string();
    let mut out = output(cli)?;
    match i {
        None => serde_json::to_writer(
            &mut out,
            &FullReport {
                function,
                report: &report,
            },
        )?,
        Some(i) => {
            table.check_coordinate(i)?;
            let row = (1..=report.n)
                .filter(|&j| j != i)
                .map(|j| (j, Real(report.pair_influence(i, j))))
                .collect();
            let value = CoordinateReport {
                function,
                i,
                influence: Real(report.influence(i)),
                row,
                row_sum: Real(report.row_sum(i)),
            };
            serde_json::to_writer(&mut out, &value)?;
        }
    }
    writeln!(out)?;
    Ok(out.flush()?)
}

const ROW_HEADER: [&str; 10] = [
    "function",
    "params",
    "statement_id",
    "applicable",
    "pass",
    "lhs",
    "rhs",
    "slack",
    "witness",
    "reason",
];

fn csv_row(row: &Row) -> Result<[String; 10], serde_json::Error> {
    let v = &row.verdict;
    let witness = match &v.witness {
        Some(w) => serde_json::to_string(w)?,
        None => String::new(),
    };
    Ok([
        row.function.clone(),
        row.params.clone(),
        v.statement_id.to_string(),
        v.applicable.to_string(),
        v.pass.map(|p| p.to_string()).unwrap_or_default(),
        fmt_real(v.lhs),
        fmt_real(v.rhs),
        fmt_real(v.slack),
        witness,
        v.reason.clone().unwrap_or_default(),
    ])
}

#[allow(clippy::too_many_arguments)]
fn verify(
    cli: &Cli,
    pool: &rayon::ThreadPool,
    suite_arg: SuiteArg,
    mode: Mode,
    n: Option<Vec<usize>>,
    count: u64,
    seed: Option<u64>,
    c: Option<f64>,
) -> Outcome {
    let plan = match mode {
        Mode::Exhaustive => Plan::Exhaustive {
            dims: n.unwrap_or_else(|| vec![2, 3, 4]),
        },
        Mode::Sample => Plan::Sample {
            dims: n.unwrap_or_else(|| (2..=10).collect()),
            count,
            seed: seed.ok_or_else(|| Failure::Error("sample mode needs --seed".into()))?,
        },
        Mode::Examples => {
            if n.is_some() {
                return Err(Failure::Error("examples mode takes no --n".into()));
            }
            Plan::Examples
        }
    };
    plan.validate()?;
    let c = match c {
        Some(c) if c > 0.0 && c.is_finite() => c,
        Some(c) => return Err(Failure::Error(format!("--c must be positive and finite, got {c}"))),
        None => compute_constants()?.c_main,
    };
    let suite = match suite_arg {
        SuiteArg::Identities => Suite::Identities,
        SuiteArg::Inequalities => Suite::Inequalities,
        SuiteArg::Theorems => Suite::Theorems,
        SuiteArg::All => Suite::All,
    };
    let config = CheckConfig { suite, c };

    let format = cli.format.unwrap_or(Format::Json);
    let mut stream: Option<Box<dyn Write>> = match &cli.out {
        Some(path) => Some(Box::new(BufWriter::new(File::create(path)?))),
        None => None,
    };
    let mut csv_stream = match (format, stream.take()) {
        (Format::Csv, Some(w)) => {
            let mut w = csv::Writer::from_writer(w);
            w.write_record(ROW_HEADER).map_err(io::Error::from)?;
            Some(w)
        }
        (_, w) => {
            stream = w;
            None
        }
    };
    let mut reported = 0;
    let summary = suite::run(&plan, &config, pool, |row| {
        if row.verdict.failed() && reported < MAX_REPORTED_FAILURES {
            reported += 1;
            eprintln!("FAIL {}", serde_json::to_string(row)?);
        }
        if let Some(w) = csv_stream.as_mut() {
            w.write_record(csv_row(row)?)?;
        } else if let Some(w) = stream.as_mut() {
            serde_json::to_writer(&mut *w, row)?;
            w.write_all(b"\n")?;
        }
        Ok::<_, Failure>(())
    })?;
    if let Some(mut w) = csv_stream {
        w.flush()?;
    }
    if let Some(mut w) = stream {
        w.flush()?;
    }
    println!("{summary}");
    if summary.failures() > 0 {
        return Err(Failure::Checks);
    }
    Ok(())
}

fn scan(cli: &Cli, family: Family, n: Option<Vec<usize>>, w: Option<Vec<usize>>) -> Outcome {
    if cli.format == Some(Format::Json) {
        return Err(Failure::Error("scans are CSV only".into()));
    }
    let mut out = output(cli)?;
    let mut records: Vec<Vec<String>> = Vec::new();
    let header: Vec<&str> = match family {
        Family::Vee => {
            if w.is_some() {
                return Err(Failure::Error("--w applies to tribes only".into()));
            }
            for n in n.unwrap_or_else(|| (3..=12).collect()) {
                let row: VeeRow = vee_row(n)?;
                records.push(
                    std::iter::once(n.to_string())
                        .chain(row.columns().map(fmt_real))
                        .collect(),
                );
            }
            VeeRow::HEADER.to_vec()
        }
        Family::Tribes => {
            let (dims, widths) = match (n, w) {
                (None, None) => (vec![8, 12, 16, 20], vec![2, 3, 4, 4]),
                (Some(dims), Some(widths)) if dims.len() == widths.len() => (dims, widths),
                (Some(_), Some(_)) => return Err(Failure::Error("--n and --w need the same length".into())),
                (Some(dims), None) => {
                    let widths = dims.iter().map(|&n| default_tribe_width(n)).collect::<Result<_, _>>()?;
                    (dims, widths)
                }
                (None, Some(_)) => return Err(Failure::Error("--w needs --n".into())),
            };
            for (n, w) in dims.into_iter().zip(widths) {
                let row: TribesRow = tribes_row(n, w)?;
                records.push(
                    [n.to_string(), w.to_string()]
                        .into_iter()
                        .chain(row.columns().map(fmt_real))
                        .collect(),
                );
            }
            TribesRow::HEADER.to_vec()
        }
    };
    let mut csv = csv::Writer::from_writer(&mut out);
    csv.write_record(&header)?;
    for r in &records {
        csv.write_record(r)?;
    }
    csv.flush()?;
    drop(csv);
    Ok(out.flush()?)
}
