//! `burstec` — construct, verify, extend, and exercise linear codes
//! that correct one wrap-around erasure burst.
//!
//! Exit codes: 0 on success, 1 on domain errors (bad dimensions, a
//! matrix failing a check, uncorrectable bursts, ...), 2 on malformed
//! input (unreadable or misshapen files, bad CSV, bad channel specs,
//! and command-line usage errors via clap).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use burstec_core::{
    check_goodness, check_prefix_goodness, decode, dual_generator, encode, extend_fixed_dimension,
    extend_fixed_redundancy, extension_columns, generator_explicit, generator_recursive,
    run_simulation, unique_binary_extension, ChannelKind, ChannelModel, Code, ConstructError,
    FieldElement, GoodnessReport, IoError, Matrix, PrefixReport, PrimeField, Provenance,
    ReceivedWord, SimReport, Symbol,
};

/// Columns enumerated by `extend --mode column --all` are capped so a
/// large field cannot ask for billions of lines; `enumerate-extensions`
/// takes an explicit limit instead.
const DEFAULT_ENUMERATION_LIMIT: u64 = 65_536;

#[derive(Parser)]
#[command(name = "burstec", version, about = "Optimal burst-erasure codes over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Recursive,
    Explicit,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExtendMode {
    Dimension,
    Redundancy,
    Column,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a good [n, k] generator over Z_p and print or save it.
    Construct {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Method::Recursive)]
        method: Method,
        /// Write the matrix here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that every cyclic window of k columns has full rank.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Check goodness of every prefix (I_k | first j columns of P).
        #[arg(long)]
        prefix: bool,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        report: ReportFormat,
    },
    /// Grow a good generator: more data columns, more parity columns,
    /// or a single appended column that keeps it good.
    Extend {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = ExtendMode::Dimension)]
        mode: ExtendMode,
        /// Column mode: print every extending column, not just the
        /// unique binary one.
        #[arg(long)]
        all: bool,
    },
    /// Print the dual code's generator (itself good).
    Dual {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Multiply a message row vector by the generator.
    Encode {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated symbols, e.g. "1,0,1".
        #[arg(long)]
        message: String,
    },
    /// Recover the codeword from a word with one burst of "?" erasures.
    Decode {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated symbols with "?" for erasures, e.g. "1,0,?".
        #[arg(long)]
        received: String,
    },
    /// Run seeded encode/erase/decode trials and tally the outcomes.
    Simulate {
        #[arg(long = "in")]
        input: PathBuf,
        /// fixed-burst:START:LEN | uniform-start:LEN | random-length:MAX
        #[arg(long)]
        channel: String,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Print the report as one line of JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// List every column that extends the generator to a good [n+1, k]
    /// one, refusing to start if there would be more than the limit.
    EnumerateExtensions {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        limit: u64,
    },
}

enum CliError {
    /// Exit 1: structurally valid input that the mathematics rejects.
    Domain(String),
    /// Exit 2: input that could not even be read or parsed.
    Malformed(String),
}

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(e.to_string())
}

fn malformed(e: impl std::fmt::Display) -> CliError {
    CliError::Malformed(e.to_string())
}

impl From<IoError> for CliError {
    fn from(e: IoError) -> CliError {
        match e {
            IoError::Parse { .. } => malformed(e),
            IoError::Io(inner) => malformed(format!("cannot read input: {inner}")),
        }
    }
}

// JSON output mirrors the library reports field-for-field but leads
// with a schema version; serde keeps the declaration order, so the
// bytes are stable across runs.

#[derive(Serialize)]
struct WindowJson {
    start: usize,
    columns: Vec<usize>,
    rank: usize,
    ok: bool,
}

#[derive(Serialize)]
struct GoodnessJson {
    schema: u32,
    good: bool,
    k: usize,
    n: usize,
    windows: Vec<WindowJson>,
}

impl From<&GoodnessReport> for GoodnessJson {
    fn from(r: &GoodnessReport) -> GoodnessJson {
        GoodnessJson {
            schema: 1,
            good: r.good,
            k: r.k,
            n: r.n,
            windows: r
                .windows
                .iter()
                .map(|w| WindowJson {
                    start: w.start,
                    columns: w.columns.clone(),
                    rank: w.rank,
                    ok: w.ok,
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct PrefixFailureJson {
    prefix: usize,
    start: usize,
    rank: usize,
}

#[derive(Serialize)]
struct PrefixJson {
    schema: u32,
    prefix_good: bool,
    k: usize,
    n: usize,
    failures: Vec<PrefixFailureJson>,
}

impl From<&PrefixReport> for PrefixJson {
    fn from(r: &PrefixReport) -> PrefixJson {
        PrefixJson {
            schema: 1,
            prefix_good: r.prefix_good,
            k: r.k,
            n: r.n,
            failures: r
                .failures
                .iter()
                .map(|f| PrefixFailureJson {
                    prefix: f.prefix,
                    start: f.start,
                    rank: f.rank,
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct SimJson {
    schema: u32,
    trials: u64,
    successes: u64,
    failures: u64,
    start_histogram: Vec<u64>,
}

impl From<&SimReport> for SimJson {
    fn from(r: &SimReport) -> SimJson {
        SimJson {
            schema: 1,
            trials: r.trials,
            successes: r.successes,
            failures: r.failures,
            start_histogram: r.start_histogram.clone(),
        }
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize infallibly")
}

fn parse_field(p: u32) -> Result<PrimeField, CliError> {
    PrimeField::new(p).map_err(domain)
}

fn load_matrix(path: &Path) -> Result<Matrix, CliError> {
    Ok(burstec_core::read_matrix(path)?)
}

fn load_code(path: &Path) -> Result<Code, CliError> {
    Code::new(load_matrix(path)?, Provenance::Manual).map_err(domain)
}

fn emit_matrix(m: &Matrix, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(path) => burstec_core::write_matrix(path, m)
            .map_err(|e| malformed(format!("cannot write output: {e}"))),
        None => {
            print!("{}", burstec_core::format_matrix(m));
            Ok(())
        }
    }
}

/// Parses "1,0,2" into field elements; surrounding spaces are allowed.
fn parse_csv(field: PrimeField, text: &str) -> Result<Vec<FieldElement>, CliError> {
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            let v: u32 = tok
                .parse()
                .map_err(|_| malformed(format!("malformed symbol {tok:?}")))?;
            if v >= field.modulus() {
                return Err(malformed(format!(
                    "symbol {v} out of range for Z_{}",
                    field.modulus()
                )));
            }
            Ok(field.element(u64::from(v)))
        })
        .collect()
}

/// Parses "1,0,?" into known symbols and erasures.
fn parse_received(field: PrimeField, text: &str) -> Result<Vec<Symbol>, CliError> {
    text.split(',')
        .map(|tok| {
            if tok.trim() == "?" {
                return Ok(Symbol::Erased);
            }
            Ok(Symbol::Known(parse_csv(field, tok)?[0]))
        })
        .collect()
}

fn format_csv(word: &[FieldElement]) -> String {
    word.iter()
        .map(|e| e.value().to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Parses "fixed-burst:4:3", "uniform-start:4", or "random-length:2".
fn parse_channel(spec: &str) -> Result<ChannelKind, CliError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str, what: &str| -> Result<usize, CliError> {
        s.parse()
            .map_err(|_| malformed(format!("malformed {what} {s:?} in channel spec {spec:?}")))
    };
    match parts.as_slice() {
        ["fixed-burst", start, length] => Ok(ChannelKind::FixedBurst {
            start: num(start, "start")?,
            length: num(length, "length")?,
        }),
        ["uniform-start", length] => Ok(ChannelKind::UniformStart {
            length: num(length, "length")?,
        }),
        ["random-length", max] => Ok(ChannelKind::RandomLength {
            max: num(max, "maximum")?,
        }),
        _ => Err(malformed(format!(
            "channel spec {spec:?} is not fixed-burst:START:LEN, uniform-start:LEN, \
             or random-length:MAX"
        ))),
    }
}

fn print_goodness_text(report: &GoodnessReport, p: u32) {
    println!("matrix: {} x {} over Z_{}", report.k, report.n, p);
    println!("windows checked: {}", report.windows.len());
    println!("good: {}", if report.good { "yes" } else { "no" });
    for w in report.windows.iter().filter(|w| !w.ok) {
        let cols: Vec<String> = w.columns.iter().map(usize::to_string).collect();
        println!(
            "window {}: columns {} have rank {} (need {})",
            w.start,
            cols.join(","),
            w.rank,
            report.k
        );
    }
}

fn print_prefix_text(report: &PrefixReport, p: u32) {
    println!("matrix: {} x {} over Z_{}", report.k, report.n, p);
    println!(
        "prefixes checked: {}..={}",
        report.k.min(report.n),
        report.n
    );
    println!(
        "prefix-good: {}",
        if report.prefix_good { "yes" } else { "no" }
    );
    for f in &report.failures {
        println!(
            "prefix {}: window {} has rank {} (need {})",
            f.prefix, f.start, f.rank, report.k
        );
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Construct { p, k, n, method, out } => {
            let field = parse_field(p)?;
            let code = match method {
                Method::Recursive => generator_recursive(k, n, field),
                Method::Explicit => generator_explicit(k, n, field),
            }
            .map_err(domain)?;
            emit_matrix(code.generator(), out.as_deref())
        }
        Command::Verify { input, prefix, report } => {
            let m = load_matrix(&input)?;
            let p = m.field().modulus();
            if prefix {
                let r = check_prefix_goodness(&m).map_err(domain)?;
                match report {
                    ReportFormat::Text => print_prefix_text(&r, p),
                    ReportFormat::Json => println!("{}", json_line(&PrefixJson::from(&r))),
                }
                if !r.prefix_good {
                    return Err(CliError::Domain(format!(
                        "matrix fails the prefix check at {} prefix(es)",
                        r.failures.len()
                    )));
                }
            } else {
                let r = check_goodness(&m).map_err(domain)?;
                match report {
                    ReportFormat::Text => print_goodness_text(&r, p),
                    ReportFormat::Json => println!("{}", json_line(&GoodnessJson::from(&r))),
                }
                if !r.good {
                    let bad = r.windows.iter().filter(|w| !w.ok).count();
                    return Err(CliError::Domain(format!(
                        "matrix is not good: {bad} of {} windows lack full rank",
                        r.windows.len()
                    )));
                }
            }
            Ok(())
        }
        Command::Extend { input, mode, all } => {
            let m = load_matrix(&input)?;
            match mode {
                ExtendMode::Dimension | ExtendMode::Redundancy => {
                    if all {
                        return Err(CliError::Malformed(
                            "--all applies only to --mode column".into(),
                        ));
                    }
                    let extended = match mode {
                        ExtendMode::Dimension => extend_fixed_dimension(&m),
                        _ => extend_fixed_redundancy(&m),
                    }
                    .map_err(domain)?;
                    emit_matrix(&extended, None)
                }
                ExtendMode::Column => {
                    let columns = if all {
                        extension_columns(&m, DEFAULT_ENUMERATION_LIMIT).map_err(domain)?
                    } else {
                        vec![unique_binary_extension(&m).map_err(|e| match e {
                            ConstructError::NotBinary => CliError::Domain(
                                "a single canonical extending column exists only over Z_2; \
                                 pass --all to enumerate every extending column"
                                    .into(),
                            ),
                            other => domain(other),
                        })?]
                    };
                    for col in columns {
                        println!("{}", format_csv(&col));
                    }
                    Ok(())
                }
            }
        }
        Command::Dual { input, out } => {
            let m = load_matrix(&input)?;
            let h = dual_generator(&m).map_err(domain)?;
            emit_matrix(&h, out.as_deref())
        }
        Command::Encode { input, message } => {
            let code = load_code(&input)?;
            let msg = parse_csv(code.field(), &message)?;
            let codeword = encode(&code, &msg).map_err(domain)?;
            println!("{}", format_csv(&codeword));
            Ok(())
        }
        Command::Decode { input, received } => {
            let code = load_code(&input)?;
            let symbols = parse_received(code.field(), &received)?;
            let word = ReceivedWord::new(code.field(), &symbols).map_err(domain)?;
            let (codeword, _message) = decode(&code, &word).map_err(domain)?;
            println!("{}", format_csv(&codeword));
            Ok(())
        }
        Command::Simulate { input, channel, trials, seed, json } => {
            let code = load_code(&input)?;
            let kind = parse_channel(&channel)?;
            let report =
                run_simulation(&code, &ChannelModel { kind, seed }, trials).map_err(domain)?;
            if json {
                println!("{}", json_line(&SimJson::from(&report)));
            } else {
                println!("trials: {}", report.trials);
                println!("successes: {}", report.successes);
                println!("failures: {}", report.failures);
                let hist: Vec<String> = report
                    .start_histogram
                    .iter()
                    .enumerate()
                    .map(|(i, c)| format!("{}:{}", i + 1, c))
                    .collect();
                println!("start histogram: {}", hist.join(" "));
                println!("wall time: {:?}", report.wall_time);
            }
            Ok(())
        }
        Command::EnumerateExtensions { input, limit } => {
            let m = load_matrix(&input)?;
            let columns = extension_columns(&m, limit).map_err(domain)?;
            for col in columns {
                println!("{}", format_csv(&col));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    // The Rust runtime ignores SIGPIPE, so a consumer that stops reading
    // early (`burstec ... | head`) would otherwise panic every print.
    // Restore the default disposition and die silently like other filters.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Malformed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
