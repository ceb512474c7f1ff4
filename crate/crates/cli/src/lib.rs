//! `mixsq` command-line front end.
//!
//! Exit codes: `0` success, `1` a mathematical counterexample (or failed
//! certificate check) was found, `2` usage or input error.

pub mod output;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use mixsq::survey::{gauss_legendre_exclusions, Source};
use mixsq::{represent, DomainFilter, Error, FormSpec, MixedFormId, Mode, Survey, MAX_N};

use output::Format;

pub const EXIT_OK: i32 = 0;
pub const EXIT_COUNTEREXAMPLE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "mixsq", version, about = "Mixed sums of squares and triangular numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
#[group(multiple = false)]
struct FormatArgs {
    /// Human-readable output (default)
    #[arg(long)]
    human: bool,
    /// One JSON document on a single line
    #[arg(long)]
    json: bool,
    /// CSV with a header row
    #[arg(long)]
    csv: bool,
}

impl FormatArgs {
    fn format(self) -> Format {
        if self.json {
            Format::Json
        } else if self.csv {
            Format::Csv
        } else {
            Format::Human
        }
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct RunArgs {
    /// Worker threads for range scans
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    jobs: u64,
    /// Write measured wall time into JSON/CSV (otherwise 0, keeping output reproducible)
    #[arg(long)]
    timing: bool,
}

fn parse_form(s: &str) -> Result<MixedFormId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_source(s: &str) -> Result<Source, String> {
    match s.parse::<Source>() {
        Ok(Source::Control) | Err(_) => Err(format!(
            "unknown source {s:?}; expected one of theorem2, theorem1_i, theorem1_ii, theorem1_iii, panaitopol"
        )),
        Ok(src) => Ok(src),
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write N in one of the forms x2+3y2+t, x2+3t+t, x2+6t+t, 3x2+2t+t, 4x2+2t+t
    Represent {
        #[arg(value_parser = parse_form)]
        form: MixedFormId,
        n: u64,
        /// Re-check the certificate arithmetic before printing
        #[arg(long)]
        verify: bool,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Check every n in [LO, HI] against the five mixed forms
    VerifyRange {
        lo: u64,
        hi: u64,
        #[arg(long, default_value = "constructive", value_parser = parse_mode)]
        mode: Mode,
        /// Comma-separated subset of forms (default: all five)
        #[arg(long, value_delimiter = ',', value_parser = parse_form)]
        forms: Vec<MixedFormId>,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Oracle scan of catalog entries over [LO, HI]
    Survey {
        /// Restrict to one catalog (default: all)
        #[arg(long, value_parser = parse_source)]
        source: Option<Source>,
        lo: u64,
        hi: u64,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Number of integer triples representing N, e.g. count 1*sq+3*sq+1*tri 5
    Count {
        spec: String,
        n: u64,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// List witnesses of N in lexicographic order
    Witnesses {
        spec: String,
        n: u64,
        /// Maximum number of witnesses to print
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..))]
        limit: u64,
        #[command(flatten)]
        format: FormatArgs,
    },
    /// Smallest n in [LO, HI] that SPEC does not represent
    Search {
        spec: String,
        lo: u64,
        hi: u64,
        /// Only consider positive odd n
        #[arg(long)]
        odd_only: bool,
    },
    /// Run the oracle on x²+y²+z² and compare its misses with 4^k(8l+7)
    NegativeControl {
        lo: u64,
        hi: u64,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        format: FormatArgs,
    },
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn usage(&mut self, msg: impl std::fmt::Display) -> i32 {
        let _ = writeln!(self.err, "error: {msg}");
        EXIT_USAGE
    }
}

fn check_bounds(io: &mut Io, lo: u64, hi: u64) -> Option<i32> {
    if lo > hi {
        return Some(io.usage(format!("LO ({lo}) must not exceed HI ({hi})")));
    }
    if hi > MAX_N {
        return Some(io.usage(format!("HI ({hi}) exceeds the supported ceiling 2^55")));
    }
    None
}

fn parse_spec(io: &mut Io, text: &str) -> Result<FormSpec, i32> {
    text.parse::<FormSpec>().map_err(|e| {
        if let Error::Parse { pos, .. } = &e {
            let _ = writeln!(io.err, "error: {e}\n  {text}\n  {:>width$}", "^", width = *pos);
            EXIT_USAGE
        } else {
            io.usage(e)
        }
    })
}

fn survey(io: &mut Io, run: RunArgs) -> Result<Survey, i32> {
    Survey::with_jobs(run.jobs as usize).map_err(|e| io.usage(e))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let mut io = Io { out, err };
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink = if e.use_stderr() { &mut io.err } else { &mut io.out };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match execute(&mut io, cli.command) {
        Ok(code) => code,
        // downstream closed the pipe (e.g. `| head`); nothing left to report
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(io: &mut Io, command: Command) -> std::io::Result<i32> {
    match command {
        Command::Represent { form, n, verify, format } => {
            if n > MAX_N {
                return Ok(io.usage(format!("n = {n} exceeds the supported ceiling 2^55")));
            }
            let cert = match represent(form, n) {
                Ok(c) => c,
                Err(e) => {
                    writeln!(io.err, "error: {e}")?;
                    return Ok(EXIT_COUNTEREXAMPLE);
                }
            };
            if verify && !cert.verify().unwrap_or(false) {
                writeln!(io.err, "error: certificate {cert:?} does not verify")?;
                return Ok(EXIT_COUNTEREXAMPLE);
            }
            output::certificate(io.out, &cert, format.format())?;
            Ok(EXIT_OK)
        }
        Command::VerifyRange { lo, hi, mode, forms, run, format } => {
            if let Some(code) = check_bounds(io, lo, hi) {
                return Ok(code);
            }
            let engine = match survey(io, run) {
                Ok(s) => s,
                Err(code) => return Ok(code),
            };
            let forms = if forms.is_empty() { MixedFormId::ALL.to_vec() } else { forms };
            let reports = match engine.verify_forms(&forms, lo, hi, mode) {
                Ok(r) => r,
                Err(e) => return Ok(io.usage(e)),
            };
            output::reports(io.out, &reports, format.format(), run.timing)?;
            report_failures(io, &reports)
        }
        Command::Survey { source, lo, hi, run, format } => {
            if let Some(code) = check_bounds(io, lo, hi) {
                return Ok(code);
            }
            let engine = match survey(io, run) {
                Ok(s) => s,
                Err(code) => return Ok(code),
            };
            let reports = match engine.verify_catalog(source, lo, hi) {
                Ok(r) => r,
                Err(e) => return Ok(io.usage(e)),
            };
            output::reports(io.out, &reports, format.format(), run.timing)?;
            report_failures(io, &reports)
        }
        Command::Count { spec, n, format } => {
            let spec = match parse_spec(io, &spec) {
                Ok(s) => s,
                Err(code) => return Ok(code),
            };
            output::count(io.out, &spec, n, spec.count(n), format.format())?;
            Ok(EXIT_OK)
        }
        Command::Witnesses { spec, n, limit, format } => {
            let spec = match parse_spec(io, &spec) {
                Ok(s) => s,
                Err(code) => return Ok(code),
            };
            let list = spec.witnesses(n, usize::try_from(limit).unwrap_or(usize::MAX));
            output::witnesses(io.out, &spec, &list, format.format())?;
            Ok(EXIT_OK)
        }
        Command::Search { spec, lo, hi, odd_only } => {
            let spec = match parse_spec(io, &spec) {
                Ok(s) => s,
                Err(code) => return Ok(code),
            };
            if let Some(code) = check_bounds(io, lo, hi) {
                return Ok(code);
            }
            let filter = if odd_only { DomainFilter::PositiveOdd } else { DomainFilter::All };
            match spec.first_counterexample(lo, hi, filter) {
                Some(n) => {
                    writeln!(io.out, "{n}")?;
                    Ok(EXIT_COUNTEREXAMPLE)
                }
                None => {
                    writeln!(io.out, "none")?;
                    Ok(EXIT_OK)
                }
            }
        }
        Command::NegativeControl { lo, hi, run, format } => {
            if let Some(code) = check_bounds(io, lo, hi) {
                return Ok(code);
            }
            let engine = match survey(io, run) {
                Ok(s) => s,
                Err(code) => return Ok(code),
            };
            let report = match engine.negative_control(lo, hi) {
                Ok(r) => r,
                Err(e) => return Ok(io.usage(e)),
            };
            output::reports(io.out, std::slice::from_ref(&report), format.format(), run.timing)?;
            // success means the oracle missed exactly the 4^k(8l+7) numbers
            if report.counterexamples == gauss_legendre_exclusions(lo, hi) {
                Ok(EXIT_OK)
            } else {
                writeln!(io.err, "negative control mismatch: oracle misses differ from 4^k(8l+7)")?;
                Ok(EXIT_COUNTEREXAMPLE)
            }
        }
    }
}

fn report_failures(io: &mut Io, reports: &[mixsq::RangeReport]) -> std::io::Result<i32> {
    let mut code = EXIT_OK;
    for r in reports.iter().filter(|r| !r.is_clean()) {
        writeln!(io.err, "counterexample: {} first fails at n = {}", r.entry.name, r.counterexamples[0])?;
        code = EXIT_COUNTEREXAMPLE;
    }
    Ok(code)
}
