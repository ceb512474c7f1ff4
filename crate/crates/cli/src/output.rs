//! Human, JSON and CSV renderings of certificates, counts and reports.
//!
//! JSON and CSV are byte-stable for identical inputs: field order is fixed,
//! integers are decimal, and timing is written as `0` unless explicitly
//! requested.

use std::io::{self, Write};

use mixsq::{Certificate, FormSpec, RangeReport, WitnessList};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Human,
    Json,
    Csv,
}

fn csv_writer<W: Write>(out: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out)
}

fn csv_err(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

pub fn certificate(out: &mut dyn Write, c: &Certificate, format: Format) -> io::Result<()> {
    match format {
        Format::Human => writeln!(
            out,
            "{} = {}  with x = {}, y = {}, z = {}",
            c.n, c.form, c.x, c.y, c.z
        ),
        Format::Json => {
            serde_json::to_writer(&mut *out, c)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.serialize(c).map_err(csv_err)?;
            w.flush()
        }
    }
}

#[derive(Serialize)]
struct CountRow<'a> {
    spec: &'a str,
    n: u64,
    count: u64,
}

pub fn count(out: &mut dyn Write, spec: &FormSpec, n: u64, count: u64, format: Format) -> io::Result<()> {
    let spec = spec.to_string();
    let row = CountRow { spec: &spec, n, count };
    match format {
        Format::Human => writeln!(out, "{count}"),
        Format::Json => {
            serde_json::to_writer(&mut *out, &row)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.serialize(row).map_err(csv_err)?;
            w.flush()
        }
    }
}

#[derive(Serialize)]
struct WitnessDoc<'a> {
    spec: &'a str,
    n: u64,
    witnesses: &'a [[i64; 3]],
}

pub fn witnesses(out: &mut dyn Write, spec: &FormSpec, list: &WitnessList, format: Format) -> io::Result<()> {
    match format {
        Format::Human => {
            for [x, y, z] in &list.witnesses {
                writeln!(out, "{x} {y} {z}")?;
            }
            Ok(())
        }
        Format::Json => {
            let spec = spec.to_string();
            let doc = WitnessDoc { spec: &spec, n: list.n, witnesses: &list.witnesses };
            serde_json::to_writer(&mut *out, &doc)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            w.write_record(["x", "y", "z"]).map_err(csv_err)?;
            for t in &list.witnesses {
                w.write_record(t.map(|v| v.to_string())).map_err(csv_err)?;
            }
            w.flush()
        }
    }
}

#[derive(Serialize)]
struct ReportCsvRow<'a> {
    entry: &'a str,
    lo: u64,
    hi: u64,
    verified: u64,
    counterexamples: String,
    mode: &'a str,
    wall_ms: u128,
}

#[derive(Serialize)]
struct ReportJson<'a> {
    entry: &'a str,
    source: &'a str,
    status: mixsq::survey::Status,
    lo: u64,
    hi: u64,
    verified: u64,
    counterexamples: &'a [u64],
    mode: &'a str,
    wall_ms: u128,
}

pub fn reports(out: &mut dyn Write, reports: &[RangeReport], format: Format, timing: bool) -> io::Result<()> {
    let ms = |r: &RangeReport| if timing { r.wall_time.as_millis() } else { 0 };
    match format {
        Format::Human => {
            for r in reports {
                let verdict = if r.is_clean() {
                    "ok".to_string()
                } else {
                    let shown: Vec<String> =
                        r.counterexamples.iter().take(10).map(u64::to_string).collect();
                    let more = if r.counterexamples.len() > 10 { ", ..." } else { "" };
                    format!("{} counterexample(s): {}{more}", r.counterexamples.len(), shown.join(", "))
                };
                writeln!(
                    out,
                    "{:<34} [{}, {}] {:<12} verified {:>8}  {:>8.3}s  {verdict}",
                    r.entry.name,
                    r.lo,
                    r.hi,
                    r.mode.name(),
                    r.verified,
                    r.wall_time.as_secs_f64(),
                )?;
            }
            Ok(())
        }
        Format::Json => {
            let docs: Vec<ReportJson> = reports
                .iter()
                .map(|r| ReportJson {
                    entry: &r.entry.name,
                    source: r.entry.source.name(),
                    status: r.entry.status(),
                    lo: r.lo,
                    hi: r.hi,
                    verified: r.verified,
                    counterexamples: &r.counterexamples,
                    mode: r.mode.name(),
                    wall_ms: ms(r),
                })
                .collect();
            serde_json::to_writer(&mut *out, &docs)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv_writer(out);
            if reports.is_empty() {
                w.write_record(["entry", "lo", "hi", "verified", "counterexamples", "mode", "wall_ms"])
                    .map_err(csv_err)?;
            }
            for r in reports {
                let joined: Vec<String> = r.counterexamples.iter().map(u64::to_string).collect();
                w.serialize(ReportCsvRow {
                    entry: &r.entry.name,
                    lo: r.lo,
                    hi: r.hi,
                    verified: r.verified,
                    counterexamples: joined.join(";"),
                    mode: r.mode.name(),
                    wall_ms: ms(r),
                })
                .map_err(csv_err)?;
            }
            w.flush()
        }
    }
}
