//! Result files and the curve format.
//!
//! Curves are comma-separated with the header `generation,fes_used,best_fitness`
//! and one row per generation. Fitness values are written with 17 significant
//! digits (`{:.16e}`), which round-trips every `f64` exactly.

use std::fs;
use std::path::{Path, PathBuf};

use firefly_core::swarm::TracePoint;
use firefly_core::RunReport;
use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};
use crate::experiment::SummaryStats;

pub const CURVE_HEADER: [&str; 3] = ["generation", "fes_used", "best_fitness"];
pub const MEDIAN_HEADER: [&str; 2] = ["generation", "median_best_fitness"];
pub const SUMMARY_FILE: &str = "summary.json";
pub const MEDIAN_FILE: &str = "median_curve.csv";
pub const CURVE_DIR: &str = "curves";

pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn curve_file_name(repetition: usize) -> String {
    format!("rep_{repetition:04}.csv")
}

fn to_csv<const N: usize>(header: [&str; N], rows: impl Iterator<Item = [String; N]>) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    let push = |w: &mut csv::Writer<Vec<u8>>, rec: &[&str]| w.write_record(rec).expect("writing to memory");
    push(&mut w, &header);
    for row in rows {
        push(&mut w, &row.each_ref().map(String::as_str));
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv of utf-8 fields")
}

pub fn render_curve(trace: &[TracePoint]) -> String {
    to_csv(
        CURVE_HEADER,
        trace
            .iter()
            .map(|p| [p.generation.to_string(), p.fes_used.to_string(), format_float(p.best_fitness)]),
    )
}

fn parse_error(e: csv::Error) -> HarnessError {
    let line = e.position().map_or(0, |p| p.line() as usize);
    HarnessError::Parse {
        line,
        reason: e.to_string(),
    }
}

/// Reads `text` as rows of exactly `N` fields under the given header.
/// Returns each row with its one-based line number.
pub(crate) fn read_rows<const N: usize>(text: &str, header: [&str; N]) -> Result<Vec<(usize, [String; N])>> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(false).from_reader(text.as_bytes());
    let mut records = rdr.records();
    let first = match records.next() {
        Some(rec) => rec.map_err(parse_error)?,
        None => {
            return Err(HarnessError::Parse {
                line: 1,
                reason: "missing header".into(),
            })
        }
    };
    if first.iter().ne(header.iter().copied()) {
        return Err(HarnessError::Parse {
            line: 1,
            reason: format!("expected header `{}`", header.join(",")),
        });
    }
    let mut rows = Vec::new();
    for rec in records {
        let rec = rec.map_err(parse_error)?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        let fields: Vec<String> = rec.iter().map(str::to_string).collect();
        let row: [String; N] = fields.try_into().map_err(|f: Vec<String>| HarnessError::Parse {
            line,
            reason: format!("expected {N} fields, found {}", f.len()),
        })?;
        rows.push((line, row));
    }
    Ok(rows)
}

pub(crate) fn field<T: std::str::FromStr>(line: usize, name: &str, raw: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    raw.parse().map_err(|e| HarnessError::Parse {
        line,
        reason: format!("`{name}` = `{raw}`: {e}"),
    })
}

pub fn parse_curve(text: &str) -> Result<Vec<TracePoint>> {
    read_rows(text, CURVE_HEADER)?
        .into_iter()
        .map(|(line, [g, fes, best])| {
            let best: f64 = field(line, "best_fitness", &best)?;
            if best.is_nan() {
                return Err(HarnessError::Parse {
                    line,
                    reason: "best_fitness is NaN".into(),
                });
            }
            Ok(TracePoint {
                generation: field(line, "generation", &g)?,
                fes_used: field(line, "fes_used", &fes)?,
                best_fitness: best,
            })
        })
        .collect()
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) / 2.0
    }
}

/// Elementwise median of the repetition curves, over the generations that
/// every repetition reached.
pub fn median_curve(reports: &[RunReport]) -> Vec<(u64, f64)> {
    let Some(shortest) = reports.iter().map(|r| r.trace.len()).min() else {
        return Vec::new();
    };
    (0..shortest)
        .map(|g| {
            let mut column: Vec<f64> = reports.iter().map(|r| r.trace[g].best_fitness).collect();
            (reports[0].trace[g].generation, median(&mut column))
        })
        .collect()
}

pub fn render_median_curve(reports: &[RunReport]) -> String {
    to_csv(
        MEDIAN_HEADER,
        median_curve(reports).into_iter().map(|(g, m)| [g.to_string(), format_float(m)]),
    )
}

pub fn parse_median_curve(text: &str) -> Result<Vec<(u64, f64)>> {
    read_rows(text, MEDIAN_HEADER)?
        .into_iter()
        .map(|(line, [g, m])| Ok((field(line, "generation", &g)?, field(line, "median_best_fitness", &m)?)))
        .collect()
}

#[derive(Serialize)]
struct Summary<'a> {
    config: &'a ExperimentConfig,
    seeds: Vec<u64>,
    stats: &'a SummaryStats,
    notes: Notes,
}

#[derive(Serialize)]
struct Notes {
    success: &'static str,
    mean_fes_to_success: &'static str,
}

const NOTES: Notes = Notes {
    success: "final best <= known optimum value + success_threshold",
    mean_fes_to_success: "efficiency: mean evaluations until the success target was first reached, over successful repetitions",
};

pub fn render_summary(stats: &SummaryStats, reports: &[RunReport], config: &ExperimentConfig) -> Result<String> {
    let summary = Summary {
        config,
        seeds: reports.iter().map(|r| r.seed).collect(),
        stats,
        notes: NOTES,
    };
    let mut text = serde_json::to_string_pretty(&summary)?;
    text.push('\n');
    Ok(text)
}

fn write(path: PathBuf, contents: &str) -> Result<PathBuf> {
    fs::write(&path, contents).map_err(|e| HarnessError::io(&path, e))?;
    Ok(path)
}

/// Writes the summary, one curve per repetition and the median curve into
/// `config.output_dir`. Returns the written paths.
pub fn emit_results(stats: &SummaryStats, reports: &[RunReport], config: &ExperimentConfig) -> Result<Vec<PathBuf>> {
    emit_results_to(stats, reports, config, &config.output_dir)
}

pub fn emit_results_to(
    stats: &SummaryStats,
    reports: &[RunReport],
    config: &ExperimentConfig,
    dir: &Path,
) -> Result<Vec<PathBuf>> {
    let curves = dir.join(CURVE_DIR);
    fs::create_dir_all(&curves).map_err(|e| HarnessError::io(&curves, e))?;
    let mut written = vec![write(dir.join(SUMMARY_FILE), &render_summary(stats, reports, config)?)?];
    for (r, report) in reports.iter().enumerate() {
        written.push(write(curves.join(curve_file_name(r)), &render_curve(&report.trace))?);
    }
    written.push(write(dir.join(MEDIAN_FILE), &render_median_curve(reports))?);
    Ok(written)
}
