use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{Context as _, Result};
use bop_core::catalog::SpectrumId;
use bop_core::{GeneratorTable, HomotopyProfile, TowerResult, TruncatedSeries, VerificationReport};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

/// Where rendered output goes: a file, stdout, or nowhere under `--quiet`.
pub struct Sink {
    pub format: Format,
    pub output: Option<PathBuf>,
    pub quiet: bool,
}

impl Sink {
    pub fn emit(&self, text: &str) -> Result<()> {
        if let Some(path) = &self.output {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
        } else if !self.quiet {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
        Ok(())
    }
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

pub fn reports(format: Format, reports: &[VerificationReport], many: bool) -> Result<String> {
    match format {
        Format::Json if many => json(reports),
        Format::Json => json(&reports[0]),
        Format::Csv => csv_text(
            &["check", "pass", "first_failure_degree", "elapsed_ms"],
            reports.iter().map(|r| {
                vec![
                    r.check.clone(),
                    r.pass.to_string(),
                    r.first_failure_degree
                        .map(|d| d.to_string())
                        .unwrap_or_default(),
                    r.elapsed_ms.to_string(),
                ]
            }),
        ),
        Format::Table => {
            let mut s = String::new();
            for r in reports {
                writeln!(s, "{r}")?;
                for case in r.failed_cases() {
                    let at = case
                        .first_failure_degree
                        .map(|d| d.to_string())
                        .unwrap_or_default();
                    writeln!(s, "    FAIL {} at {at}", case.label)?;
                }
            }
            Ok(s)
        }
    }
}

fn table_lines(s: &mut String, table: &GeneratorTable) -> std::fmt::Result {
    writeln!(s, "kind: {}", table.kind())?;
    writeln!(s, "components: {}", table.component_rank())?;
    writeln!(s, "generators (degree: count):")?;
    for (d, c) in table.counts() {
        writeln!(s, "  {d}: {c}")?;
    }
    Ok(())
}

fn series_rows(series: &TruncatedSeries) -> impl Iterator<Item = (usize, String)> + '_ {
    series
        .coefficients()
        .iter()
        .enumerate()
        .map(|(d, c)| (d, c.to_string()))
}

pub fn tower_results(format: Format, results: &[TowerResult], many: bool) -> Result<String> {
    match format {
        Format::Json if many => json(results),
        Format::Json => json(&results[0]),
        Format::Csv => {
            let mut rows = Vec::new();
            for r in results {
                for (d, c) in series_rows(&r.series) {
                    let gens = r
                        .table
                        .as_ref()
                        .map(|t| t.count(d).to_string())
                        .unwrap_or_default();
                    rows.push(vec![r.space.to_string(), d.to_string(), gens, c]);
                }
            }
            csv_text(&["space", "degree", "generators", "dimension"], rows)
        }
        Format::Table => {
            let mut s = String::new();
            for r in results {
                writeln!(
                    s,
                    "{} ({})",
                    r.space,
                    serde_json::to_value(r.provenance)?.as_str().unwrap_or("")
                )?;
                match &r.table {
                    Some(t) => table_lines(&mut s, t)?,
                    None => writeln!(s, "no single generator table: mixed kinds")?,
                }
                writeln!(s, "series: {}", r.series)?;
            }
            Ok(s)
        }
    }
}

#[derive(Serialize)]
pub struct CatalogEntry {
    pub spectrum: SpectrumId,
    pub profile: HomotopyProfile,
}

pub fn catalog(format: Format, entries: &[CatalogEntry]) -> Result<String> {
    match format {
        Format::Json => json(entries),
        Format::Csv => {
            let mut rows = Vec::new();
            for e in entries {
                for (d, c) in series_rows(&e.profile.free_ranks) {
                    rows.push(vec![
                        e.spectrum.to_string(),
                        d.to_string(),
                        c,
                        e.profile.torsion(d).to_string(),
                    ]);
                }
            }
            csv_text(&["spectrum", "degree", "free_rank", "torsion_z2"], rows)
        }
        Format::Table => {
            let mut s = String::from("degree");
            for e in entries {
                write!(s, "\t{}", e.spectrum)?;
            }
            s.push('\n');
            let n = entries.first().map_or(0, |e| e.profile.truncation());
            for d in 0..=n {
                write!(s, "{d}")?;
                for e in entries {
                    let free = e.profile.free_ranks.coeff_or_zero(d);
                    match e.profile.torsion(d) {
                        0 => write!(s, "\t{free}")?,
                        t => write!(s, "\t{free}+{t}t")?,
                    }
                }
                s.push('\n');
            }
            s.push_str("entries are free rank, with +kt for k summands of Z/2\n");
            Ok(s)
        }
    }
}

#[derive(Serialize)]
pub struct ConjectureOutput {
    pub n: u64,
    pub summands: Vec<bop_core::conjecture::Summand>,
    pub series: TruncatedSeries,
}

pub fn conjecture(format: Format, out: &ConjectureOutput) -> Result<String> {
    match format {
        Format::Json => json(out),
        Format::Csv => csv_text(
            &["degree", "dimension"],
            series_rows(&out.series).map(|(d, c)| vec![d.to_string(), c]),
        ),
        Format::Table => {
            let mut s = String::new();
            writeln!(s, "conjectured H^*(BoP<{}>)", out.n)?;
            writeln!(s, "summands (s, K', epsilon, suspension, A(2,k)):")?;
            for t in &out.summands {
                writeln!(
                    s,
                    "  {} {} {} {} {}",
                    t.s, t.k_prime, t.epsilon, t.suspension, t.algebra_index
                )?;
            }
            writeln!(s, "series (degree: dimension):")?;
            for (d, c) in series_rows(&out.series) {
                writeln!(s, "  {d}: {c}")?;
            }
            Ok(s)
        }
    }
}
