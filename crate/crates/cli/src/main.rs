//! `bop`: homology tables, towers and exact identity checks for the Omega
//! spectra of `BoP`, `BP̄`, `bo` and `bu`.
//!
//! Exit status: 0 when every check passes, 1 when a verification fails, 2 on
//! usage or parameter errors.

mod checks;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use bop_core::catalog::{self, SpaceRef, SpectrumId};
use bop_core::conjecture::{self, EpsilonContext};
use bop_core::report::timed;
use bop_core::tower::{self, Provenance};
use bop_core::TowerResult;
use clap::{Parser, Subcommand, ValueEnum};

use checks::{Check, CheckParams, Context, Fault};
use output::{CatalogEntry, ConjectureOutput, Format, Sink};

#[derive(Debug, Parser)]
#[command(
    name = "bop",
    version,
    about = "Exact homology and splitting checks for BoP and its relatives"
)]
struct Cli {
    /// Truncation degree of every series.
    #[arg(long, global = true, default_value_t = 256)]
    max_degree: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Print nothing; the exit status carries the result.
    #[arg(long, global = true)]
    quiet: bool,
    /// Deliberately break one input, to exercise failure reporting.
    #[arg(long, global = true, value_enum)]
    inject_fault: Option<Fault>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mod-2 homology of one space of an Omega spectrum.
    Homology {
        /// BP, BPbar, BP<k>, bu, bo, BoP, F or X.
        spectrum: String,
        #[arg(allow_hyphen_values = true)]
        index: i32,
        /// Use the periodic KO table for bo.
        #[arg(long)]
        ko: bool,
    },
    /// The solved BoP tower from index 2 to `--i-max`.
    Tower {
        #[arg(long, default_value_t = 12)]
        i_max: i32,
    },
    /// Run one identity check, or `all`.
    Verify {
        #[arg(value_enum)]
        check: Check,
        #[command(flatten)]
        params: CheckParams,
    },
    /// The conjectured cohomology of BoP<n>, or one of its checks.
    Conjecture {
        #[arg(long)]
        n: Option<u64>,
        #[arg(long, value_enum)]
        check: Option<ConjectureCheck>,
        #[arg(long)]
        stable_from: Option<u64>,
        #[arg(long)]
        q_max: Option<u64>,
        #[arg(long)]
        j_bound: Option<u64>,
    },
    /// Homotopy profiles of every catalogued spectrum.
    Catalog,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConjectureCheck {
    Limit,
    Epsilon,
    FirstAppearance,
    Squares,
    Shape,
    /// Informational only: the homotopy-level analogue of the decomposition.
    Experimental,
}

enum Outcome {
    Done,
    Failed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    let sink = Sink {
        format: cli.format,
        output: cli.output.clone(),
        quiet: cli.quiet,
    };
    let n = cli.max_degree;
    match cli.command {
        Command::Homology {
            spectrum,
            index,
            ko,
        } => {
            let spectrum: SpectrumId = spectrum.parse()?;
            let result = homology(spectrum, index, ko, n)?;
            sink.emit(&output::tower_results(sink.format, &[result], false)?)?;
        }
        Command::Tower { i_max } => {
            let results = tower::bop_tower(i_max, n)?;
            sink.emit(&output::tower_results(sink.format, &results, true)?)?;
        }
        Command::Verify { check, params } => {
            let ctx = Context {
                max_degree: n,
                fault: cli.inject_fault,
            };
            let reports = checks::run(check, &params, &ctx)?;
            sink.emit(&output::reports(
                sink.format,
                &reports,
                check == Check::All,
            )?)?;
            if reports.iter().any(|r| !r.pass) {
                return Ok(Outcome::Failed);
            }
        }
        Command::Conjecture {
            n: count,
            check,
            stable_from,
            q_max,
            j_bound,
        } => {
            let ctx = Context {
                max_degree: n,
                fault: None,
            };
            let Some(check) = check else {
                let Some(count) = count else {
                    bail!("conjecture needs --n or --check");
                };
                let series = conjecture::conjectured_bopn_cohomology(count, n)?;
                let summands = conjecture::summands(EpsilonContext::new(count)?, n as u64)?;
                let out = ConjectureOutput {
                    n: count,
                    summands,
                    series,
                };
                sink.emit(&output::conjecture(sink.format, &out)?)?;
                return Ok(Outcome::Done);
            };
            let report = timed(|| match check {
                ConjectureCheck::Limit => conjecture::verify_conjecture_limit(
                    n,
                    count.unwrap_or_else(|| ctx.default_n_max()),
                    stable_from,
                ),
                ConjectureCheck::Epsilon => {
                    conjecture::verify_epsilon_partition(count.unwrap_or(64))
                }
                ConjectureCheck::FirstAppearance => {
                    conjecture::verify_first_appearance(q_max.unwrap_or(64))
                }
                ConjectureCheck::Squares => conjecture::verify_squares(j_bound.unwrap_or(1 << 12)),
                ConjectureCheck::Shape => {
                    conjecture::verify_conjecture_shape(count.unwrap_or(64), n)
                }
                ConjectureCheck::Experimental => {
                    conjecture::experimental_bopn_homotopy(count.unwrap_or(4), n)
                }
            })?;
            sink.emit(&output::reports(
                sink.format,
                std::slice::from_ref(&report),
                false,
            )?)?;
            if !report.pass && check != ConjectureCheck::Experimental {
                return Ok(Outcome::Failed);
            }
        }
        Command::Catalog => {
            let mut spectra = vec![SpectrumId::BP, SpectrumId::BPbar];
            spectra.extend((1..=3).map(SpectrumId::BPn));
            spectra.extend([
                SpectrumId::Bu,
                SpectrumId::Bo,
                SpectrumId::BoP,
                SpectrumId::F,
                SpectrumId::X,
            ]);
            let entries = spectra
                .into_iter()
                .map(|spectrum| {
                    Ok(CatalogEntry {
                        spectrum,
                        profile: catalog::homotopy_profile(spectrum, n)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            sink.emit(&output::catalog(sink.format, &entries)?)?;
        }
    }
    Ok(Outcome::Done)
}

fn homology(spectrum: SpectrumId, index: i32, ko: bool, n: usize) -> Result<TowerResult> {
    let space = SpaceRef::new(spectrum, index);
    if ko && spectrum != SpectrumId::Bo {
        bail!("--ko applies only to bo");
    }
    let result = match spectrum {
        SpectrumId::Bo if ko || index >= 7 => {
            let reduced = index.rem_euclid(8);
            if !ko {
                eprintln!(
                    "note: connective bo_{index} is not catalogued; showing the periodic table KO_{reduced}"
                );
            }
            TowerResult::from_table(
                space,
                catalog::ko_space_homology(index, n)?,
                Provenance::Catalog,
            )
        }
        SpectrumId::Bo => TowerResult::from_table(
            space,
            catalog::bo_space_homology(index, n)?,
            Provenance::Catalog,
        ),
        SpectrumId::Bu => {
            let provenance = if index <= 2 {
                Provenance::Catalog
            } else {
                Provenance::RankRule
            };
            TowerResult::from_table(space, catalog::bu_space_homology(index, n)?, provenance)
        }
        SpectrumId::BoP => tower::bop_homology(index, n)?,
        _ => TowerResult::from_table(
            space,
            tower::rank_rule_homology(space, n)?,
            Provenance::RankRule,
        ),
    };
    Ok(result)
}
