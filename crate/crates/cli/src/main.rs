// Copyright 2026 The mwspoil Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! `mwspoil`: spoiler audits and simulations for multiwinner elections.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use mwspoil_core::extend::{extend_profile, ExtensionConfig};
use mwspoil_core::harness::{
    collect_blt_files, run_corpus_audit, run_simulation, run_subelection_audit, AuditOptions, CorpusAudit,
    SimulationOptions,
};
use mwspoil_core::io::{emit_blt, emit_results_csv, read_blt_file};
use mwspoil_core::methods::{stv, Method, TiePolicy};
use mwspoil_core::simgen::{Culture, CultureSpec, Regime};

#[derive(Parser)]
#[command(name = "mwspoil", version, about = "Spoiler audits and simulations for multiwinner elections")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count one election and print the winners.
    Tabulate {
        file: PathBuf,
        #[arg(long, default_value = "stv")]
        method: Method,
        /// Print the round-by-round STV table.
        #[arg(long)]
        trace: bool,
        /// Override the number of seats.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value = "error")]
        tie: TiePolicy,
    },
    /// Spoiler rates over a file or a directory of `.blt` files.
    Spoilers {
        path: PathBuf,
        #[command(flatten)]
        audit: AuditArgs,
        /// Print counts and stability columns instead of rates.
        #[arg(long)]
        counts: bool,
    },
    /// Monte Carlo spoiler rates under a random culture.
    Simulate {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long, value_enum, default_value = "complete")]
        regime: RegimeArg,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1001)]
        voters: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "table")]
        methods: MethodList,
        #[arg(long, default_value = "error")]
        tie: TiePolicy,
        /// Worker threads (0 = all cores); output is identical for any value.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Complete partial ballots and write the result as `.blt`.
    Extend {
        file: PathBuf,
        #[arg(long, default_value_t = 0.10)]
        stop_ratio: f64,
        #[arg(long)]
        max_length: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spoiler rates over every t-candidate sub-election.
    Subelections {
        path: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "table")]
        methods: MethodList,
        #[arg(long, default_value = "error")]
        tie: TiePolicy,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Clone-similarity counts for spoilers over a corpus.
    Clones {
        path: PathBuf,
        #[command(flatten)]
        audit: AuditArgs,
    },
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long, alias = "method", default_value = "table")]
    methods: MethodList,
    /// Seat count to use instead of each file's own.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value = "error")]
    tie: TiePolicy,
    /// Complete partial ballots before auditing.
    #[arg(long)]
    extend: bool,
    #[arg(long, default_value_t = 0.10)]
    stop_ratio: f64,
    /// Also write one CSV row per (election, method) here.
    #[arg(long)]
    detail: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Ic,
    Iac,
    Spatial1d,
}

#[derive(Clone, Copy, ValueEnum)]
enum RegimeArg {
    Complete,
    Partial,
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).context("writing stdout"),
    }
}

/// Comma-separated method ids; `all` and `table` expand.
#[derive(Clone)]
struct MethodList(Vec<Method>);

impl std::str::FromStr for MethodList {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::parse_list(s).map(MethodList)
    }
}

fn audit(path: &Path, args: &AuditArgs) -> Result<CorpusAudit> {
    let files = collect_blt_files(path).with_context(|| format!("listing {}", path.display()))?;
    let opts = AuditOptions {
        k_override: args.k,
        tie: args.tie,
        extend: args.extend.then(|| ExtensionConfig { stop_ratio: args.stop_ratio, ..Default::default() }),
        threads: args.threads,
    };
    let result = run_corpus_audit(&files, &args.methods.0, opts);
    for (file, err) in &result.failures {
        eprintln!("skipped {}: {err}", file.display());
    }
    eprintln!(
        "{} files, {} audited, {} outside m > k + 1 > 2, {} unreadable",
        files.len(),
        result.result.requested,
        result.filtered_out,
        result.failures.len()
    );
    if let Some(detail) = &args.detail {
        write_output(Some(detail), &emit_results_csv(&result.detail_table()))?;
    }
    Ok(result)
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Tabulate { file, method, trace, k, tie } => {
            let mut p = read_blt_file(&file).map_err(anyhow::Error::msg)?;
            if let Some(k) = k {
                p = p.with_seats(k)?;
            }
            if trace {
                if method != Method::Stv {
                    bail!("--trace is only available for stv");
                }
                let (outcome, tr) = stv(&p, tie)?;
                print!("{}", tr.render(&p));
                println!("Winners: {}", outcome.display_names(&p));
            } else {
                let outcome = method.run(&p, tie)?;
                println!("{}", outcome.display_names(&p));
            }
        }
        Command::Spoilers { path, audit: args, counts } => {
            let result = audit(&path, &args)?;
            let table = if counts { result.result.to_audit_table() } else { result.result.to_table() };
            write_output(args.out.as_deref(), &emit_results_csv(&table))?;
        }
        Command::Clones { path, audit: args } => {
            let result = audit(&path, &args)?;
            write_output(args.out.as_deref(), &emit_results_csv(&result.result.to_audit_table()))?;
        }
        Command::Simulate { model, regime, m, k, voters, trials, seed, methods, tie, threads, out } => {
            let spec = CultureSpec {
                culture: match model {
                    Model::Ic => Culture::Ic,
                    Model::Iac => Culture::Iac,
                    Model::Spatial1d => Culture::Spatial1d,
                },
                regime: match regime {
                    RegimeArg::Complete => Regime::Complete,
                    RegimeArg::Partial => Regime::Partial,
                },
                candidates: m,
                seats: k,
                voters,
                seed,
            };
            if trials == 0 {
                bail!("--trials must be at least 1");
            }
            let opts = SimulationOptions { trials, tie, threads };
            let result = run_simulation(spec, &methods.0, opts)?;
            write_output(out.as_deref(), &emit_results_csv(&result.to_table()))?;
        }
        Command::Extend { file, stop_ratio, max_length, out } => {
            let p = read_blt_file(&file).map_err(anyhow::Error::msg)?;
            let extended = extend_profile(&p, &ExtensionConfig { stop_ratio, max_length })?;
            write_output(out.as_deref(), &emit_blt(&extended))?;
        }
        Command::Subelections { path, t, k, methods, tie, threads, out } => {
            let files = collect_blt_files(&path).with_context(|| format!("listing {}", path.display()))?;
            let result = run_subelection_audit(&files, t, k, &methods.0, tie, threads);
            for (file, err) in &result.failures {
                eprintln!("skipped {}: {err}", file.display());
            }
            eprintln!(
                "{} sub-elections, {} empty, {} elections with fewer than {t} candidates",
                result.result.requested, result.empty, result.too_small
            );
            write_output(out.as_deref(), &emit_results_csv(&result.result.to_table()))?;
        }
    }
    Ok(())
}

fn main() {
    if let Err(e) = run(Cli::parse()) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}
