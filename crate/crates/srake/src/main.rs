use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use srake::harness::emit::write_csv;
use srake::harness::spec_file::parse_spec;
use srake::selectors::binomial;
use srake::{linear_to_db, run_realization, run_sweep, Algorithm, ExperimentSpec};

/// Selective-Rake finger-selection simulator: races conventional, exhaustive,
/// and genetic selectors over seeded Monte Carlo channel sweeps.
#[derive(Parser)]
#[command(version, about, long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the sweep described by an experiment file and emit CSV.
    Run(RunArgs),
    /// Parse and validate an experiment file without running it.
    Validate(SpecArg),
    /// Print the derived quantities of an experiment file (noise levels,
    /// search-space sizes, evaluation budgets).
    Inspect(SpecArg),
    /// Race all three selectors on every realization and verify that
    /// conventional <= genetic <= exhaustive holds; exits nonzero on a
    /// violation. Sweep points past the enumeration cap are skipped.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct SpecArg {
    /// Experiment file (TOML).
    #[arg(short, long)]
    config: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    spec: SpecArg,
    /// Override the experiment file's master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the experiment file's realization count.
    #[arg(long)]
    realizations: Option<u64>,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    spec: SpecArg,
    /// Output CSV path (stdout when omitted).
    #[arg(short, long)]
    out: Option<PathBuf>,
    /// Override the experiment file's master seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the experiment file's realization count.
    #[arg(long)]
    realizations: Option<u64>,
    /// Worker threads (defaults to all cores).
    #[arg(short, long)]
    jobs: Option<usize>,
}

fn main() -> anyhow::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let result = match Cli::parse().command {
        Command::Run(args) => run(args),
        Command::Validate(args) => validate(&args),
        Command::Inspect(args) => inspect(&load(&args)?),
        Command::Oracle(args) => oracle(args),
    };
    // A consumer such as `head` closing our stdout is a normal way for a run
    // to end, not an error worth reporting.
    match result {
        Err(err) if is_broken_pipe(&err) => Ok(()),
        other => other,
    }
}

fn is_broken_pipe(err: &anyhow::Error) -> bool {
    err.chain().any(|cause| {
        cause
            .downcast_ref::<io::Error>()
            .is_some_and(|io_err| io_err.kind() == io::ErrorKind::BrokenPipe)
    })
}

fn validate(args: &SpecArg) -> anyhow::Result<()> {
    let spec = load(args)?;
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "ok: {} sweep point(s), {} realization(s), selectors: {}",
        spec.points().len(),
        spec.realizations,
        join_algorithms(&spec.algorithms)
    )?;
    Ok(())
}

fn load(args: &SpecArg) -> anyhow::Result<ExperimentSpec> {
    parse_spec(&args.config).with_context(|| format!("loading {}", args.config.display()))
}

fn join_algorithms(algorithms: &[Algorithm]) -> String {
    algorithms.iter().map(Algorithm::to_string).collect::<Vec<_>>().join(", ")
}

fn run(args: RunArgs) -> anyhow::Result<()> {
    let mut spec = load(&args.spec)?;
    if let Some(seed) = args.seed {
        spec.master_seed = seed;
    }
    if let Some(realizations) = args.realizations {
        spec.realizations = realizations;
        spec.validate().context("after --realizations override")?;
    }
    if let Some(jobs) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring the worker pool")?;
    }

    let result = run_sweep(&spec)?;

    match &args.out {
        Some(path) => {
            let file = File::create(path)
                .with_context(|| format!("creating {}", path.display()))?;
            let mut out = BufWriter::new(file);
            write_csv(&mut out, &spec, &result)?;
            out.flush()?;
            log::info!("wrote {}", path.display());
        }
        None => {
            let stdout = io::stdout();
            let mut out = BufWriter::new(stdout.lock());
            write_csv(&mut out, &spec, &result)?;
            out.flush()?;
        }
    }
    Ok(())
}

fn inspect(spec: &ExperimentSpec) -> anyhow::Result<()> {
    let mut out = io::stdout().lock();
    writeln!(out, "selectors:      {}", join_algorithms(&spec.algorithms))?;
    writeln!(out, "realizations:   {}", spec.realizations)?;
    writeln!(out, "master seed:    {}", spec.master_seed)?;
    if spec.algorithms.contains(&Algorithm::Genetic) {
        writeln!(out, "ga eval budget: {} per realization", spec.ga.eval_budget())?;
    }
    writeln!(out)?;
    writeln!(out, "{:>8} {:>9} {:>12} {:>16} {:>12}", "fingers", "ebn0_db", "noise_var", "subset_space", "exhaustive")?;
    for (fingers, ebn0_db) in spec.points() {
        let cfg = spec.config_at(fingers, ebn0_db);
        let combinations = binomial(cfg.paths as u64, cfg.fingers as u64);
        let exhaustive = if !spec.algorithms.contains(&Algorithm::Exhaustive) {
            "not requested"
        } else if combinations > spec.enumeration_cap as u128 {
            "skipped (cap)"
        } else {
            "runs"
        };
        writeln!(
            out,
            "{:>8} {:>9} {:>12.6} {:>16} {:>12}",
            fingers, ebn0_db, cfg.noise_var, combinations, exhaustive
        )?;
    }
    Ok(())
}

/// Per-realization ordering check: because all three selectors score
/// assignments with the same deterministic objective, the exhaustive optimum
/// can never lose to the genetic pick, and with baseline injection the
/// genetic pick can never lose to the conventional one. Any violation is a
/// bug, so the comparisons carry no tolerance.
fn oracle(args: OracleArgs) -> anyhow::Result<()> {
    let mut spec = load(&args.spec)?;
    if let Some(seed) = args.seed {
        spec.master_seed = seed;
    }
    if let Some(realizations) = args.realizations {
        spec.realizations = realizations;
    }
    if !spec.algorithms.contains(&Algorithm::Genetic) {
        anyhow::bail!(
            "the ordering check races the genetic selector; list `genetic` \
             (with a [ga] section) in the experiment file"
        );
    }
    spec.algorithms = vec![Algorithm::Conventional, Algorithm::Genetic, Algorithm::Exhaustive];
    spec.validate().context("after overrides")?;

    let mut out = io::stdout().lock();
    writeln!(
        out,
        "checking conventional <= genetic <= exhaustive on {} realization(s) per sweep point",
        spec.realizations
    )?;
    if !spec.ga.inject_baseline {
        writeln!(out, "baseline injection is off: the conventional-vs-genetic leg is reported, not enforced")?;
    }
    writeln!(out, "shortfall_db = worst per-realization gap of genetic below the exhaustive optimum")?;
    writeln!(out, "margin_db    = smallest per-realization lead of genetic over conventional")?;
    writeln!(out)?;
    writeln!(out, "{:>8} {:>9} {:>14} {:>13} {:>10}", "fingers", "ebn0_db", "shortfall_db", "margin_db", "status")?;

    let mut checked = 0usize;
    for (fingers, ebn0_db) in spec.points() {
        let cfg = spec.config_at(fingers, ebn0_db);
        let combinations = binomial(cfg.paths as u64, cfg.fingers as u64);
        if combinations > spec.enumeration_cap as u128 {
            writeln!(out, "{:>8} {:>9} {:>14} {:>13} {:>10}", fingers, ebn0_db, "-", "-", "skipped")?;
            continue;
        }
        let rows: Vec<_> = (0..spec.realizations)
            .into_par_iter()
            .map(|r| {
                run_realization(
                    &cfg,
                    &spec.algorithms,
                    &spec.ga,
                    spec.enumeration_cap,
                    spec.master_seed,
                    r,
                )
            })
            .collect::<Result<_, _>>()?;
        let mut shortfall_db = 0.0f64;
        let mut margin_db = f64::INFINITY;
        for (r, row) in rows.iter().enumerate() {
            let conv = row[0].selection.sinr_linear;
            let ga = row[1].selection.sinr_linear;
            let exh = row[2].selection.sinr_linear;
            if ga > exh {
                anyhow::bail!(
                    "realization {r} at fingers={fingers}, ebn0_db={ebn0_db}: \
                     genetic {ga} above exhaustive {exh}"
                );
            }
            if spec.ga.inject_baseline && conv > ga {
                anyhow::bail!(
                    "realization {r} at fingers={fingers}, ebn0_db={ebn0_db}: \
                     conventional {conv} above genetic {ga} despite baseline injection"
                );
            }
            shortfall_db = shortfall_db.max(linear_to_db(exh) - linear_to_db(ga));
            margin_db = margin_db.min(linear_to_db(ga) - linear_to_db(conv));
        }
        writeln!(
            out,
            "{:>8} {:>9} {:>14.4} {:>13.4} {:>10}",
            fingers, ebn0_db, shortfall_db, margin_db, "ok"
        )?;
        checked += 1;
    }
    if checked == 0 {
        anyhow::bail!(
            "every sweep point exceeds the enumeration cap of {}; nothing was checked",
            spec.enumeration_cap
        );
    }
    writeln!(out)?;
    writeln!(out, "ok: ordering held on every realization ({checked} sweep point(s) checked)")?;
    Ok(())
}
