use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use maskperc::analytic::analyze;
use maskperc::config::ScenarioFile;
use maskperc::harness::{emit_csv, preset, run_sweep, sweep_comments, write_csv, Mode, Preset, SweepSpec};
use maskperc::network::{generate_multilayer, write_edge_list};
use maskperc::sim::{assign_masks, run_trials, Fixture, OracleComparison, TrialSeeds};
use maskperc::Error;

const DEFAULT_SEED: u64 = 1;
const DEFAULT_TRIALS: usize = 1000;

#[derive(Parser)]
#[command(name = "maskperc", version, about = "Mask-type SIR percolation on two-layer contact networks")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    run: RunArgs,
    /// CSV destination (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    mode: Option<Mode>,
    /// Fill wall_time_s; output is then no longer reproducible.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Analytic PE, threshold and ES for one scenario.
    Analyze {
        #[arg(long)]
        config: PathBuf,
    },
    /// Monte-Carlo estimates for one scenario.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Grid sweep from a scenario file with a [sweep] section.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        args: SweepArgs,
    },
    /// Compare the simulator against exact enumeration on fixture files.
    OracleCheck {
        #[arg(required = true)]
        fixtures: Vec<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        runs: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Allowed distance in standard errors.
        #[arg(long, default_value_t = 4.0)]
        sigmas: f64,
    },
    /// One of the published experiments: figA, figB or figC.
    Preset {
        which: Preset,
        #[command(flatten)]
        args: SweepArgs,
    },
    /// Generate one network and print it as an edge list.
    Graph {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn sweep(spec: &SweepSpec, seed: u64, out: Option<&Path>) -> Result<(), Error> {
    let rows = run_sweep(spec, seed)?;
    let comments = sweep_comments(spec, seed, &rows);
    match out {
        Some(path) => emit_csv(&rows, &comments, path)?,
        None => write_csv(std::io::stdout().lock(), &rows, &comments)?,
    }
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    if failed > 0 {
        eprintln!("{failed} of {} grid points failed; see the CSV comments", rows.len());
    }
    Ok(())
}

fn apply_sweep_args(spec: &mut SweepSpec, args: &SweepArgs) {
    if let Some(t) = args.run.trials {
        spec.trials = t;
    }
    if let Some(m) = args.mode {
        spec.mode = m;
    }
    spec.timing = args.timing;
}

fn run(command: Command) -> Result<(), Error> {
    match command {
        Command::Analyze { config } => {
            let file = ScenarioFile::load(&config)?;
            print!("{}", analyze(&file.scenario, &file.run.solver)?);
        }
        Command::Simulate { config, run } => {
            let file = ScenarioFile::load(&config)?;
            let trials = run.trials.or(file.run.trials).unwrap_or(DEFAULT_TRIALS);
            let seed = run.seed.or(file.run.seed).unwrap_or(DEFAULT_SEED);
            print!("{}", run_trials(&file.scenario, trials, seed)?);
        }
        Command::Sweep { config, args } => {
            let file = ScenarioFile::load(&config)?;
            let mut spec = file.sweep_spec(DEFAULT_TRIALS)?;
            apply_sweep_args(&mut spec, &args);
            let seed = args.run.seed.or(file.run.seed).unwrap_or(DEFAULT_SEED);
            sweep(&spec, seed, args.out.as_deref())?;
        }
        Command::Preset { which, args } => {
            let mut spec = preset(which, which.default_trials());
            apply_sweep_args(&mut spec, &args);
            sweep(&spec, args.run.seed.unwrap_or(DEFAULT_SEED), args.out.as_deref())?;
        }
        Command::OracleCheck {
            fixtures,
            runs,
            seed,
            sigmas,
        } => {
            let mut failures = 0;
            for path in &fixtures {
                let fixture = Fixture::parse(&std::fs::read_to_string(path)?)?;
                let cmp = OracleComparison::new(&fixture.oracle()?, fixture.monte_carlo(runs, seed));
                let ok = cmp.within(sigmas);
                failures += usize::from(!ok);
                println!(
                    "{} {}: pe exact {:.6} mc {:.6} ({:.2} se), size exact {:.6} mc {:.6} ({:.2} se)",
                    if ok { "PASS" } else { "FAIL" },
                    path.display(),
                    cmp.exact_pe,
                    cmp.estimate.pe_hat,
                    cmp.pe_sigmas,
                    cmp.exact_mean_size,
                    cmp.estimate.mean_size_hat,
                    cmp.size_sigmas
                );
            }
            if failures > 0 {
                return Err(Error::Parse(format!("{failures} fixture(s) outside {sigmas} standard errors")));
            }
        }
        Command::Graph { config, seed, out } => {
            let file = ScenarioFile::load(&config)?;
            let seeds = TrialSeeds::derive(seed, 0);
            let graph = generate_multilayer(&file.scenario, seeds.graph);
            let types = assign_masks(file.scenario.n, &file.scenario.masks, seeds.masks).type_of;
            write_output(out.as_deref(), &write_edge_list(&graph, Some(&types)))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: cannot start worker threads: {e}");
            return ExitCode::from(1);
        }
    };
    match pool.install(|| run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
