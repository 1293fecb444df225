use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cohesion::decay::{DecayKind, SWEEP_RATES};
use cohesion::fixtures::{self, FixtureSpec};
use cohesion::graph::{largest_weak_component, stats, TemporalMultigraph};
use cohesion::harness::{self, EvalPlan, RunReport};
use cohesion::ingest::{read_edge_file, EdgeFormat};
use cohesion::report::{self, ReportFormat};

#[derive(Parser)]
#[command(name = "cohesion", version, about = "Cohesiveness measures and community-search evaluation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Csv => ReportFormat::Csv,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum Kind {
    Exponential,
    Polynomial,
}

#[derive(Subcommand)]
enum Command {
    /// Print dataset statistics.
    Stats {
        file: PathBuf,
        /// Restrict to the largest weakly connected component.
        #[arg(long)]
        largest_component: bool,
    },
    /// Sample query users (external ids, one per line).
    GenQueries {
        file: PathBuf,
        #[arg(short, long, default_value_t = harness::DEFAULT_N_QUERIES)]
        n: usize,
        #[arg(short, long)]
        seed: u64,
        #[arg(long)]
        largest_component: bool,
    },
    /// Generate a planted-community edge file and its membership map.
    GenFixture {
        #[arg(long)]
        spec: PathBuf,
        /// `.jsonl` / `.ndjson` selects JSON lines, anything else CSV.
        #[arg(long)]
        out: PathBuf,
    },
    /// Run an evaluation plan.
    Run {
        #[arg(long)]
        plan: PathBuf,
        /// Defaults to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Run a plan once per decay rate, sharing the searches.
    SweepDecay {
        #[arg(long)]
        plan: PathBuf,
        #[arg(long, value_delimiter = ',')]
        rates: Option<Vec<f64>>,
        /// Overrides the plan's decay kind.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Convert a JSON report to another format.
    Report {
        input: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn load_graph(path: &Path, largest: bool) -> cohesion::Result<TemporalMultigraph> {
    let g = read_edge_file(path)?;
    Ok(if largest { largest_weak_component(&g) } else { g })
}

fn write_out(reports: &[RunReport], format: Format, out: Option<&Path>) -> cohesion::Result<()> {
    match out {
        Some(path) => report::emit_reports(reports, format.into(), path),
        None => report::write_reports(reports, format.into(), io::stdout().lock()),
    }
}

fn execute(command: Command) -> cohesion::Result<()> {
    let mut stdout = io::stdout().lock();
    let io_err = |e| cohesion::Error::io("<stdout>", e);
    match command {
        Command::Stats {
            file,
            largest_component,
        } => {
            let g = load_graph(&file, largest_component)?;
            let s = stats(&g);
            writeln!(
                stdout,
                "n_users\t{}\nn_events\t{}\nn_timestamps\t{}\ndensity\t{}\ndeg_avg\t{}",
                s.n_users, s.n_events, s.n_timestamps, s.density, s.deg_avg
            )
            .map_err(io_err)?;
        }
        Command::GenQueries {
            file,
            n,
            seed,
            largest_component,
        } => {
            let g = load_graph(&file, largest_component)?;
            let qs = harness::generate_queries(&g, n, seed)?;
            if qs.with_replacement {
                writeln!(stdout, "# sampled with replacement").map_err(io_err)?;
            }
            for q in qs.queries {
                writeln!(stdout, "{}", g.external_id(q)).map_err(io_err)?;
            }
        }
        Command::GenFixture { spec, out } => {
            let fixture = fixtures::generate(&FixtureSpec::load(&spec)?)?;
            let members = fixtures::write_fixture(&fixture, &out, EdgeFormat::from_path(&out))?;
            log::info!("wrote {} and {}", out.display(), members.display());
        }
        Command::Run { plan, out, format } => {
            let plan = EvalPlan::load(&plan)?;
            let report = harness::run(&plan)?;
            write_out(std::slice::from_ref(&report), format, out.as_deref())?;
        }
        Command::SweepDecay {
            plan,
            rates,
            kind,
            out,
            format,
        } => {
            let mut plan = EvalPlan::load(&plan)?;
            if let Some(kind) = kind {
                plan.decay.kind = match kind {
                    Kind::Exponential => DecayKind::Exponential,
                    Kind::Polynomial => DecayKind::Polynomial,
                };
            }
            let rates = rates.unwrap_or_else(|| SWEEP_RATES.to_vec());
            let reports = harness::sweep_decay(&plan, &rates)?;
            write_out(&reports, format, out.as_deref())?;
        }
        Command::Report { input, format, out } => {
            let reports = report::read_json(&input)?;
            write_out(&reports, format, out.as_deref())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("COHESION_LOG", "warn")).init();
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
