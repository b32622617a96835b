use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tvnrel::generator::{Family, GenOptions, RetryRule, LABEL_PROBABILITY, SURVIVAL};
use tvnrel::oracle::ORACLE_LIMIT;
use tvnrel::{Method, Mode, OrderKind, RunOptions};
use tvnrel_cli::bench::{BenchConfig, WORKERS_ENV};
use tvnrel_cli::commands::{self, parse_sizes, timeout_from_secs, Stage};

/// Exact two-terminal reliability of temporal networks.
#[derive(Parser)]
#[command(name = "tvnrel", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the reliability of one graph and print a JSON line.
    Reliability {
        input: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, default_value_t = MethodArg::B)]
        method: MethodArg,
        /// Wall-clock limit in seconds, 0 for none.
        #[arg(long, default_value_t = 0.0)]
        timeout: f64,
        /// Let the oracle run on graphs with more than 16 edges.
        #[arg(long)]
        allow_large_oracle: bool,
    },
    /// Count journeys and STRESes of one graph.
    CountJourneys {
        input: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        /// Also list up to this many journeys as 1-based edge indices.
        #[arg(long)]
        list: Option<usize>,
    },
    /// Generate a random instance in .tgr format.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        gen: GenArgs,
        /// Output path; the graph goes to stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run the pipeline over many generated instances and write CSV rows.
    Bench {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Sizes as `3..7`, `3..=6` or `3,4,5`.
        #[arg(long, value_parser = parse_sizes)]
        sizes: std::vec::Vec<usize>,
        #[arg(long, default_value_t = 100)]
        instances: usize,
        /// Seed of the first instance of every size.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [MethodArg::B, MethodArg::Z])]
        methods: Vec<MethodArg>,
        /// Per-instance limit in seconds, 0 for none.
        #[arg(long, default_value_t = 7200.0)]
        timeout: f64,
        #[command(flatten)]
        gen: GenArgs,
        #[arg(long, env = WORKERS_ENV)]
        workers: Option<usize>,
        /// CSV file to append to; stdout when omitted.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Write one of the diagrams as Graphviz DOT.
    ExportDot {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = StageArg::Journeys)]
        stage: StageArg,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Multi)]
    mode: ModeArg,
    #[arg(long, value_enum, default_value_t = OrderArg::Bfs)]
    order: OrderArg,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value_t = RetryArg::Or)]
    retry_rule: RetryArg,
    #[arg(long, default_value_t = LABEL_PROBABILITY)]
    label_prob: f64,
    #[arg(long, default_value_t = SURVIVAL)]
    survival: f64,
}

impl GenArgs {
    fn options(&self) -> anyhow::Result<GenOptions> {
        for (name, p) in [("label-prob", self.label_prob), ("survival", self.survival)] {
            if !(0.0..=1.0).contains(&p) {
                anyhow::bail!("--{name} {p} outside [0, 1]");
            }
        }
        let retry = match self.retry_rule {
            RetryArg::And => RetryRule::And,
            RetryArg::Or => RetryRule::Or,
        };
        Ok(GenOptions {
            label_prob: self.label_prob,
            survival: self.survival,
            retry,
        })
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum ModeArg {
    Multi,
    Single,
}

#[derive(Copy, Clone, ValueEnum)]
enum MethodArg {
    B,
    Z,
    Oracle,
}

#[derive(Copy, Clone, ValueEnum)]
enum OrderArg {
    Bfs,
    File,
}

#[derive(Copy, Clone, ValueEnum)]
enum RetryArg {
    And,
    Or,
}

#[derive(Copy, Clone, ValueEnum)]
enum FamilyArg {
    Complete,
    Grid3,
}

#[derive(Copy, Clone, ValueEnum)]
enum StageArg {
    Journeys,
    StresB,
    StresZ,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Multi => Mode::MultiHop,
            ModeArg::Single => Mode::SingleHop,
        }
    }
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::B => Method::B,
            MethodArg::Z => Method::Z,
            MethodArg::Oracle => Method::Oracle,
        }
    }
}

impl From<OrderArg> for OrderKind {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Bfs => OrderKind::Bfs,
            OrderArg::File => OrderKind::File,
        }
    }
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Complete => Family::Complete,
            FamilyArg::Grid3 => Family::Grid3,
        }
    }
}

impl From<StageArg> for Stage {
    fn from(s: StageArg) -> Self {
        match s {
            StageArg::Journeys => Stage::Journeys,
            StageArg::StresB => Stage::StresB,
            StageArg::StresZ => Stage::StresZ,
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let stdout = &mut std::io::stdout().lock();
    match cli.command {
        Command::Reliability {
            input,
            search,
            method,
            timeout,
            allow_large_oracle,
        } => {
            let g = commands::read_graph(&input)?;
            let opts = RunOptions {
                mode: search.mode.into(),
                method: method.into(),
                order: search.order.into(),
                timeout: timeout_from_secs(timeout),
                oracle_limit: if allow_large_oracle { usize::MAX } else { ORACLE_LIMIT },
            };
            commands::reliability(&g, &opts, stdout)
        }
        Command::CountJourneys { input, search, list } => {
            let g = commands::read_graph(&input)?;
            commands::count_journeys(&g, search.mode.into(), search.order.into(), list, stdout)
        }
        Command::Gen {
            family,
            size,
            seed,
            gen,
            out,
        } => commands::gen(family.into(), size, seed, &gen.options()?, out.as_deref(), stdout),
        Command::Bench {
            family,
            sizes,
            instances,
            seed,
            search,
            methods,
            timeout,
            gen,
            workers,
            out,
        } => {
            let workers = workers
                .or_else(|| std::thread::available_parallelism().ok().map(|n| n.get()))
                .unwrap_or(1);
            let cfg = BenchConfig {
                family: family.into(),
                sizes,
                instances,
                first_seed: seed,
                mode: search.mode.into(),
                methods: methods.into_iter().map(Into::into).collect(),
                order: search.order.into(),
                gen: gen.options()?,
                timeout: timeout_from_secs(timeout),
                workers,
            };
            commands::run_bench(&cfg, out.as_ref(), stdout)
        }
        Command::ExportDot {
            input,
            stage,
            search,
            out,
        } => {
            let g = commands::read_graph(&input)?;
            commands::export_dot(
                &g,
                stage.into(),
                search.mode.into(),
                search.order.into(),
                out.as_deref(),
                stdout,
            )
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
