//! `kcl`: list or count k-cliques, cross-check the engines, generate graphs.

mod report;

use std::fmt::Display;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use kclique::{
    brute_force, generate, list, read_edge_list_file, stats, write_binary, write_edge_list,
    Algorithm, CliqueSink, CountSink, Error as CoreError, ForkSink, Graph, ListOptions,
    ListOutcome, LoadedGraph, OrderingKind, ParallelPlan, Strategy, WriterSink,
};

use report::{millis, RunReport, Scratch, Stats, Timings};

/// Exit status for a crosscheck disagreement.
const DISAGREE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "kcl", version, about = "k-clique listing and counting")]
#[command(args_conflicts_with_subcommands = true, subcommand_negates_reqs = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run every engine (and the brute-force oracle) and compare counts.
    Crosscheck(CrosscheckArgs),
    /// Write a generated graph as an edge list.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Sdegree,
    Bitcol,
    Chiba,
    Kclist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OrderingArg {
    Degree,
    Degeneracy,
    Color,
}

impl From<OrderingArg> for OrderingKind {
    fn from(o: OrderingArg) -> Self {
        match o {
            OrderingArg::Degree => OrderingKind::Degree,
            OrderingArg::Degeneracy => OrderingKind::Degeneracy,
            OrderingArg::Color => OrderingKind::Color,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Serial,
    Node,
    Edge,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Serial => Strategy::Serial,
            StrategyArg::Node => Strategy::Node,
            StrategyArg::Edge => Strategy::Edge,
        }
    }
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Edge list (or binary cache) to read.
    #[arg(long, required = true)]
    input: Option<PathBuf>,

    /// Clique size.
    #[arg(short, required = true, value_parser = clap::value_parser!(u64).range(1..))]
    k: Option<u64>,

    #[arg(long, value_enum, default_value_t = AlgoArg::Sdegree)]
    algo: AlgoArg,

    /// Vertex ordering for kclist [default: degeneracy].
    #[arg(long, value_enum)]
    ordering: Option<OrderingArg>,

    #[arg(long, value_enum, default_value_t = StrategyArg::Serial)]
    strategy: StrategyArg,

    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,

    /// Print every clique, one per line, as input labels.
    #[arg(long)]
    emit: bool,

    /// Print the report as JSON.
    #[arg(long)]
    json: bool,

    #[arg(long)]
    no_precore: bool,

    #[arg(long)]
    no_prelist: bool,

    /// Payload bits per bitmap word for bitcol [default: 64].
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=128))]
    word_bits: Option<u32>,

    /// Visit units in a seeded random order.
    #[arg(long)]
    seed: Option<u64>,

    /// Stop taking new roots after this many seconds.
    #[arg(long, value_name = "SECONDS")]
    time_limit: Option<f64>,
}

#[derive(Args, Debug)]
struct CrosscheckArgs {
    #[arg(long)]
    input: PathBuf,

    /// Clique sizes, comma separated.
    #[arg(short, required = true, value_delimiter = ',', value_parser = clap::value_parser!(u64).range(1..))]
    k: Vec<u64>,

    /// Compare engines with each other only.
    #[arg(long)]
    skip_oracle: bool,

    /// Workers for the parallel runs.
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,

    /// Add one to every sdegree count.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Model {
    Gnp,
    Complete,
    PlantedClique,
    Barabasi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Binary,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(value_enum)]
    model: Model,

    #[arg(short)]
    n: usize,

    /// Edge probability (gnp, planted-clique).
    #[arg(short)]
    p: Option<f64>,

    /// Planted clique size (planted-clique).
    #[arg(long)]
    clique: Option<usize>,

    /// Edges per new vertex (barabasi).
    #[arg(long)]
    attach: Option<usize>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Output file [default: stdout].
    #[arg(long, short)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

fn usage(kind: ErrorKind, msg: impl Display) -> anyhow::Error {
    Cli::command().error(kind, msg).into()
}

fn required<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| {
        usage(
            ErrorKind::MissingRequiredArgument,
            format!("{flag} is required for this model"),
        )
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Some(Command::Crosscheck(args)) => crosscheck(&args),
        Some(Command::Gen(args)) => gen(&args).map(|()| ExitCode::SUCCESS),
        None => run(&cli.run).map(|()| ExitCode::SUCCESS),
    };
    match result {
        Ok(code) => code,
        Err(e) => match e.downcast::<clap::Error>() {
            Ok(usage) => usage.exit(),
            Err(e) => {
                eprintln!("error: {e:#}");
                ExitCode::FAILURE
            }
        },
    }
}

fn load(path: &Path) -> Result<(LoadedGraph, Duration)> {
    let started = Instant::now();
    let g = read_edge_list_file(path).with_context(|| format!("reading {}", path.display()))?;
    Ok((g, started.elapsed()))
}

fn dataset_name(path: &Path) -> String {
    path.file_name().map_or_else(
        || path.display().to_string(),
        |n| n.to_string_lossy().into_owned(),
    )
}

/// Turns the flag combination into an engine, options and plan, rejecting
/// combinations that make no sense.
fn configure(args: &RunArgs, k: usize) -> Result<(Algorithm, ListOptions, ParallelPlan)> {
    let algo = match args.algo {
        AlgoArg::Sdegree => Algorithm::SDegree,
        AlgoArg::Bitcol => Algorithm::BitCol,
        AlgoArg::Chiba => Algorithm::Chiba,
        AlgoArg::Kclist => Algorithm::KClist(
            args.ordering
                .map_or(OrderingKind::Degeneracy, OrderingKind::from),
        ),
    };
    if args.ordering.is_some() && args.algo != AlgoArg::Kclist {
        return Err(usage(
            ErrorKind::ArgumentConflict,
            "--ordering applies to --algo kclist only",
        ));
    }
    if args.word_bits.is_some() && args.algo != AlgoArg::Bitcol {
        return Err(usage(
            ErrorKind::ArgumentConflict,
            "--word-bits applies to --algo bitcol only",
        ));
    }
    let strategy = Strategy::from(args.strategy);
    if strategy != Strategy::Serial && !algo.supports_parallel() {
        return Err(usage(
            ErrorKind::ArgumentConflict,
            format!(
                "--algo {} runs serially; --strategy {strategy} is not available",
                algo.name()
            ),
        ));
    }
    if strategy == Strategy::Serial && args.workers > 1 {
        return Err(usage(
            ErrorKind::ArgumentConflict,
            "--workers above 1 needs --strategy node or edge",
        ));
    }
    if strategy == Strategy::Edge && k < 3 {
        return Err(usage(
            ErrorKind::ArgumentConflict,
            "--strategy edge needs -k 3 or more",
        ));
    }
    if args
        .time_limit
        .is_some_and(|t| !(t.is_finite() && t >= 0.0))
    {
        return Err(usage(
            ErrorKind::InvalidValue,
            "--time-limit must be a non-negative number of seconds",
        ));
    }

    let opts = ListOptions {
        precore: !args.no_precore,
        prelist: !args.no_prelist,
        word_bits: args.word_bits.unwrap_or(64),
        deadline: args
            .time_limit
            .map(|t| Instant::now() + Duration::from_secs_f64(t)),
        ..ListOptions::default()
    };
    let mut par = ParallelPlan::with_strategy(strategy, args.workers as usize);
    par.shuffle_seed = args.seed;
    Ok((algo, opts, par))
}

fn run(args: &RunArgs) -> Result<()> {
    let (input, k) = match (&args.input, args.k) {
        (Some(input), Some(k)) => (input, k as usize),
        _ => {
            return Err(usage(
                ErrorKind::MissingRequiredArgument,
                "--input and -k are required",
            ))
        }
    };
    let (algo, opts, par) = configure(args, k)?;
    let (loaded, load_time) = load(input)?;

    let mut report;
    if args.emit {
        let stdout = BufWriter::new(io::stdout());
        let mut sink = WriterSink::new(stdout, Arc::from(loaded.labels.as_slice()));
        let outcome = list(&loaded.graph, k, algo, &opts, &par, &mut sink)?;
        sink.finish().context("writing cliques")?;
        report = build_report(args, input, k, algo, &par, &loaded.graph, &outcome);
        report.count = sink.count().value();
    } else {
        let mut sink = CountSink::new();
        let outcome = list(&loaded.graph, k, algo, &opts, &par, &mut sink)?;
        report = build_report(args, input, k, algo, &par, &loaded.graph, &outcome);
    }
    report.timings_ms.load = millis(load_time);

    if report.saturated {
        eprintln!("warning: the clique count exceeds 2^64-1 and was saturated");
    }
    if report.timed_out {
        eprintln!("warning: time limit reached; the count covers the roots finished so far");
    }
    let text = if args.json {
        serde_json::to_string_pretty(&report)? + "\n"
    } else {
        report.to_string()
    };
    // Cliques own stdout when emitting.
    if args.emit {
        io::stderr().write_all(text.as_bytes())?;
    } else {
        io::stdout().write_all(text.as_bytes())?;
    }
    Ok(())
}

fn build_report(
    args: &RunArgs,
    input: &Path,
    k: usize,
    algo: Algorithm,
    par: &ParallelPlan,
    g: &Graph,
    outcome: &ListOutcome,
) -> RunReport {
    let s = stats(g, None);
    let peak = outcome.peak_scratch();
    RunReport {
        dataset: dataset_name(input),
        k,
        algorithm: algo.name().to_string(),
        ordering: algo.ordering().map(|o| o.name().to_string()),
        strategy: par.strategy.to_string(),
        workers: par.workers,
        precore: !args.no_precore,
        prelist: !args.no_prelist,
        count: outcome.count.value(),
        saturated: outcome.count.is_saturated(),
        timed_out: outcome.timed_out,
        timings_ms: Timings {
            load: 0.0,
            preprocess: millis(outcome.timings.preprocess),
            order: millis(outcome.timings.order),
            list: millis(outcome.timings.list),
        },
        peak_scratch: Scratch {
            ids: peak.ids,
            words: peak.words,
        },
        stats: Stats {
            n: s.n,
            m: s.m,
            beta: s.degeneracy,
            gamma: s.h_index,
            delta: outcome.max_out_degree,
        },
    }
}

/// One column of the crosscheck matrix.
struct Column {
    name: String,
    algo: Algorithm,
    par: ParallelPlan,
}

fn columns(workers: usize) -> Vec<Column> {
    let mut cols: Vec<Column> = Algorithm::ALL
        .into_iter()
        .map(|algo| Column {
            name: algo.label(),
            algo,
            par: ParallelPlan::serial(),
        })
        .collect();
    for algo in [Algorithm::SDegree, Algorithm::BitCol] {
        for par in [ParallelPlan::node(workers), ParallelPlan::edge(workers)] {
            cols.push(Column {
                name: format!("{}@{}", algo.label(), par.strategy),
                algo,
                par,
            });
        }
    }
    cols
}

fn count_with<S: ForkSink>(
    g: &Graph,
    k: usize,
    col: &Column,
    sink: &mut S,
) -> Result<u64, CoreError> {
    let par = if k < 3 && col.par.strategy == Strategy::Edge {
        ParallelPlan::node(col.par.workers)
    } else {
        col.par.clone()
    };
    list(g, k, col.algo, &ListOptions::default(), &par, sink)?;
    Ok(sink.count().value())
}

fn crosscheck(args: &CrosscheckArgs) -> Result<ExitCode> {
    let (loaded, _) = load(&args.input)?;
    let g = &loaded.graph;
    let cols = columns(args.workers as usize);

    let mut header = vec!["k".to_string()];
    if !args.skip_oracle {
        header.push("oracle".into());
    }
    header.extend(cols.iter().map(|c| c.name.clone()));
    let widths: Vec<usize> = header.iter().map(|h| h.len().max(6)).collect();
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    println!("{}", line(&header));

    let mut first_disagreement = None;
    for &k in &args.k {
        let k = k as usize;
        let mut counts: Vec<(String, u64)> = Vec::new();
        if !args.skip_oracle {
            match brute_force(g, k, &mut CountSink::new()) {
                Ok(c) => counts.push(("oracle".into(), c.value())),
                Err(e @ CoreError::GuardExceeded { .. }) => {
                    return Err(usage(
                        ErrorKind::InvalidValue,
                        format!("{e}; pass --skip-oracle to compare engines only"),
                    ))
                }
                Err(e) => return Err(e.into()),
            }
        }
        for col in &cols {
            let mut c = count_with(g, k, col, &mut CountSink::new())?;
            if args.inject_fault && col.algo == Algorithm::SDegree {
                c += 1;
            }
            counts.push((col.name.clone(), c));
        }
        let mut cells = vec![k.to_string()];
        cells.extend(counts.iter().map(|(_, c)| c.to_string()));
        println!("{}", line(&cells));
        if first_disagreement.is_none() {
            let (ref_name, ref_count) = &counts[0];
            if let Some((name, c)) = counts.iter().find(|(_, c)| c != ref_count) {
                first_disagreement = Some(format!("k={k}: {ref_name}={ref_count} but {name}={c}"));
            }
        }
    }
    match first_disagreement {
        Some(d) => {
            eprintln!("disagreement at {d}");
            Ok(ExitCode::from(DISAGREE))
        }
        None => {
            println!("all agree");
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn gen(args: &GenArgs) -> Result<()> {
    let invalid = |e: CoreError| usage(ErrorKind::InvalidValue, e);
    let g = match args.model {
        Model::Complete => generate::complete(args.n),
        Model::Gnp => generate::gnp(args.n, required(args.p, "-p")?, args.seed).map_err(invalid)?,
        Model::PlantedClique => {
            let p = required(args.p, "-p")?;
            let size = required(args.clique, "--clique")?;
            let (g, planted) =
                generate::planted_clique(args.n, p, size, args.seed).map_err(invalid)?;
            let ids: Vec<String> = planted.iter().map(|v| v.to_string()).collect();
            eprintln!("planted: {}", ids.join(" "));
            g
        }
        Model::Barabasi => {
            let attach = required(args.attach, "--attach")?;
            generate::barabasi_albert(args.n, attach, args.seed).map_err(invalid)?
        }
    };
    let out: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("creating {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    match args.format {
        Format::Text => write_edge_list(&g, None, out)?,
        Format::Binary => write_binary(&g, out)?,
    }
    Ok(())
}
