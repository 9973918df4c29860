use std::net::SocketAddr;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use median_client::MedianClient;
use median_core::bench::{
    emit_csv, emit_plots, BenchConfig, CostSpec, DatasetSource, Heuristic, RunReport,
};
use median_core::datasets::{load_cost_matrix, load_strings, DatasetSpec};
use median_core::edit::Alphabet;
use median_service::api::{DistanceRequest, Init, RefineRequest};

/// Approximate median strings by ranked single-operation refinement.
#[derive(Parser)]
#[command(name = "median", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value = "127.0.0.1:7878")]
        addr: SocketAddr,
    },
    /// Refine a median for one string set.
    Compute(ComputeArgs),
    /// Run a benchmark described by a key=value config file.
    Bench(BenchArgs),
    /// Edit distance between two strings.
    Distance(DistanceArgs),
}

#[derive(Args)]
struct Remote {
    /// Use a running service instead of an embedded one.
    #[arg(long, global = true)]
    server: Option<String>,
}

#[derive(Args)]
struct ComputeArgs {
    /// String-set file.
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    input: Option<PathBuf>,
    /// Generator spec, e.g. `kind=perturbed_cluster,alphabet_size=8,count=20`.
    #[arg(long)]
    gen: Option<String>,
    /// Cost matrix file, or one of table1, unit, circular.
    #[arg(long, default_value = "unit")]
    costs: String,
    #[arg(long, conflicts_with = "costs")]
    builtin_table1: bool,
    /// `setmedian` or an explicit starting string.
    #[arg(long, default_value = "setmedian")]
    init: String,
    #[arg(long, default_value = "repercussion")]
    heuristic: Heuristic,
    #[arg(long)]
    positive_only: bool,
    /// Disable the deletion repercussion term.
    #[arg(long)]
    no_del_rep: bool,
    #[arg(long)]
    max_iterations: Option<usize>,
    /// Generator seed; overrides a seed given in `--gen`.
    #[arg(long)]
    seed: Option<u64>,
    /// Shuffle exactly tied operations with this seed.
    #[arg(long)]
    tie_seed: Option<u64>,
    /// Per-iteration metrics CSV.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    plots: Option<PathBuf>,
    #[command(flatten)]
    remote: Remote,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    config: PathBuf,
    /// Overrides `out` from the config.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides `plots` from the config.
    #[arg(long)]
    plots: Option<PathBuf>,
    #[command(flatten)]
    remote: Remote,
}

#[derive(Args)]
struct DistanceArgs {
    source: String,
    target: String,
    /// Symbols in order; inferred from the strings when omitted.
    #[arg(long)]
    alphabet: Option<String>,
    #[arg(long, default_value = "unit")]
    costs: String,
    /// Print an optimal edit script.
    #[arg(long)]
    script: bool,
    #[command(flatten)]
    remote: Remote,
}

#[tokio::main]
async fn main() -> Result<()> {
    tracing_subscriber::fmt()
        .with_env_filter(tracing_subscriber::EnvFilter::from_default_env())
        .with_writer(std::io::stderr)
        .init();
    match Cli::parse().command {
        Command::Serve { addr } => {
            let listener = tokio::net::TcpListener::bind(addr).await?;
            eprintln!("listening on {}", listener.local_addr()?);
            median_service::serve(listener).await?;
            Ok(())
        }
        Command::Compute(args) => compute(args).await,
        Command::Bench(args) => bench(args).await,
        Command::Distance(args) => distance(args).await,
    }
}

async fn connect(remote: &Remote) -> Result<MedianClient> {
    match &remote.server {
        Some(url) => Ok(MedianClient::new(url.clone())),
        None => {
            let (addr, _) = median_service::spawn(([127, 0, 0, 1], 0).into()).await?;
            Ok(MedianClient::new(format!("http://{addr}")))
        }
    }
}

fn cost_spec(name: &str, alphabet: &Alphabet) -> Result<CostSpec> {
    Ok(match name {
        "table1" => CostSpec::Table1,
        "unit" => CostSpec::Unit,
        "circular" => CostSpec::Circular,
        path => CostSpec::from_model(
            &load_cost_matrix(path, Some(alphabet))
                .with_context(|| format!("reading cost matrix {path}"))?,
        ),
    })
}

fn write_outputs(report: &RunReport, out: Option<&PathBuf>, plots: Option<&PathBuf>) -> Result<()> {
    if let Some(path) = out {
        emit_csv(report, path).with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(dir) = plots {
        emit_plots(report, dir).with_context(|| format!("writing plots to {}", dir.display()))?;
    }
    Ok(())
}

async fn compute(args: ComputeArgs) -> Result<()> {
    let dataset = match (&args.input, &args.gen) {
        (Some(path), _) => DatasetSource::from_set(
            &load_strings(path).with_context(|| format!("reading {}", path.display()))?,
        ),
        (None, Some(text)) => {
            let mut spec = DatasetSpec::parse_kv(text)?;
            if let Some(seed) = args.seed {
                spec.seed = seed;
            }
            DatasetSource::Generate { spec }
        }
        (None, None) => bail!("one of --input or --gen is required"),
    };
    let costs = if args.builtin_table1 {
        CostSpec::Table1
    } else {
        cost_spec(&args.costs, &dataset.alphabet()?)?
    };
    let init = match args.init.as_str() {
        "setmedian" | "set_median" => Init::SetMedian,
        s => Init::String(s.to_string()),
    };
    let req = RefineRequest {
        dataset,
        costs,
        heuristic: args.heuristic,
        init,
        positive_only: args.positive_only,
        deletion_repercussion: !args.no_del_rep,
        max_iterations: args.max_iterations,
        tie_seed: args.tie_seed,
    };
    let client = connect(&args.remote).await?;
    let resp = client.refine(&req).await?;
    let run = &resp.report.runs[0];
    println!("init\t{}\t{}", resp.init, run.init_sum);
    println!("median\t{}\t{}", resp.median, resp.sum);
    println!(
        "accepted\t{}\tdequeued\t{}\ttotal_ops\t{}",
        run.accepted_ops,
        run.ops_dequeued,
        run.counts.total()
    );
    write_outputs(&resp.report, args.out.as_ref(), args.plots.as_ref())
}

async fn bench(args: BenchArgs) -> Result<()> {
    let config = BenchConfig::load(&args.config)
        .with_context(|| format!("reading {}", args.config.display()))?;
    let req = config.to_request()?;
    let client = connect(&args.remote).await?;
    let report = client.bench(&req).await?;
    for row in &report.summary {
        println!(
            "{}\t{}\truns {}\tsum {:.3}\tops {:.0}\tevals {:.0}",
            row.heuristic.name(),
            row.set_size,
            row.runs,
            row.mean_final_sum,
            row.mean_total_ops,
            row.mean_distance_evals
        );
    }
    let out = args.out.as_ref().or(config.out.as_ref());
    let plots = args.plots.as_ref().or(config.plots.as_ref());
    if out.is_none() && plots.is_none() {
        eprintln!("no `out` or `plots` configured; results printed only");
    }
    write_outputs(&report, out, plots)
}

async fn distance(args: DistanceArgs) -> Result<()> {
    let alphabet = match (&args.alphabet, args.costs.as_str()) {
        (Some(chars), _) => Alphabet::new(chars.chars())?,
        (None, "table1") => median_core::datasets::builtin_table1().0,
        (None, _) => {
            let mut chars: Vec<char> = args.source.chars().chain(args.target.chars()).collect();
            chars.sort_unstable();
            chars.dedup();
            Alphabet::new(chars)?
        }
    };
    let req = DistanceRequest {
        costs: cost_spec(&args.costs, &alphabet)?,
        alphabet,
        source: args.source,
        target: args.target,
        script: args.script,
    };
    let client = connect(&args.remote).await?;
    let resp = client.distance(&req).await?;
    println!("{}", resp.distance);
    if let Some(script) = resp.script {
        for op in script.ops {
            let sym = |c: Option<char>| c.map_or("-".to_string(), String::from);
            println!(
                "{}\t{}\t{}\t{}",
                op.kind.name(),
                op.position,
                sym(op.from),
                sym(op.to)
            );
        }
    }
    Ok(())
}
