use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use charnet_core::features::FeatureMode;
use charnet_core::rng::DEFAULT_SEED;
use charnet_core::ModelKind;

mod commands;
mod error;

use error::CliError;

/// Character network mining and random-graph model selection.
#[derive(Debug, Parser)]
#[command(name = "charnet", version, about)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, env = "CHARNET_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

/// A graph given as an edge CSV, optionally with its node CSV.
#[derive(Debug, Args)]
struct GraphInput {
    /// Edge CSV with `Source,Target[,Weight]` columns.
    edges: PathBuf,
    /// Node CSV with `Id,Label` columns; without it node ids are taken
    /// from the edge list.
    #[arg(long)]
    nodes: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a character network from text and an alias table.
    Extract {
        text: PathBuf,
        #[arg(long)]
        aliases: PathBuf,
        /// Largest token distance between co-occurring names.
        #[arg(long, default_value_t = charnet_core::extract::WindowConfig::DEFAULT_DISTANCE)]
        distance: usize,
        #[arg(long, default_value = "nodes.csv")]
        out_nodes: PathBuf,
        #[arg(long, default_value = "edges.csv")]
        out_edges: PathBuf,
        /// Also write the network as GEXF.
        #[arg(long)]
        gexf: Option<PathBuf>,
    },
    /// Print global metrics as one CSV row.
    Stats {
        #[command(flatten)]
        input: GraphInput,
        /// Emit JSON instead of CSV.
        #[arg(long)]
        json: bool,
    },
    /// Write centrality and community CSVs and print the top characters.
    Analyze {
        #[command(flatten)]
        input: GraphInput,
        /// `all` or one of weighted_degree, closeness, betweenness,
        /// eigencentrality, pagerank.
        #[arg(long, default_value = "all")]
        measure: String,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Sample random graphs whose parameters match a network.
    Generate {
        #[arg(long, value_parser = parse_model)]
        model: ModelKind,
        /// Edge CSV of the network to match.
        #[arg(long = "match")]
        target: PathBuf,
        #[arg(long)]
        nodes: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Print the feature vector of a network as CSV.
    Profile {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value = "full", value_parser = parse_mode)]
        mode: FeatureMode,
    },
    /// Print normalized Laplacian eigenvalues or their histogram.
    Spectrum {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        histogram: bool,
    },
    /// Decide which random graph model best explains a network.
    Select {
        /// Edge CSV; omit when using `--batch`.
        edges: Option<PathBuf>,
        #[arg(long)]
        nodes: Option<PathBuf>,
        /// Run every `.csv` edge list in a directory and count selections.
        #[arg(long, conflicts_with_all = ["edges", "nodes", "csv"])]
        batch: Option<PathBuf>,
        #[arg(long, default_value = "full", value_parser = parse_mode)]
        mode: FeatureMode,
        #[arg(long, default_value_t = charnet_core::learn::DEFAULT_SAMPLES)]
        samples: usize,
        /// Report path (JSON, or the aggregate CSV with `--batch`);
        /// stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write the classifier-by-model score matrix.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn parse_model(s: &str) -> Result<ModelKind, String> {
    s.parse().map_err(|e: charnet_core::Error| e.to_string())
}

fn parse_mode(s: &str) -> Result<FeatureMode, String> {
    s.parse().map_err(|e: charnet_core::Error| e.to_string())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let seed = cli.seed.into();
    match cli.command {
        Command::Extract {
            text,
            aliases,
            distance,
            out_nodes,
            out_edges,
            gexf,
        } => commands::extract(&text, &aliases, distance, &out_nodes, &out_edges, gexf.as_deref()),
        Command::Stats { input, json } => commands::stats(&input.edges, input.nodes.as_deref(), json),
        Command::Analyze {
            input,
            measure,
            out_dir,
        } => commands::analyze(&input.edges, input.nodes.as_deref(), &measure, &out_dir, seed),
        Command::Generate {
            model,
            target,
            nodes,
            count,
            out_dir,
        } => commands::generate(model, &target, nodes.as_deref(), count, &out_dir, seed),
        Command::Profile { input, mode } => commands::profile(&input.edges, input.nodes.as_deref(), mode),
        Command::Spectrum { input, histogram } => commands::spectrum(&input.edges, input.nodes.as_deref(), histogram),
        Command::Select {
            edges,
            nodes,
            batch,
            mode,
            samples,
            out,
            csv,
        } => {
            let config = charnet_core::learn::SelectConfig {
                samples,
                ..charnet_core::learn::SelectConfig::new(mode, seed)
            };
            match (batch, edges) {
                (Some(dir), _) => commands::select_batch(&dir, &config, out.as_deref()),
                (None, Some(edges)) => {
                    commands::select(&edges, nodes.as_deref(), &config, out.as_deref(), csv.as_deref())
                }
                (None, None) => Err(CliError::Usage("select needs an edge CSV or --batch <dir>".into())),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
