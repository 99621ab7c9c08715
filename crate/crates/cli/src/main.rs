mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::bail;
use clap::{Args, Parser, Subcommand, ValueEnum};

/// Power graphs of finite groups: structure checks, isomorphism and metric dimension.
#[derive(Debug, Parser)]
#[command(name = "powergraph", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Args)]
pub struct Flags {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write a Graphviz rendering to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub dot: Option<PathBuf>,
    /// Cross-check against the brute-force oracle (dim, iso).
    #[arg(long, global = true)]
    pub verify: bool,
    /// Wall-clock limit for each oracle search.
    #[arg(long, global = true, env = "POWERGRAPH_BUDGET_SECONDS", default_value_t = 60)]
    pub budget_seconds: u64,
    /// Largest group order to build; for `corpus`, largest order to include.
    #[arg(long, global = true)]
    pub max_order: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GraphKind {
    /// Undirected power graph.
    Graph,
    /// Directed power graph, arc x -> y when y is a power of x.
    Digraph,
    /// Transitive orientation of the power graph.
    Orientation,
    /// Cyclic subgroups ordered by inclusion.
    Subgroups,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Order, element orders, cyclic subgroups and involutions.
    Info { spec: String },
    /// Edges or arcs of a graph built from the group.
    Graph {
        spec: String,
        #[arg(long, value_enum, default_value_t = GraphKind::Graph)]
        kind: GraphKind,
    },
    /// Metric dimension of the power graph.
    Dim { spec: String },
    /// Twin classes and resolving involutions.
    Classes { spec: String },
    /// Decide whether two groups have isomorphic power graphs.
    Iso { first: String, second: String },
    /// Run the structural theorem checks on one group.
    Verify { spec: String },
    /// Run `verify` and `dim` over the built-in corpus.
    Corpus,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Info { .. } => "info",
            Command::Graph { .. } => "graph",
            Command::Dim { .. } => "dim",
            Command::Classes { .. } => "classes",
            Command::Iso { .. } => "iso",
            Command::Verify { .. } => "verify",
            Command::Corpus => "corpus",
        }
    }
}

fn validate(cmd: &Command, flags: &Flags) -> anyhow::Result<()> {
    let name = cmd.name();
    if flags.verify && !matches!(cmd, Command::Dim { .. } | Command::Iso { .. }) {
        bail!("--verify applies to dim and iso only, not {name}");
    }
    if flags.dot.is_some() && matches!(cmd, Command::Iso { .. } | Command::Corpus) {
        bail!("--dot is not available for {name}");
    }
    if flags.max_order == Some(0) {
        bail!("--max-order must be positive");
    }
    Ok(())
}

fn run(cli: &Cli) -> anyhow::Result<commands::Report> {
    validate(&cli.command, &cli.flags)?;
    let f = &cli.flags;
    match &cli.command {
        Command::Info { spec } => commands::info(spec, f),
        Command::Graph { spec, kind } => commands::graph(spec, *kind, f),
        Command::Dim { spec } => commands::dim(spec, f),
        Command::Classes { spec } => commands::classes(spec, f),
        Command::Iso { first, second } => commands::iso(first, second, f),
        Command::Verify { spec } => commands::verify(spec, f),
        Command::Corpus => commands::corpus(f),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.flags.json {
                println!("{}", serde_json::to_string_pretty(&report.json).expect("reports serialize"));
            } else {
                print!("{}", report.text);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
