//! Command-line definitions and dispatch.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pzf_core::{ChainOptions, VertexId, DEFAULT_STATE_CAP};

use crate::commands::{cmd_census, cmd_ept, cmd_family, cmd_matrix, cmd_simulate};
use crate::error::{input, Result};
use crate::experiments::{
    cmd_add_edge, cmd_bounds, cmd_conjecture_kmn, cmd_conjecture_sun, cmd_fit, cmd_trend,
};
use crate::output::{Format, Report};
use crate::source::{default_corpus, load, GraphSource, NamedGraph};
use crate::tables::{cmd_table, TableId, KMN_MAX, KN_MAX, SUN_MAX};

#[derive(Debug, Parser)]
#[command(name = "pzf", version, about = "Exact and simulated propagation times for probabilistic zero forcing")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    /// Significant digits in decimal columns.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=60))]
    pub digits: Option<u32>,

    /// Largest number of reachable states the subset engine may build.
    #[arg(long, global = true, env = "PZF_STATE_CAP", default_value_t = DEFAULT_STATE_CAP)]
    pub state_cap: usize,
}

/// Exactly one graph source.
#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SourceArgs {
    /// Family spec, e.g. `k 5`, `kmn 2 3`, `sun 6`, `tadpole4 5`, `paw`.
    #[arg(long, num_args = 1..=3, value_name = "SPEC")]
    pub family: Option<Vec<String>>,
    /// A graph6 string.
    #[arg(long, value_name = "G6")]
    pub graph6: Option<String>,
    /// A file with one graph6 string per line.
    #[arg(long, value_name = "PATH")]
    pub graph6_file: Option<PathBuf>,
    /// An edge-list file: a header `n m`, then one `u v` pair per line.
    #[arg(long, value_name = "PATH")]
    pub edges: Option<PathBuf>,
}

/// At most one graph source.
#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
pub struct OptionalSourceArgs {
    /// Family spec, e.g. `cycle 6`.
    #[arg(long, num_args = 1..=3, value_name = "SPEC")]
    pub family: Option<Vec<String>>,
    /// A graph6 string.
    #[arg(long, value_name = "G6")]
    pub graph6: Option<String>,
    /// A file with one graph6 string per line.
    #[arg(long, value_name = "PATH")]
    pub graph6_file: Option<PathBuf>,
    /// An edge-list file.
    #[arg(long, value_name = "PATH")]
    pub edges: Option<PathBuf>,
}

fn to_source(
    family: &Option<Vec<String>>,
    graph6: &Option<String>,
    graph6_file: &Option<PathBuf>,
    edges: &Option<PathBuf>,
) -> Result<Option<GraphSource>> {
    Ok(match (family, graph6, graph6_file, edges) {
        (Some(f), ..) => Some(GraphSource::family(f)?),
        (_, Some(g), ..) => Some(GraphSource::Graph6(g.clone())),
        (_, _, Some(p), _) => Some(GraphSource::Graph6File(p.clone())),
        (.., Some(p)) => Some(GraphSource::EdgeList(p.clone())),
        _ => None,
    })
}

impl SourceArgs {
    pub fn graphs(&self) -> Result<Vec<NamedGraph>> {
        let src = to_source(&self.family, &self.graph6, &self.graph6_file, &self.edges)?
            .ok_or_else(|| input("a graph source is required"))?;
        load(&src)
    }
}

impl OptionalSourceArgs {
    pub fn graphs(&self) -> Result<Option<Vec<NamedGraph>>> {
        to_source(&self.family, &self.graph6, &self.graph6_file, &self.edges)?
            .map(|s| load(&s))
            .transpose()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Conjecture {
    /// Bipartite start-side comparison.
    Kmn,
    /// Successive n-Sun differences.
    Sun,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact expected propagation time, per vertex or from a start set.
    Ept {
        #[command(flatten)]
        source: SourceArgs,
        /// Start set as comma-separated vertices; omit for every vertex plus the minimum.
        #[arg(long, value_delimiter = ',')]
        start: Option<Vec<VertexId>>,
    },
    /// Ordered states and transition probabilities.
    Matrix {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        start: Vec<VertexId>,
        /// Use the lumped chain of a k, kmn or sun family.
        #[arg(long)]
        aggregate: bool,
    },
    /// Monte Carlo estimate of the propagation time.
    Simulate {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, value_delimiter = ',', default_value = "0")]
        start: Vec<VertexId>,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Regenerate a reference table.
    Table {
        #[arg(value_enum)]
        table: TableId,
        /// Largest size (order, n, or part size).
        #[arg(long)]
        max: Option<usize>,
        /// Compare against the bundled reference values; exit 4 on mismatch.
        #[arg(long)]
        assert: bool,
    },
    /// Describe a generated family instance.
    Family {
        #[arg(required = true, num_args = 1..=3, value_name = "SPEC")]
        spec: Vec<String>,
    },
    /// Check ept(G, S) <= e/(e-1) (n - |S|), or emit the K_n fit data.
    Bounds {
        #[command(flatten)]
        source: OptionalSourceArgs,
        /// Emit (n, ept(K_n), 1.4 ln ln n + 2.5) instead.
        #[arg(long)]
        fit: bool,
        #[arg(long, default_value_t = KN_MAX)]
        max: usize,
        /// Exit 4 if any bound is violated.
        #[arg(long)]
        assert: bool,
    },
    /// Scan the open comparisons for bipartite and sun graphs.
    Conjectures {
        #[arg(value_enum)]
        which: Conjecture,
        #[arg(long)]
        max: Option<usize>,
    },
    /// Compare T_{4,m} with T'_{4,m} for each given m.
    AddEdge {
        #[arg(required = true)]
        m: Vec<usize>,
    },
    /// ept(G) and minimizing vertices for every graph in a graph6 file.
    Census {
        #[arg(long, value_name = "PATH")]
        graph6_file: PathBuf,
    },
    /// Simulated growth of ept for a cycle plus a universal vertex.
    Trend {
        #[arg(long, default_value_t = pzf_core::MAX_VERTICES)]
        max_order: usize,
        #[arg(long, default_value_t = 2_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

pub fn run(cli: &Cli) -> Result<Report> {
    let opts = ChainOptions {
        state_cap: cli.state_cap,
    };
    let digits = cli.digits.unwrap_or(6);
    match &cli.command {
        Command::Ept { source, start } => cmd_ept(&source.graphs()?, start.as_deref(), digits, opts),
        Command::Matrix {
            source,
            start,
            aggregate,
        } => {
            let graphs = source.graphs()?;
            let [g] = graphs.as_slice() else {
                return Err(input("matrix takes a single graph"));
            };
            cmd_matrix(g, start, *aggregate, opts)
        }
        Command::Simulate {
            source,
            start,
            trials,
            seed,
        } => cmd_simulate(&source.graphs()?, start, *trials, *seed, digits, opts),
        Command::Table { table, max, assert } => cmd_table(*table, *max, cli.digits, *assert),
        Command::Family { spec } => match GraphSource::family(spec)? {
            GraphSource::Family(f) => cmd_family(f),
            _ => unreachable!("family specs parse to families"),
        },
        Command::Bounds {
            source,
            fit,
            max,
            assert,
        } => {
            if *fit {
                return cmd_fit(*max);
            }
            let graphs = match source.graphs()? {
                Some(g) => g,
                None => default_corpus()
                    .into_iter()
                    .map(NamedGraph::from_family)
                    .collect::<Result<_>>()?,
            };
            cmd_bounds(&graphs, opts, *assert)
        }
        Command::Conjectures { which, max } => match which {
            Conjecture::Kmn => cmd_conjecture_kmn(max.unwrap_or(KMN_MAX)),
            Conjecture::Sun => cmd_conjecture_sun(max.unwrap_or(SUN_MAX)),
        },
        Command::AddEdge { m } => cmd_add_edge(m, opts),
        Command::Census { graph6_file } => {
            cmd_census(&load(&GraphSource::Graph6File(graph6_file.clone()))?, digits, opts)
        }
        Command::Trend {
            max_order,
            trials,
            seed,
        } => cmd_trend(*max_order, *trials, *seed),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> std::result::Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("pzf").chain(args.iter().copied()))
    }

    #[test]
    fn definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }

    #[test]
    fn exactly_one_source() {
        assert!(parse(&["ept"]).is_err());
        assert!(parse(&["ept", "--family", "paw", "--graph6", "C~"]).is_err());
        assert!(parse(&["ept", "--family", "kmn", "2", "3"]).is_ok());
    }

    #[test]
    fn start_list_and_globals() {
        let cli = parse(&["ept", "--graph6", "C~", "--start", "0,2", "--format", "json"]).unwrap();
        assert_eq!(cli.format, Format::Json);
        match cli.command {
            Command::Ept { start, .. } => assert_eq!(start, Some(vec![0, 2])),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn runs_table_command() {
        let cli = parse(&["table", "small", "--assert"]).unwrap();
        let report = run(&cli).unwrap();
        assert_eq!((report.rows.len(), report.failures), (10, 0));
    }
}
