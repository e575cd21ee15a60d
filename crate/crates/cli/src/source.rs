//! Loading graphs from family specs, graph6 strings or files, and edge lists.

use std::path::{Path, PathBuf};

use pzf_core::{graph6, Family, Graph};

use crate::error::{input, CliError, Result};

/// Exactly one way of naming the input graph(s).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSource {
    Family(Family),
    Graph6(String),
    Graph6File(PathBuf),
    EdgeList(PathBuf),
}

impl GraphSource {
    /// Accepts tokens like `["kmn", "2", "3"]` or a single quoted `["kmn 2 3"]`.
    pub fn family<S: AsRef<str>>(tokens: &[S]) -> Result<Self> {
        let toks: Vec<&str> = tokens
            .iter()
            .flat_map(|t| t.as_ref().split_whitespace())
            .collect();
        Ok(GraphSource::Family(Family::from_tokens(&toks)?))
    }
}

/// A graph plus a stable display id and, when known, the family it came from.
#[derive(Debug, Clone, PartialEq)]
pub struct NamedGraph {
    pub id: String,
    pub graph: Graph,
    pub family: Option<Family>,
}

impl NamedGraph {
    pub fn from_family(family: Family) -> Result<Self> {
        Ok(NamedGraph {
            id: family.to_string(),
            graph: family.build()?,
            family: Some(family),
        })
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load(source: &GraphSource) -> Result<Vec<NamedGraph>> {
    match source {
        GraphSource::Family(f) => Ok(vec![NamedGraph::from_family(*f)?]),
        GraphSource::Graph6(s) => Ok(vec![NamedGraph {
            id: s.trim().to_string(),
            graph: graph6::decode(s)?,
            family: None,
        }]),
        GraphSource::Graph6File(path) => {
            let text = read(path)?;
            let graphs = graph6::decode_all(&text)?;
            if graphs.is_empty() {
                return Err(input(format!("{} contains no graphs", path.display())));
            }
            Ok(graphs
                .into_iter()
                .map(|g| NamedGraph {
                    id: graph6::encode(&g),
                    graph: g,
                    family: None,
                })
                .collect())
        }
        GraphSource::EdgeList(path) => Ok(vec![NamedGraph {
            id: path.display().to_string(),
            graph: Graph::parse_edge_list(&read(path)?)?,
            family: None,
        }]),
    }
}

/// The generated family instances used when no corpus is given: every family
/// at small sizes, all well inside the default state cap.
pub fn default_corpus() -> Vec<Family> {
    let mut out = Vec::new();
    out.extend((1..=8).map(Family::Complete));
    out.extend((1..=8).map(Family::Path));
    out.extend((3..=8).map(Family::Cycle));
    out.extend((1..=7).map(Family::Star));
    for n in 1..=6 {
        for m in 1..=n.min(8 - n) {
            out.push(Family::CompleteBipartite(m, n));
        }
    }
    out.extend((3..=5).map(Family::Sun));
    out.extend((1..=5).map(Family::Comb));
    out.extend((1..=6).map(Family::Tadpole4));
    out.extend((1..=6).map(Family::Tadpole4Prime));
    out.push(Family::Paw);
    out.push(Family::Diamond);
    out
}
