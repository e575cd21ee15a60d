//! Generators for the graph families used in the experiments, with fixed
//! canonical labelings so that states and argmin vertices are reproducible.

use std::fmt;
use std::str::FromStr;

use crate::error::{PzfError, Result};
use crate::graph::Graph;

fn require(family: &'static str, min: usize, got: usize) -> Result<()> {
    if got < min {
        Err(PzfError::FamilyTooSmall { family, min, got })
    } else {
        Ok(())
    }
}

/// `P_n` with vertices in path order.
pub fn path(n: usize) -> Result<Graph> {
    require("path", 1, n)?;
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edge_list(n, &edges)
}

/// `C_n` with vertices in cycle order.
pub fn cycle(n: usize) -> Result<Graph> {
    require("cycle", 3, n)?;
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((n - 1, 0));
    Graph::from_edge_list(n, &edges)
}

pub fn complete(n: usize) -> Result<Graph> {
    require("complete", 1, n)?;
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edge_list(n, &edges)
}

/// `K_{m,n}` with parts `0..m` and `m..m+n`.
pub fn complete_bipartite(m: usize, n: usize) -> Result<Graph> {
    require("complete_bipartite", 1, m.min(n))?;
    let edges: Vec<_> = (0..m)
        .flat_map(|u| (m..m + n).map(move |v| (u, v)))
        .collect();
    Graph::from_edge_list(m + n, &edges)
}

/// `K_{1,n}`: center 0, leaves `1..=n`.
pub fn star(n: usize) -> Result<Graph> {
    require("star", 1, n)?;
    let edges: Vec<_> = (1..=n).map(|v| (0, v)).collect();
    Graph::from_edge_list(n + 1, &edges)
}

/// The n-Sun: cycle vertices `0..n`, the leaf of cycle vertex `i` is `n + i`.
pub fn sun(n: usize) -> Result<Graph> {
    require("sun", 3, n)?;
    let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    edges.extend((0..n).map(|i| (i, n + i)));
    Graph::from_edge_list(2 * n, &edges)
}

/// The n-Comb: path vertices `0..n`, the leaf of path vertex `i` is `n + i`.
pub fn comb(n: usize) -> Result<Graph> {
    require("comb", 1, n)?;
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.extend((0..n).map(|i| (i, n + i)));
    Graph::from_edge_list(2 * n, &edges)
}

/// Label of path vertex `p_k` (1-based `k`) in [`tadpole4`]: `p_1` is the
/// shared cycle vertex 0 and `p_k` for `k >= 2` is `k + 2`.
pub fn tadpole_path_vertex(k: usize) -> usize {
    debug_assert!(k >= 1);
    if k == 1 {
        0
    } else {
        k + 2
    }
}

/// `T_{4,m}`: the 4-cycle `p_1, c_2, c_3, c_4` (labels 0..3) sharing `p_1`
/// with the path `p_1, ..., p_m` (labels 0, 4, 5, ..., m+2).
pub fn tadpole4(m: usize) -> Result<Graph> {
    require("tadpole4", 1, m)?;
    Graph::from_edge_list(m + 3, &tadpole_edges(m))
}

/// `T'_{4,m}`: [`tadpole4`] plus the chord `c_2 c_4` = `{1, 3}`.
pub fn tadpole4_prime(m: usize) -> Result<Graph> {
    require("tadpole4_prime", 1, m)?;
    let mut edges = tadpole_edges(m);
    edges.push((1, 3));
    Graph::from_edge_list(m + 3, &edges)
}

fn tadpole_edges(m: usize) -> Vec<(usize, usize)> {
    let mut edges = vec![(0, 1), (1, 2), (2, 3), (3, 0)];
    edges.extend((2..=m).map(|k| (tadpole_path_vertex(k - 1), tadpole_path_vertex(k))));
    edges
}

/// Adds vertex `n(g)` adjacent to every existing vertex.
pub fn with_universal_vertex(g: &Graph) -> Graph {
    let n = g.order();
    let mut edges: Vec<_> = g.edges().collect();
    edges.extend((0..n).map(|v| (v, n)));
    Graph::from_edge_list(n + 1, &edges).expect("valid by construction")
}

/// Triangle `0,1,2` with pendant vertex 3 attached to 0.
pub fn paw() -> Graph {
    Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 0), (0, 3)]).expect("valid by construction")
}

/// `C_4` on `0..4` plus the chord `{0, 2}`; degrees `[3, 2, 3, 2]`.
pub fn diamond() -> Graph {
    Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
        .expect("valid by construction")
}

/// A named family instance, parsed from the mini-grammar
/// `k N | kmn M N | path N | cycle N | star N | sun N | comb N | tadpole4 M | tadpole4p M | paw | diamond`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Complete(usize),
    CompleteBipartite(usize, usize),
    Path(usize),
    Cycle(usize),
    Star(usize),
    Sun(usize),
    Comb(usize),
    Tadpole4(usize),
    Tadpole4Prime(usize),
    Paw,
    Diamond,
}

impl Family {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            Family::Complete(n) => complete(n),
            Family::CompleteBipartite(m, n) => complete_bipartite(m, n),
            Family::Path(n) => path(n),
            Family::Cycle(n) => cycle(n),
            Family::Star(n) => star(n),
            Family::Sun(n) => sun(n),
            Family::Comb(n) => comb(n),
            Family::Tadpole4(m) => tadpole4(m),
            Family::Tadpole4Prime(m) => tadpole4_prime(m),
            Family::Paw => Ok(paw()),
            Family::Diamond => Ok(diamond()),
        }
    }

    /// Parses whitespace-separated tokens, e.g. `["kmn", "2", "3"]`.
    pub fn from_tokens<S: AsRef<str>>(tokens: &[S]) -> Result<Self> {
        let toks: Vec<&str> = tokens.iter().map(AsRef::as_ref).collect();
        let bad = || PzfError::Parse(format!("unrecognized family spec {:?}", toks.join(" ")));
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
        let fam = match toks.as_slice() {
            ["k", n] => Family::Complete(num(n)?),
            ["kmn", m, n] => Family::CompleteBipartite(num(m)?, num(n)?),
            ["path", n] => Family::Path(num(n)?),
            ["cycle", n] => Family::Cycle(num(n)?),
            ["star", n] => Family::Star(num(n)?),
            ["sun", n] => Family::Sun(num(n)?),
            ["comb", n] => Family::Comb(num(n)?),
            ["tadpole4", m] => Family::Tadpole4(num(m)?),
            ["tadpole4p", m] => Family::Tadpole4Prime(num(m)?),
            ["paw"] => Family::Paw,
            ["diamond"] => Family::Diamond,
            _ => return Err(bad()),
        };
        Ok(fam)
    }
}

impl FromStr for Family {
    type Err = PzfError;

    fn from_str(s: &str) -> Result<Self> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        Family::from_tokens(&toks)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete(n) => write!(f, "k {n}"),
            Family::CompleteBipartite(m, n) => write!(f, "kmn {m} {n}"),
            Family::Path(n) => write!(f, "path {n}"),
            Family::Cycle(n) => write!(f, "cycle {n}"),
            Family::Star(n) => write!(f, "star {n}"),
            Family::Sun(n) => write!(f, "sun {n}"),
            Family::Comb(n) => write!(f, "comb {n}"),
            Family::Tadpole4(m) => write!(f, "tadpole4 {m}"),
            Family::Tadpole4Prime(m) => write!(f, "tadpole4p {m}"),
            Family::Paw => write!(f, "paw"),
            Family::Diamond => write!(f, "diamond"),
        }
    }
}
