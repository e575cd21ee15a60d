//! Exact propagation times, routed to a lumped chain when the graph is a
//! complete, complete bipartite or sun instance and to the subset engine
//! otherwise.

use pzf_core::{
    ept_graph, ept_report, kmn_ept, kn_chain, kmn_chain, sun_chain, BlueSet, ChainOptions, Family,
    Rational, Side, SunStart, VertexId,
};

use crate::error::Result;
use crate::source::NamedGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Lumped,
    Subsets,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Lumped => "lumped",
            Method::Subsets => "subsets",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Exact {
    pub value: Rational,
    pub states: usize,
    pub method: Method,
}

/// Per-vertex values for a whole graph.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexValues {
    pub per_vertex: Vec<Rational>,
    pub states: usize,
    pub method: Method,
}

impl VertexValues {
    pub fn min(&self) -> &Rational {
        self.per_vertex.iter().min().expect("at least one vertex")
    }

    pub fn argmin(&self) -> Vec<VertexId> {
        let m = self.min();
        (0..self.per_vertex.len())
            .filter(|&v| &self.per_vertex[v] == m)
            .collect()
    }
}

/// Lumped value of `ept(g, {v})` when the family has a closed-form chain.
fn lumped_vertex(family: Family, v: VertexId) -> Option<Result<Exact>> {
    let chain = match family {
        Family::Complete(n) if v < n => kn_chain(n),
        Family::CompleteBipartite(m, n) if v < m + n => {
            if v < m {
                kmn_chain(m, n, Side::M)
            } else {
                kmn_chain(m, n, Side::N)
            }
        }
        Family::Sun(n) if n >= 5 && v < 2 * n => {
            sun_chain(n, if v < n { SunStart::Cycle } else { SunStart::Leaf })
        }
        _ => return None,
    };
    Some(chain.map_err(Into::into).and_then(|c| {
        Ok(Exact {
            value: c.ept()?,
            states: c.len(),
            method: Method::Lumped,
        })
    }))
}

/// `ept(g, b)` for any nonempty start set.
pub fn start_value(g: &NamedGraph, b: BlueSet, opts: ChainOptions) -> Result<Exact> {
    if b.len() == 1 {
        let v = b.iter().next().expect("one vertex");
        if let Some(r) = g.family.and_then(|f| lumped_vertex(f, v)) {
            g.graph.require_connected()?;
            return r;
        }
    }
    let report = ept_report(&g.graph, &g.id, b, Default::default(), opts)?;
    Ok(Exact {
        value: report.exact,
        states: report.state_count,
        method: Method::Subsets,
    })
}

/// `ept(g, {v})` for every vertex `v`.
pub fn vertex_values(g: &NamedGraph, opts: ChainOptions) -> Result<VertexValues> {
    let n = g.graph.order();
    let classes: Option<Vec<VertexId>> = match g.family {
        Some(Family::Complete(_)) => Some(vec![0; n]),
        Some(Family::CompleteBipartite(m, _)) => {
            Some((0..n).map(|v| if v < m { 0 } else { m }).collect())
        }
        Some(Family::Sun(k)) if k >= 5 => Some((0..n).map(|v| if v < k { 0 } else { k }).collect()),
        _ => None,
    };
    if let Some(rep) = classes {
        g.graph.require_connected()?;
        let mut cache: Vec<(VertexId, Exact)> = Vec::new();
        let mut per_vertex = Vec::with_capacity(n);
        for &r in &rep {
            if let Some((_, e)) = cache.iter().find(|(k, _)| *k == r) {
                per_vertex.push(e.value.clone());
                continue;
            }
            let e = lumped_vertex(g.family.expect("has family"), r).expect("lumped family")?;
            per_vertex.push(e.value.clone());
            cache.push((r, e));
        }
        let states = cache.iter().map(|(_, e)| e.states).max().unwrap_or(0);
        return Ok(VertexValues {
            per_vertex,
            states,
            method: Method::Lumped,
        });
    }
    let ge = ept_graph(&g.graph, opts)?;
    Ok(VertexValues {
        per_vertex: ge.per_vertex,
        states: ge.state_count,
        method: Method::Subsets,
    })
}

/// Exact `ept(K_{m,n}, {u})` and `ept(K_{m,n}, {v})` with `u` in the part of size `m`.
pub fn kmn_pair(m: usize, n: usize) -> Result<(Rational, Rational)> {
    Ok((kmn_ept(m, n, Side::M)?, kmn_ept(m, n, Side::N)?))
}
