use std::collections::VecDeque;
use std::fmt;

use crate::error::{PzfError, Result};

/// Vertex index in `0..n`.
pub type VertexId = usize;

/// Immutable simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are sorted and duplicate-free; adjacency is symmetric and
/// there are no self-loops.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either orientation)
    /// are collapsed.
    pub fn from_edge_list(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(PzfError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(PzfError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(PzfError::VertexOutOfRange {
                vertex: v,
                n: self.order(),
            })
        }
    }

    /// True iff every vertex is reachable from vertex 0. Graphs of order 0 or 1
    /// count as connected.
    pub fn is_connected(&self) -> bool {
        let n = self.order();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == n
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(PzfError::Disconnected)
        }
    }

    /// Applies a vertex permutation: vertex `v` becomes `perm[v]`.
    pub fn relabel(&self, perm: &[VertexId]) -> Result<Self> {
        let n = self.order();
        let mut seen = vec![false; n];
        if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
            return Err(PzfError::Contract("relabeling is not a permutation".into()));
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edge_list(n, &edges)
    }

    /// Removes vertex `v`, shifting higher labels down by one.
    pub fn remove_vertex(&self, v: VertexId) -> Result<Self> {
        self.check_vertex(v)?;
        let shift = |x: VertexId| if x > v { x - 1 } else { x };
        let edges: Vec<_> = self
            .edges()
            .filter(|&(a, b)| a != v && b != v)
            .map(|(a, b)| (shift(a), shift(b)))
            .collect();
        Graph::from_edge_list(self.order() - 1, &edges)
    }

    /// Parses the plain-text edge list format: a header line `n m` followed by
    /// `m` lines `u v` (0-based). Blank lines and `#` comments are ignored.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| PzfError::Parse("missing `n m` header".into()))?;
        let [n, m] = parse_pair(header)?;
        let mut edges = Vec::with_capacity(m);
        for line in lines.by_ref().take(m) {
            let [u, v] = parse_pair(line)?;
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(PzfError::Parse(format!(
                "header declares {m} edges but {} were given",
                edges.len()
            )));
        }
        if lines.next().is_some() {
            return Err(PzfError::Parse("trailing lines after the edge list".into()));
        }
        Graph::from_edge_list(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.order(), self.size());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

fn parse_pair(line: &str) -> Result<[usize; 2]> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok([a, b]),
        _ => Err(PzfError::Parse(format!("expected two integers, got {line:?}"))),
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.order())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2_degrees() {
        let g = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert_eq!(g.degrees(), vec![1, 1]);
        assert!(g.is_connected());
    }

    #[test]
    fn isolated_vertices_are_disconnected() {
        let g = Graph::from_edge_list(3, &[]).unwrap();
        assert!(!g.is_connected());
        assert!(Graph::empty(1).is_connected());
        assert!(Graph::empty(0).is_connected());
    }

    #[test]
    fn diamond_degrees() {
        let g = Graph::from_edge_list(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert_eq!(g.degrees(), vec![3, 2, 3, 2]);
    }

    #[test]
    fn two_disjoint_edges() {
        let g = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!g.is_connected());
        assert_eq!(g.require_connected(), Err(PzfError::Disconnected));
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            Graph::from_edge_list(2, &[(0, 2)]),
            Err(PzfError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(Graph::from_edge_list(2, &[(1, 1)]), Err(PzfError::SelfLoop(1)));
    }

    #[test]
    fn duplicates_collapse() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 0), (0, 1), (1, 2)]).unwrap();
        assert_eq!(g.size(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn edge_list_text() {
        let g = Graph::parse_edge_list("# path\n3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g.size(), 2);
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        assert!(Graph::parse_edge_list("3 2\n0 1\n").is_err());
        assert!(Graph::parse_edge_list("3 1\n0 x\n").is_err());
        assert!(Graph::parse_edge_list("").is_err());
    }

    #[test]
    fn relabel_and_remove() {
        let g = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let h = g.relabel(&[1, 0, 2]).unwrap();
        assert!(h.has_edge(1, 0) && h.has_edge(0, 2) && !h.has_edge(1, 2));
        assert!(g.relabel(&[0, 0, 1]).is_err());
        let r = g.remove_vertex(0).unwrap();
        assert_eq!(r.order(), 2);
        assert!(r.has_edge(0, 1));
    }
}
