//! Per-graph commands: exact values, matrices, simulation, family summaries
//! and the graph6 census.

use pzf_core::rational::{render_decimal, to_f64};
use pzf_core::{
    build_chain, ept_estimate, graph6, kmn_chain, kn_chain, sun_chain, BlueSet, ChainOptions,
    Family, Graph, Precision, PzfError, Side, SunStart, VertexId,
};
use rayon::prelude::*;

use crate::error::{input, CliError, Result};
use crate::exact::{start_value, vertex_values};
use crate::output::{Cell, Report};
use crate::source::NamedGraph;

pub fn start_set(g: &Graph, vertices: &[VertexId]) -> Result<BlueSet> {
    if vertices.is_empty() {
        return Err(input("start set is empty"));
    }
    Ok(BlueSet::from_vertices(g.order(), vertices)?)
}

fn join(vs: &[VertexId]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Exact `ept` from the given start set, or for every vertex plus the minimum.
pub fn cmd_ept(
    graphs: &[NamedGraph],
    start: Option<&[VertexId]>,
    digits: u32,
    opts: ChainOptions,
) -> Result<Report> {
    let precision = Precision::Significant(digits);
    let mut report = Report::new(
        "exact expected propagation time",
        &["graph", "start", "ept", "decimal", "digits", "states", "method", "argmin"],
    );
    for g in graphs {
        let row = |start: String, value: &pzf_core::Rational, states: usize, method: &str, argmin: Cell| {
            vec![
                g.id.clone().into(),
                start.into(),
                value.clone().into(),
                render_decimal(value, precision).into(),
                (digits as usize).into(),
                states.into(),
                method.into(),
                argmin,
            ]
        };
        match start {
            Some(vs) => {
                let b = start_set(&g.graph, vs)?;
                let e = start_value(g, b, opts)?;
                report.push(row(b.to_string(), &e.value, e.states, e.method.name(), Cell::Empty));
            }
            None => {
                let v = vertex_values(g, opts)?;
                for (u, value) in v.per_vertex.iter().enumerate() {
                    report.push(row(
                        BlueSet::singleton(u).to_string(),
                        value,
                        v.states,
                        v.method.name(),
                        Cell::Empty,
                    ));
                }
                report.push(row(
                    "min".into(),
                    v.min(),
                    v.states,
                    v.method.name(),
                    join(&v.argmin()).into(),
                ));
            }
        }
    }
    Ok(report)
}

/// The transition matrix from a start set, as sparse `(i, j, p)` entries.
pub fn cmd_matrix(g: &NamedGraph, start: &[VertexId], aggregate: bool, opts: ChainOptions) -> Result<Report> {
    let b = start_set(&g.graph, start)?;
    let mut report = Report::new(
        format!("transition matrix of {} from {b}", g.id),
        &["i", "j", "from", "to", "p"],
    );
    let (labels, matrix) = if aggregate {
        let v = match (b.len(), b.iter().next()) {
            (1, Some(v)) => v,
            _ => return Err(input("--aggregate needs a single start vertex")),
        };
        let chain = match g.family {
            Some(Family::Complete(n)) => kn_chain(n)?,
            Some(Family::CompleteBipartite(m, n)) => {
                kmn_chain(m, n, if v < m { Side::M } else { Side::N })?
            }
            Some(Family::Sun(n)) => {
                sun_chain(n, if v < n { SunStart::Cycle } else { SunStart::Leaf })?
            }
            _ => return Err(input("--aggregate is available for k, kmn and sun families")),
        };
        if chain.post_rounds > 0 {
            report.note(format!("deterministic rounds after absorption: {}", chain.post_rounds));
        }
        report.note(format!("ept: {}", pzf_core::rational::to_pq(&chain.ept()?)));
        (chain.labels, chain.matrix)
    } else {
        let chain = build_chain(&g.graph, b, opts)?;
        let times = chain.matrix.expected_times()?;
        report.note(format!("ept: {}", pzf_core::rational::to_pq(&times[0])));
        (
            chain.states.iter().map(ToString::to_string).collect(),
            chain.matrix,
        )
    };
    report.note(format!("states: {}", labels.len()));
    for i in 0..matrix.len() {
        for (j, p) in matrix.row(i) {
            report.push(vec![
                i.into(),
                (*j).into(),
                labels[i].clone().into(),
                labels[*j].clone().into(),
                p.clone().into(),
            ]);
        }
    }
    Ok(report)
}

/// Monte Carlo estimate, with the z-score against the exact value when it is
/// within reach.
pub fn cmd_simulate(
    graphs: &[NamedGraph],
    start: &[VertexId],
    trials: u64,
    seed: u64,
    digits: u32,
    opts: ChainOptions,
) -> Result<Report> {
    if trials == 0 {
        return Err(input("--trials must be at least 1"));
    }
    let precision = Precision::Significant(digits);
    let mut report = Report::new(
        "Monte Carlo propagation time",
        &["graph", "start", "trials", "seed", "mean", "stderr", "exact", "exact_decimal", "z"],
    );
    for g in graphs {
        let b = start_set(&g.graph, start)?;
        let est = ept_estimate(&g.graph, b, trials, seed)?;
        let exact = match start_value(g, b, opts) {
            Ok(e) => Some(e.value),
            Err(CliError::Core(PzfError::StateCapExceeded { cap })) => {
                report.note(format!("{}: exact value skipped, more than {cap} states", g.id));
                None
            }
            Err(e) => return Err(e),
        };
        let z = exact.as_ref().and_then(|x| est.z_score(to_f64(x)));
        report.push(vec![
            g.id.clone().into(),
            b.to_string().into(),
            trials.into(),
            seed.into(),
            est.mean.into(),
            est.stderr.into(),
            exact.clone().into(),
            exact.map(|x| render_decimal(&x, precision)).into(),
            z.into(),
        ]);
    }
    Ok(report)
}

/// Basic facts about a generated family instance.
pub fn cmd_family(family: Family) -> Result<Report> {
    let g = family.build()?;
    let mut report = Report::new(format!("{family}"), &["property", "value"]);
    let edges = g
        .edges()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect::<Vec<_>>()
        .join(" ");
    let degrees = g
        .degrees()
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ");
    report.push(vec!["order".into(), g.order().into()]);
    report.push(vec!["size".into(), g.size().into()]);
    report.push(vec!["connected".into(), g.is_connected().into()]);
    report.push(vec!["degrees".into(), degrees.into()]);
    report.push(vec!["graph6".into(), graph6::encode(&g).into()]);
    report.push(vec!["edges".into(), edges.into()]);
    Ok(report)
}

/// `ept(G)` and its minimizing vertices for every graph of a corpus.
pub fn cmd_census(graphs: &[NamedGraph], digits: u32, opts: ChainOptions) -> Result<Report> {
    let precision = Precision::Significant(digits);
    let mut report = Report::new(
        "census",
        &["graph", "order", "size", "ept", "decimal", "digits", "argmin"],
    );
    let results: Vec<Result<_>> = graphs
        .par_iter()
        .map(|g| vertex_values(g, opts))
        .collect();
    for (g, res) in graphs.iter().zip(results) {
        match res {
            Ok(v) => report.push(vec![
                g.id.clone().into(),
                g.graph.order().into(),
                g.graph.size().into(),
                v.min().clone().into(),
                render_decimal(v.min(), precision).into(),
                (digits as usize).into(),
                join(&v.argmin()).into(),
            ]),
            Err(CliError::Core(PzfError::Disconnected)) => {
                report.note(format!("{}: skipped, not connected", g.id));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use pzf_core::rational::ratio;

    fn named(spec: &str) -> NamedGraph {
        NamedGraph::from_family(spec.parse().unwrap()).unwrap()
    }

    fn opts() -> ChainOptions {
        ChainOptions::default()
    }

    #[test]
    fn ept_paw_minimum() {
        let r = cmd_ept(&[named("paw")], None, 6, opts()).unwrap();
        let last = r.rows.last().unwrap();
        assert_eq!(last[2], Cell::Rational(ratio(21, 8)));
        assert_eq!(last[3], Cell::text("2.625"));
    }

    #[test]
    fn ept_k1_is_zero() {
        let r = cmd_ept(&[named("k 1")], None, 6, opts()).unwrap();
        assert_eq!(r.rows.last().unwrap()[2], Cell::Rational(ratio(0, 1)));
    }

    #[test]
    fn ept_tadpole_six() {
        let r = cmd_ept(&[named("tadpole4 6")], None, 6, opts()).unwrap();
        let expected = ratio(3, 1) + ratio(3331, 1944);
        assert_eq!(r.rows.last().unwrap()[2], Cell::Rational(expected));
    }

    #[test]
    fn ept_with_start_set() {
        let r = cmd_ept(&[named("tadpole4 2")], Some(&[0, 4]), 6, opts()).unwrap();
        assert_eq!(r.rows[0][2], Cell::Rational(ratio(17, 8)));
        assert!(cmd_ept(&[named("path 3")], Some(&[7]), 6, opts()).is_err());
    }

    #[test]
    fn cap_error_has_its_own_exit_code() {
        let err = cmd_ept(&[named("cycle 8")], None, 6, ChainOptions { state_cap: 5 }).unwrap_err();
        assert_eq!(err.exit_code(), crate::error::EXIT_STATE_CAP);
        assert!(err.to_string().contains('5'));
    }

    #[test]
    fn matrix_of_k4() {
        let r = cmd_matrix(&named("k 4"), &[0], true, opts()).unwrap();
        assert_eq!(r.rows[0][4], Cell::Rational(ratio(8, 27)));
        assert!(r.notes.iter().any(|n| n == "ept: 951/380"));
        let generic = cmd_matrix(&named("path 4"), &[1], false, opts()).unwrap();
        assert_eq!(generic.rows.len(), 8);
        assert!(cmd_matrix(&named("paw"), &[0], true, opts()).is_err());
    }

    #[test]
    fn simulate_reports_z_score() {
        let r = cmd_simulate(&[named("k 6")], &[0], 5_000, 3, 6, opts()).unwrap();
        let z = match r.rows[0][8] {
            Cell::Float(z) => z,
            ref other => panic!("{other:?}"),
        };
        assert!(z < 4.0, "z = {z}");
        assert!(cmd_simulate(&[named("k 6")], &[0], 0, 3, 6, opts()).is_err());
    }

    #[test]
    fn simulate_is_deterministic() {
        let a = cmd_simulate(&[named("cycle 6")], &[0], 500, 11, 6, opts()).unwrap();
        let b = cmd_simulate(&[named("cycle 6")], &[0], 500, 11, 6, opts()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn family_summary() {
        let r = cmd_family("tadpole4p 5".parse().unwrap()).unwrap();
        assert_eq!(r.rows[0][1], Cell::Int(8));
        assert_eq!(r.rows[1][1], Cell::Int(9));
    }

    #[test]
    fn census_skips_disconnected() {
        let gs = vec![
            named("diamond"),
            NamedGraph {
                id: "split".into(),
                graph: Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap(),
                family: None,
            },
        ];
        let r = cmd_census(&gs, 6, opts()).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.rows[0][3], Cell::Rational(ratio(2911, 1140)));
        assert_eq!(r.notes.len(), 1);
    }
}
