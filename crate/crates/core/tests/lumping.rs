//! Aggregated chains against the subset engine, and the two solvers against
//! each other.

use pzf_core::generators::{complete, complete_bipartite, cycle, path, sun, tadpole4};
use pzf_core::rational::{int, ratio};
use pzf_core::{
    build_chain, ept_graph, kmn_chain, kmn_ept, kn_chain, kn_ept, sun_ept, sun_ept_from, BlueSet,
    ChainOptions, Side, SunStart,
};

fn opts() -> ChainOptions {
    ChainOptions::default()
}

#[test]
fn complete_graphs_match_subset_engine() {
    for n in 1..=9 {
        let generic = ept_graph(&complete(n).unwrap(), opts()).unwrap();
        let lumped = kn_ept(n).unwrap();
        assert!(generic.per_vertex.iter().all(|v| *v == lumped), "K_{n}");
    }
}

#[test]
fn complete_bipartite_graphs_match_subset_engine() {
    for total in 2..=9 {
        for m in 1..=total / 2 {
            let n = total - m;
            let generic = ept_graph(&complete_bipartite(m, n).unwrap(), opts()).unwrap();
            let (u, v) = (kmn_ept(m, n, Side::M).unwrap(), kmn_ept(m, n, Side::N).unwrap());
            assert!(generic.per_vertex[..m].iter().all(|x| *x == u), "K_{m},{n} u");
            assert!(generic.per_vertex[m..].iter().all(|x| *x == v), "K_{m},{n} v");
        }
    }
}

#[test]
fn sun_graphs_match_subset_engine() {
    for n in 3..=6 {
        let generic = ept_graph(&sun(n).unwrap(), opts()).unwrap();
        assert_eq!(generic.value, sun_ept(n).unwrap(), "sun({n})");
        if n >= 5 {
            assert_eq!(generic.per_vertex[0], sun_ept_from(n, SunStart::Cycle).unwrap());
            assert_eq!(generic.per_vertex[n], sun_ept_from(n, SunStart::Leaf).unwrap());
        }
    }
}

#[test]
fn symmetric_bipartite_sides_agree() {
    for n in 1..=8 {
        assert_eq!(kmn_ept(n, n, Side::M).unwrap(), kmn_ept(n, n, Side::N).unwrap());
    }
}

#[test]
fn small_closed_values() {
    assert_eq!(kn_ept(2).unwrap(), int(1));
    assert_eq!(kn_ept(3).unwrap(), int(2));
    assert_eq!(kmn_ept(1, 3, Side::N).unwrap(), ratio(21, 8));
}

#[test]
fn fraction_free_solver_agrees_with_reduced_solver() {
    let mut matrices = vec![
        kn_chain(12).unwrap().matrix,
        kmn_chain(3, 5, Side::N).unwrap().matrix,
        kmn_chain(4, 4, Side::M).unwrap().matrix,
    ];
    for g in [path(6).unwrap(), cycle(7).unwrap(), tadpole4(3).unwrap()] {
        matrices.push(build_chain(&g, BlueSet::singleton(0), opts()).unwrap().matrix);
    }
    for m in &matrices {
        assert_eq!(m.deflated_solve_first().unwrap(), m.deflated_solve().unwrap()[0]);
    }
}
