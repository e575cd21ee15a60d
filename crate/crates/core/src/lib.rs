//! Probabilistic zero forcing on finite simple graphs.
//!
//! Each round, every blue vertex `u` tries to color each white neighbor `w`
//! blue independently with probability `|N[u] ∩ B| / deg u`. This crate builds
//! the Markov chain of that process over reachable blue sets, computes expected
//! propagation times exactly in rational arithmetic, provides aggregated chains
//! for complete, complete bipartite and sun graphs, and a seeded Monte Carlo
//! simulator for cross-checks.

pub mod blueset;
pub mod chain;
pub mod dynamics;
pub mod error;
pub mod families;
pub mod generators;
pub mod graph;
pub mod graph6;
pub mod rational;
pub mod simulate;

pub use blueset::{BlueSet, MAX_VERTICES};
pub use chain::{
    build_chain, diagonal_spectrum, enumerate_states, ept_exact, ept_graph, ept_report,
    ept_series_partial, ChainOptions, EptReport, GraphEpt, SeriesPartialSums, StateChain,
    TransitionMatrix, DEFAULT_STATE_CAP,
};
pub use dynamics::{force_probability, round_distribution, RoundDistribution};
pub use error::{PzfError, Result};
pub use families::{
    kmn_chain, kmn_ept, kn_chain, kn_ept, kn_spectrum_formula, sun_chain, sun_ept, sun_ept_from,
    AggregateChain, Side, SunStart,
};
pub use generators::Family;
pub use graph::{Graph, VertexId};
pub use rational::{Precision, Rational};
pub use simulate::{ept_estimate, simulate_propagation, simulate_round, Estimate, Simulator};
