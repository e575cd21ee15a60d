//! Seeded Monte Carlo simulation of the color-change rule.
//!
//! Trial `t` of an estimate draws from ChaCha8 seeded with `seed` on stream
//! `t`, so results do not depend on how trials are scheduled across threads.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::blueset::{BlueSet, NeighborMasks};
use crate::error::{PzfError, Result};
use crate::graph::Graph;

/// Reusable simulator over a fixed graph.
#[derive(Debug, Clone)]
pub struct Simulator {
    masks: NeighborMasks,
    full: BlueSet,
}

impl Simulator {
    pub fn new(g: &Graph) -> Result<Self> {
        Ok(Simulator {
            masks: NeighborMasks::new(g)?,
            full: BlueSet::full(g.order()),
        })
    }

    /// One synchronous round: every blue `u` tries each white neighbor with an
    /// independent Bernoulli draw.
    pub fn round<R: Rng + ?Sized>(&self, b: BlueSet, rng: &mut R) -> BlueSet {
        let mut next = b;
        for u in b.iter() {
            let whites = self.masks.open(u).bits() & !b.bits();
            if whites == 0 {
                continue;
            }
            let p = self.masks.closed(u).intersection(b).len() as f64
                / self.masks.degree[u] as f64;
            for w in BlueSet::from_bits(whites).iter() {
                if rng.gen_bool(p) {
                    next = next.with(w);
                }
            }
        }
        next
    }

    /// Rounds until every vertex is blue. The graph must be connected.
    pub fn propagate<R: Rng + ?Sized>(&self, b: BlueSet, rng: &mut R) -> u32 {
        let mut current = b;
        let mut rounds = 0;
        while current != self.full {
            current = self.round(current, rng);
            rounds += 1;
        }
        rounds
    }
}

pub fn simulate_round<R: Rng + ?Sized>(g: &Graph, b: BlueSet, rng: &mut R) -> Result<BlueSet> {
    if b.is_empty() {
        return Err(PzfError::EmptyBlueSet);
    }
    Ok(Simulator::new(g)?.round(b, rng))
}

/// Number of rounds until all vertices are blue (0 when `b` is already everything).
pub fn simulate_propagation<R: Rng + ?Sized>(g: &Graph, b: BlueSet, rng: &mut R) -> Result<u32> {
    g.require_connected()?;
    if b.is_empty() {
        return Err(PzfError::EmptyBlueSet);
    }
    Ok(Simulator::new(g)?.propagate(b, rng))
}

/// The random stream used for trial `trial` of an estimate seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Sample mean and standard error of the propagation time.
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub trials: u64,
    pub mean: f64,
    /// `None` for a single trial.
    pub stderr: Option<f64>,
}

impl Estimate {
    fn from_samples(samples: &[u32]) -> Self {
        let n = samples.len() as f64;
        let mean = samples.iter().map(|&x| x as f64).sum::<f64>() / n;
        let stderr = (samples.len() > 1).then(|| {
            let ss: f64 = samples.iter().map(|&x| (x as f64 - mean).powi(2)).sum();
            (ss / (n - 1.0)).sqrt() / n.sqrt()
        });
        Estimate {
            trials: samples.len() as u64,
            mean,
            stderr,
        }
    }

    /// `|mean - exact| / stderr`, or `None` when the stderr is undefined or zero.
    pub fn z_score(&self, exact: f64) -> Option<f64> {
        self.stderr
            .filter(|&s| s > 0.0)
            .map(|s| (self.mean - exact).abs() / s)
    }
}

/// Monte Carlo estimate of `ept(g, b)` over `trials` independent streams.
pub fn ept_estimate(g: &Graph, b: BlueSet, trials: u64, seed: u64) -> Result<Estimate> {
    if trials == 0 {
        return Err(PzfError::Contract("at least one trial is required".into()));
    }
    g.require_connected()?;
    if b.is_empty() {
        return Err(PzfError::EmptyBlueSet);
    }
    let sim = Simulator::new(g)?;
    let samples: Vec<u32> = (0..trials)
        .into_par_iter()
        .map(|t| sim.propagate(b, &mut trial_rng(seed, t)))
        .collect();
    Ok(Estimate::from_samples(&samples))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path};

    #[test]
    fn k2_always_one_round() {
        let k2 = complete(2).unwrap();
        for seed in 0..20 {
            let mut rng = trial_rng(seed, 0);
            let b = BlueSet::singleton(0);
            assert_eq!(simulate_round(&k2, b, &mut rng).unwrap(), BlueSet::full(2));
            assert_eq!(simulate_propagation(&k2, b, &mut rng).unwrap(), 1);
        }
    }

    #[test]
    fn k1_needs_no_rounds() {
        let k1 = complete(1).unwrap();
        let mut rng = trial_rng(1, 0);
        assert_eq!(simulate_propagation(&k1, BlueSet::singleton(0), &mut rng).unwrap(), 0);
    }

    #[test]
    fn deterministic_last_force() {
        // P_4 with only the end vertex 3 white: its neighbor 2 has N[2] all blue.
        let p4 = path(4).unwrap();
        let b = BlueSet::from_vertices(4, &[0, 1, 2]).unwrap();
        for seed in 0..50 {
            let mut rng = trial_rng(seed, 3);
            assert_eq!(simulate_round(&p4, b, &mut rng).unwrap(), BlueSet::full(4));
        }
    }

    #[test]
    fn p4_round_frequencies() {
        let p4 = path(4).unwrap();
        let sim = Simulator::new(&p4).unwrap();
        let b = BlueSet::singleton(1);
        let trials = 100_000u64;
        let mut counts = std::collections::HashMap::new();
        for t in 0..trials {
            *counts.entry(sim.round(b, &mut trial_rng(99, t))).or_insert(0u64) += 1;
        }
        assert_eq!(counts.len(), 4);
        for (_, c) in counts {
            let freq = c as f64 / trials as f64;
            assert!((freq - 0.25).abs() < 0.01, "freq {freq}");
        }
    }

    #[test]
    fn p3_center_mean() {
        let p3 = path(3).unwrap();
        let est = ept_estimate(&p3, BlueSet::singleton(1), 100_000, 7).unwrap();
        assert!((est.mean - 2.0).abs() < 0.02, "{est:?}");
    }

    #[test]
    fn estimate_is_reproducible_and_degenerate_cases() {
        let c4 = cycle(4).unwrap();
        let a = ept_estimate(&c4, BlueSet::singleton(0), 2000, 5).unwrap();
        let b = ept_estimate(&c4, BlueSet::singleton(0), 2000, 5).unwrap();
        assert_eq!(a, b);
        let one = ept_estimate(&c4, BlueSet::singleton(0), 1, 5).unwrap();
        assert_eq!(one.stderr, None);
        assert!(ept_estimate(&c4, BlueSet::singleton(0), 0, 5).is_err());
        let split = crate::graph::Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            ept_estimate(&split, BlueSet::singleton(0), 10, 5),
            Err(PzfError::Disconnected)
        );
    }
}
