//! The probabilistic color-change rule as an exact one-round law.
//!
//! In a round every blue `u` tries to force each white neighbor `w`
//! independently with probability `|N[u] ∩ B| / deg u`; all attempts are
//! evaluated against the blue set at the start of the round. A white `w` thus
//! stays white with probability `q_w = Π_{u ∈ B ∩ N(w)} (1 - Pr(u → w))`,
//! independently of the other whites.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::blueset::{BlueSet, NeighborMasks};
use crate::error::{PzfError, Result};
use crate::graph::{Graph, VertexId};
use crate::rational::Rational;

/// `Pr(u → w) = |N[u] ∩ b| / deg u` for blue `u` and white neighbor `w`.
pub fn force_probability(g: &Graph, b: BlueSet, u: VertexId, w: VertexId) -> Result<Rational> {
    g.check_vertex(u)?;
    g.check_vertex(w)?;
    if !b.contains(u) {
        return Err(PzfError::Contract(format!("forcing vertex {u} is not blue")));
    }
    if b.contains(w) {
        return Err(PzfError::Contract(format!("target vertex {w} is already blue")));
    }
    if !g.has_edge(u, w) {
        return Err(PzfError::Contract(format!("{u} and {w} are not adjacent")));
    }
    let masks = NeighborMasks::new(g)?;
    Ok(force_prob_masks(&masks, b, u))
}

fn force_prob_masks(masks: &NeighborMasks, b: BlueSet, u: VertexId) -> Rational {
    let blue_closed = masks.closed(u).intersection(b).len();
    Rational::new(BigInt::from(blue_closed), BigInt::from(masks.degree[u]))
}

/// The exact distribution of the blue set after one round.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundDistribution {
    pub source: BlueSet,
    /// Distinct successors with positive probability, in proper state order.
    pub entries: Vec<(BlueSet, Rational)>,
}

impl RoundDistribution {
    pub fn total(&self) -> Rational {
        self.entries.iter().map(|(_, p)| p).sum()
    }

    /// Probability that `w` is blue after the round.
    pub fn marginal(&self, w: VertexId) -> Rational {
        self.entries
            .iter()
            .filter(|(s, _)| s.contains(w))
            .map(|(_, p)| p)
            .sum()
    }

    /// Law of the number of newly forced vertices, indexed by count.
    pub fn forced_count_law(&self) -> Vec<Rational> {
        let base = self.source.len();
        let mut law = Vec::new();
        for (s, p) in &self.entries {
            let k = s.len() - base;
            if law.len() <= k {
                law.resize(k + 1, Rational::zero());
            }
            law[k] += p;
        }
        law
    }

    pub fn probability_of(&self, successor: BlueSet) -> Rational {
        self.entries
            .iter()
            .find(|(s, _)| *s == successor)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(Rational::zero)
    }
}

/// Probability that white `w` is *not* forced this round, for every white
/// vertex with at least one blue neighbor.
pub(crate) fn stay_white_probabilities(
    masks: &NeighborMasks,
    b: BlueSet,
) -> Vec<(VertexId, Rational)> {
    let n = masks.open.len();
    let force: Vec<Option<Rational>> = (0..n)
        .map(|u| b.contains(u).then(|| force_prob_masks(masks, b, u)))
        .collect();
    (0..n)
        .filter(|&w| !b.contains(w))
        .filter_map(|w| {
            let blue_nbrs = masks.open(w).intersection(b);
            if blue_nbrs.is_empty() {
                return None;
            }
            let q = blue_nbrs
                .iter()
                .map(|u| Rational::one() - force[u].as_ref().expect("u is blue"))
                .product();
            Some((w, q))
        })
        .collect()
}

pub(crate) fn round_distribution_masks(masks: &NeighborMasks, b: BlueSet) -> RoundDistribution {
    let mut entries = vec![(b, Rational::one())];
    for (w, q) in stay_white_probabilities(masks, b) {
        let p = Rational::one() - &q;
        if q.is_zero() {
            for (s, _) in &mut entries {
                *s = s.with(w);
            }
            continue;
        }
        let mut next = Vec::with_capacity(entries.len() * 2);
        for (s, pr) in entries {
            next.push((s.with(w), &pr * &p));
            next.push((s, pr * &q));
        }
        entries = next;
    }
    entries.sort_by(|a, b| a.0.state_cmp(&b.0));
    RoundDistribution { source: b, entries }
}

/// Exact law of the next blue set. Whites without a blue neighbor never flip and
/// zero-probability outcomes are omitted, so every entry is a distinct superset of `b`.
pub fn round_distribution(g: &Graph, b: BlueSet) -> Result<RoundDistribution> {
    let masks = NeighborMasks::new(g)?;
    let n = g.order();
    if b.is_empty() {
        return Err(PzfError::EmptyBlueSet);
    }
    if !b.is_subset_of(BlueSet::full(n)) {
        return Err(PzfError::Contract(format!("{b} is not a subset of 0..{n}")));
    }
    if b == BlueSet::full(n) {
        return Err(PzfError::FullBlueSet);
    }
    Ok(round_distribution_masks(&masks, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, path};
    use crate::rational::{int, ratio};

    fn set(n: usize, vs: &[usize]) -> BlueSet {
        BlueSet::from_vertices(n, vs).unwrap()
    }

    #[test]
    fn force_probability_examples() {
        let k2 = complete(2).unwrap();
        assert_eq!(force_probability(&k2, set(2, &[0]), 0, 1).unwrap(), int(1));
        let p4 = path(4).unwrap();
        assert_eq!(force_probability(&p4, set(4, &[1]), 1, 0).unwrap(), ratio(1, 2));
        let k4 = complete(4).unwrap();
        assert_eq!(force_probability(&k4, set(4, &[0, 1]), 0, 2).unwrap(), ratio(2, 3));
    }

    #[test]
    fn force_probability_contract() {
        let p4 = path(4).unwrap();
        let b = set(4, &[1]);
        assert!(matches!(force_probability(&p4, b, 0, 1), Err(PzfError::Contract(_))));
        assert!(matches!(force_probability(&p4, b, 1, 1), Err(PzfError::Contract(_))));
        assert!(matches!(force_probability(&p4, b, 1, 3), Err(PzfError::Contract(_))));
        assert!(force_probability(&p4, b, 1, 9).is_err());
    }

    #[test]
    fn p4_round() {
        let p4 = path(4).unwrap();
        let d = round_distribution(&p4, set(4, &[1])).unwrap();
        let expected = vec![
            (set(4, &[1]), ratio(1, 4)),
            (set(4, &[0, 1]), ratio(1, 4)),
            (set(4, &[1, 2]), ratio(1, 4)),
            (set(4, &[0, 1, 2]), ratio(1, 4)),
        ];
        assert_eq!(d.entries, expected);
    }

    #[test]
    fn k2_round_is_deterministic() {
        let k2 = complete(2).unwrap();
        let d = round_distribution(&k2, set(2, &[0])).unwrap();
        assert_eq!(d.entries, vec![(set(2, &[0, 1]), int(1))]);
    }

    #[test]
    fn k4_single_blue_binomial() {
        let k4 = complete(4).unwrap();
        let d = round_distribution(&k4, set(4, &[0])).unwrap();
        assert_eq!(
            d.forced_count_law(),
            vec![ratio(8, 27), ratio(4, 9), ratio(2, 9), ratio(1, 27)]
        );
    }

    #[test]
    fn rejects_degenerate_sets() {
        let p4 = path(4).unwrap();
        assert_eq!(round_distribution(&p4, BlueSet::EMPTY), Err(PzfError::EmptyBlueSet));
        assert_eq!(round_distribution(&p4, BlueSet::full(4)), Err(PzfError::FullBlueSet));
        assert!(round_distribution(&p4, BlueSet::from_bits(1 << 7)).is_err());
    }

    #[test]
    fn unreachable_whites_never_flip() {
        let p4 = path(4).unwrap();
        let d = round_distribution(&p4, set(4, &[0])).unwrap();
        assert_eq!(d.entries, vec![(set(4, &[0, 1]), int(1))]);
        assert_eq!(d.marginal(3), int(0));
    }
}
