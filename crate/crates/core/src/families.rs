//! Aggregated chains for `K_n`, `K_{m,n}` and the n-Sun.
//!
//! These index states by counts rather than vertex subsets, so they scale to
//! orders the subset engine cannot reach. Each is checked against the generic
//! engine on small instances (equal expected times, exactly).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::chain::{ChainOptions, TransitionMatrix, ept_graph};
use crate::error::{PzfError, Result};
use crate::generators;
use crate::rational::{int, pow, ratio, Rational};

/// A chain over aggregate states in the family's documented order.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateChain {
    pub labels: Vec<String>,
    pub matrix: TransitionMatrix,
    /// Deterministic rounds added after absorption (sun chains only).
    pub post_rounds: u32,
}

impl AggregateChain {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Expected time from the first state, including `post_rounds`.
    pub fn ept(&self) -> Result<Rational> {
        let x0 = if self.len() <= DENSE_SOLVE_MAX {
            self.matrix.deflated_solve_first()?
        } else {
            self.matrix.deflated_solve()?.swap_remove(0)
        };
        Ok(x0 + Rational::one() + int(self.post_rounds as i64))
    }
}

/// Chains up to this length are solved fraction-free.
const DENSE_SOLVE_MAX: usize = 200;

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn binomial_q(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(n, k))
}

/// Transition matrix of `K_n` over the states "k blue vertices", `k = 1..=n`.
pub fn kn_chain(n: usize) -> Result<AggregateChain> {
    if n == 0 {
        return Err(PzfError::FamilyTooSmall {
            family: "complete",
            min: 1,
            got: 0,
        });
    }
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n {
        let mut row = Vec::new();
        if n >= 2 && i <= n - 2 {
            // stay = a / d with a = (n-1-i)^i, d = (n-1)^i; entries share the denominator d^(n-i)
            let a = BigInt::from(n - 1 - i).pow(i as u32);
            let d = BigInt::from(n - 1).pow(i as u32);
            let g = &d - &a;
            let denom = d.pow((n - i) as u32);
            let a_pows: Vec<BigInt> = std::iter::successors(Some(BigInt::one()), |x| Some(x * &a))
                .take(n - i + 1)
                .collect();
            let mut g_pow = BigInt::one();
            for j in i..=n {
                let numer = binomial(n - i, j - i) * &g_pow * &a_pows[n - j];
                row.push((j - 1, Rational::new(numer, denom.clone())));
                g_pow *= &g;
            }
        } else {
            row.push((n - 1, Rational::one()));
        }
        rows.push(row);
    }
    Ok(AggregateChain {
        labels: (1..=n).map(|k| k.to_string()).collect(),
        matrix: TransitionMatrix::from_rows(rows),
        post_rounds: 0,
    })
}

/// Closed-form spectrum of the `K_n` chain: `{0, 1} ∪ {((n-1-i)/(n-1))^{i(n-i)} : 1 <= i <= n-2}`,
/// sorted ascending. For `n = 1` the chain has the single eigenvalue 1.
pub fn kn_spectrum_formula(n: usize) -> Vec<Rational> {
    let mut spec = vec![Rational::one()];
    if n >= 2 {
        spec.push(Rational::zero());
    }
    for i in 1..n.saturating_sub(1) {
        spec.push(pow(&ratio((n - 1 - i) as i64, (n - 1) as i64), i * (n - i)));
    }
    spec.sort();
    spec
}

pub fn kn_ept(n: usize) -> Result<Rational> {
    kn_chain(n)?.ept()
}

/// Which part of `K_{m,n}` holds the initial blue vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// The part of size `m` (vertex `u`).
    M,
    /// The part of size `n` (vertex `v`).
    N,
}

/// `K_{m,n}` chain over states `(a, b)`: `a` blue in the part of size `m`,
/// `b` blue in the part of size `n`.
///
/// The full grid is kept, including states unreachable from the start, and
/// sorted by `(a + b, start-side count)` so the matrix is upper triangular.
pub fn kmn_chain(m: usize, n: usize, start: Side) -> Result<AggregateChain> {
    if m == 0 || n == 0 {
        return Err(PzfError::FamilyTooSmall {
            family: "complete_bipartite",
            min: 1,
            got: m.min(n),
        });
    }
    // (own, other) = sizes of the start part and the opposite part
    let (own, other) = match start {
        Side::M => (m, n),
        Side::N => (n, m),
    };
    let mut states: Vec<(usize, usize)> = (1..=own)
        .flat_map(|a| (0..=other).map(move |b| (a, b)))
        .collect();
    states.sort_by_key(|&(a, b)| (a + b, a));
    let index: HashMap<(usize, usize), usize> =
        states.iter().enumerate().map(|(i, &s)| (s, i)).collect();

    let mut rows = Vec::with_capacity(states.len());
    for &(a, b) in &states {
        // a blue vertices each force the other side's whites w.p. (b+1)/other,
        // b blue vertices each force the own side's whites w.p. (a+1)/own.
        let miss_other = Rational::one() - ratio((b + 1) as i64, other as i64);
        let miss_own = Rational::one() - ratio((a + 1) as i64, own as i64);
        let stay_other = pow(&miss_other, a);
        let stay_own = pow(&miss_own, b);
        let hit_other = Rational::one() - &stay_other;
        let hit_own = Rational::one() - &stay_own;
        let mut row = Vec::new();
        for l in 0..=other - b {
            let p_other = binomial_q(other - b, l)
                * pow(&hit_other, l)
                * pow(&miss_other, a * (other - b - l));
            if p_other.is_zero() {
                continue;
            }
            for k in 0..=own - a {
                let p_own = binomial_q(own - a, k)
                    * pow(&hit_own, k)
                    * pow(&miss_own, b * (own - a - k));
                if !p_own.is_zero() {
                    row.push((index[&(a + k, b + l)], &p_other * p_own));
                }
            }
        }
        rows.push(row);
    }
    let labels = states
        .iter()
        .map(|&(a, b)| match start {
            Side::M => format!("({a},{b})"),
            Side::N => format!("({b},{a})"),
        })
        .collect();
    Ok(AggregateChain {
        labels,
        matrix: TransitionMatrix::from_rows(rows),
        post_rounds: 0,
    })
}

pub fn kmn_ept(m: usize, n: usize, start: Side) -> Result<Rational> {
    kmn_chain(m, n, start)?.ept()
}

/// Where the initial blue vertex of an n-Sun sits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SunStart {
    Cycle,
    Leaf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum SunState {
    One,
    OneLeaf,
    /// `c` blue cycle vertices (`2 <= c <= n-1`), `l` outermost leaves forced.
    Band(usize, usize),
    Done,
}

/// n-Sun chain over the embedded cycle: states `1, 1L, (c,l) for 2 <= c <= n-2,
/// (n-1,l), (n)`. The leaf-start chain begins at `1L`. `post_rounds` covers
/// the final leaf round (and the opening deterministic force for a leaf start).
pub fn sun_chain(n: usize, start: SunStart) -> Result<AggregateChain> {
    if n < 5 {
        return Err(PzfError::FamilyTooSmall {
            family: "sun chain",
            min: 5,
            got: n,
        });
    }
    let mut states = Vec::new();
    if start == SunStart::Cycle {
        states.push(SunState::One);
    }
    states.push(SunState::OneLeaf);
    for c in 2..=n - 1 {
        for l in 0..=2 {
            states.push(SunState::Band(c, l));
        }
    }
    states.push(SunState::Done);
    let index: HashMap<SunState, usize> =
        states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let band = |c: usize, l: usize| {
        if c >= n {
            SunState::Done
        } else {
            SunState::Band(c, l)
        }
    };

    let rows = states
        .iter()
        .map(|&state| {
            let outcomes: Vec<(SunState, Rational)> = match state {
                SunState::One => vec![
                    (SunState::One, ratio(8, 27)),
                    (SunState::OneLeaf, ratio(4, 27)),
                    (band(2, 0), ratio(8, 27)),
                    (band(2, 1), ratio(4, 27)),
                    (band(3, 0), ratio(1, 9)),
                ],
                SunState::OneLeaf => vec![
                    (SunState::OneLeaf, ratio(1, 9)),
                    (band(2, 1), ratio(4, 9)),
                    (band(3, 0), ratio(4, 9)),
                ],
                SunState::Band(c, 0) if c == n - 1 => vec![
                    (band(c, 0), ratio(1, 81)),
                    (band(c, 1), ratio(4, 81)),
                    (band(c, 2), ratio(4, 81)),
                    (SunState::Done, ratio(8, 9)),
                ],
                SunState::Band(c, _) if c == n - 1 => vec![(SunState::Done, int(1))],
                SunState::Band(c, 0) => vec![
                    (band(c, 0), ratio(1, 81)),
                    (band(c, 1), ratio(4, 81)),
                    (band(c, 2), ratio(4, 81)),
                    (band(c + 1, 0), ratio(4, 27)),
                    (band(c + 1, 1), ratio(8, 27)),
                    (band(c + 2, 0), ratio(4, 9)),
                ],
                SunState::Band(c, 1) => vec![
                    (band(c + 1, 0), ratio(1, 9)),
                    (band(c + 1, 1), ratio(2, 9)),
                    (band(c + 2, 0), ratio(2, 3)),
                ],
                SunState::Band(c, _) => vec![(band(c + 2, 0), int(1))],
                SunState::Done => vec![(SunState::Done, int(1))],
            };
            outcomes
                .into_iter()
                .map(|(s, p)| (index[&s], p))
                .collect()
        })
        .collect();

    let labels = states
        .iter()
        .map(|s| match *s {
            SunState::One => "1".to_string(),
            SunState::OneLeaf => "1L".to_string(),
            SunState::Band(c, l) => format!("({c},{l})"),
            SunState::Done => format!("({n})"),
        })
        .collect();
    Ok(AggregateChain {
        labels,
        matrix: TransitionMatrix::from_rows(rows),
        post_rounds: match start {
            SunStart::Cycle => 1,
            SunStart::Leaf => 2,
        },
    })
}

pub fn sun_ept_from(n: usize, start: SunStart) -> Result<Rational> {
    sun_chain(n, start)?.ept()
}

/// `ept(n-Sun)`. Orders 3 and 4 fall back to the subset engine since the
/// aggregate band `(c, l)` needs `n >= 5`.
pub fn sun_ept(n: usize) -> Result<Rational> {
    match n {
        0..=2 => Err(PzfError::FamilyTooSmall {
            family: "sun",
            min: 3,
            got: n,
        }),
        3 | 4 => Ok(ept_graph(&generators::sun(n)?, ChainOptions::default())?.value),
        _ => {
            let cycle = sun_ept_from(n, SunStart::Cycle)?;
            let leaf = sun_ept_from(n, SunStart::Leaf)?;
            Ok(cycle.min(leaf))
        }
    }
}
