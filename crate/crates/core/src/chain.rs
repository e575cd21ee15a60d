//! Reachable-state enumeration, transition-matrix assembly and the exact
//! expected propagation time.
//!
//! With a properly ordered state list `S_1..S_s` (initial set first, all-blue
//! last) the transition matrix `M` is upper triangular, and
//!
//! ```text
//! ept(G, B) = ((M - 1 e_s^T - I)^{-1})_{1s} + 1
//! ```
//!
//! which is evaluated by exact back-substitution on `(M - 1 e_s^T - I) x = e_s`.

use std::collections::hash_map::{Entry, HashMap};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::blueset::{BlueSet, NeighborMasks};
use crate::dynamics::round_distribution_masks;
use crate::error::{PzfError, Result};
use crate::graph::{Graph, VertexId};
use crate::rational::{render_decimal, Precision, Rational};

/// Default limit on the number of reachable simple states.
pub const DEFAULT_STATE_CAP: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainOptions {
    pub state_cap: usize,
}

impl Default for ChainOptions {
    fn default() -> Self {
        ChainOptions {
            state_cap: DEFAULT_STATE_CAP,
        }
    }
}

/// Square matrix stored as rows of `(column, value)` pairs, sorted by column,
/// with zero entries omitted.
#[derive(Debug, Clone, PartialEq)]
pub struct TransitionMatrix {
    rows: Vec<Vec<(usize, Rational)>>,
}

impl TransitionMatrix {
    /// Normalizes rows: sorts by column, merges duplicate columns, drops zeros.
    pub fn from_rows(rows: Vec<Vec<(usize, Rational)>>) -> Self {
        let rows = rows
            .into_iter()
            .map(|mut row| {
                row.sort_by_key(|(j, _)| *j);
                let mut merged: Vec<(usize, Rational)> = Vec::with_capacity(row.len());
                for (j, v) in row {
                    match merged.last_mut() {
                        Some((k, acc)) if *k == j => *acc += v,
                        _ => merged.push((j, v)),
                    }
                }
                merged.retain(|(_, v)| !v.is_zero());
                merged
            })
            .collect();
        TransitionMatrix { rows }
    }

    pub fn from_dense(dense: Vec<Vec<Rational>>) -> Self {
        Self::from_rows(
            dense
                .into_iter()
                .map(|row| row.into_iter().enumerate().collect())
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.rows[i]
            .binary_search_by_key(&j, |(k, _)| *k)
            .map(|pos| self.rows[i][pos].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let s = self.len();
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![Rational::zero(); s];
                for (j, v) in row {
                    dense[*j] = v.clone();
                }
                dense
            })
            .collect()
    }

    pub fn nonzeros(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn diagonal(&self) -> Vec<Rational> {
        (0..self.len()).map(|i| self.get(i, i)).collect()
    }

    pub fn row_sum(&self, i: usize) -> Rational {
        self.rows[i].iter().map(|(_, v)| v).sum()
    }

    pub fn check_upper_triangular(&self) -> Result<()> {
        for (i, row) in self.rows.iter().enumerate() {
            if let Some((j, _)) = row.iter().find(|(j, _)| *j < i) {
                return Err(PzfError::NotTriangular { row: i, col: *j });
            }
        }
        Ok(())
    }

    /// Checks every structural invariant of a properly ordered absorbing chain:
    /// nonnegative entries, rows summing to exactly 1, upper triangular, the
    /// last state absorbing and no other state absorbing.
    pub fn validate(&self) -> Result<()> {
        let s = self.len();
        if s == 0 {
            return Err(PzfError::Contract("empty transition matrix".into()));
        }
        for (i, row) in self.rows.iter().enumerate() {
            if let Some((j, _)) = row.iter().find(|(j, v)| *j >= s || *v < Rational::zero()) {
                return Err(PzfError::Contract(format!("bad entry ({i}, {j})")));
            }
            if !self.row_sum(i).is_one() {
                return Err(PzfError::Contract(format!("row {i} does not sum to 1")));
            }
        }
        self.check_upper_triangular()?;
        for i in 0..s - 1 {
            if self.get(i, i).is_one() {
                return Err(PzfError::SpuriousAbsorbingState(i));
            }
        }
        if !self.get(s - 1, s - 1).is_one() {
            return Err(PzfError::Contract("final state is not absorbing".into()));
        }
        Ok(())
    }

    /// Solves `(M - 1 e_s^T - I) x = e_s` by back-substitution.
    ///
    /// Requires an upper-triangular matrix whose only absorbing state is the
    /// last one; then the diagonal of the system (`m_kk - 1`, and `-1` at `s`)
    /// is nonzero.
    pub fn deflated_solve(&self) -> Result<Vec<Rational>> {
        self.check_upper_triangular()?;
        let s = self.len();
        let mut x = vec![Rational::zero(); s];
        for i in (0..s).rev() {
            let mut diag = -Rational::one();
            let mut off_diag = Rational::zero();
            for (j, m) in &self.rows[i] {
                if *j == i {
                    diag += m;
                } else {
                    off_diag += m * &x[*j];
                }
            }
            let rhs = if i == s - 1 {
                diag -= Rational::one();
                Rational::one()
            } else {
                // the -1 e_s^T term contributes -x_s to every row above the last
                off_diag -= &x[s - 1];
                -off_diag
            };
            if diag.is_zero() {
                return Err(PzfError::SpuriousAbsorbingState(i));
            }
            x[i] = rhs / diag;
        }
        Ok(x)
    }

    /// The first entry of [`deflated_solve`](Self::deflated_solve), computed
    /// fraction-free: each row is scaled to integers, every `x_j` is kept over
    /// the shared denominator `D_j = f_j D_{j+1}`, and only the result is reduced.
    ///
    /// Suited to short dense chains whose reduced solutions have very large
    /// denominators; on long sparse chains the per-row Horner pass costs
    /// `O(s^2)` big multiplications.
    pub fn deflated_solve_first(&self) -> Result<Rational> {
        self.check_upper_triangular()?;
        let s = self.len();
        if s == 0 {
            return Err(PzfError::Contract("empty transition matrix".into()));
        }
        let scaled: Vec<(BigInt, Vec<(usize, BigInt)>)> = self
            .rows
            .par_iter()
            .map(|row| {
                let l = row
                    .iter()
                    .fold(BigInt::one(), |acc, (_, m)| acc.lcm(m.denom()));
                let c = row
                    .iter()
                    .map(|(j, m)| (*j, m.numer() * (&l / m.denom())))
                    .collect();
                (l, c)
            })
            .collect();
        let coeff = |i: usize, j: usize| -> BigInt {
            scaled[i]
                .1
                .iter()
                .find(|(k, _)| *k == j)
                .map(|(_, c)| c.clone())
                .unwrap_or_default()
        };
        // x_s = 1 / (m_ss - 2) = L / (c_ss - 2L)
        let (l_last, _) = &scaled[s - 1];
        let mut numer = vec![BigInt::zero(); s];
        numer[s - 1] = l_last.clone();
        let mut factor = vec![BigInt::zero(); s];
        factor[s - 1] = coeff(s - 1, s - 1) - l_last * 2u32;
        if factor[s - 1].is_zero() {
            return Err(PzfError::SpuriousAbsorbingState(s - 1));
        }
        for i in (0..s - 1).rev() {
            let l = &scaled[i].0;
            factor[i] = l - coeff(i, i);
            if factor[i].is_zero() {
                return Err(PzfError::SpuriousAbsorbingState(i));
            }
            let mut acc = (coeff(i, s - 1) - l) * &numer[s - 1];
            for j in (i + 1..s - 1).rev() {
                acc *= &factor[j];
                let c = coeff(i, j);
                if !c.is_zero() {
                    acc += c * &numer[j];
                }
            }
            numer[i] = acc;
        }
        let denom = factor.iter().fold(BigInt::one(), |acc, f| acc * f);
        Ok(Rational::new(numer.swap_remove(0), denom))
    }

    /// Expected number of rounds to absorption from every state.
    pub fn expected_times(&self) -> Result<Vec<Rational>> {
        Ok(self
            .deflated_solve()?
            .into_iter()
            .map(|x| x + Rational::one())
            .collect())
    }
}

/// Ordered state list plus transition matrix for one initial set.
#[derive(Debug, Clone, PartialEq)]
pub struct StateChain {
    pub states: Vec<BlueSet>,
    pub matrix: TransitionMatrix,
}

impl StateChain {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, b: BlueSet) -> Option<usize> {
        self.states.binary_search_by(|s| s.state_cmp(&b)).ok()
    }
}

type RowMap = HashMap<BlueSet, Vec<(BlueSet, Rational)>>;

/// Breadth-first closure of the one-round supports from `seeds`.
fn explore(g: &Graph, seeds: &[BlueSet], opts: ChainOptions) -> Result<(Vec<BlueSet>, RowMap)> {
    g.require_connected()?;
    let masks = NeighborMasks::new(g)?;
    let full = BlueSet::full(g.order());
    let mut rows: RowMap = HashMap::new();
    let mut frontier = Vec::new();
    for &seed in seeds {
        if seed.is_empty() {
            return Err(PzfError::EmptyBlueSet);
        }
        if !seed.is_subset_of(full) {
            return Err(PzfError::Contract(format!("{seed} is not a vertex subset")));
        }
        if let Entry::Vacant(e) = rows.entry(seed) {
            e.insert(Vec::new());
            frontier.push(seed);
        }
    }
    while !frontier.is_empty() {
        if rows.len() > opts.state_cap {
            return Err(PzfError::StateCapExceeded { cap: opts.state_cap });
        }
        let expanded: Vec<(BlueSet, Vec<(BlueSet, Rational)>)> = frontier
            .par_iter()
            .map(|&b| {
                let row = if b == full {
                    vec![(full, Rational::one())]
                } else {
                    round_distribution_masks(&masks, b).entries
                };
                (b, row)
            })
            .collect();
        let mut next = Vec::new();
        for (b, row) in expanded {
            for (succ, _) in &row {
                if !rows.contains_key(succ) {
                    rows.insert(*succ, Vec::new());
                    next.push(*succ);
                }
            }
            rows.insert(b, row);
        }
        frontier = next;
    }
    if rows.len() > opts.state_cap {
        return Err(PzfError::StateCapExceeded { cap: opts.state_cap });
    }
    let mut states: Vec<BlueSet> = rows.keys().copied().collect();
    states.sort_by(BlueSet::state_cmp);
    Ok((states, rows))
}

fn assemble(states: &[BlueSet], mut rows: RowMap) -> TransitionMatrix {
    let index: HashMap<BlueSet, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    TransitionMatrix::from_rows(
        states
            .iter()
            .map(|s| {
                rows.remove(s)
                    .expect("every state was expanded")
                    .into_iter()
                    .map(|(succ, p)| (index[&succ], p))
                    .collect()
            })
            .collect(),
    )
}

/// All simple states reachable from `b`, in proper order (popcount, then bitmask).
pub fn enumerate_states(g: &Graph, b: BlueSet, opts: ChainOptions) -> Result<Vec<BlueSet>> {
    explore(g, &[b], opts).map(|(states, _)| states)
}

pub fn build_chain(g: &Graph, b: BlueSet, opts: ChainOptions) -> Result<StateChain> {
    let (states, rows) = explore(g, &[b], opts)?;
    let matrix = assemble(&states, rows);
    Ok(StateChain { states, matrix })
}

/// Exact `ept(g, b)`; 0 when `b` is already every vertex.
pub fn ept_exact(g: &Graph, b: BlueSet, opts: ChainOptions) -> Result<Rational> {
    if g.order() <= 64 && b == BlueSet::full(g.order()) {
        g.require_connected()?;
        return Ok(Rational::zero());
    }
    let chain = build_chain(g, b, opts)?;
    let x = chain.matrix.deflated_solve()?;
    Ok(&x[0] + Rational::one())
}

/// `ept(g)` with every minimizing start vertex and the per-vertex values.
#[derive(Debug, Clone, PartialEq)]
pub struct GraphEpt {
    pub value: Rational,
    pub argmin: Vec<VertexId>,
    pub per_vertex: Vec<Rational>,
    /// Size of the union of the state spaces reachable from single vertices.
    pub state_count: usize,
}

/// Minimum of `ept(g, {v})` over all `v`. All starts share one state space,
/// so a single triangular solve yields every per-vertex value.
pub fn ept_graph(g: &Graph, opts: ChainOptions) -> Result<GraphEpt> {
    g.require_connected()?;
    let n = g.order();
    if n == 0 {
        return Err(PzfError::Contract("graph has no vertices".into()));
    }
    let seeds: Vec<BlueSet> = (0..n).map(BlueSet::singleton).collect();
    let (states, rows) = explore(g, &seeds, opts)?;
    let matrix = assemble(&states, rows);
    let times = matrix.expected_times()?;
    let per_vertex: Vec<Rational> = seeds
        .iter()
        .map(|&s| {
            let i = states
                .binary_search_by(|t| t.state_cmp(&s))
                .expect("seed is a state");
            times[i].clone()
        })
        .collect();
    let value = per_vertex.iter().min().expect("n >= 1").clone();
    let argmin = (0..n).filter(|&v| per_vertex[v] == value).collect();
    Ok(GraphEpt {
        value,
        argmin,
        per_vertex,
        state_count: states.len(),
    })
}

/// Multiset of diagonal entries, which is the spectrum of a triangular chain, sorted ascending.
pub fn diagonal_spectrum(matrix: &TransitionMatrix) -> Vec<Rational> {
    let mut d = matrix.diagonal();
    d.sort();
    d
}

/// Partial sums `S_R = Σ_{r=1}^{R} r ((M^r)_{1s} - (M^{r-1})_{1s})` for `R = 1, 2, ...`.
///
/// Runs in integer arithmetic over the common denominator `D` of the matrix:
/// with `p_r = a_r / D^r`, `S_R = R p_R - Σ_{r<R} p_r`.
pub struct SeriesPartialSums {
    step: BigInt,
    numer_matrix: Vec<Vec<(usize, BigInt)>>,
    row: Vec<BigInt>,
    r: u64,
    /// `Σ_{k<r} a_k[s] D^{r-k}`
    acc: BigInt,
    denom_pow: BigInt,
}

impl SeriesPartialSums {
    pub fn new(matrix: &TransitionMatrix) -> Self {
        let step = (0..matrix.len())
            .flat_map(|i| matrix.row(i).iter().map(|(_, v)| v.denom().clone()))
            .fold(BigInt::one(), |acc, d| acc.lcm(&d));
        let numer_matrix = (0..matrix.len())
            .map(|i| {
                matrix
                    .row(i)
                    .iter()
                    .map(|(j, v)| (*j, v.numer() * (&step / v.denom())))
                    .collect()
            })
            .collect();
        let mut row = vec![BigInt::zero(); matrix.len()];
        if !row.is_empty() {
            row[0] = BigInt::one();
        }
        SeriesPartialSums {
            step,
            numer_matrix,
            row,
            r: 0,
            acc: BigInt::zero(),
            denom_pow: BigInt::one(),
        }
    }
}

impl Iterator for SeriesPartialSums {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        let s = self.row.len();
        if s == 0 {
            return None;
        }
        self.acc = &self.step * (&self.acc + &self.row[s - 1]);
        let mut next = vec![BigInt::zero(); s];
        for (i, a) in self.row.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, n) in &self.numer_matrix[i] {
                next[*j] += a * n;
            }
        }
        self.row = next;
        self.r += 1;
        self.denom_pow *= &self.step;
        let numer = BigInt::from(self.r) * &self.row[s - 1] - &self.acc;
        Some(Rational::new(numer, self.denom_pow.clone()))
    }
}

/// `Σ_{r=1}^{R} r (M^r - M^{r-1})_{1s}` in exact arithmetic.
pub fn ept_series_partial(chain: &StateChain, big_r: usize) -> Rational {
    assert!(big_r >= 1, "R must be at least 1");
    SeriesPartialSums::new(&chain.matrix)
        .nth(big_r - 1)
        .expect("series is infinite")
}

/// Result record for one exact computation.
#[derive(Debug, Clone, PartialEq)]
pub struct EptReport {
    pub graph_id: String,
    pub initial: BlueSet,
    pub exact: Rational,
    pub decimal: String,
    pub precision: Precision,
    pub state_count: usize,
    pub elapsed: Duration,
}

pub fn ept_report(
    g: &Graph,
    graph_id: &str,
    b: BlueSet,
    precision: Precision,
    opts: ChainOptions,
) -> Result<EptReport> {
    let start = Instant::now();
    let (exact, state_count) = if g.order() <= 64 && b == BlueSet::full(g.order()) {
        (ept_exact(g, b, opts)?, 1)
    } else {
        let chain = build_chain(g, b, opts)?;
        let x = chain.matrix.deflated_solve()?;
        (&x[0] + Rational::one(), chain.len())
    };
    Ok(EptReport {
        graph_id: graph_id.to_string(),
        initial: b,
        decimal: render_decimal(&exact, precision),
        exact,
        precision,
        state_count,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::*;
    use crate::rational::{int, ratio};

    fn opts() -> ChainOptions {
        ChainOptions::default()
    }

    fn single(v: usize) -> BlueSet {
        BlueSet::singleton(v)
    }

    #[test]
    fn k2_chain() {
        let k2 = complete(2).unwrap();
        let chain = build_chain(&k2, single(0), opts()).unwrap();
        assert_eq!(chain.states, vec![single(0), BlueSet::full(2)]);
        assert_eq!(
            chain.matrix.to_dense(),
            vec![vec![int(0), int(1)], vec![int(0), int(1)]]
        );
        assert_eq!(diagonal_spectrum(&chain.matrix), vec![int(0), int(1)]);
        assert_eq!(ept_series_partial(&chain, 1), int(1));
        assert_eq!(ept_exact(&k2, single(0), opts()).unwrap(), int(1));
    }

    #[test]
    fn p4_states() {
        let p4 = path(4).unwrap();
        let states = enumerate_states(&p4, single(1), opts()).unwrap();
        let expected: Vec<BlueSet> = [&[1][..], &[0, 1], &[1, 2], &[0, 1, 2], &[0, 1, 2, 3]]
            .iter()
            .map(|vs| BlueSet::from_vertices(4, vs).unwrap())
            .collect();
        assert_eq!(states, expected);
        assert_eq!(ept_exact(&p4, single(1), opts()).unwrap(), ratio(8, 3));
    }

    #[test]
    fn kn_reaches_every_superset() {
        for n in 2..=6 {
            let g = complete(n).unwrap();
            let states = enumerate_states(&g, single(0), opts()).unwrap();
            let brute: Vec<BlueSet> = (0..1u64 << n)
                .map(BlueSet::from_bits)
                .filter(|s| s.contains(0))
                .collect();
            assert_eq!(states.len(), brute.len());
            assert!(brute.iter().all(|s| states.contains(s)));
        }
    }

    #[test]
    fn c4_chain_popcount_rows() {
        let c4 = cycle(4).unwrap();
        let chain = build_chain(&c4, single(0), opts()).unwrap();
        let mut by_count = vec![Rational::zero(); 5];
        for (j, p) in chain.matrix.row(0) {
            by_count[chain.states[*j].len()] += p;
        }
        assert_eq!(&by_count[1..], &[ratio(1, 4), ratio(1, 2), ratio(1, 4), int(0)]);
        assert_eq!(ept_exact(&c4, single(0), opts()).unwrap(), ratio(7, 3));
    }

    #[test]
    fn diamond_and_tadpole_values() {
        let d = diamond();
        assert_eq!(ept_exact(&d, single(0), opts()).unwrap(), ratio(2911, 1140));
        let t2 = tadpole4(2).unwrap();
        let b = BlueSet::from_vertices(t2.order(), &[0, 4]).unwrap();
        assert_eq!(ept_exact(&t2, b, opts()).unwrap(), ratio(17, 8));
        let t2p = tadpole4_prime(2).unwrap();
        assert_eq!(ept_exact(&t2p, b, opts()).unwrap(), ratio(55, 24));
    }

    #[test]
    fn graph_minimums() {
        let c4 = ept_graph(&cycle(4).unwrap(), opts()).unwrap();
        assert_eq!(c4.value, ratio(7, 3));
        assert_eq!(c4.argmin, vec![0, 1, 2, 3]);
        let star = ept_graph(&star(3).unwrap(), opts()).unwrap();
        assert_eq!(star.value, ratio(21, 8));
        // a leaf forces the center deterministically, which beats starting at the center
        assert_eq!(star.argmin, vec![1, 2, 3]);
        let k1 = ept_graph(&complete(1).unwrap(), opts()).unwrap();
        assert_eq!((k1.value, k1.argmin), (int(0), vec![0]));
    }

    #[test]
    fn full_set_is_zero() {
        let p4 = path(4).unwrap();
        assert_eq!(ept_exact(&p4, BlueSet::full(4), opts()).unwrap(), int(0));
    }

    #[test]
    fn disconnected_and_cap_errors() {
        let split = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(ept_graph(&split, opts()), Err(PzfError::Disconnected));
        let k6 = complete(6).unwrap();
        let tight = ChainOptions { state_cap: 10 };
        assert_eq!(
            ept_exact(&k6, single(0), tight),
            Err(PzfError::StateCapExceeded { cap: 10 })
        );
        assert_eq!(
            ept_exact(&k6, BlueSet::EMPTY, opts()),
            Err(PzfError::EmptyBlueSet)
        );
    }

    #[test]
    fn solver_rejects_misordered_matrix() {
        let m = TransitionMatrix::from_dense(vec![
            vec![int(0), int(1)],
            vec![int(1), int(0)],
        ]);
        assert_eq!(m.deflated_solve(), Err(PzfError::NotTriangular { row: 1, col: 0 }));
        let stuck = TransitionMatrix::from_dense(vec![
            vec![int(1), int(0)],
            vec![int(0), int(1)],
        ]);
        assert_eq!(stuck.deflated_solve(), Err(PzfError::SpuriousAbsorbingState(0)));
        assert!(stuck.validate().is_err());
    }

    #[test]
    fn series_converges_to_exact_on_p4() {
        let p4 = path(4).unwrap();
        let chain = build_chain(&p4, single(1), opts()).unwrap();
        let s50 = ept_series_partial(&chain, 50);
        let exact = ratio(8, 3);
        assert!(crate::rational::within(&s50, &exact, &crate::rational::ten_pow_neg(6)));
        let sums: Vec<Rational> = SeriesPartialSums::new(&chain.matrix).take(60).collect();
        assert!(sums.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn report_renders_decimal() {
        let k4 = complete(4).unwrap();
        let r = ept_report(&k4, "K4", single(0), Precision::default(), opts()).unwrap();
        assert_eq!(r.exact, ratio(951, 380));
        assert_eq!(r.decimal, "2.50263");
        assert_eq!(r.state_count, 8);
    }
}
