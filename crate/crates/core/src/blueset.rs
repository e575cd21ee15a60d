use std::cmp::Ordering;
use std::fmt;

use crate::error::{PzfError, Result};
use crate::graph::{Graph, VertexId};

/// Largest graph order the bitset-backed engine and simulator accept.
pub const MAX_VERTICES: usize = 63;

/// A set of blue vertices stored as a word-sized bitmask. Also serves as a
/// simple state of the propagation chain.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BlueSet(u64);

impl BlueSet {
    pub const EMPTY: BlueSet = BlueSet(0);

    pub fn from_bits(bits: u64) -> Self {
        BlueSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn singleton(v: VertexId) -> Self {
        debug_assert!(v < 64);
        BlueSet(1 << v)
    }

    /// All of `0..n`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 64);
        if n == 64 {
            BlueSet(u64::MAX)
        } else {
            BlueSet((1u64 << n) - 1)
        }
    }

    /// Builds a set from vertex ids, validated against a graph of order `n`.
    pub fn from_vertices(n: usize, vertices: &[VertexId]) -> Result<Self> {
        check_order(n)?;
        vertices.iter().try_fold(BlueSet::EMPTY, |acc, &v| {
            if v >= n {
                Err(PzfError::VertexOutOfRange { vertex: v, n })
            } else {
                Ok(acc.with(v))
            }
        })
    }

    pub fn contains(self, v: VertexId) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    #[must_use]
    pub fn with(self, v: VertexId) -> Self {
        BlueSet(self.0 | 1 << v)
    }

    pub fn union(self, other: BlueSet) -> Self {
        BlueSet(self.0 | other.0)
    }

    pub fn intersection(self, other: BlueSet) -> Self {
        BlueSet(self.0 & other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: BlueSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = VertexId> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// Proper state order: fewer blue vertices first, ties broken by bitmask.
    pub fn state_cmp(&self, other: &Self) -> Ordering {
        (self.len(), self.0).cmp(&(other.len(), other.0))
    }
}

pub(crate) fn check_order(n: usize) -> Result<()> {
    if n > MAX_VERTICES {
        Err(PzfError::TooManyVertices {
            n,
            max: MAX_VERTICES,
        })
    } else {
        Ok(())
    }
}

/// Per-vertex open and closed neighborhoods as bitmasks, for graphs within the
/// bitset limit.
#[derive(Debug, Clone)]
pub struct NeighborMasks {
    pub(crate) open: Vec<u64>,
    pub(crate) degree: Vec<u32>,
}

impl NeighborMasks {
    pub fn new(g: &Graph) -> Result<Self> {
        check_order(g.order())?;
        let open = (0..g.order())
            .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | 1 << w))
            .collect();
        let degree = (0..g.order()).map(|v| g.degree(v) as u32).collect();
        Ok(NeighborMasks { open, degree })
    }

    pub fn open(&self, v: VertexId) -> BlueSet {
        BlueSet(self.open[v])
    }

    pub fn closed(&self, v: VertexId) -> BlueSet {
        BlueSet(self.open[v] | 1 << v)
    }
}

impl fmt::Debug for BlueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for BlueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let b = BlueSet::from_vertices(5, &[0, 3]).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b.contains(3) && !b.contains(1));
        assert_eq!(b.iter().collect::<Vec<_>>(), vec![0, 3]);
        assert!(b.is_subset_of(BlueSet::full(5)));
        assert!(!BlueSet::full(5).is_subset_of(b));
        assert_eq!(b.to_string(), "{0,3}");
        assert!(BlueSet::from_vertices(5, &[5]).is_err());
        assert!(BlueSet::from_vertices(64, &[0]).is_err());
    }

    #[test]
    fn state_order() {
        let mut v = [
            BlueSet::from_bits(0b111),
            BlueSet::from_bits(0b100),
            BlueSet::from_bits(0b011),
            BlueSet::from_bits(0b010),
        ];
        v.sort_by(BlueSet::state_cmp);
        let bits: Vec<u64> = v.iter().map(|b| b.bits()).collect();
        assert_eq!(bits, vec![0b010, 0b100, 0b011, 0b111]);
    }
}
