//! Bit-arithmetic model of the hypercube `Q_n`.
//!
//! Vertices are `n`-bit integers; bit `i` is coordinate `i`. An edge is stored
//! canonically as its lower endpoint (the one with bit `d` clear) together with
//! the dimension `d` it flips. Edges are densely indexed dimension-major:
//!
//! ```text
//! id = d * 2^(n-1) + squeeze(u, d)
//! ```
//!
//! where `squeeze` deletes bit `d` from `u` and shifts the higher bits down.
//! This order is the one used by every label array and file format in the
//! crate.

use std::fmt;

use thiserror::Error;

/// Default upper bound on the dimension accepted by [`Dimension::new`].
pub const N_MAX: u32 = 24;

/// Absolute ceiling, regardless of any cap override. Vertices are `u32`.
pub const HARD_MAX: u32 = 31;

pub type VertexId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HypercubeError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("dimension {n} exceeds the cap of {cap}")]
    CapExceeded { n: u32, cap: u32 },
    #[error("malformed edge (u={u:#b}, d={d}) for n={n}")]
    MalformedEdge { u: VertexId, d: u32, n: u32 },
    #[error("edge id {id} out of range for n={n} ({count} edges)")]
    EdgeIdOutOfRange { id: u64, n: u32, count: u64 },
    #[error("vertex {v} out of range for n={n}")]
    VertexOutOfRange { v: u64, n: u32 },
}

/// Number of cube dimensions, `1 <= n <= cap`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(n: u32) -> Result<Self, HypercubeError> {
        Self::with_cap(n, N_MAX)
    }

    /// Like [`Dimension::new`] but with a caller-chosen cap (clamped to
    /// [`HARD_MAX`]).
    pub fn with_cap(n: u32, cap: u32) -> Result<Self, HypercubeError> {
        let cap = cap.min(HARD_MAX);
        if n == 0 {
            Err(HypercubeError::ZeroDimension)
        } else if n > cap {
            Err(HypercubeError::CapExceeded { n, cap })
        } else {
            Ok(Dimension(n))
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// `k = floor(n / 2)`, the number of spanning trees in a maximum packing.
    #[inline]
    pub fn half(self) -> u32 {
        self.0 / 2
    }

    #[inline]
    pub fn vertex_count(self) -> u64 {
        1u64 << self.0
    }

    /// `n * 2^(n-1)`.
    #[inline]
    pub fn edge_count(self) -> u64 {
        u64::from(self.0) << (self.0 - 1)
    }

    pub fn contains_vertex(self, v: u64) -> bool {
        v < self.vertex_count()
    }

    /// All canonical edges in `EdgeId` order.
    pub fn edges(self) -> impl Iterator<Item = Edge> {
        let n = self.0;
        (0..n).flat_map(move |d| {
            (0..1u32 << (n - 1)).map(move |s| Edge {
                u: unsqueeze(s, d),
                d,
            })
        })
    }

    /// Neighbours of `v`, one per dimension.
    pub fn neighbors(self, v: VertexId) -> impl Iterator<Item = VertexId> {
        (0..self.0).map(move |d| v ^ (1 << d))
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Canonical hypercube edge: lower endpoint `u` (bit `d` clear) and dimension
/// `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub d: u32,
}

impl Edge {
    /// Builds the canonical edge joining two vertices at Hamming distance 1.
    pub fn between(a: VertexId, b: VertexId) -> Option<Edge> {
        let x = a ^ b;
        if x.count_ones() != 1 {
            return None;
        }
        Some(Edge {
            u: a & !x,
            d: x.trailing_zeros(),
        })
    }

    #[inline]
    pub fn v(self) -> VertexId {
        self.u | (1 << self.d)
    }

    #[inline]
    pub fn endpoints(self) -> (VertexId, VertexId) {
        (self.u, self.v())
    }

    pub fn is_valid(self, n: Dimension) -> bool {
        self.d < n.get() && self.u & (1 << self.d) == 0 && u64::from(self.u) < n.vertex_count()
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v())
    }
}

/// Dense index of an edge, in `[0, n * 2^(n-1))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u64);

impl EdgeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Removes bit `d` from `u`, closing the gap.
#[inline]
pub fn squeeze(u: VertexId, d: u32) -> u32 {
    let low = u & ((1 << d) - 1);
    let high = (u >> (d + 1)) << d;
    high | low
}

/// Inverse of [`squeeze`]: inserts a zero at bit `d`.
#[inline]
pub fn unsqueeze(s: u32, d: u32) -> VertexId {
    let low = s & ((1 << d) - 1);
    let high = (s >> d) << (d + 1);
    high | low
}

/// Unchecked dense index. Caller guarantees `e` is valid for `n`.
#[inline]
pub fn edge_index(e: Edge, n: Dimension) -> usize {
    ((e.d as usize) << (n.get() - 1)) | squeeze(e.u, e.d) as usize
}

pub fn edge_id(e: Edge, n: Dimension) -> Result<EdgeId, HypercubeError> {
    if !e.is_valid(n) {
        return Err(HypercubeError::MalformedEdge {
            u: e.u,
            d: e.d,
            n: n.get(),
        });
    }
    Ok(EdgeId(edge_index(e, n) as u64))
}

pub fn edge_from_id(id: EdgeId, n: Dimension) -> Result<Edge, HypercubeError> {
    if id.0 >= n.edge_count() {
        return Err(HypercubeError::EdgeIdOutOfRange {
            id: id.0,
            n: n.get(),
            count: n.edge_count(),
        });
    }
    Ok(edge_at(id.index(), n))
}

/// Unchecked inverse of [`edge_index`].
#[inline]
pub fn edge_at(index: usize, n: Dimension) -> Edge {
    let shift = n.get() - 1;
    let d = (index >> shift) as u32;
    let s = (index & ((1usize << shift) - 1)) as u32;
    Edge {
        u: unsqueeze(s, d),
        d,
    }
}

/// Places `copy_bits` at bit positions `at, at+1, ...` above `v`.
///
/// With `v < 2^at`, the image of `embed(., c, at)` is exactly the vertex set of
/// copy `c` in the product split `Q_{at+j} = Q_j x Q_at`.
#[inline]
pub fn embed(v: VertexId, copy_bits: u32, at: u32) -> VertexId {
    debug_assert!(at >= 32 || u64::from(v) < 1u64 << at);
    v | (copy_bits << at)
}

/// Embeds an edge of a sub-cube into the copy selected by `copy_bits`.
#[inline]
pub fn embed_edge(e: Edge, copy_bits: u32, at: u32) -> Edge {
    Edge {
        u: embed(e.u, copy_bits, at),
        d: e.d,
    }
}

/// Bitset over the edges of `Q_n`, indexed by [`EdgeId`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    n: Dimension,
    words: Vec<u64>,
    len: usize,
}

impl EdgeSet {
    pub fn new(n: Dimension) -> Self {
        let bits = n.edge_count() as usize;
        EdgeSet {
            n,
            words: vec![0; bits.div_ceil(64)],
            len: 0,
        }
    }

    pub fn from_edges<I: IntoIterator<Item = Edge>>(
        n: Dimension,
        edges: I,
    ) -> Result<Self, HypercubeError> {
        let mut set = EdgeSet::new(n);
        for e in edges {
            set.insert(edge_id(e, n)?);
        }
        Ok(set)
    }

    pub fn dimension(&self) -> Dimension {
        self.n
    }

    /// Returns `true` if the edge was not already present.
    pub fn insert(&mut self, id: EdgeId) -> bool {
        let (w, b) = (id.index() / 64, id.index() % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        self.len += usize::from(fresh);
        fresh
    }

    pub fn remove(&mut self, id: EdgeId) -> bool {
        let (w, b) = (id.index() / 64, id.index() % 64);
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.len -= usize::from(present);
        present
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        let i = id.index();
        i / 64 < self.words.len() && self.words[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut rest = word;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(EdgeId((w * 64 + b) as u64))
            })
        })
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let n = self.n;
        self.ids().map(move |id| edge_at(id.index(), n))
    }
}
