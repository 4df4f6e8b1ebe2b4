//! Brute-force oracles for tiny graphs.
//!
//! * Arboricity via the Nash-Williams density formula, maximized over vertex
//!   subsets (the maximum is always attained on an induced subgraph).
//! * Spanning tree packing number via the Tutte / Nash-Williams partition
//!   formula `min_P floor(cross(P) / (|P| - 1))`, enumerating every set
//!   partition as a restricted growth string.
//!
//! These are exponential and capped; they exist to cross-check closed forms
//! and constructions, not to be fast.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::hypercube::Dimension;

/// Vertex cap for subset enumeration (`2^V` subsets).
pub const SUBSET_CAP: usize = 16;
/// Vertex cap for partition enumeration (Bell(10) = 115975 partitions).
pub const PARTITION_CAP: usize = 10;
/// Vertex cap for the edge-removal spot check.
pub const CATLIN_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("graph has no vertices")]
    NoVertices,
    #[error("graph has no edges")]
    Edgeless,
    #[error("{vertices} vertices exceeds the {what} cap of {cap}")]
    CapExceeded {
        what: &'static str,
        vertices: usize,
        cap: usize,
    },
    #[error("need at least {min} vertices, got {vertices}")]
    TooFewVertices { min: usize, vertices: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range (graph has {vertices})")]
    VertexOutOfRange { vertex: usize, vertices: usize },
    #[error("edge {0}-{1} is not in the graph")]
    MissingEdge(usize, usize),
    #[error("graph is {actual}-edge-connected, need {required}")]
    NotEdgeConnected { required: usize, actual: usize },
}

/// Simple undirected graph on at most [`SUBSET_CAP`] vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmallGraph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u32>,
}

impl SmallGraph {
    pub fn new(vertices: usize, edges: &[(usize, usize)]) -> Result<Self, OracleError> {
        if vertices == 0 {
            return Err(OracleError::NoVertices);
        }
        if vertices > SUBSET_CAP {
            return Err(OracleError::CapExceeded {
                what: "graph",
                vertices,
                cap: SUBSET_CAP,
            });
        }
        let mut adj = vec![0u32; vertices];
        let mut seen = BTreeSet::new();
        let mut list = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for x in [a, b] {
                if x >= vertices {
                    return Err(OracleError::VertexOutOfRange {
                        vertex: x,
                        vertices,
                    });
                }
            }
            if a == b {
                return Err(OracleError::SelfLoop(a));
            }
            let key = (a.min(b), a.max(b));
            if !seen.insert(key) {
                return Err(OracleError::DuplicateEdge(key.0, key.1));
            }
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
            list.push(key);
        }
        Ok(SmallGraph {
            vertices,
            edges: list,
            adj,
        })
    }

    pub fn hypercube(n: Dimension) -> Result<Self, OracleError> {
        let vertices = n.vertex_count() as usize;
        let edges: Vec<_> = n.edges().map(|e| (e.u as usize, e.v() as usize)).collect();
        SmallGraph::new(vertices, &edges)
    }

    pub fn complete(vertices: usize) -> Result<Self, OracleError> {
        let edges: Vec<_> = (0..vertices)
            .flat_map(|a| (a + 1..vertices).map(move |b| (a, b)))
            .collect();
        SmallGraph::new(vertices, &edges)
    }

    pub fn petersen() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        SmallGraph::new(10, &edges).expect("petersen graph is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Copy of the graph without the listed edges.
    pub fn without(&self, removed: &[(usize, usize)]) -> Result<Self, OracleError> {
        let drop: BTreeSet<_> = removed.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        for &(a, b) in &drop {
            if !self.edges.contains(&(a, b)) {
                return Err(OracleError::MissingEdge(a, b));
            }
        }
        let kept: Vec<_> = self
            .edges
            .iter()
            .copied()
            .filter(|e| !drop.contains(e))
            .collect();
        SmallGraph::new(self.vertices, &kept)
    }

    fn induced_edges(&self, subset: u32) -> u32 {
        let mut twice = 0;
        let mut rest = subset;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            twice += (self.adj[v] & subset).count_ones();
        }
        twice / 2
    }

    /// Minimum number of edges crossing any nontrivial vertex bipartition.
    pub fn edge_connectivity(&self) -> usize {
        if self.vertices < 2 {
            return 0;
        }
        let full = (1u32 << self.vertices) - 1;
        // fixing vertex 0 on one side visits each cut once
        (1..=full)
            .filter(|s| s & 1 == 1 && *s != full)
            .map(|s| {
                self.edges
                    .iter()
                    .filter(|&&(a, b)| ((s >> a) & 1) != ((s >> b) & 1))
                    .count()
            })
            .min()
            .unwrap_or(0)
    }
}

/// `max over S, |S| >= 2, of ceil(|E(G[S])| / (|S| - 1))`.
pub fn nw_arboricity(g: &SmallGraph) -> Result<u64, OracleError> {
    if g.edge_count() == 0 {
        return Err(OracleError::Edgeless);
    }
    let mut best = 0u64;
    for subset in 1u32..(1 << g.vertices) {
        let size = subset.count_ones();
        if size < 2 {
            continue;
        }
        let e = u64::from(g.induced_edges(subset));
        best = best.max(e.div_ceil(u64::from(size - 1)));
    }
    Ok(best)
}

/// Set partitions of `{0, ..., n-1}` as restricted growth strings, in
/// lexicographic order: `a[0] = 0` and `a[i] <= 1 + max(a[..i])`.
#[derive(Debug, Clone)]
pub struct RestrictedGrowth {
    current: Vec<u8>,
    // running maxima: maxima[i] = max(a[..=i])
    maxima: Vec<u8>,
    done: bool,
}

impl RestrictedGrowth {
    pub fn new(n: usize) -> Self {
        RestrictedGrowth {
            current: vec![0; n],
            maxima: vec![0; n],
            done: n == 0,
        }
    }
}

impl Iterator for RestrictedGrowth {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        // bump the rightmost position that can still grow
        let n = self.current.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.current[i] <= self.maxima[i - 1] {
                self.current[i] += 1;
                self.maxima[i] = self.maxima[i - 1].max(self.current[i]);
                for j in i + 1..n {
                    self.current[j] = 0;
                    self.maxima[j] = self.maxima[i];
                }
                break;
            }
        }
        Some(out)
    }
}

/// `min over partitions P, |P| >= 2, of floor(cross(P) / (|P| - 1))`.
///
/// Equals the maximum number of edge-disjoint spanning trees; `0` for a
/// disconnected graph.
pub fn packing_upper_bound(g: &SmallGraph) -> Result<u64, OracleError> {
    if g.vertices < 2 {
        return Err(OracleError::TooFewVertices {
            min: 2,
            vertices: g.vertices,
        });
    }
    if g.vertices > PARTITION_CAP {
        return Err(OracleError::CapExceeded {
            what: "partition",
            vertices: g.vertices,
            cap: PARTITION_CAP,
        });
    }
    let mut best = u64::MAX;
    for blocks in RestrictedGrowth::new(g.vertices) {
        let parts = u64::from(*blocks.iter().max().unwrap()) + 1;
        if parts < 2 {
            continue;
        }
        let cross = g
            .edges
            .iter()
            .filter(|&&(a, b)| blocks[a] != blocks[b])
            .count() as u64;
        best = best.min(cross / (parts - 1));
        if best == 0 {
            break;
        }
    }
    Ok(best)
}

/// Removes `removed` (size `k`) from a `2k`-edge-connected graph and checks
/// that `k` edge-disjoint spanning trees survive.
pub fn catlin_spot_check(g: &SmallGraph, removed: &[(usize, usize)]) -> Result<bool, OracleError> {
    if g.vertices > CATLIN_CAP {
        return Err(OracleError::CapExceeded {
            what: "spot check",
            vertices: g.vertices,
            cap: CATLIN_CAP,
        });
    }
    let k = removed.len();
    let lambda = g.edge_connectivity();
    if lambda < 2 * k {
        return Err(OracleError::NotEdgeConnected {
            required: 2 * k,
            actual: lambda,
        });
    }
    let rest = g.without(removed)?;
    Ok(packing_upper_bound(&rest)? >= k as u64)
}
