//! Multi-tree broadcast over a decomposition.
//!
//! The timing model is first-order only: the message is cut into
//! `k * parts` equal chunks, each tree carries `parts` of them, chunks are
//! pipelined hop by hop with a uniform per-hop cost, and links never contend
//! (the trees are edge-disjoint). The broadcast finishes when the slowest tree
//! delivers its last chunk to its deepest vertex:
//!
//! ```text
//! time = hop_cost * max_j (depth_j + parts - 1)
//! ```

use std::collections::VecDeque;
use std::time::Duration;

use serde::Serialize;
use thiserror::Error;

use crate::decomposition::Decomposition;
use crate::hypercube::{edge_index, Edge, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BroadcastError {
    #[error("root {root} out of range for n = {n}")]
    RootOutOfRange { root: u64, n: u32 },
    #[error("decomposition has no spanning trees")]
    NoTrees,
    #[error("parts must be at least 1")]
    ZeroParts,
    #[error("tree {0} does not reach every vertex from the root")]
    Unreachable(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BroadcastMetrics {
    pub root: VertexId,
    pub depths: Vec<u32>,
    pub max_link_load: u32,
    pub parts: u32,
    #[serde(serialize_with = "as_nanos")]
    pub hop_cost: Duration,
    #[serde(serialize_with = "as_nanos")]
    pub total_time: Duration,
}

fn as_nanos<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_nanos())
}

fn check_root(d: &Decomposition, root: u64) -> Result<VertexId, BroadcastError> {
    if d.n.contains_vertex(root) {
        Ok(root as VertexId)
    } else {
        Err(BroadcastError::RootOutOfRange { root, n: d.n.get() })
    }
}

/// Eccentricity of `root` in each tree, by BFS.
pub fn tree_depths(d: &Decomposition, root: u64) -> Result<Vec<u32>, BroadcastError> {
    let root = check_root(d, root)?;
    (1..=d.k).map(|j| tree_depth(d, j, root)).collect()
}

fn tree_depth(d: &Decomposition, j: u32, root: VertexId) -> Result<u32, BroadcastError> {
    let n = d.n;
    let label = j as u8;
    let mut dist = vec![u32::MAX; n.vertex_count() as usize];
    dist[root as usize] = 0;
    let mut queue = VecDeque::from([root]);
    let mut reached = 1u64;
    let mut depth = 0;
    while let Some(x) = queue.pop_front() {
        for y in n.neighbors(x) {
            if dist[y as usize] != u32::MAX {
                continue;
            }
            let e = Edge::between(x, y).expect("neighbours differ in one bit");
            if d.labels[edge_index(e, n)] != label {
                continue;
            }
            dist[y as usize] = dist[x as usize] + 1;
            depth = depth.max(dist[y as usize]);
            reached += 1;
            queue.push_back(y);
        }
    }
    if reached != n.vertex_count() {
        return Err(BroadcastError::Unreachable(j));
    }
    Ok(depth)
}

/// Maximum number of trees claiming any single edge.
pub fn link_load(d: &Decomposition) -> u32 {
    link_load_of(std::slice::from_ref(&d.labels))
}

/// Load over several overlaid labelings of the same cube, e.g. the same
/// decomposition used twice. Leftover (label 0) never counts.
pub fn link_load_of(layers: &[Vec<u8>]) -> u32 {
    let len = layers.iter().map(Vec::len).max().unwrap_or(0);
    (0..len)
        .map(|i| {
            layers
                .iter()
                .filter(|l| l.get(i).is_some_and(|&x| x != 0))
                .count() as u32
        })
        .max()
        .unwrap_or(0)
}

pub fn broadcast_time(
    d: &Decomposition,
    root: u64,
    parts: u32,
    hop_cost: Duration,
) -> Result<Duration, BroadcastError> {
    metrics(d, root, parts, hop_cost).map(|m| m.total_time)
}

fn time_from_depths(depths: &[u32], parts: u32, hop_cost: Duration) -> Duration {
    let hops = depths
        .iter()
        .map(|&depth| depth + parts - 1)
        .max()
        .unwrap_or(0);
    hop_cost * hops
}

pub fn metrics(
    d: &Decomposition,
    root: u64,
    parts: u32,
    hop_cost: Duration,
) -> Result<BroadcastMetrics, BroadcastError> {
    if d.k == 0 {
        return Err(BroadcastError::NoTrees);
    }
    if parts == 0 {
        return Err(BroadcastError::ZeroParts);
    }
    let depths = tree_depths(d, root)?;
    Ok(BroadcastMetrics {
        root: root as VertexId,
        total_time: time_from_depths(&depths, parts, hop_cost),
        depths,
        max_link_load: link_load(d),
        parts,
        hop_cost,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::Kind;
    use crate::hypercube::Dimension;

    fn q2() -> Decomposition {
        Decomposition {
            n: Dimension::new(2).unwrap(),
            k: 1,
            kind: Kind::Even,
            labels: vec![1, 1, 0, 1],
        }
    }

    #[test]
    fn q2_path_depths() {
        let d = q2();
        assert_eq!(tree_depths(&d, 0).unwrap(), vec![3]);
        // 01 sits in the middle of the path 00-01-11-10
        assert_eq!(tree_depths(&d, 1).unwrap(), vec![2]);
        assert_eq!(
            tree_depths(&d, 4),
            Err(BroadcastError::RootOutOfRange { root: 4, n: 2 })
        );
    }

    #[test]
    fn load() {
        let d = q2();
        assert_eq!(link_load(&d), 1);
        assert_eq!(link_load_of(&[d.labels.clone(), d.labels.clone()]), 2);
        assert_eq!(link_load_of(&[vec![0, 0]]), 0);
    }

    #[test]
    fn timing_model() {
        let d = q2();
        let h = Duration::from_nanos(10);
        assert_eq!(broadcast_time(&d, 0, 1, h).unwrap(), h * 3);
        let t = |p| broadcast_time(&d, 0, p, h).unwrap();
        for p in 1..20 {
            assert_eq!(t(2 * p) - t(p), h * p);
            assert!(t(p + 1) >= t(p));
        }
        assert_eq!(broadcast_time(&d, 0, 0, h), Err(BroadcastError::ZeroParts));
    }

    #[test]
    fn no_trees() {
        let d = Decomposition {
            n: Dimension::new(1).unwrap(),
            k: 0,
            kind: Kind::Odd,
            labels: vec![0],
        };
        assert_eq!(
            broadcast_time(&d, 0, 1, Duration::from_nanos(1)),
            Err(BroadcastError::NoTrees)
        );
    }

    #[test]
    fn broken_tree_is_reported() {
        let mut d = q2();
        d.labels[3] = 0;
        assert_eq!(tree_depths(&d, 0), Err(BroadcastError::Unreachable(1)));
    }
}
