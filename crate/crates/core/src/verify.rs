//! First-principles checker for decompositions.
//!
//! Nothing in here looks at how a decomposition was built: every claim is
//! re-derived from the label array with counting and union-find.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::decomposition::{Decomposition, Kind, LEFTOVER};
use crate::hypercube::{Dimension, EdgeSet};
use crate::unionfind::UnionFind;

/// The decomposition is not even well-formed enough to check.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("label array has {actual} entries, expected {expected}")]
    LengthMismatch { expected: u64, actual: u64 },
    #[error("edge {index} carries label {label} but k = {k}")]
    LabelOutOfRange { index: usize, label: u8, k: u32 },
    #[error("k = {k} does not match floor(n/2) = {expected} for n = {n}")]
    TreeCountMismatch { n: u32, k: u32, expected: u32 },
    #[error("kind {kind} does not match the parity of n = {n}")]
    KindMismatch { n: u32, kind: Kind },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeCheck {
    pub label: u32,
    pub edges: u64,
    pub expected_edges: u64,
    pub spans_all: bool,
    pub connected: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeftoverCheck {
    pub size: u64,
    pub expected_size: u64,
    /// Set for even decompositions.
    pub is_matching: Option<bool>,
    pub is_forest: bool,
    pub components: u64,
    pub expected_components: u64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n: u32,
    pub k: u32,
    pub kind: Kind,
    pub partition_ok: bool,
    pub trees: Vec<TreeCheck>,
    pub leftover: LeftoverCheck,
    pub overall: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ForestInfo {
    pub is_forest: bool,
    /// Connected components among the endpoints of the edge set; isolated
    /// cube vertices are not counted.
    pub components: u64,
}

/// `|s| = 2^n - 1`, every vertex is touched, and union-find joins everything
/// into one set.
pub fn is_spanning_tree(s: &EdgeSet) -> bool {
    tree_check(s, 0).ok
}

fn tree_check(s: &EdgeSet, label: u32) -> TreeCheck {
    let n = s.dimension();
    let vertices = n.vertex_count() as usize;
    let expected_edges = n.vertex_count() - 1;
    let edges = s.len() as u64;

    let mut touched = vec![false; vertices];
    let mut uf = UnionFind::new(vertices);
    for e in s.edges() {
        let (a, b) = (e.u as usize, e.v() as usize);
        touched[a] = true;
        touched[b] = true;
        uf.union(a, b);
    }
    let spans_all = touched.iter().all(|&t| t);
    let connected = uf.set_count() == 1;
    TreeCheck {
        label,
        edges,
        expected_edges,
        spans_all,
        connected,
        ok: edges == expected_edges && spans_all && connected,
    }
}

pub fn is_matching(s: &EdgeSet) -> bool {
    let mut used = vec![false; s.dimension().vertex_count() as usize];
    for e in s.edges() {
        let (a, b) = (e.u as usize, e.v() as usize);
        if used[a] || used[b] {
            return false;
        }
        used[a] = true;
        used[b] = true;
    }
    true
}

pub fn forest_components(s: &EdgeSet) -> ForestInfo {
    let vertices = s.dimension().vertex_count() as usize;
    let mut touched = vec![false; vertices];
    let mut uf = UnionFind::new(vertices);
    let mut endpoints = 0u64;
    let mut merges = 0u64;
    let mut is_forest = true;
    for e in s.edges() {
        for x in [e.u as usize, e.v() as usize] {
            if !touched[x] {
                touched[x] = true;
                endpoints += 1;
            }
        }
        if uf.union(e.u as usize, e.v() as usize) {
            merges += 1;
        } else {
            is_forest = false;
        }
    }
    ForestInfo {
        is_forest,
        components: endpoints - merges,
    }
}

fn structural_check(d: &Decomposition) -> Result<(), VerifyError> {
    let n = d.n.get();
    let expected = d.n.edge_count();
    if d.labels.len() as u64 != expected {
        return Err(VerifyError::LengthMismatch {
            expected,
            actual: d.labels.len() as u64,
        });
    }
    if d.k != d.n.half() {
        return Err(VerifyError::TreeCountMismatch {
            n,
            k: d.k,
            expected: d.n.half(),
        });
    }
    if d.kind != Kind::of(d.n) {
        return Err(VerifyError::KindMismatch { n, kind: d.kind });
    }
    if let Some((index, &label)) = d
        .labels
        .iter()
        .enumerate()
        .find(|(_, &l)| u32::from(l) > d.k)
    {
        return Err(VerifyError::LabelOutOfRange {
            index,
            label,
            k: d.k,
        });
    }
    Ok(())
}

/// Claimed leftover size and component count for `Q_n`.
fn leftover_targets(n: Dimension) -> (u64, u64) {
    let k = u64::from(n.half());
    match Kind::of(n) {
        Kind::Even => (k, k),
        // n = 1: the single edge is a one-component forest
        Kind::Odd if k == 0 => (1, 1),
        Kind::Odd => ((1u64 << (2 * k)) + k, k),
    }
}

fn check_trees(d: &Decomposition) -> Vec<TreeCheck> {
    let labels: Vec<u32> = (1..=d.k).collect();
    let workers = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .clamp(1, 8);
    let mut checks = Vec::with_capacity(labels.len());
    for chunk in labels.chunks(workers) {
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunk
                .iter()
                .map(|&j| scope.spawn(move || tree_check(&d.tree(j), j)))
                .collect();
            checks.extend(
                handles
                    .into_iter()
                    .map(|h| h.join().expect("tree check panicked")),
            );
        });
    }
    checks
}

/// Checks that `d` partitions `E(Q_n)` into `k` spanning trees plus a leftover
/// of the claimed shape.
pub fn verify_decomposition(d: &Decomposition) -> Result<VerifyReport, VerifyError> {
    structural_check(d)?;

    let trees = check_trees(d);

    let left = d.edge_set(LEFTOVER);
    let (expected_size, expected_components) = leftover_targets(d.n);
    let forest = forest_components(&left);
    let size = left.len() as u64;
    let leftover = match d.kind {
        Kind::Even => {
            let matching = is_matching(&left);
            LeftoverCheck {
                size,
                expected_size,
                is_matching: Some(matching),
                is_forest: forest.is_forest,
                components: forest.components,
                expected_components,
                ok: matching && size == expected_size,
            }
        }
        Kind::Odd => LeftoverCheck {
            size,
            expected_size,
            is_matching: None,
            is_forest: forest.is_forest,
            components: forest.components,
            expected_components,
            ok: forest.is_forest
                && forest.components == expected_components
                && size == expected_size,
        },
    };

    // Every edge has exactly one label by construction of the array; what
    // remains is that the per-label counts add up.
    let counted: u64 = trees.iter().map(|t| t.edges).sum::<u64>() + size;
    let partition_ok = counted == d.n.edge_count();

    let overall = partition_ok && trees.iter().all(|t| t.ok) && leftover.ok;
    Ok(VerifyReport {
        n: d.n.get(),
        k: d.k,
        kind: d.kind,
        partition_ok,
        trees,
        leftover,
        overall,
    })
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "ok" } else { "FAIL" };
        writeln!(f, "n = {}, k = {}, kind = {}", self.n, self.k, self.kind)?;
        writeln!(f, "partition: {}", mark(self.partition_ok))?;
        for t in &self.trees {
            writeln!(
                f,
                "tree {}: {} edges (expected {}), spans all: {}, connected: {} [{}]",
                t.label,
                t.edges,
                t.expected_edges,
                t.spans_all,
                t.connected,
                mark(t.ok)
            )?;
        }
        let l = &self.leftover;
        write!(
            f,
            "leftover: {} edges (expected {})",
            l.size, l.expected_size
        )?;
        if let Some(m) = l.is_matching {
            write!(f, ", matching: {m}")?;
        }
        writeln!(
            f,
            ", forest: {}, components: {} (expected {}) [{}]",
            l.is_forest,
            l.components,
            l.expected_components,
            mark(l.ok)
        )?;
        write!(f, "overall: {}", if self.overall { "PASS" } else { "FAIL" })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::Edge;

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    fn set(n: u32, pairs: &[(u32, u32)]) -> EdgeSet {
        EdgeSet::from_edges(
            dim(n),
            pairs.iter().map(|&(a, b)| Edge::between(a, b).unwrap()),
        )
        .unwrap()
    }

    // hand-made Q_2 split, independent of the constructor
    fn q2() -> Decomposition {
        Decomposition {
            n: dim(2),
            k: 1,
            kind: Kind::Even,
            labels: vec![1, 1, 0, 1],
        }
    }

    #[test]
    fn spanning_tree_examples() {
        assert!(is_spanning_tree(&set(
            2,
            &[(0b00, 0b01), (0b01, 0b11), (0b10, 0b11)]
        )));
        assert!(!is_spanning_tree(&set(
            2,
            &[(0b00, 0b01), (0b00, 0b10), (0b01, 0b11), (0b10, 0b11)]
        )));
        // right size, not connected
        let cyc = set(3, &[(0, 1), (1, 3), (3, 2), (2, 0), (4, 5), (5, 7), (7, 6)]);
        assert_eq!(cyc.len(), 7);
        assert!(!is_spanning_tree(&cyc));
    }

    #[test]
    fn matching_examples() {
        assert!(is_matching(&EdgeSet::new(dim(2))));
        assert!(!is_matching(&set(2, &[(0b00, 0b01), (0b00, 0b10)])));
        assert!(is_matching(&set(3, &[(0, 1), (2, 3), (4, 6)])));
    }

    #[test]
    fn forest_examples() {
        let path = set(3, &[(0, 1), (1, 3), (3, 2), (2, 6), (6, 7), (7, 5), (5, 4)]);
        assert_eq!(
            forest_components(&path),
            ForestInfo {
                is_forest: true,
                components: 1
            }
        );
        let m = set(3, &[(0, 1), (2, 3), (4, 6)]);
        assert_eq!(forest_components(&m).components, 3);
        let cyc = set(2, &[(0, 1), (1, 3), (3, 2), (2, 0)]);
        assert!(!forest_components(&cyc).is_forest);
        assert_eq!(forest_components(&cyc).components, 1);
        assert_eq!(
            forest_components(&EdgeSet::new(dim(3))),
            ForestInfo {
                is_forest: true,
                components: 0
            }
        );
    }

    #[test]
    fn verifies_hand_made_q2() {
        let r = verify_decomposition(&q2()).unwrap();
        assert!(r.overall, "{r}");
        assert_eq!(r.leftover.size, 1);
    }

    #[test]
    fn q1_single_edge_leftover() {
        let d = Decomposition {
            n: dim(1),
            k: 0,
            kind: Kind::Odd,
            labels: vec![0],
        };
        let r = verify_decomposition(&d).unwrap();
        assert!(r.overall);
        assert!(r.trees.is_empty());
        assert_eq!(r.leftover.components, 1);
    }

    #[test]
    fn detects_mutations_of_q2() {
        let mut d = q2();
        d.labels[0] = 0;
        assert!(!verify_decomposition(&d).unwrap().overall);
        let mut d = q2();
        d.labels[2] = 1;
        assert!(!verify_decomposition(&d).unwrap().overall);
    }

    #[test]
    fn structural_errors() {
        let mut d = q2();
        d.labels.pop();
        assert_eq!(
            verify_decomposition(&d),
            Err(VerifyError::LengthMismatch {
                expected: 4,
                actual: 3
            })
        );
        let mut d = q2();
        d.labels[1] = 2;
        assert!(matches!(
            verify_decomposition(&d),
            Err(VerifyError::LabelOutOfRange { index: 1, .. })
        ));
        let mut d = q2();
        d.k = 2;
        assert!(matches!(
            verify_decomposition(&d),
            Err(VerifyError::TreeCountMismatch { .. })
        ));
        let mut d = q2();
        d.kind = Kind::Odd;
        assert!(matches!(
            verify_decomposition(&d),
            Err(VerifyError::KindMismatch { .. })
        ));
    }

    #[test]
    fn report_renders() {
        let text = verify_decomposition(&q2()).unwrap().to_string();
        assert!(text.contains("overall: PASS"));
        assert!(text.contains("matching: true"));
    }
}
