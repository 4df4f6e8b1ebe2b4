//! Edge labelings of `Q_n` into spanning trees and a leftover set.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::hypercube::{edge_at, Dimension, Edge, EdgeId, EdgeSet};

/// Label of the leftover set `L`.
pub const LEFTOVER: u8 = 0;

/// Which construction produced a decomposition, and therefore which
/// leftover shape is claimed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// `n = 2k`: leftover is a matching of size `k`.
    Even,
    /// `n = 2k + 1`: leftover is a forest with `k` components (one for `n = 1`).
    Odd,
}

impl Kind {
    pub fn of(n: Dimension) -> Kind {
        if n.get().is_multiple_of(2) {
            Kind::Even
        } else {
            Kind::Odd
        }
    }

    pub fn code(self) -> u8 {
        match self {
            Kind::Even => 0,
            Kind::Odd => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Kind> {
        match code {
            0 => Some(Kind::Even),
            1 => Some(Kind::Odd),
            _ => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Even => "even",
            Kind::Odd => "odd",
        })
    }
}

/// A labeling of every edge of `Q_n`: `0` is the leftover set, `j >= 1` is
/// spanning tree `j`. `labels` is indexed by [`EdgeId`].
///
/// Nothing here enforces that the labeling is valid; that is the job of
/// [`crate::verify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub n: Dimension,
    pub k: u32,
    pub kind: Kind,
    pub labels: Vec<u8>,
}

impl Decomposition {
    pub fn label(&self, id: EdgeId) -> u8 {
        self.labels[id.index()]
    }

    /// Edge set carrying `label`.
    pub fn edge_set(&self, label: u8) -> EdgeSet {
        let mut set = EdgeSet::new(self.n);
        for (i, _) in self.labels.iter().enumerate().filter(|(_, &l)| l == label) {
            set.insert(EdgeId(i as u64));
        }
        set
    }

    pub fn tree(&self, j: u32) -> EdgeSet {
        self.edge_set(j as u8)
    }

    pub fn leftover(&self) -> EdgeSet {
        self.edge_set(LEFTOVER)
    }

    /// Number of edges per label, index `0` being the leftover.
    pub fn label_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0u64; self.k as usize + 1];
        for &l in &self.labels {
            if let Some(s) = sizes.get_mut(l as usize) {
                *s += 1;
            }
        }
        sizes
    }

    /// `(edge, label)` pairs in `EdgeId` order.
    pub fn labeled_edges(&self) -> impl Iterator<Item = (Edge, u8)> + '_ {
        let n = self.n;
        self.labels
            .iter()
            .enumerate()
            .map(move |(i, &l)| (edge_at(i, n), l))
    }
}
