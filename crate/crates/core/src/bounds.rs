//! Closed-form decomposition invariants of `Q_n`.
//!
//! For any graph with `|V| >= 2`,
//!
//! ```text
//! sigma <= floor(|E|/(|V|-1)) <= ceil(|E|/(|V|-1)) <= arb <= tau
//! ```
//!
//! and on the hypercube the left end is tight: `sigma(Q_n) = floor(n/2)`.
//! All arithmetic is exact integer arithmetic.

use std::fmt;

use serde::Serialize;

use crate::hypercube::Dimension;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n: u32,
    pub vertices: u64,
    pub edges: u64,
    /// Spanning tree packing number, `floor(n/2)`. This is the size of the
    /// constructed family; for `n = 1` the true packing number of the single
    /// edge is 1 and only `n >= 2` meets `trivial_upper`.
    pub sigma: u64,
    /// `floor(n/2) + 1`.
    pub arboricity: u64,
    /// Tree number, `ceil((n+1)/2)`.
    pub tau: u64,
    /// Edges outside a maximum packing: `k` for `n = 2k`, `2^{2k} + k` for
    /// `n = 2k + 1`.
    pub leftover: u64,
    /// `ceil(|E|/(|V|-1))`.
    pub trivial_lower: u64,
    /// `floor(|E|/(|V|-1))`.
    pub trivial_upper: u64,
}

impl BoundsReport {
    /// The full chain `sigma <= upper <= lower <= arb <= tau`.
    pub fn chain_holds(&self) -> bool {
        self.sigma <= self.trivial_upper
            && self.trivial_upper <= self.trivial_lower
            && self.trivial_lower <= self.arboricity
            && self.arboricity <= self.tau
    }
}

pub fn bounds_for(n: Dimension) -> BoundsReport {
    let nn = u64::from(n.get());
    let vertices = n.vertex_count();
    let edges = n.edge_count();
    let k = nn / 2;
    let leftover = if nn % 2 == 0 {
        k
    } else {
        (1u64 << (2 * k)) + k
    };
    let report = BoundsReport {
        n: n.get(),
        vertices,
        edges,
        sigma: k,
        arboricity: k + 1,
        tau: (nn + 1).div_ceil(2),
        leftover,
        trivial_lower: edges.div_ceil(vertices - 1),
        trivial_upper: edges / (vertices - 1),
    };
    debug_assert!(report.chain_holds());
    debug_assert!(n.get() < 2 || report.sigma == report.trivial_upper);
    report
}

/// `sigma_witness <= floor(edges / (vertices - 1))`.
///
/// # Panics
///
/// If `vertices < 2`.
pub fn inequality_chain(edges: u64, vertices: u64, sigma_witness: u64) -> bool {
    assert!(vertices >= 2, "need at least two vertices");
    sigma_witness <= edges / (vertices - 1)
}

impl fmt::Display for BoundsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Q_{}", self.n)?;
        writeln!(f, "vertices       = {}", self.vertices)?;
        writeln!(f, "edges          = {}", self.edges)?;
        writeln!(f, "sigma          = {}", self.sigma)?;
        writeln!(f, "arboricity     = {}", self.arboricity)?;
        writeln!(f, "tau            = {}", self.tau)?;
        writeln!(f, "leftover       = {}", self.leftover)?;
        writeln!(
            f,
            "trivial_upper  = floor(|E|/(|V|-1)) = {}",
            self.trivial_upper
        )?;
        writeln!(
            f,
            "trivial_lower  = ceil(|E|/(|V|-1))  = {}",
            self.trivial_lower
        )?;
        write!(
            f,
            "chain: sigma {} <= {} <= {} <= arb {} <= tau {} [{}]",
            self.sigma,
            self.trivial_upper,
            self.trivial_lower,
            self.arboricity,
            self.tau,
            if self.chain_holds() {
                "holds"
            } else {
                "VIOLATED"
            }
        )
    }
}
