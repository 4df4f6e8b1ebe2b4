//! Explicit maximum spanning tree packings of `Q_n`.
//!
//! Even dimensions are built recursively: `Q_{2m+2}` is split into four copies
//! of `Q_{2m}` (selected by the two top bits), each copy inherits the
//! decomposition of `Q_{2m}`, and the cross matchings between adjacent copies
//! are distributed among the trees so that one new spanning tree appears and
//! the leftover grows by exactly one edge. Odd dimensions take one step from
//! `Q_{2k}` to `Q_{2k+1}` using two copies.
//!
//! Everything is done in global coordinates on a flat label array, one level at
//! a time.
//!
//! Copy numbering (1-based, matching the usual presentation) and top-bit
//! patterns:
//!
//! | copy | bits |
//! |------|------|
//! | 1    | `00` |
//! | 2    | `01` |
//! | 3    | `11` |
//! | 4    | `10` |
//!
//! so the adjacent pairs `{1,2}, {2,3}, {3,4}, {1,4}` each differ in one bit.

use crate::decomposition::{Decomposition, Kind, LEFTOVER};
use crate::hypercube::{edge_index, embed, embed_edge, Dimension, Edge, HypercubeError, VertexId};

/// Top-bit patterns of copies 1..=4.
pub const EVEN_COPY_BITS: [u32; 4] = [0b00, 0b01, 0b11, 0b10];

/// One sub-cube copy of a smaller decomposition, seen in global coordinates.
#[derive(Debug, Clone, Copy)]
pub struct CopyDecomposition<'a> {
    pub base: &'a Decomposition,
    pub base_independents: &'a [Edge],
    pub copy_bits: u32,
    pub at: u32,
}

impl<'a> CopyDecomposition<'a> {
    /// Edges of tree `j` (1-based) of this copy.
    pub fn tree(&self, j: u32) -> Vec<Edge> {
        self.base
            .labeled_edges()
            .filter(|&(_, l)| u32::from(l) == j)
            .map(|(e, _)| embed_edge(e, self.copy_bits, self.at))
            .collect()
    }

    /// The copy's independent edges `e_1, ..., e_k`, in order.
    pub fn independents(&self) -> Vec<Edge> {
        self.base_independents
            .iter()
            .map(|&e| embed_edge(e, self.copy_bits, self.at))
            .collect()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..1u32 << self.at).map(move |v| embed(v, self.copy_bits, self.at))
    }
}

/// Perfect matching between two adjacent copies, plus the chosen edges
/// `f_1, ..., f_k` that join corresponding independent edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossMatching {
    /// Copy whose bit in the crossing dimension is clear.
    pub lower_bits: u32,
    pub at: u32,
    /// Dimension crossed by every edge of the matching.
    pub dim: u32,
    pub chosen: Vec<Edge>,
}

impl CrossMatching {
    /// Builds the matching between copies `a` and `b` and selects, for each
    /// independent edge `e_j`, the cross edge at its smaller endpoint.
    pub fn new(a_bits: u32, b_bits: u32, at: u32, independents: &[Edge]) -> CrossMatching {
        let diff = a_bits ^ b_bits;
        debug_assert_eq!(diff.count_ones(), 1, "copies must be adjacent");
        let lower_bits = a_bits & b_bits;
        let dim = at + diff.trailing_zeros();
        let chosen = independents
            .iter()
            .map(|e| Edge {
                u: embed(e.u.min(e.v()), lower_bits, at),
                d: dim,
            })
            .collect();
        CrossMatching {
            lower_bits,
            at,
            dim,
            chosen,
        }
    }

    /// Every edge of the matching, by local vertex.
    pub fn all(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..1u32 << self.at).map(move |v| Edge {
            u: embed(v, self.lower_bits, self.at),
            d: self.dim,
        })
    }
}

/// Sizes observed during one even step `Q_{2k} -> Q_{2k+2}`, where `k` is the
/// tree count of the smaller cube.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvenStep {
    pub k: u32,
    /// Sizes of the carried-over trees `1..k-1`.
    pub carried: Vec<u64>,
    /// Size of the tree built from the first copy's last tree, the other
    /// copies' independent edges and the unchosen cross edges.
    pub bridging: u64,
    /// Size of the tree built from the last trees of copies 2-4 and the
    /// matching between copies 1 and 4.
    pub closing: u64,
    pub leftover: u64,
}

impl EvenStep {
    /// `4(2^{2k} - 1) + 3`.
    pub fn carried_formula(&self) -> u64 {
        4 * ((1u64 << (2 * self.k)) - 1) + 3
    }

    /// `(2^{2k} - 1) + 3(2^{2k} - k) + 3k`.
    pub fn bridging_formula(&self) -> u64 {
        let q = 1u64 << (2 * self.k);
        let k = u64::from(self.k);
        (q - 1) + 3 * (q - k) + 3 * k
    }

    /// `3(2^{2k} - 1) + 2^{2k} + 2`.
    pub fn closing_formula(&self) -> u64 {
        let q = 1u64 << (2 * self.k);
        3 * (q - 1) + q + 2
    }

    /// `2^{2k+2} - 1`, the size of a spanning tree of `Q_{2k+2}`.
    pub fn spanning_size(&self) -> u64 {
        (1u64 << (2 * self.k + 2)) - 1
    }
}

/// Decomposition of `Q_{2m}` together with the ordered leftover matching.
#[derive(Debug, Clone)]
struct EvenLevel {
    dec: Decomposition,
    independents: Vec<Edge>,
}

/// `Q_2`: the path `00-01-11-10` plus the leftover edge `00-10`.
pub fn base_q2() -> Decomposition {
    base_level().dec
}

fn base_level() -> EvenLevel {
    let n = Dimension::new(2).expect("2 is within every cap");
    let leftover = Edge { u: 0b00, d: 1 };
    let mut labels = vec![1u8; 4];
    labels[edge_index(leftover, n)] = LEFTOVER;
    EvenLevel {
        dec: Decomposition {
            n,
            k: 1,
            kind: Kind::Even,
            labels,
        },
        independents: vec![leftover],
    }
}

fn even_step(prev: &EvenLevel, cap: u32) -> Result<(EvenLevel, EvenStep), HypercubeError> {
    let m = prev.dec.k;
    let at = prev.dec.n.get();
    let n = Dimension::with_cap(at + 2, cap)?;
    let mut labels = vec![u8::MAX; n.edge_count() as usize];

    let last = m as u8;
    let bridging = m as u8;
    let closing = (m + 1) as u8;

    // Edges inside the four copies.
    for (copy, &bits) in EVEN_COPY_BITS.iter().enumerate() {
        let first = copy == 0;
        for (e, l) in prev.dec.labeled_edges() {
            let label = match l {
                LEFTOVER if first => LEFTOVER,
                LEFTOVER => bridging,
                l if l == last && first => bridging,
                l if l == last => closing,
                l => l,
            };
            labels[edge_index(embed_edge(e, bits, at), n)] = label;
        }
    }

    // Cross matchings along the 4-cycle 1-2-3-4-1.
    let [c1, c2, c3, c4] = EVEN_COPY_BITS;
    let m12 = CrossMatching::new(c1, c2, at, &prev.independents);
    let m23 = CrossMatching::new(c2, c3, at, &prev.independents);
    let m34 = CrossMatching::new(c3, c4, at, &prev.independents);
    let m14 = CrossMatching::new(c1, c4, at, &prev.independents);

    for (matching, last_f) in [(&m12, closing), (&m23, LEFTOVER), (&m34, closing)] {
        for e in matching.all() {
            labels[edge_index(e, n)] = bridging;
        }
        let (f_last, f_rest) = matching
            .chosen
            .split_last()
            .expect("every level has at least one independent edge");
        for (j, &f) in f_rest.iter().enumerate() {
            labels[edge_index(f, n)] = (j + 1) as u8;
        }
        labels[edge_index(*f_last, n)] = last_f;
    }
    for e in m14.all() {
        labels[edge_index(e, n)] = closing;
    }
    debug_assert!(labels.iter().all(|&l| l != u8::MAX));

    let mut independents = prev.independents.clone();
    independents.push(*m23.chosen.last().unwrap());

    let dec = Decomposition {
        n,
        k: m + 1,
        kind: Kind::Even,
        labels,
    };
    let sizes = dec.label_sizes();
    let step = EvenStep {
        k: m,
        carried: sizes[1..m as usize].to_vec(),
        bridging: sizes[m as usize],
        closing: sizes[m as usize + 1],
        leftover: sizes[0],
    };
    Ok((EvenLevel { dec, independents }, step))
}

fn even_levels(k: u32, cap: u32) -> Result<(EvenLevel, Vec<EvenStep>), HypercubeError> {
    if k == 0 {
        return Err(HypercubeError::ZeroDimension);
    }
    Dimension::with_cap(2 * k, cap)?;
    let mut level = base_level();
    let mut steps = Vec::with_capacity(k as usize - 1);
    for _ in 1..k {
        let (next, step) = even_step(&level, cap)?;
        level = next;
        steps.push(step);
    }
    Ok((level, steps))
}

/// `Q_{2k}` as `k` spanning trees plus a matching of size `k`.
pub fn construct_even(k: u32) -> Result<Decomposition, HypercubeError> {
    construct_even_traced(k).map(|(d, _)| d)
}

/// Like [`construct_even`], also returning the sizes observed at each
/// recursion step.
pub fn construct_even_traced(k: u32) -> Result<(Decomposition, Vec<EvenStep>), HypercubeError> {
    even_levels(k, crate::hypercube::N_MAX).map(|(level, steps)| (level.dec, steps))
}

/// `Q_{2k+1}` as `k` spanning trees plus a forest with `k` components.
pub fn construct_odd(k: u32) -> Result<Decomposition, HypercubeError> {
    construct_odd_capped(k, crate::hypercube::N_MAX)
}

fn construct_odd_capped(k: u32, cap: u32) -> Result<Decomposition, HypercubeError> {
    let n = Dimension::with_cap(2 * k + 1, cap)?;
    let (half, _) = even_levels(k, cap)?;
    let at = half.dec.n.get();
    let last = k as u8;
    let mut labels = vec![u8::MAX; n.edge_count() as usize];

    for (copy, bits) in [0u32, 1].into_iter().enumerate() {
        let first = copy == 0;
        for (e, l) in half.dec.labeled_edges() {
            let label = match l {
                LEFTOVER if first => LEFTOVER,
                LEFTOVER => last,
                l if l == last && !first => LEFTOVER,
                l => l,
            };
            labels[edge_index(embed_edge(e, bits, at), n)] = label;
        }
    }

    let cross = CrossMatching::new(0, 1, at, &half.independents);
    for e in cross.all() {
        labels[edge_index(e, n)] = last;
    }
    let (f_last, f_rest) = cross.chosen.split_last().expect("k >= 1");
    for (j, &f) in f_rest.iter().enumerate() {
        labels[edge_index(f, n)] = (j + 1) as u8;
    }
    labels[edge_index(*f_last, n)] = LEFTOVER;
    debug_assert!(labels.iter().all(|&l| l != u8::MAX));

    Ok(Decomposition {
        n,
        k,
        kind: Kind::Odd,
        labels,
    })
}

/// Dispatches on parity. `n = 1` yields no trees and the single edge as the
/// leftover.
pub fn construct(n: Dimension) -> Decomposition {
    let cap = n.get();
    let built = match n.get() {
        1 => Ok(Decomposition {
            n,
            k: 0,
            kind: Kind::Odd,
            labels: vec![LEFTOVER],
        }),
        x if x % 2 == 0 => even_levels(x / 2, cap).map(|(level, _)| level.dec),
        x => construct_odd_capped(x / 2, cap),
    };
    built.expect("dimension already validated")
}
