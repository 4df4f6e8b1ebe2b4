//! Decomposition file format and text exports.
//!
//! Binary layout (all integers little-endian):
//!
//! | offset | size | field                         |
//! |--------|------|-------------------------------|
//! | 0      | 4    | magic `b"QDEC"`               |
//! | 4      | 2    | format version (`1`)          |
//! | 6      | 1    | `n`                           |
//! | 7      | 1    | `k`                           |
//! | 8      | 1    | kind (`0` even, `1` odd)      |
//! | 9      | 8    | label count `n * 2^(n-1)`     |
//! | 17     | ...  | one byte per edge, `EdgeId` order |

use std::fmt::Write as _;
use std::io::{self, Read, Write};

use serde::Serialize;
use thiserror::Error;

use crate::decomposition::{Decomposition, Kind};
use crate::hypercube::{Dimension, HypercubeError};

pub const MAGIC: [u8; 4] = *b"QDEC";
pub const FORMAT_VERSION: u16 = 1;
pub const HEADER_LEN: usize = 17;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("not a decomposition file (bad magic)")]
    BadMagic,
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u16),
    #[error("file truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: u64, found: u64 },
    #[error("{0} unexpected trailing bytes")]
    TrailingBytes(u64),
    #[error("unknown kind code {0}")]
    BadKind(u8),
    #[error(transparent)]
    Dimension(#[from] HypercubeError),
    #[error("label count {found} does not match n = {n} ({expected} edges)")]
    CountMismatch { n: u32, expected: u64, found: u64 },
    #[error("label {label} at edge {index} exceeds k = {k}")]
    LabelOutOfRange { index: usize, label: u8, k: u8 },
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub fn encode(d: &Decomposition) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + d.labels.len());
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.push(d.n.get() as u8);
    out.push(d.k as u8);
    out.push(d.kind.code());
    out.extend_from_slice(&(d.labels.len() as u64).to_le_bytes());
    out.extend_from_slice(&d.labels);
    out
}

pub fn write_to<W: Write>(d: &Decomposition, mut w: W) -> io::Result<()> {
    w.write_all(&encode(d))?;
    w.flush()
}

/// Parses a file image. `cap` bounds the accepted dimension.
pub fn decode(bytes: &[u8], cap: u32) -> Result<Decomposition, FormatError> {
    if bytes.len() < HEADER_LEN {
        if bytes.len() >= 4 && bytes[..4] != MAGIC {
            return Err(FormatError::BadMagic);
        }
        return Err(FormatError::Truncated {
            expected: HEADER_LEN as u64,
            found: bytes.len() as u64,
        });
    }
    if bytes[..4] != MAGIC {
        return Err(FormatError::BadMagic);
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != FORMAT_VERSION {
        return Err(FormatError::UnsupportedVersion(version));
    }
    let n = Dimension::with_cap(u32::from(bytes[6]), cap)?;
    let k = bytes[7];
    let kind = Kind::from_code(bytes[8]).ok_or(FormatError::BadKind(bytes[8]))?;
    let count = u64::from_le_bytes(bytes[9..17].try_into().expect("8 bytes"));
    if count != n.edge_count() {
        return Err(FormatError::CountMismatch {
            n: n.get(),
            expected: n.edge_count(),
            found: count,
        });
    }
    let body = &bytes[HEADER_LEN..];
    let body_len = body.len() as u64;
    if body_len < count {
        return Err(FormatError::Truncated {
            expected: HEADER_LEN as u64 + count,
            found: bytes.len() as u64,
        });
    }
    if body_len > count {
        return Err(FormatError::TrailingBytes(body_len - count));
    }
    if let Some((index, &label)) = body.iter().enumerate().find(|(_, &l)| l > k) {
        return Err(FormatError::LabelOutOfRange { index, label, k });
    }
    Ok(Decomposition {
        n,
        k: u32::from(k),
        kind,
        labels: body.to_vec(),
    })
}

pub fn read_from<R: Read>(mut r: R, cap: u32) -> Result<Decomposition, FormatError> {
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    decode(&bytes, cap)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum ExportFormat {
    Dot,
    Edgelist,
    JsonDoc,
}

#[derive(Debug, Serialize)]
struct JsonEdge {
    id: usize,
    u: u32,
    v: u32,
    label: u8,
}

#[derive(Debug, Serialize)]
struct JsonDoc {
    format_version: u16,
    n: u32,
    k: u32,
    kind: Kind,
    labels: Vec<u8>,
    edges: Vec<JsonEdge>,
}

/// Renders `d` as text. Edges appear in `EdgeId` order in every format.
pub fn export(d: &Decomposition, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => {
            let mut s = String::new();
            let _ = writeln!(s, "graph Q{} {{", d.n);
            for (e, l) in d.labeled_edges() {
                let _ = writeln!(s, "  {} -- {} [tree={}];", e.u, e.v(), l);
            }
            s.push_str("}\n");
            s
        }
        ExportFormat::Edgelist => {
            let mut s = String::new();
            for (e, l) in d.labeled_edges() {
                let _ = writeln!(s, "{} {} {}", e.u, e.v(), l);
            }
            s
        }
        ExportFormat::JsonDoc => {
            let doc = JsonDoc {
                format_version: FORMAT_VERSION,
                n: d.n.get(),
                k: d.k,
                kind: d.kind,
                labels: d.labels.clone(),
                edges: d
                    .labeled_edges()
                    .enumerate()
                    .map(|(id, (e, label))| JsonEdge {
                        id,
                        u: e.u,
                        v: e.v(),
                        label,
                    })
                    .collect(),
            };
            let mut s = serde_json::to_string_pretty(&doc).expect("plain data serializes");
            s.push('\n');
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercube::N_MAX;

    fn q2() -> Decomposition {
        Decomposition {
            n: Dimension::new(2).unwrap(),
            k: 1,
            kind: Kind::Even,
            labels: vec![1, 1, 0, 1],
        }
    }

    #[test]
    fn header_layout() {
        let bytes = encode(&q2());
        assert_eq!(
            bytes,
            vec![b'Q', b'D', b'E', b'C', 1, 0, 2, 1, 0, 4, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1]
        );
        assert_eq!(decode(&bytes, N_MAX).unwrap(), q2());
    }

    #[test]
    fn parse_errors() {
        let good = encode(&q2());
        assert!(matches!(
            decode(&good[..10], N_MAX),
            Err(FormatError::Truncated { .. })
        ));
        assert!(matches!(
            decode(&good[..good.len() - 1], N_MAX),
            Err(FormatError::Truncated { .. })
        ));
        let mut extra = good.clone();
        extra.push(0);
        assert!(matches!(
            decode(&extra, N_MAX),
            Err(FormatError::TrailingBytes(1))
        ));
        let mut bad = good.clone();
        bad[0] = b'X';
        assert!(matches!(decode(&bad, N_MAX), Err(FormatError::BadMagic)));
        let mut bad = good.clone();
        bad[4] = 2;
        assert!(matches!(
            decode(&bad, N_MAX),
            Err(FormatError::UnsupportedVersion(2))
        ));
        let mut bad = good.clone();
        bad[8] = 7;
        assert!(matches!(decode(&bad, N_MAX), Err(FormatError::BadKind(7))));
        let mut bad = good.clone();
        bad[6] = 0;
        assert!(matches!(
            decode(&bad, N_MAX),
            Err(FormatError::Dimension(_))
        ));
        let mut bad = good.clone();
        bad[6] = 3;
        assert!(matches!(
            decode(&bad, N_MAX),
            Err(FormatError::CountMismatch { .. })
        ));
        let mut bad = good.clone();
        bad[HEADER_LEN] = 2;
        assert!(matches!(
            decode(&bad, N_MAX),
            Err(FormatError::LabelOutOfRange {
                index: 0,
                label: 2,
                k: 1
            })
        ));
    }

    #[test]
    fn exports_of_q2() {
        let d = q2();
        let el = export(&d, ExportFormat::Edgelist);
        assert_eq!(el, "0 1 1\n2 3 1\n0 2 0\n1 3 1\n");
        let dot = export(&d, ExportFormat::Dot);
        assert!(dot.starts_with("graph Q2 {\n"));
        assert!(dot.contains("  0 -- 2 [tree=0];\n"));
        let json: serde_json::Value =
            serde_json::from_str(&export(&d, ExportFormat::JsonDoc)).unwrap();
        assert_eq!(json["n"], 2);
        assert_eq!(json["kind"], "even");
        assert_eq!(json["edges"].as_array().unwrap().len(), 4);
        assert_eq!(json["edges"][2]["u"], 0);
        assert_eq!(json["edges"][2]["v"], 2);
        assert_eq!(json["edges"][2]["label"], 0);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn encode_decode_roundtrip(n in 1u32..=12, seed in any::<u64>()) {
                let n = Dimension::new(n).unwrap();
                let k = n.half();
                // arbitrary labels in 0..=k; decoding does not check structure
                let mut x = seed | 1;
                let labels = (0..n.edge_count())
                    .map(|_| {
                        x ^= x << 13;
                        x ^= x >> 7;
                        x ^= x << 17;
                        (x % (u64::from(k) + 1)) as u8
                    })
                    .collect();
                let d = Decomposition { n, k, kind: Kind::of(n), labels };
                let bytes = encode(&d);
                prop_assert_eq!(bytes.len(), HEADER_LEN + d.labels.len());
                prop_assert_eq!(decode(&bytes, N_MAX).unwrap(), d);
            }
        }
    }
}
