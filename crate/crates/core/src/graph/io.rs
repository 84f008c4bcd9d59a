//! Edge-list text ingestion and the binary graph cache.
//!
//! Text format: one edge per line as two whitespace-separated non-negative
//! integers. Lines starting with `#` or `%` are comments, blank lines are
//! skipped, and columns after the second (weights, timestamps) are ignored.
//! Vertex labels are compacted to `0..n` in order of first appearance.
//!
//! Binary cache layout (all integers little-endian):
//!
//! | offset            | size            | field                       |
//! |-------------------|-----------------|-----------------------------|
//! | 0                 | 5               | magic `KCLG1`               |
//! | 5                 | 8               | `n` as u64                  |
//! | 13                | 8               | `m` as u64                  |
//! | 21                | 8 * (n + 1)     | offsets as u64              |
//! | 21 + 8 * (n + 1)  | 4 * 2m          | neighbors as u32            |

use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use super::{Graph, VertexId};
use crate::error::{Error, Result};

pub const BINARY_MAGIC: &[u8; 5] = b"KCLG1";

/// A graph together with the external labels of its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedGraph {
    pub graph: Graph,
    /// `labels[v]` is the id vertex `v` carried in the input file.
    pub labels: Vec<u64>,
}

impl LoadedGraph {
    pub fn unlabeled(graph: Graph) -> Self {
        let labels = (0..graph.n() as u64).collect();
        LoadedGraph { graph, labels }
    }
}

pub fn load_edge_list<R: BufRead>(reader: R) -> Result<LoadedGraph> {
    let mut ids: HashMap<u64, VertexId> = HashMap::new();
    let mut labels: Vec<u64> = Vec::new();
    let mut edges = Vec::new();

    let mut intern = |label: u64, labels: &mut Vec<u64>| -> Result<VertexId> {
        if let Some(&id) = ids.get(&label) {
            return Ok(id);
        }
        let id = VertexId::try_from(labels.len())
            .map_err(|_| Error::InvalidGraph("more than 2^32 vertices".into()))?;
        ids.insert(label, id);
        labels.push(label);
        Ok(id)
    };

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut next_id = || -> Result<u64> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line: lineno,
                msg: "expected two vertex ids".into(),
            })?;
            tok.parse::<u64>().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("invalid vertex id {tok:?}"),
            })
        };
        let a = next_id()?;
        let b = next_id()?;
        let u = intern(a, &mut labels)?;
        let v = intern(b, &mut labels)?;
        edges.push((u, v));
    }

    let graph = Graph::from_edges(labels.len(), edges);
    Ok(LoadedGraph { graph, labels })
}

/// Loads either format, sniffing the binary magic.
pub fn read_edge_list_file(path: impl AsRef<Path>) -> Result<LoadedGraph> {
    let mut reader = BufReader::new(File::open(path)?);
    let head = reader.fill_buf()?;
    if head.starts_with(BINARY_MAGIC) {
        let graph = read_binary(reader)?;
        Ok(LoadedGraph::unlabeled(graph))
    } else {
        load_edge_list(reader)
    }
}

/// Writes `g` so that [`load_edge_list`] reproduces it exactly.
///
/// A vertex without a smaller neighbor is registered with a `v v` line
/// (dropped as a self-loop on load) unless the next line already names it
/// first, so first-appearance order and isolated vertices survive the round
/// trip.
pub fn write_edge_list<W: Write>(g: &Graph, labels: Option<&[u64]>, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    let label = |v: VertexId| labels.map_or(v as u64, |l| l[v as usize]);
    for x in 0..g.n() as VertexId {
        let smaller: Vec<_> = g.neighbors(x).iter().take_while(|&&w| w < x).collect();
        // The next vertex's first line starts with x exactly when x is its
        // smallest neighbor; then x shows up in order without help.
        let next_starts_with_x = (x as usize + 1) < g.n() && g.neighbors(x + 1).first() == Some(&x);
        if smaller.is_empty() && !next_starts_with_x {
            writeln!(out, "{} {}", label(x), label(x))?;
        }
        for &w in smaller {
            writeln!(out, "{} {}", label(w), label(x))?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn write_binary<W: Write>(g: &Graph, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    out.write_all(BINARY_MAGIC)?;
    out.write_all(&(g.n() as u64).to_le_bytes())?;
    out.write_all(&(g.m() as u64).to_le_bytes())?;
    for &o in g.offsets() {
        out.write_all(&(o as u64).to_le_bytes())?;
    }
    for &v in g.neighbor_array() {
        out.write_all(&v.to_le_bytes())?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_binary<R: Read>(mut input: R) -> Result<Graph> {
    let mut magic = [0u8; 5];
    input.read_exact(&mut magic)?;
    if &magic != BINARY_MAGIC {
        return Err(Error::Cache("bad magic".into()));
    }
    let mut word = [0u8; 8];
    input.read_exact(&mut word)?;
    let n = u64::from_le_bytes(word);
    input.read_exact(&mut word)?;
    let m = u64::from_le_bytes(word);
    if n > u32::MAX as u64 {
        return Err(Error::Cache(format!("n = {n} exceeds 32-bit vertex ids")));
    }
    let n = n as usize;
    let arcs = m
        .checked_mul(2)
        .and_then(|a| usize::try_from(a).ok())
        .ok_or_else(|| Error::Cache(format!("edge count {m} too large")))?;

    // Header sizes are untrusted; let a short file fail on read instead.
    const PREALLOC: usize = 1 << 20;
    let mut offsets = Vec::with_capacity((n + 1).min(PREALLOC));
    for _ in 0..=n {
        input.read_exact(&mut word)?;
        offsets.push(u64::from_le_bytes(word) as usize);
    }
    let mut neighbors = Vec::with_capacity(arcs.min(PREALLOC));
    let mut half = [0u8; 4];
    for _ in 0..arcs {
        input.read_exact(&mut half)?;
        neighbors.push(u32::from_le_bytes(half));
    }
    Graph::from_csr(offsets, neighbors).map_err(|e| Error::Cache(e.to_string()))
}
