//! Consumers of listed cliques.
//!
//! Engines talk to a [`CliqueSink`]. In count mode (`wants_cliques() ==
//! false`) they only push totals through [`CliqueSink::add`]; in emit mode
//! they hand over every clique as a slice of vertex ids of the graph the
//! engine was given. Parallel runs fork one sink per worker and fold them
//! back with [`ForkSink::absorb`], which must be associative and commutative.

use std::fmt;
use std::io::Write;
use std::sync::{Arc, Mutex};

use crate::graph::VertexId;

/// A 64-bit clique count that saturates instead of wrapping.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct CliqueCount {
    value: u64,
    saturated: bool,
}

impl CliqueCount {
    pub const ZERO: CliqueCount = CliqueCount {
        value: 0,
        saturated: false,
    };

    pub const SATURATED: CliqueCount = CliqueCount {
        value: u64::MAX,
        saturated: true,
    };

    pub fn new(value: u64) -> Self {
        CliqueCount {
            value,
            saturated: false,
        }
    }

    /// The count, or `u64::MAX` once saturated.
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn is_saturated(self) -> bool {
        self.saturated
    }

    #[inline]
    pub fn add(&mut self, n: u64) {
        match self.value.checked_add(n) {
            Some(v) => self.value = v,
            None => *self = CliqueCount::SATURATED,
        }
    }

    #[inline]
    pub fn merge(&mut self, other: CliqueCount) {
        if other.saturated {
            *self = CliqueCount::SATURATED;
        } else {
            self.add(other.value);
        }
    }

    /// `C(n, k)`, saturating.
    pub fn binomial(n: u64, k: u64) -> Self {
        if k > n {
            return CliqueCount::ZERO;
        }
        let k = k.min(n - k);
        let mut acc: u128 = 1;
        for i in 0..k {
            // acc * (n - i) / (i + 1) stays integral at every step.
            acc = match acc.checked_mul((n - i) as u128) {
                Some(v) => v / (i as u128 + 1),
                None => return CliqueCount::SATURATED,
            };
        }
        u64::try_from(acc).map_or(CliqueCount::SATURATED, CliqueCount::new)
    }
}

impl From<u64> for CliqueCount {
    fn from(value: u64) -> Self {
        CliqueCount::new(value)
    }
}

impl fmt::Display for CliqueCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.saturated {
            write!(f, ">={} (saturated)", u64::MAX)
        } else {
            write!(f, "{}", self.value)
        }
    }
}

pub trait CliqueSink {
    /// False for count-only sinks; engines then skip building tuples.
    fn wants_cliques(&self) -> bool;

    /// Delivers one clique. Also counts it.
    fn report(&mut self, clique: &[VertexId]);

    /// Adds cliques that are counted but not delivered.
    fn add(&mut self, n: CliqueCount);

    fn count(&self) -> CliqueCount;
}

/// A sink that can be split across workers and merged back.
pub trait ForkSink: CliqueSink + Send + Sized {
    fn fork(&self) -> Self;
    fn absorb(&mut self, other: Self);
}

impl<S: CliqueSink + ?Sized> CliqueSink for &mut S {
    fn wants_cliques(&self) -> bool {
        (**self).wants_cliques()
    }
    fn report(&mut self, clique: &[VertexId]) {
        (**self).report(clique)
    }
    fn add(&mut self, n: CliqueCount) {
        (**self).add(n)
    }
    fn count(&self) -> CliqueCount {
        (**self).count()
    }
}

#[derive(Clone, Debug, Default)]
pub struct CountSink {
    count: CliqueCount,
}

impl CountSink {
    pub fn new() -> Self {
        CountSink::default()
    }
}

impl CliqueSink for CountSink {
    fn wants_cliques(&self) -> bool {
        false
    }
    fn report(&mut self, _clique: &[VertexId]) {
        self.count.add(1);
    }
    fn add(&mut self, n: CliqueCount) {
        self.count.merge(n);
    }
    fn count(&self) -> CliqueCount {
        self.count
    }
}

impl ForkSink for CountSink {
    fn fork(&self) -> Self {
        CountSink::new()
    }
    fn absorb(&mut self, other: Self) {
        self.count.merge(other.count);
    }
}

/// Collects every clique in delivery order.
#[derive(Clone, Debug, Default)]
pub struct CollectSink {
    pub cliques: Vec<Vec<VertexId>>,
    count: CliqueCount,
}

impl CollectSink {
    pub fn new() -> Self {
        CollectSink::default()
    }

    /// Cliques with each tuple sorted ascending and the list sorted.
    pub fn sorted(&self) -> Vec<Vec<VertexId>> {
        let mut out: Vec<Vec<VertexId>> = self
            .cliques
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect();
        out.sort_unstable();
        out
    }
}

impl CliqueSink for CollectSink {
    fn wants_cliques(&self) -> bool {
        true
    }
    fn report(&mut self, clique: &[VertexId]) {
        self.cliques.push(clique.to_vec());
        self.count.add(1);
    }
    fn add(&mut self, n: CliqueCount) {
        self.count.merge(n);
    }
    fn count(&self) -> CliqueCount {
        self.count
    }
}

impl ForkSink for CollectSink {
    fn fork(&self) -> Self {
        CollectSink::new()
    }
    fn absorb(&mut self, other: Self) {
        self.cliques.extend(other.cliques);
        self.count.merge(other.count);
    }
}

const FLUSH_BYTES: usize = 1 << 16;

/// Writes one clique per line: external labels, ascending, space-separated.
///
/// Forks share the writer and buffer locally; a buffer reaches the writer
/// under the lock in one piece, so lines never interleave.
pub struct WriterSink<W: Write + Send> {
    out: Arc<Mutex<W>>,
    labels: Arc<[u64]>,
    buf: String,
    scratch: Vec<u64>,
    count: CliqueCount,
    error: Option<std::io::Error>,
}

impl<W: Write + Send> WriterSink<W> {
    pub fn new(out: W, labels: Arc<[u64]>) -> Self {
        WriterSink {
            out: Arc::new(Mutex::new(out)),
            labels,
            buf: String::new(),
            scratch: Vec::new(),
            count: CliqueCount::ZERO,
            error: None,
        }
    }

    fn flush_buf(&mut self) {
        if self.buf.is_empty() {
            return;
        }
        let mut out = self.out.lock().unwrap_or_else(|e| e.into_inner());
        if let Err(e) = out.write_all(self.buf.as_bytes()) {
            self.error.get_or_insert(e);
        }
        self.buf.clear();
    }

    /// Flushes the local buffer and the shared writer.
    pub fn finish(&mut self) -> std::io::Result<()> {
        self.flush_buf();
        if let Some(e) = self.error.take() {
            return Err(e);
        }
        self.out.lock().unwrap_or_else(|e| e.into_inner()).flush()
    }
}

impl<W: Write + Send> CliqueSink for WriterSink<W> {
    fn wants_cliques(&self) -> bool {
        true
    }

    fn report(&mut self, clique: &[VertexId]) {
        use std::fmt::Write as _;
        self.scratch.clear();
        self.scratch
            .extend(clique.iter().map(|&v| self.labels[v as usize]));
        self.scratch.sort_unstable();
        for (i, l) in self.scratch.iter().enumerate() {
            if i > 0 {
                self.buf.push(' ');
            }
            let _ = write!(self.buf, "{l}");
        }
        self.buf.push('\n');
        self.count.add(1);
        if self.buf.len() >= FLUSH_BYTES {
            self.flush_buf();
        }
    }

    fn add(&mut self, n: CliqueCount) {
        self.count.merge(n);
    }

    fn count(&self) -> CliqueCount {
        self.count
    }
}

impl<W: Write + Send> ForkSink for WriterSink<W> {
    fn fork(&self) -> Self {
        WriterSink {
            out: Arc::clone(&self.out),
            labels: Arc::clone(&self.labels),
            buf: String::new(),
            scratch: Vec::new(),
            count: CliqueCount::ZERO,
            error: None,
        }
    }

    fn absorb(&mut self, mut other: Self) {
        other.flush_buf();
        if let Some(e) = other.error.take() {
            self.error.get_or_insert(e);
        }
        self.count.merge(other.count);
    }
}

impl<W: Write + Send> Drop for WriterSink<W> {
    fn drop(&mut self) {
        self.flush_buf();
    }
}

/// Translates vertex ids through `map` before forwarding.
pub struct MappedSink<'a, S: CliqueSink + ?Sized> {
    inner: &'a mut S,
    map: &'a [VertexId],
    buf: Vec<VertexId>,
}

impl<'a, S: CliqueSink + ?Sized> MappedSink<'a, S> {
    pub fn new(inner: &'a mut S, map: &'a [VertexId]) -> Self {
        MappedSink {
            inner,
            map,
            buf: Vec::new(),
        }
    }
}

impl<S: CliqueSink + ?Sized> CliqueSink for MappedSink<'_, S> {
    fn wants_cliques(&self) -> bool {
        self.inner.wants_cliques()
    }
    fn report(&mut self, clique: &[VertexId]) {
        self.buf.clear();
        self.buf
            .extend(clique.iter().map(|&v| self.map[v as usize]));
        self.inner.report(&self.buf);
    }
    fn add(&mut self, n: CliqueCount) {
        self.inner.add(n);
    }
    fn count(&self) -> CliqueCount {
        self.inner.count()
    }
}
