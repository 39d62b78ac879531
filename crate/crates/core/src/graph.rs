//! Canonical graph representation and the subgraph, clique and connectivity
//! primitives every other module builds on.
//!
//! Vertices are dense integer ids `0..n`. Neighbor lists are kept sorted so
//! that neighbor iteration, edge lookups and set intersections are cheap on
//! the subgraph-heavy workloads downstream.

use std::fmt;

use crate::error::{Error, Result};
use crate::flow;

/// Default cap on the number of complete subgraphs enumerated per census.
pub const DEFAULT_CLIQUE_BUDGET: u64 = 10_000_000;

/// A finite simple undirected graph. Immutable after construction; equality
/// and hashing ignore labels and compare the structure only.
#[derive(Clone)]
pub struct Graph {
    adjacency: Vec<Vec<u32>>,
    labels: Option<Vec<Option<String>>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adjacency == other.adjacency
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.adjacency.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.vertex_count(), self.edge_count())
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            labels: None,
        }
    }

    /// Builds a graph from an edge list. Rejects self-loops, duplicate edges
    /// and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            if u as usize >= n || v as usize >= n {
                return Err(Error::invalid(format!(
                    "edge ({u},{v}) outside vertex range 0..{n}"
                )));
            }
            adjacency[u as usize].push(v);
            adjacency[v as usize].push(u);
        }
        for (v, nbrs) in adjacency.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if nbrs.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::invalid(format!("duplicate edge at vertex {v}")));
            }
        }
        Ok(Graph {
            adjacency,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Result<Self> {
        if labels.len() != self.vertex_count() {
            return Err(Error::invalid("label vector length differs from vertex count"));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adjacency[u as usize].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        0..self.vertex_count() as u32
    }

    /// Edge list in canonical order: `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in self.vertices() {
            for &v in self.neighbors(u) {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn label(&self, v: u32) -> Option<&str> {
        self.labels
            .as_ref()
            .and_then(|l| l[v as usize].as_deref())
    }

    pub fn labels(&self) -> Option<&[Option<String>]> {
        self.labels.as_deref()
    }

    /// Graph induced by `w`, with vertices reindexed densely. The returned
    /// map sends new ids to the original ones.
    pub fn induced_subgraph_with_map(&self, w: &VertexSet) -> (Graph, Vec<u32>) {
        debug_assert_eq!(w.capacity(), self.vertex_count());
        let old_ids: Vec<u32> = w.iter().collect();
        let mut new_id = vec![u32::MAX; self.vertex_count()];
        for (new, &old) in old_ids.iter().enumerate() {
            new_id[old as usize] = new as u32;
        }
        let mut adjacency = vec![Vec::new(); old_ids.len()];
        for (new, &old) in old_ids.iter().enumerate() {
            for &nbr in self.neighbors(old) {
                if w.contains(nbr) {
                    adjacency[new].push(new_id[nbr as usize]);
                }
            }
            adjacency[new].sort_unstable();
        }
        let labels = self
            .labels
            .as_ref()
            .map(|l| old_ids.iter().map(|&old| l[old as usize].clone()).collect());
        (Graph { adjacency, labels }, old_ids)
    }

    pub fn induced_subgraph(&self, w: &VertexSet) -> Graph {
        self.induced_subgraph_with_map(w).0
    }

    /// Graph induced by the neighbors of `v` (the vertex itself excluded).
    pub fn unit_sphere(&self, v: u32) -> Result<Graph> {
        if v as usize >= self.vertex_count() {
            return Err(Error::invalid(format!(
                "vertex {v} outside range 0..{}",
                self.vertex_count()
            )));
        }
        let w = VertexSet::from_iter(self.vertex_count(), self.neighbors(v).iter().copied());
        Ok(self.induced_subgraph(&w))
    }

    /// Standard reachability. The empty graph counts as not connected.
    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in self.neighbors(u) {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == n
    }

    /// Number of connected components (isolated vertices count).
    pub fn component_count(&self) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut components = 0;
        for start in 0..n as u32 {
            if seen[start as usize] {
                continue;
            }
            components += 1;
            let mut stack = vec![start];
            seen[start as usize] = true;
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        stack.push(v);
                    }
                }
            }
        }
        components
    }

    /// Counts of complete subgraphs by size, with the default clique budget.
    pub fn f_vector(&self) -> Result<FVector> {
        self.f_vector_capped(DEFAULT_CLIQUE_BUDGET)
    }

    /// Counts of complete subgraphs by size. `counts[k]` is the number of
    /// complete subgraphs on `k + 1` vertices. Fails once more than `cap`
    /// cliques have been enumerated.
    pub fn f_vector_capped(&self, cap: u64) -> Result<FVector> {
        let rows = self.adjacency_bitsets();
        let mut census = CliqueCensus {
            rows: &rows,
            counts: Vec::new(),
            sink: None,
            stack: Vec::new(),
            remaining: cap,
        };
        census.run(self.vertex_count())?;
        Ok(FVector::new(census.counts))
    }

    /// Every complete subgraph as a sorted vertex list, subject to the cap.
    pub fn cliques_capped(&self, cap: u64) -> Result<Vec<Vec<u32>>> {
        let rows = self.adjacency_bitsets();
        let mut out = Vec::new();
        let mut census = CliqueCensus {
            rows: &rows,
            counts: Vec::new(),
            sink: Some(&mut out),
            stack: Vec::new(),
            remaining: cap,
        };
        census.run(self.vertex_count())?;
        Ok(out)
    }

    /// Alternating sum of the f-vector.
    pub fn euler_characteristic(&self) -> Result<i64> {
        Ok(self.f_vector()?.euler_characteristic())
    }

    /// True when removing any `k - 1` vertices leaves the graph connected.
    ///
    /// Boundary conventions: the complete graph `K_n` is n-connected but not
    /// (n+1)-connected, and the empty graph is not connected. Decided via
    /// vertex-disjoint path counts (max-flow on a split-vertex network)
    /// rather than by enumerating separators. A separator smaller than `k`
    /// misses at least one of any `k` fixed vertices, so flows from those
    /// vertices to all their non-neighbors suffice.
    pub fn vertex_connectivity_at_least(&self, k: usize) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        if k <= 1 {
            return self.is_connected();
        }
        let complete = self.edge_count() == n * (n - 1) / 2;
        if complete {
            return k <= n;
        }
        if n < k || !self.is_connected() {
            return false;
        }
        // Minimum degree bounds the connectivity from above.
        if (0..n as u32).any(|v| self.degree(v) < k) {
            return false;
        }
        for s in 0..k as u32 {
            for t in 0..n as u32 {
                if s == t || self.has_edge(s, t) {
                    continue;
                }
                if flow::vertex_disjoint_paths(self, s, t, k) < k as i64 {
                    return false;
                }
            }
        }
        true
    }

    pub(crate) fn adjacency_bitsets(&self) -> Vec<VertexSet> {
        let n = self.vertex_count();
        (0..n as u32)
            .map(|v| VertexSet::from_iter(n, self.neighbors(v).iter().copied()))
            .collect()
    }
}

struct CliqueCensus<'a> {
    rows: &'a [VertexSet],
    counts: Vec<u64>,
    sink: Option<&'a mut Vec<Vec<u32>>>,
    stack: Vec<u32>,
    remaining: u64,
}

impl CliqueCensus<'_> {
    fn run(&mut self, n: usize) -> Result<()> {
        for v in 0..n as u32 {
            self.stack.push(v);
            self.record()?;
            let mut cand = self.rows[v as usize].clone();
            cand.retain_above(v);
            self.expand(&cand)?;
            self.stack.pop();
        }
        Ok(())
    }

    fn expand(&mut self, cand: &VertexSet) -> Result<()> {
        for u in cand.iter() {
            self.stack.push(u);
            self.record()?;
            let mut next = cand.clone();
            next.intersect_with(&self.rows[u as usize]);
            next.retain_above(u);
            self.expand(&next)?;
            self.stack.pop();
        }
        Ok(())
    }

    fn record(&mut self) -> Result<()> {
        if self.remaining == 0 {
            return Err(Error::budget("clique enumeration cap reached"));
        }
        self.remaining -= 1;
        let size = self.stack.len();
        if self.counts.len() < size {
            self.counts.resize(size, 0);
        }
        self.counts[size - 1] += 1;
        if let Some(sink) = self.sink.as_deref_mut() {
            sink.push(self.stack.clone());
        }
        Ok(())
    }
}

/// Membership bitset over the vertex ids of an ambient graph. Hash and
/// equality use the ambient id order directly, which is all the recognition
/// memo tables need.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    words: Vec<u64>,
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            words: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::empty(n);
        for v in 0..n as u32 {
            s.insert(v);
        }
        s
    }

    pub fn from_iter(n: usize, iter: impl IntoIterator<Item = u32>) -> Self {
        let mut s = VertexSet::empty(n);
        for v in iter {
            s.insert(v);
        }
        s
    }

    /// Size of the ambient vertex range.
    pub fn capacity(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: u32) {
        debug_assert!((v as usize) < self.n);
        self.words[(v >> 6) as usize] |= 1 << (v & 63);
    }

    pub fn remove(&mut self, v: u32) {
        self.words[(v >> 6) as usize] &= !(1 << (v & 63));
    }

    pub fn contains(&self, v: u32) -> bool {
        (v as usize) < self.n && self.words[(v >> 6) as usize] >> (v & 63) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros();
                w &= w - 1;
                Some((i as u32) * 64 + bit)
            })
        })
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut out = self.clone();
        out.intersect_with(other);
        out
    }

    pub fn without(&self, v: u32) -> VertexSet {
        let mut out = self.clone();
        out.remove(v);
        out
    }

    /// Keeps only members strictly greater than `v`.
    pub fn retain_above(&mut self, v: u32) {
        let word = (v >> 6) as usize;
        for w in self.words.iter_mut().take(word) {
            *w = 0;
        }
        if word < self.words.len() {
            let keep_from = (v & 63) + 1;
            if keep_from == 64 {
                self.words[word] = 0;
            } else {
                self.words[word] &= !0u64 << keep_from;
            }
        }
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }
}

/// Counts `(f_0, ..., f_d)` of complete subgraphs by dimension.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FVector(Vec<u64>);

impl FVector {
    pub fn new(counts: Vec<u64>) -> Self {
        let mut counts = counts;
        while counts.last() == Some(&0) {
            counts.pop();
        }
        FVector(counts)
    }

    pub fn counts(&self) -> &[u64] {
        &self.0
    }

    /// Number of complete subgraphs on `k + 1` vertices.
    pub fn get(&self, k: usize) -> u64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    /// Largest clique size minus one; `None` for the empty graph.
    pub fn dimension(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}
