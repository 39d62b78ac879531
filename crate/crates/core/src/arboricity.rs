//! Exact arboricity and Nash-Williams density.
//!
//! `forest_partition` decides whether the edge set splits into k forests by
//! augmenting over k copies of the graphic matroid; a returned partition is
//! a feasibility certificate and a `None` is certified infeasibility.
//! `max_density` computes the exact maximum of `|E_W| / (|W| - 1)` over
//! induced subgraphs by parametric max-flow with rational pivots, so
//! `arboricity` gets a certificate in both directions: the density witness
//! bounds it from below and the partition from above.

use std::collections::VecDeque;
use std::fmt;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::flow::Dinic;
use crate::graph::{Graph, VertexSet};
use crate::ratio::ExactRatio;
use crate::rng::SplitMix64;

/// Default edge cap for the exhaustive arboricity oracle.
pub const BRUTE_FORCE_EDGE_CAP: usize = 16;

/// Guard on exhaustive subgraph enumeration in the conjecture explorer.
pub const EXHAUSTIVE_VERTEX_GUARD: usize = 24;

/// An assignment of every edge to one of `k` forests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForestPartition {
    k: usize,
    edges: Vec<(u32, u32)>,
    forest_of: Vec<u32>,
}

impl ForestPartition {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Edges in the canonical order of `Graph::edges`.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn forest_of(&self, edge_index: usize) -> u32 {
        self.forest_of[edge_index]
    }

    /// Independent certificate check: every edge of `g` is assigned exactly
    /// once and every color class is acyclic (union-find).
    pub fn validate(&self, g: &Graph) -> bool {
        if self.edges != g.edges() || self.forest_of.len() != self.edges.len() {
            return false;
        }
        if self.forest_of.iter().any(|&f| f as usize >= self.k.max(1)) {
            return false;
        }
        let n = g.vertex_count();
        for forest in 0..self.k as u32 {
            let mut uf = UnionFind::new(n);
            for (idx, &(u, v)) in self.edges.iter().enumerate() {
                if self.forest_of[idx] == forest && !uf.union(u as usize, v as usize) {
                    return false;
                }
            }
        }
        true
    }
}

impl Serialize for ForestPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            edge: (u32, u32),
            forest: u32,
        }
        let entries: Vec<Entry> = self
            .edges
            .iter()
            .zip(&self.forest_of)
            .map(|(&edge, &forest)| Entry { edge, forest })
            .collect();
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("k", &self.k)?;
        map.serialize_entry("assignment", &entries)?;
        map.end()
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, x: usize) -> u32 {
        let p = self.parent[x];
        if p as usize == x {
            return p;
        }
        let root = self.find(p as usize);
        self.parent[x] = root;
        root
    }

    /// Returns false when `a` and `b` were already connected.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        self.parent[ra as usize] = rb;
        true
    }
}

/// Matroid-partition state: per forest, an adjacency list of the edges
/// currently assigned to it.
struct Partitioner<'g> {
    g: &'g Graph,
    edges: Vec<(u32, u32)>,
    k: usize,
    forest_of: Vec<Option<u32>>,
    forest_adj: Vec<Vec<Vec<(u32, u32)>>>,
}

enum Step {
    Root,
    From { edge: u32, forest: u32 },
}

impl<'g> Partitioner<'g> {
    fn new(g: &'g Graph, k: usize) -> Self {
        let edges = g.edges();
        Partitioner {
            g,
            forest_of: vec![None; edges.len()],
            forest_adj: vec![vec![Vec::new(); g.vertex_count()]; k],
            edges,
            k,
        }
    }

    fn attach(&mut self, edge: u32, forest: u32) {
        let (a, b) = self.edges[edge as usize];
        self.forest_adj[forest as usize][a as usize].push((b, edge));
        self.forest_adj[forest as usize][b as usize].push((a, edge));
        self.forest_of[edge as usize] = Some(forest);
    }

    fn detach(&mut self, edge: u32, forest: u32) {
        let (a, b) = self.edges[edge as usize];
        self.forest_adj[forest as usize][a as usize].retain(|&(_, e)| e != edge);
        self.forest_adj[forest as usize][b as usize].retain(|&(_, e)| e != edge);
        self.forest_of[edge as usize] = None;
    }

    /// Edges on the tree path between `a` and `b` in `forest`, or `None`
    /// when the endpoints lie in different components (so the edge fits).
    fn circuit(&self, forest: u32, a: u32, b: u32) -> Option<Vec<u32>> {
        let adj = &self.forest_adj[forest as usize];
        let mut parent_edge = vec![u32::MAX; self.g.vertex_count()];
        let mut parent_vertex = vec![u32::MAX; self.g.vertex_count()];
        let mut queue = VecDeque::from([a]);
        parent_vertex[a as usize] = a;
        while let Some(u) = queue.pop_front() {
            if u == b {
                let mut path = Vec::new();
                let mut cur = b;
                while cur != a {
                    path.push(parent_edge[cur as usize]);
                    cur = parent_vertex[cur as usize];
                }
                return Some(path);
            }
            for &(v, e) in &adj[u as usize] {
                if parent_vertex[v as usize] == u32::MAX {
                    parent_vertex[v as usize] = u;
                    parent_edge[v as usize] = e;
                    queue.push_back(v);
                }
            }
        }
        None
    }

    /// Inserts one edge, searching the exchange digraph breadth-first when no
    /// forest takes it directly. Returns false when no augmenting sequence
    /// exists, which certifies that k forests do not suffice.
    fn insert(&mut self, new_edge: u32) -> bool {
        let m = self.edges.len();
        let mut visited = vec![false; m];
        let mut parent: Vec<Step> = (0..m).map(|_| Step::Root).collect();
        visited[new_edge as usize] = true;
        let mut queue = VecDeque::from([new_edge]);
        while let Some(x) = queue.pop_front() {
            let (a, b) = self.edges[x as usize];
            for forest in 0..self.k as u32 {
                if self.forest_of[x as usize] == Some(forest) {
                    continue;
                }
                match self.circuit(forest, a, b) {
                    None => {
                        self.augment(&parent, x, forest);
                        return true;
                    }
                    Some(cycle_edges) => {
                        for y in cycle_edges {
                            if !visited[y as usize] {
                                visited[y as usize] = true;
                                parent[y as usize] = Step::From { edge: x, forest };
                                queue.push_back(y);
                            }
                        }
                    }
                }
            }
        }
        false
    }

    fn augment(&mut self, parent: &[Step], sink: u32, sink_forest: u32) {
        let mut cur = sink;
        let mut dest = sink_forest;
        loop {
            if let Some(old) = self.forest_of[cur as usize] {
                self.detach(cur, old);
            }
            self.attach(cur, dest);
            match parent[cur as usize] {
                Step::Root => break,
                Step::From { edge, forest } => {
                    cur = edge;
                    dest = forest;
                }
            }
        }
    }
}

/// Partitions the edges of `g` into `k` forests when possible. `None` is
/// certified infeasibility via the matroid-union augmentation theorem.
pub fn forest_partition(g: &Graph, k: usize) -> Option<ForestPartition> {
    let edges = g.edges();
    if edges.is_empty() {
        return Some(ForestPartition {
            k,
            edges,
            forest_of: Vec::new(),
        });
    }
    if k == 0 {
        return None;
    }
    let mut partitioner = Partitioner::new(g, k);
    for edge in 0..edges.len() as u32 {
        if !partitioner.insert(edge) {
            return None;
        }
    }
    let forest_of = partitioner
        .forest_of
        .iter()
        .map(|f| f.expect("every edge assigned"))
        .collect();
    let partition = ForestPartition {
        k,
        edges,
        forest_of,
    };
    debug_assert!(partition.validate(g));
    Some(partition)
}

/// Exact maximum of `|E_W| / (|W| - 1)` over induced subgraphs with at least
/// two vertices, plus a maximizing witness.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityWitness {
    pub value: ExactRatio,
    pub witness: VertexSet,
}

impl fmt::Display for DensityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on {} vertices", self.value, self.witness.len())
    }
}

fn edges_within(adj: &[VertexSet], w: &VertexSet) -> u64 {
    let total: usize = w
        .iter()
        .map(|v| adj[v as usize].intersection(w).len())
        .sum();
    (total / 2) as u64
}

/// Decision step of the parametric search: the largest value of
/// `q * E_W - p * |W \ {root}|` over vertex sets, together with the source
/// side of the minimum cut. Positive means some subgraph beats `p/q`.
fn density_probe(g: &Graph, edges: &[(u32, u32)], p: i64, q: i64, root: u32) -> (i64, VertexSet) {
    let n = g.vertex_count();
    let m = edges.len();
    let source = 0;
    let edge_node = |j: usize| 1 + j;
    let vertex_node = |v: u32| 1 + m + v as usize;
    let sink = 1 + m + n;
    let inf = i64::MAX / 4;

    let mut net = Dinic::new(2 + m + n);
    for (j, &(u, v)) in edges.iter().enumerate() {
        net.add_edge(source, edge_node(j), q);
        net.add_edge(edge_node(j), vertex_node(u), inf);
        net.add_edge(edge_node(j), vertex_node(v), inf);
    }
    for v in 0..n as u32 {
        let cap = if v == root { 0 } else { p };
        net.add_edge(vertex_node(v), sink, cap);
    }
    let flow = net.max_flow(source, sink);
    let side = net.source_side(source);
    let w = VertexSet::from_iter(n, (0..n as u32).filter(|&v| side[vertex_node(v)]));
    (q * m as i64 - flow, w)
}

/// Computes the exact Nash-Williams density by Dinkelbach iteration: start
/// from `E/(V-1)`, and as long as some probe beats the current ratio, move
/// to the witness's ratio. Every pivot is the exact density of a concrete
/// subgraph, so the fixpoint needs no epsilon.
pub fn max_density(g: &Graph) -> Result<DensityWitness> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::invalid("density needs at least two vertices"));
    }
    let edges = g.edges();
    let adj = g.adjacency_bitsets();
    let mut best_num = edges.len() as i64;
    let mut best_den = (n - 1) as i64;
    let mut best_witness = VertexSet::full(n);
    if edges.is_empty() {
        let witness = VertexSet::from_iter(n, [0, 1]);
        return Ok(DensityWitness {
            value: ExactRatio::zero(),
            witness,
        });
    }
    'outer: loop {
        for root in 0..n as u32 {
            let (gain, w) = density_probe(g, &edges, best_num, best_den, root);
            if gain <= 0 {
                continue;
            }
            let size = w.len() as i64;
            debug_assert!(size >= 2);
            let num = edges_within(&adj, &w) as i64;
            let den = size - 1;
            // gain > 0 guarantees strict improvement.
            debug_assert!(num * best_den > best_num * den);
            best_num = num;
            best_den = den;
            best_witness = w;
            continue 'outer;
        }
        break;
    }
    Ok(DensityWitness {
        value: ExactRatio::new(best_num, best_den),
        witness: best_witness,
    })
}

/// Exact arboricity with a certificate in both directions: `k` is bounded
/// below by the ceiling of the density maximum and realized by the returned
/// partition. Scans upward from the density bound; by the Nash-Williams
/// theorem the first value is already feasible.
pub fn arboricity(g: &Graph) -> Result<(usize, ForestPartition)> {
    let edges = g.edges();
    if edges.is_empty() {
        return Ok((
            0,
            ForestPartition {
                k: 0,
                edges,
                forest_of: Vec::new(),
            },
        ));
    }
    let density = max_density(g)?;
    let lower = density.value.ceil_int().max(1) as usize;
    for k in lower..=edges.len() {
        if let Some(partition) = forest_partition(g, k) {
            debug_assert_eq!(k, lower);
            return Ok((k, partition));
        }
    }
    unreachable!("a graph with m edges always splits into m forests");
}

/// Exhaustive oracle: minimum number of forests by assignment search with
/// acyclicity pruning. Guarded by an edge cap.
pub fn brute_force_arboricity(g: &Graph) -> Result<usize> {
    brute_force_arboricity_capped(g, BRUTE_FORCE_EDGE_CAP)
}

pub fn brute_force_arboricity_capped(g: &Graph, cap: usize) -> Result<usize> {
    let edges = g.edges();
    if edges.len() > cap {
        return Err(Error::invalid(format!(
            "{} edges exceed the brute-force cap {cap}",
            edges.len()
        )));
    }
    if edges.is_empty() {
        return Ok(0);
    }
    for k in 1..=edges.len() {
        let mut colors = vec![u32::MAX; edges.len()];
        if brute_force_assign(g, &edges, &mut colors, 0, k) {
            return Ok(k);
        }
    }
    unreachable!();
}

fn brute_force_assign(
    g: &Graph,
    edges: &[(u32, u32)],
    colors: &mut [u32],
    idx: usize,
    k: usize,
) -> bool {
    if idx == edges.len() {
        return true;
    }
    // Color classes are interchangeable, so edge i never needs a color
    // beyond the first unused one.
    let used = colors[..idx].iter().copied().max().map_or(0, |c| c + 1);
    for color in 0..k.min(used as usize + 1) as u32 {
        colors[idx] = color;
        if class_is_acyclic(g, edges, colors, idx, color)
            && brute_force_assign(g, edges, colors, idx + 1, k)
        {
            return true;
        }
    }
    colors[idx] = u32::MAX;
    false
}

fn class_is_acyclic(g: &Graph, edges: &[(u32, u32)], colors: &[u32], upto: usize, color: u32) -> bool {
    let mut uf = UnionFind::new(g.vertex_count());
    for (i, &(u, v)) in edges.iter().enumerate().take(upto + 1) {
        if colors[i] == color && !uf.union(u as usize, v as usize) {
            return false;
        }
    }
    true
}

/// The functional `E / (V - 1)`.
pub fn phi(g: &Graph) -> Result<ExactRatio> {
    if g.vertex_count() < 2 {
        return Err(Error::invalid("phi needs at least two vertices"));
    }
    Ok(ExactRatio::new(
        g.edge_count() as i64,
        (g.vertex_count() - 1) as i64,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum ConjectureMode {
    Exhaustive,
    Sampled { budget: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConjectureVerdict {
    Holds,
    Counterexample,
}

/// Evidence for or against the claim that the density functional takes its
/// maximum on the whole graph.
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub graph: String,
    pub phi_global: ExactRatio,
    pub best_sub_phi: ExactRatio,
    pub best_sub_witness: Vec<u32>,
    #[serde(flatten)]
    pub mode: ConjectureMode,
    pub verdict: ConjectureVerdict,
}

/// Compares `phi` on the whole graph against induced subgraphs. Exhaustive
/// mode enumerates every subset with at least two vertices (guarded) and is
/// conclusive; sampled mode runs seeded random subsets with greedy add and
/// remove moves, and can only refute.
pub fn phi_maximality_check(g: &Graph, mode: ConjectureMode) -> Result<ConjectureReport> {
    let n = g.vertex_count();
    let phi_global = phi(g)?;
    let (best_num, best_den, witness) = match mode {
        ConjectureMode::Exhaustive => {
            if n > EXHAUSTIVE_VERTEX_GUARD {
                return Err(Error::invalid(format!(
                    "{n} vertices exceed the exhaustive guard {EXHAUSTIVE_VERTEX_GUARD}; use sampled mode"
                )));
            }
            exhaustive_best(g)
        }
        ConjectureMode::Sampled { budget, seed } => sampled_best(g, budget, seed),
    };
    let best_sub_phi = ExactRatio::new(best_num as i64, (best_den - 1) as i64);
    let verdict = if best_sub_phi > phi_global {
        ConjectureVerdict::Counterexample
    } else {
        ConjectureVerdict::Holds
    };
    Ok(ConjectureReport {
        graph: format!("{}v-{}e", n, g.edge_count()),
        phi_global,
        best_sub_phi,
        best_sub_witness: witness,
        mode,
        verdict,
    })
}

/// Best `(edges, vertices)` over all subsets with >= 2 vertices;
/// ties resolve to the lexicographically smallest witness.
fn exhaustive_best(g: &Graph) -> (u64, u64, Vec<u32>) {
    let n = g.vertex_count();
    let masks: Vec<u32> = (0..n as u32)
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(0u32, |acc, &u| acc | 1 << u)
        })
        .collect();
    struct Best {
        num: u64,
        den: u64,
        mask: u32,
    }
    fn witness_of(mask: u32) -> Vec<u32> {
        (0..32).filter(|&b| mask >> b & 1 == 1).collect()
    }
    let mut best = Best {
        num: 0,
        den: 2,
        mask: 0b11,
    };
    let mut consider = |mask: u32, edges: u64, size: u64, best: &mut Best| {
        if size < 2 {
            return;
        }
        let lhs = edges * (best.den - 1);
        let rhs = best.num * (size - 1);
        if lhs > rhs || (lhs == rhs && witness_of(mask) < witness_of(best.mask)) {
            *best = Best {
                num: edges,
                den: size,
                mask,
            };
        }
    };
    fn rec(
        v: usize,
        mask: u32,
        size: u64,
        edges: u64,
        masks: &[u32],
        consider: &mut impl FnMut(u32, u64, u64, &mut Best),
        best: &mut Best,
    ) {
        if v == masks.len() {
            consider(mask, edges, size, best);
            return;
        }
        rec(v + 1, mask, size, edges, masks, consider, best);
        let gained = (masks[v] & mask).count_ones() as u64;
        rec(
            v + 1,
            mask | 1 << v,
            size + 1,
            edges + gained,
            masks,
            consider,
            best,
        );
    }
    rec(0, 0, 0, 0, &masks, &mut consider, &mut best);
    (best.num, best.den, witness_of(best.mask))
}

fn sampled_best(g: &Graph, budget: u64, seed: u64) -> (u64, u64, Vec<u32>) {
    let n = g.vertex_count();
    let adj = g.adjacency_bitsets();
    let mut rng = SplitMix64::new(seed);
    // The whole graph is always a candidate.
    let full = VertexSet::full(n);
    let mut best_num = edges_within(&adj, &full);
    let mut best_den = n as u64;
    let mut best_set = full;
    for _ in 0..budget {
        let mut w = VertexSet::empty(n);
        for v in 0..n as u32 {
            if rng.next_u64() & 1 == 1 {
                w.insert(v);
            }
        }
        while w.len() < 2 {
            w.insert(rng.next_below(n as u64) as u32);
        }
        climb(&adj, &mut w);
        let num = edges_within(&adj, &w);
        let den = w.len() as u64;
        if num * (best_den - 1) > best_num * (den - 1) {
            best_num = num;
            best_den = den;
            best_set = w;
        }
    }
    (best_num, best_den, best_set.to_vec())
}

/// Greedy local search: toggle single vertices while the density strictly
/// increases.
fn climb(adj: &[VertexSet], w: &mut VertexSet) {
    let n = adj.len();
    let mut edges = edges_within(adj, w) as i64;
    loop {
        let size = w.len() as i64;
        let mut applied = false;
        for v in 0..n as u32 {
            let deg = adj[v as usize].intersection(w).len() as i64;
            let (new_edges, new_size) = if w.contains(v) {
                if size <= 2 {
                    continue;
                }
                (edges - deg, size - 1)
            } else {
                (edges + deg, size + 1)
            };
            if new_edges * (size - 1) > edges * (new_size - 1) {
                if w.contains(v) {
                    w.remove(v);
                } else {
                    w.insert(v);
                }
                edges = new_edges;
                applied = true;
                break;
            }
        }
        if !applied {
            return;
        }
    }
}
