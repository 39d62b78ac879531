//! Barycentric refinement of graphs and the edge-subdivision procedure that
//! pushes the density of a 3-manifold above any target.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::nonempty_subsets;
use crate::graph::{Graph, VertexSet, DEFAULT_CLIQUE_BUDGET};
use crate::ratio::ExactRatio;
use crate::topology::{manifold_dimension, Budget};

/// Barycentric refinement: one vertex per complete subgraph, one edge per
/// strict containment. Labels record the dimension of the originating
/// clique.
pub fn barycentric_refinement(g: &Graph) -> Result<Graph> {
    let mut cliques = g.cliques_capped(DEFAULT_CLIQUE_BUDGET)?;
    cliques.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index: HashMap<&[u32], u32> = cliques
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_slice(), i as u32))
        .collect();
    let mut edges = Vec::new();
    for (i, clique) in cliques.iter().enumerate() {
        if clique.len() == 1 {
            continue;
        }
        for subset in nonempty_subsets(clique) {
            if subset.len() < clique.len() {
                let j = index[subset.as_slice()];
                edges.push((j.min(i as u32), j.max(i as u32)));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let labels = cliques
        .iter()
        .map(|c| Some((c.len() - 1).to_string()))
        .collect();
    Graph::from_edges(cliques.len(), &edges)?.with_labels(labels)
}

/// The refinement operator on f-vectors up to dimension 4, column j holding
/// the clique counts of the refined (j+1)-simplex.
pub struct BarycentricOperator;

impl BarycentricOperator {
    pub const MATRIX: [[i64; 5]; 5] = [
        [1, 1, 1, 1, 1],
        [0, 2, 6, 14, 30],
        [0, 0, 6, 36, 150],
        [0, 0, 0, 24, 240],
        [0, 0, 0, 0, 120],
    ];

    /// `A . f` with `f` zero-padded to length 5.
    pub fn apply(f: &[u64]) -> [i64; 5] {
        let mut out = [0i64; 5];
        for (i, row) in Self::MATRIX.iter().enumerate() {
            for (j, &a) in row.iter().enumerate() {
                out[i] += a * f.get(j).copied().unwrap_or(0) as i64;
            }
        }
        out
    }
}

/// Residual `f(refinement) - A . f(g)`, zero-padded to length 5. Zero for
/// every graph of dimension at most 4.
pub fn operator_check(g: &Graph) -> Result<[i64; 5]> {
    let f = g.f_vector()?;
    if f.counts().len() > 5 {
        return Err(Error::invalid(format!(
            "dimension {} exceeds the operator table (max 4)",
            f.counts().len() - 1
        )));
    }
    let refined = barycentric_refinement(g)?;
    let rf = refined.f_vector()?;
    let expected = BarycentricOperator::apply(f.counts());
    let mut residual = [0i64; 5];
    for k in 0..5 {
        residual[k] = rf.get(k) as i64 - expected[k];
    }
    Ok(residual)
}

/// `(E/(V-1)` before, after) one barycentric refinement of a certified
/// surface.
pub fn phi_refinement_trend(g: &Graph, budget: &Budget) -> Result<(ExactRatio, ExactRatio)> {
    if manifold_dimension(g, budget).dimension != Some(2) {
        return Err(Error::invalid("not a certified 2-manifold"));
    }
    let before = crate::arboricity::phi(g)?;
    let after = crate::arboricity::phi(&barycentric_refinement(g)?)?;
    Ok((before, after))
}

/// For a d-manifold and an edge `(a, b)`, the graph induced on the
/// intersection of the two unit spheres; in a 3-manifold this is a cycle
/// whose length is the degree of the edge.
pub fn edge_link(g: &Graph, e: (u32, u32)) -> Result<Graph> {
    let (a, b) = e;
    if a as usize >= g.vertex_count() || b as usize >= g.vertex_count() || !g.has_edge(a, b) {
        return Err(Error::invalid(format!("({a},{b}) is not an edge")));
    }
    let link = link_set(g, a, b);
    Ok(g.induced_subgraph(&link))
}

fn link_set(g: &Graph, a: u32, b: u32) -> VertexSet {
    let na = VertexSet::from_iter(g.vertex_count(), g.neighbors(a).iter().copied());
    let nb = VertexSet::from_iter(g.vertex_count(), g.neighbors(b).iter().copied());
    na.intersection(&nb)
}

/// Members of the edge link if it induces a cycle on >= 4 vertices.
fn cycle_link(g: &Graph, a: u32, b: u32) -> Option<Vec<u32>> {
    let link = link_set(g, a, b);
    let members = link.to_vec();
    if members.len() < 4 {
        return None;
    }
    let adj = g.adjacency_bitsets();
    if !members
        .iter()
        .all(|&v| adj[v as usize].intersection(&link).len() == 2)
    {
        return None;
    }
    // Connectivity within the link.
    let mut seen = VertexSet::empty(g.vertex_count());
    seen.insert(members[0]);
    let mut stack = vec![members[0]];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for v in adj[u as usize].intersection(&link).iter() {
            if !seen.contains(v) {
                seen.insert(v);
                count += 1;
                stack.push(v);
            }
        }
    }
    (count == members.len()).then_some(members)
}

/// Subdivides edge `(a, b)` of a 3-manifold: removes the edge and joins a
/// new midpoint to `a`, `b` and the whole link cycle. Adds one vertex and
/// `(link length + 1)` edges; the result is again a 3-manifold.
pub fn edge_subdivide(g: &Graph, e: (u32, u32)) -> Result<Graph> {
    let (a, b) = e;
    if a as usize >= g.vertex_count() || b as usize >= g.vertex_count() || !g.has_edge(a, b) {
        return Err(Error::invalid(format!("({a},{b}) is not an edge")));
    }
    let link = cycle_link(g, a, b)
        .ok_or_else(|| Error::invalid(format!("link of ({a},{b}) is not a cycle")))?;
    let n = g.vertex_count();
    let midpoint = n as u32;
    let mut edges: Vec<(u32, u32)> = g
        .edges()
        .into_iter()
        .filter(|&(u, v)| (u, v) != (a.min(b), a.max(b)))
        .collect();
    edges.push((a, midpoint));
    edges.push((b, midpoint));
    for &c in &link {
        edges.push((c, midpoint));
    }
    let out = Graph::from_edges(n + 1, &edges)?;
    let mut labels: Vec<Option<String>> = match g.labels() {
        Some(l) => l.to_vec(),
        None => vec![None; n],
    };
    labels.push(Some(format!("mid({a},{b})")));
    out.with_labels(labels)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InflationPhase {
    /// Subdividing a link edge of the working edge, raising its degree by 1.
    RaiseDegree,
    /// Subdividing the working edge itself and recursing on the child edge.
    Densify,
}

#[derive(Debug, Clone, Serialize)]
pub struct InflationStep {
    pub phase: InflationPhase,
    pub edge: (u32, u32),
    pub link_len: usize,
    pub vertex_delta: usize,
    pub edge_delta: usize,
}

#[derive(Debug, Clone)]
pub struct InflationReport {
    pub graph: Graph,
    pub steps: Vec<InflationStep>,
    pub final_density: ExactRatio,
}

/// Drives `E/(V-1)` of a 3-manifold strictly above `target` by edge
/// subdivision, in two phases. Phase one subdivides link edges of a fixed
/// working edge round-robin until the working degree exceeds `target`;
/// each such step raises the degree by exactly one. Phase two repeatedly
/// subdivides the working edge and recurses on the child edge at the
/// original endpoint, whose link (hence degree) is unchanged, so every step
/// adds one vertex and degree + 1 edges. Once the density passes `target`
/// the arboricity exceeds `target` too.
pub fn inflate_arboricity(
    g: &Graph,
    target: usize,
    max_steps: usize,
    budget: &Budget,
) -> Result<InflationReport> {
    if manifold_dimension(g, budget).dimension != Some(3) {
        return Err(Error::invalid("not a certified 3-manifold"));
    }
    if g.edge_count() == 0 {
        return Err(Error::invalid("no edge to subdivide"));
    }
    let mut current = g.clone();
    let mut steps: Vec<InflationStep> = Vec::new();
    let target_ratio = ExactRatio::from_int(target as i64);

    let mut remaining = max_steps;
    let mut charge = |steps: &Vec<InflationStep>, current: &Graph| -> Result<()> {
        if remaining == 0 {
            return Err(Error::budget(format!(
                "inflation stopped after {} steps at density {}",
                steps.len(),
                crate::arboricity::phi(current).expect("graph has vertices")
            )));
        }
        remaining -= 1;
        Ok(())
    };

    if crate::arboricity::phi(&current)? > target_ratio {
        let final_density = crate::arboricity::phi(&current)?;
        return Ok(InflationReport {
            graph: current,
            steps,
            final_density,
        });
    }

    // Working edge: lexicographically smallest.
    let (a, mut b) = current.edges()[0];

    // Phase one: raise the degree of (a, b) above target.
    let mut round = 0usize;
    loop {
        let link = cycle_link(&current, a, b)
            .ok_or_else(|| Error::invalid(format!("link of ({a},{b}) is not a cycle")))?;
        if link.len() > target {
            break;
        }
        // Cycle edges of the link, in canonical order.
        let link_graph_edges: Vec<(u32, u32)> = {
            let link_set = VertexSet::from_iter(current.vertex_count(), link.iter().copied());
            current
                .edges()
                .into_iter()
                .filter(|&(u, v)| link_set.contains(u) && link_set.contains(v))
                .collect()
        };
        let pick = link_graph_edges[round % link_graph_edges.len()];
        charge(&steps, &current)?;
        let before = (current.vertex_count(), current.edge_count());
        let sub_link_len = cycle_link(&current, pick.0, pick.1)
            .ok_or_else(|| Error::invalid("link edge has a non-cycle link"))?
            .len();
        current = edge_subdivide(&current, pick)?;
        steps.push(InflationStep {
            phase: InflationPhase::RaiseDegree,
            edge: pick,
            link_len: sub_link_len,
            vertex_delta: current.vertex_count() - before.0,
            edge_delta: current.edge_count() - before.1,
        });
        round += 1;
    }

    // Phase two: subdivide the working edge, recurse on the child at `a`.
    while crate::arboricity::phi(&current)? <= target_ratio {
        charge(&steps, &current)?;
        let link_len = cycle_link(&current, a, b)
            .ok_or_else(|| Error::invalid("working edge link is not a cycle"))?
            .len();
        let before = (current.vertex_count(), current.edge_count());
        let midpoint = current.vertex_count() as u32;
        current = edge_subdivide(&current, (a, b))?;
        steps.push(InflationStep {
            phase: InflationPhase::Densify,
            edge: (a, b),
            link_len,
            vertex_delta: current.vertex_count() - before.0,
            edge_delta: current.edge_count() - before.1,
        });
        b = midpoint;
    }

    let final_density = crate::arboricity::phi(&current)?;
    Ok(InflationReport {
        graph: current,
        steps,
        final_density,
    })
}
