//! Recognition of contractible graphs, spheres and manifolds, plus the
//! invariant identities: f-polynomials, curvature, Gauss-Bonnet,
//! Dehn-Sommerville and Laplacian traces.
//!
//! The recursive definitions bottom out at the empty graph (the (-1)-sphere)
//! and the one-point graph (contractible). Recognition memoizes on vertex
//! subsets of one ambient graph, so a unit sphere of an induced frame is
//! just another frame. Two sound shortcuts keep refutations cheap: a
//! contractible graph has Euler characteristic 1, and a d-sphere has Euler
//! characteristic `1 + (-1)^d`. Both follow from the valuation identity
//! `X(G) = X(G - v) + 1 - X(S(v))` by induction, so verdicts stay certified.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{FVector, Graph, VertexSet};
use crate::ratio::ExactRatio;

/// Resource limits for the recognition search.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    /// Cap on memo-table entries across the whole recursive search.
    pub memo_limit: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            memo_limit: 1_000_000,
        }
    }
}

impl Budget {
    pub fn new(memo_limit: usize) -> Self {
        Budget { memo_limit }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

/// Outcome of a recognition query. `Yes` and `No` are certified; `Unknown`
/// only ever means a search budget ran out.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecognitionResult {
    pub verdict: Verdict,
    /// Recognized dimension, for the sphere and manifold queries.
    pub dimension: Option<i64>,
    /// A vertex explaining a `No` where one exists (for manifolds, the first
    /// vertex whose unit sphere fails).
    pub witness: Option<u32>,
    /// Cause of an `Unknown`.
    pub note: Option<String>,
}

impl RecognitionResult {
    fn yes(dimension: Option<i64>) -> Self {
        RecognitionResult {
            verdict: Verdict::Yes,
            dimension,
            witness: None,
            note: None,
        }
    }

    fn no(witness: Option<u32>) -> Self {
        RecognitionResult {
            verdict: Verdict::No,
            dimension: None,
            witness,
            note: None,
        }
    }

    fn unknown() -> Self {
        RecognitionResult {
            verdict: Verdict::Unknown,
            dimension: None,
            witness: None,
            note: Some("memo budget exhausted".to_string()),
        }
    }

    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }

    pub fn is_certified(&self) -> bool {
        self.verdict != Verdict::Unknown
    }
}

/// Signals that the memo budget ran out; surfaces as `Verdict::Unknown`.
struct Exhausted;

struct Recognizer<'g> {
    g: &'g Graph,
    adj: Vec<VertexSet>,
    contractible_memo: HashMap<VertexSet, bool>,
    sphere_memo: HashMap<VertexSet, Option<i64>>,
    remaining: usize,
}

impl<'g> Recognizer<'g> {
    fn new(g: &'g Graph, budget: &Budget) -> Self {
        Recognizer {
            g,
            adj: g.adjacency_bitsets(),
            contractible_memo: HashMap::new(),
            sphere_memo: HashMap::new(),
            remaining: budget.memo_limit,
        }
    }

    fn charge(&mut self) -> std::result::Result<(), Exhausted> {
        if self.remaining == 0 {
            return Err(Exhausted);
        }
        self.remaining -= 1;
        Ok(())
    }

    fn frame_euler(&self, w: &VertexSet) -> std::result::Result<i64, Exhausted> {
        self.g
            .induced_subgraph(w)
            .euler_characteristic()
            .map_err(|_| Exhausted)
    }

    /// Members of `w` sorted by degree within `w`, ties by id. Low-degree
    /// vertices collapse first on all the graphs this crate generates.
    fn by_degree(&self, w: &VertexSet) -> Vec<u32> {
        let mut order: Vec<(usize, u32)> = w
            .iter()
            .map(|v| (self.adj[v as usize].intersection(w).len(), v))
            .collect();
        order.sort_unstable();
        order.into_iter().map(|(_, v)| v).collect()
    }

    fn contractible(&mut self, w: &VertexSet) -> std::result::Result<bool, Exhausted> {
        match w.len() {
            0 => return Ok(false),
            1 => return Ok(true),
            _ => {}
        }
        if let Some(&hit) = self.contractible_memo.get(w) {
            return Ok(hit);
        }
        let answer = self.contractible_uncached(w)?;
        self.charge()?;
        self.contractible_memo.insert(w.clone(), answer);
        Ok(answer)
    }

    fn contractible_uncached(&mut self, w: &VertexSet) -> std::result::Result<bool, Exhausted> {
        if self.frame_euler(w)? != 1 {
            return Ok(false);
        }
        for v in self.by_degree(w) {
            let sphere = self.adj[v as usize].intersection(w);
            if self.contractible(&sphere)? && self.contractible(&w.without(v))? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn sphere_dim(&mut self, w: &VertexSet) -> std::result::Result<Option<i64>, Exhausted> {
        if w.is_empty() {
            return Ok(Some(-1));
        }
        if let Some(hit) = self.sphere_memo.get(w) {
            return Ok(*hit);
        }
        let answer = self.sphere_dim_uncached(w)?;
        self.charge()?;
        self.sphere_memo.insert(w.clone(), answer);
        Ok(answer)
    }

    fn sphere_dim_uncached(&mut self, w: &VertexSet) -> std::result::Result<Option<i64>, Exhausted> {
        let members = w.to_vec();
        // The 0-sphere is exactly two isolated vertices.
        if members.len() == 2 && !self.g.has_edge(members[0], members[1]) {
            return Ok(Some(0));
        }
        // A 1-sphere is exactly a connected 2-regular graph on >= 4 vertices.
        if members.len() >= 4 {
            let two_regular = members
                .iter()
                .all(|&v| self.adj[v as usize].intersection(w).len() == 2);
            if two_regular && self.frame_connected(w) {
                return Ok(Some(1));
            }
        }
        let (dim, ok) = self.manifold_dim_inner(w)?;
        if !ok {
            return Ok(None);
        }
        // Fast paths above caught d <= 1, so here d >= 2 or the frame is a
        // failed small case.
        let d = match dim {
            Some(d) if d >= 2 => d,
            _ => return Ok(None),
        };
        if self.frame_euler(w)? != 1 + if d % 2 == 0 { 1 } else { -1 } {
            return Ok(None);
        }
        for v in self.by_degree(w) {
            if self.contractible(&w.without(v))? {
                return Ok(Some(d));
            }
        }
        Ok(None)
    }

    /// Returns `(Some(d), true)` when every unit sphere within `w` is a
    /// (d-1)-sphere, `(witness as dim, false)` otherwise.
    fn manifold_dim_inner(
        &mut self,
        w: &VertexSet,
    ) -> std::result::Result<(Option<i64>, bool), Exhausted> {
        let mut dim: Option<i64> = None;
        for v in w.iter() {
            let sphere = self.adj[v as usize].intersection(w);
            match self.sphere_dim(&sphere)? {
                None => return Ok((Some(v as i64), false)),
                Some(sd) => match dim {
                    None => dim = Some(sd + 1),
                    Some(d) if d != sd + 1 => return Ok((Some(v as i64), false)),
                    _ => {}
                },
            }
        }
        Ok((dim, true))
    }

    fn frame_connected(&self, w: &VertexSet) -> bool {
        let first = match w.iter().next() {
            Some(v) => v,
            None => return false,
        };
        let mut seen = VertexSet::empty(w.capacity());
        seen.insert(first);
        let mut stack = vec![first];
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for v in self.adj[u as usize].intersection(w).iter() {
                if !seen.contains(v) {
                    seen.insert(v);
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == w.len()
    }
}

/// Decides contractibility per the recursive definition: a graph is
/// contractible when it is a single vertex, or some vertex has both its unit
/// sphere and its removal contractible. `No` is certified by exhausting
/// every vertex at every level (with the Euler-characteristic prune).
pub fn is_contractible(g: &Graph, budget: &Budget) -> RecognitionResult {
    let mut r = Recognizer::new(g, budget);
    match r.contractible(&VertexSet::full(g.vertex_count())) {
        Ok(true) => RecognitionResult::yes(None),
        Ok(false) => RecognitionResult::no(None),
        Err(Exhausted) => RecognitionResult::unknown(),
    }
}

/// Recognizes d-spheres: the empty graph is the (-1)-sphere, two isolated
/// vertices the 0-sphere, a connected 2-regular graph on at least four
/// vertices a 1-sphere, and for d >= 2 every unit sphere must be a
/// (d-1)-sphere with some vertex deletion contractible.
pub fn sphere_dimension(g: &Graph, budget: &Budget) -> RecognitionResult {
    let mut r = Recognizer::new(g, budget);
    match r.sphere_dim(&VertexSet::full(g.vertex_count())) {
        Ok(Some(d)) => RecognitionResult::yes(Some(d)),
        Ok(None) => RecognitionResult::no(None),
        Err(Exhausted) => RecognitionResult::unknown(),
    }
}

/// Recognizes d-manifolds: a nonempty graph in which every unit sphere is a
/// (d-1)-sphere. On failure the witness is the first vertex whose unit
/// sphere is not a sphere of the common dimension.
pub fn manifold_dimension(g: &Graph, budget: &Budget) -> RecognitionResult {
    if g.vertex_count() == 0 {
        return RecognitionResult::no(None);
    }
    let mut r = Recognizer::new(g, budget);
    match r.manifold_dim_inner(&VertexSet::full(g.vertex_count())) {
        Ok((dim, true)) => RecognitionResult::yes(dim),
        Ok((witness, false)) => RecognitionResult::no(witness.map(|v| v as u32)),
        Err(Exhausted) => RecognitionResult::unknown(),
    }
}

/// The polynomial `f(t) = 1 + sum_k f_k t^(k+1)` with exact integer
/// coefficients, stored lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FPolynomial(Vec<i64>);

impl FPolynomial {
    pub fn from_f_vector(f: &FVector) -> Self {
        let mut coeffs = Vec::with_capacity(f.counts().len() + 1);
        coeffs.push(1);
        coeffs.extend(f.counts().iter().map(|&c| c as i64));
        FPolynomial(coeffs)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    /// Coefficients of d/dt f(t).
    pub fn derivative(&self) -> Vec<i64> {
        self.0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as i64)
            .collect()
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * t + c)
    }

    pub fn mul(&self, other: &FPolynomial) -> FPolynomial {
        let mut out = vec![0i64; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        FPolynomial(out)
    }
}

impl fmt::Display for FPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}t")?,
                _ => write!(f, "{c}t^{k}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn f_polynomial(g: &Graph) -> Result<FPolynomial> {
    Ok(FPolynomial::from_f_vector(&g.f_vector()?))
}

/// Coefficient-wise residual of `d/dt f_G(t) = sum_v f_S(v)(t)`. Zero for
/// every graph; exposed as a vector so tests can assert it.
pub fn gauss_bonnet_general_check(g: &Graph) -> Result<Vec<i64>> {
    let mut lhs = f_polynomial(g)?.derivative();
    for v in g.vertices() {
        let sphere_poly = f_polynomial(&g.unit_sphere(v)?)?;
        let coeffs = sphere_poly.coefficients();
        if lhs.len() < coeffs.len() {
            lhs.resize(coeffs.len(), 0);
        }
        for (k, &c) in coeffs.iter().enumerate() {
            lhs[k] -= c;
        }
    }
    Ok(lhs)
}

/// Local curvature `K(v) = sum_k (-1)^k f_(k-1)(S(v)) / (k+1)` with
/// `f_(-1) = 1`, i.e. `1 - f_0/2 + f_1/3 - f_2/4 + ...` over the full
/// f-vector of the unit sphere.
pub fn curvature(g: &Graph, v: u32) -> Result<ExactRatio> {
    let sphere = g.unit_sphere(v)?;
    let f = sphere.f_vector()?;
    let mut total = ExactRatio::from_int(1);
    for (k, &c) in f.counts().iter().enumerate() {
        let sign = if k % 2 == 0 { -1 } else { 1 };
        total += ExactRatio::new(sign * c as i64, k as i64 + 2);
    }
    Ok(total)
}

/// Sum of the local curvatures; equals the Euler characteristic for every
/// graph, since both redistribute the same simplex weights.
pub fn gauss_bonnet_sum(g: &Graph) -> Result<ExactRatio> {
    let mut total = ExactRatio::zero();
    for v in g.vertices() {
        total += curvature(g, v)?;
    }
    Ok(total)
}

/// Residuals of the Dehn-Sommerville identities for a d-manifold:
/// d=1: 2E = 2V; d=2: 3F = 2E; d=3: 4C = 2F and X = 0;
/// d=4: 5H = 2C and -22E + 33F - 40C + 45H = 0.
pub fn dehn_sommerville_check(g: &Graph, d: usize) -> Result<Vec<ExactRatio>> {
    let f = g.f_vector()?;
    if f.dimension() != Some(d) {
        return Err(Error::invalid(format!(
            "graph has f-vector dimension {:?}, not {d}",
            f.dimension()
        )));
    }
    let x = f.euler_characteristic();
    let c = |k: usize| f.get(k) as i64;
    let residuals = match d {
        1 => vec![2 * c(1) - 2 * c(0)],
        2 => vec![3 * c(2) - 2 * c(1)],
        3 => vec![4 * c(3) - 2 * c(2), x],
        4 => vec![
            5 * c(4) - 2 * c(3),
            -22 * c(1) + 33 * c(2) - 40 * c(3) + 45 * c(4),
        ],
        _ => {
            return Err(Error::invalid(format!(
                "no Dehn-Sommerville identities implemented for dimension {d}"
            )))
        }
    };
    Ok(residuals.into_iter().map(ExactRatio::from_int).collect())
}

/// Nash-Williams value of a surface from its Euler characteristic and face
/// count: `3F / (2X + F - 2)`. Equals `E/(V-1)` under the surface f-vector
/// relations `(V, E, F) = (X + F/2, 3F/2, F)`.
pub fn surface_phi(x: i64, f: i64) -> Result<ExactRatio> {
    if f < 4 {
        return Err(Error::invalid(format!("face count {f} below 4")));
    }
    let den = 2 * x + f - 2;
    if den <= 0 {
        return Err(Error::invalid(format!(
            "nonpositive denominator 2*{x} + {f} - 2"
        )));
    }
    Ok(ExactRatio::new(3 * f, den))
}

/// A stricter face bound for Euler characteristic 0 that appears in one
/// derivation. Kept for reference only; `min_area_bound` enforces the weaker
/// value, which every generated grid clears either way.
pub const MIN_AREA_X0_ALTERNATE: i64 = 28;

/// Stated lower bound on the face count of a connected surface with Euler
/// characteristic `x`: 8 for x=2, 14 for x=1, 20 for x=0, and 12-14x below.
/// A corpus validator only; tightness is claimed just for x=2.
pub fn min_area_bound(x: i64) -> Result<i64> {
    match x {
        2 => Ok(8),
        1 => Ok(14),
        0 => Ok(20),
        _ if x < 0 => Ok(12 - 14 * x),
        _ => Err(Error::invalid(format!(
            "no connected surface has Euler characteristic {x}"
        ))),
    }
}

/// Checks `V = tr(L^0)`, `E = tr(L)/2`, `F = tr(L)/3` for the Kirchhoff
/// Laplacian of a certified surface; returns the three residuals.
pub fn laplacian_trace_check(g: &Graph, budget: &Budget) -> Result<[ExactRatio; 3]> {
    let rec = manifold_dimension(g, budget);
    if rec.dimension != Some(2) {
        return Err(Error::invalid("not a certified 2-manifold"));
    }
    let f = g.f_vector()?;
    let trace_l0 = g.vertex_count() as i64;
    let trace_l: i64 = g.vertices().map(|v| g.degree(v) as i64).sum();
    let v_res = ExactRatio::from_int(f.get(0) as i64 - trace_l0);
    let e_res = ExactRatio::from_int(f.get(1) as i64) - ExactRatio::new(trace_l, 2);
    let f_res = ExactRatio::from_int(f.get(2) as i64) - ExactRatio::new(trace_l, 3);
    Ok([v_res, e_res, f_res])
}

/// Everything the recognition and identity pipeline knows about one graph.
#[derive(Debug, Clone, Serialize)]
pub struct ManifoldReport {
    pub dimension: Option<i64>,
    pub dimension_verdict: Verdict,
    pub witness: Option<u32>,
    pub f_vector: FVector,
    pub euler_characteristic: i64,
    pub dehn_sommerville_residuals: Vec<ExactRatio>,
    pub curvature_sum: ExactRatio,
    pub phi: Option<ExactRatio>,
}

pub fn manifold_report(g: &Graph, budget: &Budget) -> Result<ManifoldReport> {
    let recognition = manifold_dimension(g, budget);
    let f = g.f_vector()?;
    let x = f.euler_characteristic();
    let dehn_sommerville_residuals = match recognition.dimension {
        Some(d) if (1..=4).contains(&(d as usize)) => dehn_sommerville_check(g, d as usize)?,
        _ => Vec::new(),
    };
    let curvature_sum = gauss_bonnet_sum(g)?;
    let phi = if g.vertex_count() >= 2 {
        Some(crate::arboricity::phi(g)?)
    } else {
        None
    };
    Ok(ManifoldReport {
        dimension: recognition.dimension,
        dimension_verdict: recognition.verdict,
        witness: recognition.witness,
        f_vector: f,
        euler_characteristic: x,
        dehn_sommerville_residuals,
        curvature_sum,
        phi,
    })
}
