//! Declarative verification corpus: named graphs with expected invariants,
//! plus seeded random sweeps. The corpus is data so the verification run is
//! reproducible and CI-friendly.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use arboretum_core::arboricity::{
    arboricity, brute_force_arboricity, max_density, phi, phi_maximality_check, ConjectureMode,
    ConjectureVerdict,
};
use arboretum_core::generators;
use arboretum_core::graph::Graph;
use arboretum_core::ratio::ExactRatio;
use arboretum_core::rng::{erdos_renyi, SplitMix64};
use arboretum_core::topology::{
    dehn_sommerville_check, gauss_bonnet_general_check, gauss_bonnet_sum, is_contractible,
    laplacian_trace_check, manifold_dimension, min_area_bound, sphere_dimension, Budget, Verdict,
};
use arboretum_core::transforms::{
    barycentric_refinement, inflate_arboricity, operator_check, phi_refinement_trend,
};
use arboretum_core::whitney::{is_maximal_planar, is_planar, whitney_classify};
use arboretum_core::{Error, Result};

/// Deterministic recipe for one corpus graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum GeneratorSpec {
    Cycle { n: usize },
    Complete { n: usize },
    Edgeless { n: usize },
    CrossPolytope { d: usize },
    Icosahedron,
    Torus { m: usize, n: usize },
    KleinBottle { m: usize, n: usize },
    ProjectivePlane,
    ThreeTorus { n: usize },
    Join { left: Box<GeneratorSpec>, right: Box<GeneratorSpec> },
    Refine { base: Box<GeneratorSpec>, times: usize },
    Edges { n: usize, edges: Vec<(u32, u32)> },
    Complex { facets: Vec<Vec<u32>> },
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Graph> {
        match self {
            GeneratorSpec::Cycle { n } => generators::cycle(*n),
            GeneratorSpec::Complete { n } => generators::complete(*n),
            GeneratorSpec::Edgeless { n } => Ok(Graph::new(*n)),
            GeneratorSpec::CrossPolytope { d } => Ok(generators::cross_polytope(*d)),
            GeneratorSpec::Icosahedron => Ok(generators::icosahedron()),
            GeneratorSpec::Torus { m, n } => generators::torus_grid(*m, *n),
            GeneratorSpec::KleinBottle { m, n } => generators::klein_bottle_grid(*m, *n),
            GeneratorSpec::ProjectivePlane => Ok(generators::projective_plane()),
            GeneratorSpec::ThreeTorus { n } => generators::three_torus(*n),
            GeneratorSpec::Join { left, right } => {
                Ok(generators::zykov_join(&left.build()?, &right.build()?))
            }
            GeneratorSpec::Refine { base, times } => {
                let mut g = base.build()?;
                for _ in 0..*times {
                    g = barycentric_refinement(&g)?;
                }
                Ok(g)
            }
            GeneratorSpec::Edges { n, edges } => Graph::from_edges(*n, edges),
            GeneratorSpec::Complex { facets } => {
                let complex = generators::SimplicialComplex::new(facets.clone())?;
                generators::barycentric_of_complex(&complex)
            }
        }
    }
}

/// Where an expected value comes from: a stated result under verification, a
/// value computed independently ahead of time, or a definitional identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    Theorem,
    Computed,
    Definitional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Trend {
    #[serde(rename = "increase")]
    Increase,
    #[serde(rename = "fixed-3")]
    Fixed3,
    #[serde(rename = "decrease-above-3")]
    DecreaseAbove3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConjectureOutcome {
    Holds,
    Counterexample,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "invariant", rename_all = "kebab-case")]
pub enum Check {
    Dimension { expect: Option<i64>, origin: Origin },
    SphereDimension { expect: Option<i64>, origin: Origin },
    Contractible { expect: bool, origin: Origin },
    Euler { expect: i64, origin: Origin },
    FVector { expect: Vec<u64>, origin: Origin },
    Phi { expect: String, origin: Origin },
    PhiWindow { lo: i64, hi: i64, origin: Origin },
    Arboricity { expect: usize, origin: Origin },
    DensityAbove { threshold: i64, origin: Origin },
    EdgesPerVertex { expect: i64, origin: Origin },
    GaussBonnet { origin: Origin },
    OddCurvatureZero { origin: Origin },
    DehnSommerville { origin: Origin },
    ChamberRatios { origin: Origin },
    OperatorResidual { origin: Origin },
    WhitneyConsistent { origin: Origin },
    MinArea { origin: Origin },
    Planar { expect: bool, origin: Origin },
    MaximalPlanar { expect: bool, origin: Origin },
    RefinementTrend { expect: Trend, origin: Origin },
    LaplacianTraces { origin: Origin },
    ConjectureExhaustive { expect: ConjectureOutcome, origin: Origin },
    ConjectureSampled { budget: u64, expect: ConjectureOutcome, origin: Origin },
    Inflation { target: usize, origin: Origin },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub generator: GeneratorSpec,
    #[serde(default)]
    pub anchors: Vec<String>,
    pub checks: Vec<Check>,
}

/// Seeded random sweeps; seeds derive from the root seed and the iteration
/// index, so reports do not depend on worker count.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Sweep {
    GaussBonnetRandom {
        count: u64,
        max_n: usize,
        #[serde(default)]
        anchors: Vec<String>,
    },
    OperatorRandom {
        count: u64,
        max_n: usize,
        #[serde(default)]
        anchors: Vec<String>,
    },
    OracleAgreement {
        count: u64,
        max_edges: usize,
        #[serde(default)]
        anchors: Vec<String>,
    },
}

impl Sweep {
    fn name(&self) -> &'static str {
        match self {
            Sweep::GaussBonnetRandom { .. } => "sweep-gauss-bonnet-random",
            Sweep::OperatorRandom { .. } => "sweep-operator-random",
            Sweep::OracleAgreement { .. } => "sweep-oracle-agreement",
        }
    }

    fn anchors(&self) -> &[String] {
        match self {
            Sweep::GaussBonnetRandom { anchors, .. } => anchors,
            Sweep::OperatorRandom { anchors, .. } => anchors,
            Sweep::OracleAgreement { anchors, .. } => anchors,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CorpusFile {
    pub entries: Vec<CorpusEntry>,
    #[serde(default)]
    pub sweeps: Vec<Sweep>,
}

impl CorpusFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("corpus: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
    Indeterminate,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub invariant: String,
    pub origin: Origin,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub expected: Value,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub computed: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct EntryReport {
    pub entry: String,
    pub outcome: Outcome,
    pub anchors: Vec<String>,
    pub checks: Vec<CheckReport>,
    pub wall_ms: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct Aggregate {
    pub entries: usize,
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
    pub anchors: std::collections::BTreeMap<String, [usize; 3]>,
}

pub struct VerificationReport {
    pub entries: Vec<EntryReport>,
    pub aggregate: Aggregate,
}

impl VerificationReport {
    /// CI exit-code contract: 0 all pass, 1 any failure, 2 indeterminate
    /// results only.
    pub fn exit_code(&self) -> i32 {
        if self.aggregate.fail > 0 {
            1
        } else if self.aggregate.indeterminate > 0 {
            2
        } else {
            0
        }
    }
}

fn ratio_value(r: &ExactRatio) -> Value {
    json!({ "value": r.to_string() })
}

fn parse_ratio(text: &str) -> Result<ExactRatio> {
    let mut parts = text.splitn(2, '/');
    let num: i64 = parts
        .next()
        .unwrap()
        .trim()
        .parse()
        .map_err(|_| Error::invalid(format!("bad ratio {text}")))?;
    let den: i64 = match parts.next() {
        Some(d) => d
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad ratio {text}")))?,
        None => 1,
    };
    if den == 0 {
        return Err(Error::invalid("zero denominator"));
    }
    Ok(ExactRatio::new(num, den))
}

struct CheckContext<'a> {
    graph: &'a Graph,
    budget: Budget,
    seed: u64,
}

fn outcome_of(ok: bool) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn run_check(check: &Check, ctx: &CheckContext) -> Result<CheckReport> {
    let (invariant, origin, outcome, expected, computed) = match check {
        Check::Dimension { expect, origin } => {
            let rec = manifold_dimension(ctx.graph, &ctx.budget);
            let outcome = if rec.verdict == Verdict::Unknown {
                Outcome::Indeterminate
            } else {
                outcome_of(rec.dimension == *expect)
            };
            ("dimension", *origin, outcome, json!(expect), json!(rec.dimension))
        }
        Check::SphereDimension { expect, origin } => {
            let rec = sphere_dimension(ctx.graph, &ctx.budget);
            let outcome = if rec.verdict == Verdict::Unknown {
                Outcome::Indeterminate
            } else {
                outcome_of(rec.dimension == *expect)
            };
            (
                "sphere-dimension",
                *origin,
                outcome,
                json!(expect),
                json!(rec.dimension),
            )
        }
        Check::Contractible { expect, origin } => {
            let rec = is_contractible(ctx.graph, &ctx.budget);
            let outcome = if rec.verdict == Verdict::Unknown {
                Outcome::Indeterminate
            } else {
                outcome_of(rec.is_yes() == *expect)
            };
            (
                "contractible",
                *origin,
                outcome,
                json!(expect),
                json!(rec.verdict == Verdict::Yes),
            )
        }
        Check::Euler { expect, origin } => {
            let x = ctx.graph.euler_characteristic()?;
            ("euler", *origin, outcome_of(x == *expect), json!(expect), json!(x))
        }
        Check::FVector { expect, origin } => {
            let f = ctx.graph.f_vector()?;
            (
                "f-vector",
                *origin,
                outcome_of(f.counts() == expect.as_slice()),
                json!(expect),
                json!(f.counts()),
            )
        }
        Check::Phi { expect, origin } => {
            let want = parse_ratio(expect)?;
            let got = phi(ctx.graph)?;
            (
                "phi",
                *origin,
                outcome_of(got == want),
                json!(expect),
                ratio_value(&got),
            )
        }
        Check::PhiWindow { lo, hi, origin } => {
            let got = phi(ctx.graph)?;
            let ok = got.cmp_int(*lo) != std::cmp::Ordering::Less
                && got.cmp_int(*hi) == std::cmp::Ordering::Less;
            (
                "phi-window",
                *origin,
                outcome_of(ok),
                json!([lo, hi]),
                ratio_value(&got),
            )
        }
        Check::Arboricity { expect, origin } => {
            let (k, partition) = arboricity(ctx.graph)?;
            let ok = k == *expect && partition.validate(ctx.graph);
            ("arboricity", *origin, outcome_of(ok), json!(expect), json!(k))
        }
        Check::DensityAbove { threshold, origin } => {
            let density = max_density(ctx.graph)?;
            let ok = density.value > ExactRatio::from_int(*threshold);
            (
                "density-above",
                *origin,
                outcome_of(ok),
                json!(threshold),
                ratio_value(&density.value),
            )
        }
        Check::EdgesPerVertex { expect, origin } => {
            let got = ExactRatio::new(
                ctx.graph.edge_count() as i64,
                ctx.graph.vertex_count() as i64,
            );
            (
                "edges-per-vertex",
                *origin,
                outcome_of(got == ExactRatio::from_int(*expect)),
                json!(expect),
                ratio_value(&got),
            )
        }
        Check::GaussBonnet { origin } => {
            let sum = gauss_bonnet_sum(ctx.graph)?;
            let x = ctx.graph.euler_characteristic()?;
            let residual = gauss_bonnet_general_check(ctx.graph)?;
            let ok = sum == ExactRatio::from_int(x) && residual.iter().all(|&r| r == 0);
            (
                "gauss-bonnet",
                *origin,
                outcome_of(ok),
                json!("curvature sum = X and derivative residual 0"),
                json!({ "sum": sum.to_string(), "residual": residual }),
            )
        }
        Check::OddCurvatureZero { origin } => {
            let mut nonzero = Vec::new();
            for v in ctx.graph.vertices() {
                let k = arboretum_core::topology::curvature(ctx.graph, v)?;
                if !k.is_zero() {
                    nonzero.push(format!("K({v}) = {k}"));
                }
            }
            (
                "odd-curvature-zero",
                *origin,
                outcome_of(nonzero.is_empty()),
                json!("every vertex curvature 0"),
                json!(nonzero),
            )
        }
        Check::DehnSommerville { origin } => {
            let rec = manifold_dimension(ctx.graph, &ctx.budget);
            match rec.dimension {
                Some(d) if (1..=4).contains(&d) => {
                    let residuals = dehn_sommerville_check(ctx.graph, d as usize)?;
                    let ok = residuals.iter().all(|r| r.is_zero());
                    (
                        "dehn-sommerville",
                        *origin,
                        outcome_of(ok),
                        json!("all residuals 0"),
                        json!(residuals.iter().map(|r| r.to_string()).collect::<Vec<_>>()),
                    )
                }
                _ => (
                    "dehn-sommerville",
                    *origin,
                    Outcome::Indeterminate,
                    json!("certified dimension in 1..=4"),
                    json!(rec.dimension),
                ),
            }
        }
        Check::ChamberRatios { origin } => {
            let f = ctx.graph.f_vector()?;
            let (v, e, faces, c) = (
                f.get(0) as i64,
                f.get(1) as i64,
                f.get(2) as i64,
                f.get(3) as i64,
            );
            let ok = c == e - v && faces == 2 * e - 2 * v;
            (
                "chamber-ratios",
                *origin,
                outcome_of(ok),
                json!("C = E - V and F = 2E - 2V"),
                json!({ "V": v, "E": e, "F": faces, "C": c }),
            )
        }
        Check::OperatorResidual { origin } => {
            let residual = operator_check(ctx.graph)?;
            (
                "operator-residual",
                *origin,
                outcome_of(residual == [0; 5]),
                json!([0, 0, 0, 0, 0]),
                json!(residual),
            )
        }
        Check::WhitneyConsistent { origin } => {
            let verdict = whitney_classify(ctx.graph, &ctx.budget)?;
            let outcome = match verdict.consistent {
                Some(true) => Outcome::Pass,
                Some(false) => Outcome::Fail,
                None => Outcome::Indeterminate,
            };
            (
                "whitney-consistent",
                *origin,
                outcome,
                json!(true),
                serde_json::to_value(&verdict).expect("verdict serializes"),
            )
        }
        Check::MinArea { origin } => {
            let f = ctx.graph.f_vector()?;
            let faces = f.get(2) as i64;
            let bound = min_area_bound(f.euler_characteristic())?;
            (
                "min-area",
                *origin,
                outcome_of(faces >= bound),
                json!({ "at-least": bound }),
                json!(faces),
            )
        }
        Check::Planar { expect, origin } => {
            let got = is_planar(ctx.graph);
            ("planar", *origin, outcome_of(got == *expect), json!(expect), json!(got))
        }
        Check::MaximalPlanar { expect, origin } => {
            let got = is_maximal_planar(ctx.graph);
            (
                "maximal-planar",
                *origin,
                outcome_of(got == *expect),
                json!(expect),
                json!(got),
            )
        }
        Check::RefinementTrend { expect, origin } => {
            let (before, after) = phi_refinement_trend(ctx.graph, &ctx.budget)?;
            let three = ExactRatio::from_int(3);
            let ok = match expect {
                Trend::Increase => after > before,
                Trend::Fixed3 => before == three && after == three,
                Trend::DecreaseAbove3 => after < before && after > three,
            };
            (
                "refinement-trend",
                *origin,
                outcome_of(ok),
                json!(expect),
                json!({ "before": before.to_string(), "after": after.to_string() }),
            )
        }
        Check::LaplacianTraces { origin } => {
            let residuals = laplacian_trace_check(ctx.graph, &ctx.budget)?;
            let ok = residuals.iter().all(|r| r.is_zero());
            (
                "laplacian-traces",
                *origin,
                outcome_of(ok),
                json!("V = tr L^0, E = tr L / 2, F = tr L / 3"),
                json!(residuals.iter().map(|r| r.to_string()).collect::<Vec<_>>()),
            )
        }
        Check::ConjectureExhaustive { expect, origin } => {
            let report = phi_maximality_check(ctx.graph, ConjectureMode::Exhaustive)?;
            let got = match report.verdict {
                ConjectureVerdict::Holds => ConjectureOutcome::Holds,
                ConjectureVerdict::Counterexample => ConjectureOutcome::Counterexample,
            };
            (
                "conjecture-exhaustive",
                *origin,
                outcome_of(got == *expect),
                json!(expect),
                serde_json::to_value(&report).expect("report serializes"),
            )
        }
        Check::ConjectureSampled { budget, expect, origin } => {
            let report = phi_maximality_check(
                ctx.graph,
                ConjectureMode::Sampled {
                    budget: *budget,
                    seed: ctx.seed,
                },
            )?;
            let got = match report.verdict {
                ConjectureVerdict::Holds => ConjectureOutcome::Holds,
                ConjectureVerdict::Counterexample => ConjectureOutcome::Counterexample,
            };
            (
                "conjecture-sampled",
                *origin,
                outcome_of(got == *expect),
                json!(expect),
                serde_json::to_value(&report).expect("report serializes"),
            )
        }
        Check::Inflation { target, origin } => {
            let report = inflate_arboricity(ctx.graph, *target, 1000, &ctx.budget)?;
            let density = max_density(&report.graph)?;
            let manifold = manifold_dimension(&report.graph, &ctx.budget);
            let ok = density.value > ExactRatio::from_int(*target as i64)
                && manifold.dimension == Some(3);
            (
                "inflation",
                *origin,
                outcome_of(ok),
                json!({ "density-above": target, "dimension": 3 }),
                json!({
                    "density": density.value.to_string(),
                    "steps": report.steps.len(),
                    "vertices": report.graph.vertex_count(),
                    "edges": report.graph.edge_count(),
                }),
            )
        }
    };
    Ok(CheckReport {
        invariant: invariant.to_string(),
        origin,
        outcome,
        expected,
        computed,
    })
}

fn entry_outcome(checks: &[CheckReport]) -> Outcome {
    if checks.iter().any(|c| c.outcome == Outcome::Fail) {
        Outcome::Fail
    } else if checks.iter().any(|c| c.outcome == Outcome::Indeterminate) {
        Outcome::Indeterminate
    } else {
        Outcome::Pass
    }
}

fn run_entry(entry: &CorpusEntry, budget: Budget, seed: u64, index: u64) -> EntryReport {
    let started = std::time::Instant::now();
    let mut checks = Vec::new();
    match entry.generator.build() {
        Ok(graph) => {
            let ctx = CheckContext {
                graph: &graph,
                budget,
                seed: SplitMix64::derive(seed, index).next_u64(),
            };
            for check in &entry.checks {
                match run_check(check, &ctx) {
                    Ok(report) => checks.push(report),
                    Err(err) => checks.push(CheckReport {
                        invariant: "error".to_string(),
                        origin: Origin::Definitional,
                        outcome: if matches!(err, Error::BudgetExhausted(_)) {
                            Outcome::Indeterminate
                        } else {
                            Outcome::Fail
                        },
                        expected: Value::Null,
                        computed: json!(err.to_string()),
                    }),
                }
            }
        }
        Err(err) => checks.push(CheckReport {
            invariant: "generator".to_string(),
            origin: Origin::Definitional,
            outcome: Outcome::Fail,
            expected: Value::Null,
            computed: json!(err.to_string()),
        }),
    }
    EntryReport {
        entry: entry.name.clone(),
        outcome: entry_outcome(&checks),
        anchors: entry.anchors.clone(),
        checks,
        wall_ms: started.elapsed().as_millis(),
    }
}

fn run_sweep(sweep: &Sweep, seed: u64, index: u64) -> EntryReport {
    let started = std::time::Instant::now();
    let mut failures: Vec<String> = Vec::new();
    let mut performed = 0u64;
    match sweep {
        Sweep::GaussBonnetRandom { count, max_n, .. } => {
            for i in 0..*count {
                let mut rng = SplitMix64::derive(seed ^ (index << 32), i);
                let n = 4 + rng.next_below((*max_n as u64).saturating_sub(3).max(1)) as usize;
                let p = 0.2 + 0.6 * (rng.next_below(1000) as f64 / 1000.0);
                let g = erdos_renyi(n, p, rng.next_u64());
                performed += 1;
                let sum = match gauss_bonnet_sum(&g) {
                    Ok(s) => s,
                    Err(e) => {
                        failures.push(format!("iteration {i}: {e}"));
                        continue;
                    }
                };
                let x = g.euler_characteristic().unwrap_or_default();
                let residual = gauss_bonnet_general_check(&g).unwrap_or_default();
                if sum != ExactRatio::from_int(x) || residual.iter().any(|&r| r != 0) {
                    failures.push(format!("iteration {i}: sum {sum}, X {x}, residual {residual:?}"));
                }
            }
        }
        Sweep::OperatorRandom { count, max_n, .. } => {
            let mut i = 0u64;
            while performed < *count {
                let mut rng = SplitMix64::derive(seed ^ (index << 32), i);
                i += 1;
                let n = 4 + rng.next_below((*max_n as u64).saturating_sub(3).max(1)) as usize;
                let g = erdos_renyi(n, 0.45, rng.next_u64());
                match g.f_vector() {
                    Ok(f) if f.counts().len() <= 5 => {}
                    _ => continue,
                }
                performed += 1;
                match operator_check(&g) {
                    Ok(residual) if residual == [0; 5] => {}
                    Ok(residual) => failures.push(format!("iteration {i}: residual {residual:?}")),
                    Err(e) => failures.push(format!("iteration {i}: {e}")),
                }
            }
        }
        Sweep::OracleAgreement { count, max_edges, .. } => {
            let mut i = 0u64;
            while performed < *count {
                let mut rng = SplitMix64::derive(seed ^ (index << 32), i);
                i += 1;
                let n = 4 + rng.next_below(6) as usize;
                let p = 0.2 + 0.6 * (rng.next_below(1000) as f64 / 1000.0);
                let g = erdos_renyi(n, p, rng.next_u64());
                if g.edge_count() > *max_edges {
                    continue;
                }
                performed += 1;
                let (k, partition) = match arboricity(&g) {
                    Ok(r) => r,
                    Err(e) => {
                        failures.push(format!("iteration {i}: {e}"));
                        continue;
                    }
                };
                if !partition.validate(&g) {
                    failures.push(format!("iteration {i}: invalid certificate"));
                }
                match brute_force_arboricity(&g) {
                    Ok(brute) if brute == k => {}
                    Ok(brute) => failures.push(format!("iteration {i}: {k} vs brute {brute}")),
                    Err(e) => failures.push(format!("iteration {i}: {e}")),
                }
                if g.edge_count() > 0 {
                    let ceiling = max_density(&g)
                        .map(|d| d.value.ceil_int().max(1) as usize)
                        .unwrap_or(0);
                    if ceiling != k {
                        failures.push(format!("iteration {i}: {k} vs density ceiling {ceiling}"));
                    }
                }
            }
        }
    }
    let check = CheckReport {
        invariant: sweep.name().to_string(),
        origin: Origin::Definitional,
        outcome: outcome_of(failures.is_empty()),
        expected: json!({ "iterations": performed, "failures": 0 }),
        computed: json!({ "iterations": performed, "failures": failures }),
    };
    EntryReport {
        entry: sweep.name().to_string(),
        outcome: check.outcome,
        anchors: sweep.anchors().to_vec(),
        checks: vec![check],
        wall_ms: started.elapsed().as_millis(),
    }
}

/// Runs every entry and sweep in a work pool. Reports come back in corpus
/// order regardless of the worker count, and per-entry seeds derive from
/// `(seed, index)`, so the output is reproducible modulo timing fields.
pub fn run_corpus(corpus: &CorpusFile, budget: Budget, seed: u64, jobs: usize) -> VerificationReport {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let entries: Vec<EntryReport> = pool.install(|| {
        use rayon::prelude::*;
        let named = corpus
            .entries
            .par_iter()
            .enumerate()
            .map(|(i, e)| run_entry(e, budget, seed, i as u64));
        let sweeps = corpus
            .sweeps
            .par_iter()
            .enumerate()
            .map(|(i, s)| run_sweep(s, seed, i as u64));
        named.chain(sweeps).collect()
    });
    let mut aggregate = Aggregate {
        entries: entries.len(),
        pass: 0,
        fail: 0,
        indeterminate: 0,
        anchors: Default::default(),
    };
    for report in &entries {
        let slot = match report.outcome {
            Outcome::Pass => {
                aggregate.pass += 1;
                0
            }
            Outcome::Fail => {
                aggregate.fail += 1;
                1
            }
            Outcome::Indeterminate => {
                aggregate.indeterminate += 1;
                2
            }
        };
        for anchor in &report.anchors {
            aggregate.anchors.entry(anchor.clone()).or_insert([0; 3])[slot] += 1;
        }
    }
    VerificationReport {
        entries,
        aggregate,
    }
}
