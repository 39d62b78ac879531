//! End-to-end tests against the built binary: every subcommand, the format
//! flags, the verify exit-code contract, and report determinism across
//! worker counts.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_arboretum"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).to_string()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("arboretum-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn generate_cross_polytope_json() {
    let out = run(&["generate", "cross-polytope", "--d", "3"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(parsed["n"], 8);
    assert_eq!(parsed["edges"].as_array().unwrap().len(), 24);
}

#[test]
fn generate_torus_graph6_roundtrip() {
    let out = run(&["--format", "graph6", "generate", "torus", "--m", "4", "--n", "4"]);
    assert!(out.status.success());
    let line = stdout_of(&out);
    let g = arboretum_core::io::from_graph6(&line).unwrap();
    assert_eq!(g.vertex_count(), 16);
    assert_eq!(g.edge_count(), 48);
}

#[test]
fn generate_rejects_bad_parameters() {
    let out = run(&["generate", "torus", "--m", "3", "--n", "4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn invariants_of_generated_octahedron() {
    let octa = run(&["generate", "cross-polytope", "--d", "2"]);
    let path = temp_file("octa.json", &stdout_of(&octa));
    let out = run(&["invariants", path.to_str().unwrap()]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(parsed["dimension"], 2);
    assert_eq!(parsed["euler_characteristic"], 2);
    assert_eq!(parsed["f_vector"], serde_json::json!([6, 12, 8]));
    assert_eq!(parsed["phi"]["num"], 12);
    assert_eq!(parsed["phi"]["den"], 5);
}

#[test]
fn invariants_of_non_manifold_reports_witness() {
    let k4 = run(&["generate", "complete", "--n", "4"]);
    let path = temp_file("k4.json", &stdout_of(&k4));
    let out = run(&["invariants", path.to_str().unwrap()]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(parsed["dimension"], serde_json::Value::Null);
    assert_eq!(parsed["dimension_verdict"], "no");
    assert!(parsed["witness"].is_number());
}

#[test]
fn arboricity_with_oracle_cross_check() {
    let octa = run(&["generate", "cross-polytope", "--d", "2"]);
    let path = temp_file("octa-arb.json", &stdout_of(&octa));
    let out = run(&["arboricity", path.to_str().unwrap(), "--oracle"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(parsed["arboricity"], 3);
    assert_eq!(parsed["oracle"], 3);
    assert_eq!(parsed["oracle_agrees"], true);
    assert_eq!(parsed["certificate_valid"], true);
    assert_eq!(parsed["density"]["num"], 12);
    assert_eq!(parsed["partition"]["k"], 3);
}

#[test]
fn arboricity_density_only() {
    let proj = run(&["generate", "projective-plane"]);
    let path = temp_file("proj.json", &stdout_of(&proj));
    let out = run(&["arboricity", path.to_str().unwrap(), "--density-only"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(parsed["density"]["num"], 3);
    assert_eq!(parsed["density"]["den"], 1);
}

#[test]
fn refine_matches_operator_counts() {
    let octa = run(&["generate", "cross-polytope", "--d", "2"]);
    let path = temp_file("octa-refine.json", &stdout_of(&octa));
    let out = run(&["refine", path.to_str().unwrap()]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(parsed["n"], 26);
    assert_eq!(parsed["edges"].as_array().unwrap().len(), 72);
}

#[test]
fn inflate_three_sphere() {
    let s3 = {
        let c4 = arboretum_core::generators::cycle(4).unwrap();
        arboretum_core::generators::zykov_join(&c4, &c4)
    };
    let path = temp_file("s3.json", &arboretum_core::io::to_json(&s3));
    let out = run(&["inflate", path.to_str().unwrap(), "--target", "5"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    let inflated = arboretum_core::io::from_json(&stdout_of(&out)).unwrap();
    let density = arboretum_core::arboricity::max_density(&inflated).unwrap();
    assert!(density.value > arboretum_core::ExactRatio::from_int(5));
    assert!(parsed["n"].as_u64().unwrap() > 8);
}

#[test]
fn whitney_verdict_for_icosahedron() {
    let ico = run(&["generate", "icosahedron"]);
    let path = temp_file("ico.json", &stdout_of(&ico));
    let out = run(&["whitney", path.to_str().unwrap()]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(parsed["classification"], "TwoSphere");
    assert_eq!(parsed["consistent"], true);
}

#[test]
fn conjecture_exhaustive_counterexample() {
    let path = temp_file("k2k1.json", r#"{"n":3,"edges":[[0,1]]}"#);
    let out = run(&["conjecture", path.to_str().unwrap(), "--exhaustive"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(parsed["verdict"], "counterexample");
    assert_eq!(parsed["best_sub_witness"], serde_json::json!([0, 1]));
}

#[test]
fn conjecture_sampled_is_seed_deterministic() {
    let torus = run(&["generate", "torus", "--m", "4", "--n", "4"]);
    let path = temp_file("torus.json", &stdout_of(&torus));
    let a = run(&["--seed", "7", "conjecture", path.to_str().unwrap(), "--samples", "200"]);
    let b = run(&["--seed", "7", "conjecture", path.to_str().unwrap(), "--samples", "200"]);
    assert_eq!(stdout_of(&a), stdout_of(&b));
}

#[test]
fn from_complex_generates_the_projective_plane() {
    let facets = temp_file(
        "hemi.json",
        r#"{"facets":[[0,1,2],[0,2,3],[0,3,4],[0,4,5],[0,1,5],[1,2,4],[2,3,5],[1,3,4],[2,4,5],[1,3,5]]}"#,
    );
    let out = run(&["generate", "from-complex", "--file", facets.to_str().unwrap()]);
    assert!(out.status.success());
    let g = arboretum_core::io::from_json(&stdout_of(&out)).unwrap();
    assert_eq!(g, arboretum_core::generators::projective_plane());
}

#[test]
fn missing_file_exits_three() {
    let out = run(&["invariants", "/nonexistent/graph.json"]);
    assert_eq!(out.status.code(), Some(3));
}

fn small_corpus(expect_arb: u32) -> String {
    format!(
        r#"{{
  "entries": [
    {{
      "name": "octahedron",
      "generator": {{ "family": "cross-polytope", "d": 2 }},
      "anchors": ["surface-arboricity"],
      "checks": [
        {{ "invariant": "dimension", "expect": 2, "origin": "theorem" }},
        {{ "invariant": "arboricity", "expect": {expect_arb}, "origin": "theorem" }}
      ]
    }},
    {{
      "name": "torus",
      "generator": {{ "family": "torus", "m": 4, "n": 4 }},
      "anchors": ["surface-arboricity"],
      "checks": [
        {{ "invariant": "arboricity", "expect": 4, "origin": "theorem" }},
        {{ "invariant": "conjecture-sampled", "budget": 100, "expect": "holds", "origin": "theorem" }}
      ]
    }}
  ],
  "sweeps": [
    {{ "kind": "oracle-agreement", "count": 20, "max_edges": 16, "anchors": ["nash-williams"] }}
  ]
}}"#
    )
}

fn strip_wall_ms(report: &str) -> String {
    report
        .lines()
        .map(|line| {
            let mut v: serde_json::Value = serde_json::from_str(line).unwrap();
            if let Some(obj) = v.as_object_mut() {
                obj.remove("wall_ms");
            }
            serde_json::to_string(&v).unwrap()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[test]
fn verify_passes_and_is_deterministic_across_jobs() {
    let path = temp_file("corpus-ok.json", &small_corpus(3));
    let one = run(&["--seed", "11", "--jobs", "1", "verify", "--corpus", path.to_str().unwrap()]);
    let eight = run(&["--seed", "11", "--jobs", "8", "verify", "--corpus", path.to_str().unwrap()]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(eight.status.code(), Some(0));
    assert_eq!(
        strip_wall_ms(&stdout_of(&one)),
        strip_wall_ms(&stdout_of(&eight))
    );
}

#[test]
fn verify_flags_a_wrong_expected_value() {
    let path = temp_file("corpus-bad.json", &small_corpus(2));
    let out = run(&["verify", "--corpus", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
    assert_eq!(first["entry"], "octahedron");
    assert_eq!(first["outcome"], "fail");
}

#[test]
fn verify_reports_indeterminate_on_tiny_budget() {
    let corpus = r#"{
  "entries": [
    {
      "name": "icosahedron",
      "generator": { "family": "icosahedron" },
      "checks": [
        { "invariant": "sphere-dimension", "expect": 2, "origin": "theorem" }
      ]
    }
  ]
}"#;
    let path = temp_file("corpus-budget.json", corpus);
    let out = run(&["--budget", "3", "verify", "--corpus", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_env_variable_is_honored() {
    let corpus = r#"{
  "entries": [
    {
      "name": "icosahedron",
      "generator": { "family": "icosahedron" },
      "checks": [
        { "invariant": "sphere-dimension", "expect": 2, "origin": "theorem" }
      ]
    }
  ]
}"#;
    let path = temp_file("corpus-env.json", corpus);
    let out = bin()
        .env("ARBORETUM_BUDGET", "3")
        .args(["verify", "--corpus", path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bundled_corpus_passes() {
    let out = run(&["--jobs", "4", "verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout_of(&out));
    let text = stdout_of(&out);
    let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert_eq!(last["aggregate"]["fail"], 0);
    assert_eq!(last["aggregate"]["indeterminate"], 0);
}

#[test]
fn join_of_two_circles_is_the_three_sphere() {
    let c4 = run(&["generate", "cycle", "--n", "4"]);
    let path = temp_file("c4-join.json", &stdout_of(&c4));
    let p = path.to_str().unwrap();
    let out = run(&["generate", "join", "--left", p, "--right", p]);
    assert!(out.status.success());
    let g = arboretum_core::io::from_json(&stdout_of(&out)).unwrap();
    assert_eq!(g.f_vector().unwrap().counts(), &[8, 24, 32, 16]);
}
