//! `arboretum`: generate the named graph families, compute manifold reports,
//! exact arboricity and density, refine and inflate, classify, and verify
//! the bundled corpus.

mod corpus;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use arboretum_core::arboricity::{
    arboricity, brute_force_arboricity, max_density, phi_maximality_check, ConjectureMode,
};
use arboretum_core::generators;
use arboretum_core::graph::Graph;
use arboretum_core::io::{from_graph6, from_json, to_graph6, to_json};
use arboretum_core::topology::{manifold_report, Budget};
use arboretum_core::transforms::{barycentric_refinement, inflate_arboricity};
use arboretum_core::whitney::whitney_classify;
use arboretum_core::{Error, Result};

const DEFAULT_CORPUS: &str = include_str!("../corpus/default.json");
const BUDGET_ENV: &str = "ARBORETUM_BUDGET";

#[derive(Parser)]
#[command(
    name = "arboretum",
    version,
    about = "Exact combinatorics of discrete manifolds: recognition, arboricity, curvature, refinement"
)]
struct Cli {
    /// Graph format for file input and output.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Memo budget for the recognition search (overrides ARBORETUM_BUDGET).
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Root seed for sampled searches and sweeps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads for corpus verification.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Graph6,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a graph from the family registry.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Dimension, f-vector, Euler characteristic, curvature and functional
    /// values of a graph.
    Invariants(FileArg),
    /// Exact arboricity with a forest-partition certificate and the density
    /// witness.
    Arboricity {
        #[command(flatten)]
        file: FileArg,
        /// Cross-check against the exhaustive oracle (small graphs only).
        #[arg(long)]
        oracle: bool,
        /// Report only the exact density maximum.
        #[arg(long)]
        density_only: bool,
    },
    /// Barycentric refinement.
    Refine {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Raise the density of a 3-manifold above a target by edge subdivision.
    Inflate {
        #[command(flatten)]
        file: FileArg,
        #[arg(long)]
        target: usize,
        /// Cap on subdivision steps.
        #[arg(long, default_value_t = 10_000)]
        max_steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Planarity, maximal planarity, 4-connectivity and the resulting
    /// classification.
    Whitney(FileArg),
    /// Compare the density functional on the whole graph against induced
    /// subgraphs.
    Conjecture {
        #[command(flatten)]
        file: FileArg,
        /// Enumerate every subset (guarded by vertex count).
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        /// Number of sampled subsets with greedy refinement.
        #[arg(long)]
        samples: Option<u64>,
    },
    /// Run the verification corpus and exit nonzero on failures.
    Verify {
        /// Corpus file; the bundled corpus is used when omitted.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
}

#[derive(Args)]
struct FileArg {
    /// Graph file, or `-` for stdin.
    file: PathBuf,
}

#[derive(Subcommand)]
enum Family {
    /// Cyclic graph on n vertices.
    Cycle {
        #[arg(long)]
        n: usize,
    },
    /// Complete graph on n vertices.
    Complete {
        #[arg(long)]
        n: usize,
    },
    /// Smallest d-sphere: the (d+1)-fold join of the 2-point graph.
    CrossPolytope {
        #[arg(long)]
        d: usize,
    },
    /// The 12-vertex icosahedron.
    Icosahedron,
    /// Flat triangulated torus on an m-by-n grid (m, n >= 4).
    Torus {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Klein bottle grid (m even, m, n >= 4).
    KleinBottle {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
    },
    /// Triangulated projective plane (31 vertices).
    ProjectivePlane,
    /// Freudenthal 3-torus on Z_n^3 (n >= 5).
    ThreeTorus {
        #[arg(long)]
        n: usize,
    },
    /// Barycentric graph of a simplicial complex given as a JSON facet list
    /// `{"facets": [[0,1,2], ...]}`.
    FromComplex {
        #[arg(long)]
        file: PathBuf,
    },
    /// Zykov join of two graph files: disjoint union plus all cross edges.
    Join {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                Error::BudgetExhausted(_) => 2,
                _ => 3,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let budget = Budget::new(resolve_budget(cli.budget)?);
    match cli.command {
        Command::Generate { family } => {
            let graph = build_family(&family, cli.format)?;
            emit_graph(&graph, cli.format, None)?;
            Ok(0)
        }
        Command::Invariants(file) => {
            let graph = read_graph(&file.file, cli.format)?;
            let report = manifold_report(&graph, &budget)?;
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
            Ok(0)
        }
        Command::Arboricity {
            file,
            oracle,
            density_only,
        } => {
            let graph = read_graph(&file.file, cli.format)?;
            let density = max_density(&graph)?;
            if density_only {
                let line = serde_json::json!({
                    "density": density.value,
                    "witness": density.witness.to_vec(),
                });
                println!("{line}");
                return Ok(0);
            }
            let (k, partition) = arboricity(&graph)?;
            let mut line = serde_json::json!({
                "arboricity": k,
                "density": density.value,
                "density_witness": density.witness.to_vec(),
                "partition": partition,
                "certificate_valid": partition.validate(&graph),
            });
            if oracle {
                let brute = brute_force_arboricity(&graph)?;
                line["oracle"] = serde_json::json!(brute);
                line["oracle_agrees"] = serde_json::json!(brute == k);
            }
            println!("{line}");
            Ok(0)
        }
        Command::Refine { file, out } => {
            let graph = read_graph(&file.file, cli.format)?;
            let refined = barycentric_refinement(&graph)?;
            emit_graph(&refined, cli.format, out.as_deref())?;
            Ok(0)
        }
        Command::Inflate {
            file,
            target,
            max_steps,
            out,
        } => {
            let graph = read_graph(&file.file, cli.format)?;
            let report = inflate_arboricity(&graph, target, max_steps, &budget)?;
            eprintln!(
                "inflated in {} steps to density {}",
                report.steps.len(),
                report.final_density
            );
            emit_graph(&report.graph, cli.format, out.as_deref())?;
            Ok(0)
        }
        Command::Whitney(file) => {
            let graph = read_graph(&file.file, cli.format)?;
            let verdict = whitney_classify(&graph, &budget)?;
            println!("{}", serde_json::to_string(&verdict).expect("verdict serializes"));
            Ok(0)
        }
        Command::Conjecture {
            file,
            exhaustive,
            samples,
        } => {
            let graph = read_graph(&file.file, cli.format)?;
            let mode = if exhaustive {
                ConjectureMode::Exhaustive
            } else {
                ConjectureMode::Sampled {
                    budget: samples.unwrap_or(10_000),
                    seed: cli.seed,
                }
            };
            let report = phi_maximality_check(&graph, mode)?;
            println!("{}", serde_json::to_string(&report).expect("report serializes"));
            Ok(0)
        }
        Command::Verify { corpus: path } => {
            let text = match path {
                Some(p) => std::fs::read_to_string(&p)
                    .map_err(|e| Error::invalid(format!("{}: {e}", p.display())))?,
                None => DEFAULT_CORPUS.to_string(),
            };
            let corpus_file = corpus::CorpusFile::parse(&text)?;
            let report = corpus::run_corpus(&corpus_file, budget, cli.seed, cli.jobs);
            for entry in &report.entries {
                println!("{}", serde_json::to_string(entry).expect("entry serializes"));
            }
            println!(
                "{}",
                serde_json::to_string(&serde_json::json!({ "aggregate": report.aggregate }))
                    .expect("aggregate serializes")
            );
            Ok(report.exit_code() as u8)
        }
    }
}

fn resolve_budget(flag: Option<usize>) -> Result<usize> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(text) => text
            .parse()
            .map_err(|_| Error::invalid(format!("{BUDGET_ENV}={text} is not a number"))),
        Err(_) => Ok(Budget::default().memo_limit),
    }
}

fn build_family(family: &Family, format: Format) -> Result<Graph> {
    match family {
        Family::Cycle { n } => generators::cycle(*n),
        Family::Complete { n } => generators::complete(*n),
        Family::CrossPolytope { d } => Ok(generators::cross_polytope(*d)),
        Family::Icosahedron => Ok(generators::icosahedron()),
        Family::Torus { m, n } => generators::torus_grid(*m, *n),
        Family::KleinBottle { m, n } => generators::klein_bottle_grid(*m, *n),
        Family::ProjectivePlane => Ok(generators::projective_plane()),
        Family::ThreeTorus { n } => generators::three_torus(*n),
        Family::FromComplex { file } => {
            #[derive(serde::Deserialize)]
            struct FacetFile {
                facets: Vec<Vec<u32>>,
            }
            let text = std::fs::read_to_string(file)
                .map_err(|e| Error::invalid(format!("{}: {e}", file.display())))?;
            let parsed: FacetFile = serde_json::from_str(&text)
                .map_err(|e| Error::invalid(format!("facet file: {e}")))?;
            let complex = generators::SimplicialComplex::new(parsed.facets)?;
            generators::barycentric_of_complex(&complex)
        }
        Family::Join { left, right } => {
            let a = read_graph(left, format)?;
            let b = read_graph(right, format)?;
            Ok(generators::zykov_join(&a, &b))
        }
    }
}

fn read_graph(path: &Path, format: Format) -> Result<Graph> {
    let text = if path == Path::new("-") {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| Error::invalid(format!("stdin: {e}")))?;
        buffer
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?
    };
    match format {
        Format::Json => from_json(&text),
        Format::Graph6 => from_graph6(&text),
    }
}

fn emit_graph(graph: &Graph, format: Format, out: Option<&Path>) -> Result<()> {
    let text = match format {
        Format::Json => to_json(graph),
        Format::Graph6 => to_graph6(graph)?,
    };
    match out {
        Some(path) => std::fs::write(path, text + "\n")
            .map_err(|e| Error::invalid(format!("{}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}
