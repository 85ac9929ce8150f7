//! The `tritact` command-line tool: build, check, validate and render
//! touching-triangle layouts.
//!
//! Exit codes: 0 success/pass, 1 semantic failure (a check or validation
//! that ran and said no, or an internal oracle failure), 2 graph outside
//! the outerplanar builder's domain, 3 a grid restriction that cannot
//! break an unwanted contact, 64 usage or parse errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use tritact::formats::{
    self, condition_token, necessity_verdict_json, to_canonical_string, validation_json, GridKind,
    GridSpec,
};
use tritact::render::{render_svg, RenderOptions};
use tritact_core::contact::{contact_graph, validate, Layout};
use tritact_core::graph::Graph;
use tritact_core::grid::{
    build_hex_grid, build_square_grid, hex_grid_graph, restrict_to_subgraph, square_grid_graph,
    RestrictError,
};
use tritact_core::necessary::check_necessary;
use tritact_core::outerplanar::{build_outerplanar, BuildError};
use tritact_core::triangulation::{
    check_conditions, construct_triangulation, enumerate_embeddings, ConditionName,
    ConstructOutcome, TriangulationError,
};

#[derive(Parser)]
#[command(
    name = "tritact",
    version,
    about = "Build, check, validate and render touching-triangle layouts",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a layout file from a graph or a grid description.
    Build {
        #[command(subcommand)]
        target: BuildTarget,
    },
    /// Check a graph against necessary bounds or full constructibility.
    Check(CheckArgs),
    /// Diff a layout's contact structure against a graph.
    Validate(ValidateArgs),
    /// Render a layout file as SVG.
    Render(RenderArgs),
}

#[derive(Subcommand)]
enum BuildTarget {
    /// Lay out a connected outerplanar graph.
    Outerplanar(InOut),
    /// Lay out a square or hexagonal grid graph, optionally restricted.
    Grid(InOut),
}

#[derive(Args)]
struct InOut {
    /// Input JSON file.
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
    /// Output layout JSON file.
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

#[derive(Args)]
struct CheckArgs {
    /// Which check to run.
    #[arg(long, value_enum)]
    mode: CheckMode,
    /// Input graph JSON file.
    #[arg(short = 'i', long = "input")]
    input: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckMode {
    /// Vertex-pair common-neighborhood bounds.
    Necessary,
    /// Full constructibility as a filled triangulation layout.
    Triangulation,
}

#[derive(Args)]
struct ValidateArgs {
    /// Layout JSON file.
    #[arg(short = 'l', long = "layout")]
    layout: PathBuf,
    /// Graph JSON file.
    #[arg(short = 'g', long = "graph")]
    graph: PathBuf,
}

#[derive(Args)]
struct RenderArgs {
    /// Layout JSON file.
    #[arg(short = 'l', long = "layout")]
    layout: PathBuf,
    /// Output SVG file.
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
    /// Draw vertex ids at triangle centroids.
    #[arg(long)]
    labels: bool,
    /// Viewport width in pixels.
    #[arg(long, default_value_t = 800, value_parser = clap::value_parser!(u32).range(1..))]
    width: u32,
    /// Viewport height in pixels.
    #[arg(long, default_value_t = 600, value_parser = clap::value_parser!(u32).range(1..))]
    height: u32,
    /// Outline stroke width in pixels.
    #[arg(long, default_value_t = 1.5)]
    stroke_width: f64,
    /// Fill palette seed.
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

/// A command that did not succeed, with its exit code.
enum Failure {
    /// Bad invocation, unreadable file or malformed document (exit 64).
    Usage(String),
    /// The outerplanar builder cannot handle this graph (exit 2).
    Domain(String),
    /// A grid restriction could not break an unwanted contact (exit 3).
    Trim(String),
    /// A check, validation or internal oracle said no (exit 1). The
    /// message may be empty when a verdict document was already printed.
    Semantic(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Domain(_) => 2,
            Failure::Trim(_) => 3,
            Failure::Semantic(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) | Failure::Trim(m) | Failure::Semantic(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let explicit_help =
                matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if explicit_help {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(64)
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if !failure.message().is_empty() {
                eprintln!("tritact: {}", failure.message());
            }
            ExitCode::from(failure.code())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Build {
            target: BuildTarget::Outerplanar(io),
        } => cmd_build_outerplanar(&io),
        Cmd::Build {
            target: BuildTarget::Grid(io),
        } => cmd_build_grid(&io),
        Cmd::Check(args) => cmd_check(&args),
        Cmd::Validate(args) => cmd_validate(&args),
        Cmd::Render(args) => cmd_render(&args),
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    formats::parse_graph(&read_file(path)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_layout(path: &Path) -> Result<Layout, Failure> {
    formats::parse_layout(&read_file(path)?)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Oracle-check a layout against its intended graph before writing it; an
/// internal failure prints the exact diff and exits 1.
fn verified_write(path: &Path, layout: &Layout, g: &Graph) -> Result<(), Failure> {
    let report = validate(layout, g);
    if !report.passed() {
        let doc = validation_json(&report, &[]);
        return Err(Failure::Semantic(format!(
            "internal failure: the built layout does not realize the graph; diff:\n{}",
            to_canonical_string(&doc)
        )));
    }
    write_file(path, &formats::layout_to_string(layout))
}

fn cmd_build_outerplanar(io: &InOut) -> Result<(), Failure> {
    let g = load_graph(&io.input)?;
    let layout = build_outerplanar(&g).map_err(|e| match e {
        BuildError::NotOuterplanar => Failure::Domain("graph is not outerplanar".into()),
        BuildError::NotConnected | BuildError::EmptyGraph => Failure::Domain(e.to_string()),
    })?;
    verified_write(&io.output, &layout, &g)
}

fn cmd_build_grid(io: &InOut) -> Result<(), Failure> {
    let text = read_file(&io.input)?;
    let spec: GridSpec = formats::parse_grid_spec(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", io.input.display())))?;
    let (full_graph, full_layout) = match spec.kind {
        GridKind::Square { rows, cols } => {
            if rows < 2 || cols < 2 {
                return Err(Failure::Usage(format!(
                    "degenerate square grid {rows}x{cols}: both dimensions must be at least 2"
                )));
            }
            (square_grid_graph(rows, cols), build_square_grid(rows, cols))
        }
        GridKind::Hex { radius } => {
            if radius < 1 {
                return Err(Failure::Usage(
                    "degenerate hex grid: radius must be at least 1".into(),
                ));
            }
            (hex_grid_graph(radius), build_hex_grid(radius))
        }
    };
    if spec.keep_vertices.is_none() && spec.keep_edges.is_none() {
        return verified_write(&io.output, &full_layout, &full_graph);
    }
    let keep_vertices = spec
        .keep_vertices
        .clone()
        .unwrap_or_else(|| (0..full_graph.n()).collect());
    let keep_edges = match &spec.keep_edges {
        Some(list) => list.clone(),
        None => {
            let kept: std::collections::BTreeSet<usize> = keep_vertices.iter().copied().collect();
            full_graph
                .edges()
                .into_iter()
                .filter(|&(u, v)| kept.contains(&u) && kept.contains(&v))
                .collect()
        }
    };
    let (sub_graph, sub_layout) =
        restrict_to_subgraph(&full_layout, &full_graph, &keep_vertices, &keep_edges).map_err(
            |e| match e {
                RestrictError::TrimConflict { .. } => Failure::Trim(e.to_string()),
                RestrictError::BadVertex { .. } | RestrictError::BadEdge { .. } => {
                    Failure::Usage(format!("{}: {e}", io.input.display()))
                }
            },
        )?;
    verified_write(&io.output, &sub_layout, &sub_graph)
}

fn cmd_check(args: &CheckArgs) -> Result<(), Failure> {
    let g = load_graph(&args.input)?;
    match args.mode {
        CheckMode::Necessary => {
            let verdict = check_necessary(&g);
            print!("{}", to_canonical_string(&necessity_verdict_json(&verdict)));
            if verdict.passed() {
                Ok(())
            } else {
                Err(Failure::Semantic(String::new()))
            }
        }
        CheckMode::Triangulation => {
            let (doc, pass) = triangulation_verdict(&g);
            print!("{}", to_canonical_string(&doc));
            if pass {
                Ok(())
            } else {
                Err(Failure::Semantic(String::new()))
            }
        }
    }
}

/// The verdict document for the constructibility check: per-condition
/// booleans of the accepted embedding on a pass, failure statistics over
/// the candidate embeddings otherwise.
fn triangulation_verdict(g: &Graph) -> (Value, bool) {
    let mut m = Map::new();
    match construct_triangulation(g) {
        Ok(ConstructOutcome::Layout(layout)) => {
            m.insert("pass".into(), json!(true));
            m.insert("constructible".into(), json!(true));
            // Recover the accepted embedding's verdict: the constructor
            // takes the first passing candidate in enumeration order.
            if let Ok(enumeration) = enumerate_embeddings(g) {
                for emb in &enumeration.embeddings {
                    if let Ok(verdict) = check_conditions(g, emb) {
                        if verdict.passed() {
                            let mut conds = Map::new();
                            conds.insert("degrees".into(), json!(verdict.degrees_ok()));
                            conds.insert(
                                "internal-degrees".into(),
                                json!(verdict.internal_degrees_ok()),
                            );
                            conds.insert(
                                "boundary-degree-2".into(),
                                json!(verdict.boundary_degree2_ok()),
                            );
                            conds.insert("degree-2-spread".into(), json!(verdict.spread_ok()));
                            conds.insert("chain-removal".into(), json!(verdict.chain_removal_ok()));
                            m.insert("conditions".into(), Value::Object(conds));
                            m.insert(
                                "boundary_degree2_vertices".into(),
                                json!(verdict.boundary_degree2),
                            );
                            break;
                        }
                    }
                }
            }
            m.insert("triangles".into(), json!(layout.len()));
            (Value::Object(m), true)
        }
        Ok(ConstructOutcome::NotRepresentable(nr)) => {
            m.insert("pass".into(), json!(false));
            m.insert("constructible".into(), json!(false));
            m.insert("categorical".into(), json!(nr.categorical));
            m.insert("candidates_tried".into(), json!(nr.candidates_tried));
            if let Some(name) = nr.short_circuit {
                m.insert("short_circuit".into(), json!(condition_token(name)));
                match name {
                    ConditionName::Degrees => {
                        if let Some(v) = (0..g.n()).find(|&v| g.degree(v) < 2 || g.degree(v) > 3) {
                            m.insert(
                                "witness".into(),
                                json!({"vertex": v, "degree": g.degree(v)}),
                            );
                        }
                    }
                    ConditionName::BoundaryDegree2 => {
                        let count = (0..g.n()).filter(|&v| g.degree(v) == 2).count();
                        m.insert("witness".into(), json!({"degree2_vertices": count}));
                    }
                    _ => {}
                }
            }
            let mut counts = Map::new();
            for name in ConditionName::ALL {
                counts.insert(
                    condition_token(name).into(),
                    json!(nr.failure_counts[name.index()]),
                );
            }
            m.insert("failure_counts".into(), Value::Object(counts));
            let samples: Vec<Value> = nr
                .sample_failures
                .iter()
                .map(|s| json!({"first_failed": condition_token(s.first_failed)}))
                .collect();
            m.insert("sample_failures".into(), Value::Array(samples));
            (Value::Object(m), false)
        }
        Err(e) => {
            let token = match e {
                TriangulationError::NotBiconnected => "not-biconnected",
                TriangulationError::NotPlanar => "not-planar",
                TriangulationError::DegreeTooHigh { vertex, degree } => {
                    m.insert(
                        "witness".into(),
                        json!({"vertex": vertex, "degree": degree}),
                    );
                    "degree-too-high"
                }
                _ => "internal",
            };
            m.insert("pass".into(), json!(false));
            m.insert("constructible".into(), json!(false));
            m.insert("error".into(), json!(token));
            m.insert("message".into(), json!(e.to_string()));
            (Value::Object(m), false)
        }
    }
}

fn cmd_validate(args: &ValidateArgs) -> Result<(), Failure> {
    let layout = load_layout(&args.layout)?;
    let g = load_graph(&args.graph)?;
    let report = validate(&layout, &g);
    let contacts = contact_graph(&layout);
    let warnings: Vec<(usize, usize)> = contacts
        .point_contacts
        .iter()
        .map(|&(u, v, _)| (u, v))
        .collect();
    print!(
        "{}",
        to_canonical_string(&validation_json(&report, &warnings))
    );
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Semantic(String::new()))
    }
}

fn cmd_render(args: &RenderArgs) -> Result<(), Failure> {
    let layout = load_layout(&args.layout)?;
    let opts = RenderOptions {
        width: args.width,
        height: args.height,
        stroke_width: args.stroke_width,
        labels: args.labels,
        palette_seed: args.seed,
    };
    let svg = render_svg(&layout, &opts).map_err(|e| Failure::Usage(e.to_string()))?;
    write_file(&args.output, &svg)
}
