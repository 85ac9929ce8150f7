//! JSON file formats for graphs, layouts, embeddings and grid
//! descriptions, plus the verdict documents printed by the CLI.
//!
//! Every writer is canonical: object keys appear in a fixed order, numeric
//! maps are sorted by key, and rational coordinates are emitted reduced
//! (`"3/4"`, `"-1/2"`, integers without a denominator). Re-parsing a
//! document produced here and serializing it again reproduces the input
//! byte for byte.

use core::fmt;
use core::str::FromStr;

use serde_json::{json, Map, Value};
use tritact_core::contact::{Layout, ValidationReport};
use tritact_core::geom::{Point, Rat, Triangle};
use tritact_core::graph::Graph;
use tritact_core::necessary::{NecessityVerdict, ViolationKind};
use tritact_core::triangulation::{ConditionName, PlaneEmbedding};

/// A document failed to parse: not JSON, wrong shape, or invalid values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError(pub String);

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for FormatError {}

fn err<T>(msg: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError(msg.into()))
}

/// Serialize a JSON value the one canonical way used for all output:
/// two-space pretty printing with a trailing newline.
pub fn to_canonical_string(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("in-memory JSON always serializes");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// Rational coordinates
// ---------------------------------------------------------------------------

/// Parse a rational from its canonical string form `"num"` or `"num/den"`.
/// The result is reduced with a positive denominator.
pub fn parse_rat(s: &str) -> Result<Rat, FormatError> {
    Rat::from_str(s).or_else(|_| err(format!("invalid rational {s:?}")))
}

/// The canonical string form of a rational: reduced, positive denominator,
/// `"/1"` omitted.
pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

// ---------------------------------------------------------------------------
// Shape helpers
// ---------------------------------------------------------------------------

fn as_object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>, FormatError> {
    match v.as_object() {
        Some(m) => Ok(m),
        None => err(format!("{what} must be a JSON object")),
    }
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a [Value], FormatError> {
    match v.as_array() {
        Some(a) => Ok(a.as_slice()),
        None => err(format!("{what} must be a JSON array")),
    }
}

fn as_usize(v: &Value, what: &str) -> Result<usize, FormatError> {
    match v.as_u64().and_then(|u| usize::try_from(u).ok()) {
        Some(u) => Ok(u),
        None => err(format!("{what} must be a non-negative integer")),
    }
}

fn field<'a>(m: &'a Map<String, Value>, key: &str, what: &str) -> Result<&'a Value, FormatError> {
    match m.get(key) {
        Some(v) => Ok(v),
        None => err(format!("{what} is missing the {key:?} field")),
    }
}

fn reject_unknown_keys(
    m: &Map<String, Value>,
    allowed: &[&str],
    what: &str,
) -> Result<(), FormatError> {
    for key in m.keys() {
        if !allowed.contains(&key.as_str()) {
            return err(format!("{what} has an unknown field {key:?}"));
        }
    }
    Ok(())
}

fn parse_pair(v: &Value, what: &str) -> Result<(usize, usize), FormatError> {
    let pair = as_array(v, what)?;
    if pair.len() != 2 {
        return err(format!("{what} must be a two-element array"));
    }
    Ok((as_usize(&pair[0], what)?, as_usize(&pair[1], what)?))
}

fn parse_text(text: &str, what: &str) -> Result<Value, FormatError> {
    serde_json::from_str(text).or_else(|e| err(format!("{what} is not valid JSON: {e}")))
}

// ---------------------------------------------------------------------------
// Graph files: {"n": 4, "edges": [[0, 1], [1, 2], ...]}
// ---------------------------------------------------------------------------

/// Parse a graph document `{"n": int, "edges": [[u, v], ...]}`.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let root = parse_text(text, "graph document")?;
    let obj = as_object(&root, "graph document")?;
    reject_unknown_keys(obj, &["n", "edges"], "graph document")?;
    let n = as_usize(field(obj, "n", "graph document")?, "\"n\"")?;
    let mut g = Graph::new(n);
    for (i, e) in as_array(field(obj, "edges", "graph document")?, "\"edges\"")?
        .iter()
        .enumerate()
    {
        let (u, v) = parse_pair(e, &format!("edge #{i}"))?;
        g.add_edge(u, v)
            .or_else(|e| err(format!("edge #{i}: {e}")))?;
    }
    Ok(g)
}

/// The canonical graph document: edges sorted ascending.
pub fn graph_to_json(g: &Graph) -> Value {
    let edges: Vec<Value> = g.edges().into_iter().map(|(u, v)| json!([u, v])).collect();
    let mut m = Map::new();
    m.insert("n".into(), json!(g.n()));
    m.insert("edges".into(), Value::Array(edges));
    Value::Object(m)
}

/// [`graph_to_json`] rendered as text.
pub fn graph_to_string(g: &Graph) -> String {
    to_canonical_string(&graph_to_json(g))
}

// ---------------------------------------------------------------------------
// Layout files: {"triangles": {"0": [["x", "y"] × 3], ...}}
// ---------------------------------------------------------------------------

fn parse_point(v: &Value, what: &str) -> Result<Point, FormatError> {
    let xy = as_array(v, what)?;
    if xy.len() != 2 {
        return err(format!(
            "{what} must be a two-element array of rational strings"
        ));
    }
    let coord = |c: &Value| -> Result<Rat, FormatError> {
        match c.as_str() {
            Some(s) => parse_rat(s),
            None => err(format!("{what} coordinates must be rational strings")),
        }
    };
    Ok(Point::new(coord(&xy[0])?, coord(&xy[1])?))
}

/// Parse a layout document `{"triangles": {"<vertex>": [[x, y] × 3], ...}}`
/// with rational-string coordinates. Degenerate (collinear) triangles are
/// rejected here, at the single entry point.
pub fn parse_layout(text: &str) -> Result<Layout, FormatError> {
    let root = parse_text(text, "layout document")?;
    let obj = as_object(&root, "layout document")?;
    reject_unknown_keys(obj, &["triangles"], "layout document")?;
    let tris = as_object(field(obj, "triangles", "layout document")?, "\"triangles\"")?;
    let mut layout = Layout::new();
    for (key, val) in tris {
        let vertex: usize = key
            .parse()
            .or_else(|_| err(format!("triangle key {key:?} is not a vertex id")))?;
        let what = format!("triangle {vertex}");
        let corners = as_array(val, &what)?;
        if corners.len() != 3 {
            return err(format!("{what} must list exactly three corners"));
        }
        let a = parse_point(&corners[0], &what)?;
        let b = parse_point(&corners[1], &what)?;
        let c = parse_point(&corners[2], &what)?;
        let tri = Triangle::new(a, b, c).or_else(|_| err(format!("{what} is degenerate")))?;
        if layout.triangles.insert(vertex, tri).is_some() {
            return err(format!("duplicate triangle key for vertex {vertex}"));
        }
    }
    Ok(layout)
}

/// The canonical layout document: triangles sorted by vertex id, corners in
/// the stored counterclockwise order, coordinates as reduced rationals.
pub fn layout_to_json(layout: &Layout) -> Value {
    let mut tris = Map::new();
    for (v, tri) in &layout.triangles {
        let corners: Vec<Value> = tri
            .vertices()
            .iter()
            .map(|p| json!([rat_to_string(&p.x), rat_to_string(&p.y)]))
            .collect();
        tris.insert(v.to_string(), Value::Array(corners));
    }
    let mut m = Map::new();
    m.insert("triangles".into(), Value::Object(tris));
    Value::Object(m)
}

/// [`layout_to_json`] rendered as text.
pub fn layout_to_string(layout: &Layout) -> String {
    to_canonical_string(&layout_to_json(layout))
}

// ---------------------------------------------------------------------------
// Embedding files: {"rotation": [[...], ...], "outer_face": [v0, v1, ...]}
// ---------------------------------------------------------------------------

/// Parse an embedding document: per-vertex counterclockwise neighbor lists
/// plus the outer face as a vertex walk.
pub fn parse_embedding(text: &str) -> Result<PlaneEmbedding, FormatError> {
    let root = parse_text(text, "embedding document")?;
    let obj = as_object(&root, "embedding document")?;
    reject_unknown_keys(obj, &["rotation", "outer_face"], "embedding document")?;
    let mut rotation = Vec::new();
    for (v, order) in as_array(
        field(obj, "rotation", "embedding document")?,
        "\"rotation\"",
    )?
    .iter()
    .enumerate()
    {
        let what = format!("rotation of vertex {v}");
        let mut list = Vec::new();
        for w in as_array(order, &what)? {
            list.push(as_usize(w, &what)?);
        }
        rotation.push(list);
    }
    let walk_vals = as_array(
        field(obj, "outer_face", "embedding document")?,
        "\"outer_face\"",
    )?;
    if walk_vals.len() < 2 {
        return err("\"outer_face\" must be a closed walk of at least two vertices");
    }
    let mut walk = Vec::new();
    for v in walk_vals {
        walk.push(as_usize(v, "\"outer_face\"")?);
    }
    let outer_face = (0..walk.len())
        .map(|i| (walk[i], walk[(i + 1) % walk.len()]))
        .collect();
    Ok(PlaneEmbedding {
        rotation,
        outer_face,
    })
}

/// The canonical embedding document; the outer face is written as the walk
/// of tail vertices of its directed edges.
pub fn embedding_to_json(emb: &PlaneEmbedding) -> Value {
    let rotation: Vec<Value> = emb
        .rotation
        .iter()
        .map(|order| Value::Array(order.iter().map(|&w| json!(w)).collect()))
        .collect();
    let walk: Vec<Value> = emb.outer_face.iter().map(|&(u, _)| json!(u)).collect();
    let mut m = Map::new();
    m.insert("rotation".into(), Value::Array(rotation));
    m.insert("outer_face".into(), Value::Array(walk));
    Value::Object(m)
}

/// [`embedding_to_json`] rendered as text.
pub fn embedding_to_string(emb: &PlaneEmbedding) -> String {
    to_canonical_string(&embedding_to_json(emb))
}

// ---------------------------------------------------------------------------
// Grid description files
// ---------------------------------------------------------------------------

/// Which full grid a description starts from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridKind {
    Square { rows: usize, cols: usize },
    Hex { radius: usize },
}

/// A grid layout request: a full square or hexagonal grid, optionally
/// restricted to a subgraph by keeping only some vertices and edges.
///
/// `keep_vertices` defaults to every vertex; `keep_edges` defaults to every
/// grid edge between kept vertices. Listing either field, even empty,
/// triggers the restriction pass.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub kind: GridKind,
    pub keep_vertices: Option<Vec<usize>>,
    pub keep_edges: Option<Vec<(usize, usize)>>,
}

/// Parse a grid description:
/// `{"kind": "square", "rows": r, "cols": c}` or
/// `{"kind": "hex", "radius": r}`, each optionally with
/// `"keep_vertices": [...]` and/or `"keep_edges": [[u, v], ...]`.
pub fn parse_grid_spec(text: &str) -> Result<GridSpec, FormatError> {
    let root = parse_text(text, "grid description")?;
    let obj = as_object(&root, "grid description")?;
    let kind_val = field(obj, "kind", "grid description")?;
    let kind_str = match kind_val.as_str() {
        Some(s) => s,
        None => return err("\"kind\" must be \"square\" or \"hex\""),
    };
    let kind = match kind_str {
        "square" => {
            reject_unknown_keys(
                obj,
                &["kind", "rows", "cols", "keep_vertices", "keep_edges"],
                "square grid description",
            )?;
            GridKind::Square {
                rows: as_usize(field(obj, "rows", "square grid description")?, "\"rows\"")?,
                cols: as_usize(field(obj, "cols", "square grid description")?, "\"cols\"")?,
            }
        }
        "hex" => {
            reject_unknown_keys(
                obj,
                &["kind", "radius", "keep_vertices", "keep_edges"],
                "hex grid description",
            )?;
            GridKind::Hex {
                radius: as_usize(field(obj, "radius", "hex grid description")?, "\"radius\"")?,
            }
        }
        other => return err(format!("unknown grid kind {other:?}")),
    };
    let keep_vertices = match obj.get("keep_vertices") {
        None => None,
        Some(v) => {
            let mut list = Vec::new();
            for x in as_array(v, "\"keep_vertices\"")? {
                list.push(as_usize(x, "\"keep_vertices\"")?);
            }
            Some(list)
        }
    };
    let keep_edges = match obj.get("keep_edges") {
        None => None,
        Some(v) => {
            let mut list = Vec::new();
            for (i, e) in as_array(v, "\"keep_edges\"")?.iter().enumerate() {
                list.push(parse_pair(e, &format!("kept edge #{i}"))?);
            }
            Some(list)
        }
    };
    Ok(GridSpec {
        kind,
        keep_vertices,
        keep_edges,
    })
}

/// The canonical grid description document.
pub fn grid_spec_to_json(spec: &GridSpec) -> Value {
    let mut m = Map::new();
    match spec.kind {
        GridKind::Square { rows, cols } => {
            m.insert("kind".into(), json!("square"));
            m.insert("rows".into(), json!(rows));
            m.insert("cols".into(), json!(cols));
        }
        GridKind::Hex { radius } => {
            m.insert("kind".into(), json!("hex"));
            m.insert("radius".into(), json!(radius));
        }
    }
    if let Some(kv) = &spec.keep_vertices {
        m.insert(
            "keep_vertices".into(),
            Value::Array(kv.iter().map(|&v| json!(v)).collect()),
        );
    }
    if let Some(ke) = &spec.keep_edges {
        m.insert(
            "keep_edges".into(),
            Value::Array(ke.iter().map(|&(u, v)| json!([u, v])).collect()),
        );
    }
    Value::Object(m)
}

/// [`grid_spec_to_json`] rendered as text.
pub fn grid_spec_to_string(spec: &GridSpec) -> String {
    to_canonical_string(&grid_spec_to_json(spec))
}

// ---------------------------------------------------------------------------
// Verdict documents
// ---------------------------------------------------------------------------

/// The document token for a pair-bound kind: `nuv` counts the pair's common
/// neighbors, `euv` the edges induced on those common neighbors;
/// `adjacent-` prefixes the tighter bounds that apply to adjacent pairs.
pub fn violation_kind_token(kind: ViolationKind) -> &'static str {
    match kind {
        ViolationKind::AdjacentCommonNeighbors => "adjacent-nuv",
        ViolationKind::AdjacentCommonEdges => "adjacent-euv",
        ViolationKind::AnyCommonNeighbors => "any-nuv",
        ViolationKind::AnyCommonEdges => "any-euv",
    }
}

/// The document token for one of the five triangulation conditions.
pub fn condition_token(name: ConditionName) -> &'static str {
    match name {
        ConditionName::Degrees => "degrees",
        ConditionName::InternalDegrees => "internal-degrees",
        ConditionName::BoundaryDegree2 => "boundary-degree-2",
        ConditionName::Degree2Spread => "degree-2-spread",
        ConditionName::ChainRemoval => "chain-removal",
    }
}

/// The verdict document for the pair-bound check: overall pass flag plus
/// one witnessed entry per violated bound.
pub fn necessity_verdict_json(verdict: &NecessityVerdict) -> Value {
    let violations: Vec<Value> = verdict
        .violations
        .iter()
        .map(|v| {
            let mut m = Map::new();
            m.insert("u".into(), json!(v.u));
            m.insert("v".into(), json!(v.v));
            m.insert("kind".into(), json!(violation_kind_token(v.kind)));
            m.insert("observed".into(), json!(v.observed));
            m.insert("bound".into(), json!(v.bound));
            Value::Object(m)
        })
        .collect();
    let mut m = Map::new();
    m.insert("pass".into(), json!(verdict.passed()));
    m.insert("violations".into(), Value::Array(violations));
    Value::Object(m)
}

/// The diff document produced by layout-against-graph validation, plus the
/// point-contact warnings (single-point touches never count as edges but
/// are worth surfacing).
pub fn validation_json(report: &ValidationReport, point_contacts: &[(usize, usize)]) -> Value {
    let pairs = |list: &[(usize, usize)]| -> Value {
        Value::Array(list.iter().map(|&(u, v)| json!([u, v])).collect())
    };
    let mut m = Map::new();
    m.insert("pass".into(), json!(report.passed()));
    m.insert(
        "missing_vertices".into(),
        Value::Array(report.missing_vertices.iter().map(|&v| json!(v)).collect()),
    );
    m.insert(
        "extra_vertices".into(),
        Value::Array(report.extra_vertices.iter().map(|&v| json!(v)).collect()),
    );
    m.insert("missing_edges".into(), pairs(&report.missing_edges));
    m.insert("extra_edges".into(), pairs(&report.extra_edges));
    m.insert("interior_overlaps".into(), pairs(&report.interior_overlaps));
    m.insert("point_contact_warnings".into(), pairs(point_contacts));
    Value::Object(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tritact_core::geom::{ri, rq};

    fn cycle(n: usize) -> Graph {
        let mut g = Graph::new(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n).unwrap();
        }
        g
    }

    #[test]
    fn rationals_round_trip_in_reduced_form() {
        assert_eq!(rat_to_string(&ri(5)), "5");
        assert_eq!(rat_to_string(&rq(-3, 6)), "-1/2");
        assert_eq!(parse_rat("10/4").unwrap(), rq(5, 2));
        assert_eq!(parse_rat("-7").unwrap(), ri(-7));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/2").is_err());
        assert!(parse_rat("1.5").is_err());
        assert!(parse_rat(" 1").is_err());
    }

    #[test]
    fn graph_documents_round_trip_byte_identically() {
        let g = cycle(5);
        let text = graph_to_string(&g);
        let back = parse_graph(&text).unwrap();
        assert_eq!(back, g);
        assert_eq!(graph_to_string(&back), text);
    }

    #[test]
    fn graph_documents_reject_bad_shapes() {
        assert!(parse_graph("[]").is_err());
        assert!(parse_graph("{\"n\": 3}").is_err());
        assert!(parse_graph("{\"n\": 3, \"edges\": [[0, 0]]}").is_err());
        assert!(parse_graph("{\"n\": 3, \"edges\": [[0, 3]]}").is_err());
        assert!(parse_graph("{\"n\": 3, \"edges\": [[0, 1], [1, 0]]}").is_err());
        assert!(parse_graph("{\"n\": 3, \"edges\": [[0, 1]], \"extra\": 1}").is_err());
        assert!(parse_graph("{\"n\": -1, \"edges\": []}").is_err());
        assert!(parse_graph("not json").is_err());
    }

    #[test]
    fn layout_documents_round_trip_byte_identically() {
        let mut layout = Layout::new();
        layout.insert(0, Triangle::from_ints((0, 0), (2, 0), (1, 2)).unwrap());
        layout.insert(
            10,
            Triangle::new(
                Point::new(rq(5, 2), ri(0)),
                Point::new(ri(4), ri(0)),
                Point::new(ri(3), rq(-1, 3)),
            )
            .unwrap(),
        );
        let text = layout_to_string(&layout);
        let back = parse_layout(&text).unwrap();
        assert_eq!(back, layout);
        assert_eq!(layout_to_string(&back), text);
        assert!(text.contains("\"5/2\""));
        assert!(text.contains("\"-1/3\""));
    }

    #[test]
    fn layout_documents_reject_bad_shapes() {
        assert!(parse_layout("{}").is_err());
        let degenerate = r#"{"triangles": {"0": [["0","0"], ["1","0"], ["2","0"]]}}"#;
        assert!(parse_layout(degenerate).is_err());
        let short = r#"{"triangles": {"0": [["0","0"], ["1","0"]]}}"#;
        assert!(parse_layout(short).is_err());
        let bad_key = r#"{"triangles": {"x": [["0","0"], ["1","0"], ["0","1"]]}}"#;
        assert!(parse_layout(bad_key).is_err());
        let numeric = r#"{"triangles": {"0": [[0, 0], [1, 0], [0, 1]]}}"#;
        assert!(parse_layout(numeric).is_err());
    }

    #[test]
    fn embedding_documents_round_trip_byte_identically() {
        let emb = PlaneEmbedding {
            rotation: vec![vec![1, 2], vec![0, 2], vec![0, 1]],
            outer_face: vec![(0, 2), (2, 1), (1, 0)],
        };
        let text = embedding_to_string(&emb);
        let back = parse_embedding(&text).unwrap();
        assert_eq!(back.rotation, emb.rotation);
        assert_eq!(back.outer_face, emb.outer_face);
        assert_eq!(embedding_to_string(&back), text);
        assert!(parse_embedding(r#"{"rotation": [], "outer_face": [0]}"#).is_err());
    }

    #[test]
    fn grid_descriptions_round_trip_byte_identically() {
        let square = GridSpec {
            kind: GridKind::Square { rows: 3, cols: 4 },
            keep_vertices: Some(vec![0, 1, 2, 4, 5, 6]),
            keep_edges: None,
        };
        let text = grid_spec_to_string(&square);
        let back = parse_grid_spec(&text).unwrap();
        assert_eq!(back, square);
        assert_eq!(grid_spec_to_string(&back), text);

        let hex = GridSpec {
            kind: GridKind::Hex { radius: 2 },
            keep_vertices: None,
            keep_edges: Some(vec![(0, 1), (1, 2)]),
        };
        let text = grid_spec_to_string(&hex);
        assert_eq!(parse_grid_spec(&text).unwrap(), hex);

        assert!(parse_grid_spec(r#"{"kind": "square", "rows": 2}"#).is_err());
        assert!(parse_grid_spec(r#"{"kind": "triangular", "rows": 2, "cols": 2}"#).is_err());
        assert!(parse_grid_spec(r#"{"kind": "hex", "radius": 2, "rows": 2}"#).is_err());
    }

    #[test]
    fn verdict_documents_carry_witnesses() {
        // A hub edge with four common neighbors violates the adjacent-pair
        // neighbor bound.
        let mut g = Graph::new(6);
        g.add_edge(0, 1).unwrap();
        for w in 2..6 {
            g.add_edge(0, w).unwrap();
            g.add_edge(1, w).unwrap();
        }
        let verdict = tritact_core::necessary::check_necessary(&g);
        let doc = necessity_verdict_json(&verdict);
        assert_eq!(doc["pass"], json!(false));
        let kinds: Vec<&str> = doc["violations"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v["kind"].as_str().unwrap())
            .collect();
        assert!(kinds.contains(&"adjacent-nuv"));

        let passing = necessity_verdict_json(&tritact_core::necessary::check_necessary(&cycle(4)));
        assert_eq!(passing["pass"], json!(true));
        assert_eq!(passing["violations"].as_array().unwrap().len(), 0);
    }
}
