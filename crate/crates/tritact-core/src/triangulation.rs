//! Deciding and constructing *filled* triangulation layouts.
//!
//! A layout is a filled triangulation when the triangles tile a convex
//! region: every contact is a full side-to-side match and the union has no
//! holes. This module characterizes the biconnected graphs admitting such a
//! layout by five checkable conditions on a plane embedding, and constructs
//! a layout whenever some embedding passes them:
//!
//! 1. every vertex has degree 2 or 3;
//! 2. every internal vertex has degree exactly 3;
//! 3. at least three degree-2 vertices lie on the outer face;
//! 4. if any degree-3 vertex lies on the outer face, the boundary degree-2
//!    vertices are not all consecutive;
//! 5. removing the two degree-2 vertices flanking any maximal run of
//!    degree-3 boundary vertices leaves the graph connected.
//!
//! Construction goes through an auxiliary graph ([`build_dual`]) with one
//! node per interior face and one node per boundary gap; drawing that graph
//! with straight lines ([`draw_straight_line`]) turns each vertex's face of
//! the auxiliary graph into its triangle. All arithmetic is exact.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::contact::{classify_triangulation, contact_graph, validate, Layout, TriangulationClass};
use crate::geom::{
    cmp_angle, midpoint, orientation, point_on_segment, polygon_area2, ri, rq, segments_intersect,
    sign, Point, Rat, Triangle, Vec2,
};
use crate::graph::planarity::{planar_embedding, trace_faces, Rotation};
use crate::graph::Graph;

/// A face traced from a rotation system: its directed-edge cycle.
pub type FaceWalk = Vec<(usize, usize)>;

/// A combinatorial plane embedding: a rotation system plus the choice of
/// outer face, given as one of the rotation's traced face cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneEmbedding {
    pub rotation: Rotation,
    /// Directed-edge cycle of the face chosen as outer. Any cyclic rotation
    /// of a traced face is accepted.
    pub outer_face: FaceWalk,
}

/// Why a triangulation query could not be answered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TriangulationError {
    NotBiconnected,
    NotPlanar,
    DegreeTooHigh {
        vertex: usize,
        degree: usize,
    },
    /// The supplied embedding is not a plane embedding of the graph.
    BadEmbedding(&'static str),
    /// An operation requiring a conditions-passing embedding got one that
    /// fails some condition.
    ConditionsNotMet,
    /// The face/gap graph came out with a loop or a repeated edge.
    DualNotSimple,
    /// The straight-line drawing violated an exactness check.
    DrawingFailed(&'static str),
}

impl fmt::Display for TriangulationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriangulationError::NotBiconnected => write!(f, "graph is not biconnected"),
            TriangulationError::NotPlanar => write!(f, "graph is not planar"),
            TriangulationError::DegreeTooHigh { vertex, degree } => {
                write!(
                    f,
                    "vertex {vertex} has degree {degree}, above the maximum of 3"
                )
            }
            TriangulationError::BadEmbedding(why) => write!(f, "bad embedding: {why}"),
            TriangulationError::ConditionsNotMet => {
                write!(f, "embedding fails the triangulation conditions")
            }
            TriangulationError::DualNotSimple => {
                write!(f, "face/gap graph is not simple")
            }
            TriangulationError::DrawingFailed(why) => write!(f, "drawing failed: {why}"),
        }
    }
}

impl core::error::Error for TriangulationError {}

/// Names of the five embedding conditions, in check order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionName {
    Degrees,
    InternalDegrees,
    BoundaryDegree2,
    Degree2Spread,
    ChainRemoval,
}

impl ConditionName {
    pub const ALL: [ConditionName; 5] = [
        ConditionName::Degrees,
        ConditionName::InternalDegrees,
        ConditionName::BoundaryDegree2,
        ConditionName::Degree2Spread,
        ConditionName::ChainRemoval,
    ];

    pub fn index(self) -> usize {
        match self {
            ConditionName::Degrees => 0,
            ConditionName::InternalDegrees => 1,
            ConditionName::BoundaryDegree2 => 2,
            ConditionName::Degree2Spread => 3,
            ConditionName::ChainRemoval => 4,
        }
    }
}

impl fmt::Display for ConditionName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConditionName::Degrees => "all degrees in {2, 3}",
            ConditionName::InternalDegrees => "internal vertices of degree 3",
            ConditionName::BoundaryDegree2 => "at least 3 boundary degree-2 vertices",
            ConditionName::Degree2Spread => "boundary degree-2 vertices not all consecutive",
            ConditionName::ChainRemoval => "chain flank removal keeps the graph connected",
        };
        write!(f, "{s}")
    }
}

/// The outcome of checking the five conditions on one embedding.
///
/// Every condition is evaluated independently, so a verdict records all
/// failures at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionVerdict {
    /// First vertex (ascending) whose degree is outside `{2, 3}`, with its
    /// degree.
    pub bad_degree: Option<(usize, usize)>,
    /// First internal vertex (ascending) whose degree is not 3.
    pub internal_not_degree3: Option<usize>,
    /// Number of degree-2 vertices on the outer walk.
    pub boundary_degree2: usize,
    /// True when some degree-3 vertex is on the boundary and the boundary
    /// degree-2 vertices form a single consecutive run.
    pub degree2_all_consecutive: bool,
    /// Flanking degree-2 pair `(min, max)` of the first chain of boundary
    /// degree-3 vertices whose removal disconnects the graph.
    pub disconnecting_chain_ends: Option<(usize, usize)>,
}

impl ConditionVerdict {
    pub fn degrees_ok(&self) -> bool {
        self.bad_degree.is_none()
    }

    pub fn internal_degrees_ok(&self) -> bool {
        self.internal_not_degree3.is_none()
    }

    pub fn boundary_degree2_ok(&self) -> bool {
        self.boundary_degree2 >= 3
    }

    pub fn spread_ok(&self) -> bool {
        !self.degree2_all_consecutive
    }

    pub fn chain_removal_ok(&self) -> bool {
        self.disconnecting_chain_ends.is_none()
    }

    pub fn passed(&self) -> bool {
        self.degrees_ok()
            && self.internal_degrees_ok()
            && self.boundary_degree2_ok()
            && self.spread_ok()
            && self.chain_removal_ok()
    }

    /// The first failed condition in check order, if any.
    pub fn first_failure(&self) -> Option<ConditionName> {
        if !self.degrees_ok() {
            Some(ConditionName::Degrees)
        } else if !self.internal_degrees_ok() {
            Some(ConditionName::InternalDegrees)
        } else if !self.boundary_degree2_ok() {
            Some(ConditionName::BoundaryDegree2)
        } else if !self.spread_ok() {
            Some(ConditionName::Degree2Spread)
        } else if !self.chain_removal_ok() {
            Some(ConditionName::ChainRemoval)
        } else {
            None
        }
    }
}

impl fmt::Display for ConditionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "all five conditions hold");
        }
        let mut first = true;
        let mut lead = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if !first {
                write!(f, "; ")?;
            }
            first = false;
            Ok(())
        };
        if let Some((v, d)) = self.bad_degree {
            lead(f)?;
            write!(f, "vertex {v} has degree {d}, outside {{2, 3}}")?;
        }
        if let Some(v) = self.internal_not_degree3 {
            lead(f)?;
            write!(f, "internal vertex {v} does not have degree 3")?;
        }
        if !self.boundary_degree2_ok() {
            lead(f)?;
            write!(
                f,
                "only {} degree-2 vertices on the boundary (need 3)",
                self.boundary_degree2
            )?;
        }
        if self.degree2_all_consecutive {
            lead(f)?;
            write!(f, "the boundary degree-2 vertices are all consecutive")?;
        }
        if let Some((p, q)) = self.disconnecting_chain_ends {
            lead(f)?;
            write!(f, "removing chain flanks {p} and {q} disconnects the graph")?;
        }
        Ok(())
    }
}

/// The vertices visited by a directed face cycle, in walk order.
fn walk_vertices(face: &[(usize, usize)]) -> Vec<usize> {
    face.iter().map(|&(a, _)| a).collect()
}

/// True when `a` and `b` are the same directed cycle up to rotation.
fn same_cycle(a: &[(usize, usize)], b: &[(usize, usize)]) -> bool {
    if a.len() != b.len() || a.is_empty() {
        return false;
    }
    match a.iter().position(|e| *e == b[0]) {
        None => false,
        Some(k) => (0..a.len()).all(|i| a[(k + i) % a.len()] == b[i]),
    }
}

/// True when the graph minus the given vertices is still connected (the
/// removed vertices are not counted; an empty remainder counts as
/// disconnected).
fn connected_without(g: &Graph, removed: &BTreeSet<usize>) -> bool {
    let n = g.n();
    let target = n - removed.len();
    if target == 0 {
        return false;
    }
    let start = (0..n).find(|v| !removed.contains(v)).unwrap();
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if !seen[w] && !removed.contains(&w) {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == target
}

/// Evaluate the five conditions given the (already verified, simple) outer
/// walk.
fn verdict_for_walk(g: &Graph, walk: &[usize]) -> ConditionVerdict {
    let n = g.n();
    let l = walk.len();
    let mut on_boundary = vec![false; n];
    for &v in walk {
        on_boundary[v] = true;
    }
    let bad_degree = (0..n)
        .find(|&v| !matches!(g.degree(v), 2 | 3))
        .map(|v| (v, g.degree(v)));
    let internal_not_degree3 = (0..n).find(|&v| !on_boundary[v] && g.degree(v) != 3);
    let boundary_degree2 = walk.iter().filter(|&&v| g.degree(v) == 2).count();
    let has_boundary_degree3 = walk.iter().any(|&v| g.degree(v) == 3);
    // Maximal cyclic runs of degree-2 vertices along the walk, counted by
    // their starting positions. A walk that is all degree-2 has no start and
    // is not "all consecutive" (there is nothing to spread around).
    let deg2_runs = (0..l)
        .filter(|&i| g.degree(walk[i]) == 2 && g.degree(walk[(i + l - 1) % l]) != 2)
        .count();
    let degree2_all_consecutive = has_boundary_degree3 && deg2_runs == 1;
    // Chains: maximal runs of degree-3 boundary vertices. Each is flanked by
    // the nearest boundary vertices on both sides; when those are degree-2
    // (always, after rotating the walk to start at a degree-2 vertex),
    // removing them must keep the graph connected.
    let mut disconnecting_chain_ends = None;
    if has_boundary_degree3 && boundary_degree2 > 0 {
        let start = (0..l).find(|&i| g.degree(walk[i]) == 2).unwrap();
        let r: Vec<usize> = (0..l).map(|i| walk[(start + i) % l]).collect();
        let mut i = 1;
        while i < l {
            if g.degree(r[i]) == 3 && g.degree(r[i - 1]) == 2 {
                let mut j = i;
                while j < l && g.degree(r[j]) == 3 {
                    j += 1;
                }
                let p = r[i - 1];
                let q = r[j % l];
                let removed: BTreeSet<usize> = [p, q].into_iter().collect();
                if !connected_without(g, &removed) {
                    disconnecting_chain_ends = Some((p.min(q), p.max(q)));
                    break;
                }
                i = j;
            } else {
                i += 1;
            }
        }
    }
    ConditionVerdict {
        bad_degree,
        internal_not_degree3,
        boundary_degree2,
        degree2_all_consecutive,
        disconnecting_chain_ends,
    }
}

/// Verify that `emb` is a plane embedding of `g` and return its traced
/// faces together with the index of the outer face among them.
fn verify_embedding(
    g: &Graph,
    emb: &PlaneEmbedding,
) -> Result<(Vec<FaceWalk>, usize), TriangulationError> {
    if !g.is_biconnected() {
        return Err(TriangulationError::NotBiconnected);
    }
    if emb.rotation.len() != g.n() {
        return Err(TriangulationError::BadEmbedding(
            "rotation has the wrong number of vertices",
        ));
    }
    for v in 0..g.n() {
        let listed: BTreeSet<usize> = emb.rotation[v].iter().copied().collect();
        let actual: BTreeSet<usize> = g.neighbors(v).collect();
        if listed.len() != emb.rotation[v].len() || listed != actual {
            return Err(TriangulationError::BadEmbedding(
                "rotation does not list each vertex's neighbors exactly once",
            ));
        }
    }
    let faces = trace_faces(&emb.rotation);
    if g.n() + faces.len() != g.m() + 2 {
        return Err(TriangulationError::BadEmbedding(
            "rotation system is not planar",
        ));
    }
    let outer = match faces.iter().position(|f| same_cycle(f, &emb.outer_face)) {
        Some(i) => i,
        None => {
            return Err(TriangulationError::BadEmbedding(
                "outer face is not a face of the rotation system",
            ))
        }
    };
    let verts = walk_vertices(&faces[outer]);
    let distinct: BTreeSet<usize> = verts.iter().copied().collect();
    if distinct.len() != verts.len() {
        return Err(TriangulationError::BadEmbedding(
            "outer walk revisits a vertex",
        ));
    }
    Ok((faces, outer))
}

/// Check the five triangulation conditions on a plane embedding.
///
/// The graph must be biconnected and `emb` must be a plane embedding of it;
/// anything else is an error, not a failed verdict.
pub fn check_conditions(
    g: &Graph,
    emb: &PlaneEmbedding,
) -> Result<ConditionVerdict, TriangulationError> {
    let (faces, outer) = verify_embedding(g, emb)?;
    Ok(verdict_for_walk(g, &walk_vertices(&faces[outer])))
}

/// All plane embeddings found for a graph.
#[derive(Clone, Debug)]
pub struct EmbeddingEnumeration {
    pub embeddings: Vec<PlaneEmbedding>,
    /// True when every rotation system was examined, so the list is
    /// exhaustive and absence from it is conclusive.
    pub complete: bool,
}

/// Above this many degree-3 vertices the exhaustive rotation sweep is
/// replaced by a single computed embedding and its mirror image.
const SWEEP_LIMIT: usize = 16;

/// The mirror image of a rotation system.
fn reflected(rot: &Rotation) -> Rotation {
    rot.iter()
        .map(|order| {
            let mut r = order.clone();
            r.reverse();
            r
        })
        .collect()
}

/// The rotation system with sorted neighbor lists, the two-element lists of
/// the given degree-3 vertices swapped at the tail according to `mask`.
fn rotation_for_mask(g: &Graph, deg3: &[usize], mask: usize) -> Rotation {
    let mut rot: Rotation = (0..g.n()).map(|v| g.neighbors(v).collect()).collect();
    for (bit, &v) in deg3.iter().enumerate() {
        if mask & (1 << bit) != 0 {
            rot[v].swap(1, 2);
        }
    }
    rot
}

/// Enumerate plane embeddings of a biconnected graph with maximum degree 3.
///
/// A vertex of degree at most 2 has a unique cyclic neighbor order and a
/// degree-3 vertex has exactly two, so with `k` degree-3 vertices there are
/// `2^k` rotation systems in total. For `k` up to [`SWEEP_LIMIT`] all of
/// them are generated and filtered by the Euler count, which yields every
/// plane embedding (both mirror images included) as a rotation plus a choice
/// of outer face. For larger `k` one embedding is computed directly and
/// paired with its mirror image; the result is then marked incomplete.
pub fn enumerate_embeddings(g: &Graph) -> Result<EmbeddingEnumeration, TriangulationError> {
    if !g.is_biconnected() {
        return Err(TriangulationError::NotBiconnected);
    }
    if let Some(v) = (0..g.n()).find(|&v| g.degree(v) > 3) {
        return Err(TriangulationError::DegreeTooHigh {
            vertex: v,
            degree: g.degree(v),
        });
    }
    let Some(lr) = planar_embedding(g) else {
        return Err(TriangulationError::NotPlanar);
    };
    let deg3: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 3).collect();
    let k = deg3.len();
    let mut out = EmbeddingEnumeration {
        embeddings: Vec::new(),
        complete: k <= SWEEP_LIMIT,
    };
    let rotations: Vec<Rotation> = if k <= SWEEP_LIMIT {
        (0..1usize << k)
            .map(|mask| rotation_for_mask(g, &deg3, mask))
            .collect()
    } else {
        let refl = reflected(&lr);
        vec![lr, refl]
    };
    for rot in rotations {
        let faces = trace_faces(&rot);
        if g.n() + faces.len() != g.m() + 2 {
            continue;
        }
        for face in &faces {
            out.embeddings.push(PlaneEmbedding {
                rotation: rot.clone(),
                outer_face: face.clone(),
            });
        }
    }
    Ok(out)
}

/// The face/gap graph of a conditions-passing embedding.
///
/// Nodes `0..interior_count` are the interior faces of the embedding, in
/// trace order. The remaining nodes follow the boundary: one per maximal run
/// of degree-3 boundary vertices (a *chain*) and one per boundary edge
/// joining two degree-2 vertices, in walk order starting from a degree-2
/// vertex. Edges are of three kinds: two interior faces sharing a graph
/// edge, an interior face to the gap node of a boundary edge on it, and
/// consecutive gap nodes around the boundary. Drawing this graph with
/// straight lines and reading off [`DualGraph::face_of_vertex`] produces one
/// triangle per graph vertex.
#[derive(Clone, Debug)]
pub struct DualGraph {
    /// Number of interior-face nodes; they are `0..interior_count`.
    pub interior_count: usize,
    /// Total number of nodes.
    pub node_count: usize,
    /// Undirected edges, each stored as `(a, b)` with `a < b`.
    pub edges: BTreeSet<(usize, usize)>,
    /// The gap nodes in cyclic boundary order.
    pub external_cycle: Vec<usize>,
    /// Graph edge `(u, v)` with `u < v` to the edge of this graph whose
    /// drawn segment realizes the contact between `u`'s and `v`'s triangles.
    pub edge_of: BTreeMap<(usize, usize), (usize, usize)>,
    /// For each graph vertex, the three nodes whose drawn positions become
    /// its triangle's corners, in rotation order.
    pub face_of_vertex: Vec<[usize; 3]>,
}

/// Build the face/gap graph of an embedding that passes [`check_conditions`].
pub fn build_dual(g: &Graph, emb: &PlaneEmbedding) -> Result<DualGraph, TriangulationError> {
    let (faces, outer_idx) = verify_embedding(g, emb)?;
    let walk_raw = walk_vertices(&faces[outer_idx]);
    if !verdict_for_walk(g, &walk_raw).passed() {
        return Err(TriangulationError::ConditionsNotMet);
    }
    let n = g.n();
    // Interior face ids in trace order; map every directed edge to its face.
    let mut interior_id: Vec<Option<usize>> = vec![None; faces.len()];
    let mut next_interior = 0;
    for (i, id) in interior_id.iter_mut().enumerate() {
        if i != outer_idx {
            *id = Some(next_interior);
            next_interior += 1;
        }
    }
    let interior_count = next_interior;
    let mut face_of_directed: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (i, face) in faces.iter().enumerate() {
        for &e in face {
            face_of_directed.insert(e, i);
        }
    }
    // Boundary walk rotated to start at a degree-2 vertex, so no chain wraps
    // around the starting point.
    let l = walk_raw.len();
    let start = (0..l).find(|&i| g.degree(walk_raw[i]) == 2).unwrap();
    let walk: Vec<usize> = (0..l).map(|i| walk_raw[(start + i) % l]).collect();
    // Allocate gap nodes in walk order: a fresh node per degree-2/degree-2
    // boundary edge, a fresh node at each chain entry, shared along the
    // chain.
    let mut chain_node: BTreeMap<usize, usize> = BTreeMap::new();
    let mut attach = vec![usize::MAX; l];
    let mut external_cycle = Vec::new();
    let mut next = interior_count;
    for i in 0..l {
        let a = walk[i];
        let b = walk[(i + 1) % l];
        if g.degree(a) == 3 {
            let id = chain_node[&a];
            attach[i] = id;
            if g.degree(b) == 3 {
                chain_node.insert(b, id);
            }
        } else if g.degree(b) == 3 {
            let id = next;
            next += 1;
            external_cycle.push(id);
            chain_node.insert(b, id);
            attach[i] = id;
        } else {
            let id = next;
            next += 1;
            external_cycle.push(id);
            attach[i] = id;
        }
    }
    let node_count = next;
    assert!(
        external_cycle.len() >= 3,
        "fewer than three boundary gap nodes"
    );
    // Positions of each boundary vertex's incoming and outgoing walk edges.
    let mut walk_out: BTreeMap<usize, usize> = BTreeMap::new();
    let mut walk_in: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..l {
        walk_out.insert(walk[i], i);
        walk_in.insert(walk[(i + 1) % l], i);
    }
    let boundary_pos: BTreeMap<(usize, usize), usize> = (0..l)
        .map(|i| {
            let a = walk[i];
            let b = walk[(i + 1) % l];
            ((a.min(b), a.max(b)), i)
        })
        .collect();
    // Edges: face-to-face across interior graph edges, face-to-gap along
    // boundary edges, gap-to-gap around the boundary.
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut edge_of: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    let add_edge = |edges: &mut BTreeSet<(usize, usize)>,
                    a: usize,
                    b: usize|
     -> Result<(usize, usize), TriangulationError> {
        if a == b {
            return Err(TriangulationError::DualNotSimple);
        }
        let e = (a.min(b), a.max(b));
        if !edges.insert(e) {
            return Err(TriangulationError::DualNotSimple);
        }
        Ok(e)
    };
    for (u, v) in g.edges() {
        if let Some(&i) = boundary_pos.get(&(u, v)) {
            let a = walk[i];
            let b = walk[(i + 1) % l];
            let inner = face_of_directed[&(b, a)];
            assert_ne!(
                inner, outer_idx,
                "boundary edge with the outer face on both sides"
            );
            let e = add_edge(&mut edges, interior_id[inner].unwrap(), attach[i])?;
            edge_of.insert((u, v), e);
        } else {
            let f1 = face_of_directed[&(u, v)];
            let f2 = face_of_directed[&(v, u)];
            assert!(
                f1 != outer_idx && f2 != outer_idx,
                "interior edge touching the outer face"
            );
            let e = add_edge(
                &mut edges,
                interior_id[f1].unwrap(),
                interior_id[f2].unwrap(),
            )?;
            edge_of.insert((u, v), e);
        }
    }
    let x = external_cycle.len();
    for j in 0..x {
        add_edge(&mut edges, external_cycle[j], external_cycle[(j + 1) % x])?;
    }
    assert_eq!(edge_of.len(), g.m());
    assert_eq!(edges.len(), edge_of.len() + x);
    // One triangular face of the gap graph per graph vertex: its corners in
    // rotation order are the faces at the vertex, with the outer-face corner
    // replaced by the chain node (degree 3) or by the two gap nodes of the
    // incident boundary edges (degree 2).
    let mut face_of_vertex = Vec::with_capacity(n);
    for v in 0..n {
        let mut corners = Vec::with_capacity(3);
        for &w in &emb.rotation[v] {
            let fi = face_of_directed[&(v, w)];
            if fi != outer_idx {
                corners.push(interior_id[fi].unwrap());
            } else if g.degree(v) == 3 {
                corners.push(chain_node[&v]);
            } else {
                corners.push(attach[walk_in[&v]]);
                corners.push(attach[walk_out[&v]]);
            }
        }
        assert_eq!(corners.len(), 3, "vertex {v} does not have three corners");
        let tri = [corners[0], corners[1], corners[2]];
        assert!(
            tri[0] != tri[1] && tri[1] != tri[2] && tri[0] != tri[2],
            "vertex {v} has repeated corners"
        );
        for i in 0..3 {
            let (a, b) = (tri[i], tri[(i + 1) % 3]);
            assert!(
                edges.contains(&(a.min(b), a.max(b))),
                "corners of vertex {v} are not pairwise adjacent"
            );
        }
        face_of_vertex.push(tri);
    }
    // Faces of the gap graph: one per graph vertex plus the region outside
    // the boundary cycle.
    assert_eq!(node_count + n + 1, edges.len() + 2, "face count mismatch");
    Ok(DualGraph {
        interior_count,
        node_count,
        edges,
        external_cycle,
        edge_of,
        face_of_vertex,
    })
}

/// Solve the square linear system `a · x = rhs` (given as an augmented
/// matrix with `extra` right-hand columns) by exact Gaussian elimination.
/// Returns the solution columns, or `None` when the matrix is singular.
fn solve_exact(mut m: Vec<Vec<Rat>>, extra: usize) -> Option<Vec<Vec<Rat>>> {
    let rows = m.len();
    for col in 0..rows {
        let pivot = (col..rows).find(|&r| sign(&m[r][col]) != 0)?;
        m.swap(col, pivot);
        for r in col + 1..rows {
            if sign(&m[r][col]) == 0 {
                continue;
            }
            let factor = &m[r][col] / &m[col][col];
            for c in col..rows + extra {
                let delta = &factor * &m[col][c];
                m[r][c] = &m[r][c] - &delta;
            }
        }
    }
    let mut sol = vec![vec![ri(0); extra]; rows];
    for row in (0..rows).rev() {
        for e in 0..extra {
            let mut acc = m[row][rows + e].clone();
            for c in row + 1..rows {
                let t = &m[row][c] * &sol[c][e];
                acc = &acc - &t;
            }
            sol[row][e] = &acc / &m[row][row];
        }
    }
    Some(sol)
}

/// Exact rational point on the unit circle for boundary slot `i` of `l`.
///
/// The parameter `t = (2u - 1) / (u (1 - u))` with `u = (2i + 1) / (2l)` is
/// strictly increasing in `i`, and `((1 - t^2), 2t) / (1 + t^2)` traverses
/// the circle counterclockwise as `t` grows, so the `l` points are distinct,
/// in convex position, and in cyclic order.
fn circle_point(i: usize, l: usize) -> Point {
    let u = rq(2 * i as i64 + 1, 2 * l as i64);
    let one = ri(1);
    let two = ri(2);
    let t = (&(&two * &u) - &one) / (&u * &(&one - &u));
    let t2 = &t * &t;
    let den = &one + &t2;
    Point::new((&one - &t2) / &den, (&two * &t) / &den)
}

/// Draw the face/gap graph with straight lines: gap nodes on a circle in
/// boundary order, interior nodes at the average of their neighbors.
///
/// The positions are re-checked exactly: all points distinct, every
/// triangular face nondegenerate with a common orientation, and no two edge
/// segments crossing or overlapping anywhere outside a shared endpoint.
pub fn draw_straight_line(dual: &DualGraph) -> Result<Vec<Point>, TriangulationError> {
    let l = dual.external_cycle.len();
    let mut pos: Vec<Option<Point>> = vec![None; dual.node_count];
    for (i, &node) in dual.external_cycle.iter().enumerate() {
        pos[node] = Some(circle_point(i, l));
    }
    let ic = dual.interior_count;
    if ic > 0 {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); dual.node_count];
        for &(a, b) in &dual.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        // One row per interior node: degree on the diagonal, -1 for interior
        // neighbors, boundary neighbors summed on the right-hand side.
        let mut m = vec![vec![ri(0); ic + 2]; ic];
        for i in 0..ic {
            m[i][i] = ri(adj[i].len() as i64);
            for &j in &adj[i] {
                if j < ic {
                    m[i][j] = &m[i][j] - &ri(1);
                } else {
                    let p = pos[j].as_ref().unwrap();
                    m[i][ic] = &m[i][ic] + &p.x;
                    m[i][ic + 1] = &m[i][ic + 1] + &p.y;
                }
            }
        }
        let sol = solve_exact(m, 2).ok_or(TriangulationError::DrawingFailed(
            "interior placement system is singular",
        ))?;
        for (i, xy) in sol.into_iter().enumerate() {
            let mut it = xy.into_iter();
            pos[i] = Some(Point::new(it.next().unwrap(), it.next().unwrap()));
        }
    }
    let pos: Vec<Point> = pos.into_iter().map(|p| p.unwrap()).collect();
    for a in 0..pos.len() {
        for b in a + 1..pos.len() {
            if pos[a] == pos[b] {
                return Err(TriangulationError::DrawingFailed(
                    "two nodes drawn at the same point",
                ));
            }
        }
    }
    let mut common_sign = 0i8;
    for tri in &dual.face_of_vertex {
        let s = orientation(&pos[tri[0]], &pos[tri[1]], &pos[tri[2]]);
        if s == 0 {
            return Err(TriangulationError::DrawingFailed(
                "degenerate triangle face",
            ));
        }
        if common_sign == 0 {
            common_sign = s;
        } else if s != common_sign {
            return Err(TriangulationError::DrawingFailed(
                "faces drawn with mixed orientations",
            ));
        }
    }
    let segs: Vec<(usize, usize)> = dual.edges.iter().copied().collect();
    for (i, &(a1, b1)) in segs.iter().enumerate() {
        for &(a2, b2) in &segs[i + 1..] {
            let shared = usize::from(a1 == a2)
                + usize::from(a1 == b2)
                + usize::from(b1 == a2)
                + usize::from(b1 == b2);
            match shared {
                0 => {
                    if segments_intersect(&pos[a1], &pos[b1], &pos[a2], &pos[b2]) {
                        return Err(TriangulationError::DrawingFailed(
                            "independent edges intersect",
                        ));
                    }
                }
                1 => {
                    let o1 = if a1 == a2 || a1 == b2 { b1 } else { a1 };
                    let o2 = if a2 == a1 || a2 == b1 { b2 } else { a2 };
                    if point_on_segment(&pos[o1], &pos[a2], &pos[b2])
                        || point_on_segment(&pos[o2], &pos[a1], &pos[b1])
                    {
                        return Err(TriangulationError::DrawingFailed(
                            "edges sharing a node overlap",
                        ));
                    }
                }
                _ => return Err(TriangulationError::DrawingFailed("duplicate edge segment")),
            }
        }
    }
    Ok(pos)
}

/// Triangles read off a drawn face/gap graph, one per graph vertex.
fn layout_from_drawing(dual: &DualGraph, pos: &[Point]) -> Result<Layout, TriangulationError> {
    let mut layout = Layout::new();
    for (v, tri) in dual.face_of_vertex.iter().enumerate() {
        let t = Triangle::new(
            pos[tri[0]].clone(),
            pos[tri[1]].clone(),
            pos[tri[2]].clone(),
        )
        .map_err(|_| TriangulationError::DrawingFailed("degenerate triangle face"))?;
        layout.insert(v, t);
    }
    Ok(layout)
}

/// One candidate embedding that failed, and the first condition it failed.
#[derive(Clone, Debug)]
pub struct CandidateFailure {
    pub embedding: PlaneEmbedding,
    pub first_failed: ConditionName,
}

/// Evidence that no examined embedding passes the conditions.
#[derive(Clone, Debug)]
pub struct NotRepresentable {
    /// True when the evidence is conclusive: either a condition fails in
    /// every embedding without enumeration, or the enumeration was
    /// exhaustive.
    pub categorical: bool,
    /// A condition that fails in every embedding of the graph, making any
    /// enumeration unnecessary.
    pub short_circuit: Option<ConditionName>,
    /// Number of (rotation, outer face) candidates whose conditions were
    /// evaluated.
    pub candidates_tried: usize,
    /// Per condition (by [`ConditionName::index`]): in how many candidates
    /// it was the first to fail.
    pub failure_counts: [usize; 5],
    /// Up to [`FAILURE_SAMPLES`] failing candidates, in trial order.
    pub sample_failures: Vec<CandidateFailure>,
}

/// Cap on the retained per-candidate failure records.
pub const FAILURE_SAMPLES: usize = 16;

impl fmt::Display for NotRepresentable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = self.short_circuit {
            return write!(f, "no embedding can satisfy: {name}");
        }
        write!(
            f,
            "no qualifying embedding among {} candidates ({})",
            self.candidates_tried,
            if self.categorical {
                "exhaustive"
            } else {
                "not exhaustive"
            }
        )
    }
}

/// The answer from [`construct_triangulation`].
#[derive(Clone, Debug)]
pub enum ConstructOutcome {
    /// A layout realizing the graph as a filled triangulation.
    Layout(Layout),
    /// No examined embedding passes the conditions.
    NotRepresentable(NotRepresentable),
}

/// Build a filled-triangulation layout of a biconnected graph, or report
/// that none of the examined embeddings qualifies.
///
/// Candidates are tried in a fixed order, and the first embedding passing
/// [`check_conditions`] is drawn, so the output is deterministic. The
/// resulting layout is verified against the graph by the contact oracle
/// before being returned. Negative answers are conclusive exactly when
/// [`NotRepresentable::categorical`] is true.
pub fn construct_triangulation(g: &Graph) -> Result<ConstructOutcome, TriangulationError> {
    if !g.is_biconnected() {
        return Err(TriangulationError::NotBiconnected);
    }
    let n = g.n();
    let fail_everywhere = |name: ConditionName| {
        Ok(ConstructOutcome::NotRepresentable(NotRepresentable {
            categorical: true,
            short_circuit: Some(name),
            candidates_tried: 0,
            failure_counts: [0; 5],
            sample_failures: Vec::new(),
        }))
    };
    // Degrees and the total degree-2 count do not depend on the embedding,
    // so their conditions can fail for every embedding at once.
    if (0..n).any(|v| !matches!(g.degree(v), 2 | 3)) {
        return fail_everywhere(ConditionName::Degrees);
    }
    if (0..n).filter(|&v| g.degree(v) == 2).count() < 3 {
        return fail_everywhere(ConditionName::BoundaryDegree2);
    }
    let Some(lr) = planar_embedding(g) else {
        return Err(TriangulationError::NotPlanar);
    };
    let deg3: Vec<usize> = (0..n).filter(|&v| g.degree(v) == 3).collect();
    let k = deg3.len();
    let exhaustive = k <= SWEEP_LIMIT;
    let mut report = NotRepresentable {
        categorical: exhaustive,
        short_circuit: None,
        candidates_tried: 0,
        failure_counts: [0; 5],
        sample_failures: Vec::new(),
    };
    let rotation_count = if exhaustive { 1usize << k } else { 2 };
    for idx in 0..rotation_count {
        let rot = if exhaustive {
            rotation_for_mask(g, &deg3, idx)
        } else if idx == 0 {
            lr.clone()
        } else {
            reflected(&lr)
        };
        let faces = trace_faces(&rot);
        if n + faces.len() != g.m() + 2 {
            continue;
        }
        for face in &faces {
            report.candidates_tried += 1;
            let verdict = verdict_for_walk(g, &walk_vertices(face));
            if verdict.passed() {
                let emb = PlaneEmbedding {
                    rotation: rot.clone(),
                    outer_face: face.clone(),
                };
                let dual = build_dual(g, &emb)?;
                let pos = draw_straight_line(&dual)?;
                let layout = layout_from_drawing(&dual, &pos)?;
                let ok = validate(&layout, g).passed()
                    && classify_triangulation(&layout)
                        == Ok(TriangulationClass::FilledTriangulation);
                if !ok {
                    return Err(TriangulationError::DrawingFailed(
                        "constructed layout failed the contact oracle",
                    ));
                }
                return Ok(ConstructOutcome::Layout(layout));
            }
            let first = verdict.first_failure().unwrap();
            report.failure_counts[first.index()] += 1;
            if report.sample_failures.len() < FAILURE_SAMPLES {
                report.sample_failures.push(CandidateFailure {
                    embedding: PlaneEmbedding {
                        rotation: rot.clone(),
                        outer_face: face.clone(),
                    },
                    first_failed: first,
                });
            }
        }
    }
    Ok(ConstructOutcome::NotRepresentable(report))
}

/// Recover the contact graph and a plane embedding from a layout.
///
/// The rotation at each vertex orders its contact neighbors by the exact
/// angle of the contact segment's midpoint around the triangle's centroid.
/// The outer face is the unique traced face whose centroid walk is oriented
/// against all the others.
pub fn embedding_from_layout(
    layout: &Layout,
) -> Result<(Graph, PlaneEmbedding), TriangulationError> {
    let n = layout.len();
    if layout.triangles.keys().copied().ne(0..n) {
        return Err(TriangulationError::BadEmbedding(
            "layout vertex ids are not 0..n",
        ));
    }
    let report = contact_graph(layout);
    if !report.interior_overlaps.is_empty() {
        return Err(TriangulationError::BadEmbedding(
            "triangles have overlapping interiors",
        ));
    }
    let edges: Vec<(usize, usize)> = report.edges.iter().copied().collect();
    let g = Graph::from_edges(n, &edges).expect("contact edges are simple");
    let centroids: Vec<Point> = (0..n).map(|v| layout.triangles[&v].centroid()).collect();
    let mut rotation: Rotation = Vec::with_capacity(n);
    for v in 0..n {
        let dir = |w: usize| -> Vec2 {
            let key = (v.min(w), v.max(w));
            let (a, b) = &report.evidence[&key].overlap;
            centroids[v].to(&midpoint(a, b))
        };
        let mut order: Vec<usize> = g.neighbors(v).collect();
        order.sort_by(|&a, &b| cmp_angle(&dir(a), &dir(b)));
        rotation.push(order);
    }
    let faces = trace_faces(&rotation);
    if faces.len() < 2 {
        return Err(TriangulationError::BadEmbedding(
            "too few faces to choose an outer face",
        ));
    }
    let mut negative = Vec::new();
    let mut positive = Vec::new();
    for (i, face) in faces.iter().enumerate() {
        let pts: Vec<Point> = face.iter().map(|&(a, _)| centroids[a].clone()).collect();
        match sign(&polygon_area2(&pts)) {
            1 => positive.push(i),
            -1 => negative.push(i),
            _ => {
                return Err(TriangulationError::BadEmbedding(
                    "a face walk has zero signed area",
                ))
            }
        }
    }
    let outer = if negative.len() == 1 {
        negative[0]
    } else if positive.len() == 1 {
        positive[0]
    } else {
        return Err(TriangulationError::BadEmbedding("ambiguous outer face"));
    };
    Ok((
        g,
        PlaneEmbedding {
            rotation,
            outer_face: faces[outer].clone(),
        },
    ))
}
