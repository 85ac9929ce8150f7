//! Planarity testing and combinatorial embeddings.
//!
//! The planarity test is the left-right algorithm (Brandes' formulation, the
//! same structure as the widely used networkx implementation): one DFS pass
//! orients the graph and computes low-points, a second pass maintains a stack
//! of conflict pairs of return-edge intervals, and a third pass derives a
//! planar rotation system from the computed edge sides. Runs in near-linear
//! time, which keeps large builds fast.
//!
//! Outerplanarity is reduced to planarity: a graph is outerplanar exactly
//! when adding an apex vertex adjacent to every vertex leaves it planar. The
//! faces of the apex around the graph merge into the outer face.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use super::Graph;

/// A combinatorial embedding: for each vertex, its neighbors in cyclic
/// (clockwise) order.
pub type Rotation = Vec<Vec<usize>>;

#[derive(Clone, Default, PartialEq, Eq)]
struct Interval {
    low: Option<usize>,
    high: Option<usize>,
}

impl Interval {
    fn empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Default)]
struct ConflictPair {
    l: Interval,
    r: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        core::mem::swap(&mut self.l, &mut self.r);
    }
}

struct Lr<'g> {
    g: &'g Graph,
    /// Oriented edges, by id: `(source, target)`.
    edges: Vec<(usize, usize)>,
    /// Out-edge ids per vertex, in orientation order.
    out: Vec<Vec<usize>>,
    oriented: BTreeSet<(usize, usize)>,
    height: Vec<Option<usize>>,
    parent_edge: Vec<Option<usize>>,
    lowpt: Vec<usize>,
    lowpt2: Vec<usize>,
    nesting_depth: Vec<i64>,
    /// Out-edges sorted by nesting depth.
    ordered: Vec<Vec<usize>>,
    refs: Vec<Option<usize>>,
    side: Vec<i8>,
    s: Vec<ConflictPair>,
    stack_bottom: Vec<usize>,
    lowpt_edge: Vec<Option<usize>>,
    roots: Vec<usize>,
}

impl<'g> Lr<'g> {
    fn new(g: &'g Graph) -> Self {
        let n = g.n();
        Lr {
            g,
            edges: Vec::new(),
            out: vec![Vec::new(); n],
            oriented: BTreeSet::new(),
            height: vec![None; n],
            parent_edge: vec![None; n],
            lowpt: Vec::new(),
            lowpt2: Vec::new(),
            nesting_depth: Vec::new(),
            ordered: vec![Vec::new(); n],
            refs: Vec::new(),
            side: Vec::new(),
            s: Vec::new(),
            stack_bottom: Vec::new(),
            lowpt_edge: Vec::new(),
            roots: Vec::new(),
        }
    }

    fn new_edge(&mut self, v: usize, w: usize) -> usize {
        let id = self.edges.len();
        self.edges.push((v, w));
        let h = self.height[v].unwrap();
        self.lowpt.push(h);
        self.lowpt2.push(h);
        self.nesting_depth.push(0);
        self.refs.push(None);
        self.side.push(1);
        self.stack_bottom.push(0);
        self.lowpt_edge.push(None);
        self.out[v].push(id);
        id
    }

    fn dfs_orientation(&mut self, v: usize) {
        let e = self.parent_edge[v];
        let nbrs: Vec<usize> = self.g.neighbors(v).collect();
        for w in nbrs {
            let key = (v.min(w), v.max(w));
            if self.oriented.contains(&key) {
                continue;
            }
            self.oriented.insert(key);
            let ei = self.new_edge(v, w);
            if self.height[w].is_none() {
                // Tree edge.
                self.parent_edge[w] = Some(ei);
                self.height[w] = Some(self.height[v].unwrap() + 1);
                self.dfs_orientation(w);
            } else {
                // Back edge.
                self.lowpt[ei] = self.height[w].unwrap();
            }
            // Nesting depth: interleaving order for the testing DFS.
            self.nesting_depth[ei] = 2 * self.lowpt[ei] as i64;
            if self.lowpt2[ei] < self.height[v].unwrap() {
                self.nesting_depth[ei] += 1; // chordal
            }
            // Fold this edge's low-points into the parent edge.
            if let Some(pe) = e {
                if self.lowpt[ei] < self.lowpt[pe] {
                    self.lowpt2[pe] = self.lowpt[pe].min(self.lowpt2[ei]);
                    self.lowpt[pe] = self.lowpt[ei];
                } else if self.lowpt[ei] > self.lowpt[pe] {
                    self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt[ei]);
                } else {
                    self.lowpt2[pe] = self.lowpt2[pe].min(self.lowpt2[ei]);
                }
            }
        }
    }

    fn conflicting(&self, i: &Interval, b: usize) -> bool {
        match i.high {
            Some(h) => self.lowpt[h] > self.lowpt[b],
            None => false,
        }
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        match (&p.l.low, &p.r.low) {
            (None, Some(r)) => self.lowpt[*r],
            (Some(l), None) => self.lowpt[*l],
            (Some(l), Some(r)) => self.lowpt[*l].min(self.lowpt[*r]),
            (None, None) => unreachable!("conflict pair with two empty intervals"),
        }
    }

    fn dfs_testing(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let order = self.ordered[v].clone();
        for (idx, &ei) in order.iter().enumerate() {
            self.stack_bottom[ei] = self.s.len();
            let w = self.edges[ei].1;
            if Some(ei) == self.parent_edge[w] {
                // Tree edge.
                if !self.dfs_testing(w) {
                    return false;
                }
            } else {
                // Back edge.
                self.lowpt_edge[ei] = Some(ei);
                self.s.push(ConflictPair {
                    l: Interval::default(),
                    r: Interval {
                        low: Some(ei),
                        high: Some(ei),
                    },
                });
            }
            if self.lowpt[ei] < self.height[v].unwrap() {
                // `ei` has a return edge above `v`.
                if idx == 0 {
                    let pe = e.expect("root edges cannot return above the root");
                    self.lowpt_edge[pe] = self.lowpt_edge[ei];
                } else if !self.add_constraints(ei, e.unwrap()) {
                    return false;
                }
            }
        }
        if let Some(e) = e {
            let u = self.edges[e].0;
            self.trim_back_edges(u);
            // The side of `e` is the side of a highest return edge.
            if self.lowpt[e] < self.height[u].unwrap() {
                let top = self.s.last().expect("return edge without conflict pair");
                let hl = top.l.high;
                let hr = top.r.high;
                self.refs[e] = match (hl, hr) {
                    (Some(l), None) => Some(l),
                    (Some(l), Some(r)) if self.lowpt[l] > self.lowpt[r] => Some(l),
                    _ => hr,
                };
            }
        }
        true
    }

    fn add_constraints(&mut self, ei: usize, e: usize) -> bool {
        let mut p = ConflictPair::default();
        // Merge the return edges of `ei` into p.r.
        loop {
            let mut q = self.s.pop().expect("conflict stack underflow");
            if !q.l.empty() {
                q.swap();
            }
            if !q.l.empty() {
                return false; // not planar
            }
            let q_low = q.r.low.expect("interval without low edge");
            if self.lowpt[q_low] > self.lowpt[e] {
                // Merge the interval.
                match p.r.low {
                    None => p.r.high = q.r.high,
                    Some(pl) => self.refs[pl] = q.r.high,
                }
                p.r.low = q.r.low;
            } else {
                // Align.
                self.refs[q_low] = self.lowpt_edge[e];
            }
            if self.s.len() == self.stack_bottom[ei] {
                break;
            }
        }
        // Merge conflicting return edges of previous siblings into p.l.
        while let Some(top) = self.s.last() {
            if !(self.conflicting(&top.l, ei) || self.conflicting(&top.r, ei)) {
                break;
            }
            let mut q = self.s.pop().unwrap();
            if self.conflicting(&q.r, ei) {
                q.swap();
            }
            if self.conflicting(&q.r, ei) {
                return false; // not planar
            }
            // Merge the interval below lowpt(ei) into p.r.
            if let Some(pl) = p.r.low {
                self.refs[pl] = q.r.high;
            }
            if let Some(ql) = q.r.low {
                p.r.low = Some(ql);
            }
            match p.l.low {
                None => p.l.high = q.l.high,
                Some(pl) => self.refs[pl] = q.l.high,
            }
            p.l.low = q.l.low;
        }
        if !(p.l.empty() && p.r.empty()) {
            self.s.push(p);
        }
        true
    }

    fn trim_back_edges(&mut self, u: usize) {
        let hu = self.height[u].unwrap();
        // Drop entire conflict pairs whose lowest return point is `u`.
        while let Some(top) = self.s.last() {
            if self.lowest(top) != hu {
                break;
            }
            let p = self.s.pop().unwrap();
            if let Some(l) = p.l.low {
                self.side[l] = -1;
            }
        }
        // One more conflict pair may need partial trimming.
        if let Some(mut p) = self.s.pop() {
            while let Some(h) = p.l.high {
                if self.edges[h].1 == u {
                    p.l.high = self.refs[h];
                } else {
                    break;
                }
            }
            if p.l.high.is_none() && p.l.low.is_some() {
                let l = p.l.low.unwrap();
                self.refs[l] = p.r.low;
                self.side[l] = -1;
                p.l.low = None;
            }
            while let Some(h) = p.r.high {
                if self.edges[h].1 == u {
                    p.r.high = self.refs[h];
                } else {
                    break;
                }
            }
            if p.r.high.is_none() && p.r.low.is_some() {
                let r = p.r.low.unwrap();
                self.refs[r] = p.l.low;
                self.side[r] = -1;
                p.r.low = None;
            }
            self.s.push(p);
        }
    }

    /// Resolve the side of an edge by following reference chains.
    fn resolve_sign(&mut self, e: usize) -> i8 {
        let mut chain = vec![e];
        while let Some(&x) = chain.last() {
            match self.refs[x] {
                Some(r) => chain.push(r),
                None => break,
            }
        }
        for i in (0..chain.len() - 1).rev() {
            let x = chain[i];
            let r = chain[i + 1];
            self.side[x] *= self.side[r];
            self.refs[x] = None;
        }
        self.side[e]
    }
}

/// Per-vertex cyclic adjacency lists under construction, supporting the
/// insertions the embedding DFS needs.
struct RotBuilder {
    first: Vec<Option<usize>>,
    links: Vec<BTreeMap<usize, (usize, usize)>>, // nbr -> (prev, next)
}

impl RotBuilder {
    fn new(n: usize) -> Self {
        RotBuilder {
            first: vec![None; n],
            links: vec![BTreeMap::new(); n],
        }
    }

    fn insert_between(&mut self, v: usize, prev: usize, w: usize, next: usize) {
        self.links[v].get_mut(&prev).unwrap().1 = w;
        self.links[v].get_mut(&next).unwrap().0 = w;
        self.links[v].insert(w, (prev, next));
    }

    fn insert_sole(&mut self, v: usize, w: usize) {
        self.links[v].insert(w, (w, w));
        self.first[v] = Some(w);
    }

    /// Append at the end of the current order.
    fn append(&mut self, v: usize, w: usize) {
        match self.first[v] {
            None => self.insert_sole(v, w),
            Some(f) => {
                let last = self.links[v][&f].0;
                self.insert_between(v, last, w, f);
            }
        }
    }

    /// Insert `w` clockwise-after `reference` in `v`'s order.
    fn add_cw(&mut self, v: usize, w: usize, reference: usize) {
        let next = self.links[v][&reference].1;
        self.insert_between(v, reference, w, next);
    }

    /// Insert `w` counterclockwise-before `reference`; `w` becomes the first
    /// neighbor when `reference` was.
    fn add_ccw(&mut self, v: usize, w: usize, reference: usize) {
        let prev = self.links[v][&reference].0;
        self.insert_between(v, prev, w, reference);
        if self.first[v] == Some(reference) {
            self.first[v] = Some(w);
        }
    }

    fn add_first(&mut self, v: usize, w: usize) {
        match self.first[v] {
            None => self.insert_sole(v, w),
            Some(f) => self.add_ccw(v, w, f),
        }
    }

    fn finalize(self) -> Rotation {
        let mut rot = Vec::with_capacity(self.first.len());
        for v in 0..self.first.len() {
            let mut order = Vec::with_capacity(self.links[v].len());
            if let Some(f) = self.first[v] {
                let mut cur = f;
                loop {
                    order.push(cur);
                    cur = self.links[v][&cur].1;
                    if cur == f {
                        break;
                    }
                }
            }
            rot.push(order);
        }
        rot
    }
}

struct Embedder<'g, 'l> {
    lr: &'l mut Lr<'g>,
    rot: RotBuilder,
    left_ref: Vec<Option<usize>>,
    right_ref: Vec<Option<usize>>,
}

impl Embedder<'_, '_> {
    fn dfs_embedding(&mut self, v: usize) {
        let order = self.lr.ordered[v].clone();
        for ei in order {
            let w = self.lr.edges[ei].1;
            if Some(ei) == self.lr.parent_edge[w] {
                // Tree edge: the parent half-edge becomes w's first.
                self.rot.add_first(w, v);
                self.left_ref[v] = Some(w);
                self.right_ref[v] = Some(w);
                self.dfs_embedding(w);
            } else {
                // Back edge: place the reverse half-edge at the ancestor.
                if self.lr.side[ei] == 1 {
                    let r = self.right_ref[w].unwrap();
                    self.rot.add_cw(w, v, r);
                } else {
                    let l = self.left_ref[w].unwrap();
                    self.rot.add_ccw(w, v, l);
                    self.left_ref[w] = Some(v);
                }
            }
        }
    }
}

/// Compute a planar rotation system, or `None` when the graph is not planar.
pub fn planar_embedding(g: &Graph) -> Option<Rotation> {
    let n = g.n();
    if n > 2 && g.m() > 3 * n - 6 {
        return None;
    }
    let mut lr = Lr::new(g);
    // Orientation phase.
    for v in 0..n {
        if lr.height[v].is_none() {
            lr.height[v] = Some(0);
            lr.roots.push(v);
            lr.dfs_orientation(v);
        }
    }
    // Testing phase.
    for v in 0..n {
        let mut order = lr.out[v].clone();
        order.sort_by_key(|&ei| lr.nesting_depth[ei]);
        lr.ordered[v] = order;
    }
    for r in lr.roots.clone() {
        if !lr.dfs_testing(r) {
            return None;
        }
    }
    // Embedding phase.
    for ei in 0..lr.edges.len() {
        lr.nesting_depth[ei] *= lr.resolve_sign(ei) as i64;
    }
    for v in 0..n {
        let mut order = lr.out[v].clone();
        order.sort_by_key(|&ei| lr.nesting_depth[ei]);
        lr.ordered[v] = order;
    }
    let mut emb = Embedder {
        rot: RotBuilder::new(n),
        left_ref: vec![None; n],
        right_ref: vec![None; n],
        lr: &mut lr,
    };
    for v in 0..n {
        for &ei in &emb.lr.ordered[v] {
            let w = emb.lr.edges[ei].1;
            emb.rot.append(v, w);
        }
    }
    for r in emb.lr.roots.clone() {
        emb.dfs_embedding(r);
    }
    Some(emb.rot.finalize())
}

pub fn is_planar(g: &Graph) -> bool {
    planar_embedding(g).is_some()
}

/// Trace the faces of a rotation system.
///
/// Faces are returned as cycles of directed edges; every directed edge lies
/// on exactly one face. The successor of `(u, v)` is `(v, w)` with `w` the
/// cyclic successor of `u` in `v`'s rotation.
pub fn trace_faces(rot: &Rotation) -> Vec<Vec<(usize, usize)>> {
    let mut pos: Vec<BTreeMap<usize, usize>> = Vec::with_capacity(rot.len());
    for order in rot {
        pos.push(order.iter().enumerate().map(|(i, &w)| (w, i)).collect());
    }
    let mut visited: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut faces = Vec::new();
    for v in 0..rot.len() {
        for &w in &rot[v] {
            if visited.contains(&(v, w)) {
                continue;
            }
            let mut face = Vec::new();
            let (mut a, mut b) = (v, w);
            loop {
                face.push((a, b));
                visited.insert((a, b));
                let idx = pos[b][&a];
                let c = rot[b][(idx + 1) % rot[b].len()];
                a = b;
                b = c;
                if (a, b) == (v, w) {
                    break;
                }
            }
            faces.push(face);
        }
    }
    faces
}

/// Why a graph admits no embedding with every vertex on the outer face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OuterplanarityError {
    NotConnected,
    NotOuterplanar,
}

impl fmt::Display for OuterplanarityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OuterplanarityError::NotConnected => write!(f, "graph is not connected"),
            OuterplanarityError::NotOuterplanar => write!(f, "graph is not outerplanar"),
        }
    }
}

impl core::error::Error for OuterplanarityError {}

/// A rotation system disagreed with the graph it was paired with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationMismatch {
    pub vertex: usize,
}

impl fmt::Display for RotationMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rotation at vertex {} is not a permutation of its neighbors",
            self.vertex
        )
    }
}

impl core::error::Error for RotationMismatch {}

/// Trace faces as vertex walks after checking the rotation against the graph.
///
/// Each face is the cyclic sequence of vertices visited by its boundary
/// walk (one entry per directed edge on the face).
pub fn face_walks(g: &Graph, rot: &Rotation) -> Result<Vec<Vec<usize>>, RotationMismatch> {
    if rot.len() != g.n() {
        return Err(RotationMismatch {
            vertex: rot.len().min(g.n()),
        });
    }
    for v in 0..g.n() {
        let from_rot: BTreeSet<usize> = rot[v].iter().copied().collect();
        let from_graph: BTreeSet<usize> = g.neighbors(v).collect();
        if from_rot.len() != rot[v].len() || from_rot != from_graph {
            return Err(RotationMismatch { vertex: v });
        }
    }
    Ok(trace_faces(rot)
        .into_iter()
        .map(|face| face.into_iter().map(|(a, _)| a).collect())
        .collect())
}

/// An embedding of an outerplanar graph with every vertex on the outer face.
#[derive(Clone, Debug)]
pub struct OuterplanarEmbedding {
    pub rotation: Rotation,
    /// Directed edge cycle of the outer face (empty when the graph has no
    /// edges).
    pub outer_face: Vec<(usize, usize)>,
    /// All remaining (bounded) faces.
    pub inner_faces: Vec<Vec<(usize, usize)>>,
}

/// Embed a connected graph with all vertices on the outer face.
///
/// Uses the apex reduction: `g` is outerplanar iff `g` plus a vertex
/// adjacent to everything is planar. Removing the apex from such an
/// embedding merges its incident faces into one face containing every
/// vertex, which becomes the outer face.
pub fn outerplanar_embedding(g: &Graph) -> Result<OuterplanarEmbedding, OuterplanarityError> {
    let n = g.n();
    if !g.is_connected() {
        return Err(OuterplanarityError::NotConnected);
    }
    let mut apexed = Graph::new(n + 1);
    for (u, v) in g.edges() {
        apexed.add_edge(u, v).unwrap();
    }
    for v in 0..n {
        apexed.add_edge(v, n).unwrap();
    }
    let rot_apexed = planar_embedding(&apexed).ok_or(OuterplanarityError::NotOuterplanar)?;
    let rotation: Rotation = rot_apexed[..n]
        .iter()
        .map(|order| order.iter().copied().filter(|&w| w != n).collect())
        .collect();
    if g.m() == 0 {
        // A single vertex: no edges, no faces.
        return Ok(OuterplanarEmbedding {
            rotation,
            outer_face: Vec::new(),
            inner_faces: Vec::new(),
        });
    }
    let faces = trace_faces(&rotation);
    // The outer face is one whose boundary walk visits every vertex.
    let mut outer_idx = None;
    for (i, face) in faces.iter().enumerate() {
        let verts: BTreeSet<usize> = face.iter().map(|&(a, _)| a).collect();
        if verts.len() == n {
            outer_idx = Some(i);
            break;
        }
    }
    let outer_idx = outer_idx.expect("outerplanar embedding must have a face seeing all vertices");
    let mut inner_faces = faces;
    let outer_face = inner_faces.remove(outer_idx);
    Ok(OuterplanarEmbedding {
        rotation,
        outer_face,
        inner_faces,
    })
}
