//! Triangle layouts for connected outerplanar graphs.
//!
//! The construction works in two stages:
//!
//! 1. [`peel_order`] repeatedly removes an "ear" from the graph — an inner
//!    face attached to the rest along a single edge or a single vertex, or a
//!    pendant vertex — recording each removed chain and its attachment.
//!    Reversing that sequence gives an insertion order in which every chain
//!    attaches to triangles that are already placed.
//! 2. [`build_outerplanar`] replays the insertion order geometrically. It
//!    maintains an *envelope*: an x-monotone polyline of exposed triangle
//!    sides, one or more segments per placed vertex, below which all placed
//!    triangles live. Every junction between consecutive envelope segments
//!    is a strict left (valley) turn, except at the apexes of triangles
//!    erected for single-vertex attachments, which are strict right (peak)
//!    turns. Chains are inserted as fans of triangles into a valley whose
//!    two segments belong to the attachment vertices; single-vertex
//!    attachments erect a triangle on the middle of one of the attachment
//!    vertex's segments, creating two fresh valleys.
//!
//! All coordinates are exact rationals, so every contact decision made here
//! is later re-checkable by the exact oracle with zero tolerance.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::contact::Layout;
use crate::geom::{midpoint, ri, rq, Point, Rat, Triangle, Vec2};
use crate::graph::planarity::{outerplanar_embedding, OuterplanarEmbedding, OuterplanarityError};
use crate::graph::Graph;

/// One group of a peel order: a chain of vertices forming a path, plus the
/// pair of previously placed vertices it attaches to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelGroup {
    pub chain: Vec<usize>,
    /// `(v_l, v_r)` attachment endpoints. `None` for the first group.
    /// `v_l == v_r` for chains that attach through a single vertex
    /// (pendant vertices and faces meeting the placed part only there).
    pub attach: Option<(usize, usize)>,
}

/// The insertion order replayed by the builder. The first group is a face
/// cycle (when the graph has inner faces) or a single edge / vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelOrder {
    pub groups: Vec<PeelGroup>,
}

/// Reconstruct the edge set described by a peel order.
///
/// The first group contributes its path edges, closed into a cycle when it
/// has three or more vertices. Every other group contributes its path edges
/// plus the two attachment edges (which coincide for single-vertex chains
/// with `v_l == v_r`).
pub fn replay_graph(po: &PeelOrder, n: usize) -> Result<Graph, crate::graph::GraphError> {
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut add = |a: usize, b: usize| {
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    };
    for (gi, group) in po.groups.iter().enumerate() {
        for w in group.chain.windows(2) {
            add(w[0], w[1]);
        }
        match group.attach {
            None => {
                if gi == 0 && group.chain.len() >= 3 {
                    add(group.chain[group.chain.len() - 1], group.chain[0]);
                }
            }
            Some((vl, vr)) => {
                add(vl, group.chain[0]);
                add(group.chain[group.chain.len() - 1], vr);
            }
        }
    }
    Graph::from_edges(n, &edges.into_iter().collect::<Vec<_>>())
}

/// Compute a peel order for a connected outerplanar graph.
///
/// Repeatedly removes, among the currently removable pieces, the one whose
/// chain contains the smallest vertex id:
///
/// * an inner face sharing exactly one edge with the other remaining inner
///   faces, all of whose non-shared vertices have remaining degree 2
///   (removes the path between the shared edge's endpoints);
/// * an inner face sharing no edge, with exactly one vertex of remaining
///   degree above 2 (removes the cycle minus that vertex);
/// * a pendant vertex.
///
/// One *root face* with at least one private edge (an edge on no other inner
/// face) is chosen up front and never peeled; it becomes the first group,
/// rotated so its first two vertices span a private edge. Graphs without
/// inner faces (trees) peel down to a single edge or a single vertex.
pub fn peel_order(g: &Graph, emb: &OuterplanarEmbedding) -> PeelOrder {
    let n = g.n();
    if n == 0 {
        return PeelOrder { groups: Vec::new() };
    }
    // Inner faces as simple vertex cycles.
    let faces: Vec<Vec<usize>> = emb
        .inner_faces
        .iter()
        .map(|f| f.iter().map(|&(a, _)| a).collect::<Vec<usize>>())
        .collect();
    for f in &faces {
        let distinct: BTreeSet<usize> = f.iter().copied().collect();
        assert_eq!(
            distinct.len(),
            f.len(),
            "inner faces of an outerplanar embedding are simple cycles"
        );
    }
    let norm = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut edge_faces: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for i in 0..f.len() {
            let e = norm(f[i], f[(i + 1) % f.len()]);
            edge_faces.entry(e).or_default().push(fi);
        }
    }
    let mut vfaces: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (fi, f) in faces.iter().enumerate() {
        for &v in f {
            vfaces[v].push(fi);
        }
    }

    // Root face: among faces with a private edge, smallest min vertex, then
    // smallest face id. `None` for trees.
    let mut root: Option<usize> = None;
    for (fi, f) in faces.iter().enumerate() {
        let has_private =
            (0..f.len()).any(|i| edge_faces[&norm(f[i], f[(i + 1) % f.len()])].len() == 1);
        if !has_private {
            continue;
        }
        let key = f.iter().min().copied().unwrap();
        let better = match root {
            None => true,
            Some(r) => {
                let rkey = faces[r].iter().min().copied().unwrap();
                (key, fi) < (rkey, r)
            }
        };
        if better {
            root = Some(fi);
        }
    }
    assert!(
        faces.is_empty() || root.is_some(),
        "every nonempty set of inner faces has a face with a private edge"
    );

    // Mutable peeling state.
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive_v = vec![true; n];
    let mut alive_vcount = n;
    let mut face_alive = vec![true; faces.len()];
    let mut alive_fcount = faces.len();
    // Per face: how many of its edges are shared with another alive face,
    // and which; how many of its vertices have remaining degree >= 3.
    let mut shared: Vec<BTreeSet<(usize, usize)>> = vec![BTreeSet::new(); faces.len()];
    for (e, fs) in &edge_faces {
        if fs.len() == 2 {
            shared[fs[0]].insert(*e);
            shared[fs[1]].insert(*e);
        }
    }
    let mut high_cnt: Vec<usize> = faces
        .iter()
        .map(|f| f.iter().filter(|&&v| deg[v] >= 3).count())
        .collect();

    // Candidate kinds: 0 = pendant vertex, 1 = face by edge, 2 = face by
    // vertex. Entries are revalidated when popped; stale ones are dropped.
    const PENDANT: u8 = 0;
    const FACE_EDGE: u8 = 1;
    const FACE_VERTEX: u8 = 2;
    let mut cand: BTreeSet<(usize, u8, usize)> = BTreeSet::new();

    // Current candidacy of a face, if any: (key, kind, chain, vl, vr).
    let face_candidacy = |fi: usize,
                          faces: &[Vec<usize>],
                          shared: &[BTreeSet<(usize, usize)>],
                          high_cnt: &[usize],
                          deg: &[usize]|
     -> Option<(usize, u8, Vec<usize>, usize, usize)> {
        let f = &faces[fi];
        let k = f.len();
        match shared[fi].len() {
            1 => {
                let &(a, b) = shared[fi].iter().next().unwrap();
                let allowed = usize::from(deg[a] >= 3) + usize::from(deg[b] >= 3);
                if high_cnt[fi] != allowed {
                    return None;
                }
                // Locate the shared edge as consecutive cycle entries u, v;
                // the chain runs from the vertex after v around to the
                // vertex before u, attaching as (v, u).
                let i = (0..k)
                    .find(|&i| norm(f[i], f[(i + 1) % k]) == (a, b))
                    .expect("shared edge lies on the face");
                let chain: Vec<usize> = (2..k).map(|d| f[(i + d) % k]).collect();
                let key = chain.iter().min().copied().unwrap();
                Some((key, FACE_EDGE, chain, f[(i + 1) % k], f[i]))
            }
            0 => {
                if high_cnt[fi] != 1 {
                    return None;
                }
                let i = (0..k).find(|&i| deg[f[i]] >= 3).unwrap();
                let w = f[i];
                let chain: Vec<usize> = (1..k).map(|d| f[(i + d) % k]).collect();
                let key = chain.iter().min().copied().unwrap();
                Some((key, FACE_VERTEX, chain, w, w))
            }
            _ => None,
        }
    };

    // Seed the candidate set.
    for fi in 0..faces.len() {
        if Some(fi) == root {
            continue;
        }
        if let Some((key, kind, ..)) = face_candidacy(fi, &faces, &shared, &high_cnt, &deg) {
            cand.insert((key, kind, fi));
        }
    }
    for v in 0..n {
        if deg[v] == 1 {
            cand.insert((v, PENDANT, v));
        }
    }

    let mut peeled: Vec<PeelGroup> = Vec::new();

    loop {
        // Stop states: only the root face (all degree 2) remains, or — for
        // trees — at most two vertices remain.
        match root {
            Some(r) => {
                if alive_fcount == 1
                    && alive_vcount == faces[r].len()
                    && faces[r].iter().all(|&v| alive_v[v] && deg[v] == 2)
                {
                    break;
                }
            }
            None => {
                if alive_vcount <= 2 {
                    break;
                }
            }
        }

        let entry = *cand
            .iter()
            .next()
            .expect("a connected outerplanar graph always has a removable piece");
        cand.remove(&entry);
        let (key, kind, id) = entry;

        // Revalidate; drop stale entries (fresh ones were inserted by the
        // events that changed the state).
        let action: Option<(Vec<usize>, usize, usize, Option<usize>)> = match kind {
            PENDANT => {
                if alive_v[id] && deg[id] == 1 {
                    let w = g
                        .neighbors(id)
                        .find(|&w| alive_v[w])
                        .expect("pendant vertex has its one neighbor alive");
                    Some((vec![id], w, w, None))
                } else {
                    None
                }
            }
            _ => {
                if face_alive[id] && Some(id) != root {
                    match face_candidacy(id, &faces, &shared, &high_cnt, &deg) {
                        Some((k2, kind2, chain, vl, vr)) if (k2, kind2) == (key, kind) => {
                            Some((chain, vl, vr, Some(id)))
                        }
                        _ => None,
                    }
                } else {
                    None
                }
            }
        };
        let Some((chain, vl, vr, face_id)) = action else {
            continue;
        };

        // Execute the removal and propagate events.
        let deg_drop = |v: usize,
                        by: usize,
                        deg: &mut Vec<usize>,
                        high_cnt: &mut Vec<usize>,
                        cand: &mut BTreeSet<(usize, u8, usize)>,
                        face_alive: &[bool]| {
            let before = deg[v];
            deg[v] -= by;
            if before >= 3 && deg[v] <= 2 {
                for &fj in &vfaces[v] {
                    if face_alive[fj] && Some(fj) != root {
                        high_cnt[fj] -= 1;
                        if let Some((k2, kind2, ..)) =
                            face_candidacy(fj, &faces, &shared, high_cnt, deg)
                        {
                            cand.insert((k2, kind2, fj));
                        }
                    } else if face_alive[fj] {
                        high_cnt[fj] -= 1;
                    }
                }
            }
            if deg[v] == 1 {
                cand.insert((v, PENDANT, v));
            }
        };

        match face_id {
            None => {
                // Pendant vertex removal.
                let v = chain[0];
                alive_v[v] = false;
                alive_vcount -= 1;
                deg[v] = 0;
                deg_drop(vl, 1, &mut deg, &mut high_cnt, &mut cand, &face_alive);
            }
            Some(fi) => {
                for &v in &chain {
                    alive_v[v] = false;
                    alive_vcount -= 1;
                    deg[v] = 0;
                }
                face_alive[fi] = false;
                alive_fcount -= 1;
                if vl == vr {
                    // Face attached through one vertex: it loses both of its
                    // cycle edges at that vertex.
                    deg_drop(vl, 2, &mut deg, &mut high_cnt, &mut cand, &face_alive);
                } else {
                    deg_drop(vl, 1, &mut deg, &mut high_cnt, &mut cand, &face_alive);
                    deg_drop(vr, 1, &mut deg, &mut high_cnt, &mut cand, &face_alive);
                    // The face across the (still present) shared edge loses
                    // a shared-edge partner.
                    let e = norm(vl, vr);
                    for &fj in &edge_faces[&e] {
                        if fj != fi && face_alive[fj] {
                            shared[fj].remove(&e);
                            if Some(fj) != root {
                                if let Some((k2, kind2, ..)) =
                                    face_candidacy(fj, &faces, &shared, &high_cnt, &deg)
                                {
                                    cand.insert((k2, kind2, fj));
                                }
                            }
                        }
                    }
                }
                peeled.push(PeelGroup {
                    chain,
                    attach: Some((vl, vr)),
                });
                continue;
            }
        }
        peeled.push(PeelGroup {
            chain,
            attach: Some((vl, vr)),
        });
    }

    // First group: the root face rotated onto a private edge, or what is
    // left of the tree.
    let first = match root {
        Some(r) => {
            let f = &faces[r];
            let k = f.len();
            let mut best: Option<usize> = None;
            for i in 0..k {
                if edge_faces[&norm(f[i], f[(i + 1) % k])].len() == 1 {
                    let better = match best {
                        None => true,
                        Some(b) => f[i] < f[b],
                    };
                    if better {
                        best = Some(i);
                    }
                }
            }
            let i = best.expect("root face has a private edge");
            let chain: Vec<usize> = (0..k).map(|d| f[(i + d) % k]).collect();
            PeelGroup {
                chain,
                attach: None,
            }
        }
        None => {
            let mut rest: Vec<usize> = (0..n).filter(|&v| alive_v[v]).collect();
            rest.sort_unstable();
            PeelGroup {
                chain: rest,
                attach: None,
            }
        }
    };

    let mut groups = Vec::with_capacity(peeled.len() + 1);
    groups.push(first);
    groups.extend(peeled.into_iter().rev());
    PeelOrder { groups }
}

/// Why a layout could not be built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BuildError {
    NotConnected,
    NotOuterplanar,
    EmptyGraph,
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::NotConnected => write!(f, "graph is not connected"),
            BuildError::NotOuterplanar => write!(f, "graph is not outerplanar"),
            BuildError::EmptyGraph => write!(f, "graph has no vertices"),
        }
    }
}

impl core::error::Error for BuildError {}

impl From<OuterplanarityError> for BuildError {
    fn from(e: OuterplanarityError) -> BuildError {
        match e {
            OuterplanarityError::NotConnected => BuildError::NotConnected,
            OuterplanarityError::NotOuterplanar => BuildError::NotOuterplanar,
        }
    }
}

/// An exposed triangle side on the envelope.
#[derive(Clone, Debug)]
struct Seg {
    owner: usize,
    a: Point,
    b: Point,
    prev: Option<usize>,
    next: Option<usize>,
    /// The junction at this segment's right end is a peak (erected apex).
    peak_right: bool,
    /// Valley handles whose junction sits at this segment's right end.
    links_left: Vec<usize>,
}

/// A valley junction available for attachment: the point where `segs[left]`
/// meets its successor.
#[derive(Clone, Debug)]
struct Link {
    left: usize,
}

/// The geometric state of a build in progress.
pub struct EnvelopeState {
    segs: Vec<Seg>,
    links: Vec<Link>,
    /// Normalized edge -> valley handles usable to attach at that edge.
    registry: BTreeMap<(usize, usize), Vec<usize>>,
    by_owner: BTreeMap<usize, Vec<usize>>,
    leftmost: Option<usize>,
    pub layout: Layout,
}

/// A violated envelope invariant (returned by the checked build).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnvelopeViolation(pub &'static str, pub usize);

impl EnvelopeState {
    fn new() -> EnvelopeState {
        EnvelopeState {
            segs: Vec::new(),
            links: Vec::new(),
            registry: BTreeMap::new(),
            by_owner: BTreeMap::new(),
            leftmost: None,
            layout: Layout::new(),
        }
    }

    fn push_seg(&mut self, seg: Seg) -> usize {
        let id = self.segs.len();
        self.by_owner.entry(seg.owner).or_default().push(id);
        self.segs.push(seg);
        id
    }

    fn new_link(&mut self, left: usize, u: usize, v: usize) -> usize {
        let id = self.links.len();
        self.links.push(Link { left });
        self.segs[left].links_left.push(id);
        self.registry
            .entry((u.min(v), u.max(v)))
            .or_default()
            .push(id);
        id
    }

    fn place(&mut self, owner: usize, a: Point, b: Point, c: Point) {
        let t = Triangle::new(a, b, c).expect("construction places non-degenerate triangles");
        let prev = self.layout.triangles.insert(owner, t);
        assert!(prev.is_none(), "each vertex is placed exactly once");
    }

    /// First segment owned by `v`, used as the erect target.
    fn segment_of(&self, v: usize) -> usize {
        *self
            .by_owner
            .get(&v)
            .and_then(|ids| ids.first())
            .expect("attachment vertex owns an envelope segment")
    }

    /// Place the first one or two triangles.
    ///
    /// For a two-vertex seed, `left` and `right` share a full vertical side
    /// at the origin, their exposed sides forming a valley registered for
    /// the edge `(left, right)`. A single vertex gets one triangle whose two
    /// upper sides form a peak (like an erected apex).
    fn seed(&mut self, chain0: &[usize]) {
        match *chain0 {
            [v] => {
                self.place(v, Point::ints(-2, 0), Point::ints(2, 0), Point::ints(0, 1));
                let s1 = self.push_seg(Seg {
                    owner: v,
                    a: Point::ints(-2, 0),
                    b: Point::ints(0, 1),
                    prev: None,
                    next: None,
                    peak_right: true,
                    links_left: Vec::new(),
                });
                let s2 = self.push_seg(Seg {
                    owner: v,
                    a: Point::ints(0, 1),
                    b: Point::ints(2, 0),
                    prev: Some(s1),
                    next: None,
                    peak_right: false,
                    links_left: Vec::new(),
                });
                self.segs[s1].next = Some(s2);
                self.leftmost = Some(s1);
            }
            [right, left, ..] => {
                // Exposed sides [(-2,1) -> (0,0)] for `left` and
                // [(0,0) -> (2,1)] for `right`; shared vertical side below.
                self.place(
                    left,
                    Point::ints(0, -2),
                    Point::ints(0, 0),
                    Point::ints(-2, 1),
                );
                self.place(
                    right,
                    Point::ints(0, 0),
                    Point::ints(0, -2),
                    Point::ints(2, 1),
                );
                let s1 = self.push_seg(Seg {
                    owner: left,
                    a: Point::ints(-2, 1),
                    b: Point::ints(0, 0),
                    prev: None,
                    next: None,
                    peak_right: false,
                    links_left: Vec::new(),
                });
                let s2 = self.push_seg(Seg {
                    owner: right,
                    a: Point::ints(0, 0),
                    b: Point::ints(2, 1),
                    prev: Some(s1),
                    next: None,
                    peak_right: false,
                    links_left: Vec::new(),
                });
                self.segs[s1].next = Some(s2);
                self.leftmost = Some(s1);
                self.new_link(s1, left, right);
            }
            [] => unreachable!("seed chain is nonempty"),
        }
    }

    /// Take one registered valley handle for the edge `(u, v)`.
    fn pop_link(&mut self, u: usize, v: usize) -> usize {
        let key = (u.min(v), u.max(v));
        let ids = self
            .registry
            .get_mut(&key)
            .unwrap_or_else(|| panic!("peel order violated: no open valley for edge ({u}, {v})"));
        let id = ids.remove(0);
        if ids.is_empty() {
            self.registry.remove(&key);
        }
        id
    }

    /// Remove a specific valley handle from the registry.
    fn take_link(&mut self, link_id: usize, u: usize, v: usize) {
        let key = (u.min(v), u.max(v));
        let ids = self.registry.get_mut(&key).expect("link is registered");
        let pos = ids
            .iter()
            .position(|&l| l == link_id)
            .expect("link is registered");
        ids.remove(pos);
        if ids.is_empty() {
            self.registry.remove(&key);
        }
    }

    /// Insert a fan of `chain.len()` triangles into the valley `link_id`.
    ///
    /// The valley point `p` is the common apex. The two outermost triangles
    /// touch the upper halves of the valley's two segments (midpoint rule);
    /// consecutive fan triangles share their full apex-to-corner sides. The
    /// fan's outer corners lie on a strictly concave arc sagging from the
    /// chord between the two midpoints towards `p`, so every junction the
    /// fan adds to the envelope is again a strict valley.
    fn fan(&mut self, link_id: usize, chain: &[usize]) {
        let xi = self.links[link_id].left;
        let yi = self.segs[xi].next.expect("valley has a right segment");
        assert!(
            !self.segs[xi].peak_right,
            "registered links always sit at valleys"
        );
        let vr = self.segs[yi].owner;
        let a = self.segs[xi].a.clone();
        let p = self.segs[xi].b.clone();
        let b = self.segs[yi].b.clone();
        debug_assert_eq!(p, self.segs[yi].a);
        let ml = midpoint(&a, &p);
        let mr = midpoint(&p, &b);

        let c = chain.len();
        // Outer corners: quadratic interpolation between ml, p, mr at
        // strictly increasing dyadic parameters (denominator the smallest
        // power of two >= c keeps coordinate growth modest).
        let mut den: i64 = 1;
        while (den as usize) < c {
            den *= 2;
        }
        let mut corners: Vec<Point> = Vec::with_capacity(c + 1);
        corners.push(ml.clone());
        for i in 1..c {
            let t = rq(i as i64, den);
            let omt = ri(1) - t.clone();
            let w0 = omt.clone() * omt.clone();
            let w1 = ri(2) * t.clone() * omt;
            let w2 = t.clone() * t;
            corners.push(Point::new(
                w0.clone() * ml.x.clone() + w1.clone() * p.x.clone() + w2.clone() * mr.x.clone(),
                w0 * ml.y.clone() + w1 * p.y.clone() + w2 * mr.y.clone(),
            ));
        }
        corners.push(mr.clone());

        // Truncate the flanks to their outer halves. The caller already
        // removed the consumed link from the registry.
        self.segs[xi].b = ml.clone();
        self.segs[yi].a = mr.clone();
        let pos = self.segs[xi].links_left.iter().position(|&l| l == link_id);
        self.segs[xi]
            .links_left
            .remove(pos.expect("consumed link sat on the left flank"));

        // Place fan triangles and stitch their exposed sides in.
        let mut prev_seg = xi;
        for (i, &w) in chain.iter().enumerate() {
            self.place(w, corners[i].clone(), p.clone(), corners[i + 1].clone());
            let sid = self.push_seg(Seg {
                owner: w,
                a: corners[i].clone(),
                b: corners[i + 1].clone(),
                prev: Some(prev_seg),
                next: None,
                peak_right: false,
                links_left: Vec::new(),
            });
            self.segs[prev_seg].next = Some(sid);
            let left_owner = self.segs[prev_seg].owner;
            self.new_link(prev_seg, left_owner, w);
            prev_seg = sid;
        }
        self.segs[prev_seg].next = Some(yi);
        self.segs[yi].prev = Some(prev_seg);
        self.new_link(prev_seg, *chain.last().unwrap(), vr);
    }

    /// Erect a triangle for `w` on the middle of segment `seg_id` (owner
    /// `u`), realizing the contact `(u, w)`.
    ///
    /// The base spans the 3/8..5/8 portion of the segment; the apex pokes
    /// into the empty space above it, displaced little enough that both new
    /// sides still advance in x. Returns the two fresh valley handles
    /// registered for the edge `(u, w)` (left of the base, right of the
    /// base).
    fn erect(&mut self, seg_id: usize, w: usize) -> (usize, usize) {
        let u = self.segs[seg_id].owner;
        let alpha = self.segs[seg_id].a.clone();
        let beta = self.segs[seg_id].b.clone();
        let e = alpha.to(&beta);
        let s = Point::new(
            alpha.x.clone() + rq(3, 8) * e.x.clone(),
            alpha.y.clone() + rq(3, 8) * e.y.clone(),
        );
        let t = Point::new(
            alpha.x.clone() + rq(5, 8) * e.x.clone(),
            alpha.y.clone() + rq(5, 8) * e.y.clone(),
        );
        // Apex above the base midpoint. The x-offset of the perpendicular
        // is -eps*ey; keeping |eps*ey| below ex/8 (half the base-to-midpoint
        // x-gap) preserves strict x-monotonicity on both new sides. Halving
        // down to a power of two (rather than taking the quotient ex/ey
        // itself) keeps every coordinate dyadic, so bit growth stays
        // additive per insertion instead of compounding.
        let eps = {
            let mut eps = rq(1, 2);
            if e.y != ri(0) {
                let bound = e.x.clone() / ri(16);
                let ey = abs(&e.y);
                while eps.clone() * ey.clone() > bound {
                    eps /= ri(2);
                }
            }
            eps
        };
        let mid = midpoint(&s, &t);
        let up = Vec2::new(-e.y.clone(), e.x.clone());
        let apex = Point::new(mid.x + eps.clone() * up.x, mid.y + eps * up.y);
        self.place(w, s.clone(), t.clone(), apex.clone());

        // Split the segment: [alpha, s] keeps the id (valleys at its left
        // end stay valid), then the two new sides of w, then [t, beta]
        // which inherits the junction (and any valley handles) at beta.
        let old_next = self.segs[seg_id].next;
        let old_peak = self.segs[seg_id].peak_right;
        let moved_links = core::mem::take(&mut self.segs[seg_id].links_left);
        self.segs[seg_id].b = s.clone();
        self.segs[seg_id].peak_right = false;
        let lslant = self.push_seg(Seg {
            owner: w,
            a: s,
            b: apex.clone(),
            prev: Some(seg_id),
            next: None,
            peak_right: true,
            links_left: Vec::new(),
        });
        let rslant = self.push_seg(Seg {
            owner: w,
            a: apex,
            b: t.clone(),
            prev: Some(lslant),
            next: None,
            peak_right: false,
            links_left: Vec::new(),
        });
        let rem = self.push_seg(Seg {
            owner: u,
            a: t,
            b: beta,
            prev: Some(rslant),
            next: old_next,
            peak_right: old_peak,
            links_left: moved_links,
        });
        self.segs[seg_id].next = Some(lslant);
        self.segs[lslant].next = Some(rslant);
        self.segs[rslant].next = Some(rem);
        if let Some(nx) = old_next {
            self.segs[nx].prev = Some(rem);
        }
        for &l in &self.segs[rem].links_left.clone() {
            self.links[l].left = rem;
        }
        let s_link = self.new_link(seg_id, u, w);
        let t_link = self.new_link(rslant, u, w);
        (s_link, t_link)
    }

    /// Insert a chain attaching at `(vl, vr)`: a fan into the open valley
    /// for that edge, or — when `vl == vr` — an erected triangle on one of
    /// `vl`'s segments followed by a fan into the erect's right valley.
    pub fn insert_chain(&mut self, chain: &[usize], vl: usize, vr: usize) {
        assert!(!chain.is_empty(), "chains are nonempty");
        if vl == vr {
            let target = self.segment_of(vl);
            let (_s_link, t_link) = self.erect(target, chain[0]);
            if chain.len() > 1 {
                self.take_link(t_link, vl, chain[0]);
                self.fan(t_link, &chain[1..]);
            }
        } else {
            let link = self.pop_link(vl, vr);
            self.fan(link, chain);
        }
    }

    /// Check every envelope invariant; returns all violations.
    ///
    /// * consecutive segments share an endpoint;
    /// * every segment advances strictly in x;
    /// * every junction is a strict valley (left turn), except junctions
    ///   flagged as erected apexes, which must be strict peaks;
    /// * every placed vertex owns at least one envelope segment.
    pub fn check_invariants(&self) -> Vec<EnvelopeViolation> {
        let mut out = Vec::new();
        let Some(mut cur) = self.leftmost else {
            if !self.layout.is_empty() {
                out.push(EnvelopeViolation("nonempty layout has an envelope", 0));
            }
            return out;
        };
        loop {
            let seg = &self.segs[cur];
            if seg.a.x >= seg.b.x {
                out.push(EnvelopeViolation("segment advances in x", cur));
            }
            let Some(nx) = seg.next else { break };
            let nseg = &self.segs[nx];
            if seg.b != nseg.a {
                out.push(EnvelopeViolation("consecutive segments share a point", cur));
            }
            let turn = seg.a.to(&seg.b).cross(&nseg.a.to(&nseg.b));
            let sign = crate::geom::sign(&turn);
            if seg.peak_right {
                if sign != -1 {
                    out.push(EnvelopeViolation("erected apex is a strict peak", cur));
                }
            } else if sign != 1 {
                out.push(EnvelopeViolation("junction is a strict valley", cur));
            }
            cur = nx;
        }
        for &v in self.layout.triangles.keys() {
            if !self.by_owner.contains_key(&v) {
                out.push(EnvelopeViolation("placed vertex owns a segment", v));
            }
        }
        out
    }
}

fn abs(r: &Rat) -> Rat {
    if crate::geom::sign(r) < 0 {
        -r.clone()
    } else {
        r.clone()
    }
}

/// Replay a peel order geometrically.
///
/// `check_each_step` runs the full envelope invariant check after every
/// insertion, pushing any violations into `violations` (the checked build
/// used by the test suite; the plain build skips it to stay near-linear).
fn replay(
    po: &PeelOrder,
    check_each_step: bool,
    violations: &mut Vec<EnvelopeViolation>,
) -> Layout {
    let mut env = EnvelopeState::new();
    for (gi, group) in po.groups.iter().enumerate() {
        if gi == 0 {
            env.seed(&group.chain);
            if group.chain.len() >= 3 {
                // The rest of the root face fans into the seed valley.
                env.insert_chain(&group.chain[2..], group.chain[1], group.chain[0]);
            }
        } else {
            let (vl, vr) = group.attach.expect("non-first groups carry attachments");
            env.insert_chain(&group.chain, vl, vr);
        }
        if check_each_step {
            violations.extend(env.check_invariants());
        }
    }
    env.layout
}

/// Build a touching-triangle layout for a connected outerplanar graph.
///
/// The resulting layout's contact graph equals `g` exactly (one triangle
/// per vertex; an overlap of positive length exactly for each edge); the
/// test suite re-verifies this with the exact oracle.
pub fn build_outerplanar(g: &Graph) -> Result<Layout, BuildError> {
    if g.n() == 0 {
        return Err(BuildError::EmptyGraph);
    }
    let emb = outerplanar_embedding(g)?;
    let po = peel_order(g, &emb);
    let mut sink = Vec::new();
    Ok(replay(&po, false, &mut sink))
}

/// As [`build_outerplanar`], but additionally runs the full envelope
/// invariant check after every insertion and reports any violations
/// (an empty list is the expected outcome).
pub fn build_outerplanar_checked(
    g: &Graph,
) -> Result<(Layout, Vec<EnvelopeViolation>), BuildError> {
    if g.n() == 0 {
        return Err(BuildError::EmptyGraph);
    }
    let emb = outerplanar_embedding(g)?;
    let po = peel_order(g, &emb);
    let mut violations = Vec::new();
    let layout = replay(&po, true, &mut violations);
    Ok((layout, violations))
}
