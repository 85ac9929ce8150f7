//! Contact analysis of triangle layouts.
//!
//! This is the crate's universal oracle: every builder's output is checked
//! here. [`contact_graph`] finds which triangles touch along positive-length
//! segments, [`validate`] compares that contact graph edge for edge against a
//! target graph, and [`classify_triangulation`] decides whether a layout is a
//! triangulation (no triangle corner inside another triangle's side) and
//! whether its union is additionally a single hole-free disk (a *filled*
//! triangulation).
//!
//! All decisions are exact; there are no tolerances anywhere.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::geom::{
    point_in_open_segment, segment_overlap, triangles_interiors_disjoint, Point, Rat, Triangle,
};
use crate::graph::Graph;

/// A placed triangle per vertex id.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Layout {
    pub triangles: BTreeMap<usize, Triangle>,
}

impl Layout {
    pub fn new() -> Layout {
        Layout::default()
    }

    pub fn insert(&mut self, vertex: usize, t: Triangle) {
        self.triangles.insert(vertex, t);
    }

    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }
}

/// Where two placed triangles touch along a positive-length segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactEvidence {
    /// Side index (0..3) of the lower-id triangle.
    pub side_u: usize,
    /// Side index (0..3) of the higher-id triangle.
    pub side_v: usize,
    /// Endpoints of the shared sub-segment.
    pub overlap: (Point, Point),
}

/// Everything one oracle pass finds in a layout.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ContactReport {
    /// Realized edges, each as `(u, v)` with `u < v`.
    pub edges: BTreeSet<(usize, usize)>,
    /// For every realized edge: which sides overlap and along which segment.
    pub evidence: BTreeMap<(usize, usize), ContactEvidence>,
    /// Pairs whose interiors intersect. These invalidate the layout.
    pub interior_overlaps: Vec<(usize, usize)>,
    /// Pairs meeting at exactly one point: noted, harmless, never an edge.
    pub point_contacts: Vec<(usize, usize, Point)>,
}

/// Two interior-disjoint triangles that share no segment can still meet at a
/// single point; such a point is always a corner of at least one of them.
fn single_point_contact(tu: &Triangle, tv: &Triangle) -> Option<Point> {
    for p in tu.vertices() {
        if tv.boundary_contains(p) {
            return Some(p.clone());
        }
    }
    for p in tv.vertices() {
        if tu.boundary_contains(p) {
            return Some(p.clone());
        }
    }
    None
}

struct BBox {
    min_x: Rat,
    max_x: Rat,
    min_y: Rat,
    max_y: Rat,
}

fn bounding_box(t: &Triangle) -> BBox {
    let vs = t.vertices();
    let mut b = BBox {
        min_x: vs[0].x.clone(),
        max_x: vs[0].x.clone(),
        min_y: vs[0].y.clone(),
        max_y: vs[0].y.clone(),
    };
    for p in &vs[1..] {
        if p.x < b.min_x {
            b.min_x = p.x.clone();
        }
        if p.x > b.max_x {
            b.max_x = p.x.clone();
        }
        if p.y < b.min_y {
            b.min_y = p.y.clone();
        }
        if p.y > b.max_y {
            b.max_y = p.y.clone();
        }
    }
    b
}

fn boxes_strictly_apart(a: &BBox, b: &BBox) -> bool {
    a.max_x < b.min_x || b.max_x < a.min_x || a.max_y < b.min_y || b.max_y < a.min_y
}

/// Compute the contact graph of a layout.
///
/// An edge `(u, v)` is reported exactly when a side of `u`'s triangle and a
/// side of `v`'s triangle overlap along a segment of positive length.
/// Interior overlaps and single-point contacts never produce edges; they are
/// reported in the corresponding lists instead of being thrown.
pub fn contact_graph(layout: &Layout) -> ContactReport {
    let ids: Vec<usize> = layout.triangles.keys().copied().collect();
    let boxes: Vec<_> = ids
        .iter()
        .map(|v| bounding_box(&layout.triangles[v]))
        .collect();
    let mut report = ContactReport::default();
    for (i, &u) in ids.iter().enumerate() {
        for (jv, &v) in ids.iter().enumerate().skip(i + 1) {
            // Strictly separated bounding boxes rule out every kind of
            // interaction, including single-point touches.
            if boxes_strictly_apart(&boxes[i], &boxes[jv]) {
                continue;
            }
            let tu = &layout.triangles[&u];
            let tv = &layout.triangles[&v];
            if !triangles_interiors_disjoint(tu, tv) {
                report.interior_overlaps.push((u, v));
                continue;
            }
            // Two interior-disjoint convex shapes intersect in a convex set,
            // so at most one side pair can overlap with positive length.
            let mut found = None;
            'pairs: for su in 0..3 {
                for sv in 0..3 {
                    let (a1, b1) = tu.side(su);
                    let (a2, b2) = tv.side(sv);
                    if let Some(seg) = segment_overlap(a1, b1, a2, b2) {
                        found = Some(ContactEvidence {
                            side_u: su,
                            side_v: sv,
                            overlap: seg,
                        });
                        break 'pairs;
                    }
                }
            }
            match found {
                Some(ev) => {
                    report.edges.insert((u, v));
                    report.evidence.insert((u, v), ev);
                }
                None => {
                    if let Some(p) = single_point_contact(tu, tv) {
                        report.point_contacts.push((u, v, p));
                    }
                }
            }
        }
    }
    report
}

/// The exact differences between a layout's contact graph and a target graph.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ValidationReport {
    /// Target vertices with no triangle.
    pub missing_vertices: Vec<usize>,
    /// Triangle keys that are not target vertices.
    pub extra_vertices: Vec<usize>,
    /// Target edges not realized by any contact.
    pub missing_edges: Vec<(usize, usize)>,
    /// Realized contacts not present in the target.
    pub extra_edges: Vec<(usize, usize)>,
    /// Pairs of triangles whose interiors intersect.
    pub interior_overlaps: Vec<(usize, usize)>,
}

impl ValidationReport {
    /// True when the layout realizes the graph exactly: triangle keys and
    /// graph vertices in bijection, contact edges equal to graph edges, and
    /// all interiors pairwise disjoint.
    pub fn passed(&self) -> bool {
        self.missing_vertices.is_empty()
            && self.extra_vertices.is_empty()
            && self.missing_edges.is_empty()
            && self.extra_edges.is_empty()
            && self.interior_overlaps.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "layout matches the graph exactly");
        }
        let mut first = true;
        let mut section = |f: &mut fmt::Formatter<'_>, label: &str| -> fmt::Result {
            if !first {
                writeln!(f)?;
            }
            first = false;
            write!(f, "{label}: ")
        };
        if !self.missing_vertices.is_empty() {
            section(f, "missing vertices")?;
            write!(f, "{:?}", self.missing_vertices)?;
        }
        if !self.extra_vertices.is_empty() {
            section(f, "extra vertices")?;
            write!(f, "{:?}", self.extra_vertices)?;
        }
        if !self.missing_edges.is_empty() {
            section(f, "missing edges")?;
            write!(f, "{:?}", self.missing_edges)?;
        }
        if !self.extra_edges.is_empty() {
            section(f, "extra edges")?;
            write!(f, "{:?}", self.extra_edges)?;
        }
        if !self.interior_overlaps.is_empty() {
            section(f, "interior overlaps")?;
            write!(f, "{:?}", self.interior_overlaps)?;
        }
        Ok(())
    }
}

/// Check a layout against a target graph.
///
/// Passes exactly when the triangle keys are the graph's vertices, the
/// contact edges equal the graph's edges, and no two interiors intersect.
pub fn validate(layout: &Layout, g: &Graph) -> ValidationReport {
    let report = contact_graph(layout);
    let mut out = ValidationReport::default();
    for v in 0..g.n() {
        if !layout.triangles.contains_key(&v) {
            out.missing_vertices.push(v);
        }
    }
    for &k in layout.triangles.keys() {
        if k >= g.n() {
            out.extra_vertices.push(k);
        }
    }
    let target: BTreeSet<(usize, usize)> = g.edges().into_iter().collect();
    for &e in &target {
        if !report.edges.contains(&e) {
            out.missing_edges.push(e);
        }
    }
    for &e in &report.edges {
        if !target.contains(&e) {
            out.extra_edges.push(e);
        }
    }
    out.interior_overlaps = report.interior_overlaps;
    out
}

/// How a layout relates to the triangulation classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TriangulationClass {
    /// Some triangle corner lies in the relative interior of another
    /// triangle's side, so some contact region is not a full corner-aligned
    /// segment.
    NotTriangulation,
    /// All contacts are corner-aligned, but the union of the triangles is
    /// not a single hole-free disk.
    Triangulation,
    /// Corner-aligned and the union is one simply connected region: the
    /// induced subdivision has one face per triangle plus a single outer
    /// face, and no pinch points.
    FilledTriangulation,
}

/// A layout with intersecting interiors cannot be classified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvalidLayout {
    pub u: usize,
    pub v: usize,
}

impl fmt::Display for InvalidLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "layout invalid: triangles {} and {} have overlapping interiors",
            self.u, self.v
        )
    }
}

impl core::error::Error for InvalidLayout {}

/// Classify a layout as (filled) triangulation or neither.
///
/// A layout is a triangulation when no triangle corner lies in the relative
/// interior of another triangle's side; all contacts are then exact
/// side-to-side matches. It is *filled* when additionally the union of the
/// triangles is a single disk without holes. Hole-freeness is decided by the
/// Euler count of the induced subdivision (`V - E + F = 2` with one face per
/// triangle plus one outer face), connectivity, and a pinch-point test at
/// every subdivision vertex.
pub fn classify_triangulation(layout: &Layout) -> Result<TriangulationClass, InvalidLayout> {
    let ids: Vec<usize> = layout.triangles.keys().copied().collect();
    for (i, &u) in ids.iter().enumerate() {
        for &v in &ids[i + 1..] {
            if !triangles_interiors_disjoint(&layout.triangles[&u], &layout.triangles[&v]) {
                return Err(InvalidLayout { u, v });
            }
        }
    }
    for &u in &ids {
        for &v in &ids {
            if u == v {
                continue;
            }
            let tu = &layout.triangles[&u];
            let tv = &layout.triangles[&v];
            for corner in tu.vertices() {
                for s in 0..3 {
                    let (a, b) = tv.side(s);
                    if point_in_open_segment(corner, a, b) {
                        return Ok(TriangulationClass::NotTriangulation);
                    }
                }
            }
        }
    }
    if union_is_disk(layout) {
        Ok(TriangulationClass::FilledTriangulation)
    } else {
        Ok(TriangulationClass::Triangulation)
    }
}

/// Decide whether the union of a corner-aligned layout is one hole-free disk.
///
/// Only meaningful after the corner-in-side test has passed: at that point
/// any two overlapping sides coincide exactly, so the induced subdivision is
/// simply the distinct corner points and distinct sides.
fn union_is_disk(layout: &Layout) -> bool {
    if layout.triangles.is_empty() {
        return false;
    }
    // Number the distinct corner points.
    let mut vid: BTreeMap<&Point, usize> = BTreeMap::new();
    for t in layout.triangles.values() {
        for p in t.vertices() {
            let next = vid.len();
            vid.entry(p).or_insert(next);
        }
    }
    // Distinct sides as unordered endpoint pairs.
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for t in layout.triangles.values() {
        for s in 0..3 {
            let (a, b) = t.side(s);
            let (ia, ib) = (vid[a], vid[b]);
            edges.insert((ia.min(ib), ia.max(ib)));
        }
    }
    // Connectivity of the subdivision graph.
    let nv = vid.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nv];
    for &(a, b) in &edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; nv];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut reached = 1;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                reached += 1;
                stack.push(y);
            }
        }
    }
    if reached != nv {
        return false;
    }
    // Euler count assuming one bounded face per triangle plus the outer
    // face; holes would add faces and break the count.
    if nv + layout.triangles.len() + 1 != edges.len() + 2 {
        return false;
    }
    // Pinch test: at every corner point the incident triangle wedges must
    // form one contiguous angular arc (boundary point) or the full circle
    // (interior point). Two or more arcs mean the union pinches there.
    let mut wedges: BTreeMap<usize, Vec<(Point, Point, Point)>> = BTreeMap::new();
    for t in layout.triangles.values() {
        let vs = t.vertices();
        for k in 0..3 {
            let p = &vs[k];
            let towards1 = vs[(k + 1) % 3].clone();
            let towards2 = vs[(k + 2) % 3].clone();
            wedges
                .entry(vid[p])
                .or_default()
                .push((p.clone(), towards1, towards2));
        }
    }
    for (_, mut ws) in wedges {
        // Sort wedges by the angle of their starting ray.
        ws.sort_by(|x, y| crate::geom::cmp_angle(&x.0.to(&x.1), &y.0.to(&y.1)));
        let k = ws.len();
        let mut gaps = 0;
        for i in 0..k {
            let end = ws[i].0.to(&ws[i].2);
            let next_start = ws[(i + 1) % k].0.to(&ws[(i + 1) % k].1);
            if crate::geom::cmp_angle(&end, &next_start) != core::cmp::Ordering::Equal {
                gaps += 1;
            }
        }
        if gaps > 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tri(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Triangle {
        Triangle::from_ints(a, b, c).unwrap()
    }

    /// Three triangles subdividing a big triangle at an interior point:
    /// every pair shares a full side, realizing K3 as a filled triangulation.
    fn k3_layout() -> Layout {
        let mut layout = Layout::new();
        layout.insert(0, tri((0, 0), (4, 0), (1, 1)));
        layout.insert(1, tri((4, 0), (0, 4), (1, 1)));
        layout.insert(2, tri((0, 4), (0, 0), (1, 1)));
        layout
    }

    #[test]
    fn shared_subsegment_is_one_edge() {
        let mut layout = Layout::new();
        layout.insert(0, tri((0, 0), (4, 0), (2, 2)));
        layout.insert(1, tri((1, 0), (3, 0), (2, -2)));
        let report = contact_graph(&layout);
        assert_eq!(
            report.edges.iter().copied().collect::<Vec<_>>(),
            vec![(0, 1)]
        );
        let ev = &report.evidence[&(0, 1)];
        assert_eq!(ev.overlap.0, Point::ints(1, 0));
        assert_eq!(ev.overlap.1, Point::ints(3, 0));
        assert!(report.interior_overlaps.is_empty());
        assert!(report.point_contacts.is_empty());
    }

    #[test]
    fn single_point_touch_is_not_an_edge() {
        let mut layout = Layout::new();
        layout.insert(0, tri((0, 0), (2, 0), (0, 2)));
        layout.insert(1, tri((2, 0), (4, 0), (4, 2)));
        let report = contact_graph(&layout);
        assert!(report.edges.is_empty());
        assert_eq!(report.point_contacts.len(), 1);
        assert_eq!(report.point_contacts[0].2, Point::ints(2, 0));
    }

    #[test]
    fn corner_on_side_interior_is_point_contact() {
        let mut layout = Layout::new();
        layout.insert(0, tri((0, 0), (4, 0), (2, 2)));
        layout.insert(1, tri((2, 0), (3, -2), (1, -2)));
        let report = contact_graph(&layout);
        assert!(report.edges.is_empty());
        assert_eq!(report.point_contacts.len(), 1);
    }

    #[test]
    fn interior_overlap_is_reported_not_thrown() {
        let mut layout = Layout::new();
        layout.insert(0, tri((0, 0), (4, 0), (0, 4)));
        layout.insert(1, tri((1, 1), (3, 1), (1, 3)));
        let report = contact_graph(&layout);
        assert!(report.edges.is_empty());
        assert_eq!(report.interior_overlaps, vec![(0, 1)]);
    }

    #[test]
    fn validate_k3_passes() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let outcome = validate(&k3_layout(), &g);
        assert!(outcome.passed(), "{outcome}");
    }

    #[test]
    fn validate_reports_exact_diff() {
        // Same layout, but the target now has a pendant vertex 3 and lacks
        // the (0, 2) edge.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let outcome = validate(&k3_layout(), &g);
        assert!(!outcome.passed());
        assert_eq!(outcome.missing_vertices, vec![3]);
        assert_eq!(outcome.missing_edges, vec![(2, 3)]);
        assert_eq!(outcome.extra_edges, vec![(0, 2)]);
        assert!(outcome.extra_vertices.is_empty());
        assert!(outcome.interior_overlaps.is_empty());
    }

    #[test]
    fn validate_rejects_overlapping_layout() {
        let mut layout = k3_layout();
        layout.insert(3, tri((0, 0), (2, 0), (1, 1)));
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let outcome = validate(&layout, &g);
        assert!(!outcome.passed());
        assert!(!outcome.interior_overlaps.is_empty());
        assert_eq!(outcome.extra_vertices, vec![3]);
    }

    #[test]
    fn classify_filled_triangulation() {
        assert_eq!(
            classify_triangulation(&k3_layout()),
            Ok(TriangulationClass::FilledTriangulation)
        );
    }

    #[test]
    fn classify_rejects_corner_in_side_interior() {
        // Two triangles forming a square, plus a third outside sharing only
        // half a side: its far corner splits the square's bottom side.
        let mut layout = Layout::new();
        layout.insert(0, tri((0, 0), (2, 0), (2, 2)));
        layout.insert(1, tri((0, 0), (2, 2), (0, 2)));
        layout.insert(2, tri((0, 0), (1, 0), (0, -2)));
        assert_eq!(
            classify_triangulation(&layout),
            Ok(TriangulationClass::NotTriangulation)
        );
    }

    #[test]
    fn classify_detects_pinch_point() {
        // Two triangles sharing exactly one corner: corner-aligned, so a
        // triangulation, but the union pinches at the shared corner.
        let mut layout = Layout::new();
        layout.insert(0, tri((0, 0), (2, 0), (0, 2)));
        layout.insert(1, tri((0, 0), (-2, 0), (0, -2)));
        assert_eq!(
            classify_triangulation(&layout),
            Ok(TriangulationClass::Triangulation)
        );
    }

    #[test]
    fn classify_detects_disconnection() {
        let mut layout = Layout::new();
        layout.insert(0, tri((0, 0), (2, 0), (0, 2)));
        layout.insert(1, tri((10, 0), (12, 0), (10, 2)));
        assert_eq!(
            classify_triangulation(&layout),
            Ok(TriangulationClass::Triangulation)
        );
    }

    #[test]
    fn classify_detects_hole() {
        // A square ring of eight triangles around a square hole. Every
        // contact is corner-aligned, but the Euler count exposes the hole.
        let mut layout = Layout::new();
        layout.insert(0, tri((0, 0), (4, 0), (3, 1)));
        layout.insert(1, tri((0, 0), (3, 1), (1, 1)));
        layout.insert(2, tri((4, 0), (4, 4), (3, 3)));
        layout.insert(3, tri((4, 0), (3, 3), (3, 1)));
        layout.insert(4, tri((4, 4), (0, 4), (1, 3)));
        layout.insert(5, tri((4, 4), (1, 3), (3, 3)));
        layout.insert(6, tri((0, 4), (0, 0), (1, 1)));
        layout.insert(7, tri((0, 4), (1, 1), (1, 3)));
        assert_eq!(
            classify_triangulation(&layout),
            Ok(TriangulationClass::Triangulation)
        );
        // Filling the hole turns the ring into a disk.
        let mut filled = layout.clone();
        filled.insert(8, tri((1, 1), (3, 1), (3, 3)));
        filled.insert(9, tri((1, 1), (3, 3), (1, 3)));
        assert_eq!(
            classify_triangulation(&filled),
            Ok(TriangulationClass::FilledTriangulation)
        );
    }

    #[test]
    fn classify_errors_on_invalid_layout() {
        let mut layout = Layout::new();
        layout.insert(0, tri((0, 0), (4, 0), (0, 4)));
        layout.insert(1, tri((1, 1), (3, 1), (1, 3)));
        assert_eq!(
            classify_triangulation(&layout),
            Err(InvalidLayout { u: 0, v: 1 })
        );
    }

    #[test]
    fn oracle_idempotence() {
        // The contact graph of a layout, fed back as the target, passes.
        let layout = k3_layout();
        let report = contact_graph(&layout);
        let n = layout.triangles.keys().max().unwrap() + 1;
        let edges: Vec<(usize, usize)> = report.edges.iter().copied().collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        assert!(validate(&layout, &g).passed());
    }

    #[test]
    fn triangulation_layout_has_max_degree_three() {
        // Corner-aligned contacts give each triangle at most one neighbor
        // per side.
        let mut layout = k3_layout();
        layout.insert(3, tri((0, 0), (4, 0), (1, -2)));
        let class = classify_triangulation(&layout).unwrap();
        assert_ne!(class, TriangulationClass::NotTriangulation);
        let report = contact_graph(&layout);
        let g = Graph::from_edges(4, &report.edges.iter().copied().collect::<Vec<_>>()).unwrap();
        for v in 0..4 {
            assert!(g.degree(v) <= 3);
        }
    }

    #[test]
    fn report_display_mentions_each_category() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let text = alloc::format!("{}", validate(&k3_layout(), &g));
        assert!(text.contains("missing vertices"));
        assert!(text.contains("missing edges"));
        assert!(text.contains("extra edges"));
    }

    #[test]
    fn evidence_overlap_lies_on_both_sides() {
        let mut layout = Layout::new();
        layout.insert(0, tri((0, 0), (4, 0), (2, 2)));
        layout.insert(1, tri((1, 0), (5, 0), (3, -2)));
        let report = contact_graph(&layout);
        let ev = &report.evidence[&(0, 1)];
        let (p, q) = (&ev.overlap.0, &ev.overlap.1);
        assert_eq!(p, &Point::ints(1, 0));
        assert_eq!(q, &Point::ints(4, 0));
        assert_ne!(p, q);
    }
}
