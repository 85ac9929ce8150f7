//! Triangle layouts for square and hexagonal grid graphs and their
//! subgraphs.
//!
//! *Square grids* are built row by row. Row 0 is a staircase of erected
//! towers (each cell's triangle erected on the previous cell's left slant).
//! Every later row is inserted left to right: the first cell erects flush
//! against the right end of the cell-below's exposed piece, and each
//! subsequent cell is a single-triangle fan that consumes the inner half of
//! its row-predecessor's newest side plus the *entire* remaining exposed
//! piece of the cell below it (whose contacts are all complete at that
//! point). This keeps one contiguous queue of exposed pieces per row —
//! cell `j`'s piece immediately followed by cell `j+1`'s — so every
//! insertion finds its two contacts side by side, touches exactly those two
//! triangles, and leaves the queue contiguous for the next row.
//!
//! *Hexagonal grids* (honeycombs) are the contact graphs of triangular
//! lattice patches: the lattice cells above/below each lattice square,
//! restricted to a hexagonal radius, drawn literally.
//!
//! Subgraphs of either grid are obtained from the full layout by deleting
//! triangles of dropped vertices and sliding sides inward (parallel to
//! themselves) to break contacts of dropped edges, rechecking all remaining
//! contacts exactly after every slide.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::contact::Layout;
use crate::geom::{midpoint, ri, rq, sign, Point, Rat, Triangle, Vec2};
use crate::graph::Graph;

/// Square grid graph with `rows * cols` vertices in row-major order
/// (vertex `i * cols + j` at row `i`, column `j`).
pub fn square_grid_graph(rows: usize, cols: usize) -> Graph {
    assert!(rows >= 1 && cols >= 1, "grid dimensions are positive");
    let mut g = Graph::new(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            let v = i * cols + j;
            if j + 1 < cols {
                g.add_edge(v, v + 1).unwrap();
            }
            if i + 1 < rows {
                g.add_edge(v, v + cols).unwrap();
            }
        }
    }
    g
}

/// A cell of the triangular lattice: `Up(i, j)` has corners `(i, j)`,
/// `(i+1, j)`, `(i, j+1)`; `Down(i, j)` has corners `(i+1, j)`, `(i, j+1)`,
/// `(i+1, j+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Cell {
    Up(i64, i64),
    Down(i64, i64),
}

impl Cell {
    fn corners(self) -> [(i64, i64); 3] {
        match self {
            Cell::Up(i, j) => [(i, j), (i + 1, j), (i, j + 1)],
            Cell::Down(i, j) => [(i + 1, j), (i, j + 1), (i + 1, j + 1)],
        }
    }

    /// The three side-sharing neighbors in the infinite lattice.
    fn neighbors(self) -> [Cell; 3] {
        match self {
            Cell::Up(i, j) => [Cell::Down(i, j), Cell::Down(i - 1, j), Cell::Down(i, j - 1)],
            Cell::Down(i, j) => [Cell::Up(i, j), Cell::Up(i + 1, j), Cell::Up(i, j + 1)],
        }
    }

    /// Hexagonal distance of the cell from the origin: the largest hex norm
    /// among its corners.
    fn ring(self) -> i64 {
        self.corners()
            .iter()
            .map(|&(i, j)| i.abs().max(j.abs()).max((i + j).abs()))
            .max()
            .unwrap()
    }

    fn triangle(self) -> Triangle {
        let [a, b, c] = self.corners();
        Triangle::from_ints(a, b, c).expect("lattice cells are non-degenerate")
    }

    fn centroid3(self) -> (i64, i64) {
        let [a, b, c] = self.corners();
        (a.0 + b.0 + c.0, a.1 + b.1 + c.1)
    }
}

/// The cells of the radius-`r` hexagonal patch in spiral order: ring by
/// ring outward, each ring walked as the cycle it forms, stitched so that
/// the first cell of a ring shares a side with the last cell of the
/// previous ring.
fn hex_cells(radius: usize) -> Vec<Cell> {
    assert!(radius >= 1, "hex radius is positive");
    let r = radius as i64;
    let mut by_ring: BTreeMap<i64, BTreeSet<Cell>> = BTreeMap::new();
    for i in -r..r {
        for j in -r..r {
            for cell in [Cell::Up(i, j), Cell::Down(i, j)] {
                let k = cell.ring();
                if k <= r {
                    by_ring.entry(k).or_default().insert(cell);
                }
            }
        }
    }
    let mut order: Vec<Cell> = Vec::new();
    for k in 1..=r {
        let band = by_ring
            .remove(&k)
            .expect("every ring up to the radius is nonempty");
        // Each ring is a cycle: every cell has exactly two neighbors in it.
        for &cell in &band {
            let inband = cell.neighbors().iter().filter(|n| band.contains(n)).count();
            assert_eq!(inband, 2, "ring cells form a simple cycle band");
        }
        // Start adjacent to the previous ring's end (any cell for ring 1).
        let start = match order.last() {
            None => *band.iter().next().unwrap(),
            Some(&prev_end) => *band
                .iter()
                .find(|c| c.neighbors().contains(&prev_end))
                .expect("some cell of the next ring touches the previous ring's end"),
        };
        let mut walk = vec![start];
        let mut seen: BTreeSet<Cell> = BTreeSet::new();
        seen.insert(start);
        loop {
            let cur = *walk.last().unwrap();
            let next = cur
                .neighbors()
                .into_iter()
                .filter(|n| band.contains(n) && !seen.contains(n))
                .min();
            match next {
                Some(n) => {
                    walk.push(n);
                    seen.insert(n);
                }
                None => break,
            }
        }
        assert_eq!(walk.len(), band.len(), "band walk visits the whole ring");
        order.extend(walk);
    }
    assert_eq!(order.len(), 6 * radius * radius);
    order
}

/// Hexagonal grid graph of the given radius: one vertex per lattice cell of
/// the radius-`radius` hexagonal patch (numbered in spiral order), with an
/// edge exactly when two cells share a lattice side. Has `6 * radius^2`
/// vertices; every vertex has degree at most 3.
pub fn hex_grid_graph(radius: usize) -> Graph {
    let cells = hex_cells(radius);
    let index: BTreeMap<Cell, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut g = Graph::new(cells.len());
    for (i, cell) in cells.iter().enumerate() {
        for n in cell.neighbors() {
            if let Some(&j) = index.get(&n) {
                if i < j {
                    g.add_edge(i, j).unwrap();
                }
            }
        }
    }
    g
}

/// Draw the radius-`radius` hexagonal grid literally: vertex `v`'s triangle
/// is its lattice cell. Contacts are full lattice sides, so the layout is a
/// filled triangulation of a hexagon.
pub fn build_hex_grid(radius: usize) -> Layout {
    let cells = hex_cells(radius);
    let mut layout = Layout::new();
    for (i, cell) in cells.iter().enumerate() {
        layout.insert(i, cell.triangle());
    }
    layout
}

/// A spiral insertion order: a Hamiltonian path of the grid graph in which
/// consecutive vertices are adjacent, starting from the innermost cells.
/// `segment_boundaries` lists the positions (strictly between 0 and `n`)
/// where a new straight run begins (square: direction changes; hex: walk
/// direction changes or a new ring starts).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpiralOrder {
    pub order: Vec<usize>,
    pub segment_boundaries: Vec<usize>,
}

fn boundaries_from_steps(positions: &[(i64, i64)]) -> Vec<usize> {
    let mut out = Vec::new();
    for i in 2..positions.len() {
        let d1 = (
            positions[i - 1].0 - positions[i - 2].0,
            positions[i - 1].1 - positions[i - 2].1,
        );
        let d2 = (
            positions[i].0 - positions[i - 1].0,
            positions[i].1 - positions[i - 1].1,
        );
        if d1 != d2 {
            out.push(i - 1);
        }
    }
    out
}

/// Spiral order for the `rows x cols` square grid: the reverse of the
/// standard inward boundary-peeling traversal, so the innermost cells come
/// first and every consecutive pair is grid-adjacent.
pub fn square_spiral(rows: usize, cols: usize) -> SpiralOrder {
    assert!(rows >= 1 && cols >= 1);
    let (mut top, mut bottom) = (0isize, rows as isize - 1);
    let (mut left, mut right) = (0isize, cols as isize - 1);
    let mut inward: Vec<(isize, isize)> = Vec::with_capacity(rows * cols);
    while top <= bottom && left <= right {
        for j in left..=right {
            inward.push((top, j));
        }
        for i in top + 1..=bottom {
            inward.push((i, right));
        }
        if top < bottom {
            for j in (left..right).rev() {
                inward.push((bottom, j));
            }
        }
        if left < right {
            for i in (top + 1..bottom).rev() {
                inward.push((i, left));
            }
        }
        top += 1;
        bottom -= 1;
        left += 1;
        right -= 1;
    }
    inward.reverse();
    let positions: Vec<(i64, i64)> = inward.iter().map(|&(i, j)| (i as i64, j as i64)).collect();
    let order = inward
        .into_iter()
        .map(|(i, j)| i as usize * cols + j as usize)
        .collect();
    SpiralOrder {
        order,
        segment_boundaries: boundaries_from_steps(&positions),
    }
}

/// Spiral order for the radius-`radius` hexagonal grid: the ring-stitched
/// band walk that also defines the vertex numbering, so the order is the
/// identity; boundaries mark turns of the walk (via cell centroids).
pub fn hex_spiral(radius: usize) -> SpiralOrder {
    let cells = hex_cells(radius);
    let positions: Vec<(i64, i64)> = cells.iter().map(|c| c.centroid3()).collect();
    SpiralOrder {
        order: (0..cells.len()).collect(),
        segment_boundaries: boundaries_from_steps(&positions),
    }
}

/// One exposed piece of a placed triangle's side, available to the next
/// row: the segment from `a` to `b` (left to right) owned by `owner`.
#[derive(Clone, Debug)]
struct Piece {
    owner: usize,
    a: Point,
    b: Point,
}

fn point_add(p: &Point, v: &Vec2) -> Point {
    Point::new(p.x.clone() + v.x.clone(), p.y.clone() + v.y.clone())
}

fn scale(v: &Vec2, s: &Rat) -> Vec2 {
    Vec2::new(v.x.clone() * s.clone(), v.y.clone() * s.clone())
}

/// The largest power of two that is at most `cap`, capped at 1/2. Using a
/// dyadic displacement instead of the exact bound keeps coordinate sizes
/// growing additively rather than multiplicatively.
fn dyadic_at_most(cap: &Rat) -> Rat {
    debug_assert!(sign(cap) > 0);
    let half = rq(1, 2);
    if *cap >= half {
        return half;
    }
    // 2^-k <= cap for k = bits(denom) - bits(numer) + 1; tighten upward.
    let k = cap.denom().bits() - cap.numer().bits() + 1;
    let mut candidate = half;
    for _ in 1..k {
        candidate /= ri(2);
    }
    while candidate > *cap {
        candidate /= ri(2);
    }
    candidate
}

/// Apex for an erected triangle on base `s -> t`: above the midpoint,
/// displaced little enough that both new sides advance strictly in x and
/// that the junction of the new right side with the next piece's direction
/// `next_dir` (if any) remains a strict left turn.
fn erect_apex(s: &Point, t: &Point, next_dir: Option<&Vec2>) -> Point {
    let d = s.to(t);
    debug_assert!(sign(&d.x) > 0, "erect bases advance in x");
    let mut eps = rq(1, 2);
    if sign(&d.y) != 0 {
        let dy = if sign(&d.y) < 0 {
            -d.y.clone()
        } else {
            d.y.clone()
        };
        let cap = d.x.clone() / (ri(16) * dy);
        if cap < eps {
            eps = cap;
        }
    }
    if let Some(nd) = next_dir {
        let dot = d.x.clone() * nd.x.clone() + d.y.clone() * nd.y.clone();
        if sign(&dot) < 0 {
            let cr = d.cross(nd);
            debug_assert!(sign(&cr) > 0, "erect lands at a strict valley");
            let cap = cr / (ri(4) * -dot);
            if cap < eps {
                eps = cap;
            }
        }
    }
    let eps = dyadic_at_most(&eps);
    let mid = midpoint(s, t);
    let up = Vec2::new(-d.y.clone(), d.x.clone());
    point_add(&mid, &scale(&up, &eps))
}

/// Build a touching-triangle layout for the `rows x cols` square grid
/// (row-major vertex numbering). Every grid edge becomes a positive-length
/// contact and nothing else touches; the test suite re-verifies this with
/// the exact oracle.
pub fn build_square_grid(rows: usize, cols: usize) -> Layout {
    assert!(rows >= 1 && cols >= 1, "grid dimensions are positive");
    let vid = |i: usize, j: usize| i * cols + j;
    let mut layout = Layout::new();

    // Row 0: a staircase of towers. Cell 0 is a fixed triangle; each later
    // cell erects on the middle of the previous cell's left slant. The
    // pieces handed to row 1 are the lower parts of the left slants, which
    // chain contiguously.
    let mut pieces: Vec<Piece> = Vec::with_capacity(cols);
    {
        let base_l = Point::ints(0, 0);
        let base_r = Point::ints(4, 0);
        let apex0 = Point::ints(2, 2);
        layout.insert(
            vid(0, 0),
            Triangle::new(base_l.clone(), base_r, apex0.clone()).unwrap(),
        );
        let mut slant_a = base_l;
        let mut slant_b = apex0;
        for j in 1..cols {
            let d = slant_a.to(&slant_b);
            let s = point_add(&slant_a, &scale(&d, &rq(3, 8)));
            let t = point_add(&slant_a, &scale(&d, &rq(5, 8)));
            let apex = erect_apex(&s, &t, None);
            layout.insert(
                vid(0, j),
                Triangle::new(s.clone(), t.clone(), apex.clone()).unwrap(),
            );
            pieces.push(Piece {
                owner: vid(0, j - 1),
                a: slant_a,
                b: s.clone(),
            });
            slant_a = s;
            slant_b = apex;
        }
        pieces.push(Piece {
            owner: vid(0, cols - 1),
            a: slant_a,
            b: slant_b,
        });
    }

    // Later rows, inserted left to right over the pieces queue.
    for i in 1..rows {
        let mut next_pieces: Vec<Piece> = Vec::with_capacity(cols);
        debug_assert_eq!(pieces.len(), cols);

        // First cell: erect on the right half of the piece below, flush
        // with its right end, so the new right slant lands exactly at the
        // junction with the next piece.
        let below = &pieces[0];
        debug_assert_eq!(below.owner, vid(i - 1, 0));
        let s = midpoint(&below.a, &below.b);
        let t = below.b.clone();
        let next_dir = pieces.get(1).map(|p| p.a.to(&p.b));
        let apex = erect_apex(&s, &t, next_dir.as_ref());
        layout.insert(
            vid(i, 0),
            Triangle::new(s, t.clone(), apex.clone()).unwrap(),
        );
        // The previous cell's newest exposed segment (left flank of the
        // next fan): the erected right slant, descending to the junction.
        let mut flank_a = apex;
        let mut flank_b = t;

        for j in 1..cols {
            let below = &pieces[j];
            debug_assert_eq!(below.owner, vid(i - 1, j));
            debug_assert_eq!(
                flank_b, below.a,
                "pieces queue stays contiguous with the current flank"
            );
            let p = flank_b.clone();
            let ml = midpoint(&flank_a, &p);
            let b = below.b.clone();
            // Valley checks: both junction turns of the new chord are
            // strict left turns.
            debug_assert!(sign(&flank_a.to(&p).cross(&p.to(&b))) > 0);
            layout.insert(vid(i, j), Triangle::new(ml.clone(), p, b.clone()).unwrap());
            // The row-predecessor's remaining piece for the next row: from
            // its segment start to the consumed midpoint.
            next_pieces.push(Piece {
                owner: vid(i, j - 1),
                a: flank_a,
                b: ml.clone(),
            });
            flank_a = ml;
            flank_b = b;
        }
        next_pieces.push(Piece {
            owner: vid(i, cols - 1),
            a: flank_a,
            b: flank_b,
        });
        pieces = next_pieces;
    }
    layout
}

/// Why a subgraph restriction failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RestrictError {
    /// A kept vertex id is out of range or repeated.
    BadVertex { vertex: usize },
    /// A kept edge is not an edge of the full grid between kept vertices.
    BadEdge { edge: (usize, usize) },
    /// The contact for this dropped edge could not be broken without
    /// destroying a kept contact (tried sliding a side of each endpoint).
    TrimConflict { edge: (usize, usize) },
}

impl fmt::Display for RestrictError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RestrictError::BadVertex { vertex } => {
                write!(f, "kept vertex {vertex} is out of range or repeated")
            }
            RestrictError::BadEdge { edge } => write!(
                f,
                "kept edge ({}, {}) is not a grid edge between kept vertices",
                edge.0, edge.1
            ),
            RestrictError::TrimConflict { edge } => write!(
                f,
                "cannot break the contact of dropped edge ({}, {}) without losing a kept contact",
                edge.0, edge.1
            ),
        }
    }
}

impl core::error::Error for RestrictError {}

/// Slide side `k` (from corner `k` to corner `k+1`) of `tri` inward by the
/// fraction `t` towards the opposite corner, keeping it parallel.
fn slide_side(tri: &Triangle, k: usize, t: &Rat) -> Triangle {
    let vs = tri.vertices();
    let a = &vs[k];
    let b = &vs[(k + 1) % 3];
    let c = &vs[(k + 2) % 3];
    let towards = |p: &Point| {
        Point::new(
            p.x.clone() + t.clone() * (c.x.clone() - p.x.clone()),
            p.y.clone() + t.clone() * (c.y.clone() - p.y.clone()),
        )
    };
    Triangle::new(towards(a), towards(b), c.clone()).expect("sliding keeps the triangle proper")
}

/// Which side of `layout[u]` carries the contact with `v`, if they touch
/// with positive length.
fn contact_side(layout: &Layout, u: usize, v: usize) -> Option<usize> {
    let tu = &layout.triangles[&u];
    let tv = &layout.triangles[&v];
    for k in 0..3 {
        let (a, b) = tu.side(k);
        for m in 0..3 {
            let (c, d) = tv.side(m);
            if crate::geom::segment_overlap(a, b, c, d).is_some() {
                return Some(k);
            }
        }
    }
    None
}

/// Restrict a full-grid layout to a subgraph: keep only the listed
/// vertices, and break the contacts of all grid edges not listed in
/// `keep_edges` by sliding triangle sides inward. Returns the restricted
/// graph (vertices renumbered by ascending original id) and its layout.
///
/// After every slide all contacts are recomputed exactly; a slide is
/// accepted only if every kept contact of the slid triangle survives. If
/// neither endpoint of a dropped edge has a side that can be slid safely,
/// the restriction fails with [`RestrictError::TrimConflict`] naming the
/// edge (in original ids).
pub fn restrict_to_subgraph(
    layout: &Layout,
    full: &Graph,
    keep_vertices: &[usize],
    keep_edges: &[(usize, usize)],
) -> Result<(Graph, Layout), RestrictError> {
    let n = full.n();
    let kept: BTreeSet<usize> = keep_vertices.iter().copied().collect();
    if kept.len() != keep_vertices.len() || keep_vertices.iter().any(|&v| v >= n) {
        let bad = keep_vertices
            .iter()
            .copied()
            .find(|&v| v >= n)
            .unwrap_or_else(|| {
                let mut seen = BTreeSet::new();
                keep_vertices
                    .iter()
                    .copied()
                    .find(|&v| !seen.insert(v))
                    .unwrap()
            });
        return Err(RestrictError::BadVertex { vertex: bad });
    }
    let norm = |a: usize, b: usize| (a.min(b), a.max(b));
    let mut wanted: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(u, v) in keep_edges {
        let e = norm(u, v);
        if u == v || !kept.contains(&u) || !kept.contains(&v) || !full.has_edge(u, v) {
            return Err(RestrictError::BadEdge { edge: (u, v) });
        }
        wanted.insert(e);
    }

    let mut work = Layout::new();
    for &v in &kept {
        work.insert(v, layout.triangles[&v].clone());
    }

    // Dropped edges whose contacts must be broken.
    let dropped: Vec<(usize, usize)> = full
        .edges()
        .into_iter()
        .filter(|&(u, v)| kept.contains(&u) && kept.contains(&v) && !wanted.contains(&(u, v)))
        .collect();

    for &(u, v) in &dropped {
        // Earlier slides may already have separated this pair.
        if contact_side(&work, u, v).is_none() {
            continue;
        }
        let mut done = false;
        'endpoints: for &w in &[u, v] {
            let other = if w == u { v } else { u };
            let Some(k) = contact_side(&work, w, other) else {
                done = true;
                break;
            };
            // The side may only be slid if no kept contact of w lives on it.
            let kept_partners: Vec<usize> = full
                .neighbors(w)
                .filter(|&x| kept.contains(&x) && wanted.contains(&norm(w, x)))
                .collect();
            if kept_partners
                .iter()
                .any(|&x| contact_side(&work, w, x) == Some(k))
            {
                continue;
            }
            let original = work.triangles[&w].clone();
            let mut t = rq(1, 4);
            for _ in 0..48 {
                let cand = slide_side(&original, k, &t);
                let mut trial = work.clone();
                *trial.triangles.get_mut(&w).unwrap() = cand;
                let gone = contact_side(&trial, w, other).is_none();
                let kept_ok = kept_partners
                    .iter()
                    .all(|&x| contact_side(&trial, w, x).is_some());
                if gone && kept_ok {
                    work = trial;
                    done = true;
                    break 'endpoints;
                }
                t /= ri(2);
            }
        }
        if !done {
            return Err(RestrictError::TrimConflict { edge: (u, v) });
        }
    }

    // Renumber by ascending original id.
    let ids: Vec<usize> = kept.iter().copied().collect();
    let newid: BTreeMap<usize, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut sub = Graph::new(ids.len());
    for &(u, v) in &wanted {
        sub.add_edge(newid[&u], newid[&v]).unwrap();
    }
    let mut out = Layout::new();
    for &v in &ids {
        out.insert(newid[&v], work.triangles[&v].clone());
    }
    Ok((sub, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::{classify_triangulation, contact_graph, validate, TriangulationClass};

    fn check_spiral(sp: &SpiralOrder, g: &Graph) {
        assert_eq!(sp.order.len(), g.n());
        let distinct: BTreeSet<usize> = sp.order.iter().copied().collect();
        assert_eq!(distinct.len(), g.n(), "spiral visits every vertex once");
        for w in sp.order.windows(2) {
            assert!(
                g.has_edge(w[0], w[1]),
                "consecutive spiral vertices are adjacent"
            );
        }
        for &b in &sp.segment_boundaries {
            assert!(b > 0 && b < sp.order.len());
        }
        assert!(sp.segment_boundaries.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn square_grid_graph_counts() {
        let g = square_grid_graph(3, 4);
        assert_eq!(g.n(), 12);
        assert_eq!(g.m(), 3 * 3 + 2 * 4);
        assert!(g.has_edge(0, 1));
        assert!(g.has_edge(0, 4));
        assert!(!g.has_edge(0, 5));
        assert!(!g.has_edge(3, 4));
    }

    #[test]
    fn hex_grid_graph_counts() {
        let g1 = hex_grid_graph(1);
        assert_eq!(g1.n(), 6);
        assert_eq!(g1.m(), 6);
        for v in 0..6 {
            assert_eq!(g1.degree(v), 2);
        }
        let g2 = hex_grid_graph(2);
        assert_eq!(g2.n(), 24);
        assert!(g2.is_connected());
        assert!((0..g2.n()).all(|v| g2.degree(v) <= 3));
    }

    #[test]
    fn square_spirals_are_adjacent_hamiltonian_paths() {
        for (r, c) in [(1, 1), (1, 5), (2, 2), (3, 4), (4, 4), (5, 3), (6, 6)] {
            let sp = square_spiral(r, c);
            check_spiral(&sp, &square_grid_graph(r, c));
        }
        // The spiral starts innermost: for 4x4 the first vertex is interior.
        let sp = square_spiral(4, 4);
        let first = sp.order[0];
        let (i, j) = (first / 4, first % 4);
        assert!((1..3).contains(&i) && (1..3).contains(&j));
    }

    #[test]
    fn hex_spirals_are_adjacent_hamiltonian_paths() {
        for r in 1..=4 {
            let sp = hex_spiral(r);
            check_spiral(&sp, &hex_grid_graph(r));
        }
    }

    #[test]
    fn square_layouts_validate_exactly() {
        for (r, c) in [
            (1, 1),
            (1, 4),
            (4, 1),
            (2, 2),
            (2, 3),
            (3, 3),
            (4, 3),
            (5, 5),
        ] {
            let layout = build_square_grid(r, c);
            let g = square_grid_graph(r, c);
            let outcome = validate(&layout, &g);
            assert!(outcome.passed(), "{r}x{c} grid diff: {outcome}");
        }
    }

    #[test]
    fn ten_by_ten_square_validates() {
        let layout = build_square_grid(10, 10);
        let g = square_grid_graph(10, 10);
        assert!(validate(&layout, &g).passed());
    }

    #[test]
    fn hex_layouts_validate_and_fill() {
        for r in 1..=3 {
            let layout = build_hex_grid(r);
            let g = hex_grid_graph(r);
            let outcome = validate(&layout, &g);
            assert!(outcome.passed(), "hex radius {r} diff: {outcome}");
            assert_eq!(
                classify_triangulation(&layout).unwrap(),
                TriangulationClass::FilledTriangulation
            );
        }
    }

    #[test]
    fn restriction_drops_vertices_and_edges() {
        let full = square_grid_graph(3, 3);
        let layout = build_square_grid(3, 3);
        // Keep an L-shape of 5 vertices; drop one of its edges.
        let keep_v = [0, 1, 2, 5, 8];
        let keep_e = [(0, 1), (1, 2), (5, 8)];
        let (sub, sublay) = restrict_to_subgraph(&layout, &full, &keep_v, &keep_e).unwrap();
        assert_eq!(sub.n(), 5);
        assert_eq!(sub.m(), 3);
        let outcome = validate(&sublay, &sub);
        assert!(outcome.passed(), "restricted diff: {outcome}");
    }

    #[test]
    fn restriction_breaks_every_kind_of_square_contact() {
        let full = square_grid_graph(3, 3);
        let layout = build_square_grid(3, 3);
        // Keep all vertices, drop one rung, one row edge, one tower edge.
        let keep_v: Vec<usize> = (0..9).collect();
        let dropped = [(1, 4), (3, 4), (1, 2)];
        let keep_e: Vec<(usize, usize)> = full
            .edges()
            .into_iter()
            .filter(|&(u, v)| !dropped.contains(&(u, v)))
            .collect();
        let (sub, sublay) = restrict_to_subgraph(&layout, &full, &keep_v, &keep_e).unwrap();
        assert_eq!(sub.m(), full.m() - 3);
        let outcome = validate(&sublay, &sub);
        assert!(outcome.passed(), "restricted diff: {outcome}");
    }

    #[test]
    fn restriction_of_hex_layouts() {
        let full = hex_grid_graph(2);
        let layout = build_hex_grid(2);
        let keep_v: Vec<usize> = (0..full.n()).filter(|&v| v != 3).collect();
        let mut keep_e: Vec<(usize, usize)> = full
            .edges()
            .into_iter()
            .filter(|&(u, v)| u != 3 && v != 3)
            .collect();
        keep_e.pop();
        let (sub, sublay) = restrict_to_subgraph(&layout, &full, &keep_v, &keep_e).unwrap();
        let outcome = validate(&sublay, &sub);
        assert!(outcome.passed(), "restricted hex diff: {outcome}");
    }

    #[test]
    fn restriction_rejects_bad_inputs() {
        let full = square_grid_graph(2, 2);
        let layout = build_square_grid(2, 2);
        assert_eq!(
            restrict_to_subgraph(&layout, &full, &[0, 9], &[]),
            Err(RestrictError::BadVertex { vertex: 9 })
        );
        assert_eq!(
            restrict_to_subgraph(&layout, &full, &[0, 1, 1], &[]),
            Err(RestrictError::BadVertex { vertex: 1 })
        );
        assert_eq!(
            restrict_to_subgraph(&layout, &full, &[0, 1], &[(0, 3)]),
            Err(RestrictError::BadEdge { edge: (0, 3) })
        );
        assert_eq!(
            restrict_to_subgraph(&layout, &full, &[0, 3], &[(0, 3)]),
            Err(RestrictError::BadEdge { edge: (0, 3) })
        );
    }

    #[test]
    fn contacts_in_grid_layouts_have_positive_length() {
        let layout = build_square_grid(4, 4);
        let report = contact_graph(&layout);
        assert!(report.interior_overlaps.is_empty());
        for ev in report.evidence.values() {
            assert_ne!(ev.overlap.0, ev.overlap.1);
        }
    }
}
