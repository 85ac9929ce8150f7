//! Exact planar geometry over arbitrary-precision rationals.
//!
//! Every predicate here is decided exactly: coordinates are [`Rat`]s
//! (arbitrary-precision rationals) and no step introduces rounding, so
//! degenerate configurations — collinear points, zero-length overlaps,
//! single-point touches — have deterministic outcomes.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::Zero;

/// Exact rational scalar used for all coordinates.
pub type Rat = BigRational;

/// Rational from an integer.
pub fn ri(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `num/den`. Panics if `den == 0`.
pub fn rq(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Sign of a rational: -1, 0 or 1.
pub fn sign(r: &Rat) -> i8 {
    // Denominators are kept positive by `BigRational`, so the numerator
    // carries the sign.
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GeomError {
    /// The three corners are collinear (or coincident).
    DegenerateTriangle,
    /// The operation requires interior-disjoint triangles.
    OverlappingInteriors,
}

impl fmt::Display for GeomError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeomError::DegenerateTriangle => write!(f, "triangle corners are collinear"),
            GeomError::OverlappingInteriors => write!(f, "triangle interiors overlap"),
        }
    }
}

impl core::error::Error for GeomError {}

/// A point in the plane with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x: Rat,
    pub y: Rat,
}

impl Point {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Point::new(ri(x), ri(y))
    }

    /// Vector from `self` to `other`.
    pub fn to(&self, other: &Point) -> Vec2 {
        Vec2 {
            x: &other.x - &self.x,
            y: &other.y - &self.y,
        }
    }

    pub fn shift(&self, v: &Vec2) -> Point {
        Point {
            x: &self.x + &v.x,
            y: &self.y + &v.y,
        }
    }
}

/// A displacement vector with exact rational components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vec2 {
    pub x: Rat,
    pub y: Rat,
}

impl Vec2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        Vec2 { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Vec2::new(ri(x), ri(y))
    }

    pub fn cross(&self, other: &Vec2) -> Rat {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Vec2) -> Rat {
        &self.x * &other.x + &self.y * &other.y
    }

    /// Counterclockwise quarter turn.
    pub fn perp(&self) -> Vec2 {
        Vec2 {
            x: -self.y.clone(),
            y: self.x.clone(),
        }
    }

    pub fn scale(&self, s: &Rat) -> Vec2 {
        Vec2 {
            x: &self.x * s,
            y: &self.y * s,
        }
    }

    pub fn add(&self, other: &Vec2) -> Vec2 {
        Vec2 {
            x: &self.x + &other.x,
            y: &self.y + &other.y,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

/// Midpoint of `a` and `b`.
pub fn midpoint(a: &Point, b: &Point) -> Point {
    Point {
        x: (&a.x + &b.x) / ri(2),
        y: (&a.y + &b.y) / ri(2),
    }
}

/// `a + t * (b - a)`.
pub fn lerp(a: &Point, b: &Point, t: &Rat) -> Point {
    Point {
        x: &a.x + &(&(&b.x - &a.x) * t),
        y: &a.y + &(&(&b.y - &a.y) * t),
    }
}

/// Orientation of the ordered triple `(a, b, c)`: 1 if counterclockwise,
/// -1 if clockwise, 0 if collinear.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> i8 {
    let cross = a.to(b).cross(&a.to(c));
    sign(&cross)
}

pub fn collinear(a: &Point, b: &Point, c: &Point) -> bool {
    orientation(a, b, c) == 0
}

/// Is `p` on the closed segment `[a, b]`?
pub fn point_on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    if orientation(a, b, p) != 0 {
        return false;
    }
    // Collinear: `p` is between iff it is not strictly beyond either end.
    sign(&p.to(a).dot(&p.to(b))) <= 0
}

/// Is `p` in the relative interior of the segment `[a, b]`?
pub fn point_in_open_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orientation(a, b, p) == 0 && sign(&p.to(a).dot(&p.to(b))) < 0
}

/// Positive-length common part of two collinear segments.
///
/// Returns the endpoints of the shared sub-segment, ordered along the
/// direction of the first segment, or `None` when the segments are not
/// collinear or meet in at most a point.
pub fn segment_overlap(a1: &Point, b1: &Point, a2: &Point, b2: &Point) -> Option<(Point, Point)> {
    if orientation(a1, b1, a2) != 0 || orientation(a1, b1, b2) != 0 {
        return None;
    }
    let d = a1.to(b1);
    if d.is_zero() {
        return None;
    }
    // Scalar position of a point along the common line, in units of |d|^2.
    let key = |p: &Point| a1.to(p).dot(&d);
    let k_end = d.dot(&d); // key(b1); key(a1) == 0
    let (lo2, hi2) = {
        let ka = key(a2);
        let kb = key(b2);
        if ka <= kb {
            ((ka, a2), (kb, b2))
        } else {
            ((kb, b2), (ka, a2))
        }
    };
    let (lo_key, lo_pt) = if sign(&lo2.0) > 0 {
        (lo2.0.clone(), lo2.1.clone())
    } else {
        (Rat::zero(), a1.clone())
    };
    let (hi_key, hi_pt) = if hi2.0 < k_end {
        (hi2.0.clone(), hi2.1.clone())
    } else {
        (k_end, b1.clone())
    };
    if lo_key < hi_key {
        Some((lo_pt, hi_pt))
    } else {
        None
    }
}

/// Do the closed segments `[a1, b1]` and `[a2, b2]` share any point?
pub fn segments_intersect(a1: &Point, b1: &Point, a2: &Point, b2: &Point) -> bool {
    let d1 = orientation(a2, b2, a1);
    let d2 = orientation(a2, b2, b1);
    let d3 = orientation(a1, b1, a2);
    let d4 = orientation(a1, b1, b2);
    if ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)) {
        return true;
    }
    (d1 == 0 && point_on_segment(a1, a2, b2))
        || (d2 == 0 && point_on_segment(b1, a2, b2))
        || (d3 == 0 && point_on_segment(a2, a1, b1))
        || (d4 == 0 && point_on_segment(b2, a1, b1))
}

/// Relation between the lines through `(a, b)` and `(c, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineRelation {
    /// Parallel and distinct.
    Parallel,
    /// The same set of points (direction may differ).
    SameLine,
    /// Meeting in exactly one point.
    Meet(Point),
}

/// Intersect the infinite lines through `(a, b)` and `(c, d)`.
/// Both point pairs must be distinct.
pub fn line_intersection(a: &Point, b: &Point, c: &Point, d: &Point) -> LineRelation {
    let ab = a.to(b);
    let cd = c.to(d);
    let denom = ab.cross(&cd);
    if denom.is_zero() {
        if orientation(a, b, c) == 0 {
            LineRelation::SameLine
        } else {
            LineRelation::Parallel
        }
    } else {
        let t = a.to(c).cross(&cd) / denom;
        LineRelation::Meet(lerp(a, b, &t))
    }
}

/// Twice the signed area of a polygon (counterclockwise positive).
pub fn polygon_area2(poly: &[Point]) -> Rat {
    let mut acc = Rat::zero();
    let n = poly.len();
    for i in 0..n {
        let p = &poly[i];
        let q = &poly[(i + 1) % n];
        acc += &p.x * &q.y - &q.x * &p.y;
    }
    acc
}

/// Clip a polygon to the closed half-plane on and to the left of the
/// directed line `a -> b` (Sutherland-Hodgman step).
pub fn clip_polygon_halfplane(poly: &[Point], a: &Point, b: &Point) -> Vec<Point> {
    let mut out = Vec::new();
    let n = poly.len();
    for i in 0..n {
        let cur = &poly[i];
        let nxt = &poly[(i + 1) % n];
        let sc = orientation(a, b, cur);
        let sn = orientation(a, b, nxt);
        if sc >= 0 {
            out.push(cur.clone());
        }
        if (sc > 0 && sn < 0) || (sc < 0 && sn > 0) {
            match line_intersection(cur, nxt, a, b) {
                LineRelation::Meet(p) => out.push(p),
                // The edge strictly crosses the line, so they cannot be
                // parallel.
                _ => unreachable!(),
            }
        }
    }
    out
}

/// Compare two nonzero direction vectors by angle in `[0, 2*pi)`,
/// measured counterclockwise from the positive x-axis. Exact.
pub fn cmp_angle(u: &Vec2, v: &Vec2) -> Ordering {
    fn half(w: &Vec2) -> u8 {
        let sy = sign(&w.y);
        if sy > 0 || (sy == 0 && sign(&w.x) > 0) {
            0
        } else {
            1
        }
    }
    debug_assert!(!u.is_zero() && !v.is_zero());
    let (hu, hv) = (half(u), half(v));
    if hu != hv {
        return hu.cmp(&hv);
    }
    // Within a half-turn, angle order is given by the cross product; a zero
    // cross within the same half means equal directions.
    match sign(&u.cross(v)) {
        1 => Ordering::Less,
        0 => Ordering::Equal,
        _ => Ordering::Greater,
    }
}

/// A nondegenerate triangle, stored with its corners in counterclockwise
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    vs: [Point; 3],
}

impl Triangle {
    /// Build a triangle from three corners, normalizing to counterclockwise
    /// order. Fails if the corners are collinear.
    pub fn new(a: Point, b: Point, c: Point) -> Result<Triangle, GeomError> {
        match orientation(&a, &b, &c) {
            0 => Err(GeomError::DegenerateTriangle),
            1 => Ok(Triangle { vs: [a, b, c] }),
            _ => Ok(Triangle { vs: [a, c, b] }),
        }
    }

    pub fn from_ints(a: (i64, i64), b: (i64, i64), c: (i64, i64)) -> Result<Triangle, GeomError> {
        Triangle::new(
            Point::ints(a.0, a.1),
            Point::ints(b.0, b.1),
            Point::ints(c.0, c.1),
        )
    }

    pub fn vertices(&self) -> &[Point; 3] {
        &self.vs
    }

    /// Directed side `i` (0, 1 or 2), counterclockwise: the interior lies to
    /// its left.
    pub fn side(&self, i: usize) -> (&Point, &Point) {
        (&self.vs[i], &self.vs[(i + 1) % 3])
    }

    pub fn area2(&self) -> Rat {
        polygon_area2(&self.vs)
    }

    pub fn centroid(&self) -> Point {
        Point {
            x: (&self.vs[0].x + &self.vs[1].x + &self.vs[2].x) / ri(3),
            y: (&self.vs[0].y + &self.vs[1].y + &self.vs[2].y) / ri(3),
        }
    }

    pub fn contains_strict(&self, p: &Point) -> bool {
        (0..3).all(|i| {
            let (a, b) = self.side(i);
            orientation(a, b, p) > 0
        })
    }

    pub fn contains_closed(&self, p: &Point) -> bool {
        (0..3).all(|i| {
            let (a, b) = self.side(i);
            orientation(a, b, p) >= 0
        })
    }

    pub fn boundary_contains(&self, p: &Point) -> bool {
        self.contains_closed(p) && !self.contains_strict(p)
    }
}

/// Classification of one ordered pair of directed triangle sides.
///
/// Each side is oriented counterclockwise around its triangle's interior
/// and extended to a directed line. The pair is *feasible* when the two
/// lines meet in a single point and a positive-length portion of each side
/// lies strictly to the right of the other side's line — exactly the
/// condition under which a third triangle's corner could sit at the meeting
/// point while touching both sides. The pair is *collinear* when the two
/// directed lines are identical (same carrier, same direction); a single
/// third triangle can then touch both sides along that common line.
/// Opposite-direction carriers, parallel lines and one-sided meetings are
/// all `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SidePairKind {
    Feasible(Point),
    Collinear,
    None,
}

/// The classification of one ordered side pair `(side0 of t0, side1 of t1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibleIntersection {
    pub side0: usize,
    pub side1: usize,
    pub kind: SidePairKind,
}

/// Classify all nine ordered side pairs of two interior-disjoint triangles.
/// Returns the pairs in row-major order (`side0` outer, `side1` inner).
pub fn feasible_intersections(
    t0: &Triangle,
    t1: &Triangle,
) -> Result<Vec<FeasibleIntersection>, GeomError> {
    if !triangles_interiors_disjoint(t0, t1) {
        return Err(GeomError::OverlappingInteriors);
    }
    let mut out = Vec::with_capacity(9);
    for side0 in 0..3 {
        let (a0, b0) = t0.side(side0);
        for side1 in 0..3 {
            let (a1, b1) = t1.side(side1);
            let kind = match line_intersection(a0, b0, a1, b1) {
                LineRelation::Parallel => SidePairKind::None,
                LineRelation::SameLine => {
                    if sign(&a0.to(b0).dot(&a1.to(b1))) > 0 {
                        SidePairKind::Collinear
                    } else {
                        SidePairKind::None
                    }
                }
                LineRelation::Meet(p) => {
                    let part_right = |sa: &Point, sb: &Point, la: &Point, lb: &Point| {
                        orientation(la, lb, sa) < 0 || orientation(la, lb, sb) < 0
                    };
                    if part_right(a0, b0, a1, b1) && part_right(a1, b1, a0, b0) {
                        SidePairKind::Feasible(p)
                    } else {
                        SidePairKind::None
                    }
                }
            };
            out.push(FeasibleIntersection { side0, side1, kind });
        }
    }
    Ok(out)
}

/// Are the interiors of two triangles disjoint?
///
/// Decided exactly by clipping one triangle against the other's half-planes
/// and testing whether the intersection polygon has positive area. (For
/// convex bodies, the interiors meet iff the closed intersection does so
/// with positive area.) Boundary contact of any extent is still "disjoint".
pub fn triangles_interiors_disjoint(t1: &Triangle, t2: &Triangle) -> bool {
    let mut poly: Vec<Point> = t2.vertices().to_vec();
    for i in 0..3 {
        let (a, b) = t1.side(i);
        poly = clip_polygon_halfplane(&poly, a, b);
        if poly.len() < 3 {
            return true;
        }
    }
    polygon_area2(&poly).is_zero()
}

#[cfg(test)]
// Side-pair indices are written `side0 * 3 + side1` even when side0 is 0
// so the row-major scheme stays visible.
#[allow(clippy::erasing_op, clippy::identity_op)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(x: i64, y: i64) -> Point {
        Point::ints(x, y)
    }

    #[test]
    fn rational_helpers_reduce() {
        assert_eq!(rq(2, 4), rq(1, 2));
        assert_eq!(rq(-3, -6), rq(1, 2));
        assert_eq!(sign(&rq(-1, 2)), -1);
        assert_eq!(sign(&ri(0)), 0);
        assert_eq!(sign(&rq(7, 3)), 1);
    }

    #[test]
    fn orientation_signs() {
        assert_eq!(orientation(&pt(0, 0), &pt(1, 0), &pt(0, 1)), 1);
        assert_eq!(orientation(&pt(0, 0), &pt(0, 1), &pt(1, 0)), -1);
        assert_eq!(orientation(&pt(0, 0), &pt(1, 1), &pt(2, 2)), 0);
        assert_eq!(orientation(&pt(0, 0), &pt(2, 0), &pt(1, 0)), 0);
    }

    #[test]
    fn on_segment_predicates() {
        let (a, b) = (pt(0, 0), pt(4, 0));
        assert!(point_on_segment(&pt(2, 0), &a, &b));
        assert!(point_on_segment(&pt(0, 0), &a, &b));
        assert!(point_on_segment(&pt(4, 0), &a, &b));
        assert!(!point_on_segment(&pt(5, 0), &a, &b));
        assert!(!point_on_segment(&pt(2, 1), &a, &b));
        assert!(point_in_open_segment(&pt(2, 0), &a, &b));
        assert!(!point_in_open_segment(&pt(0, 0), &a, &b));
        assert!(!point_in_open_segment(&pt(4, 0), &a, &b));
    }

    #[test]
    fn overlap_full_side_opposite_directions() {
        // The same side traversed in opposite directions by two triangles.
        let got = segment_overlap(&pt(0, 0), &pt(0, -2), &pt(0, -2), &pt(0, 0)).unwrap();
        assert_eq!(got, (pt(0, 0), pt(0, -2)));
    }

    #[test]
    fn overlap_partial() {
        let got = segment_overlap(&pt(0, 0), &pt(4, 0), &pt(1, 0), &pt(6, 0)).unwrap();
        assert_eq!(got, (pt(1, 0), pt(4, 0)));

        let half = Point::new(rq(1, 2), ri(0));
        let got = segment_overlap(&pt(0, 0), &pt(1, 0), &half, &Point::new(rq(3, 2), ri(0)));
        assert_eq!(got.unwrap(), (half, pt(1, 0)));
    }

    #[test]
    fn overlap_containment() {
        let got = segment_overlap(&pt(0, 0), &pt(10, 0), &pt(3, 0), &pt(7, 0)).unwrap();
        assert_eq!(got, (pt(3, 0), pt(7, 0)));
    }

    #[test]
    fn overlap_rejects_touch_and_disjoint() {
        assert_eq!(
            segment_overlap(&pt(0, 0), &pt(1, 0), &pt(1, 0), &pt(2, 0)),
            None
        );
        assert_eq!(
            segment_overlap(&pt(0, 0), &pt(1, 0), &pt(2, 0), &pt(3, 0)),
            None
        );
        assert_eq!(
            segment_overlap(&pt(0, 0), &pt(1, 0), &pt(0, 1), &pt(1, 1)),
            None
        );
        assert_eq!(
            segment_overlap(&pt(0, 0), &pt(1, 0), &pt(0, 0), &pt(0, 1)),
            None
        );
        // Properly crossing segments are not collinear overlaps.
        assert_eq!(
            segment_overlap(&pt(0, 0), &pt(2, 2), &pt(0, 2), &pt(2, 0)),
            None
        );
    }

    #[test]
    fn segment_intersection_cases() {
        assert!(segments_intersect(
            &pt(0, 0),
            &pt(2, 2),
            &pt(0, 2),
            &pt(2, 0)
        ));
        assert!(segments_intersect(
            &pt(0, 0),
            &pt(2, 0),
            &pt(2, 0),
            &pt(3, 5)
        ));
        assert!(segments_intersect(
            &pt(0, 0),
            &pt(4, 0),
            &pt(1, 0),
            &pt(3, 0)
        ));
        assert!(!segments_intersect(
            &pt(0, 0),
            &pt(1, 0),
            &pt(2, 0),
            &pt(3, 0)
        ));
        assert!(!segments_intersect(
            &pt(0, 0),
            &pt(1, 0),
            &pt(0, 1),
            &pt(1, 1)
        ));
        assert!(!segments_intersect(
            &pt(0, 0),
            &pt(1, 0),
            &pt(5, 0),
            &pt(5, 1)
        ));
    }

    #[test]
    fn line_intersections() {
        assert_eq!(
            line_intersection(&pt(0, 0), &pt(2, 2), &pt(0, 2), &pt(2, 0)),
            LineRelation::Meet(pt(1, 1))
        );
        assert_eq!(
            line_intersection(&pt(0, 0), &pt(1, 0), &pt(0, 1), &pt(1, 1)),
            LineRelation::Parallel
        );
        assert_eq!(
            line_intersection(&pt(0, 0), &pt(1, 0), &pt(3, 0), &pt(2, 0)),
            LineRelation::SameLine
        );
    }

    #[test]
    fn triangle_normalizes_to_ccw() {
        let t = Triangle::from_ints((0, 0), (0, 4), (4, 0)).unwrap();
        assert_eq!(
            orientation(&t.vertices()[0], &t.vertices()[1], &t.vertices()[2]),
            1
        );
        assert_eq!(t.area2(), ri(16));
        assert!(Triangle::from_ints((0, 0), (1, 1), (2, 2)).is_err());
        assert!(Triangle::from_ints((0, 0), (0, 0), (1, 1)).is_err());
    }

    #[test]
    fn triangle_containment() {
        let t = Triangle::from_ints((0, 0), (4, 0), (0, 4)).unwrap();
        assert!(t.contains_strict(&pt(1, 1)));
        assert!(!t.contains_strict(&pt(2, 0)));
        assert!(t.contains_closed(&pt(2, 0)));
        assert!(t.boundary_contains(&pt(2, 2)));
        assert!(!t.contains_closed(&pt(3, 3)));
        assert_eq!(t.centroid(), Point::new(rq(4, 3), rq(4, 3)));
    }

    #[test]
    fn clip_and_area() {
        let t = [pt(0, 0), pt(1, 0), pt(0, 1)];
        assert_eq!(polygon_area2(&t), ri(1));
        // Clip the unit right triangle to x <= 1/2 (left of the upward line
        // x = 1/2).
        let a = Point::new(rq(1, 2), ri(0));
        let b = Point::new(rq(1, 2), ri(1));
        let clipped = clip_polygon_halfplane(&t, &a, &b);
        assert_eq!(polygon_area2(&clipped), rq(3, 4));
        // The complementary clip keeps the remaining quarter.
        let other = clip_polygon_halfplane(&t, &b, &a);
        assert_eq!(polygon_area2(&other), rq(1, 4));
    }

    #[test]
    fn disjoint_interiors_identical_and_contained() {
        let t = Triangle::from_ints((0, 0), (4, 0), (0, 4)).unwrap();
        assert!(!triangles_interiors_disjoint(&t, &t));
        // Medial triangle: corners on the host's sides, interior inside.
        let medial = Triangle::from_ints((2, 0), (2, 2), (0, 2)).unwrap();
        assert!(!triangles_interiors_disjoint(&t, &medial));
        assert!(!triangles_interiors_disjoint(&medial, &t));
    }

    #[test]
    fn disjoint_interiors_side_and_point_contact() {
        let t1 = Triangle::from_ints((0, 0), (2, 0), (0, 2)).unwrap();
        let mirrored = Triangle::from_ints((0, 0), (0, 2), (-2, 0)).unwrap();
        assert!(triangles_interiors_disjoint(&t1, &mirrored));
        let corner_touch = Triangle::from_ints((2, 0), (4, 0), (4, 2)).unwrap();
        assert!(triangles_interiors_disjoint(&t1, &corner_touch));
        let far = Triangle::from_ints((10, 10), (12, 10), (10, 12)).unwrap();
        assert!(triangles_interiors_disjoint(&t1, &far));
    }

    #[test]
    fn overlapping_interiors_detected() {
        let t1 = Triangle::from_ints((0, 0), (4, 0), (2, 3)).unwrap();
        let t2 = Triangle::from_ints((0, 2), (4, 2), (2, -1)).unwrap();
        assert!(!triangles_interiors_disjoint(&t1, &t2));
    }

    #[test]
    fn sliver_through_corner_detected() {
        // A sliver triangle whose boundary passes through a corner and along
        // two boundary points of the host, overlapping only in a thin wedge.
        // Corner/crossing/centroid heuristics all miss this one; the exact
        // clipped-area test must not.
        let t1 = Triangle::from_ints((0, 0), (4, 0), (0, 4)).unwrap();
        let t2 = Triangle::from_ints((-1, -1), (5, -1), (2, 2)).unwrap();
        assert!(!triangles_interiors_disjoint(&t1, &t2));
        assert!(!triangles_interiors_disjoint(&t2, &t1));
    }

    #[test]
    fn angle_ordering() {
        let dirs = [
            Vec2::ints(1, 0),
            Vec2::ints(1, 1),
            Vec2::ints(0, 1),
            Vec2::ints(-1, 1),
            Vec2::ints(-1, 0),
            Vec2::ints(-1, -1),
            Vec2::ints(0, -1),
            Vec2::ints(1, -1),
        ];
        for i in 0..dirs.len() {
            for j in 0..dirs.len() {
                assert_eq!(cmp_angle(&dirs[i], &dirs[j]), i.cmp(&j), "{i} {j}");
            }
        }
        assert_eq!(
            cmp_angle(&Vec2::ints(1, 1), &Vec2::ints(2, 2)),
            Ordering::Equal
        );
    }

    #[test]
    fn lerp_and_midpoint() {
        let a = pt(0, 0);
        let b = pt(4, 2);
        assert_eq!(midpoint(&a, &b), pt(2, 1));
        assert_eq!(lerp(&a, &b, &rq(1, 4)), Point::new(ri(1), rq(1, 2)));
        assert_eq!(lerp(&a, &b, &ri(0)), a);
        assert_eq!(lerp(&a, &b, &ri(1)), b);
    }

    fn small_point() -> impl Strategy<Value = Point> {
        (
            -20i64..20,
            -20i64..20,
            1i64..8,
            -20i64..20,
            -20i64..20,
            1i64..8,
        )
            .prop_map(|(xn, _s, xd, yn, _t, yd)| Point::new(rq(xn, xd), rq(yn, yd)))
    }

    fn small_triangle() -> impl Strategy<Value = Triangle> {
        (small_point(), small_point(), small_point())
            .prop_filter_map("degenerate", |(a, b, c)| Triangle::new(a, b, c).ok())
    }

    proptest! {
        #[test]
        fn orientation_antisymmetry(a in small_point(), b in small_point(), c in small_point()) {
            prop_assert_eq!(orientation(&a, &b, &c), -orientation(&a, &c, &b));
            prop_assert_eq!(orientation(&a, &b, &c), orientation(&b, &c, &a));
        }

        #[test]
        fn disjointness_is_symmetric(t1 in small_triangle(), t2 in small_triangle()) {
            prop_assert_eq!(
                triangles_interiors_disjoint(&t1, &t2),
                triangles_interiors_disjoint(&t2, &t1)
            );
        }

        #[test]
        fn triangle_never_disjoint_from_itself(t in small_triangle()) {
            prop_assert!(!triangles_interiors_disjoint(&t, &t));
        }

        #[test]
        fn far_translates_are_disjoint(t in small_triangle()) {
            let shift = Vec2::ints(1000, 1000);
            let vs = t.vertices();
            let moved = Triangle::new(
                vs[0].shift(&shift),
                vs[1].shift(&shift),
                vs[2].shift(&shift),
            ).unwrap();
            prop_assert!(triangles_interiors_disjoint(&t, &moved));
        }

        #[test]
        fn overlap_is_symmetric(
            a1 in small_point(), b1 in small_point(),
            a2 in small_point(), b2 in small_point(),
        ) {
            let fwd = segment_overlap(&a1, &b1, &a2, &b2).is_some();
            let rev = segment_overlap(&a2, &b2, &a1, &b1).is_some();
            prop_assert_eq!(fwd, rev);
        }
    }

    fn kinds_of(t0: &Triangle, t1: &Triangle) -> Vec<SidePairKind> {
        feasible_intersections(t0, t1)
            .unwrap()
            .into_iter()
            .map(|fi| fi.kind)
            .collect()
    }

    fn count_feasible(kinds: &[SidePairKind]) -> usize {
        kinds
            .iter()
            .filter(|k| matches!(k, SidePairKind::Feasible(_)))
            .count()
    }

    #[test]
    fn side_pairs_of_a_horizontal_translate() {
        // Two copies of the same triangle side by side: the bottoms lie on
        // one directed line (collinear), the facing slants admit one wedge,
        // and nothing else interacts.
        let t0 = Triangle::from_ints((0, 0), (2, 0), (1, 2)).unwrap();
        let t1 = Triangle::from_ints((10, 0), (12, 0), (11, 2)).unwrap();
        let kinds = kinds_of(&t0, &t1);
        assert_eq!(kinds[0], SidePairKind::Collinear); // bottom with bottom
        assert_eq!(
            kinds[1 * 3 + 2],
            SidePairKind::Feasible(Point::ints(6, -8)) // facing slants
        );
        let feasible = count_feasible(&kinds);
        assert_eq!(feasible, 1);
        assert!(feasible <= 9);
    }

    #[test]
    fn side_pairs_of_a_mirrored_shared_side() {
        // Mirror images sharing the full side (0,0)-(2,0): the shared pair
        // runs in opposite directions (not collinear), and no pair is
        // feasible — no third triangle can touch both.
        let t0 = Triangle::from_ints((0, 0), (2, 0), (1, 2)).unwrap();
        let t1 = Triangle::from_ints((0, 0), (1, -2), (2, 0)).unwrap();
        let kinds = kinds_of(&t0, &t1);
        assert_eq!(kinds[0 * 3 + 2], SidePairKind::None); // shared side pair
        assert_eq!(count_feasible(&kinds), 0);
        assert!(!kinds.contains(&SidePairKind::Collinear));
    }

    #[test]
    fn feasibility_is_symmetric_in_the_two_triangles() {
        let t0 = Triangle::from_ints((0, 0), (2, 0), (1, 2)).unwrap();
        let others = [
            Triangle::from_ints((10, 0), (12, 0), (11, 2)).unwrap(),
            Triangle::from_ints((3, 1), (5, 4), (1, 5)).unwrap(),
            Triangle::from_ints((0, -3), (4, -4), (2, -1)).unwrap(),
        ];
        for t1 in &others {
            let fwd = feasible_intersections(&t0, t1).unwrap();
            let rev = feasible_intersections(t1, &t0).unwrap();
            for fi in &fwd {
                let mirror = rev
                    .iter()
                    .find(|r| r.side0 == fi.side1 && r.side1 == fi.side0)
                    .unwrap();
                assert_eq!(fi.kind, mirror.kind);
            }
        }
    }

    #[test]
    fn feasible_pairs_reject_overlapping_interiors() {
        let t0 = Triangle::from_ints((0, 0), (4, 0), (2, 4)).unwrap();
        let t1 = Triangle::from_ints((1, 1), (3, 1), (2, 2)).unwrap();
        assert_eq!(
            feasible_intersections(&t0, &t1),
            Err(GeomError::OverlappingInteriors)
        );
    }
}
