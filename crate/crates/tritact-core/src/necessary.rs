//! Necessary conditions for a graph to admit a touching-triangle layout.
//!
//! Two kinds of filters live here. The combinatorial one, [`check_necessary`],
//! bounds how many common neighbors two vertices can have and how many edges
//! those common neighbors can span: for adjacent pairs at most 3 common
//! neighbors spanning at most 1 edge, for arbitrary pairs at most 4 spanning
//! at most 2. The geometric one, [`mutual_contact_capacity`], bounds — for two
//! concretely placed triangles — how many further triangles could touch both
//! at once, by classifying all nine directed side pairs (see
//! [`crate::geom::feasible_intersections`]): each simultaneous toucher needs
//! either a feasible side pair for its wedge corner or the (single) collinear
//! side pair.

use alloc::vec::Vec;
use core::fmt;

use crate::geom::{feasible_intersections, GeomError, SidePairKind, Triangle};
use crate::graph::Graph;

/// Which bound a vertex pair violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// Adjacent pair with more than 3 common neighbors.
    AdjacentCommonNeighbors,
    /// Adjacent pair whose common neighbors span more than 1 edge.
    AdjacentCommonEdges,
    /// Pair (any) with more than 4 common neighbors.
    AnyCommonNeighbors,
    /// Pair (any) whose common neighbors span more than 2 edges.
    AnyCommonEdges,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::AdjacentCommonNeighbors => "adjacent-pair common neighbors",
            ViolationKind::AdjacentCommonEdges => "adjacent-pair common-neighbor edges",
            ViolationKind::AnyCommonNeighbors => "pair common neighbors",
            ViolationKind::AnyCommonEdges => "pair common-neighbor edges",
        };
        f.write_str(s)
    }
}

/// One witnessed violation: the pair, the bound kind, the observed count and
/// the bound it exceeds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub u: usize,
    pub v: usize,
    pub kind: ViolationKind,
    pub observed: usize,
    pub bound: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pair ({}, {}): {} = {} exceeds bound {}",
            self.u, self.v, self.kind, self.observed, self.bound
        )
    }
}

/// Outcome of the combinatorial necessity check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NecessityVerdict {
    pub violations: Vec<Violation>,
}

impl NecessityVerdict {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for NecessityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return f.write_str("all vertex-pair bounds hold");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Check every vertex pair of `g` against the common-neighborhood bounds.
/// Adjacent pairs must have at most 3 common neighbors spanning at most 1
/// edge; arbitrary pairs at most 4 spanning at most 2. Each violated bound
/// yields one witnessed [`Violation`]; the verdict passes iff none occur.
pub fn check_necessary(g: &Graph) -> NecessityVerdict {
    let n = g.n();
    let mut verdict = NecessityVerdict::default();
    for u in 0..n {
        for v in u + 1..n {
            let common: Vec<usize> = g
                .neighbors(u)
                .filter(|&w| w != v && g.has_edge(v, w))
                .collect();
            let nuv = common.len();
            let mut euv = 0usize;
            for (i, &w1) in common.iter().enumerate() {
                for &w2 in &common[i + 1..] {
                    if g.has_edge(w1, w2) {
                        euv += 1;
                    }
                }
            }
            let adjacent = g.has_edge(u, v);
            let mut push = |kind, observed, bound| {
                if observed > bound {
                    verdict.violations.push(Violation {
                        u,
                        v,
                        kind,
                        observed,
                        bound,
                    });
                }
            };
            if adjacent {
                push(ViolationKind::AdjacentCommonNeighbors, nuv, 3);
                push(ViolationKind::AdjacentCommonEdges, euv, 1);
            }
            push(ViolationKind::AnyCommonNeighbors, nuv, 4);
            push(ViolationKind::AnyCommonEdges, euv, 2);
        }
    }
    verdict
}

/// Upper bound on how many triangles could simultaneously touch both `t0`
/// and `t1`: the number of feasible side pairs, plus one if some side pair
/// lies on a common directed line (one triangle can touch along that line).
/// Errors if the interiors overlap.
///
/// At most one collinear side pair can exist: a collinear pair needs one
/// side from each triangle on a single common directed line, a second such
/// line would force both triangles to place a vertex at the two lines'
/// intersection point, and two interior-disjoint triangles each wedged into
/// the same left-left corner would overlap. Hence "plus one" is exact, not a
/// truncation of a count.
pub fn mutual_contact_capacity(t0: &Triangle, t1: &Triangle) -> Result<usize, GeomError> {
    let pairs = feasible_intersections(t0, t1)?;
    let feasible = pairs
        .iter()
        .filter(|fi| matches!(fi.kind, SidePairKind::Feasible(_)))
        .count();
    let collinear = pairs.iter().any(|fi| fi.kind == SidePairKind::Collinear);
    Ok(feasible + usize::from(collinear))
}

/// [`mutual_contact_capacity`] refined by already-placed triangles: a
/// feasible corner site that lies strictly inside a placed triangle cannot
/// host a new corner, so it is discounted. Sites on a placed boundary are
/// conservatively kept. Placed triangles must not overlap `t0` or `t1`.
pub fn mutual_contact_capacity_with_blockers(
    t0: &Triangle,
    t1: &Triangle,
    blockers: &[Triangle],
) -> Result<usize, GeomError> {
    use crate::geom::triangles_interiors_disjoint;
    for b in blockers {
        if !triangles_interiors_disjoint(t0, b) || !triangles_interiors_disjoint(t1, b) {
            return Err(GeomError::OverlappingInteriors);
        }
    }
    let pairs = feasible_intersections(t0, t1)?;
    let feasible = pairs
        .iter()
        .filter(|fi| match &fi.kind {
            SidePairKind::Feasible(p) => !blockers.iter().any(|b| b.contains_strict(p)),
            _ => false,
        })
        .count();
    let collinear = pairs.iter().any(|fi| fi.kind == SidePairKind::Collinear);
    Ok(feasible + usize::from(collinear))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contact::{contact_graph, Layout};
    use crate::geom::Point;
    use crate::graph::Graph;

    fn graph_with_edges(n: usize, edges: &[(usize, usize)]) -> Graph {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v).unwrap();
        }
        g
    }

    #[test]
    fn four_common_neighbors_of_an_edge_violate() {
        // u=0, v=1 adjacent; w=2..5 all joined to both; no other edges.
        let mut edges = vec![(0, 1)];
        for w in 2..6 {
            edges.push((0, w));
            edges.push((1, w));
        }
        let verdict = check_necessary(&graph_with_edges(6, &edges));
        assert_eq!(
            verdict.violations,
            vec![Violation {
                u: 0,
                v: 1,
                kind: ViolationKind::AdjacentCommonNeighbors,
                observed: 4,
                bound: 3,
            }]
        );
    }

    #[test]
    fn two_edges_among_common_neighbors_of_an_edge_violate() {
        // u=0, v=1 adjacent; w=2,3,4 joined to both; edges (2,3) and (3,4).
        // The headline violation is at (0,1); the same density also tips the
        // pairs (0,3) and (1,3) — each sees the 2-edge path through the other
        // hub — and the non-adjacent pair (2,4), whose common neighbors
        // {0,1,3} span 3 edges.
        let mut edges = vec![(0, 1), (2, 3), (3, 4)];
        for w in 2..5 {
            edges.push((0, w));
            edges.push((1, w));
        }
        let verdict = check_necessary(&graph_with_edges(5, &edges));
        let adj = |u, v| Violation {
            u,
            v,
            kind: ViolationKind::AdjacentCommonEdges,
            observed: 2,
            bound: 1,
        };
        assert_eq!(
            verdict.violations,
            vec![
                adj(0, 1),
                adj(0, 3),
                adj(1, 3),
                Violation {
                    u: 2,
                    v: 4,
                    kind: ViolationKind::AnyCommonEdges,
                    observed: 3,
                    bound: 2,
                },
            ]
        );
    }

    #[test]
    fn nonadjacent_bounds_also_checked() {
        // u=0 and v=1 NOT adjacent; five common neighbors.
        let mut edges = Vec::new();
        for w in 2..7 {
            edges.push((0, w));
            edges.push((1, w));
        }
        let verdict = check_necessary(&graph_with_edges(7, &edges));
        assert_eq!(verdict.violations.len(), 1);
        assert_eq!(
            verdict.violations[0].kind,
            ViolationKind::AnyCommonNeighbors
        );
        assert_eq!(verdict.violations[0].observed, 5);
        assert_eq!(verdict.violations[0].bound, 4);
    }

    #[test]
    fn builder_input_families_pass() {
        use crate::grid::{hex_grid_graph, square_grid_graph};
        for g in [
            square_grid_graph(4, 5),
            square_grid_graph(1, 7),
            hex_grid_graph(2),
        ] {
            assert!(check_necessary(&g).passed());
        }
        // Cycles and a fan (outerplanar staples).
        for n in 3..8 {
            let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            assert!(check_necessary(&graph_with_edges(n, &edges)).passed());
        }
        let mut fan = vec![(0, 1)];
        for i in 1..6 {
            fan.push((0, i + 1));
            fan.push((i, i + 1));
        }
        assert!(check_necessary(&graph_with_edges(7, &fan)).passed());
    }

    #[test]
    fn k4_passes_the_necessary_conditions() {
        let k4 = graph_with_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert!(check_necessary(&k4).passed());
    }

    #[test]
    fn capacity_of_translated_pair() {
        // One wedge between the facing slants, one collinear bottom line.
        let t0 = Triangle::from_ints((0, 0), (2, 0), (1, 2)).unwrap();
        let t1 = Triangle::from_ints((10, 0), (12, 0), (11, 2)).unwrap();
        assert_eq!(mutual_contact_capacity(&t0, &t1), Ok(2));
    }

    #[test]
    fn capacity_with_contained_shared_side_and_low_apex_is_two() {
        // The lower triangle's bottom side contains the upper triangle's
        // bottom side; the lower apex hangs centrally below. Exactly the
        // two end-wedges remain.
        let t0 = Triangle::from_ints((0, 0), (2, 0), (1, 2)).unwrap();
        let t1 = Triangle::from_ints((3, 0), (-1, 0), (1, -2)).unwrap();
        assert_eq!(mutual_contact_capacity(&t0, &t1), Ok(2));
    }

    #[test]
    fn capacity_with_partially_overlapping_shared_side_is_two() {
        // Sides overlap along (1,0)-(2,0); the lower apex sits between the
        // extended slant lines of the upper triangle.
        let t0 = Triangle::from_ints((0, 0), (2, 0), (1, 2)).unwrap();
        let t1 = Triangle::from_ints((4, 0), (1, 0), (2, -2)).unwrap();
        assert_eq!(mutual_contact_capacity(&t0, &t1), Ok(2));
    }

    #[test]
    fn collinear_pairs_cap_at_five() {
        // Side-by-side on a common baseline, various widths/apexes: at most
        // 4 feasible pairs plus the collinear credit.
        let bases = [
            ((0, 0), (2, 0), (1, 2), (3, 0), (6, 0), (4, 3)),
            ((0, 0), (4, 0), (1, 3), (5, 0), (7, 0), (6, 1)),
            ((0, 0), (1, 0), (0, 4), (2, 0), (9, 0), (3, 5)),
        ];
        for (a, b, c, d, e, f) in bases {
            let t0 = Triangle::from_ints(a, b, c).unwrap();
            let t1 = Triangle::from_ints(d, e, f).unwrap();
            let pairs = feasible_intersections(&t0, &t1).unwrap();
            assert!(pairs.iter().any(|p| p.kind == SidePairKind::Collinear));
            let cap = mutual_contact_capacity(&t0, &t1).unwrap();
            assert!(cap <= 5, "capacity {cap} exceeds collinear bound");
        }
    }

    /// Two triangles side by side on a common baseline, classified by how
    /// the slant nearest the partner behaves. The counts were enumerated by
    /// hand over all nine directed side pairs for each configuration.
    #[test]
    fn capacity_of_baseline_collinear_family_peaks_at_three() {
        let t0 = Triangle::from_ints((0, 0), (2, 0), (1, 2)).unwrap();
        // Facing slants parallel: only the baseline credit remains.
        let parallel = Triangle::from_ints((3, 0), (5, 0), (2, 2)).unwrap();
        assert_eq!(mutual_contact_capacity(&t0, &parallel), Ok(1));
        // Facing slant lines crossing below the baseline: one wedge in the
        // gap plus the baseline credit.
        let meet_below = Triangle::from_ints((3, 0), (5, 0), (6, 2)).unwrap();
        assert_eq!(mutual_contact_capacity(&t0, &meet_below), Ok(2));
        // Facing slant lines crossing above, with the partner's far slant
        // shallow enough to pass over t0: a "roof" wedge appears on each
        // over-passing line, giving the peak of two wedges plus the credit.
        let meet_above = Triangle::from_ints((4, 0), (6, 0), (3, 1)).unwrap();
        assert_eq!(mutual_contact_capacity(&t0, &meet_above), Ok(3));
        // A flat sliver overhanging a small partner tucked beneath it peaks
        // the same way.
        let roof = Triangle::from_ints((0, 0), (2, 0), (10, 5)).unwrap();
        let tucked = Triangle::from_ints((3, 0), (5, 0), (4, 1)).unwrap();
        assert_eq!(mutual_contact_capacity(&roof, &tucked), Ok(3));
    }

    #[test]
    fn blockers_discount_covered_corner_sites() {
        let t0 = Triangle::from_ints((0, 0), (2, 0), (1, 2)).unwrap();
        let t1 = Triangle::from_ints((10, 0), (12, 0), (11, 2)).unwrap();
        // Unblocked: one wedge at (6,-8) plus the baseline credit.
        assert_eq!(mutual_contact_capacity(&t0, &t1), Ok(2));
        let covering = Triangle::from_ints((5, -9), (7, -9), (6, -7)).unwrap();
        assert_eq!(
            mutual_contact_capacity_with_blockers(&t0, &t1, &[covering]),
            Ok(1)
        );
        // A far-away triangle discounts nothing.
        let far = Triangle::from_ints((40, 40), (44, 40), (42, 44)).unwrap();
        assert_eq!(
            mutual_contact_capacity_with_blockers(&t0, &t1, &[far]),
            Ok(2)
        );
        // A triangle whose corner merely touches the site keeps it: only
        // strict interior coverage makes a site unusable.
        let corner_touch = Triangle::from_ints((6, -8), (8, -10), (6, -10)).unwrap();
        assert_eq!(
            mutual_contact_capacity_with_blockers(&t0, &t1, &[corner_touch]),
            Ok(2)
        );
        // Blockers must not overlap the pair itself.
        let overlapping = Triangle::from_ints((0, 0), (2, 0), (1, 1)).unwrap();
        assert_eq!(
            mutual_contact_capacity_with_blockers(&t0, &t1, &[overlapping]),
            Err(GeomError::OverlappingInteriors)
        );
    }

    #[test]
    fn capacity_errors_on_overlapping_interiors() {
        let t0 = Triangle::from_ints((0, 0), (4, 0), (2, 4)).unwrap();
        let t1 = Triangle::from_ints((1, 1), (3, 1), (2, 2)).unwrap();
        assert_eq!(
            mutual_contact_capacity(&t0, &t1),
            Err(GeomError::OverlappingInteriors)
        );
    }

    /// A triangle erected at a feasible point, with its two wedge sides
    /// running along the two carrier lines, touches both triangles: the
    /// wedge corner realizes the feasible angle.
    #[test]
    fn wedge_triangles_at_feasible_points_touch_both() {
        let t0 = Triangle::from_ints((0, 0), (2, 0), (1, 2)).unwrap();
        let t1 = Triangle::from_ints((10, 0), (12, 0), (11, 2)).unwrap();
        // Feasible pair: t0 side 1 ((2,0)->(1,2)) with t1 side 2
        // ((11,2)->(10,0)), meeting at (6,-8). Arms run back up the two
        // lines far enough to cover both touched sides fully.
        let p = Point::ints(6, -8);
        let wedge = Triangle::new(p.clone(), Point::ints(1, 2), Point::ints(11, 2)).unwrap();
        // The corner must be one of the enumerated sites (lemma direction).
        let sites: Vec<Point> = feasible_intersections(&t0, &t1)
            .unwrap()
            .into_iter()
            .filter_map(|fi| match fi.kind {
                SidePairKind::Feasible(q) => Some(q),
                _ => None,
            })
            .collect();
        assert!(sites.contains(&p));
        let mut layout = Layout::new();
        layout.insert(0, t0);
        layout.insert(1, t1);
        layout.insert(2, wedge);
        let report = contact_graph(&layout);
        assert!(report.interior_overlaps.is_empty());
        assert!(report.edges.contains(&(0, 2)));
        assert!(report.edges.contains(&(1, 2)));

        // Same exercise at a shared-baseline wedge: triangle below the
        // collinear carrier line touching both bottoms.
        let t0 = Triangle::from_ints((0, 0), (2, 0), (1, 2)).unwrap();
        let t1 = Triangle::from_ints((3, 0), (6, 0), (4, 3)).unwrap();
        let below = Triangle::from_ints((1, 0), (1, -2), (5, 0)).unwrap();
        let mut layout = Layout::new();
        layout.insert(0, t0);
        layout.insert(1, t1);
        layout.insert(2, below);
        let report = contact_graph(&layout);
        assert!(report.interior_overlaps.is_empty());
        assert!(report.edges.contains(&(0, 2)));
        assert!(report.edges.contains(&(1, 2)));
    }

    /// In every produced layout, the number of common contact-neighbors of
    /// any two triangles stays within both the geometric capacity and the
    /// combinatorial pair bounds.
    #[test]
    fn layouts_respect_capacity_and_pair_bounds() {
        use crate::grid::{build_hex_grid, build_square_grid};
        use crate::outerplanar::build_outerplanar;

        let mut layouts = vec![build_square_grid(3, 4), build_hex_grid(2)];
        let mut fan = Graph::new(6);
        for i in 1..5 {
            fan.add_edge(0, i).unwrap();
            fan.add_edge(i, i + 1).unwrap();
        }
        fan.add_edge(0, 5).unwrap();
        layouts.push(build_outerplanar(&fan).unwrap());

        for layout in &layouts {
            let report = contact_graph(layout);
            let ids: Vec<usize> = layout.triangles.keys().copied().collect();
            for (i, &u) in ids.iter().enumerate() {
                for &v in &ids[i + 1..] {
                    let common = ids
                        .iter()
                        .filter(|&&w| {
                            w != u
                                && w != v
                                && report.edges.contains(&(u.min(w), u.max(w)))
                                && report.edges.contains(&(v.min(w), v.max(w)))
                        })
                        .count();
                    let adjacent = report.edges.contains(&(u, v));
                    let bound = if adjacent { 3 } else { 4 };
                    assert!(common <= bound, "pair ({u},{v}): {common} > {bound}");
                    let cap = mutual_contact_capacity(&layout.triangles[&u], &layout.triangles[&v])
                        .unwrap();
                    assert!(common <= cap, "pair ({u},{v}): {common} > capacity {cap}");
                }
            }
        }
    }
}
