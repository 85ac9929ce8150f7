//! Construction and verification of touching-triangle representations of
//! planar graphs, using exact rational arithmetic throughout.
//!
//! A *touching-triangle layout* assigns each vertex of a graph an
//! interior-disjoint triangle in the plane such that two triangles share a
//! positive-length boundary segment exactly when the corresponding vertices
//! are adjacent. Single-point touches do not count as adjacency.
//!
//! The crate is `no_std` (with `alloc`); file formats, rendering and the
//! command-line interface live in the companion `tritact` crate.

#![no_std]
#![forbid(unsafe_code)]
// Vertex ids double as indices everywhere; explicit `for v in 0..n` loops
// keep that readable even where only one slice is indexed.
#![allow(clippy::needless_range_loop)]

#[macro_use]
extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod contact;
pub mod geom;
pub mod graph;
pub mod grid;
pub mod necessary;
pub mod outerplanar;
pub mod triangulation;
