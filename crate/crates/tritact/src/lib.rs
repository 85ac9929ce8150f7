//! File formats, SVG rendering and the command-line surface for
//! touching-triangle layouts.
//!
//! The geometric and combinatorial machinery lives in `tritact-core`; this
//! crate adds everything that needs the standard library: canonical JSON
//! documents for graphs, layouts, embeddings and grid descriptions
//! ([`formats`]), and an SVG writer that converts exact rational
//! coordinates to decimals only at the presentation boundary ([`render`]).

pub mod formats;
pub mod render;
