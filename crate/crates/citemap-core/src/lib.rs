//! Core primitives for the citemap toolchain: BibTeX parsing, text-span
//! heuristics for title/author/citation extraction, chip-map layout and
//! rectilinear edge routing, layered flow charts, LaTeX code generation
//! (tables, flow graphs, overpic overlays), pixel-region blanking, and the
//! horizontal-vertical aggregate score.
//!
//! The crate is `no_std` + `alloc`: every operation is a pure function over
//! in-memory values. File IO, process spawning, and image codecs live in the
//! companion CLI crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bib;
pub mod cell_map;
pub mod chip_map;
pub mod error;
pub mod flow_chart;
pub mod flow_graph;
pub mod geom;
pub mod hvam;
pub mod overlay;
pub mod refs;
pub mod svg;

pub use error::Error;

/// Convenience alias used by every fallible operation in this crate.
pub type Result<T> = core::result::Result<T, Error>;
