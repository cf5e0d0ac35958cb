//! Crate-wide error type.

use alloc::string::String;

/// Errors produced by core operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// A bib entry opened with `@` was never closed before end of input.
    #[error("unbalanced bib entry starting at line {start_line}")]
    UnbalancedEntry { start_line: usize },

    /// A bib entry is missing its type or citation label.
    #[error("malformed bib entry at line {start_line}: {reason}")]
    MalformedEntry { start_line: usize, reason: String },

    /// Table grid rows differ in length.
    #[error("ragged grid: row {row} has {got} cells, expected {expected}")]
    RaggedGrid { row: usize, got: usize, expected: usize },

    /// More colors requested than the three single-channel families hold.
    #[error("cannot allocate {n} distinct colors (max 765)")]
    TooManyColors { n: usize },

    /// Edge routing ran out of free lanes inside the big box.
    #[error("lane capacity exhausted routing edge {from} -> {to}")]
    LaneExhausted { from: usize, to: usize },

    /// A cite list violated its structural invariants.
    #[error("invalid cite list: {reason}")]
    InvalidCiteList { reason: String },

    /// A flow spec referenced an unknown node or violated level order.
    #[error("invalid flow spec: {reason}")]
    InvalidFlowSpec { reason: String },

    /// Level inference failed because the edge relation is cyclic.
    #[error("flow contains a cycle involving node '{node}'")]
    FlowCycle { node: String },

    /// Title/author detection found no spans on the first page.
    #[error("no text on first page")]
    NoTextOnFirstPage,

    /// A text span violated its invariants (empty text, bad bbox, ...).
    #[error("invalid span: {reason}")]
    InvalidSpan { reason: String },

    /// A pixel box does not fit inside the image it is applied to.
    #[error("box ({x0},{y0})-({x1},{y1}) out of bounds for {width}x{height} image")]
    BoxOutOfBounds { x0: u32, y0: u32, x1: u32, y1: u32, width: u32, height: u32 },

    /// An OCR engine output line did not match `x0 y0 x1 y1 <text> <conf>`.
    #[error("unparseable OCR region line: '{line}'")]
    BadOcrLine { line: String },

    /// A numeric argument was outside its documented range.
    #[error("invalid argument: {reason}")]
    InvalidArgument { reason: String },
}
