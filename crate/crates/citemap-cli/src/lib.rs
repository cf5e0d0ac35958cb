//! Command-line toolchain over `citemap-core`: every core module exposed
//! as a subcommand plus a corpus-to-gitem pipeline. The library surface
//! exists for the binary and the integration tests; `cli::run` is the
//! whole programmatic entry point.

pub mod cli;
pub mod fixture;
pub mod json;
pub mod ocr;
pub mod pdf;
pub mod pipeline;

pub use cli::run;
