//! Library side of the check runner: document model, parser, and
//! execution engine. The binary in `main.rs` is a thin argument shim.

pub mod document;
pub mod parser;
pub mod runner;
pub mod scalar;
