//! Library surface of the `transversal` CLI: code-definition parsing, gate
//! grammars, command implementations, and the report schema. The binary in
//! `main.rs` is a thin argument-parsing wrapper over [`commands`].

pub mod codefile;
pub mod commands;
pub mod error;
pub mod gatespec;
pub mod report;
