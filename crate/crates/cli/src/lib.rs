//! Expression-language front end for the set calculus: parsing, a
//! session evaluator, batch execution and DOT export. The `tuniv` binary
//! is a thin wrapper over [`eval::Session`].

pub mod ast;
pub mod batch;
pub mod dot;
pub mod eval;
pub mod lexer;
pub mod parser;
