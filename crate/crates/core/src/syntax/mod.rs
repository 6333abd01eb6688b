//! Signatures, concept and axiom syntax trees, the concrete grammar, and
//! unfolding of cyclic definitions.

mod concept;
mod gci;
mod parser;
mod signature;

use std::fmt;

use thiserror::Error;

pub use concept::{render, Concept, Parity};
pub use gci::{unfold_cycles, FixDef, FixSemantics, Gci, Theory};
pub use parser::{
    infer_signature, parse_concept, parse_definition, parse_gci, parse_gci_inferring, parse_theory,
    valid_name,
};
pub use signature::Signature;

/// 1-based line and column.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("{position}: {message}")]
    Syntax { position: Position, message: String },
    #[error("{position}: unknown name `{name}`")]
    UnknownName { name: String, position: Position },
    #[error("name `{0}` declared more than once")]
    DuplicateName(String),
    #[error("`{0}` is not a valid identifier")]
    InvalidIdentifier(String),
    #[error("ill-formed definition system: {0}")]
    IllFormedSystem(String),
}
