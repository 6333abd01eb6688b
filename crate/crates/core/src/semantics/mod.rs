//! Finite interpretations, concept evaluation, satisfaction of axioms, and
//! the fixpoint engine for cyclic definitions.

mod eval;
mod interpretation;
mod model_file;

use thiserror::Error;

use crate::syntax::{unfold_cycles, Gci, Parity, Position, SyntaxError, Theory};

pub use eval::{
    eval_concept, f_step, fixpoint_value, gfp, lfp, satisfies, satisfies_fixpoint, Fixpoint,
    Valuation,
};
pub use interpretation::{valid_individual_name, Interpretation};
pub use model_file::{parse_model, write_model};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("the carrier must be nonempty")]
    EmptyCarrier,
    #[error("individual `{0}` declared more than once")]
    DuplicateIndividual(String),
    #[error("`{0}` is not a valid individual name")]
    InvalidIndividual(String),
    #[error("unknown individual `{0}`")]
    UnknownIndividual(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("fixpoint definitions are checked with satisfies_fixpoint")]
    WrongGciKind,
    #[error("`{name}` occurs with {parity:?} negation parity in its own definition")]
    NonMonotoneBody { name: String, parity: Parity },
    #[error("{position}: {message}")]
    ModelFile { position: Position, message: String },
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
}

/// Satisfaction of every axiom of `t` by `i`, in theory order.
///
/// Fixpoint definitions are first unfolded together, so a definition is
/// judged by the self-cyclic equation it collapses to.
pub fn check_theory(i: &Interpretation, t: &Theory) -> Result<Vec<bool>, SemanticsError> {
    let defs: Vec<_> = t.fixdefs().cloned().collect();
    let mut unfolded = unfold_cycles(&defs)?.into_iter();
    t.iter()
        .map(|g| match g {
            Gci::FixDef(_) => {
                let def = unfolded.next().expect("one unfolded definition per input");
                satisfies_fixpoint(i, &def)
            }
            g => satisfies(i, g),
        })
        .collect()
}
