//! Morphisms between finite models, coproducts, bisimulation quotients,
//! bounded behaviour signatures, and checks of the preservation results.

mod behavior;
mod bisim;
mod coproduct;
mod map;
mod morphism;
mod preservation;

use thiserror::Error;

use crate::semantics::SemanticsError;

pub use behavior::{behavior_signature, BehaviorSignature};
pub use bisim::{coarsest_bisimulation, quotient, Partition};
pub use coproduct::{coproduct, coproduct_fold, coproduct_injection};
pub use map::IndividualMap;
pub use morphism::{check_morphism, MorphismCheck, MorphismFlags, Witness};
pub use preservation::{preservation_report, PreservationEntry, PreservationReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelsError {
    #[error("the models do not share a signature")]
    SignatureMismatch,
    #[error("a coproduct needs at least one model")]
    EmptyFamily,
    #[error("map covers {found} individuals, the source has {expected}")]
    MapSize { expected: usize, found: usize },
    #[error("map sends an individual to position {0}, outside the target")]
    MapOutOfRange(usize),
    #[error("line {line}: {message}")]
    MapFile { line: usize, message: String },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition does not respect the model: {0}")]
    NotABisimulationPartition(Witness),
    #[error("not a morphism: {0}")]
    NotMorphism(Witness),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}
