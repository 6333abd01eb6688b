//! Finite bases of general concept inclusions for finite ALC models.
//!
//! The crate is organised bottom-up:
//!
//! - [`syntax`]: signatures, concepts, axioms, the concrete grammar.
//! - [`semantics`]: finite interpretations, concept evaluation, and least and
//!   greatest fixpoints of cyclic definitions.
//! - [`models`]: morphisms, coproducts, bisimulation quotients and bounded
//!   behaviour signatures.
//! - [`reasoner`]: a tableau procedure for satisfiability and entailment under
//!   general TBoxes, plus an exhaustive small-model search used as an oracle.
//! - [`basis`]: definable subsets, representative concepts, basis generation,
//!   minimisation, and bases for classes generated by several models.

pub mod basis;
pub mod models;
pub mod reasoner;
pub mod semantics;
pub mod set;
pub mod syntax;
#[cfg(test)]
mod testing;

pub use set::IndSet;
pub use syntax::{Concept, Gci, Signature, Theory};
