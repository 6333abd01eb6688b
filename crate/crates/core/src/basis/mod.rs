//! Definable subsets, representative concepts, generation and minimisation
//! of finite bases, and bases for classes generated by several models.

mod family;
mod generate;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::models::ModelsError;
use crate::reasoner::ReasonerError;

pub use family::{
    check_separation, definable_closure, definable_closure_bounded, definable_family,
    representative, separating_family, DefinableFamily, Separation, DEFAULT_DOMAIN_BOUND,
};
pub use generate::{
    basis, covariety_basis, generate_basis, minimize, BasisOptions, BasisReport, BasisStats,
    Minimized,
};

/// How the classes of a basis are chosen: every definable subset with a
/// shallowest witness, or every subset with a constructed representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Closure,
    Separating,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Closure => "closure",
            Mode::Separating => "separating",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "closure" => Ok(Mode::Closure),
            "separating" => Ok(Mode::Separating),
            other => Err(format!(
                "unknown mode `{other}` (expected closure or separating)"
            )),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BasisError {
    #[error("the carrier has {size} individuals, above the bound of {bound}")]
    DomainTooLarge { size: usize, bound: usize },
    #[error("individuals `{0}` and `{1}` share a colour and every role domain")]
    NotSeparable(String, String),
    #[error("`{concept}` does not denote the subset it is listed for")]
    InvalidFamily { concept: String },
    #[error(transparent)]
    Models(#[from] ModelsError),
    #[error(transparent)]
    Reasoner(#[from] ReasonerError),
}

#[cfg(test)]
mod tests;
