//! Satisfiability and entailment for concepts under general TBoxes, and an
//! exhaustive small-model search used as an independent oracle.

mod bounded;
mod store;
mod tableau;

use std::fmt;

use thiserror::Error;

use crate::models::{coarsest_bisimulation, quotient};
use crate::semantics::Interpretation;
use crate::syntax::{Concept, Gci, Signature, Theory};

pub use bounded::{
    bounded_countermodel, bounded_countermodel_over, bounded_countermodel_with,
    DEFAULT_SEARCH_LIMIT,
};

use store::{Id, Store};
use tableau::{Outcome, Tableau};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReasonerError {
    #[error("fixpoint definitions are not supported by the reasoner: {0}")]
    UnsupportedAxiom(String),
    #[error("the search budget was exhausted before the search space")]
    SearchBudgetExceeded,
}

/// Work allowance for one query: node creations plus disjunction splits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget(pub u64);

impl Default for Budget {
    fn default() -> Self {
        Budget(100_000)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Entailed,
    NotEntailed,
    Sat,
    Unsat,
    Timeout,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Entailed => "entailed",
            Verdict::NotEntailed => "not entailed",
            Verdict::Sat => "sat",
            Verdict::Unsat => "unsat",
            Verdict::Timeout => "timeout",
        })
    }
}

/// A verdict with, for `Sat` and `NotEntailed`, a finite model of the TBox
/// that realises the concept or refutes the inclusion. The model is reduced
/// to its bisimulation quotient; for a refuted inclusion its first
/// individual is the counterexample.
#[derive(Clone, Debug)]
pub struct QueryResult {
    pub verdict: Verdict,
    pub witness: Option<Interpretation>,
    /// Budget units consumed.
    pub work: u64,
}

/// A TBox compiled once for many queries.
#[derive(Clone, Debug)]
pub struct Reasoner {
    store: Store,
    clauses: Vec<Id>,
    budget: Budget,
}

impl Reasoner {
    pub fn new(t: &Theory, budget: Budget) -> Result<Self, ReasonerError> {
        Self::build(Store::new(), t, budget)
    }

    /// Like [`Reasoner::new`], with witnesses laid out over `sig` (extended by
    /// any further names the queries use).
    pub fn with_signature(
        sig: &Signature,
        t: &Theory,
        budget: Budget,
    ) -> Result<Self, ReasonerError> {
        let mut store = Store::new();
        for c in sig.concepts() {
            store.concept(c);
        }
        for r in sig.roles() {
            store.role(r);
        }
        Self::build(store, t, budget)
    }

    fn build(mut store: Store, t: &Theory, budget: Budget) -> Result<Self, ReasonerError> {
        let mut clauses = Vec::new();
        for g in t {
            if let Gci::FixDef(d) = g {
                return Err(ReasonerError::UnsupportedAxiom(d.to_string()));
            }
            for (c, d) in g.inclusions() {
                let (x, y) = (store.build(c), store.build(d));
                let nx = store.neg(x);
                clauses.push(store.or([nx, y]));
            }
        }
        clauses.sort_unstable();
        clauses.dedup();
        clauses.retain(|&c| c != store::TOP);
        Ok(Reasoner {
            store,
            clauses,
            budget,
        })
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn set_budget(&mut self, budget: Budget) {
        self.budget = budget;
    }

    fn signature(&self) -> Signature {
        Signature::new(self.store.concepts().to_vec(), self.store.roles().to_vec())
            .expect("names come from parsed concepts")
    }

    pub fn is_satisfiable(&mut self, c: &Concept) -> QueryResult {
        let root = self.store.build(c);
        let (outcome, work) = Tableau::new(&self.store, &self.clauses, self.budget.0).run(root);
        match outcome {
            Outcome::Unsat => QueryResult {
                verdict: Verdict::Unsat,
                witness: None,
                work,
            },
            Outcome::Timeout => QueryResult {
                verdict: Verdict::Timeout,
                witness: None,
                work,
            },
            Outcome::Sat(completion) => {
                let sig = self.signature();
                let names = (0..completion.atoms.len()).map(|k| format!("x{k}"));
                let mut w = Interpretation::new(sig, names).expect("the root is always present");
                for (x, atoms) in completion.atoms.iter().enumerate() {
                    for &a in atoms {
                        w.add_to_concept(a as usize, x);
                    }
                }
                for &(r, x, y) in &completion.edges {
                    w.add_edge(r as usize, x, y);
                }
                let (q, _) =
                    quotient(&w, &coarsest_bisimulation(&w)).expect("coarsest bisimulation");
                QueryResult {
                    verdict: Verdict::Sat,
                    witness: Some(q),
                    work,
                }
            }
        }
    }

    /// Entailment of a subsumption or both halves of an equivalence.
    pub fn entails(&mut self, g: &Gci) -> Result<QueryResult, ReasonerError> {
        if let Gci::FixDef(d) = g {
            return Err(ReasonerError::UnsupportedAxiom(d.to_string()));
        }
        let mut work = 0;
        let mut timed_out = false;
        for (c, d) in g.inclusions() {
            let r = self.is_satisfiable(&c.clone().and(d.clone().not()));
            work += r.work;
            match r.verdict {
                Verdict::Sat => {
                    return Ok(QueryResult {
                        verdict: Verdict::NotEntailed,
                        witness: r.witness,
                        work,
                    })
                }
                Verdict::Timeout => timed_out = true,
                _ => {}
            }
        }
        Ok(QueryResult {
            verdict: if timed_out {
                Verdict::Timeout
            } else {
                Verdict::Entailed
            },
            witness: None,
            work,
        })
    }
}

/// Whether `c` has a model of `t`.
pub fn is_satisfiable(
    c: &Concept,
    t: &Theory,
    budget: Budget,
) -> Result<QueryResult, ReasonerError> {
    Ok(Reasoner::new(t, budget)?.is_satisfiable(c))
}

/// Whether every model of `t` satisfies `g`.
pub fn entails(t: &Theory, g: &Gci, budget: Budget) -> Result<QueryResult, ReasonerError> {
    Reasoner::new(t, budget)?.entails(g)
}
