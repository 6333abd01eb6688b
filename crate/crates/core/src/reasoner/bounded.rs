//! Exhaustive search for small countermodels.
//!
//! Interpretations of each size up to the bound are enumerated by
//! backtracking over concept memberships and role edges. Partial assignments
//! are evaluated three-valuedly (definitely in, possibly in) so that a branch
//! is cut as soon as an axiom is definitely violated or the counterexample at
//! individual 0 is definitely lost. Individuals after the first are given
//! non-decreasing colours, which loses no model up to renaming.

use std::collections::HashMap;

use crate::semantics::Interpretation;
use crate::syntax::{Concept, Gci, Signature, Theory};

use super::ReasonerError;

/// Search nodes visited before giving up.
pub const DEFAULT_SEARCH_LIMIT: u64 = 50_000_000;

/// A model of `t` with at most `n` individuals violating `g`, if any.
pub fn bounded_countermodel(
    t: &Theory,
    g: &Gci,
    n: usize,
) -> Result<Option<Interpretation>, ReasonerError> {
    bounded_countermodel_with(t, g, n, DEFAULT_SEARCH_LIMIT)
}

/// Like [`bounded_countermodel`], with the countermodel laid out over `sig`
/// (extended by any further names the axioms use).
pub fn bounded_countermodel_over(
    sig: &Signature,
    t: &Theory,
    g: &Gci,
    n: usize,
) -> Result<Option<Interpretation>, ReasonerError> {
    let mut names = Names::default();
    for c in sig.concepts() {
        index_of(&mut names.concepts, &mut names.concept_index, c);
    }
    for r in sig.roles() {
        index_of(&mut names.roles, &mut names.role_index, r);
    }
    search(names, t, g, n, DEFAULT_SEARCH_LIMIT)
}

pub fn bounded_countermodel_with(
    t: &Theory,
    g: &Gci,
    n: usize,
    limit: u64,
) -> Result<Option<Interpretation>, ReasonerError> {
    search(Names::default(), t, g, n, limit)
}

fn search(
    mut names: Names,
    t: &Theory,
    g: &Gci,
    n: usize,
    limit: u64,
) -> Result<Option<Interpretation>, ReasonerError> {
    assert!((1..=16).contains(&n), "carrier bound must lie in 1..=16");
    let mut axioms = Vec::new();
    let mut prog = Program::default();
    for a in t {
        if let Gci::FixDef(d) = a {
            return Err(ReasonerError::UnsupportedAxiom(d.to_string()));
        }
        for (c, d) in a.inclusions() {
            axioms.push((prog.compile(c, &mut names), prog.compile(d, &mut names)));
        }
    }
    if let Gci::FixDef(d) = g {
        return Err(ReasonerError::UnsupportedAxiom(d.to_string()));
    }
    let queries: Vec<(usize, usize)> = g
        .inclusions()
        .into_iter()
        .map(|(c, d)| (prog.compile(c, &mut names), prog.compile(d, &mut names)))
        .collect();
    let sig = Signature::new(names.concepts.clone(), names.roles.clone()).expect("parsed names");
    let mut visited = 0;
    for m in 1..=n {
        for &query in &queries {
            let mut s = Search::new(
                &prog,
                &axioms,
                query,
                m,
                sig.concepts().len(),
                sig.roles().len(),
            );
            s.limit = limit.saturating_sub(visited);
            let found = s.run();
            visited += s.visited;
            match found {
                Err(()) => return Err(ReasonerError::SearchBudgetExceeded),
                Ok(Some(w)) => return Ok(Some(w.into_model(&sig))),
                Ok(None) => {}
            }
        }
    }
    Ok(None)
}

#[derive(Default)]
struct Names {
    concepts: Vec<String>,
    concept_index: HashMap<String, usize>,
    roles: Vec<String>,
    role_index: HashMap<String, usize>,
}

fn index_of(names: &mut Vec<String>, index: &mut HashMap<String, usize>, n: &str) -> usize {
    *index.entry(n.to_string()).or_insert_with(|| {
        names.push(n.to_string());
        names.len() - 1
    })
}

enum Op {
    Top,
    Bot,
    Name(usize),
    Not(usize),
    And(usize, usize),
    Or(usize, usize),
    Exists(usize, usize),
    Forall(usize, usize),
}

/// Concepts flattened so that every operand precedes its operator.
#[derive(Default)]
struct Program {
    ops: Vec<Op>,
}

impl Program {
    fn compile(&mut self, c: &Concept, names: &mut Names) -> usize {
        let op = match c {
            Concept::Top => Op::Top,
            Concept::Bot => Op::Bot,
            Concept::Name(n) => {
                Op::Name(index_of(&mut names.concepts, &mut names.concept_index, n))
            }
            Concept::Not(a) => Op::Not(self.compile(a, names)),
            Concept::And(a, b) => Op::And(self.compile(a, names), self.compile(b, names)),
            Concept::Or(a, b) => Op::Or(self.compile(a, names), self.compile(b, names)),
            Concept::Exists(r, a) => {
                let r = index_of(&mut names.roles, &mut names.role_index, r);
                Op::Exists(r, self.compile(a, names))
            }
            Concept::Forall(r, a) => {
                let r = index_of(&mut names.roles, &mut names.role_index, r);
                Op::Forall(r, self.compile(a, names))
            }
        };
        self.ops.push(op);
        self.ops.len() - 1
    }
}

/// Bit masks over the carrier: `lo` definitely holds, `hi` possibly holds.
#[derive(Clone, Copy)]
struct Tri {
    lo: u64,
    hi: u64,
}

struct Partial {
    m: usize,
    /// Per concept.
    concepts: Vec<Tri>,
    /// Per role and source individual: successor masks.
    succ: Vec<Vec<Tri>>,
}

impl Partial {
    fn into_model(self, sig: &Signature) -> Interpretation {
        let mut i = Interpretation::new(sig.clone(), (0..self.m).map(|k| format!("d{k}")))
            .expect("nonempty");
        for (c, t) in self.concepts.iter().enumerate() {
            for a in 0..self.m {
                if t.lo >> a & 1 == 1 {
                    i.add_to_concept(c, a);
                }
            }
        }
        for (r, rows) in self.succ.iter().enumerate() {
            for (a, t) in rows.iter().enumerate() {
                for b in 0..self.m {
                    if t.lo >> b & 1 == 1 {
                        i.add_edge(r, a, b);
                    }
                }
            }
        }
        i
    }
}

struct Search<'a> {
    prog: &'a Program,
    axioms: &'a [(usize, usize)],
    query: (usize, usize),
    state: Partial,
    full: u64,
    colors: usize,
    values: Vec<Tri>,
    visited: u64,
    limit: u64,
}

enum Status {
    Dead,
    Open,
    Done,
}

impl<'a> Search<'a> {
    fn new(
        prog: &'a Program,
        axioms: &'a [(usize, usize)],
        query: (usize, usize),
        m: usize,
        concepts: usize,
        roles: usize,
    ) -> Self {
        let full = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let open = Tri { lo: 0, hi: full };
        Search {
            prog,
            axioms,
            query,
            state: Partial {
                m,
                concepts: vec![open; concepts],
                succ: vec![vec![open; m]; roles],
            },
            full,
            colors: concepts,
            values: vec![Tri { lo: 0, hi: 0 }; prog.ops.len()],
            visited: 0,
            limit: 0,
        }
    }

    fn evaluate(&mut self) {
        let s = &self.state;
        let full = self.full;
        for (k, op) in self.prog.ops.iter().enumerate() {
            let v = match *op {
                Op::Top => Tri { lo: full, hi: full },
                Op::Bot => Tri { lo: 0, hi: 0 },
                Op::Name(c) => s.concepts[c],
                Op::Not(a) => {
                    let x = self.values[a];
                    Tri {
                        lo: !x.hi & full,
                        hi: !x.lo & full,
                    }
                }
                Op::And(a, b) => {
                    let (x, y) = (self.values[a], self.values[b]);
                    Tri {
                        lo: x.lo & y.lo,
                        hi: x.hi & y.hi,
                    }
                }
                Op::Or(a, b) => {
                    let (x, y) = (self.values[a], self.values[b]);
                    Tri {
                        lo: x.lo | y.lo,
                        hi: x.hi | y.hi,
                    }
                }
                Op::Exists(r, a) => {
                    let x = self.values[a];
                    let mut t = Tri { lo: 0, hi: 0 };
                    for (i, e) in s.succ[r].iter().enumerate() {
                        t.lo |= u64::from(e.lo & x.lo != 0) << i;
                        t.hi |= u64::from(e.hi & x.hi != 0) << i;
                    }
                    t
                }
                Op::Forall(r, a) => {
                    let x = self.values[a];
                    let mut t = Tri { lo: 0, hi: 0 };
                    for (i, e) in s.succ[r].iter().enumerate() {
                        t.lo |= u64::from(e.hi & !x.lo & full == 0) << i;
                        t.hi |= u64::from(e.lo & !x.hi & full == 0) << i;
                    }
                    t
                }
            };
            self.values[k] = v;
        }
    }

    fn status(&mut self) -> Status {
        self.evaluate();
        let v = &self.values;
        let (qc, qd) = (v[self.query.0], v[self.query.1]);
        if qc.hi & 1 == 0 || qd.lo & 1 == 1 {
            return Status::Dead;
        }
        let mut settled = qc.lo & 1 == 1 && qd.hi & 1 == 0;
        for &(c, d) in self.axioms {
            if v[c].lo & !v[d].hi != 0 {
                return Status::Dead;
            }
            settled &= v[c].hi & !v[d].lo == 0;
        }
        if settled {
            Status::Done
        } else {
            Status::Open
        }
    }

    /// `Err` when the limit is hit.
    fn run(&mut self) -> Result<Option<Partial>, ()> {
        if self.color(0, 0)? {
            // Fix every undetermined fact to false.
            for t in self.state.concepts.iter_mut() {
                t.hi = t.lo;
            }
            for rows in self.state.succ.iter_mut() {
                for t in rows.iter_mut() {
                    t.hi = t.lo;
                }
            }
            let m = self.state.m;
            let empty = Partial {
                m,
                concepts: Vec::new(),
                succ: Vec::new(),
            };
            return Ok(Some(std::mem::replace(&mut self.state, empty)));
        }
        Ok(None)
    }

    fn tick(&mut self) -> Result<Status, ()> {
        self.visited += 1;
        if self.visited > self.limit {
            return Err(());
        }
        Ok(self.status())
    }

    /// Assign whole colours to individuals `a..`, no smaller than `floor`
    /// from the second individual on; then the edges.
    fn color(&mut self, a: usize, floor: u64) -> Result<bool, ()> {
        if a == self.state.m {
            return self.edge(0);
        }
        let k = self.colors;
        let start = if a >= 2 { floor } else { 0 };
        for col in start..(1u64 << k) {
            for c in 0..k {
                let t = &mut self.state.concepts[c];
                t.lo &= !(1 << a);
                t.hi &= !(1 << a);
                if col >> c & 1 == 1 {
                    t.lo |= 1 << a;
                    t.hi |= 1 << a;
                }
            }
            match self.tick()? {
                Status::Dead => {}
                Status::Done => return Ok(true),
                Status::Open => {
                    if self.color(a + 1, col)? {
                        return Ok(true);
                    }
                }
            }
        }
        for c in 0..k {
            self.state.concepts[c].hi |= 1 << a;
            self.state.concepts[c].lo &= !(1 << a);
        }
        Ok(false)
    }

    fn edge(&mut self, k: usize) -> Result<bool, ()> {
        let m = self.state.m;
        let roles = self.state.succ.len();
        if k == roles * m * m {
            return Ok(false);
        }
        // Row-major from individual 0: source, then role, then target.
        let (a, rest) = (k / (roles * m), k % (roles * m));
        let (r, b) = (rest / m, rest % m);
        for on in [false, true] {
            let t = &mut self.state.succ[r][a];
            if on {
                t.lo |= 1 << b;
            } else {
                t.hi &= !(1 << b);
            }
            match self.tick()? {
                Status::Dead => {}
                Status::Done => return Ok(true),
                Status::Open => {
                    if self.edge(k + 1)? {
                        return Ok(true);
                    }
                }
            }
            let t = &mut self.state.succ[r][a];
            t.lo &= !(1 << b);
            t.hi |= 1 << b;
        }
        Ok(false)
    }
}
