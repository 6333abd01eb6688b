use serde::Serialize;

use crate::models::coproduct;
use crate::reasoner::{Budget, Reasoner, Verdict};
use crate::semantics::{eval_concept, Interpretation};
use crate::syntax::{Concept, Gci, Theory};

use super::family::{definable_family, DefinableFamily, DEFAULT_DOMAIN_BOUND};
use super::{BasisError, Mode};

/// Sizes of a generated basis. The first kind is split into its four
/// clauses: name definitions, binary operators, complements, restrictions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BasisStats {
    pub classes: usize,
    pub names: usize,
    pub binary: usize,
    pub complements: usize,
    pub restrictions: usize,
    pub inclusions: usize,
    pub raw_count: usize,
    pub minimized_count: Option<usize>,
    pub eliminated: usize,
    /// Axioms kept only because their redundancy check timed out.
    pub undecided: usize,
}

#[derive(Clone, Debug)]
pub struct BasisReport {
    pub mode: Mode,
    pub raw: Theory,
    pub minimized: Option<Minimized>,
    pub stats: BasisStats,
}

impl BasisReport {
    /// The minimized theory when there is one, else the raw theory.
    pub fn theory(&self) -> &Theory {
        self.minimized.as_ref().map_or(&self.raw, |m| &m.theory)
    }
}

/// The outcome of greedy elimination.
#[derive(Clone, Debug)]
pub struct Minimized {
    pub theory: Theory,
    /// Axioms whose redundancy check ran out of budget; they are kept.
    pub undecided: Vec<Gci>,
    pub eliminated: usize,
}

/// The basis of a finite model over the classes of `fam`: equivalences
/// fixing every name, binary operator, complement and restriction on the
/// classes, then inclusions between classes. An equivalence whose sides
/// coincide syntactically is left out.
pub fn generate_basis(i: &Interpretation, fam: &DefinableFamily) -> BasisReport {
    let mut raw = Theory::new();
    let mut stats = BasisStats {
        classes: fam.len(),
        ..BasisStats::default()
    };
    let class_of = |c: &Concept| -> &Concept {
        let s = eval_concept(c, i);
        fam.get(&s)
            .expect("the family is closed under the constructors")
    };
    let emit = |raw: &mut Theory, lhs: Concept, rhs: &Concept| -> usize {
        if &lhs == rhs {
            return 0;
        }
        raw.push(Gci::equiv(lhs, rhs.clone()));
        1
    };
    let sig = i.signature();
    for (c, name) in sig.concepts().iter().enumerate() {
        let rep = fam.get(i.concept_ext(c)).expect("names are definable");
        stats.names += emit(&mut raw, Concept::name(name), rep);
    }
    let n = fam.len();
    for both in [false, true] {
        for k1 in 0..n {
            for k2 in k1 + 1..n {
                let (c1, c2) = (fam.entry(k1).1.clone(), fam.entry(k2).1.clone());
                let lhs = if both { c1.or(c2) } else { c1.and(c2) };
                let rhs = class_of(&lhs).clone();
                stats.binary += emit(&mut raw, lhs, &rhs);
            }
        }
    }
    for (_, c) in fam.iter() {
        let lhs = c.clone().not();
        let rhs = class_of(&lhs).clone();
        stats.complements += emit(&mut raw, lhs, &rhs);
    }
    for (_, c) in fam.iter() {
        for r in sig.roles() {
            for lhs in [Concept::exists(r, c.clone()), Concept::forall(r, c.clone())] {
                let rhs = class_of(&lhs).clone();
                stats.restrictions += emit(&mut raw, lhs, &rhs);
            }
        }
    }
    for (s1, c1) in fam.iter() {
        for (s2, c2) in fam.iter() {
            if s1 != s2 && s1.is_subset(s2) {
                raw.push(Gci::subsumes(c1.clone(), c2.clone()));
                stats.inclusions += 1;
            }
        }
    }
    stats.raw_count = raw.len();
    BasisReport {
        mode: fam.mode(),
        raw,
        minimized: None,
        stats,
    }
}

/// Greedy elimination from the last axiom back: an axiom goes when the
/// remaining ones entail it. The result entails everything the input does.
pub fn minimize(t: &Theory, budget: Budget) -> Result<Minimized, BasisError> {
    let axioms = t.axioms();
    let mut kept = vec![true; axioms.len()];
    let mut undecided = Vec::new();
    for k in (0..axioms.len()).rev() {
        kept[k] = false;
        let rest: Theory = axioms
            .iter()
            .zip(&kept)
            .filter(|(_, &on)| on)
            .map(|(g, _)| g.clone())
            .collect();
        match Reasoner::new(&rest, budget)?.entails(&axioms[k])?.verdict {
            Verdict::Entailed => {}
            Verdict::Timeout => {
                kept[k] = true;
                undecided.push(axioms[k].clone());
            }
            _ => kept[k] = true,
        }
    }
    undecided.reverse();
    let theory: Theory = axioms
        .iter()
        .zip(&kept)
        .filter(|(_, &on)| on)
        .map(|(g, _)| g.clone())
        .collect();
    Ok(Minimized {
        eliminated: axioms.len() - theory.len(),
        theory,
        undecided,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasisOptions {
    /// `None` picks separating when the model allows it.
    pub mode: Option<Mode>,
    pub minimize: bool,
    pub budget: Budget,
    pub bound: usize,
}

impl Default for BasisOptions {
    fn default() -> Self {
        BasisOptions {
            mode: None,
            minimize: false,
            budget: Budget::default(),
            bound: DEFAULT_DOMAIN_BOUND,
        }
    }
}

/// Family, basis and optional minimisation for one model.
pub fn basis(i: &Interpretation, opts: &BasisOptions) -> Result<BasisReport, BasisError> {
    let fam = definable_family(i, opts.mode, opts.bound)?;
    let mut report = generate_basis(i, &fam);
    if opts.minimize {
        let m = minimize(&report.raw, opts.budget)?;
        report.stats.minimized_count = Some(m.theory.len());
        report.stats.eliminated = m.eliminated;
        report.stats.undecided = m.undecided.len();
        report.minimized = Some(m);
    }
    Ok(report)
}

/// The basis of the class generated by `models`, taken from their coproduct.
pub fn covariety_basis(
    models: &[Interpretation],
    opts: &BasisOptions,
) -> Result<BasisReport, BasisError> {
    let sum = coproduct(models)?;
    basis(&sum, opts)
}
