use crate::set::IndSet;
use crate::syntax::{Concept, FixDef, FixSemantics, Gci, Signature};

use super::{Interpretation, SemanticsError};

/// The assignment λ of extensions to names over a finite domain, used when a
/// concept name is read as a fixpoint variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Valuation {
    signature: Signature,
    domain: usize,
    concepts: Vec<IndSet>,
    roles: Vec<Vec<IndSet>>,
}

impl Valuation {
    /// λ taken from `i`, with every name as in the model.
    pub fn from_interpretation(i: &Interpretation) -> Self {
        let sig = i.signature().clone();
        let n = i.len();
        Valuation {
            concepts: (0..sig.concepts().len())
                .map(|c| i.concept_ext(c).clone())
                .collect(),
            roles: (0..sig.roles().len())
                .map(|r| (0..n).map(|a| i.successors(r, a).clone()).collect())
                .collect(),
            domain: n,
            signature: sig,
        }
    }

    /// λ from `i` with the fixpoint variable `name` mapped to ∅.
    pub fn for_fixpoint(i: &Interpretation, name: &str) -> Result<Self, SemanticsError> {
        let mut v = Self::from_interpretation(i);
        let c = v
            .signature
            .concept_index(name)
            .ok_or_else(|| SemanticsError::UnknownName(name.to_string()))?;
        v.concepts[c] = IndSet::empty(v.domain);
        Ok(v)
    }

    pub fn domain_size(&self) -> usize {
        self.domain
    }

    pub fn domain(&self) -> IndSet {
        IndSet::full(self.domain)
    }

    pub fn concept(&self, name: &str) -> Option<&IndSet> {
        self.signature
            .concept_index(name)
            .map(|c| &self.concepts[c])
    }
}

trait Structure {
    fn signature(&self) -> &Signature;
    fn universe(&self) -> usize;
    fn concept(&self, c: usize) -> &IndSet;
    fn successors(&self, r: usize, a: usize) -> &IndSet;
}

impl Structure for Interpretation {
    fn signature(&self) -> &Signature {
        Interpretation::signature(self)
    }
    fn universe(&self) -> usize {
        self.len()
    }
    fn concept(&self, c: usize) -> &IndSet {
        self.concept_ext(c)
    }
    fn successors(&self, r: usize, a: usize) -> &IndSet {
        Interpretation::successors(self, r, a)
    }
}

impl Structure for Valuation {
    fn signature(&self) -> &Signature {
        &self.signature
    }
    fn universe(&self) -> usize {
        self.domain
    }
    fn concept(&self, c: usize) -> &IndSet {
        &self.concepts[c]
    }
    fn successors(&self, r: usize, a: usize) -> &IndSet {
        &self.roles[r][a]
    }
}

fn evaluate<S: Structure>(c: &Concept, s: &S, var: Option<(&str, &IndSet)>) -> IndSet {
    let n = s.universe();
    match c {
        Concept::Top => IndSet::full(n),
        Concept::Bot => IndSet::empty(n),
        Concept::Name(name) => match var {
            Some((v, x)) if v == name => x.clone(),
            _ => {
                let idx = s
                    .signature()
                    .concept_index(name)
                    .unwrap_or_else(|| panic!("concept name `{name}` is not in the signature"));
                s.concept(idx).clone()
            }
        },
        Concept::And(a, b) => {
            let mut out = evaluate(a, s, var);
            out.intersect_with(&evaluate(b, s, var));
            out
        }
        Concept::Or(a, b) => {
            let mut out = evaluate(a, s, var);
            out.union_with(&evaluate(b, s, var));
            out
        }
        Concept::Not(a) => evaluate(a, s, var).complement(),
        Concept::Exists(r, a) | Concept::Forall(r, a) => {
            let ri = s
                .signature()
                .role_index(r)
                .unwrap_or_else(|| panic!("role name `{r}` is not in the signature"));
            let filler = evaluate(a, s, var);
            let existential = matches!(c, Concept::Exists(..));
            IndSet::from_members(
                n,
                (0..n).filter(|&x| {
                    let succ = s.successors(ri, x);
                    if existential {
                        !succ.is_disjoint(&filler)
                    } else {
                        succ.is_subset(&filler)
                    }
                }),
            )
        }
    }
}

/// The extension of `c` in `i`.
///
/// # Panics
///
/// If `c` uses a name outside the signature of `i`; concepts parsed against
/// that signature never do.
pub fn eval_concept(c: &Concept, i: &Interpretation) -> IndSet {
    evaluate(c, i, None)
}

/// Whether `i` satisfies a subsumption or an equivalence.
pub fn satisfies(i: &Interpretation, g: &Gci) -> Result<bool, SemanticsError> {
    match g {
        Gci::Subsumes(c, d) => Ok(eval_concept(c, i).is_subset(&eval_concept(d, i))),
        Gci::Equiv(c, d) => Ok(eval_concept(c, i) == eval_concept(d, i)),
        Gci::FixDef(_) => Err(SemanticsError::WrongGciKind),
    }
}

/// One application of the map X ↦ Y induced by `body`, where `fixname`
/// denotes X and every other name is read through `v`.
pub fn f_step(body: &Concept, fixname: &str, v: &Valuation, x: &IndSet) -> IndSet {
    assert_eq!(
        x.universe(),
        v.domain,
        "argument is not a subset of the domain"
    );
    evaluate(body, v, Some((fixname, x)))
}

/// A fixpoint together with its stabilisation index: the number of
/// applications after which the Kleene chain stopped changing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixpoint {
    pub set: IndSet,
    pub iterations: usize,
}

fn kleene(
    body: &Concept,
    fixname: &str,
    v: &Valuation,
    start: IndSet,
) -> Result<Fixpoint, SemanticsError> {
    let parity = body.negation_parity(fixname);
    if !parity.is_monotone() {
        return Err(SemanticsError::NonMonotoneBody {
            name: fixname.to_string(),
            parity,
        });
    }
    let mut current = start;
    for iterations in 0..=v.domain {
        let next = f_step(body, fixname, v, &current);
        if next == current {
            return Ok(Fixpoint {
                set: current,
                iterations,
            });
        }
        current = next;
    }
    unreachable!(
        "a monotone chain over {} individuals must stabilise",
        v.domain
    )
}

/// Least fixpoint, iterating from ∅.
pub fn lfp(body: &Concept, fixname: &str, v: &Valuation) -> Result<Fixpoint, SemanticsError> {
    kleene(body, fixname, v, IndSet::empty(v.domain))
}

/// Greatest fixpoint, iterating from the whole domain.
pub fn gfp(body: &Concept, fixname: &str, v: &Valuation) -> Result<Fixpoint, SemanticsError> {
    kleene(body, fixname, v, v.domain())
}

/// The fixpoint a definition denotes over the carrier of `i`.
pub fn fixpoint_value(i: &Interpretation, def: &FixDef) -> Result<Fixpoint, SemanticsError> {
    let v = Valuation::for_fixpoint(i, &def.defined)?;
    match def.semantics {
        FixSemantics::Lfp => lfp(&def.body, &def.defined, &v),
        FixSemantics::Gfp => gfp(&def.body, &def.defined, &v),
    }
}

/// Whether the extension of the defined name in `i` is exactly the fixpoint.
pub fn satisfies_fixpoint(i: &Interpretation, def: &FixDef) -> Result<bool, SemanticsError> {
    let fix = fixpoint_value(i, def)?;
    let own = i
        .concept_ext_by_name(&def.defined)
        .ok_or_else(|| SemanticsError::UnknownName(def.defined.clone()))?;
    Ok(&fix.set == own)
}
