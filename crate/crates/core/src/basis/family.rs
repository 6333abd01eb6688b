use std::collections::HashMap;

use indexmap::IndexMap;

use crate::semantics::{eval_concept, Interpretation};
use crate::set::IndSet;
use crate::syntax::Concept;

use super::{BasisError, Mode};

pub const DEFAULT_DOMAIN_BOUND: usize = 20;

/// Subsets of a carrier, each with a concept denoting it, listed by
/// cardinality and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefinableFamily {
    mode: Mode,
    entries: IndexMap<IndSet, Concept>,
}

impl DefinableFamily {
    /// A family from explicit witnesses, each checked against `i`.
    pub fn from_entries(
        i: &Interpretation,
        mode: Mode,
        entries: impl IntoIterator<Item = (IndSet, Concept)>,
    ) -> Result<Self, BasisError> {
        let mut map = IndexMap::new();
        for (s, c) in entries {
            if eval_concept(&c, i) != s {
                return Err(BasisError::InvalidFamily {
                    concept: c.to_string(),
                });
            }
            map.insert(s, c);
        }
        Ok(Self::sorted(mode, map))
    }

    fn sorted(mode: Mode, mut entries: IndexMap<IndSet, Concept>) -> Self {
        entries.sort_by(|a, _, b, _| a.cardinality_order(b));
        DefinableFamily { mode, entries }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, s: &IndSet) -> Option<&Concept> {
        self.entries.get(s)
    }

    /// Position of `s` in the listing.
    pub fn index_of(&self, s: &IndSet) -> Option<usize> {
        self.entries.get_index_of(s)
    }

    pub fn entry(&self, k: usize) -> (&IndSet, &Concept) {
        self.entries.get_index(k).expect("index in range")
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IndSet, &Concept)> {
        self.entries.iter()
    }
}

/// The definable subsets of `i` with shallowest witnesses, for carriers of up
/// to [`DEFAULT_DOMAIN_BOUND`] individuals.
pub fn definable_closure(i: &Interpretation) -> Result<DefinableFamily, BasisError> {
    definable_closure_bounded(i, DEFAULT_DOMAIN_BOUND)
}

/// Breadth-first closure of ∅, the carrier and the name extensions under
/// union, intersection, complement and both restrictions along every role.
/// A subset keeps the witness of the round that first produced it.
pub fn definable_closure_bounded(
    i: &Interpretation,
    bound: usize,
) -> Result<DefinableFamily, BasisError> {
    if i.len() > bound {
        return Err(BasisError::DomainTooLarge {
            size: i.len(),
            bound,
        });
    }
    let n = i.len();
    let sig = i.signature();
    let mut found: IndexMap<IndSet, Concept> = IndexMap::new();
    let mut seed = vec![
        (IndSet::empty(n), Concept::Bot),
        (i.carrier(), Concept::Top),
    ];
    for (c, name) in sig.concepts().iter().enumerate() {
        seed.push((i.concept_ext(c).clone(), Concept::name(name)));
    }
    for (s, c) in seed {
        found.entry(s).or_insert(c);
    }
    // Entries before `old` were known before the last round.
    let mut old = 0;
    loop {
        let known = found.len();
        let mut fresh: Vec<(IndSet, Concept)> = Vec::new();
        for k in old..known {
            let (s, c) = found.get_index(k).expect("in range");
            fresh.push((s.complement(), c.clone().not()));
            for r in sig.roles() {
                for q in [Concept::exists(r, c.clone()), Concept::forall(r, c.clone())] {
                    fresh.push((eval_concept(&q, i), q));
                }
            }
            for j in 0..known {
                let (t, d) = found.get_index(j).expect("in range");
                if j < old || j < k {
                    fresh.push((s.intersection(t), d.clone().and(c.clone())));
                    fresh.push((s.union(t), d.clone().or(c.clone())));
                }
            }
        }
        for (s, c) in fresh {
            found.entry(s).or_insert(c);
        }
        if found.len() == known {
            return Ok(DefinableFamily::sorted(Mode::Closure, found));
        }
        old = known;
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Separation {
    Separable,
    /// Two distinct individuals with the same colour and the same role domains.
    Inseparable(usize, usize),
}

/// Whether every two distinct individuals of equal colour differ on the
/// domain of some role.
pub fn check_separation(i: &Interpretation) -> Separation {
    let roles = i.signature().roles().len();
    let domains: Vec<IndSet> = (0..roles).map(|r| i.role_domain(r)).collect();
    for a in 0..i.len() {
        for b in a + 1..i.len() {
            if i.color(a) == i.color(b) && domains.iter().all(|d| d.contains(a) == d.contains(b)) {
                return Separation::Inseparable(a, b);
            }
        }
    }
    Separation::Separable
}

struct Builder<'a> {
    i: &'a Interpretation,
    /// Concept positions in lexicographic order of their names.
    lex_concepts: Vec<usize>,
    lex_roles: Vec<usize>,
    domains: Vec<IndSet>,
    singletons: HashMap<usize, Concept>,
}

impl<'a> Builder<'a> {
    fn new(i: &'a Interpretation) -> Result<Self, BasisError> {
        if let Separation::Inseparable(a, b) = check_separation(i) {
            return Err(BasisError::NotSeparable(
                i.individual(a).to_string(),
                i.individual(b).to_string(),
            ));
        }
        let sig = i.signature();
        Ok(Builder {
            i,
            lex_concepts: sig.concepts_lexicographic(),
            lex_roles: sig.roles_lexicographic(),
            domains: (0..sig.roles().len()).map(|r| i.role_domain(r)).collect(),
            singletons: HashMap::new(),
        })
    }

    fn name(&self, c: usize) -> Concept {
        Concept::name(&self.i.signature().concepts()[c])
    }

    /// Lexicographically first concept name holding at `x` and not at `y`.
    fn first_difference(&self, x: usize, y: usize) -> Option<usize> {
        self.lex_concepts.iter().copied().find(|&c| {
            let ext = self.i.concept_ext(c);
            ext.contains(x) && !ext.contains(y)
        })
    }

    fn base(&self, a: usize) -> Concept {
        let ext = |c: usize| self.i.concept_ext(c).contains(a);
        match self.lex_concepts.iter().copied().find(|&c| ext(c)) {
            Some(c) => self.name(c),
            None => match self.lex_concepts.first() {
                Some(&c) => self.name(c).not(),
                None => Concept::Top,
            },
        }
    }

    /// A concept holding at `b` and not at `a`.
    fn separator(&self, b: usize, a: usize) -> Concept {
        if let Some(c) = self.first_difference(b, a) {
            return self.name(c);
        }
        if let Some(c) = self.first_difference(a, b) {
            return self.name(c).not();
        }
        let r = self
            .lex_roles
            .iter()
            .copied()
            .find(|&r| self.domains[r].contains(a) != self.domains[r].contains(b))
            .expect("separation was checked");
        let some = Concept::exists(&self.i.signature().roles()[r], Concept::Top);
        if self.domains[r].contains(b) {
            some
        } else {
            some.not()
        }
    }

    fn singleton(&mut self, a: usize) -> Concept {
        if let Some(c) = self.singletons.get(&a) {
            return c.clone();
        }
        let base = self.base(a);
        let ext = eval_concept(&base, self.i);
        let mut parts = vec![base];
        for b in ext.iter().filter(|&b| b != a) {
            parts.push(self.separator(b, a).complement());
        }
        let c = Concept::conjunction(parts);
        self.singletons.insert(a, c.clone());
        c
    }

    fn subset(&mut self, s: &IndSet) -> Concept {
        if s.is_empty() {
            return Concept::Bot;
        }
        let parts: Vec<Concept> = s.iter().map(|a| self.singleton(a)).collect();
        Concept::disjunction(parts)
    }
}

/// The constructed concept denoting `s` in a model meeting the separation
/// condition: ⊥ for ∅, otherwise the disjunction of the singleton
/// representatives in carrier order.
pub fn representative(i: &Interpretation, s: &IndSet) -> Result<Concept, BasisError> {
    assert_eq!(s.universe(), i.len(), "subset of a different carrier");
    Ok(Builder::new(i)?.subset(s))
}

/// Every subset of the carrier with its representative.
pub fn separating_family(i: &Interpretation, bound: usize) -> Result<DefinableFamily, BasisError> {
    if i.len() > bound {
        return Err(BasisError::DomainTooLarge {
            size: i.len(),
            bound,
        });
    }
    let mut b = Builder::new(i)?;
    let entries = IndSet::all_subsets(i.len())
        .into_iter()
        .map(|s| {
            let c = b.subset(&s);
            (s, c)
        })
        .collect();
    Ok(DefinableFamily::sorted(Mode::Separating, entries))
}

/// The family in the requested mode; without one, separating when the
/// model allows it and closure otherwise.
pub fn definable_family(
    i: &Interpretation,
    mode: Option<Mode>,
    bound: usize,
) -> Result<DefinableFamily, BasisError> {
    match mode {
        Some(Mode::Closure) => definable_closure_bounded(i, bound),
        Some(Mode::Separating) => separating_family(i, bound),
        None if check_separation(i) == Separation::Separable => separating_family(i, bound),
        None => definable_closure_bounded(i, bound),
    }
}
