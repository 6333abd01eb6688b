use std::collections::HashMap;

use crate::set::IndSet;
use crate::syntax::Signature;

use super::SemanticsError;

/// A finite model: a nonempty carrier of named individuals together with the
/// extension of every concept and role name of its signature.
///
/// Individuals are interned to their declaration position; role extensions are
/// kept as successor sets per individual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpretation {
    signature: Signature,
    individuals: Vec<String>,
    index: HashMap<String, usize>,
    concepts: Vec<IndSet>,
    roles: Vec<Vec<IndSet>>,
}

/// Individual names may contain anything except whitespace and the
/// delimiters of the model file format, and may not start with `#`.
pub fn valid_individual_name(s: &str) -> bool {
    !s.is_empty()
        && !s.starts_with('#')
        && !s.chars().any(|c| c.is_whitespace() || "{}(),=".contains(c))
}

impl Interpretation {
    /// All extensions start out empty.
    pub fn new<I>(signature: Signature, individuals: I) -> Result<Self, SemanticsError>
    where
        I: IntoIterator,
        I::Item: Into<String>,
    {
        let individuals: Vec<String> = individuals.into_iter().map(Into::into).collect();
        if individuals.is_empty() {
            return Err(SemanticsError::EmptyCarrier);
        }
        let mut index = HashMap::with_capacity(individuals.len());
        for (i, name) in individuals.iter().enumerate() {
            if !valid_individual_name(name) {
                return Err(SemanticsError::InvalidIndividual(name.clone()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(SemanticsError::DuplicateIndividual(name.clone()));
            }
        }
        let n = individuals.len();
        Ok(Interpretation {
            concepts: vec![IndSet::empty(n); signature.concepts().len()],
            roles: vec![vec![IndSet::empty(n); n]; signature.roles().len()],
            signature,
            individuals,
            index,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    /// Carrier size.
    pub fn len(&self) -> usize {
        self.individuals.len()
    }

    /// Always false; carriers are nonempty.
    pub fn is_empty(&self) -> bool {
        self.individuals.is_empty()
    }

    pub fn individuals(&self) -> &[String] {
        &self.individuals
    }

    pub fn individual(&self, i: usize) -> &str {
        &self.individuals[i]
    }

    pub fn individual_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    fn lookup(&self, name: &str) -> Result<usize, SemanticsError> {
        self.individual_index(name)
            .ok_or_else(|| SemanticsError::UnknownIndividual(name.to_string()))
    }

    pub fn carrier(&self) -> IndSet {
        IndSet::full(self.len())
    }

    /// Extension of the concept name at signature position `c`.
    pub fn concept_ext(&self, c: usize) -> &IndSet {
        &self.concepts[c]
    }

    pub fn concept_ext_by_name(&self, name: &str) -> Option<&IndSet> {
        self.signature
            .concept_index(name)
            .map(|c| &self.concepts[c])
    }

    /// `r`-successors of individual `a`.
    pub fn successors(&self, r: usize, a: usize) -> &IndSet {
        &self.roles[r][a]
    }

    pub fn has_edge(&self, r: usize, a: usize, b: usize) -> bool {
        self.roles[r][a].contains(b)
    }

    /// Pairs of the role at position `r`, in carrier order.
    pub fn role_pairs(&self, r: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.roles[r]
            .iter()
            .enumerate()
            .flat_map(|(a, succ)| succ.iter().map(move |b| (a, b)))
    }

    /// Individuals with at least one `r`-successor.
    pub fn role_domain(&self, r: usize) -> IndSet {
        IndSet::from_members(
            self.len(),
            (0..self.len()).filter(|&a| !self.roles[r][a].is_empty()),
        )
    }

    /// Positions of the concept names `a` belongs to, in signature order.
    pub fn color(&self, a: usize) -> Vec<usize> {
        (0..self.concepts.len())
            .filter(|&c| self.concepts[c].contains(a))
            .collect()
    }

    pub fn set_concept_ext(&mut self, c: usize, ext: IndSet) {
        assert_eq!(
            ext.universe(),
            self.len(),
            "extension over a different carrier"
        );
        self.concepts[c] = ext;
    }

    pub fn add_to_concept(&mut self, c: usize, a: usize) {
        self.concepts[c].insert(a);
    }

    pub fn add_edge(&mut self, r: usize, a: usize, b: usize) {
        self.roles[r][a].insert(b);
    }

    /// Name-based setter, mainly for building models by hand.
    pub fn set_concept(&mut self, name: &str, members: &[&str]) -> Result<(), SemanticsError> {
        let c = self
            .signature
            .concept_index(name)
            .ok_or_else(|| SemanticsError::UnknownName(name.to_string()))?;
        let mut ext = IndSet::empty(self.len());
        for m in members {
            ext.insert(self.lookup(m)?);
        }
        self.concepts[c] = ext;
        Ok(())
    }

    pub fn add_pair(&mut self, role: &str, a: &str, b: &str) -> Result<(), SemanticsError> {
        let r = self
            .signature
            .role_index(role)
            .ok_or_else(|| SemanticsError::UnknownName(role.to_string()))?;
        let (a, b) = (self.lookup(a)?, self.lookup(b)?);
        self.add_edge(r, a, b);
        Ok(())
    }

    /// `{a, b}` in carrier order; `{}` when empty.
    pub fn format_set(&self, s: &IndSet) -> String {
        let names: Vec<&str> = s.iter().map(|i| self.individual(i)).collect();
        format!("{{{}}}", names.join(", "))
    }

    /// Subset named by individual names.
    pub fn set_of(&self, names: &[&str]) -> Result<IndSet, SemanticsError> {
        let mut s = IndSet::empty(self.len());
        for n in names {
            s.insert(self.lookup(n)?);
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_errors() {
        let sig = Signature::new(["A"], ["r"]).unwrap();
        assert!(matches!(
            Interpretation::new(sig.clone(), Vec::<String>::new()),
            Err(SemanticsError::EmptyCarrier)
        ));
        assert!(matches!(
            Interpretation::new(sig.clone(), ["a", "a"]),
            Err(SemanticsError::DuplicateIndividual(_))
        ));
        assert!(matches!(
            Interpretation::new(sig.clone(), ["a b"]),
            Err(SemanticsError::InvalidIndividual(_))
        ));
        let mut i = Interpretation::new(sig, ["a", "0#b"]).unwrap();
        assert!(i.set_concept("B", &["a"]).is_err());
        assert!(i.add_pair("r", "a", "c").is_err());
        i.add_pair("r", "a", "0#b").unwrap();
        assert_eq!(i.role_pairs(0).collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(i.format_set(&i.role_domain(0)), "{a}");
        assert_eq!(i.format_set(&IndSet::empty(2)), "{}");
    }
}
