use std::collections::HashMap;

use super::SyntaxError;

/// The vocabulary of a model or theory: concept names and role names,
/// kept in declaration order.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    concepts: Vec<String>,
    roles: Vec<String>,
    concept_index: HashMap<String, usize>,
    role_index: HashMap<String, usize>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.concepts == other.concepts && self.roles == other.roles
    }
}

impl Eq for Signature {}

impl Signature {
    pub fn new<C, R>(concepts: C, roles: R) -> Result<Self, SyntaxError>
    where
        C: IntoIterator,
        C::Item: Into<String>,
        R: IntoIterator,
        R::Item: Into<String>,
    {
        let concepts: Vec<String> = concepts.into_iter().map(Into::into).collect();
        let roles: Vec<String> = roles.into_iter().map(Into::into).collect();
        let mut concept_index = HashMap::new();
        let mut role_index = HashMap::new();
        for (i, c) in concepts.iter().enumerate() {
            check_identifier(c)?;
            if concept_index.insert(c.clone(), i).is_some() {
                return Err(SyntaxError::DuplicateName(c.clone()));
            }
        }
        for (i, r) in roles.iter().enumerate() {
            check_identifier(r)?;
            if concept_index.contains_key(r) || role_index.insert(r.clone(), i).is_some() {
                return Err(SyntaxError::DuplicateName(r.clone()));
            }
        }
        Ok(Signature {
            concepts,
            roles,
            concept_index,
            role_index,
        })
    }

    pub fn concepts(&self) -> &[String] {
        &self.concepts
    }

    pub fn roles(&self) -> &[String] {
        &self.roles
    }

    pub fn concept_index(&self, name: &str) -> Option<usize> {
        self.concept_index.get(name).copied()
    }

    pub fn role_index(&self, name: &str) -> Option<usize> {
        self.role_index.get(name).copied()
    }

    pub fn is_concept(&self, name: &str) -> bool {
        self.concept_index.contains_key(name)
    }

    pub fn is_role(&self, name: &str) -> bool {
        self.role_index.contains_key(name)
    }

    /// Concept names sorted lexicographically; used for deterministic choices.
    pub fn concepts_lexicographic(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.concepts.len()).collect();
        idx.sort_by(|&a, &b| self.concepts[a].cmp(&self.concepts[b]));
        idx
    }

    pub fn roles_lexicographic(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.roles.len()).collect();
        idx.sort_by(|&a, &b| self.roles[a].cmp(&self.roles[b]));
        idx
    }
}

pub(crate) const KEYWORDS: &[&str] = &["top", "bot", "exists", "forall", "lfp", "gfp"];

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_identifier(s: &str) -> Result<(), SyntaxError> {
    if !is_identifier(s) || KEYWORDS.contains(&s) {
        return Err(SyntaxError::InvalidIdentifier(s.to_string()));
    }
    Ok(())
}
