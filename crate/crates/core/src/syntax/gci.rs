use std::fmt;

use super::{Concept, Parity, Signature, SyntaxError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixSemantics {
    Lfp,
    Gfp,
}

impl fmt::Display for FixSemantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FixSemantics::Lfp => "lfp",
            FixSemantics::Gfp => "gfp",
        })
    }
}

/// A cyclic (or plain) concept definition read under fixpoint semantics.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FixDef {
    pub defined: String,
    pub body: Concept,
    pub semantics: FixSemantics,
}

impl FixDef {
    pub fn new(defined: impl Into<String>, body: Concept, semantics: FixSemantics) -> Self {
        FixDef {
            defined: defined.into(),
            body,
            semantics,
        }
    }

    pub fn parity(&self) -> Parity {
        self.body.negation_parity(&self.defined)
    }
}

impl fmt::Display for FixDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} = {}", self.semantics, self.defined, self.body)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gci {
    Subsumes(Concept, Concept),
    Equiv(Concept, Concept),
    FixDef(FixDef),
}

impl Gci {
    pub fn subsumes(lhs: Concept, rhs: Concept) -> Gci {
        Gci::Subsumes(lhs, rhs)
    }

    pub fn equiv(lhs: Concept, rhs: Concept) -> Gci {
        Gci::Equiv(lhs, rhs)
    }

    /// The subsumptions this axiom stands for; empty for fixpoint definitions.
    pub fn inclusions(&self) -> Vec<(&Concept, &Concept)> {
        match self {
            Gci::Subsumes(c, d) => vec![(c, d)],
            Gci::Equiv(c, d) => vec![(c, d), (d, c)],
            Gci::FixDef(_) => vec![],
        }
    }
}

impl fmt::Display for Gci {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gci::Subsumes(c, d) => write!(f, "{c} <= {d}"),
            Gci::Equiv(c, d) => write!(f, "{c} == {d}"),
            Gci::FixDef(def) => def.fmt(f),
        }
    }
}

/// An ordered list of axioms. Duplicates are kept.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Theory {
    axioms: Vec<Gci>,
}

impl Theory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, g: Gci) {
        self.axioms.push(g);
    }

    pub fn axioms(&self) -> &[Gci] {
        &self.axioms
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Gci> {
        self.axioms.iter()
    }

    pub fn extend(&mut self, other: &Theory) {
        self.axioms.extend(other.axioms.iter().cloned());
    }

    /// Copy of the theory without the axiom at `index`.
    pub fn without(&self, index: usize) -> Theory {
        let mut axioms = self.axioms.clone();
        axioms.remove(index);
        Theory { axioms }
    }

    pub fn fixdefs(&self) -> impl Iterator<Item = &FixDef> {
        self.axioms.iter().filter_map(|g| match g {
            Gci::FixDef(d) => Some(d),
            _ => None,
        })
    }

    /// Theory file text: signature declarations followed by one axiom per line.
    pub fn render(&self, sig: &Signature) -> String {
        let mut out = String::new();
        out.push_str("concepts");
        for c in sig.concepts() {
            out.push(' ');
            out.push_str(c);
        }
        out.push_str("\nroles");
        for r in sig.roles() {
            out.push(' ');
            out.push_str(r);
        }
        out.push('\n');
        for g in &self.axioms {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }
}

impl FromIterator<Gci> for Theory {
    fn from_iter<I: IntoIterator<Item = Gci>>(iter: I) -> Self {
        Theory {
            axioms: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a Theory {
    type Item = &'a Gci;
    type IntoIter = std::slice::Iter<'a, Gci>;

    fn into_iter(self) -> Self::IntoIter {
        self.axioms.iter()
    }
}

/// Collapse a system of definitions so that each body mentions no defined
/// name except its own, by substituting the definitions of the other
/// defined names along each chain.
///
/// A chain `c1 = ..c2.., c2 = ..c3.., .., cn = ..c1..` turns into n simple
/// self-cycles. Expansion fails when it would run around a cycle that does
/// not pass through the definition being expanded.
pub fn unfold_cycles(defs: &[FixDef]) -> Result<Vec<FixDef>, SyntaxError> {
    for (i, d) in defs.iter().enumerate() {
        if defs[..i].iter().any(|e| e.defined == d.defined) {
            return Err(SyntaxError::IllFormedSystem(format!(
                "`{}` is defined more than once",
                d.defined
            )));
        }
    }
    defs.iter()
        .enumerate()
        .map(|(i, d)| {
            let mut path = vec![i];
            let body = expand(&d.body, &d.defined, defs, &mut path)?;
            Ok(FixDef::new(d.defined.clone(), body, d.semantics))
        })
        .collect()
}

fn expand(
    body: &Concept,
    own: &str,
    defs: &[FixDef],
    path: &mut Vec<usize>,
) -> Result<Concept, SyntaxError> {
    let mut failure = None;
    let out = body.map_names(&mut |n| {
        if n == own || failure.is_some() {
            return None;
        }
        let j = defs.iter().position(|d| d.defined == n)?;
        if path.contains(&j) {
            failure = Some(SyntaxError::IllFormedSystem(format!(
                "the definition of `{own}` reaches the cycle through `{n}`, which does not return to `{own}`"
            )));
            return None;
        }
        path.push(j);
        let expanded = expand(&defs[j].body, own, defs, path);
        path.pop();
        match expanded {
            Ok(c) => Some(c),
            Err(e) => {
                failure = Some(e);
                None
            }
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}
