use std::collections::BTreeSet;
use std::fmt;

/// An ALC concept description. Equality is syntactic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Concept {
    Top,
    Bot,
    Name(String),
    And(Box<Concept>, Box<Concept>),
    Or(Box<Concept>, Box<Concept>),
    Not(Box<Concept>),
    Exists(String, Box<Concept>),
    Forall(String, Box<Concept>),
}

/// How the occurrences of a name sit under negations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Absent,
    Even,
    Odd,
    Mixed,
}

impl Parity {
    fn join(self, other: Parity) -> Parity {
        use Parity::*;
        match (self, other) {
            (Absent, p) | (p, Absent) => p,
            (Even, Even) => Even,
            (Odd, Odd) => Odd,
            _ => Mixed,
        }
    }

    fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
            p => p,
        }
    }

    /// Bodies with this parity for the fixpoint variable induce monotone maps.
    pub fn is_monotone(self) -> bool {
        matches!(self, Parity::Absent | Parity::Even)
    }
}

impl Concept {
    pub fn name(n: impl Into<String>) -> Concept {
        Concept::Name(n.into())
    }

    pub fn exists(role: impl Into<String>, filler: Concept) -> Concept {
        Concept::Exists(role.into(), Box::new(filler))
    }

    pub fn forall(role: impl Into<String>, filler: Concept) -> Concept {
        Concept::Forall(role.into(), Box::new(filler))
    }

    pub fn and(self, other: Concept) -> Concept {
        Concept::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Concept) -> Concept {
        Concept::Or(Box::new(self), Box::new(other))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Concept {
        Concept::Not(Box::new(self))
    }

    /// Left-nested conjunction; `Top` when empty.
    pub fn conjunction<I: IntoIterator<Item = Concept>>(parts: I) -> Concept {
        parts
            .into_iter()
            .reduce(Concept::and)
            .unwrap_or(Concept::Top)
    }

    /// Left-nested disjunction; `Bot` when empty.
    pub fn disjunction<I: IntoIterator<Item = Concept>>(parts: I) -> Concept {
        parts
            .into_iter()
            .reduce(Concept::or)
            .unwrap_or(Concept::Bot)
    }

    /// Nesting depth of constructors; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Concept::Top | Concept::Bot | Concept::Name(_) => 0,
            Concept::And(a, b) | Concept::Or(a, b) => 1 + a.depth().max(b.depth()),
            Concept::Not(a) | Concept::Exists(_, a) | Concept::Forall(_, a) => 1 + a.depth(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Concept::Top | Concept::Bot | Concept::Name(_) => 1,
            Concept::And(a, b) | Concept::Or(a, b) => 1 + a.size() + b.size(),
            Concept::Not(a) | Concept::Exists(_, a) | Concept::Forall(_, a) => 1 + a.size(),
        }
    }

    pub fn mentions(&self, name: &str) -> bool {
        match self {
            Concept::Top | Concept::Bot => false,
            Concept::Name(n) => n == name,
            Concept::And(a, b) | Concept::Or(a, b) => a.mentions(name) || b.mentions(name),
            Concept::Not(a) | Concept::Exists(_, a) | Concept::Forall(_, a) => a.mentions(name),
        }
    }

    /// Concept names in order of first occurrence (left to right).
    pub fn concept_names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.walk(&mut |c| {
            if let Concept::Name(n) = c {
                if !out.contains(&n.as_str()) {
                    out.push(n.as_str());
                }
            }
        });
        out
    }

    /// Role names in order of first occurrence.
    pub fn role_names(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.walk(&mut |c| {
            if let Concept::Exists(r, _) | Concept::Forall(r, _) = c {
                if !out.contains(&r.as_str()) {
                    out.push(r.as_str());
                }
            }
        });
        out
    }

    /// Pre-order traversal.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&'a Concept)) {
        f(self);
        match self {
            Concept::Top | Concept::Bot | Concept::Name(_) => {}
            Concept::And(a, b) | Concept::Or(a, b) => {
                a.walk(f);
                b.walk(f);
            }
            Concept::Not(a) | Concept::Exists(_, a) | Concept::Forall(_, a) => a.walk(f),
        }
    }

    /// Replace every occurrence of the concept name `name` by `replacement`.
    pub fn substitute(&self, name: &str, replacement: &Concept) -> Concept {
        self.map_names(&mut |n| (n == name).then(|| replacement.clone()))
    }

    /// Rebuild the concept, replacing each name for which `f` returns `Some`.
    pub fn map_names(&self, f: &mut impl FnMut(&str) -> Option<Concept>) -> Concept {
        match self {
            Concept::Top => Concept::Top,
            Concept::Bot => Concept::Bot,
            Concept::Name(n) => f(n).unwrap_or_else(|| self.clone()),
            Concept::And(a, b) => a.map_names(f).and(b.map_names(f)),
            Concept::Or(a, b) => a.map_names(f).or(b.map_names(f)),
            Concept::Not(a) => a.map_names(f).not(),
            Concept::Exists(r, a) => Concept::exists(r.clone(), a.map_names(f)),
            Concept::Forall(r, a) => Concept::forall(r.clone(), a.map_names(f)),
        }
    }

    /// Complement, cancelling a leading negation instead of stacking a second one.
    pub fn complement(self) -> Concept {
        match self {
            Concept::Not(inner) => *inner,
            other => other.not(),
        }
    }

    /// Negation normal form: negations only directly above names.
    /// `~top` and `~bot` are folded into `bot` and `top`.
    pub fn nnf(&self) -> Concept {
        self.nnf_signed(true)
    }

    fn nnf_signed(&self, positive: bool) -> Concept {
        match (self, positive) {
            (Concept::Top, true) | (Concept::Bot, false) => Concept::Top,
            (Concept::Top, false) | (Concept::Bot, true) => Concept::Bot,
            (Concept::Name(_), true) => self.clone(),
            (Concept::Name(_), false) => self.clone().not(),
            (Concept::Not(a), p) => a.nnf_signed(!p),
            (Concept::And(a, b), true) => a.nnf_signed(true).and(b.nnf_signed(true)),
            (Concept::And(a, b), false) => a.nnf_signed(false).or(b.nnf_signed(false)),
            (Concept::Or(a, b), true) => a.nnf_signed(true).or(b.nnf_signed(true)),
            (Concept::Or(a, b), false) => a.nnf_signed(false).and(b.nnf_signed(false)),
            (Concept::Exists(r, a), true) => Concept::exists(r.clone(), a.nnf_signed(true)),
            (Concept::Exists(r, a), false) => Concept::forall(r.clone(), a.nnf_signed(false)),
            (Concept::Forall(r, a), true) => Concept::forall(r.clone(), a.nnf_signed(true)),
            (Concept::Forall(r, a), false) => Concept::exists(r.clone(), a.nnf_signed(false)),
        }
    }

    pub fn is_nnf(&self) -> bool {
        match self {
            Concept::Top | Concept::Bot | Concept::Name(_) => true,
            Concept::Not(a) => matches!(**a, Concept::Name(_) | Concept::Top | Concept::Bot),
            Concept::And(a, b) | Concept::Or(a, b) => a.is_nnf() && b.is_nnf(),
            Concept::Exists(_, a) | Concept::Forall(_, a) => a.is_nnf(),
        }
    }

    /// Classify the occurrences of `name` by the parity of enclosing negations.
    pub fn negation_parity(&self, name: &str) -> Parity {
        match self {
            Concept::Top | Concept::Bot => Parity::Absent,
            Concept::Name(n) if n == name => Parity::Even,
            Concept::Name(_) => Parity::Absent,
            Concept::And(a, b) | Concept::Or(a, b) => {
                a.negation_parity(name).join(b.negation_parity(name))
            }
            Concept::Not(a) => a.negation_parity(name).flip(),
            Concept::Exists(_, a) | Concept::Forall(_, a) => a.negation_parity(name),
        }
    }

    /// All subconcepts, deduplicated.
    pub fn subconcepts(&self) -> BTreeSet<&Concept> {
        let mut out = BTreeSet::new();
        self.walk(&mut |c| {
            out.insert(c);
        });
        out
    }

    fn render_into(&self, out: &mut String, level: Level) {
        match self {
            Concept::Top => out.push_str("top"),
            Concept::Bot => out.push_str("bot"),
            Concept::Name(n) => out.push_str(n),
            Concept::Or(a, b) => {
                let paren = level > Level::Disj;
                if paren {
                    out.push('(');
                }
                a.render_into(out, Level::Disj);
                out.push_str(" | ");
                b.render_into(out, Level::Conj);
                if paren {
                    out.push(')');
                }
            }
            Concept::And(a, b) => {
                let paren = level > Level::Conj;
                if paren {
                    out.push('(');
                }
                a.render_into(out, Level::Conj);
                out.push_str(" & ");
                b.render_into(out, Level::Unary);
                if paren {
                    out.push(')');
                }
            }
            Concept::Not(a) => {
                out.push('~');
                a.render_into(out, Level::Unary);
            }
            Concept::Exists(r, a) | Concept::Forall(r, a) => {
                out.push_str(if matches!(self, Concept::Exists(..)) {
                    "exists "
                } else {
                    "forall "
                });
                out.push_str(r);
                out.push_str(" . ");
                a.render_into(out, Level::Unary);
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Disj,
    Conj,
    Unary,
}

/// Concrete syntax accepted by the parser; minimal parentheses.
pub fn render(c: &Concept) -> String {
    let mut out = String::new();
    c.render_into(&mut out, Level::Disj);
    out
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(s: &str) -> Concept {
        Concept::name(s)
    }

    #[test]
    fn render_examples() {
        let c = n("Male").and(Concept::exists("marriedTo", Concept::Top));
        assert_eq!(render(&c), "Male & exists marriedTo . top");
        assert_eq!(render(&n("A").or(n("B")).not()), "~(A | B)");
        assert_eq!(render(&Concept::Bot), "bot");
        assert_eq!(render(&n("A").and(n("B").and(n("C")))), "A & (B & C)");
        assert_eq!(render(&n("A").and(n("B")).and(n("C"))), "A & B & C");
        assert_eq!(render(&n("A").or(n("B")).and(n("C"))), "(A | B) & C");
        assert_eq!(
            render(&Concept::exists("r", n("A").and(n("B")))),
            "exists r . (A & B)"
        );
    }

    #[test]
    fn nnf_examples() {
        let d = n("D");
        assert_eq!(
            Concept::forall("r", d.clone()).not().nnf(),
            Concept::exists("r", d.clone().not())
        );
        assert_eq!(
            n("A").and(n("B")).not().nnf(),
            n("A").not().or(n("B").not())
        );
        assert_eq!(n("A").nnf(), n("A"));
        assert_eq!(Concept::Top.not().not().nnf(), Concept::Top);
        assert_eq!(Concept::Top.not().nnf(), Concept::Bot);
        assert!(n("A").or(Concept::exists("r", n("B"))).not().nnf().is_nnf());
    }

    #[test]
    fn parity_examples() {
        let body = n("Male").and(Concept::exists(
            "marriedTo",
            n("Female").and(Concept::exists("marriedTo", n("Husband"))),
        ));
        assert_eq!(body.negation_parity("Husband"), Parity::Even);
        assert_eq!(n("c").not().negation_parity("c"), Parity::Odd);
        assert_eq!(n("d").negation_parity("c"), Parity::Absent);
        assert_eq!(n("c").and(n("c").not()).negation_parity("c"), Parity::Mixed);
        assert_eq!(n("c").not().not().negation_parity("c"), Parity::Even);
    }

    #[test]
    fn names_in_occurrence_order() {
        let c = Concept::exists("s", n("B").and(Concept::forall("r", n("A").or(n("B")))));
        assert_eq!(c.concept_names(), vec!["B", "A"]);
        assert_eq!(c.role_names(), vec!["s", "r"]);
        assert_eq!(c.depth(), 4);
    }

    #[test]
    fn complement_cancels() {
        assert_eq!(n("A").not().complement(), n("A"));
        assert_eq!(n("A").complement(), n("A").not());
    }
}
