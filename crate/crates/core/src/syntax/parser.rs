//! Recursive-descent parser for concepts, axioms and theory files.
//!
//! ```text
//! gci      := concept ("<=" | "==") concept
//! fixdef   := ("lfp" | "gfp") NAME "=" concept
//! concept  := disj ;  disj := conj ("|" conj)* ;  conj := unary ("&" unary)*
//! unary    := "~" unary | "exists" NAME "." unary | "forall" NAME "." unary | atom
//! atom     := "top" | "bot" | NAME | "(" concept ")"
//! ```

use super::signature::is_identifier;
use super::{Concept, FixDef, FixSemantics, Gci, Position, Signature, SyntaxError, Theory};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    Exists,
    Forall,
    Lfp,
    Gfp,
    Amp,
    Bar,
    Tilde,
    Dot,
    LParen,
    RParen,
    Le,
    EqEq,
    Eq,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Top => "`top`".into(),
            Tok::Bot => "`bot`".into(),
            Tok::Exists => "`exists`".into(),
            Tok::Forall => "`forall`".into(),
            Tok::Lfp => "`lfp`".into(),
            Tok::Gfp => "`gfp`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::Dot => "`.`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Le => "`<=`".into(),
            Tok::EqEq => "`==`".into(),
            Tok::Eq => "`=`".into(),
        }
    }
}

fn lex(text: &str, first_line: usize) -> Result<(Vec<(Tok, Position)>, Position), SyntaxError> {
    let mut toks = Vec::new();
    let mut line = first_line;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&ch) = chars.peek() {
        let pos = Position { line, column: col };
        if ch == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if ch.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        if ch == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                col += 1;
            }
            continue;
        }
        if ch.is_ascii_alphabetic() || ch == '_' {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    word.push(c);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            let tok = match word.as_str() {
                "top" => Tok::Top,
                "bot" => Tok::Bot,
                "exists" => Tok::Exists,
                "forall" => Tok::Forall,
                "lfp" => Tok::Lfp,
                "gfp" => Tok::Gfp,
                _ => Tok::Ident(word),
            };
            toks.push((tok, pos));
            continue;
        }
        chars.next();
        col += 1;
        let tok = match ch {
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '~' => Tok::Tilde,
            '.' => Tok::Dot,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '<' if chars.peek() == Some(&'=') => {
                chars.next();
                col += 1;
                Tok::Le
            }
            '=' if chars.peek() == Some(&'=') => {
                chars.next();
                col += 1;
                Tok::EqEq
            }
            '=' => Tok::Eq,
            other => {
                return Err(SyntaxError::Syntax {
                    position: pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        toks.push((tok, pos));
    }
    Ok((toks, Position { line, column: col }))
}

struct Parser<'a> {
    toks: Vec<(Tok, Position)>,
    at: usize,
    end: Position,
    sig: Option<&'a Signature>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, first_line: usize, sig: Option<&'a Signature>) -> Result<Self, SyntaxError> {
        let (toks, end) = lex(text, first_line)?;
        Ok(Parser {
            toks,
            at: 0,
            end,
            sig,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn position(&self) -> Position {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn error<T>(&self, expected: &str) -> Result<T, SyntaxError> {
        let found = match self.peek() {
            Some(t) => t.describe(),
            None => "end of input".to_string(),
        };
        Err(SyntaxError::Syntax {
            position: self.position(),
            message: format!("expected {expected}, found {found}"),
        })
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), SyntaxError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.error(&tok.describe())
        }
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        if self.at < self.toks.len() {
            self.error("end of input")
        } else {
            Ok(())
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Position), SyntaxError> {
        match self.toks.get(self.at) {
            Some((Tok::Ident(s), p)) => {
                let out = (s.clone(), *p);
                self.at += 1;
                Ok(out)
            }
            _ => self.error(what),
        }
    }

    fn concept_name(&mut self) -> Result<String, SyntaxError> {
        let (name, position) = self.ident("a concept name")?;
        match self.sig {
            Some(sig) if !sig.is_concept(&name) => Err(SyntaxError::UnknownName { name, position }),
            _ => Ok(name),
        }
    }

    fn role_name(&mut self) -> Result<String, SyntaxError> {
        let (name, position) = self.ident("a role name")?;
        match self.sig {
            Some(sig) if !sig.is_role(&name) => Err(SyntaxError::UnknownName { name, position }),
            _ => Ok(name),
        }
    }

    fn concept(&mut self) -> Result<Concept, SyntaxError> {
        let mut lhs = self.conj()?;
        while self.eat(&Tok::Bar) {
            lhs = lhs.or(self.conj()?);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Concept, SyntaxError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Amp) {
            lhs = lhs.and(self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Concept, SyntaxError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.at += 1;
                Ok(self.unary()?.not())
            }
            Some(Tok::Exists) | Some(Tok::Forall) => {
                let existential = self.peek() == Some(&Tok::Exists);
                self.at += 1;
                let role = self.role_name()?;
                self.expect(Tok::Dot)?;
                let filler = self.unary()?;
                Ok(if existential {
                    Concept::exists(role, filler)
                } else {
                    Concept::forall(role, filler)
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Concept, SyntaxError> {
        match self.peek() {
            Some(Tok::Top) => {
                self.at += 1;
                Ok(Concept::Top)
            }
            Some(Tok::Bot) => {
                self.at += 1;
                Ok(Concept::Bot)
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.concept()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(Tok::Ident(_)) => Ok(Concept::Name(self.concept_name()?)),
            _ => self.error("a concept"),
        }
    }

    fn definition(&mut self, semantics: FixSemantics) -> Result<FixDef, SyntaxError> {
        let defined = self.concept_name()?;
        self.expect(Tok::Eq)?;
        let body = self.concept()?;
        Ok(FixDef::new(defined, body, semantics))
    }

    fn statement(&mut self) -> Result<Gci, SyntaxError> {
        let semantics = match self.peek() {
            Some(Tok::Lfp) => Some(FixSemantics::Lfp),
            Some(Tok::Gfp) => Some(FixSemantics::Gfp),
            _ => None,
        };
        if let Some(semantics) = semantics {
            self.at += 1;
            return Ok(Gci::FixDef(self.definition(semantics)?));
        }
        let lhs = self.concept()?;
        if self.eat(&Tok::Le) {
            Ok(Gci::Subsumes(lhs, self.concept()?))
        } else if self.eat(&Tok::EqEq) {
            Ok(Gci::Equiv(lhs, self.concept()?))
        } else {
            self.error("`<=` or `==`")
        }
    }
}

/// Parse a concept, resolving names against `sig`.
pub fn parse_concept(text: &str, sig: &Signature) -> Result<Concept, SyntaxError> {
    let mut p = Parser::new(text, 1, Some(sig))?;
    let c = p.concept()?;
    p.finish()?;
    Ok(c)
}

/// Parse a GCI (`C <= D`, `C == D`) or a tagged definition (`gfp c = C`).
pub fn parse_gci(text: &str, sig: &Signature) -> Result<Gci, SyntaxError> {
    let mut p = Parser::new(text, 1, Some(sig))?;
    let g = p.statement()?;
    p.finish()?;
    Ok(g)
}

/// Parse an untagged definition `c = C`, attaching the given semantics.
pub fn parse_definition(
    text: &str,
    sig: &Signature,
    semantics: FixSemantics,
) -> Result<FixDef, SyntaxError> {
    let mut p = Parser::new(text, 1, Some(sig))?;
    let d = p.definition(semantics)?;
    p.finish()?;
    Ok(d)
}

/// Parse a GCI without a signature, inferring one from usage: identifiers
/// after a quantifier are roles, all others concept names.
pub fn parse_gci_inferring(text: &str) -> Result<(Signature, Gci), SyntaxError> {
    let mut p = Parser::new(text, 1, None)?;
    let g = p.statement()?;
    p.finish()?;
    let sig = infer_signature(std::slice::from_ref(&g))?;
    Ok((sig, g))
}

/// Parse a theory file: one axiom per line, `#` comments, and optional
/// `concepts ...` / `roles ...` declaration lines.
///
/// The signature is, in order of preference: `sig` (declarations, if any,
/// must agree with it), the declarations, or one inferred from usage.
pub fn parse_theory(
    text: &str,
    sig: Option<&Signature>,
) -> Result<(Signature, Theory), SyntaxError> {
    let mut declared_concepts: Option<Vec<String>> = None;
    let mut declared_roles: Option<Vec<String>> = None;
    let mut statements = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let (toks, _) = lex(line, lineno)?;
        if toks.is_empty() {
            continue;
        }
        if let Some(decl) = declaration(&toks) {
            let slot = if decl.0 == "concepts" {
                &mut declared_concepts
            } else {
                &mut declared_roles
            };
            if slot.is_some() {
                return Err(SyntaxError::Syntax {
                    position: toks[0].1,
                    message: format!("duplicate `{}` declaration", decl.0),
                });
            }
            *slot = Some(decl.1);
            continue;
        }
        statements.push((lineno, line));
    }

    let declared = if declared_concepts.is_some() || declared_roles.is_some() {
        Some(Signature::new(
            declared_concepts.unwrap_or_default(),
            declared_roles.unwrap_or_default(),
        )?)
    } else {
        None
    };
    let resolved = match (sig, &declared) {
        (Some(given), Some(decl)) if given != decl => {
            return Err(SyntaxError::Syntax {
                position: Position { line: 1, column: 1 },
                message: "declared signature differs from the expected one".into(),
            })
        }
        (Some(given), _) => Some(given.clone()),
        (None, Some(decl)) => Some(decl.clone()),
        (None, None) => None,
    };

    let mut theory = Theory::new();
    for (lineno, line) in statements {
        let mut p = Parser::new(line, lineno, resolved.as_ref())?;
        let g = p.statement()?;
        p.finish()?;
        theory.push(g);
    }
    let sig = match resolved {
        Some(s) => s,
        None => infer_signature(theory.axioms())?,
    };
    Ok((sig, theory))
}

fn declaration(toks: &[(Tok, Position)]) -> Option<(&'static str, Vec<String>)> {
    let kind = match toks.first() {
        Some((Tok::Ident(w), _)) if w == "concepts" => "concepts",
        Some((Tok::Ident(w), _)) if w == "roles" => "roles",
        _ => return None,
    };
    let names = toks[1..]
        .iter()
        .map(|(t, _)| match t {
            Tok::Ident(s) => Some(s.clone()),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()?;
    Some((kind, names))
}

/// Signature made of the names used by `axioms`, in order of first occurrence.
pub fn infer_signature(axioms: &[Gci]) -> Result<Signature, SyntaxError> {
    let mut concepts: Vec<String> = Vec::new();
    let mut roles: Vec<String> = Vec::new();
    let mut note = |c: &Concept| {
        for n in c.concept_names() {
            if !concepts.iter().any(|x| x == n) {
                concepts.push(n.to_string());
            }
        }
        for r in c.role_names() {
            if !roles.iter().any(|x| x == r) {
                roles.push(r.to_string());
            }
        }
    };
    for g in axioms {
        match g {
            Gci::Subsumes(c, d) | Gci::Equiv(c, d) => {
                note(c);
                note(d);
            }
            Gci::FixDef(def) => {
                note(&Concept::Name(def.defined.clone()));
                note(&def.body);
            }
        }
    }
    Signature::new(concepts, roles)
}

/// True when `s` can be used as a concept, role or individual name.
pub fn valid_name(s: &str) -> bool {
    is_identifier(s) && !super::signature::KEYWORDS.contains(&s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::new(
            ["Husband", "Wife", "Male", "Female", "A", "B"],
            ["marriedTo", "r"],
        )
        .unwrap()
    }

    fn n(s: &str) -> Concept {
        Concept::name(s)
    }

    #[test]
    fn parse_examples() {
        let s = sig();
        assert_eq!(
            parse_concept("Male & exists marriedTo . top", &s).unwrap(),
            n("Male").and(Concept::exists("marriedTo", Concept::Top))
        );
        assert_eq!(parse_concept("top", &s).unwrap(), Concept::Top);
        assert_eq!(
            parse_concept("exists r . A & B", &s).unwrap(),
            Concept::exists("r", n("A")).and(n("B"))
        );
    }

    #[test]
    fn precedence() {
        let s = sig();
        assert_eq!(
            parse_concept("~A & B | A", &s).unwrap(),
            n("A").not().and(n("B")).or(n("A"))
        );
        assert_eq!(
            parse_concept("A | B & ~exists r.(A | B)", &s).unwrap(),
            n("A").or(n("B").and(Concept::exists("r", n("A").or(n("B"))).not()))
        );
        assert_eq!(
            parse_concept("forall r . forall r . bot", &s).unwrap(),
            Concept::forall("r", Concept::forall("r", Concept::Bot))
        );
    }

    #[test]
    fn errors_carry_positions() {
        let s = sig();
        match parse_concept("A & Cat", &s) {
            Err(SyntaxError::UnknownName { name, position }) => {
                assert_eq!(name, "Cat");
                assert_eq!(position, Position { line: 1, column: 5 });
            }
            other => panic!("unexpected {other:?}"),
        }
        // a concept name used as a role
        assert!(matches!(
            parse_concept("exists A . top", &s),
            Err(SyntaxError::UnknownName { .. })
        ));
        assert!(matches!(
            parse_concept("A &", &s),
            Err(SyntaxError::Syntax { .. })
        ));
        assert!(matches!(
            parse_concept("(A", &s),
            Err(SyntaxError::Syntax { .. })
        ));
        assert!(matches!(
            parse_concept("A B", &s),
            Err(SyntaxError::Syntax { .. })
        ));
        assert!(matches!(
            parse_concept("A $ B", &s),
            Err(SyntaxError::Syntax { .. })
        ));
    }

    #[test]
    fn gci_forms() {
        let s = sig();
        assert_eq!(
            parse_gci("Husband <= Male", &s).unwrap(),
            Gci::Subsumes(n("Husband"), n("Male"))
        );
        assert_eq!(
            parse_gci("Husband == Male # comment", &s).unwrap(),
            Gci::Equiv(n("Husband"), n("Male"))
        );
        assert_eq!(
            parse_gci("gfp Husband = Male & exists marriedTo . Husband", &s).unwrap(),
            Gci::FixDef(FixDef::new(
                "Husband",
                n("Male").and(Concept::exists("marriedTo", n("Husband"))),
                FixSemantics::Gfp
            ))
        );
        assert_eq!(
            parse_definition("Husband = Male", &s, FixSemantics::Lfp).unwrap(),
            FixDef::new("Husband", n("Male"), FixSemantics::Lfp)
        );
    }

    #[test]
    fn theory_with_inferred_signature() {
        let text = "# a theory\nA <= exists r . B\n\nB == ~C\n";
        let (sig, t) = parse_theory(text, None).unwrap();
        assert_eq!(sig.concepts(), &["A", "B", "C"]);
        assert_eq!(sig.roles(), &["r"]);
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn theory_with_declarations() {
        let text = "concepts A B\nroles r\nA <= B\n";
        let (sig, t) = parse_theory(text, None).unwrap();
        assert_eq!(sig.concepts(), &["A", "B"]);
        assert_eq!(t.axioms(), &[Gci::Subsumes(n("A"), n("B"))]);
        match parse_theory("concepts A\nroles\nA <= C\n", None) {
            Err(SyntaxError::UnknownName { name, position }) => {
                assert_eq!(name, "C");
                assert_eq!(position.line, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
        let other = Signature::new(["A"], ["r"]).unwrap();
        assert!(parse_theory(text, Some(&other)).is_err());
    }

    #[test]
    fn inference_rejects_role_concept_clash() {
        assert!(parse_theory("r <= exists r . top", None).is_err());
    }

    #[test]
    fn rendered_theory_reparses() {
        let s = sig();
        let t: Theory = [
            Gci::Subsumes(n("A"), Concept::exists("r", n("B").or(n("A")))),
            Gci::Equiv(n("Male").not(), n("Wife")),
            Gci::FixDef(FixDef::new("Husband", n("Male"), FixSemantics::Gfp)),
        ]
        .into_iter()
        .collect();
        let (sig2, t2) = parse_theory(&t.render(&s), None).unwrap();
        assert_eq!(sig2, s);
        assert_eq!(t2, t);
    }
}
