//! The line-oriented `.alcm` model format.
//!
//! ```text
//! signature
//!   concepts Husband Wife Male Female
//!   roles marriedTo
//! model
//!   domain Homer Marge
//!   concept Male = { Homer }
//!   role marriedTo = { (Homer, Marge) (Marge, Homer) }
//! ```
//!
//! A `#` that starts a token begins a comment; inside an individual name
//! (as in `0#Homer`) it is an ordinary character.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::syntax::{Position, Signature};

use super::{Interpretation, SemanticsError};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Punct(char),
}

fn lex_line(line: &str, lineno: usize) -> Vec<(Tok, Position)> {
    let mut toks = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Position {
            line: lineno,
            column: i + 1,
        };
        if c.is_whitespace() {
            i += 1;
        } else if c == '#' {
            break;
        } else if "{}(),=".contains(c) {
            toks.push((Tok::Punct(c), pos));
            i += 1;
        } else {
            let start = i;
            while i < chars.len() && !chars[i].is_whitespace() && !"{}(),=".contains(chars[i]) {
                i += 1;
            }
            toks.push((Tok::Word(chars[start..i].iter().collect()), pos));
        }
    }
    toks
}

fn err<T>(position: Position, message: impl Into<String>) -> Result<T, SemanticsError> {
    Err(SemanticsError::ModelFile {
        position,
        message: message.into(),
    })
}

struct Line {
    toks: Vec<(Tok, Position)>,
    at: usize,
    end: Position,
}

impl Line {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Position {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn word(&mut self, what: &str) -> Result<(String, Position), SemanticsError> {
        match self.toks.get(self.at) {
            Some((Tok::Word(w), p)) => {
                let out = (w.clone(), *p);
                self.at += 1;
                Ok(out)
            }
            _ => err(self.pos(), format!("expected {what}")),
        }
    }

    fn punct(&mut self, c: char) -> Result<(), SemanticsError> {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.at += 1;
            Ok(())
        } else {
            err(self.pos(), format!("expected `{c}`"))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn done(&self) -> Result<(), SemanticsError> {
        if self.at < self.toks.len() {
            err(self.pos(), "unexpected trailing input")
        } else {
            Ok(())
        }
    }

    fn rest_words(&mut self) -> Result<Vec<(String, Position)>, SemanticsError> {
        let mut out = Vec::new();
        while self.at < self.toks.len() {
            out.push(self.word("a name")?);
        }
        Ok(out)
    }
}

#[derive(PartialEq)]
enum Section {
    Start,
    Signature,
    Model,
}

/// Parse an `.alcm` document.
pub fn parse_model(text: &str) -> Result<Interpretation, SemanticsError> {
    let mut section = Section::Start;
    let mut concepts: Option<Vec<String>> = None;
    let mut roles: Option<Vec<String>> = None;
    let mut model: Option<Interpretation> = None;
    let mut seen: HashSet<String> = HashSet::new();
    let mut last = Position { line: 1, column: 1 };

    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = lex_line(raw, lineno);
        last = Position {
            line: lineno,
            column: raw.len() + 1,
        };
        if toks.is_empty() {
            continue;
        }
        let mut line = Line {
            end: last,
            toks,
            at: 0,
        };
        let (head, head_pos) = line.word("a keyword")?;
        match (head.as_str(), &section) {
            ("signature", Section::Start) => {
                line.done()?;
                section = Section::Signature;
            }
            ("concepts", Section::Signature) | ("roles", Section::Signature) => {
                let slot = if head == "concepts" {
                    &mut concepts
                } else {
                    &mut roles
                };
                if slot.is_some() {
                    return err(head_pos, format!("duplicate `{head}` line"));
                }
                *slot = Some(line.rest_words()?.into_iter().map(|(w, _)| w).collect());
            }
            ("model", Section::Signature) => {
                line.done()?;
                section = Section::Model;
            }
            ("domain", Section::Model) => {
                if model.is_some() {
                    return err(head_pos, "duplicate `domain` line");
                }
                let sig = Signature::new(
                    concepts.clone().unwrap_or_default(),
                    roles.clone().unwrap_or_default(),
                )
                .map_err(|e| SemanticsError::ModelFile {
                    position: head_pos,
                    message: e.to_string(),
                })?;
                let individuals: Vec<String> =
                    line.rest_words()?.into_iter().map(|(w, _)| w).collect();
                model = Some(Interpretation::new(sig, individuals).map_err(|e| {
                    SemanticsError::ModelFile {
                        position: head_pos,
                        message: e.to_string(),
                    }
                })?);
            }
            ("concept", Section::Model) | ("role", Section::Model) => {
                let Some(m) = model.as_mut() else {
                    return err(head_pos, "`domain` must come before extensions");
                };
                let (name, name_pos) = line.word("a name")?;
                let is_concept = head == "concept";
                let known = if is_concept {
                    m.signature().concept_index(&name)
                } else {
                    m.signature().role_index(&name)
                };
                let Some(idx) = known else {
                    return err(name_pos, format!("`{name}` is not a declared {head} name"));
                };
                if !seen.insert(format!("{head} {name}")) {
                    return err(name_pos, format!("duplicate extension for `{name}`"));
                }
                line.punct('=')?;
                line.punct('{')?;
                loop {
                    if line.eat('}') {
                        break;
                    }
                    if is_concept {
                        let a = individual(m, &mut line)?;
                        m.add_to_concept(idx, a);
                    } else {
                        line.punct('(')?;
                        let a = individual(m, &mut line)?;
                        line.punct(',')?;
                        let b = individual(m, &mut line)?;
                        line.punct(')')?;
                        m.add_edge(idx, a, b);
                    }
                    line.eat(',');
                }
                line.done()?;
            }
            _ => return err(head_pos, format!("unexpected `{head}` here")),
        }
    }

    let Some(m) = model else {
        return err(last, "missing `domain` line");
    };
    for c in m.signature().concepts() {
        if !seen.contains(&format!("concept {c}")) {
            return err(last, format!("no extension given for concept `{c}`"));
        }
    }
    for r in m.signature().roles() {
        if !seen.contains(&format!("role {r}")) {
            return err(last, format!("no extension given for role `{r}`"));
        }
    }
    Ok(m)
}

fn individual(m: &Interpretation, line: &mut Line) -> Result<usize, SemanticsError> {
    let (name, pos) = line.word("an individual")?;
    m.individual_index(&name)
        .map_or_else(|| err(pos, format!("unknown individual `{name}`")), Ok)
}

/// Serialise `i` in `.alcm` form; sets are listed in carrier order.
pub fn write_model(i: &Interpretation) -> String {
    let sig = i.signature();
    let mut out = String::from("signature\n  concepts");
    for c in sig.concepts() {
        let _ = write!(out, " {c}");
    }
    out.push_str("\n  roles");
    for r in sig.roles() {
        let _ = write!(out, " {r}");
    }
    out.push_str("\nmodel\n  domain");
    for a in i.individuals() {
        let _ = write!(out, " {a}");
    }
    out.push('\n');
    for (c, name) in sig.concepts().iter().enumerate() {
        let _ = write!(out, "  concept {name} = {{");
        for a in i.concept_ext(c).iter() {
            let _ = write!(out, " {}", i.individual(a));
        }
        out.push_str(" }\n");
    }
    for (r, name) in sig.roles().iter().enumerate() {
        let _ = write!(out, "  role {name} = {{");
        for (a, b) in i.role_pairs(r) {
            let _ = write!(out, " ({}, {})", i.individual(a), i.individual(b));
        }
        out.push_str(" }\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SIMPSONS: &str = "\
signature
  concepts Husband Wife Male Female
  roles marriedTo
model
  domain Homer Marge
  concept Husband = { Homer }
  concept Wife = { Marge }
  concept Male = { Homer }
  concept Female = { Marge }
  role marriedTo = { (Homer, Marge) (Marge, Homer) }
";

    #[test]
    fn parse_and_write_round_trip() {
        let m = parse_model(SIMPSONS).unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(
            m.format_set(m.concept_ext_by_name("Male").unwrap()),
            "{Homer}"
        );
        assert!(m.has_edge(0, 1, 0));
        assert_eq!(write_model(&m), SIMPSONS);
        assert_eq!(parse_model(&write_model(&m)).unwrap(), m);
    }

    #[test]
    fn comments_and_hash_names() {
        let text = "# header\nsignature # sig\n concepts A\n roles\nmodel\n domain 0#x 1#x # two\n concept A = { 0#x, 1#x }\n";
        let m = parse_model(text).unwrap();
        assert_eq!(m.individuals(), &["0#x", "1#x"]);
        assert_eq!(m.concept_ext(0).len(), 2);
    }

    fn message(text: &str) -> (usize, String) {
        match parse_model(text) {
            Err(SemanticsError::ModelFile { position, message }) => (position.line, message),
            other => panic!("expected a model file error, got {other:?}"),
        }
    }

    #[test]
    fn rejects_malformed_documents() {
        let dup = SIMPSONS.replace(
            "  concept Female = { Marge }\n",
            "  concept Female = { Marge }\n  concept Male = { }\n",
        );
        assert_eq!(message(&dup).0, 10);
        let missing = SIMPSONS.replace("  concept Female = { Marge }\n", "");
        assert!(message(&missing).1.contains("Female"));
        let unknown = SIMPSONS.replace("{ Homer }", "{ Bart }");
        assert!(message(&unknown).1.contains("Bart"));
        let undeclared = SIMPSONS.replace("concept Wife =", "concept Child =");
        assert!(message(&undeclared).1.contains("Child"));
        assert!(message("signature\nmodel\n domain\n").1.contains("carrier"));
        assert!(message("model\n").1.contains("model"));
        assert!(
            message(&SIMPSONS.replace("(Homer, Marge)", "(Homer Marge)"))
                .1
                .contains(',')
        );
    }
}
