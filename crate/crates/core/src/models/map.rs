use std::fmt::Write as _;

use crate::semantics::Interpretation;

use super::ModelsError;

/// A total function between two carriers, stored as the image of each
/// source position.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IndividualMap {
    table: Vec<usize>,
    target_len: usize,
}

impl IndividualMap {
    pub fn new(table: Vec<usize>, target_len: usize) -> Result<Self, ModelsError> {
        if let Some(&bad) = table.iter().find(|&&b| b >= target_len) {
            return Err(ModelsError::MapOutOfRange(bad));
        }
        Ok(IndividualMap { table, target_len })
    }

    pub fn identity(n: usize) -> Self {
        IndividualMap {
            table: (0..n).collect(),
            target_len: n,
        }
    }

    /// Read `src -> dst` lines naming individuals of `src` and `dst`; every
    /// source individual must be mapped exactly once. `#` starts a comment.
    pub fn parse(
        text: &str,
        src: &Interpretation,
        dst: &Interpretation,
    ) -> Result<Self, ModelsError> {
        let mut table: Vec<Option<usize>> = vec![None; src.len()];
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let err = |message: String| ModelsError::MapFile { line, message };
            let body = raw
                .split_whitespace()
                .take_while(|w| !w.starts_with('#'))
                .collect::<Vec<_>>()
                .join(" ");
            if body.is_empty() {
                continue;
            }
            let (a, b) = body
                .split_once("->")
                .ok_or_else(|| err("expected `source -> target`".into()))?;
            let (a, b) = (a.trim(), b.trim());
            let ai = src
                .individual_index(a)
                .ok_or_else(|| err(format!("unknown source individual `{a}`")))?;
            let bi = dst
                .individual_index(b)
                .ok_or_else(|| err(format!("unknown target individual `{b}`")))?;
            if table[ai].replace(bi).is_some() {
                return Err(err(format!("`{a}` is mapped twice")));
            }
        }
        let table = table
            .into_iter()
            .enumerate()
            .map(|(a, b)| {
                b.ok_or_else(|| ModelsError::MapFile {
                    line: text.lines().count(),
                    message: format!("`{}` is not mapped", src.individual(a)),
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IndividualMap {
            table,
            target_len: dst.len(),
        })
    }

    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn source_len(&self) -> usize {
        self.table.len()
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target_len];
        self.table
            .iter()
            .all(|&b| !std::mem::replace(&mut seen[b], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target_len];
        for &b in &self.table {
            seen[b] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &IndividualMap) -> IndividualMap {
        assert_eq!(self.target_len, next.source_len(), "maps do not compose");
        IndividualMap {
            table: self.table.iter().map(|&b| next.apply(b)).collect(),
            target_len: next.target_len,
        }
    }

    /// The `src -> dst` text form accepted by [`IndividualMap::parse`].
    pub fn render(&self, src: &Interpretation, dst: &Interpretation) -> String {
        let mut out = String::new();
        for (a, &b) in self.table.iter().enumerate() {
            let _ = writeln!(out, "{} -> {}", src.individual(a), dst.individual(b));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::simpsons;

    #[test]
    fn parse_render_and_flags() {
        let i = simpsons();
        let swap =
            IndividualMap::parse("# swap\nHomer -> Marge\nMarge->Homer # back\n", &i, &i).unwrap();
        assert_eq!(swap.table(), &[1, 0]);
        assert!(swap.is_injective() && swap.is_surjective());
        assert_eq!(
            IndividualMap::parse(&swap.render(&i, &i), &i, &i).unwrap(),
            swap
        );
        assert_eq!(swap.then(&swap), IndividualMap::identity(2));
        let constant = IndividualMap::new(vec![0, 0], 2).unwrap();
        assert!(!constant.is_injective() && !constant.is_surjective());
        assert!(IndividualMap::new(vec![0, 2], 2).is_err());
    }

    #[test]
    fn parse_errors_name_the_line() {
        let i = simpsons();
        let line = |t: &str| match IndividualMap::parse(t, &i, &i) {
            Err(ModelsError::MapFile { line, .. }) => line,
            other => panic!("expected a map file error, got {other:?}"),
        };
        assert_eq!(line("Homer -> Marge\nMarge Homer\n"), 2);
        assert_eq!(line("Homer -> Bart\n"), 1);
        assert_eq!(line("Homer -> Marge\nHomer -> Homer\n"), 2);
        assert_eq!(line("Homer -> Marge\n"), 1);
    }
}
