use std::collections::{BTreeMap, BTreeSet};

use crate::semantics::Interpretation;
use crate::set::IndSet;

/// Role words of length at most `depth` that can be walked from an
/// individual, each with the colours of the individuals it can end at.
///
/// Colours are gathered per word over all walks, not per walk, so the
/// signature is a finite over-approximation of the individual's behaviour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BehaviorSignature {
    pub individual: usize,
    pub depth: usize,
    /// Word (role positions) to the set of colours (sorted concept positions).
    pub words: BTreeMap<Vec<usize>, BTreeSet<Vec<usize>>>,
}

impl BehaviorSignature {
    /// Same words and colours, regardless of which individual or depth.
    pub fn same_behavior(&self, other: &BehaviorSignature) -> bool {
        self.words == other.words
    }

    /// One `word: {colour} {colour}` line per word, shortest words first.
    pub fn render(&self, i: &Interpretation) -> String {
        let sig = i.signature();
        let mut words: Vec<_> = self.words.iter().collect();
        words.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        let mut out = String::new();
        for (word, colors) in words {
            let w = if word.is_empty() {
                "ε".to_string()
            } else {
                word.iter()
                    .map(|&r| sig.roles()[r].as_str())
                    .collect::<Vec<_>>()
                    .join(".")
            };
            let cs: Vec<String> = colors
                .iter()
                .map(|c| {
                    let names: Vec<&str> = c.iter().map(|&k| sig.concepts()[k].as_str()).collect();
                    format!("{{{}}}", names.join(", "))
                })
                .collect();
            out.push_str(&format!("{w}: {}\n", cs.join(" ")));
        }
        out
    }
}

pub fn behavior_signature(i: &Interpretation, a: usize, k: usize) -> BehaviorSignature {
    let roles = i.signature().roles().len();
    let colors = |s: &IndSet| s.iter().map(|b| i.color(b)).collect::<BTreeSet<_>>();
    let mut words = BTreeMap::new();
    let mut frontier = vec![(Vec::new(), IndSet::singleton(i.len(), a))];
    words.insert(Vec::new(), colors(&frontier[0].1));
    for _ in 0..k {
        let mut next = Vec::new();
        for (word, reached) in &frontier {
            for r in 0..roles {
                let mut succ = IndSet::empty(i.len());
                for b in reached.iter() {
                    succ.union_with(i.successors(r, b));
                }
                if !succ.is_empty() {
                    let mut w = word.clone();
                    w.push(r);
                    words.insert(w.clone(), colors(&succ));
                    next.push((w, succ));
                }
            }
        }
        frontier = next;
    }
    BehaviorSignature {
        individual: a,
        depth: k,
        words,
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::models::coarsest_bisimulation;
    use crate::testing::{arb_model, simpsons};

    #[test]
    fn walking_the_couple() {
        let i = simpsons();
        let b = behavior_signature(&i, 0, 2);
        let words: Vec<_> = b.words.keys().cloned().collect();
        assert_eq!(words, vec![vec![], vec![0], vec![0, 0]]);
        assert_eq!(
            b.render(&i),
            "ε: {Husband, Male}\nmarriedTo: {Wife, Female}\nmarriedTo.marriedTo: {Husband, Male}\n"
        );
        let z = behavior_signature(&i, 1, 0);
        assert_eq!(z.words.len(), 1);
        assert_eq!(z.words[&vec![]], BTreeSet::from([i.color(1)]));
    }

    proptest! {
        #[test]
        fn bisimilar_individuals_behave_alike(i in arb_model(5), k in 0..4usize) {
            let p = coarsest_bisimulation(&i);
            for block in p.blocks() {
                let first = behavior_signature(&i, block.first().unwrap(), k);
                for a in block.iter() {
                    prop_assert!(behavior_signature(&i, a, k).same_behavior(&first));
                }
            }
        }
    }
}
