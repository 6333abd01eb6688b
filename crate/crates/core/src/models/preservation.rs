use crate::semantics::{satisfies, Interpretation};
use crate::syntax::Gci;

use super::{check_morphism, IndividualMap, ModelsError, MorphismCheck};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationEntry {
    pub gci: Gci,
    pub in_source: bool,
    pub in_target: bool,
}

impl PreservationEntry {
    /// What the target satisfies the source satisfies; along an
    /// epimorphism the converse holds too.
    pub fn preserved(&self, epi: bool) -> bool {
        (!self.in_target || self.in_source) && (!epi || self.in_source == self.in_target)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationReport {
    pub epi: bool,
    pub entries: Vec<PreservationEntry>,
}

impl PreservationReport {
    /// Entries breaking the expected implication. Always empty for a correct
    /// implementation.
    pub fn violations(&self) -> Vec<&PreservationEntry> {
        self.entries
            .iter()
            .filter(|e| !e.preserved(self.epi))
            .collect()
    }
}

/// Satisfaction of each GCI on both sides of a morphism.
pub fn preservation_report(
    src: &Interpretation,
    dst: &Interpretation,
    m: &IndividualMap,
    gcis: &[Gci],
) -> Result<PreservationReport, ModelsError> {
    let flags = match check_morphism(m, src, dst)? {
        MorphismCheck::Morphism(f) => f,
        MorphismCheck::NotMorphism(w) => return Err(ModelsError::NotMorphism(w)),
    };
    let entries = gcis
        .iter()
        .map(|g| {
            Ok(PreservationEntry {
                gci: g.clone(),
                in_source: satisfies(src, g)?,
                in_target: satisfies(dst, g)?,
            })
        })
        .collect::<Result<_, ModelsError>>()?;
    Ok(PreservationReport {
        epi: flags.epi,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::models::{
        coarsest_bisimulation, coproduct, coproduct_fold, coproduct_injection, quotient,
    };
    use crate::semantics::eval_concept;
    use crate::syntax::parse_gci;
    use crate::testing::{arb_concept, arb_model, simpsons, NAMES};

    #[test]
    fn folding_the_doubled_simpsons() {
        let i = simpsons();
        let c = coproduct(&[i.clone(), i.clone()]).unwrap();
        let gcis: Vec<Gci> = [
            "Husband == Male",
            "Female == Wife",
            "Male & Wife == bot",
            "~Male == Wife",
            "exists marriedTo . Wife == Male",
            "forall marriedTo . Male == Wife",
            "Male <= Wife",
            "top <= exists marriedTo . top",
        ]
        .iter()
        .map(|s| parse_gci(s, i.signature()).unwrap())
        .collect();
        let report = preservation_report(&c, &i, &coproduct_fold(2, &i), &gcis).unwrap();
        assert!(report.epi && report.violations().is_empty());
        let verdicts: Vec<bool> = report.entries.iter().map(|e| e.in_source).collect();
        assert_eq!(verdicts, [true, true, true, true, true, true, false, true]);

        let id = preservation_report(&i, &i, &IndividualMap::identity(2), &gcis).unwrap();
        assert!(id.violations().is_empty());
        let swap = IndividualMap::new(vec![1, 0], 2).unwrap();
        assert!(matches!(
            preservation_report(&i, &i, &swap, &gcis),
            Err(ModelsError::NotMorphism(_))
        ));
    }

    /// Morphisms drawn from the three constructions available: quotient
    /// projections, folds, and coproduct injections.
    fn morphisms(
        i: &Interpretation,
        j: &Interpretation,
    ) -> Vec<(Interpretation, Interpretation, IndividualMap)> {
        let (q, proj) = quotient(i, &coarsest_bisimulation(i)).unwrap();
        let pair = [i.clone(), j.clone()];
        let sum = coproduct(&pair).unwrap();
        let double = coproduct(&[i.clone(), i.clone()]).unwrap();
        vec![
            (i.clone(), q, proj),
            (double, i.clone(), coproduct_fold(2, i)),
            (i.clone(), sum.clone(), coproduct_injection(&pair, 0)),
            (j.clone(), sum, coproduct_injection(&pair, 1)),
        ]
    }

    proptest! {
        #[test]
        fn membership_is_preserved_pointwise(
            i in arb_model(4), j in arb_model(4), c in arb_concept(&NAMES)
        ) {
            for (src, dst, m) in morphisms(&i, &j) {
                let (here, there) = (eval_concept(&c, &src), eval_concept(&c, &dst));
                for a in 0..src.len() {
                    prop_assert_eq!(here.contains(a), there.contains(m.apply(a)));
                }
            }
        }

        #[test]
        fn gcis_follow_the_morphism(
            i in arb_model(4), j in arb_model(4), c in arb_concept(&NAMES), d in arb_concept(&NAMES)
        ) {
            let g = [Gci::subsumes(c, d)];
            for (src, dst, m) in morphisms(&i, &j) {
                prop_assert!(preservation_report(&src, &dst, &m, &g).unwrap().violations().is_empty());
            }
        }
    }
}
