use std::collections::HashMap;

use crate::semantics::Interpretation;
use crate::set::IndSet;

use super::{check_morphism, IndividualMap, ModelsError, MorphismCheck};

/// Disjoint nonempty blocks covering `0..n`, ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<IndSet>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<IndSet>) -> Result<Self, ModelsError> {
        let mut block_of = vec![usize::MAX; n];
        for b in &blocks {
            if b.universe() != n {
                return Err(ModelsError::InvalidPartition(format!(
                    "block over {} individuals, expected {n}",
                    b.universe()
                )));
            }
            if b.is_empty() {
                return Err(ModelsError::InvalidPartition("empty block".into()));
            }
            for a in b.iter() {
                if block_of[a] != usize::MAX {
                    return Err(ModelsError::InvalidPartition(format!(
                        "individual {a} lies in two blocks"
                    )));
                }
                block_of[a] = 0;
            }
        }
        if let Some(a) = block_of.iter().position(|&k| k == usize::MAX) {
            return Err(ModelsError::InvalidPartition(format!(
                "individual {a} lies in no block"
            )));
        }
        Ok(Self::from_blocks(n, blocks))
    }

    /// Group `0..n` by the value of `key`.
    pub fn by_key<K: std::hash::Hash + Eq>(n: usize, key: impl Fn(usize) -> K) -> Self {
        let mut index: HashMap<K, usize> = HashMap::new();
        let mut blocks: Vec<IndSet> = Vec::new();
        for a in 0..n {
            let k = *index.entry(key(a)).or_insert_with(|| {
                blocks.push(IndSet::empty(n));
                blocks.len() - 1
            });
            blocks[k].insert(a);
        }
        Self::from_blocks(n, blocks)
    }

    pub fn discrete(n: usize) -> Self {
        Self::by_key(n, |a| a)
    }

    fn from_blocks(n: usize, mut blocks: Vec<IndSet>) -> Self {
        blocks.sort_by_key(|b| b.first());
        let mut block_of = vec![0; n];
        for (k, b) in blocks.iter().enumerate() {
            for a in b.iter() {
                block_of[a] = k;
            }
        }
        Partition { blocks, block_of }
    }

    pub fn blocks(&self) -> &[IndSet] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn universe(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self, a: usize) -> usize {
        self.block_of[a]
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks.iter().all(|b| {
            let k = coarser.block_of(b.first().expect("blocks are nonempty"));
            b.is_subset(&coarser.blocks[k])
        })
    }
}

/// The coarsest partition of the carrier into bisimilar individuals.
///
/// Starts from the colouring and splits blocks on the set of successor blocks
/// per role until no block splits.
pub fn coarsest_bisimulation(i: &Interpretation) -> Partition {
    let n = i.len();
    let roles = i.signature().roles().len();
    let mut p = Partition::by_key(n, |a| i.color(a));
    loop {
        let next = Partition::by_key(n, |a| {
            let succ: Vec<Vec<usize>> = (0..roles)
                .map(|r| {
                    let mut bs: Vec<usize> =
                        i.successors(r, a).iter().map(|b| p.block_of(b)).collect();
                    bs.sort_unstable();
                    bs.dedup();
                    bs
                })
                .collect();
            (p.block_of(a), succ)
        });
        if next.len() == p.len() {
            return next;
        }
        p = next;
    }
}

/// The model whose individuals are the blocks of `p`, with the projection onto
/// it. Each block is named after its smallest member; a block lies in a
/// concept when some member does, and blocks are joined by an edge when some
/// members are.
///
/// The projection is validated as a morphism; a partition that mixes colours
/// or fails to respect successors is rejected with the failing condition.
pub fn quotient(
    i: &Interpretation,
    p: &Partition,
) -> Result<(Interpretation, IndividualMap), ModelsError> {
    if p.universe() != i.len() {
        return Err(ModelsError::InvalidPartition(format!(
            "partition of {} individuals for a model of {}",
            p.universe(),
            i.len()
        )));
    }
    let names = p
        .blocks()
        .iter()
        .map(|b| i.individual(b.first().expect("nonempty")).to_string());
    let mut q = Interpretation::new(i.signature().clone(), names)?;
    for c in 0..i.signature().concepts().len() {
        for a in i.concept_ext(c).iter() {
            q.add_to_concept(c, p.block_of(a));
        }
    }
    for r in 0..i.signature().roles().len() {
        for (a, b) in i.role_pairs(r) {
            q.add_edge(r, p.block_of(a), p.block_of(b));
        }
    }
    let proj = IndividualMap::new((0..i.len()).map(|a| p.block_of(a)).collect(), p.len())?;
    match check_morphism(&proj, i, &q)? {
        MorphismCheck::Morphism(_) => Ok((q, proj)),
        MorphismCheck::NotMorphism(w) => Err(ModelsError::NotABisimulationPartition(w)),
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::models::{coproduct, Witness};
    use crate::semantics::{eval_concept, satisfies};
    use crate::syntax::{Gci, Signature};
    use crate::testing::{arb_concept, arb_model, simpsons, NAMES};

    #[test]
    fn partitions_validate_their_blocks() {
        let s = |m: &[usize]| IndSet::from_members(3, m.iter().copied());
        assert!(Partition::new(3, vec![s(&[0, 2]), s(&[1])]).is_ok());
        assert!(Partition::new(3, vec![s(&[0, 2]), s(&[1, 2])]).is_err());
        assert!(Partition::new(3, vec![s(&[0, 2])]).is_err());
        assert!(Partition::new(3, vec![s(&[0, 1, 2]), s(&[])]).is_err());
        let p = Partition::new(3, vec![s(&[1]), s(&[0, 2])]).unwrap();
        assert_eq!(p.blocks()[0], s(&[0, 2]));
        assert!(Partition::discrete(3).refines(&p) && !p.refines(&Partition::discrete(3)));
    }

    #[test]
    fn simpsons_are_not_bisimilar() {
        let i = simpsons();
        assert_eq!(coarsest_bisimulation(&i), Partition::discrete(2));
        let lumped = Partition::new(2, vec![IndSet::full(2)]).unwrap();
        assert!(matches!(
            quotient(&i, &lumped),
            Err(ModelsError::NotABisimulationPartition(
                Witness::ConceptGained { .. }
            ))
        ));
    }

    #[test]
    fn doubled_simpsons_fold_back() {
        let i = simpsons();
        let c = coproduct(&[i.clone(), i.clone()]).unwrap();
        let p = coarsest_bisimulation(&c);
        let blocks: Vec<String> = p.blocks().iter().map(|b| c.format_set(b)).collect();
        assert_eq!(blocks, ["{0#Homer, 1#Homer}", "{0#Marge, 1#Marge}"]);
        let (q, proj) = quotient(&c, &p).unwrap();
        assert!(check_morphism(&proj, &c, &q).unwrap().flags().unwrap().epi);
        // Renaming `0#x` to `x` is an isomorphism onto the original model.
        let rename = IndividualMap::new(
            q.individuals()
                .iter()
                .map(|x| i.individual_index(x.strip_prefix("0#").unwrap()).unwrap())
                .collect(),
            2,
        )
        .unwrap();
        assert!(
            check_morphism(&rename, &q, &i)
                .unwrap()
                .flags()
                .unwrap()
                .iso
        );
    }

    #[test]
    fn uniform_models_collapse() {
        let sig = Signature::new(["A"], ["r"]).unwrap();
        let mut i = Interpretation::new(sig, ["a", "b", "c"]).unwrap();
        i.set_concept_ext(0, IndSet::full(3));
        assert_eq!(coarsest_bisimulation(&i).len(), 1);
        // A chain a -> b -> c separates all three.
        i.add_edge(0, 0, 1);
        i.add_edge(0, 1, 2);
        assert_eq!(coarsest_bisimulation(&i).len(), 3);
    }

    #[test]
    fn discrete_quotient_is_an_isomorphic_copy() {
        let i = simpsons();
        let (q, proj) = quotient(&i, &Partition::discrete(2)).unwrap();
        assert_eq!(q, i);
        assert!(check_morphism(&proj, &i, &q).unwrap().flags().unwrap().iso);
    }

    proptest! {
        #[test]
        fn quotients_preserve_concepts_and_gcis(
            i in arb_model(6), c in arb_concept(&NAMES), d in arb_concept(&NAMES)
        ) {
            let p = coarsest_bisimulation(&i);
            let (q, proj) = quotient(&i, &p).unwrap();
            prop_assert!(check_morphism(&proj, &i, &q).unwrap().flags().unwrap().epi);
            // Quotienting again changes nothing.
            prop_assert_eq!(coarsest_bisimulation(&q).len(), q.len());
            let in_q = eval_concept(&c, &q);
            for (a, x) in eval_concept(&c, &i).iter().map(|a| (a, true))
                .chain(eval_concept(&c, &i).complement().iter().map(|a| (a, false)))
            {
                prop_assert_eq!(in_q.contains(proj.apply(a)), x);
            }
            let g = Gci::subsumes(c, d);
            prop_assert_eq!(satisfies(&i, &g).unwrap(), satisfies(&q, &g).unwrap());
        }

        #[test]
        fn accepted_partitions_refine_the_coarsest(i in arb_model(5), key in prop::collection::vec(0..3usize, 5)) {
            let p = Partition::by_key(i.len(), |a| key[a]);
            if quotient(&i, &p).is_ok() {
                prop_assert!(p.refines(&coarsest_bisimulation(&i)));
            }
        }
    }
}
