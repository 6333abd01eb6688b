use std::collections::BTreeSet;

use proptest::prelude::*;

use super::*;
use crate::reasoner::{entails, Budget, Verdict};
use crate::semantics::{eval_concept, satisfies, Interpretation};
use crate::set::IndSet;
use crate::syntax::{parse_concept, parse_theory, Concept, Gci, Signature, Theory};
use crate::testing::{arb_concept_over, arb_model_over, model_from_masks, simpsons};

/// The couple's basis over the classes ⊥, Male, Wife and Male ⊔ Wife.
const RAW: &str = "\
Husband == Male
Female == Wife
Male & Wife == bot
Male & (Male | Wife) == Male
Wife & (Male | Wife) == Wife
Male | (Male | Wife) == Male | Wife
Wife | (Male | Wife) == Male | Wife
bot | Male == Male
bot | Wife == Wife
bot | (Male | Wife) == Male | Wife
bot & Male == bot
bot & Wife == bot
bot & (Male | Wife) == bot
~bot == Male | Wife
~Male == Wife
~Wife == Male
~(Male | Wife) == bot
exists marriedTo . Wife == Male
forall marriedTo . Wife == Male
exists marriedTo . Male == Wife
forall marriedTo . Male == Wife
exists marriedTo . bot == bot
forall marriedTo . bot == bot
exists marriedTo . (Male | Wife) == Male | Wife
forall marriedTo . (Male | Wife) == Male | Wife
bot <= Male
bot <= Wife
bot <= Male | Wife
Male <= Male | Wife
Wife <= Male | Wife
";

const NINE: &str = "\
Husband == Male
Female == Wife
Male & Wife == bot
~Male == Wife
~(Male | Wife) == bot
exists marriedTo . Wife == Male
forall marriedTo . Wife == Male
exists marriedTo . Male == Wife
forall marriedTo . Male == Wife
";

fn theory(sig: &Signature, text: &str) -> Theory {
    parse_theory(text, Some(sig)).unwrap().1
}

fn hand_picked(i: &Interpretation) -> DefinableFamily {
    let sig = i.signature();
    let entries = ["bot", "Male", "Wife", "Male | Wife"].map(|t| {
        let c = parse_concept(t, sig).unwrap();
        (eval_concept(&c, i), c)
    });
    DefinableFamily::from_entries(i, Mode::Separating, entries).unwrap()
}

fn multiset(t: &Theory) -> Vec<String> {
    let mut v: Vec<String> = t.iter().map(|g| g.to_string()).collect();
    v.sort();
    v
}

fn mutually_entailed(t: &Theory, u: &Theory) -> bool {
    let one_way = |a: &Theory, b: &Theory| {
        b.iter()
            .all(|g| entails(a, g, Budget::default()).unwrap().verdict == Verdict::Entailed)
    };
    one_way(t, u) && one_way(u, t)
}

#[test]
fn closure_of_the_couple() {
    let i = simpsons();
    let fam = definable_closure(&i).unwrap();
    let sets: Vec<IndSet> = fam.iter().map(|(s, _)| s.clone()).collect();
    let n = |m| IndSet::from_mask(2, m);
    assert_eq!(sets, vec![n(0), n(1), n(2), n(3)]);
    assert_eq!(fam.get(&n(1)), Some(&Concept::name("Husband")));
    assert_eq!(fam.mode(), Mode::Closure);
}

#[test]
fn closure_without_names() {
    let sig = Signature::new(Vec::<String>::new(), Vec::<String>::new()).unwrap();
    let i = Interpretation::new(sig, ["a", "b", "c"]).unwrap();
    let fam = definable_closure(&i).unwrap();
    assert_eq!(fam.len(), 2);
    let too_big =
        Interpretation::new(i.signature().clone(), (0..21).map(|k| format!("x{k}"))).unwrap();
    assert_eq!(
        definable_closure(&too_big).unwrap_err(),
        BasisError::DomainTooLarge {
            size: 21,
            bound: 20
        }
    );
}

#[test]
fn separation_examples() {
    assert_eq!(check_separation(&simpsons()), Separation::Separable);
    let one = model_from_masks(&["A"], &["r"], 1, &[1, 1]);
    assert_eq!(check_separation(&one), Separation::Separable);
    // d1 and d2: both in A, both without successors.
    let same = model_from_masks(&["A"], &["r"], 3, &[0b110, 0b010, 0, 0]);
    assert_eq!(check_separation(&same), Separation::Inseparable(1, 2));
    assert!(matches!(
        representative(&same, &IndSet::singleton(3, 1)),
        Err(BasisError::NotSeparable(..))
    ));
    // d1 and d2 now differ on the domain of r, in either direction.
    let split = model_from_masks(&["A"], &["r"], 3, &[0b110, 0, 0b001, 0]);
    assert_eq!(check_separation(&split), Separation::Separable);
    for a in 0..3 {
        let s = IndSet::singleton(3, a);
        assert_eq!(
            eval_concept(&representative(&split, &s).unwrap(), &split),
            s
        );
    }
}

#[test]
fn representatives_of_the_couple() {
    let i = simpsons();
    assert_eq!(representative(&i, &IndSet::empty(2)).unwrap(), Concept::Bot);
    let homer = representative(&i, &IndSet::singleton(2, 0)).unwrap();
    assert_eq!(homer, Concept::name("Husband"));
    let both = representative(&i, &IndSet::full(2)).unwrap();
    assert_eq!(both, Concept::name("Husband").or(Concept::name("Female")));
}

#[test]
fn the_couple_basis_by_hand_picked_classes() {
    let i = simpsons();
    let report = generate_basis(&i, &hand_picked(&i));
    assert_eq!(multiset(&report.raw), multiset(&theory(i.signature(), RAW)));
    let s = &report.stats;
    assert_eq!(
        (
            s.classes,
            s.names,
            s.binary,
            s.complements,
            s.restrictions,
            s.inclusions
        ),
        (4, 2, 11, 4, 8, 5)
    );
    assert_eq!(s.raw_count, 30);
    assert!(report.raw.iter().all(|g| satisfies(&i, g).unwrap()));
    let m = minimize(&report.raw, Budget::default()).unwrap();
    assert!(m.undecided.is_empty());
    assert!(mutually_entailed(&m.theory, &theory(i.signature(), NINE)));
}

#[test]
fn the_couple_basis_by_default_choices() {
    let i = simpsons();
    let opts = BasisOptions {
        minimize: true,
        ..BasisOptions::default()
    };
    let report = basis(&i, &opts).unwrap();
    assert_eq!(report.mode, Mode::Separating);
    assert!(report.raw.iter().all(|g| satisfies(&i, g).unwrap()));
    let m = report.minimized.as_ref().unwrap();
    assert_eq!(report.stats.minimized_count, Some(m.theory.len()));
    assert_eq!(report.stats.eliminated + m.theory.len(), report.raw.len());
    assert!(mutually_entailed(&m.theory, &theory(i.signature(), NINE)));
    assert!(mutually_entailed(&m.theory, &report.raw));
}

#[test]
fn two_class_family() {
    let sig = Signature::new(Vec::<String>::new(), ["r"]).unwrap();
    let mut i = Interpretation::new(sig, ["a"]).unwrap();
    i.add_edge(0, 0, 0);
    let report = generate_basis(&i, &definable_closure(&i).unwrap());
    let expected = "\
bot & top == bot
bot | top == top
~bot == top
~top == bot
exists r . bot == bot
forall r . bot == bot
exists r . top == top
forall r . top == top
bot <= top
";
    assert_eq!(
        multiset(&report.raw),
        multiset(&theory(i.signature(), expected))
    );
}

#[test]
fn minimize_edge_cases() {
    let m = minimize(&Theory::new(), Budget::default()).unwrap();
    assert!(m.theory.is_empty());
    let (_, t) = parse_theory("A <= B\nA <= B", None).unwrap();
    let m = minimize(&t, Budget::default()).unwrap();
    assert_eq!(m.theory.len(), 1);
    assert_eq!(m.eliminated, 1);
    let (_, t) = parse_theory("A <= B\nB <= C\nA <= C", None).unwrap();
    let m = minimize(&t, Budget::default()).unwrap();
    assert_eq!(m.theory.len(), 2);
}

#[test]
fn covariety_of_disagreeing_models() {
    let i = simpsons();
    let mut j = simpsons();
    j.set_concept("Wife", &["Homer", "Marge"]).unwrap();
    let opts = BasisOptions::default();
    let report = covariety_basis(&[i.clone(), j.clone()], &opts).unwrap();
    let g = Gci::subsumes(Concept::name("Male"), Concept::name("Wife"));
    assert!(!satisfies(&i, &g).unwrap() && satisfies(&j, &g).unwrap());
    assert_eq!(
        entails(&report.raw, &g, Budget::default()).unwrap().verdict,
        Verdict::NotEntailed
    );
    let h = Gci::subsumes(Concept::name("Husband"), Concept::name("Male"));
    assert_eq!(
        entails(&report.raw, &h, Budget::default()).unwrap().verdict,
        Verdict::Entailed
    );

    let single = covariety_basis(std::slice::from_ref(&i), &opts).unwrap();
    let own = basis(&i, &opts).unwrap();
    assert!(mutually_entailed(&single.raw, &own.raw));
    let twice = covariety_basis(&[i.clone(), i.clone()], &opts).unwrap();
    assert_eq!(twice.mode, Mode::Closure);
    assert!(mutually_entailed(&twice.raw, &own.raw));
}

/// Every extension of a concept of depth at most `depth` built from the
/// names, ⊤ and ⊥, level by level.
fn brute_force_definable(i: &Interpretation, depth: usize) -> BTreeSet<Vec<usize>> {
    let sig = i.signature();
    let mut level: BTreeSet<Vec<usize>> = BTreeSet::new();
    level.insert(vec![]);
    level.insert(i.carrier().iter().collect());
    for c in 0..sig.concepts().len() {
        level.insert(i.concept_ext(c).iter().collect());
    }
    let to_set = |v: &Vec<usize>| IndSet::from_members(i.len(), v.iter().copied());
    for _ in 0..depth {
        let known: Vec<IndSet> = level.iter().map(to_set).collect();
        let mut next = level.clone();
        for s in &known {
            next.insert(s.complement().iter().collect());
            for t in &known {
                next.insert(s.union(t).iter().collect());
                next.insert(s.intersection(t).iter().collect());
            }
            for r in 0..sig.roles().len() {
                let ex = (0..i.len()).filter(|&a| i.successors(r, a).iter().any(|b| s.contains(b)));
                let all =
                    (0..i.len()).filter(|&a| i.successors(r, a).iter().all(|b| s.contains(b)));
                next.insert(ex.collect());
                next.insert(all.collect());
            }
        }
        if next == level {
            break;
        }
        level = next;
    }
    level
}

static NAMES4: [&str; 4] = ["A", "B", "C", "D"];
static NAMES2: [&str; 2] = ["A", "B"];
static ROLES2: [&str; 2] = ["r", "s"];
static ROLE1: [&str; 1] = ["r"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_matches_brute_force(i in arb_model_over(&NAMES2, &ROLE1, 3)) {
        let fam = definable_closure(&i).unwrap();
        let ours: BTreeSet<Vec<usize>> = fam.iter().map(|(s, _)| s.iter().collect()).collect();
        prop_assert_eq!(ours, brute_force_definable(&i, 8));
        for (s, c) in fam.iter() {
            prop_assert_eq!(&eval_concept(c, &i), s);
        }
    }

    #[test]
    fn representatives_denote_their_sets(i in arb_model_over(&NAMES4, &ROLES2, 5)) {
        prop_assume!(check_separation(&i) == Separation::Separable);
        let fam = separating_family(&i, 20).unwrap();
        prop_assert_eq!(fam.len(), 1 << i.len());
        for (s, c) in fam.iter() {
            prop_assert_eq!(&eval_concept(c, &i), s);
        }
    }

    #[test]
    fn raw_basis_is_sound(i in arb_model_over(&NAMES2, &ROLE1, 3)) {
        let report = basis(&i, &BasisOptions::default()).unwrap();
        for g in report.raw.iter() {
            prop_assert!(satisfies(&i, g).unwrap(), "{} fails", g);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn raw_basis_is_complete(
        i in arb_model_over(&NAMES2, &ROLE1, 2),
        gs in prop::collection::vec((arb_concept_over(&NAMES2, &ROLE1, 2), arb_concept_over(&NAMES2, &ROLE1, 2)), 8),
    ) {
        let report = basis(&i, &BasisOptions::default()).unwrap();
        for (c, d) in gs {
            let g = Gci::subsumes(c, d);
            let v = entails(&report.raw, &g, Budget::default()).unwrap().verdict;
            prop_assume!(v != Verdict::Timeout);
            prop_assert_eq!(v == Verdict::Entailed, satisfies(&i, &g).unwrap(), "{}", g);
        }
    }

    #[test]
    fn minimize_preserves_entailment(
        i in arb_model_over(&NAMES2, &ROLE1, 2),
        gs in prop::collection::vec((arb_concept_over(&NAMES2, &ROLE1, 2), arb_concept_over(&NAMES2, &ROLE1, 2)), 4),
    ) {
        let report = basis(&i, &BasisOptions { minimize: true, ..BasisOptions::default() }).unwrap();
        let min = &report.minimized.as_ref().unwrap().theory;
        for (c, d) in gs {
            let g = Gci::subsumes(c, d);
            let a = entails(&report.raw, &g, Budget::default()).unwrap().verdict;
            let b = entails(min, &g, Budget::default()).unwrap().verdict;
            prop_assume!(a != Verdict::Timeout && b != Verdict::Timeout);
            prop_assert_eq!(a, b);
        }
    }
}
