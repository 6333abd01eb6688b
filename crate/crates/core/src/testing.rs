//! Fixtures and proptest generators shared by the unit tests.

use proptest::prelude::*;

use crate::semantics::Interpretation;
use crate::set::IndSet;
use crate::syntax::{Concept, Signature};

pub const NAMES: [&str; 3] = ["A", "B", "C"];
pub const ROLES: [&str; 2] = ["r", "s"];

/// The two-individual married couple used throughout the examples.
pub fn simpsons() -> Interpretation {
    let sig = Signature::new(["Husband", "Wife", "Male", "Female"], ["marriedTo"]).unwrap();
    let mut i = Interpretation::new(sig, ["Homer", "Marge"]).unwrap();
    i.set_concept("Husband", &["Homer"]).unwrap();
    i.set_concept("Male", &["Homer"]).unwrap();
    i.set_concept("Wife", &["Marge"]).unwrap();
    i.set_concept("Female", &["Marge"]).unwrap();
    i.add_pair("marriedTo", "Homer", "Marge").unwrap();
    i.add_pair("marriedTo", "Marge", "Homer").unwrap();
    i
}

/// A model over `concepts`/`roles` with `n` individuals `d0, d1, ...` and
/// extensions read off the bits of `masks` (concepts first, then one mask per
/// role and source individual).
pub fn model_from_masks(
    concepts: &[&str],
    roles: &[&str],
    n: usize,
    masks: &[u64],
) -> Interpretation {
    let sig = Signature::new(concepts.iter().copied(), roles.iter().copied()).unwrap();
    let mut i = Interpretation::new(sig, (0..n).map(|k| format!("d{k}"))).unwrap();
    let (cs, rs) = masks.split_at(concepts.len());
    for (c, &mask) in cs.iter().enumerate() {
        i.set_concept_ext(c, IndSet::from_mask(n, mask));
    }
    for (k, &mask) in rs.iter().enumerate() {
        for b in IndSet::from_mask(n, mask).iter() {
            i.add_edge(k / n, k % n, b);
        }
    }
    i
}

/// Models over {A, B, C; r, s} with 1 to `max` individuals.
pub fn arb_model(max: usize) -> impl Strategy<Value = Interpretation> {
    arb_model_over(&NAMES, &ROLES, max)
}

pub fn arb_model_over(
    concepts: &'static [&'static str],
    roles: &'static [&'static str],
    max: usize,
) -> impl Strategy<Value = Interpretation> {
    (1..=max).prop_flat_map(move |n| {
        prop::collection::vec(any::<u64>(), concepts.len() + roles.len() * n)
            .prop_map(move |masks| model_from_masks(concepts, roles, n, &masks))
    })
}

/// Concepts over the given concept names and the roles `r, s`.
pub fn arb_concept(names: &'static [&'static str]) -> impl Strategy<Value = Concept> {
    arb_concept_over(names, &ROLES, 4)
}

pub fn arb_concept_over(
    names: &'static [&'static str],
    roles: &'static [&'static str],
    depth: u32,
) -> impl Strategy<Value = Concept> {
    let leaf = prop_oneof![
        Just(Concept::Top),
        Just(Concept::Bot),
        prop::sample::select(names).prop_map(Concept::name),
    ];
    leaf.prop_recursive(depth, 24, 2, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.and(b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.or(b)),
            inner.clone().prop_map(Concept::not),
            (prop::sample::select(roles), inner.clone()).prop_map(|(r, c)| Concept::exists(r, c)),
            (prop::sample::select(roles), inner).prop_map(|(r, c)| Concept::forall(r, c)),
        ]
    })
}
