//! Seeded generators shared by the integration tests.

#![allow(dead_code)]

use alc_core::models::IndividualMap;
use alc_core::semantics::{parse_model, Interpretation};
use alc_core::{Concept, Gci, Signature};
use std::ops::RangeInclusive;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const SIMPSONS: &str = include_str!("../data/simpsons.alcm");

pub fn simpsons() -> Interpretation {
    parse_model(SIMPSONS).expect("fixture parses")
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn signature(concepts: usize, roles: usize) -> Signature {
    let cs = ["A", "B", "C", "D"];
    let rs = ["r", "s"];
    Signature::new(cs[..concepts].iter().copied(), rs[..roles].iter().copied()).unwrap()
}

/// A carrier size drawn from `sizes`, every membership and edge present
/// with probability `density`.
pub fn random_model(
    rng: &mut impl Rng,
    sig: &Signature,
    sizes: RangeInclusive<usize>,
    density: f64,
) -> Interpretation {
    let n = rng.gen_range(sizes);
    let mut i = Interpretation::new(sig.clone(), (0..n).map(|k| format!("d{k}"))).unwrap();
    for c in 0..sig.concepts().len() {
        for a in 0..n {
            if rng.gen_bool(density) {
                i.add_to_concept(c, a);
            }
        }
    }
    for r in 0..sig.roles().len() {
        for a in 0..n {
            for b in 0..n {
                if rng.gen_bool(density) {
                    i.add_edge(r, a, b);
                }
            }
        }
    }
    i
}

/// A concept of depth at most `depth` over `sig`.
pub fn random_concept(rng: &mut impl Rng, sig: &Signature, depth: usize) -> Concept {
    let leaf = |rng: &mut dyn rand::RngCore| match rng.gen_range(0..10) {
        0 => Concept::Top,
        1 => Concept::Bot,
        _ => Concept::name(sig.concepts().choose(rng).expect("names").as_str()),
    };
    if depth == 0 || rng.gen_range(0..4) == 0 || sig.concepts().is_empty() {
        if sig.concepts().is_empty() {
            return if rng.gen() {
                Concept::Top
            } else {
                Concept::Bot
            };
        }
        return leaf(rng);
    }
    let quantifiers = if sig.roles().is_empty() { 3 } else { 5 };
    match rng.gen_range(0..quantifiers) {
        0 => random_concept(rng, sig, depth - 1).not(),
        1 => random_concept(rng, sig, depth - 1).and(random_concept(rng, sig, depth - 1)),
        2 => random_concept(rng, sig, depth - 1).or(random_concept(rng, sig, depth - 1)),
        k => {
            let r = sig.roles().choose(rng).expect("roles").clone();
            let filler = random_concept(rng, sig, depth - 1);
            if k == 3 {
                Concept::exists(r, filler)
            } else {
                Concept::forall(r, filler)
            }
        }
    }
}

pub fn random_gci(rng: &mut impl Rng, sig: &Signature, depth: usize) -> Gci {
    Gci::subsumes(
        random_concept(rng, sig, depth),
        random_concept(rng, sig, depth),
    )
}

/// A surjective morphism onto `dst`: a random map onto its carrier, colours
/// pulled back, and for every edge of the image a nonempty random choice of
/// preimage edges.
pub fn random_morphism_onto(
    rng: &mut impl Rng,
    dst: &Interpretation,
    extra: RangeInclusive<usize>,
) -> (Interpretation, IndividualMap) {
    let extra = rng.gen_range(extra);
    let m = dst.len();
    let mut table: Vec<usize> = (0..m).collect();
    table.extend((0..extra).map(|_| rng.gen_range(0..m)));
    table.shuffle(rng);
    let n = table.len();
    let sig = dst.signature();
    let mut src = Interpretation::new(sig.clone(), (0..n).map(|k| format!("e{k}"))).unwrap();
    for (a, &h) in table.iter().enumerate() {
        for c in dst.color(h) {
            src.add_to_concept(c, a);
        }
    }
    for r in 0..sig.roles().len() {
        for (a, &h) in table.iter().enumerate() {
            for y in dst.successors(r, h).iter() {
                let pre: Vec<usize> = (0..n).filter(|&b| table[b] == y).collect();
                let first = *pre.choose(rng).expect("the map is onto");
                src.add_edge(r, a, first);
                for &b in &pre {
                    if rng.gen_bool(0.3) {
                        src.add_edge(r, a, b);
                    }
                }
            }
        }
    }
    let map = IndividualMap::new(table, m).unwrap();
    (src, map)
}
