use std::fmt;

use crate::semantics::Interpretation;

use super::{IndividualMap, ModelsError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MorphismFlags {
    pub mono: bool,
    pub epi: bool,
    pub iso: bool,
}

impl fmt::Display for MorphismFlags {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut kinds = Vec::new();
        if self.mono {
            kinds.push("mono");
        }
        if self.epi {
            kinds.push("epi");
        }
        if self.iso {
            kinds.push("iso");
        }
        if kinds.is_empty() {
            write!(f, "morphism")
        } else {
            write!(f, "morphism ({})", kinds.join(", "))
        }
    }
}

/// A concrete failure of one morphism condition, naming individuals of the
/// source (`individual`, `from`, `to`) and of the target (`image`, `target`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// `individual` is in the concept but its image is not.
    ConceptLost {
        concept: String,
        individual: String,
        image: String,
    },
    /// The image is in the concept but `individual` is not.
    ConceptGained {
        concept: String,
        individual: String,
        image: String,
    },
    /// The source edge `from -> to` has no image edge.
    EdgeNotPreserved {
        role: String,
        from: String,
        to: String,
    },
    /// The target edge from the image of `from` to `target` has no preimage
    /// edge out of `from`.
    EdgeNotLifted {
        role: String,
        from: String,
        target: String,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::ConceptLost { concept, individual, image } => write!(
                f,
                "{individual} is in {concept} but its image {image} is not"
            ),
            Witness::ConceptGained { concept, individual, image } => write!(
                f,
                "{individual} is not in {concept} but its image {image} is"
            ),
            Witness::EdgeNotPreserved { role, from, to } => {
                write!(f, "edge {role}({from}, {to}) has no image edge")
            }
            Witness::EdgeNotLifted { role, from, target } => write!(
                f,
                "the image of {from} has an {role}-edge to {target} that no {role}-successor of {from} maps to"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismCheck {
    Morphism(MorphismFlags),
    NotMorphism(Witness),
}

impl MorphismCheck {
    pub fn flags(&self) -> Option<MorphismFlags> {
        match self {
            MorphismCheck::Morphism(f) => Some(*f),
            MorphismCheck::NotMorphism(_) => None,
        }
    }
}

/// Check the three morphism conditions in order: concept membership in both
/// directions, forward edge preservation, backward edge lifting.
pub fn check_morphism(
    m: &IndividualMap,
    src: &Interpretation,
    dst: &Interpretation,
) -> Result<MorphismCheck, ModelsError> {
    if src.signature() != dst.signature() {
        return Err(ModelsError::SignatureMismatch);
    }
    if m.source_len() != src.len() {
        return Err(ModelsError::MapSize {
            expected: src.len(),
            found: m.source_len(),
        });
    }
    if m.target_len() != dst.len() {
        return Err(ModelsError::MapOutOfRange(m.target_len()));
    }
    let sig = src.signature();
    let name = |i: &Interpretation, a: usize| i.individual(a).to_string();

    for (c, concept) in sig.concepts().iter().enumerate() {
        for a in 0..src.len() {
            let b = m.apply(a);
            let (here, there) = (
                src.concept_ext(c).contains(a),
                dst.concept_ext(c).contains(b),
            );
            if here != there {
                let (concept, individual, image) = (concept.clone(), name(src, a), name(dst, b));
                return Ok(MorphismCheck::NotMorphism(if here {
                    Witness::ConceptLost {
                        concept,
                        individual,
                        image,
                    }
                } else {
                    Witness::ConceptGained {
                        concept,
                        individual,
                        image,
                    }
                }));
            }
        }
    }
    for (r, role) in sig.roles().iter().enumerate() {
        for (a, b) in src.role_pairs(r) {
            if !dst.has_edge(r, m.apply(a), m.apply(b)) {
                return Ok(MorphismCheck::NotMorphism(Witness::EdgeNotPreserved {
                    role: role.clone(),
                    from: name(src, a),
                    to: name(src, b),
                }));
            }
        }
    }
    for (r, role) in sig.roles().iter().enumerate() {
        for a in 0..src.len() {
            for target in dst.successors(r, m.apply(a)).iter() {
                if !src.successors(r, a).iter().any(|b| m.apply(b) == target) {
                    return Ok(MorphismCheck::NotMorphism(Witness::EdgeNotLifted {
                        role: role.clone(),
                        from: name(src, a),
                        target: name(dst, target),
                    }));
                }
            }
        }
    }
    let (mono, epi) = (m.is_injective(), m.is_surjective());
    Ok(MorphismCheck::Morphism(MorphismFlags {
        mono,
        epi,
        iso: mono && epi,
    }))
}
