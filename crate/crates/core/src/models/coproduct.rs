use crate::semantics::Interpretation;

use super::{IndividualMap, ModelsError};

/// Tagged disjoint union. The individual `x` of the `i`-th model (0-based)
/// becomes `i#x`; carrier order is model order, then each model's own order.
pub fn coproduct(models: &[Interpretation]) -> Result<Interpretation, ModelsError> {
    let first = models.first().ok_or(ModelsError::EmptyFamily)?;
    let sig = first.signature();
    if models.iter().any(|m| m.signature() != sig) {
        return Err(ModelsError::SignatureMismatch);
    }
    let names = models
        .iter()
        .enumerate()
        .flat_map(|(i, m)| m.individuals().iter().map(move |x| format!("{i}#{x}")));
    let mut out = Interpretation::new(sig.clone(), names)?;
    let mut offset = 0;
    for m in models {
        for c in 0..sig.concepts().len() {
            for a in m.concept_ext(c).iter() {
                out.add_to_concept(c, offset + a);
            }
        }
        for r in 0..sig.roles().len() {
            for (a, b) in m.role_pairs(r) {
                out.add_edge(r, offset + a, offset + b);
            }
        }
        offset += m.len();
    }
    Ok(out)
}

/// The codiagonal from the coproduct of `copies` copies of `model` back onto
/// `model`, sending `i#x` to `x`.
pub fn coproduct_fold(copies: usize, model: &Interpretation) -> IndividualMap {
    let n = model.len();
    IndividualMap::new((0..copies * n).map(|k| k % n).collect(), n).expect("images are in range")
}

/// The inclusion of the `k`-th model into the coproduct of `models`.
pub fn coproduct_injection(models: &[Interpretation], k: usize) -> IndividualMap {
    let offset: usize = models[..k].iter().map(Interpretation::len).sum();
    let total = models.iter().map(Interpretation::len).sum();
    IndividualMap::new((0..models[k].len()).map(|a| offset + a).collect(), total)
        .expect("images are in range")
}
