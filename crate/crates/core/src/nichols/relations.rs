//! The quadratic relations of `B_d`.

use super::tensor::{Alphabet, TensorElem};
use crate::error::Result;

/// `(ij)² = 0`, `(ij)(kl) + (kl)(ij) = 0` for disjoint pairs, and for `i < j < k` both
/// `(ij)(jk) + (jk)(ik) + (ik)(ij) = 0` and `(jk)(ij) + (ik)(jk) + (ij)(ik) = 0`.
pub fn quadratic_relations(alpha: &Alphabet) -> Result<Vec<TensorElem>> {
    let d = alpha.d;
    let mut out = Vec::new();
    let pairs: Vec<(usize, usize)> = (1..=d).flat_map(|i| (i + 1..=d).map(move |j| (i, j))).collect();
    for &(i, j) in &pairs {
        let a = alpha.letter(i, j)?;
        out.push(TensorElem::from_terms([(vec![a, a], 1)]));
    }
    for (x, &(i, j)) in pairs.iter().enumerate() {
        for &(k, l) in &pairs[x + 1..] {
            if i != k && i != l && j != k && j != l {
                let (a, b) = (alpha.letter(i, j)?, alpha.letter(k, l)?);
                out.push(TensorElem::from_terms([(vec![a, b], 1), (vec![b, a], 1)]));
            }
        }
    }
    for i in 1..=d {
        for j in i + 1..=d {
            for k in j + 1..=d {
                let (ij, jk, ik) = (alpha.letter(i, j)?, alpha.letter(j, k)?, alpha.letter(i, k)?);
                out.push(TensorElem::from_terms([(vec![ij, jk], 1), (vec![jk, ik], 1), (vec![ik, ij], 1)]));
                out.push(TensorElem::from_terms([(vec![jk, ij], 1), (vec![ik, jk], 1), (vec![ij, ik], 1)]));
            }
        }
    }
    Ok(out)
}
