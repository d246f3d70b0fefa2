//! The Nichols algebras `B_d` of the transpositions in `S_d` with braiding `−(conjugation)`.

pub mod braiding;
pub mod groebner;
pub mod relations;
pub mod symmetrizer;
pub mod tensor;

use std::collections::HashMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use braiding::{braid_at, braid_equation_holds, braiding_eps, shuffle_product, shuffle_product_with, ReducedWord};
pub use groebner::{groebner_complete, RewriteSystem, DEFAULT_RULE_CAP};
pub use relations::quadratic_relations;
pub use symmetrizer::{quantum_symmetrizer_dim, quantum_symmetrizer_dims, RankMode};
pub use tensor::{deglex, Alphabet, TensorElem, Word};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// The two `S_d`-actions on `kτ_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionMode {
    /// `e_t ↦ e_{gtg⁻¹}`.
    Geometric,
    /// `e_t ↦ sgn(g) e_{gtg⁻¹}`.
    Standard,
}

impl FromStr for ActionMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "geometric" => Ok(ActionMode::Geometric),
            "standard" => Ok(ActionMode::Standard),
            _ => Err(Error::Parse(format!("action must be geometric or standard, got {s:?}"))),
        }
    }
}

impl ActionMode {
    /// The scalar by which `g` acts in degree `n` on top of letter conjugation.
    pub fn twist(self, g: &Perm, n: usize) -> i64 {
        match self {
            ActionMode::Geometric => 1,
            ActionMode::Standard => g.sign().pow(n as u32),
        }
    }
}

/// `g` acting letterwise on a word.
pub fn act_on_word(alpha: &Alphabet, g: &Perm, w: &[u8]) -> Word {
    w.iter().map(|&t| alpha.conjugate_letter(g, t)).collect()
}

/// The diagonal extension of the action to `V^{⊗n}`.
pub fn sd_action(alpha: &Alphabet, g: &Perm, mode: ActionMode, x: &TensorElem) -> TensorElem {
    x.map_words(|w| {
        let s = BigRational::from_integer(BigInt::from(mode.twist(g, w.len())));
        vec![(act_on_word(alpha, g, w), s)]
    })
}

/// Expected Hilbert series: `(2)²(3)`, `(2)²(3)²(4)²`, `(4)⁴(5)²(6)⁴` for `d = 3, 4, 5`.
pub fn expected_hilbert(d: usize) -> Result<Vec<u64>> {
    let factors: &[(usize, usize)] = match d {
        3 => &[(2, 2), (3, 1)],
        4 => &[(2, 2), (3, 2), (4, 2)],
        5 => &[(4, 4), (5, 2), (6, 4)],
        _ => return Err(Error::UnsupportedDegree(d as u32)),
    };
    let mut poly = vec![1u64];
    for &(k, e) in factors {
        for _ in 0..e {
            // multiply by 1 + t + ⋯ + t^{k−1}
            let mut next = vec![0u64; poly.len() + k - 1];
            for (i, &c) in poly.iter().enumerate() {
                for slot in &mut next[i..i + k] {
                    *slot += c;
                }
            }
            poly = next;
        }
    }
    Ok(poly)
}

/// `B_d` with a completed rewrite system and its normal-word basis.
#[derive(Clone, Debug)]
pub struct NicholsAlgebra {
    pub d: usize,
    pub alphabet: Alphabet,
    pub system: RewriteSystem,
    basis: Vec<Vec<Word>>,
    index: HashMap<Word, usize>,
}

impl NicholsAlgebra {
    /// Completes the quadratic relations one degree past the expected top degree.
    pub fn build(d: usize, rule_cap: usize) -> Result<Self> {
        let alphabet = Alphabet::new(d)?;
        let top = expected_hilbert(d)?.len() - 1;
        let rels = quadratic_relations(&alphabet)?;
        let system = groebner_complete(&rels, alphabet.size(), top + 1, rule_cap)?;
        Self::from_system(alphabet, system)
    }

    pub fn from_system(alphabet: Alphabet, system: RewriteSystem) -> Result<Self> {
        let top = system.top_degree().ok_or_else(|| {
            Error::Precondition(format!(
                "rewrite system completed to degree {} has not reached a vanishing degree",
                system.completed_to
            ))
        })?;
        let basis: Vec<Vec<Word>> = (0..=top)
            .map(|n| system.normal_words(n).map(|w| w.to_vec()))
            .collect::<Result<_>>()?;
        let index = basis
            .iter()
            .flat_map(|ws| ws.iter().enumerate().map(|(i, w)| (w.clone(), i)))
            .collect();
        Ok(Self {
            d: alphabet.d,
            alphabet,
            system,
            basis,
            index,
        })
    }

    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.len()).collect()
    }

    pub fn top_degree(&self) -> usize {
        self.basis.len() - 1
    }

    /// Normal words of degree `n` (empty past the top degree).
    pub fn basis(&self, n: usize) -> &[Word] {
        self.basis.get(n).map(|b| b.as_slice()).unwrap_or(&[])
    }

    /// Position of a normal word within its degree.
    pub fn index_of(&self, w: &[u8]) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// `NF(uv)` as coordinates in the degree-`|u|+|v|` basis.
    pub fn multiply_words(&self, norm: &mut groebner::Normalizer<'_>, u: &[u8], v: &[u8]) -> Result<Vec<(usize, BigRational)>> {
        let mut w = u.to_vec();
        w.extend_from_slice(v);
        self.coordinates(norm, &w)
    }

    /// Coordinates of the image of an arbitrary word.
    pub fn coordinates(&self, norm: &mut groebner::Normalizer<'_>, w: &[u8]) -> Result<Vec<(usize, BigRational)>> {
        Ok(norm
            .normal_form_word(w)?
            .into_iter()
            .map(|(x, c)| (self.index[&x], c))
            .collect())
    }

    /// Columns of the matrix of `g` on the degree-`n` basis.
    pub fn action_matrix(&self, g: &Perm, mode: ActionMode, n: usize) -> Result<Vec<Vec<(usize, BigRational)>>> {
        let mut norm = self.system.normalizer();
        let s = BigRational::from_integer(BigInt::from(mode.twist(g, n)));
        self.basis(n)
            .iter()
            .map(|w| {
                let image = act_on_word(&self.alphabet, g, w);
                Ok(self
                    .coordinates(&mut norm, &image)?
                    .into_iter()
                    .map(|(i, c)| (i, c * &s))
                    .collect())
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_formulas() {
        assert_eq!(expected_hilbert(3).unwrap(), vec![1, 3, 4, 3, 1]);
        let h4 = expected_hilbert(4).unwrap();
        assert_eq!(h4.len(), 13);
        assert_eq!(h4.iter().sum::<u64>(), 576);
        assert_eq!(expected_hilbert(5).unwrap().iter().sum::<u64>(), 8_294_400);
    }
}
