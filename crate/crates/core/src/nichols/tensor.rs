//! The braided vector space `kτ_d` and elements of its tensor powers.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::perm::{transpositions, Perm};

/// A word over the transposition alphabet: letter `k` is the `k`-th transposition in
/// lexicographic order.
pub type Word = Vec<u8>;

/// Degree-lexicographic comparison.
pub fn deglex(a: &[u8], b: &[u8]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// The transpositions of `S_d` with their conjugation table.
#[derive(Clone, Debug)]
pub struct Alphabet {
    pub d: usize,
    pub letters: Vec<Perm>,
    /// `conj[g][h]` is the letter `h⁻¹ g h`.
    conj: Vec<Vec<u8>>,
}

impl Alphabet {
    pub fn new(d: usize) -> Result<Self> {
        if !(3..=5).contains(&d) {
            return Err(Error::UnsupportedDegree(d as u32));
        }
        let letters = transpositions(d);
        let find = |p: &Perm| letters.iter().position(|l| l == p).expect("closed under conjugation") as u8;
        let conj = letters
            .iter()
            .map(|g| letters.iter().map(|h| find(&h.inverse().conjugate(g))).collect())
            .collect();
        Ok(Self { d, letters, conj })
    }

    pub fn size(&self) -> usize {
        self.letters.len()
    }

    /// `h⁻¹ g h`.
    pub fn conj(&self, g: u8, h: u8) -> u8 {
        self.conj[g as usize][h as usize]
    }

    /// Letter of the transposition `(i j)`, 1-based.
    pub fn letter(&self, i: usize, j: usize) -> Result<u8> {
        let p = Perm::transposition(self.d, i, j)?;
        Ok(self.letters.iter().position(|l| *l == p).expect("transposition present") as u8)
    }

    /// Letter of `g t g⁻¹`.
    pub fn conjugate_letter(&self, g: &Perm, t: u8) -> u8 {
        let p = g.conjugate(&self.letters[t as usize]);
        self.letters.iter().position(|l| *l == p).expect("closed under conjugation") as u8
    }

    pub fn render(&self, w: &[u8]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&x| {
                let (i, j) = self.letters[x as usize].as_transposition().expect("transposition");
                format!("({i}{j})")
            })
            .collect()
    }
}

/// A homogeneous element of `V^{⊗n}`: words of one length with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct TensorElem {
    terms: BTreeMap<Word, BigRational>,
}

impl TensorElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(c: BigRational) -> Self {
        Self::monomial(Vec::new(), c)
    }

    pub fn word(w: Word) -> Self {
        Self::monomial(w, BigRational::one())
    }

    pub fn monomial(w: Word, c: BigRational) -> Self {
        let mut t = Self::zero();
        t.add_term(w, c);
        t
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, i64)>) -> Self {
        let mut t = Self::zero();
        for (w, c) in terms {
            t.add_term(w, BigRational::from_integer(BigInt::from(c)));
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|w| w.len())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, w: &[u8]) -> BigRational {
        self.terms.get(w).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, w: Word, c: BigRational) {
        if c.is_zero() {
            return;
        }
        debug_assert!(self.degree().is_none_or(|n| n == w.len()), "inhomogeneous tensor");
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    /// Concatenation product in the tensor algebra.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, a * b);
            }
        }
        out
    }

    /// The largest word in degree-lexicographic order.
    pub fn leading(&self) -> Option<(&Word, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Applies a linear map given on basis words.
    pub fn map_words<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&Word) -> Vec<(Word, BigRational)>,
    {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            for (v, x) in f(w) {
                out.add_term(v, c * x);
            }
        }
        out
    }

    pub fn render(&self, alpha: &Alphabet) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(w, c)| format!("{}·{}", crate::qseries::laurent::rational_to_string(c), alpha.render(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(w, c)| (w, c.to_string()))).finish()
    }
}
