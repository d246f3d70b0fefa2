//! Permutations of `{1, …, d}` for small `d`, stored 0-based.

use std::fmt;

use crate::error::{Error, Result};

/// Largest `d` for which `S_d` is enumerated.
pub const MAX_DEGREE: usize = 8;

/// `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

impl Perm {
    pub fn identity(d: usize) -> Self {
        Self {
            images: (0..d as u8).collect(),
        }
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            let slot = seen
                .get_mut(i as usize)
                .ok_or_else(|| Error::Precondition(format!("{images:?} is not a permutation")))?;
            if *slot {
                return Err(Error::Precondition(format!("{images:?} is not a permutation")));
            }
            *slot = true;
        }
        Ok(Self { images })
    }

    /// The transposition `(i j)` with 1-based `i ≠ j`.
    pub fn transposition(d: usize, i: usize, j: usize) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > d || j > d {
            return Err(Error::Precondition(format!("({i} {j}) is not a transposition in S_{d}")));
        }
        let mut p = Self::identity(d);
        p.images.swap(i - 1, j - 1);
        Ok(p)
    }

    /// The cycle `(1 2 … d)`.
    pub fn long_cycle(d: usize) -> Self {
        Self {
            images: (0..d).map(|i| ((i + 1) % d) as u8).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm {
            images: other.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0u8; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u8;
        }
        Perm { images }
    }

    /// `self · t · self⁻¹`.
    pub fn conjugate(&self, t: &Perm) -> Perm {
        self.compose(t).compose(&self.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Cycle lengths in decreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.images.len()];
        let mut out = Vec::new();
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize;
                len += 1;
            }
            out.push(len);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn sign(&self) -> i64 {
        let even_cycles = self.cycle_type().iter().filter(|&&l| l % 2 == 0).count();
        if even_cycles % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// For a transposition, its 1-based pair `(i, j)` with `i < j`.
    pub fn as_transposition(&self) -> Option<(usize, usize)> {
        let moved: Vec<usize> = (0..self.images.len()).filter(|&i| self.images[i] as usize != i).collect();
        match moved.as_slice() {
            &[i, j] => Some((i + 1, j + 1)),
            _ => None,
        }
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Cycle notation, 1-based; the identity prints as `()`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.images.len()];
        let mut any = false;
        for start in 0..self.images.len() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{}", i + 1)?;
                first = false;
                i = self.images[i] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

pub fn check_degree(d: usize) -> Result<()> {
    if !(2..=MAX_DEGREE).contains(&d) {
        return Err(Error::UnsupportedDegree(d as u32));
    }
    Ok(())
}

/// The transpositions of `S_d`, sorted lexicographically by `(i, j)`.
pub fn transpositions(d: usize) -> Vec<Perm> {
    let mut out = Vec::with_capacity(d * (d - 1) / 2);
    for i in 1..=d {
        for j in i + 1..=d {
            out.push(Perm::transposition(d, i, j).expect("valid pair"));
        }
    }
    out
}

/// All of `S_d` in lexicographic order of image vectors.
pub fn all_perms(d: usize) -> Vec<Perm> {
    let mut cur: Vec<u8> = (0..d as u8).collect();
    let mut out = vec![Perm { images: cur.clone() }];
    // standard next-permutation
    loop {
        let Some(i) = (0..d.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..d).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(Perm { images: cur.clone() });
    }
}

/// Generators `(1 2)` and `(1 2 … d)` of `S_d`.
pub fn generators(d: usize) -> Vec<Perm> {
    vec![Perm::transposition(d, 1, 2).expect("d ≥ 2"), Perm::long_cycle(d)]
}

/// `"[2,1,1]"` style label of a cycle type.
pub fn cycle_type_label(p: &Perm) -> String {
    let parts: Vec<String> = p.cycle_type().iter().map(|l| l.to_string()).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugating_transpositions() {
        let t12 = Perm::transposition(3, 1, 2).unwrap();
        let t13 = Perm::transposition(3, 1, 3).unwrap();
        let t23 = Perm::transposition(3, 2, 3).unwrap();
        assert_eq!(t13.conjugate(&t12), t23);
        assert_eq!(t12.to_string(), "(1 2)");
        assert_eq!(t12.as_transposition(), Some((1, 2)));
    }

    #[test]
    fn group_sizes_and_signs() {
        let s4 = all_perms(4);
        assert_eq!(s4.len(), 24);
        assert_eq!(s4.iter().filter(|p| p.sign() == 1).count(), 12);
        assert_eq!(transpositions(4).len(), 6);
        assert_eq!(Perm::long_cycle(4).cycle_type(), vec![4]);
        assert_eq!(Perm::long_cycle(4).sign(), -1);
    }
}
