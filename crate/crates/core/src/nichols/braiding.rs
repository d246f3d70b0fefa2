//! The braiding `c(e_g ⊗ e_h) = −e_h ⊗ e_{h⁻¹gh}` and the braided shuffle product.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::tensor::{Alphabet, TensorElem, Word};

/// Applies `c` at positions `(i, i+1)` of a word in place; the sign is always `−1`.
pub fn braid_word_at(alpha: &Alphabet, w: &mut [u8], i: usize) {
    let (g, h) = (w[i], w[i + 1]);
    w[i] = h;
    w[i + 1] = alpha.conj(g, h);
}

/// `c` acting on positions `(i, i+1)` of a tensor.
pub fn braid_at(alpha: &Alphabet, x: &TensorElem, i: usize) -> TensorElem {
    let minus = BigRational::from_integer(BigInt::from(-1));
    x.map_words(|w| {
        let mut v = w.clone();
        braid_word_at(alpha, &mut v, i);
        vec![(v, minus.clone())]
    })
}

/// `c` on `V ⊗ V` as a map of basis words.
pub fn braiding_eps(alpha: &Alphabet, g: u8, h: u8) -> (Word, i64) {
    let mut w = vec![g, h];
    braid_word_at(alpha, &mut w, 0);
    (w, -1)
}

/// Braid equation `(c⊗1)(1⊗c)(c⊗1) = (1⊗c)(c⊗1)(1⊗c)` on every basis word of `V^{⊗3}`.
pub fn braid_equation_holds(alpha: &Alphabet) -> bool {
    let m = alpha.size() as u8;
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                let mut l = vec![a, b, c];
                let mut r = l.clone();
                for &i in &[0, 1, 0] {
                    braid_word_at(alpha, &mut l, i);
                }
                for &i in &[1, 0, 1] {
                    braid_word_at(alpha, &mut r, i);
                }
                if l != r {
                    return false;
                }
            }
        }
    }
    true
}

/// Calls `f` with each `(m, n)`-shuffle, given as the sorted target positions of the
/// letters of the right factor.
fn for_each_shuffle(m: usize, n: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, m: usize, n: usize, acc: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if acc.len() == n {
            f(acc);
            return;
        }
        let left = n - acc.len();
        for p in start..=m + n - left {
            acc.push(p);
            rec(p + 1, m, n, acc, f);
            acc.pop();
        }
    }
    rec(0, m, n, &mut Vec::with_capacity(n), f);
}

/// How the shuffle permutation is written as a product of adjacent braidings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReducedWord {
    /// Right-factor letters move left one at a time, first letter first.
    PullLeft,
    /// Left-factor letters move right one at a time, last letter first.
    PushRight,
}

/// `R_w` applied to the concatenated word `u v` for the shuffle `targets`; returns the word
/// and the sign `(−1)^{ℓ(w)}`.
fn apply_shuffle(alpha: &Alphabet, u: &[u8], v: &[u8], targets: &[usize], how: ReducedWord) -> (Word, i64) {
    let (m, n) = (u.len(), v.len());
    let mut w: Word = u.iter().chain(v).copied().collect();
    let mut swaps = 0usize;
    match how {
        ReducedWord::PullLeft => {
            for (j, &t) in targets.iter().enumerate() {
                for i in (t..m + j).rev() {
                    braid_word_at(alpha, &mut w, i);
                    swaps += 1;
                }
            }
        }
        ReducedWord::PushRight => {
            // final positions of the left-factor letters
            let mut left_targets = Vec::with_capacity(m);
            let mut it = targets.iter().peekable();
            for p in 0..m + n {
                if it.peek() == Some(&&p) {
                    it.next();
                } else {
                    left_targets.push(p);
                }
            }
            for (k, &t) in left_targets.iter().enumerate().rev() {
                for i in k..t {
                    braid_word_at(alpha, &mut w, i);
                    swaps += 1;
                }
            }
        }
    }
    (w, if swaps % 2 == 0 { 1 } else { -1 })
}

/// `x ⋆ y = Σ_w R_w(x ⊗ y)` over all shuffles.
pub fn shuffle_product_with(alpha: &Alphabet, x: &TensorElem, y: &TensorElem, how: ReducedWord) -> TensorElem {
    let mut out = TensorElem::zero();
    for (u, a) in x.terms() {
        for (v, b) in y.terms() {
            let ab = a * b;
            for_each_shuffle(u.len(), v.len(), &mut |targets| {
                let (w, s) = apply_shuffle(alpha, u, v, targets, how);
                out.add_term(w, &ab * BigRational::from_integer(BigInt::from(s)));
            });
        }
    }
    out
}

pub fn shuffle_product(alpha: &Alphabet, x: &TensorElem, y: &TensorElem) -> TensorElem {
    shuffle_product_with(alpha, x, y, ReducedWord::PullLeft)
}

/// Shuffle product of basis words, with small integer coefficients.
pub fn shuffle_words(alpha: &Alphabet, u: &[u8], v: &[u8]) -> Vec<(Word, i64)> {
    let mut out = Vec::new();
    for_each_shuffle(u.len(), v.len(), &mut |targets| {
        out.push(apply_shuffle(alpha, u, v, targets, ReducedWord::PullLeft));
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shuffle_counts() {
        let mut count = 0;
        for_each_shuffle(2, 3, &mut |_| count += 1);
        assert_eq!(count, 10);
        let mut count = 0;
        for_each_shuffle(0, 2, &mut |t| {
            assert_eq!(t, &[0, 1]);
            count += 1
        });
        assert_eq!(count, 1);
    }
}
