//! The groups `G_3 = GL_2` and `G_4 = {(g_3, g_2) : det g_3 = det g_2}` and their actions.

use super::forms::{quad_index, BinaryCubic, TernaryQuadPair};
use super::ring::Ring;
use crate::error::{Error, Result};

pub type Mat2<E> = [[E; 2]; 2];
pub type Mat3<E> = [[E; 3]; 3];

pub fn det2<R: Ring>(r: &R, m: &Mat2<R::Elem>) -> R::Elem {
    r.sub(r.mul(m[0][0], m[1][1]), r.mul(m[0][1], m[1][0]))
}

pub fn det3<R: Ring>(r: &R, m: &Mat3<R::Elem>) -> R::Elem {
    let t = |i: usize, j: usize, k: usize| r.mul(m[0][i], r.mul(m[1][j], m[2][k]));
    let pos = r.add(r.add(t(0, 1, 2), t(1, 2, 0)), t(2, 0, 1));
    let neg = r.add(r.add(t(2, 1, 0), t(0, 2, 1)), t(1, 0, 2));
    r.sub(pos, neg)
}

fn matmul<R: Ring, const N: usize>(r: &R, a: &[[R::Elem; N]; N], b: &[[R::Elem; N]; N]) -> [[R::Elem; N]; N] {
    let mut out = [[r.zero(); N]; N];
    for i in 0..N {
        for j in 0..N {
            out[i][j] = (0..N).fold(r.zero(), |acc, k| r.add(acc, r.mul(a[i][k], b[k][j])));
        }
    }
    out
}

/// An invertible 2×2 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupElem3<E> {
    pub g: Mat2<E>,
}

impl<E: Copy> GroupElem3<E> {
    pub fn new<R: Ring<Elem = E>>(r: &R, g: Mat2<E>) -> Result<Self> {
        if !r.is_unit(det2(r, &g)) {
            return Err(Error::NotAUnit);
        }
        Ok(Self { g })
    }

    pub fn identity<R: Ring<Elem = E>>(r: &R) -> Self {
        Self {
            g: [[r.one(), r.zero()], [r.zero(), r.one()]],
        }
    }

    pub fn det<R: Ring<Elem = E>>(&self, r: &R) -> E {
        det2(r, &self.g)
    }

    pub fn compose<R: Ring<Elem = E>>(&self, r: &R, other: &Self) -> Self {
        Self {
            g: matmul(r, &self.g, &other.g),
        }
    }

    pub fn random<R: Ring<Elem = E>, G: rand::Rng + ?Sized>(r: &R, rng: &mut G) -> Self {
        loop {
            let g = [[r.sample(rng), r.sample(rng)], [r.sample(rng), r.sample(rng)]];
            if let Ok(e) = Self::new(r, g) {
                return e;
            }
        }
    }
}

/// A pair `(g_3, g_2)` with `det g_3 = det g_2` a unit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupElem4<E> {
    pub g3: Mat3<E>,
    pub g2: Mat2<E>,
}

impl<E: Copy> GroupElem4<E> {
    pub fn new<R: Ring<Elem = E>>(r: &R, g3: Mat3<E>, g2: Mat2<E>) -> Result<Self> {
        let d3 = det3(r, &g3);
        if !r.is_unit(d3) {
            return Err(Error::NotAUnit);
        }
        if !r.is_zero(r.sub(d3, det2(r, &g2))) {
            return Err(Error::DeterminantConstraint);
        }
        Ok(Self { g3, g2 })
    }

    pub fn identity<R: Ring<Elem = E>>(r: &R) -> Self {
        let (o, z) = (r.one(), r.zero());
        Self {
            g3: [[o, z, z], [z, o, z], [z, z, o]],
            g2: [[o, z], [z, o]],
        }
    }

    /// `χ_4(g) = det g_3`.
    pub fn det<R: Ring<Elem = E>>(&self, r: &R) -> E {
        det3(r, &self.g3)
    }

    pub fn compose<R: Ring<Elem = E>>(&self, r: &R, other: &Self) -> Self {
        Self {
            g3: matmul(r, &self.g3, &other.g3),
            g2: matmul(r, &self.g2, &other.g2),
        }
    }

    /// Random `g_3`; `g_2` random with its first row rescaled to match the determinant.
    pub fn random<R: Ring<Elem = E>, G: rand::Rng + ?Sized>(r: &R, rng: &mut G) -> Self {
        loop {
            let mut g3 = [[r.zero(); 3]; 3];
            for row in g3.iter_mut() {
                for c in row.iter_mut() {
                    *c = r.sample(rng);
                }
            }
            let d3 = det3(r, &g3);
            if !r.is_unit(d3) {
                continue;
            }
            let h = GroupElem3::random(r, rng).g;
            let fix = r.mul(d3, r.inv(det2(r, &h)).expect("unit determinant"));
            let g2 = [[r.mul(fix, h[0][0]), r.mul(fix, h[0][1])], h[1]];
            if rng.gen_bool(0.5) {
                // also exercise elements that swap the two forms
                let swapped = [g2[1], g2[0]];
                let neg = [[r.neg(swapped[0][0]), r.neg(swapped[0][1])], swapped[1]];
                return Self::new(r, g3, neg).expect("determinant matched");
            }
            return Self::new(r, g3, g2).expect("determinant matched");
        }
    }
}

/// Multiplies the linear forms `l_1 ⋯ l_k` in `(x, y)`, each given as `[x-coeff, y-coeff]`,
/// returning coefficients of `x^k, x^{k−1}y, …, y^k`.
fn product_of_linear<R: Ring>(r: &R, forms: &[[R::Elem; 2]]) -> Vec<R::Elem> {
    let mut acc = vec![r.one()];
    for l in forms {
        let mut next = vec![r.zero(); acc.len() + 1];
        for (i, &c) in acc.iter().enumerate() {
            next[i] = r.add(next[i], r.mul(c, l[0]));
            next[i + 1] = r.add(next[i + 1], r.mul(c, l[1]));
        }
        acc = next;
    }
    acc
}

/// `(g·f)(x, y) = det(g)⁻¹ · f((x, y)·g)`.
pub fn act3<R: Ring>(r: &R, g: &GroupElem3<R::Elem>, f: &BinaryCubic<R::Elem>) -> BinaryCubic<R::Elem> {
    // (x, y)·g = (g00 x + g10 y, g01 x + g11 y)
    let big_x = [g.g[0][0], g.g[1][0]];
    let big_y = [g.g[0][1], g.g[1][1]];
    let inv_det = r.inv(g.det(r)).expect("group elements have unit determinant");
    let mut out = [r.zero(); 4];
    let terms = [
        (f.a, [big_x, big_x, big_x]),
        (f.b, [big_x, big_x, big_y]),
        (f.c, [big_x, big_y, big_y]),
        (f.d, [big_y, big_y, big_y]),
    ];
    for (c, lin) in terms {
        for (slot, v) in out.iter_mut().zip(product_of_linear(r, &lin)) {
            *slot = r.add(*slot, r.mul(c, v));
        }
    }
    BinaryCubic::from_coeffs(out.map(|v| r.mul(inv_det, v)))
}

/// `F ↦ F(g_3ᵀ x)` on the coefficient vector of a ternary quadratic form.
fn substitute_form<R: Ring>(r: &R, g3: &Mat3<R::Elem>, f: &[R::Elem; 6]) -> [R::Elem; 6] {
    let mut out = [r.zero(); 6];
    // y_i = Σ_k g3[k][i] x_k
    for i in 0..3 {
        for j in i..3 {
            let c = f[quad_index(i, j)];
            if r.is_zero(c) {
                continue;
            }
            for k in 0..3 {
                for l in 0..3 {
                    let term = r.mul(c, r.mul(g3[k][i], g3[l][j]));
                    let slot = quad_index(k, l);
                    out[slot] = r.add(out[slot], term);
                }
            }
        }
    }
    out
}

/// `g_3` acts on both forms by substitution; the pair is mixed by `g_2^{−T}`.
pub fn act4<R: Ring>(r: &R, g: &GroupElem4<R::Elem>, v: &TernaryQuadPair<R::Elem>) -> TernaryQuadPair<R::Elem> {
    let a = substitute_form(r, &g.g3, &v.form_a());
    let b = substitute_form(r, &g.g3, &v.form_b());
    let inv_det = r.inv(det2(r, &g.g2)).expect("group elements have unit determinant");
    // g_2^{-T} = det⁻¹ [[g11, −g10], [−g01, g00]]
    let m = [
        [r.mul(inv_det, g.g2[1][1]), r.neg(r.mul(inv_det, g.g2[1][0]))],
        [r.neg(r.mul(inv_det, g.g2[0][1])), r.mul(inv_det, g.g2[0][0])],
    ];
    let mix = |x: R::Elem, y: R::Elem, row: [R::Elem; 2]| r.add(r.mul(row[0], x), r.mul(row[1], y));
    let mut na = [r.zero(); 6];
    let mut nb = [r.zero(); 6];
    for i in 0..6 {
        na[i] = mix(a[i], b[i], m[0]);
        nb[i] = mix(a[i], b[i], m[1]);
    }
    TernaryQuadPair::from_forms(na, nb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prehomog::ring::Fp;

    #[test]
    fn identity_acts_trivially() {
        let r = Fp::new(7).unwrap();
        let f = BinaryCubic::new(1, 2, 3, 4);
        assert_eq!(act3(&r, &GroupElem3::identity(&r), &f), f);
        let v = TernaryQuadPair::new([1, 2, 3, 4, 5, 6, 0, 1, 2, 3, 4, 5]);
        assert_eq!(act4(&r, &GroupElem4::identity(&r), &v), v);
    }

    #[test]
    fn determinant_constraint_enforced() {
        let r = Fp::new(5).unwrap();
        let g3 = [[2, 0, 0], [0, 1, 0], [0, 0, 1]];
        let bad = [[1, 0], [0, 1]];
        assert!(matches!(GroupElem4::new(&r, g3, bad), Err(Error::DeterminantConstraint)));
        assert!(GroupElem4::new(&r, g3, [[2, 0], [0, 1]]).is_ok());
        assert!(matches!(GroupElem3::new(&r, [[1, 2], [2, 4]]), Err(Error::NotAUnit)));
    }
}
