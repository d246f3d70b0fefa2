//! Binary cubic forms, pairs of ternary quadratic forms, and their discriminants.

use super::resolvent_table::{CUBIC_A, CUBIC_B, CUBIC_C, CUBIC_D};
use super::ring::Ring;

/// `a x³ + b x²y + c xy² + d y³`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BinaryCubic<E> {
    pub a: E,
    pub b: E,
    pub c: E,
    pub d: E,
}

impl<E: Copy> BinaryCubic<E> {
    pub fn new(a: E, b: E, c: E, d: E) -> Self {
        Self { a, b, c, d }
    }

    pub fn coeffs(&self) -> [E; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn from_coeffs(c: [E; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }
}

/// Two ternary quadratic forms `Σ_{i≤j} a_ij x_i x_j` and `Σ_{i≤j} b_ij x_i x_j`,
/// stored in the order `[a00, a11, a22, a01, a02, a12, b00, b11, b22, b01, b02, b12]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TernaryQuadPair<E> {
    pub coords: [E; 12],
}

/// Position of `x_i x_j` within one form's six coordinates.
pub fn quad_index(i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    match (i, j) {
        (0, 0) => 0,
        (1, 1) => 1,
        (2, 2) => 2,
        (0, 1) => 3,
        (0, 2) => 4,
        (1, 2) => 5,
        _ => panic!("ternary form index out of range"),
    }
}

impl<E: Copy> TernaryQuadPair<E> {
    pub fn new(coords: [E; 12]) -> Self {
        Self { coords }
    }

    pub fn from_forms(a: [E; 6], b: [E; 6]) -> Self {
        let mut coords = [a[0]; 12];
        coords[..6].copy_from_slice(&a);
        coords[6..].copy_from_slice(&b);
        Self { coords }
    }

    pub fn form_a(&self) -> [E; 6] {
        self.coords[..6].try_into().expect("six coordinates")
    }

    pub fn form_b(&self) -> [E; 6] {
        self.coords[6..].try_into().expect("six coordinates")
    }
}

/// `b²c² − 4ac³ − 4b³d − 27a²d² + 18abcd`.
pub fn disc3<R: Ring>(r: &R, f: &BinaryCubic<R::Elem>) -> R::Elem {
    let BinaryCubic { a, b, c, d } = *f;
    let bc = r.mul(b, c);
    let ad = r.mul(a, d);
    let mut acc = r.mul(bc, bc);
    acc = r.sub(acc, r.scale(4, r.mul(a, r.pow(c, 3))));
    acc = r.sub(acc, r.scale(4, r.mul(r.pow(b, 3), d)));
    acc = r.sub(acc, r.scale(27, r.mul(ad, ad)));
    r.add(acc, r.scale(18, r.mul(ad, bc)))
}

fn eval_cubic_table<R: Ring>(r: &R, table: &[(i64, usize, usize, usize)], v: &[R::Elem; 12]) -> R::Elem {
    table.iter().fold(r.zero(), |acc, &(c, i, j, k)| {
        r.add(acc, r.scale(c, r.mul(r.mul(v[i], v[j]), v[k])))
    })
}

/// The binary cubic `4·det(A x − B y)`, evaluated from integer formulas so that the
/// halves in the symmetric matrices never appear.
pub fn resolvent_cubic<R: Ring>(r: &R, v: &TernaryQuadPair<R::Elem>) -> BinaryCubic<R::Elem> {
    BinaryCubic::new(
        eval_cubic_table(r, &CUBIC_A, &v.coords),
        eval_cubic_table(r, &CUBIC_B, &v.coords),
        eval_cubic_table(r, &CUBIC_C, &v.coords),
        eval_cubic_table(r, &CUBIC_D, &v.coords),
    )
}

/// `Δ_4(A, B) = Δ_3(4·det(A x − B y))`.
pub fn disc4<R: Ring>(r: &R, v: &TernaryQuadPair<R::Elem>) -> R::Elem {
    disc3(r, &resolvent_cubic(r, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prehomog::ring::Fp;

    /// `4·det(A x − B y)` from the symmetric matrices directly, with `1/2 = (p+1)/2`.
    fn cubic_by_matrices(r: &Fp, v: &TernaryQuadPair<u32>) -> BinaryCubic<u32> {
        let half = r.inv(2).unwrap();
        let sym = |f: [u32; 6]| {
            let mut m = [[0u32; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    let c = f[quad_index(i, j)];
                    m[i][j] = if i == j { c } else { r.mul(c, half) };
                }
            }
            m
        };
        let (a, b) = (sym(v.form_a()), sym(v.form_b()));
        let det3 = |m: [[u32; 3]; 3]| {
            let t = |i: usize, j: usize, k: usize| r.mul(m[0][i], r.mul(m[1][j], m[2][k]));
            let pos = r.add(r.add(t(0, 1, 2), t(1, 2, 0)), t(2, 0, 1));
            let neg = r.add(r.add(t(2, 1, 0), t(0, 2, 1)), t(1, 0, 2));
            r.sub(pos, neg)
        };
        let at = |x: u32, y: u32| {
            let mut m = [[0u32; 3]; 3];
            for i in 0..3 {
                for j in 0..3 {
                    m[i][j] = r.sub(r.mul(a[i][j], x), r.mul(b[i][j], y));
                }
            }
            r.scale(4, det3(m))
        };
        // coefficients from values at (1,0), (0,1), (1,1), (1,-1)
        let ca = at(1, 0);
        let cd = at(0, 1);
        let s1 = r.sub(r.sub(at(1, 1), ca), cd); // b + c
        let s2 = r.add(r.sub(at(1, r.neg(1)), ca), cd); // c - b
        let c = r.mul(r.add(s1, s2), half);
        let b = r.sub(s1, c);
        BinaryCubic::new(ca, b, c, cd)
    }

    #[test]
    fn table_matches_matrix_determinant() {
        let r = Fp::new(11).unwrap();
        let mut state = 12345u64;
        for _ in 0..200 {
            let mut coords = [0u32; 12];
            for c in coords.iter_mut() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                *c = ((state >> 33) % 11) as u32;
            }
            let v = TernaryQuadPair::new(coords);
            assert_eq!(resolvent_cubic(&r, &v), cubic_by_matrices(&r, &v));
        }
    }
}
