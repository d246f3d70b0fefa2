//! Normalized bar chains of a connected graded algebra given by structure constants.

use std::collections::HashMap;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::linalg::{collect_sparse, Field, SparseVec};
use crate::nichols::groebner::Normalizer;
use crate::nichols::{shuffle_product, Alphabet, NicholsAlgebra, TensorElem};

/// Structure constants of a connected graded algebra up to some internal degree.
#[derive(Clone, Debug)]
pub struct GradedProducts {
    /// `dims[k]` for `k = 0..=top`.
    pub dims: Vec<usize>,
    /// `products[k1][k2][i1 · dims[k2] + i2]`; empty when `k1 + k2` is out of range.
    products: Vec<Vec<Vec<Vec<(usize, BigRational)>>>>,
}

impl GradedProducts {
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn product(&self, k1: usize, i1: usize, k2: usize, i2: usize) -> &[(usize, BigRational)] {
        self.products
            .get(k1)
            .and_then(|row| row.get(k2))
            .and_then(|cell| cell.get(i1 * self.dims[k2] + i2))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    /// Products of normal words of `B_d` in positive degrees with total degree `≤ b_max`.
    pub fn from_nichols(alg: &NicholsAlgebra, b_max: usize) -> Result<Self> {
        let top = alg.top_degree().min(b_max);
        let dims: Vec<usize> = (0..=top).map(|k| alg.basis(k).len()).collect();
        let mut norm: Normalizer<'_> = alg.system.normalizer();
        let mut products = vec![vec![Vec::new(); top + 1]; top + 1];
        for k1 in 1..=top {
            for k2 in 1..=top - k1 {
                let mut cell = Vec::with_capacity(dims[k1] * dims[k2]);
                for u in alg.basis(k1) {
                    for v in alg.basis(k2) {
                        cell.push(alg.multiply_words(&mut norm, u, v)?);
                    }
                }
                products[k1][k2] = cell;
            }
        }
        Ok(Self { dims, products })
    }

    /// The quantum shuffle algebra `T_*(V)` truncated above degree `n_max`, on the word basis.
    pub fn shuffle_algebra(alpha: &Alphabet, n_max: usize) -> Result<Self> {
        let m = alpha.size();
        let dims: Vec<usize> = (0..=n_max).map(|k| m.pow(k as u32)).collect();
        let word = |k: usize, mut i: usize| {
            let mut w = vec![0u8; k];
            for slot in w.iter_mut().rev() {
                *slot = (i % m) as u8;
                i /= m;
            }
            w
        };
        let code = |w: &[u8]| w.iter().fold(0usize, |acc, &x| acc * m + x as usize);
        let mut products = vec![vec![Vec::new(); n_max + 1]; n_max + 1];
        for k1 in 1..=n_max {
            for k2 in 1..=n_max - k1 {
                let mut cell = Vec::with_capacity(dims[k1] * dims[k2]);
                for i1 in 0..dims[k1] {
                    for i2 in 0..dims[k2] {
                        let p = shuffle_product(alpha, &TensorElem::word(word(k1, i1)), &TensorElem::word(word(k2, i2)));
                        cell.push(p.terms().map(|(w, c)| (code(w), c.clone())).collect());
                    }
                }
                products[k1][k2] = cell;
            }
        }
        Ok(Self { dims, products })
    }

    /// The structure constants reduced into `f`.
    pub fn over<F: Field>(&self, f: &F) -> Result<FieldProducts<F>> {
        let products = self
            .products
            .iter()
            .map(|row| {
                row.iter()
                    .map(|cell| cell.iter().map(|v| convert(f, v)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FieldProducts {
            field: f.clone(),
            dims: self.dims.clone(),
            products,
        })
    }
}

pub(crate) fn convert<F: Field>(f: &F, v: &[(usize, BigRational)]) -> Result<SparseVec<F::E>> {
    let mut out = Vec::with_capacity(v.len());
    for (i, c) in v {
        let x = f
            .from_rational(c)
            .ok_or_else(|| Error::Precondition(format!("coefficient {c} not defined over {}", f.label())))?;
        out.push((*i, x));
    }
    Ok(collect_sparse(f, out))
}

#[derive(Clone, Debug)]
pub struct FieldProducts<F: Field> {
    pub field: F,
    pub dims: Vec<usize>,
    products: Vec<Vec<Vec<SparseVec<F::E>>>>,
}

impl<F: Field> FieldProducts<F> {
    fn product(&self, k1: usize, i1: usize, k2: usize, i2: usize) -> &[(usize, F::E)] {
        self.products
            .get(k1)
            .and_then(|row| row.get(k2))
            .and_then(|cell| cell.get(i1 * self.dims[k2] + i2))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }
}

/// Basis of the chains `x_1 | ⋯ | x_a` with `deg x_i ≥ 1` summing to `b`, grouped by the
/// composition `(deg x_1, …, deg x_a)`; within a group the last entry varies fastest.
#[derive(Clone, Debug)]
pub struct ChainSpace {
    pub a: usize,
    pub b: usize,
    pub compositions: Vec<Vec<usize>>,
    offsets: Vec<usize>,
    lookup: HashMap<Vec<usize>, usize>,
    dims: Vec<usize>,
    pub dim: usize,
}

impl ChainSpace {
    pub fn new(dims: &[usize], a: usize, b: usize) -> Self {
        let mut compositions = Vec::new();
        if a == 0 {
            if b == 0 {
                compositions.push(Vec::new());
            }
        } else {
            let mut cur = Vec::with_capacity(a);
            compositions_rec(dims, a, b, &mut cur, &mut compositions);
        }
        let mut offsets = Vec::with_capacity(compositions.len());
        let mut dim = 0usize;
        for c in &compositions {
            offsets.push(dim);
            dim += c.iter().map(|&k| dims[k]).product::<usize>();
        }
        let lookup = compositions.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        Self {
            a,
            b,
            compositions,
            offsets,
            lookup,
            dims: dims.to_vec(),
            dim,
        }
    }

    pub fn index(&self, comp: &[usize], idxs: &[usize]) -> usize {
        let c = self.lookup[comp];
        let within = comp.iter().zip(idxs).fold(0usize, |acc, (&k, &i)| acc * self.dims[k] + i);
        self.offsets[c] + within
    }

    pub fn composition_id(&self, comp: &[usize]) -> usize {
        self.lookup[comp]
    }

    /// `(composition, entry indices)` of a basis chain.
    pub fn chain(&self, idx: usize) -> (&[usize], Vec<usize>) {
        let c = self.offsets.partition_point(|&o| o <= idx) - 1;
        let comp = &self.compositions[c];
        let mut rest = idx - self.offsets[c];
        let mut idxs = vec![0usize; comp.len()];
        for (slot, &k) in idxs.iter_mut().zip(comp).rev() {
            *slot = rest % self.dims[k];
            rest /= self.dims[k];
        }
        (comp, idxs)
    }
}

fn compositions_rec(dims: &[usize], a: usize, b: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let left = a - cur.len();
    if left == 0 {
        if b == 0 {
            out.push(cur.clone());
        }
        return;
    }
    // every remaining part needs degree ≥ 1
    for k in 1..=b.saturating_sub(left - 1) {
        if k >= dims.len() || dims[k] == 0 {
            break;
        }
        cur.push(k);
        compositions_rec(dims, a, b - k, cur, out);
        cur.pop();
    }
}

/// `d(x_1|⋯|x_a) = Σ_{i=1}^{a−1} (−1)^i (x_1|⋯|x_i x_{i+1}|⋯|x_a)` on one basis chain.
pub fn differential_of_chain<F: Field>(
    p: &FieldProducts<F>,
    dst: &ChainSpace,
    comp: &[usize],
    idxs: &[usize],
) -> SparseVec<F::E> {
    let f = &p.field;
    let mut entries = Vec::new();
    let mut merged_comp = Vec::with_capacity(comp.len());
    let mut merged_idx = Vec::with_capacity(comp.len());
    for i in 0..comp.len().saturating_sub(1) {
        let k = comp[i] + comp[i + 1];
        if k >= p.dims.len() {
            continue;
        }
        let sign = if i % 2 == 0 { f.neg(&f.one()) } else { f.one() };
        merged_comp.clear();
        merged_comp.extend_from_slice(&comp[..i]);
        merged_comp.push(k);
        merged_comp.extend_from_slice(&comp[i + 2..]);
        for (j, c) in p.product(comp[i], idxs[i], comp[i + 1], idxs[i + 1]) {
            merged_idx.clear();
            merged_idx.extend_from_slice(&idxs[..i]);
            merged_idx.push(*j);
            merged_idx.extend_from_slice(&idxs[i + 2..]);
            entries.push((dst.index(&merged_comp, &merged_idx), f.mul(&sign, c)));
        }
    }
    collect_sparse(f, entries)
}

/// The differential applied to an arbitrary chain vector.
pub fn differential_of_vector<F: Field>(
    p: &FieldProducts<F>,
    src: &ChainSpace,
    dst: &ChainSpace,
    v: &[(usize, F::E)],
) -> SparseVec<F::E> {
    let f = &p.field;
    let mut entries = Vec::new();
    for (i, c) in v {
        let (comp, idxs) = src.chain(*i);
        for (j, x) in differential_of_chain(p, dst, comp, &idxs) {
            entries.push((j, f.mul(c, &x)));
        }
    }
    collect_sparse(f, entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_indexing_roundtrip() {
        let dims = [1, 3, 4, 3, 1];
        let space = ChainSpace::new(&dims, 3, 5);
        assert_eq!(space.compositions.len(), 6);
        // (1,1,3),(1,3,1),(3,1,1): 27 each; (1,2,2),(2,1,2),(2,2,1): 48 each
        assert_eq!(space.dim, 3 * 27 + 3 * 48);
        for idx in [0, 17, 80, 200, space.dim - 1] {
            let (comp, idxs) = space.chain(idx);
            assert_eq!(space.index(comp, &idxs), idx);
        }
        assert_eq!(ChainSpace::new(&dims, 0, 0).dim, 1);
        assert_eq!(ChainSpace::new(&dims, 0, 2).dim, 0);
    }
}
