//! The Hurwitz action of the braid group on tuples from a conjugacy-closed subset of `S_d`.

use std::collections::{BTreeMap, HashMap};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rank_sparse, Field, Rationals};
use crate::perm::{all_perms, check_degree, cycle_type_label, generators, transpositions, Perm};

/// Default cap on the number of tuples enumerated.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKind {
    Transpositions,
    /// Every element of `S_d`.
    All,
}

impl FromStr for ClassKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "transpositions" => Ok(ClassKind::Transpositions),
            "all" => Ok(ClassKind::All),
            _ => Err(Error::Parse(format!("class must be transpositions or all, got {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonodromyTuple {
    pub entries: Vec<Perm>,
}

impl MonodromyTuple {
    pub fn new(entries: Vec<Perm>) -> Self {
        Self { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `g_1 g_2 ⋯ g_n`.
    pub fn ordered_product(&self, d: usize) -> Perm {
        self.entries.iter().fold(Perm::identity(d), |acc, g| acc.compose(g))
    }

    /// Simultaneous conjugation `g_j ↦ h g_j h⁻¹`.
    pub fn conjugate_by(&self, h: &Perm) -> Self {
        Self::new(self.entries.iter().map(|g| h.conjugate(g)).collect())
    }
}

fn check_index(i: usize, n: usize) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    Ok(())
}

/// `σ_i : (g_i, g_{i+1}) ↦ (g_{i+1}, g_{i+1}⁻¹ g_i g_{i+1})`, with `i` 1-based.
pub fn hurwitz_sigma(i: usize, t: &MonodromyTuple) -> Result<MonodromyTuple> {
    check_index(i, t.len())?;
    let mut e = t.entries.clone();
    let (a, b) = (e[i - 1].clone(), e[i].clone());
    e[i] = b.inverse().conjugate(&a);
    e[i - 1] = b;
    Ok(MonodromyTuple::new(e))
}

/// `σ_i⁻¹ : (x, y) ↦ (x y x⁻¹, x)`.
pub fn hurwitz_sigma_inv(i: usize, t: &MonodromyTuple) -> Result<MonodromyTuple> {
    check_index(i, t.len())?;
    let mut e = t.entries.clone();
    let (x, y) = (e[i - 1].clone(), e[i].clone());
    e[i - 1] = x.conjugate(&y);
    e[i] = x;
    Ok(MonodromyTuple::new(e))
}

/// A conjugacy-closed subset of `S_d` with its conjugation table.
#[derive(Clone, Debug)]
pub struct ClassAlphabet {
    pub d: usize,
    pub elems: Vec<Perm>,
    index: HashMap<Perm, u32>,
    /// `conj[a][b]` is the index of `b⁻¹ a b`.
    conj: Vec<Vec<u32>>,
}

impl ClassAlphabet {
    pub fn new(d: usize, kind: ClassKind) -> Result<Self> {
        check_degree(d)?;
        let elems = match kind {
            ClassKind::Transpositions => transpositions(d),
            ClassKind::All => all_perms(d),
        };
        let index: HashMap<Perm, u32> = elems.iter().cloned().enumerate().map(|(i, p)| (p, i as u32)).collect();
        let conj = elems
            .iter()
            .map(|a| elems.iter().map(|b| index[&b.inverse().conjugate(a)]).collect())
            .collect();
        Ok(Self { d, elems, index, conj })
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }

    fn encode(&self, digits: &[u32]) -> u64 {
        digits.iter().rev().fold(0u64, |acc, &x| acc * self.size() as u64 + x as u64)
    }

    fn decode(&self, mut code: u64, n: usize, out: &mut [u32]) {
        let m = self.size() as u64;
        for slot in out.iter_mut().take(n) {
            *slot = (code % m) as u32;
            code /= m;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    #[serde(rename = "orbits")]
    pub orbit_count: usize,
    /// Orbit size ↦ number of orbits of that size.
    #[serde(rename = "sizes")]
    pub orbit_sizes: BTreeMap<usize, usize>,
    /// Cycle type of the ordered product ↦ number of orbits.
    #[serde(rename = "by_product_class")]
    pub with_product_classes: BTreeMap<String, usize>,
}

impl OrbitReport {
    /// Orbit sizes as a sorted list.
    pub fn size_list(&self) -> Vec<usize> {
        self.orbit_sizes
            .iter()
            .flat_map(|(&s, &c)| std::iter::repeat(s).take(c))
            .collect()
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so the result does not depend on traversal order
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

fn orbits(d: usize, n: usize, kind: ClassKind, budget: u64, unmarked: bool) -> Result<OrbitReport> {
    let alpha = ClassAlphabet::new(d, kind)?;
    let total = (alpha.size() as u128).pow(n as u32);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "braid orbit enumeration",
            needed: total,
            budget: budget as u128,
            hint: "raise --budget braid=N",
        });
    }
    let total = total as usize;
    let conj_tables: Vec<Vec<u32>> = if unmarked {
        generators(d)
            .iter()
            .map(|g| alpha.elems.iter().map(|e| alpha.index[&g.conjugate(e)]).collect())
            .collect()
    } else {
        Vec::new()
    };

    let mut uf = UnionFind::new(total);
    let mut digits = vec![0u32; n];
    let mut moved = vec![0u32; n];
    for code in 0..total as u64 {
        alpha.decode(code, n, &mut digits);
        for i in 0..n.saturating_sub(1) {
            moved.copy_from_slice(&digits);
            let (a, b) = (digits[i], digits[i + 1]);
            moved[i] = b;
            moved[i + 1] = alpha.conj[a as usize][b as usize];
            uf.union(code as u32, alpha.encode(&moved) as u32);
        }
        for table in &conj_tables {
            for (slot, &x) in moved.iter_mut().zip(&digits) {
                *slot = table[x as usize];
            }
            uf.union(code as u32, alpha.encode(&moved) as u32);
        }
    }

    let mut size_of_root: BTreeMap<u32, (usize, String)> = BTreeMap::new();
    for code in 0..total as u64 {
        let root = uf.find(code as u32);
        let entry = size_of_root.entry(root).or_insert_with(|| {
            alpha.decode(code, n, &mut digits);
            let t = MonodromyTuple::new(digits.iter().map(|&x| alpha.elems[x as usize].clone()).collect());
            (0, cycle_type_label(&t.ordered_product(d)))
        });
        entry.0 += 1;
    }
    let mut orbit_sizes = BTreeMap::new();
    let mut with_product_classes = BTreeMap::new();
    for (size, class) in size_of_root.into_values() {
        *orbit_sizes.entry(size).or_insert(0) += 1;
        *with_product_classes.entry(class).or_insert(0) += 1;
    }
    Ok(OrbitReport {
        orbit_count: orbit_sizes.values().sum(),
        orbit_sizes,
        with_product_classes,
    })
}

/// Orbits of `B_n` on `c^{×n}`.
pub fn braid_orbits(d: usize, n: usize, kind: ClassKind, budget: u64) -> Result<OrbitReport> {
    orbits(d, n, kind, budget, false)
}

/// Orbits of `B_n × S_d` (braid moves and simultaneous conjugation).
pub fn unmarked_orbits(d: usize, n: usize, kind: ClassKind, budget: u64) -> Result<OrbitReport> {
    orbits(d, n, kind, budget, true)
}

/// `dim` of the coinvariants of `B_n` on the span of `c^{×n}` over `Q`, by linear algebra on the
/// vectors `t − σ_i(t)`. Agrees with the orbit count for a permutation representation.
pub fn coinvariants_dim(d: usize, n: usize, kind: ClassKind, budget: u64) -> Result<usize> {
    let alpha = ClassAlphabet::new(d, kind)?;
    let total = (alpha.size() as u128).pow(n as u32);
    if total > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "braid coinvariants",
            needed: total,
            budget: budget as u128,
            hint: "raise --budget braid=N",
        });
    }
    let f = Rationals;
    let mut digits = vec![0u32; n];
    let mut moved = vec![0u32; n];
    let mut rows = Vec::new();
    for code in 0..total as u64 {
        alpha.decode(code, n, &mut digits);
        for i in 0..n.saturating_sub(1) {
            moved.copy_from_slice(&digits);
            moved[i] = digits[i + 1];
            moved[i + 1] = alpha.conj[digits[i] as usize][digits[i + 1] as usize];
            let target = alpha.encode(&moved);
            if target != code {
                let (lo, hi) = (code.min(target) as usize, code.max(target) as usize);
                rows.push(vec![(lo, f.one()), (hi, f.neg(&f.one()))]);
            }
        }
    }
    Ok(total as usize - rank_sparse(&f, rows))
}

/// Checks `g·σ_i(t) = σ_i(g·t)` on seeded random `(g, i, t)` for the given `S_d`-action.
pub fn commuting_actions_check_with<F>(d: usize, n: usize, trials: usize, seed: u64, action: F) -> Result<bool>
where
    F: Fn(&Perm, &MonodromyTuple) -> MonodromyTuple,
{
    check_degree(d)?;
    if n < 2 {
        return Ok(true);
    }
    let group = all_perms(d);
    let alphabet = transpositions(d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let g = &group[rng.gen_range(0..group.len())];
        let i = rng.gen_range(1..n);
        let t = MonodromyTuple::new((0..n).map(|_| alphabet[rng.gen_range(0..alphabet.len())].clone()).collect());
        if action(g, &hurwitz_sigma(i, &t)?) != hurwitz_sigma(i, &action(g, &t))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// [`commuting_actions_check_with`] for simultaneous conjugation.
pub fn commuting_actions_check(d: usize, n: usize, trials: usize, seed: u64) -> Result<bool> {
    commuting_actions_check_with(d, n, trials, seed, |g, t| t.conjugate_by(g))
}

/// Verifies the braid relations on every tuple of `c^{×n}`.
pub fn braid_relations_exhaustive(d: usize, n: usize, kind: ClassKind) -> Result<bool> {
    let alpha = ClassAlphabet::new(d, kind)?;
    let total = (alpha.size() as u64).pow(n as u32);
    let mut digits = vec![0u32; n];
    for code in 0..total {
        alpha.decode(code, n, &mut digits);
        let t = MonodromyTuple::new(digits.iter().map(|&x| alpha.elems[x as usize].clone()).collect());
        if !braid_relations_hold(&t)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `σ_iσ_{i+1}σ_i = σ_{i+1}σ_iσ_{i+1}`, `σ_iσ_j = σ_jσ_i` for `|i − j| ≥ 2`, and `σ_i⁻¹σ_i = id`.
pub fn braid_relations_hold(t: &MonodromyTuple) -> Result<bool> {
    let n = t.len();
    let s = hurwitz_sigma;
    for i in 1..n {
        if hurwitz_sigma_inv(i, &s(i, t)?)? != *t {
            return Ok(false);
        }
        if i + 1 < n {
            let lhs = s(i, &s(i + 1, &s(i, t)?)?)?;
            let rhs = s(i + 1, &s(i, &s(i + 1, t)?)?)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        for j in i + 2..n {
            if s(i, &s(j, t)?)? != s(j, &s(i, t)?)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moves_on_pairs() {
        let t = |i, j| Perm::transposition(3, i, j).unwrap();
        let pair = MonodromyTuple::new(vec![t(1, 2), t(1, 3)]);
        assert_eq!(hurwitz_sigma(1, &pair).unwrap().entries, vec![t(1, 3), t(2, 3)]);
        let fixed = MonodromyTuple::new(vec![t(1, 2), t(1, 2)]);
        assert_eq!(hurwitz_sigma(1, &fixed).unwrap(), fixed);
        assert!(hurwitz_sigma(2, &pair).is_err());
        assert!(hurwitz_sigma(0, &pair).is_err());
    }

    #[test]
    fn coinvariants_match_orbit_count() {
        let orbits = braid_orbits(3, 3, ClassKind::Transpositions, DEFAULT_BUDGET).unwrap();
        assert_eq!(coinvariants_dim(3, 3, ClassKind::Transpositions, DEFAULT_BUDGET).unwrap(), orbits.orbit_count);
    }

    #[test]
    fn union_find_roots_are_minimal() {
        let mut uf = UnionFind::new(5);
        uf.union(4, 2);
        uf.union(2, 3);
        assert_eq!(uf.find(3), 2);
        assert_eq!(uf.find(4), 2);
    }
}
