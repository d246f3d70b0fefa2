//! Bigraded `Ext_{B_d}(k, k)` from the normalized bar complex, with `S_d`-invariant parts.
//!
//! Dimensions are those of `Tor_{a,b}`, which agree with `Ext^{a,b}` over a field. Invariant
//! dimensions are the homology of the subcomplex of invariant chains: averaging commutes with
//! the differential in characteristic zero (and modulo primes not dividing `|S_d|`).

pub mod chains;

use std::collections::{BTreeMap, HashMap, HashSet};

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use chains::{differential_of_chain, differential_of_vector, ChainSpace, FieldProducts, GradedProducts};

use crate::error::{Error, Result};
use crate::linalg::{collect_sparse, random_prime_pair, rank_sparse, Echelon, Field, RankMethod, Rationals, SparseVec, DEFAULT_PRIME_SEED, EXACT_LIMIT};
use crate::nichols::{ActionMode, Alphabet, NicholsAlgebra};
use crate::perm::{all_perms, Perm};
use crate::table::BigradedTable;

/// Default cap on the dimension of a single chain space.
pub const DEFAULT_CHAIN_BUDGET: usize = 3_000_000;

#[derive(Clone, Debug)]
pub struct ExtOptions {
    pub prime_seed: u64,
    pub chain_budget: usize,
    /// Ambient dimension up to which ranks are exact.
    pub exact_limit: usize,
    /// Shuffles the order in which chains are processed.
    pub column_order_seed: Option<u64>,
}

impl Default for ExtOptions {
    fn default() -> Self {
        Self {
            prime_seed: DEFAULT_PRIME_SEED,
            chain_budget: DEFAULT_CHAIN_BUDGET,
            exact_limit: EXACT_LIMIT,
            column_order_seed: None,
        }
    }
}

/// Dimensions together with how each cell's ranks were obtained.
#[derive(Clone, Debug, Serialize)]
pub struct ExtTable {
    pub dims: BigradedTable,
    #[serde(skip)]
    pub methods: BTreeMap<(u32, u32), RankMethod>,
}

impl ExtTable {
    pub fn get(&self, a: u32, b: u32) -> u64 {
        self.dims.get(a, b)
    }

    /// True when every rank in the table was computed over `Q`.
    pub fn all_exact(&self) -> bool {
        self.methods.values().all(|m| *m == RankMethod::Exact)
    }

    /// `"exact"`, or the modular certification label when any rank was computed modulo primes.
    pub fn method_label(&self) -> String {
        self.methods
            .values()
            .find(|m| **m != RankMethod::Exact)
            .map_or_else(|| "exact".to_string(), |m| m.to_string())
    }
}

const BATCH: usize = 2048;

fn column_order(n: usize, seed: Option<u64>) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    if let Some(s) = seed {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(s));
    }
    order
}

/// Rank of `d : C_{a,b} → C_{a−1,b}` over `p.field`.
fn full_rank<F: Field>(p: &FieldProducts<F>, src: &ChainSpace, dst: &ChainSpace, order_seed: Option<u64>) -> usize {
    let order = column_order(src.dim, order_seed);
    let images: Vec<SparseVec<F::E>> = order
        .par_iter()
        .map(|&i| {
            let (comp, idxs) = src.chain(i);
            differential_of_chain(p, dst, comp, &idxs)
        })
        .collect();
    rank_sparse(&p.field, images)
}

/// The group action on each degree, over `F`: `act[g][k][i]` is the image of basis vector `i`.
struct FieldAction<F: Field> {
    act: Vec<Vec<Vec<SparseVec<F::E>>>>,
}

/// Exact characters `χ_k(g)` and the action matrices over `Q`.
struct ExactAction {
    chars: Vec<Vec<i64>>,
    act: Vec<Vec<Vec<Vec<(usize, BigRational)>>>>,
}

impl ExactAction {
    fn new(alg: &NicholsAlgebra, mode: ActionMode, top: usize) -> Result<Self> {
        let group: Vec<Perm> = all_perms(alg.d);
        let mut chars = Vec::with_capacity(group.len());
        let mut act = Vec::with_capacity(group.len());
        for g in &group {
            let mut per_degree = Vec::with_capacity(top + 1);
            let mut ch = Vec::with_capacity(top + 1);
            for k in 0..=top {
                let m = alg.action_matrix(g, mode, k)?;
                let trace: BigRational = m
                    .iter()
                    .enumerate()
                    .flat_map(|(i, col)| col.iter().filter(move |(j, _)| *j == i).map(|(_, c)| c.clone()))
                    .sum();
                ch.push(trace.to_integer().to_i64().expect("small character"));
                per_degree.push(m);
            }
            chars.push(ch);
            act.push(per_degree);
        }
        Ok(Self { chars, act })
    }

    fn over<F: Field>(&self, f: &F) -> Result<FieldAction<F>> {
        let act = self
            .act
            .iter()
            .map(|per_degree| {
                per_degree
                    .iter()
                    .map(|m| m.iter().map(|col| chains::convert(f, col)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FieldAction { act })
    }

    /// `dim C_{a,b}^G = |G|⁻¹ Σ_g Σ_comp Π χ_{k_i}(g)`.
    fn invariant_dim(&self, space: &ChainSpace) -> usize {
        let mut total: i128 = 0;
        for ch in &self.chars {
            for comp in &space.compositions {
                total += comp.iter().map(|&k| ch[k] as i128).product::<i128>();
            }
        }
        (total / self.chars.len() as i128) as usize
    }
}

/// `Σ_g g·e` for a basis chain `e`.
fn average<F: Field>(f: &F, act: &FieldAction<F>, space: &ChainSpace, idx: usize) -> SparseVec<F::E> {
    let (comp, idxs) = space.chain(idx);
    let mut entries: Vec<(usize, F::E)> = Vec::new();
    let mut partial: Vec<(Vec<usize>, F::E)> = Vec::new();
    for per_degree in &act.act {
        partial.clear();
        partial.push((Vec::with_capacity(comp.len()), f.one()));
        for (&k, &i) in comp.iter().zip(&idxs) {
            let col = &per_degree[k][i];
            let mut next = Vec::with_capacity(partial.len() * col.len());
            for (pre, c) in &partial {
                for (j, x) in col {
                    let mut w = pre.clone();
                    w.push(*j);
                    next.push((w, f.mul(c, x)));
                }
            }
            partial = next;
        }
        for (w, c) in partial.drain(..) {
            entries.push((space.index(comp, &w), c));
        }
    }
    collect_sparse(f, entries)
}

/// Coordinates on invariant chains: a normal-word chain `f`, read as a tuple of words, lies in
/// a `G`-orbit of word chains; `Φ(f) = χ(h)·|Stab f|·[orbit]` with `f = h·rep`, or `0` when `χ`
/// is nontrivial on the stabilizer. `Φ` is injective on `χ`-isotypic chains because it factors
/// as restriction-to-representatives of `P_χ(f) = Σ_g χ(g) g·f` computed on word chains, and
/// projecting that back to `B_d` gives `|G|·x` for `x` in the isotypic part.
struct OrbitCoords {
    /// `letter_maps[g][t]` is the letter of `g t g⁻¹`.
    letter_maps: Vec<Vec<u8>>,
    chi: Vec<i64>,
    basis: Vec<Vec<Vec<u8>>>,
}

impl OrbitCoords {
    fn new(alg: &NicholsAlgebra, mode: ActionMode, b: usize) -> Self {
        let group = all_perms(alg.d);
        let letter_maps = group
            .iter()
            .map(|g| (0..alg.alphabet.size() as u8).map(|t| alg.alphabet.conjugate_letter(g, t)).collect())
            .collect();
        let chi = group.iter().map(|g| mode.twist(g, b)).collect();
        let basis = (0..=alg.top_degree()).map(|k| alg.basis(k).to_vec()).collect();
        Self { letter_maps, chi, basis }
    }

    /// `(composition id, canonical packed word chain)` and the weight, or `None` when `Φ(f) = 0`.
    fn key(&self, space: &ChainSpace, idx: usize) -> Option<((usize, u128), i64)> {
        let (comp, idxs) = space.chain(idx);
        let comp_id = space.composition_id(comp);
        let letters: Vec<u8> = comp.iter().zip(&idxs).flat_map(|(&k, &i)| self.basis[k][i].iter().copied()).collect();
        let pack = |map: &[u8]| letters.iter().fold(0u128, |acc, &t| (acc << 4) | map[t as usize] as u128);
        let own = letters.iter().fold(0u128, |acc, &t| (acc << 4) | t as u128);
        let mut best = u128::MAX;
        let mut best_chi = 1;
        let mut stab = 0i64;
        for (map, &c) in self.letter_maps.iter().zip(&self.chi) {
            let w = pack(map);
            if w == own {
                if c != 1 {
                    return None;
                }
                stab += 1;
            }
            if w < best {
                best = w;
                best_chi = c;
            }
        }
        Some(((comp_id, best), best_chi * stab))
    }
}

/// Orbit ids assigned on first sight.
#[derive(Default)]
struct OrbitIds {
    ids: HashMap<(usize, u128), usize>,
}

impl OrbitIds {
    fn project<F: Field>(&mut self, f: &F, coords: &OrbitCoords, space: &ChainSpace, v: &[(usize, F::E)]) -> SparseVec<F::E> {
        let keyed: Vec<Option<((usize, u128), i64)>> = if v.len() > 4096 {
            v.par_iter().map(|(i, _)| coords.key(space, *i)).collect()
        } else {
            v.iter().map(|(i, _)| coords.key(space, *i)).collect()
        };
        let mut entries = Vec::with_capacity(v.len());
        for ((_, c), k) in v.iter().zip(keyed) {
            if let Some((key, w)) = k {
                let next = self.ids.len();
                let id = *self.ids.entry(key).or_insert(next);
                entries.push((id, f.mul(c, &f.from_i64(w))));
            }
        }
        collect_sparse(f, entries)
    }
}

/// `Ψ = Φ∘P` on the normal chains of one space, memoized per word orbit: if `z = h·r` as word
/// chains then `P z = χ(h) P r`, and `χ(h)` is the ratio of the weights returned by `key`.
struct ProjectedAverages<'a, F: Field> {
    f: &'a F,
    act: &'a FieldAction<F>,
    coords: &'a OrbitCoords,
    space: &'a ChainSpace,
    ids: OrbitIds,
    /// orbit key ↦ `(Ψ(r), weight of r)` for the first chain `r` seen in the orbit.
    memo: HashMap<(usize, u128), (SparseVec<F::E>, i64)>,
}

impl<'a, F: Field> ProjectedAverages<'a, F> {
    fn new(f: &'a F, act: &'a FieldAction<F>, coords: &'a OrbitCoords, space: &'a ChainSpace) -> Self {
        Self {
            f,
            act,
            coords,
            space,
            ids: OrbitIds::default(),
            memo: HashMap::new(),
        }
    }

    /// Fills the memo for every orbit met by `chains`.
    fn prepare(&mut self, chains: &[usize]) {
        let keyed: Vec<(usize, Option<((usize, u128), i64)>)> =
            chains.par_iter().map(|&i| (i, self.coords.key(self.space, i))).collect();
        let mut fresh = Vec::new();
        let mut pending = HashSet::new();
        for (i, k) in keyed {
            if let Some((key, w)) = k {
                if !self.memo.contains_key(&key) && pending.insert(key) {
                    fresh.push((i, key, w));
                }
            }
        }
        let (f, act, space) = (self.f, self.act, self.space);
        let averaged: Vec<SparseVec<F::E>> = fresh.par_iter().map(|&(i, _, _)| average(f, act, space, i)).collect();
        for ((_, key, w), v) in fresh.into_iter().zip(averaged) {
            let psi = self.ids.project(f, self.coords, space, &v);
            self.memo.insert(key, (psi, w));
        }
    }

    /// `Ψ(v)` for a chain vector whose orbits have been prepared.
    fn apply(&self, v: &[(usize, F::E)]) -> SparseVec<F::E> {
        let f = self.f;
        let mut entries = Vec::new();
        for (i, c) in v {
            let Some((key, w)) = self.coords.key(self.space, *i) else { continue };
            let (psi, w_rep) = &self.memo[&key];
            // orbit mates have equal stabilizers, so the weights differ by the sign χ(h)
            let scale = f.mul(c, &f.from_i64(w.signum() * w_rep.signum()));
            for (j, x) in psi {
                entries.push((*j, f.mul(&scale, x)));
            }
        }
        collect_sparse(f, entries)
    }
}

/// Rank of `d` restricted to the `χ`-isotypic chains of `src`, whose dimension is `target`.
#[allow(clippy::too_many_arguments)]
fn invariant_rank<F: Field>(
    p: &FieldProducts<F>,
    act: &FieldAction<F>,
    coords: &OrbitCoords,
    src: &ChainSpace,
    dst: &ChainSpace,
    target: usize,
    order_seed: Option<u64>,
) -> Result<usize> {
    let f = &p.field;
    let mut span = Echelon::new(f.clone());
    let mut src_psi = ProjectedAverages::new(f, act, coords, src);
    let mut dst_psi = ProjectedAverages::new(f, act, coords, dst);
    let mut accepted = Vec::with_capacity(target);
    // one normal chain per orbit suffices: P is constant on orbit members that are normal
    let mut seen: HashSet<(usize, u128)> = HashSet::new();
    let order = column_order(src.dim, order_seed);
    for batch in order.chunks(BATCH) {
        if span.rank() == target {
            break;
        }
        let keys: Vec<(usize, Option<((usize, u128), i64)>)> = batch.par_iter().map(|&i| (i, coords.key(src, i))).collect();
        let fresh: Vec<usize> = keys
            .into_iter()
            .filter_map(|(i, k)| {
                let (key, _) = k?;
                seen.insert(key).then_some(i)
            })
            .collect();
        src_psi.prepare(&fresh);
        for &i in &fresh {
            if span.insert(src_psi.apply(&[(i, f.one())])) {
                accepted.push(i);
                if span.rank() == target {
                    break;
                }
            }
        }
    }
    if span.rank() != target {
        return Err(Error::Precondition(format!(
            "invariant chains span {} dimensions over {}, characters predict {target}",
            span.rank(),
            f.label()
        )));
    }
    let boundaries: Vec<SparseVec<F::E>> = accepted
        .par_iter()
        .map(|&i| {
            let (comp, idxs) = src.chain(i);
            differential_of_chain(p, dst, comp, &idxs)
        })
        .collect();
    let touched: Vec<usize> = boundaries.iter().flat_map(|v| v.iter().map(|(j, _)| *j)).collect();
    dst_psi.prepare(&touched);
    let images: Vec<SparseVec<F::E>> = boundaries.iter().map(|v| dst_psi.apply(v)).collect();
    Ok(rank_sparse(f, images))
}

fn check_budget(space: &ChainSpace, budget: usize) -> Result<()> {
    if space.dim > budget {
        return Err(Error::BudgetExceeded {
            what: "bar chain space",
            needed: space.dim as u128,
            budget: budget as u128,
            hint: "lower --bmax or raise --budget chains=N",
        });
    }
    Ok(())
}

/// Computes ranks exactly or over two primes and records the method.
fn ranks_with_method<R>(spaces: &[ChainSpace], a_top: usize, opts: &ExtOptions, run: R) -> Result<(Vec<usize>, Vec<RankMethod>)>
where
    R: Fn(Field2, usize) -> Result<usize>,
{
    let (p1, p2) = random_prime_pair(opts.prime_seed);
    let mut ranks = vec![0usize; a_top + 2];
    let mut methods = vec![RankMethod::Exact; a_top + 2];
    for a in 1..=a_top {
        let ambient = spaces[a].dim.max(spaces[a - 1].dim);
        if spaces[a].dim == 0 || spaces[a - 1].dim == 0 {
            continue;
        }
        if ambient <= opts.exact_limit {
            ranks[a] = run(Field2::Exact, a)?;
        } else {
            let r1 = run(Field2::Mod(p1), a)?;
            let r2 = run(Field2::Mod(p2), a)?;
            if r1 != r2 {
                return Err(Error::PrimeDisagreement {
                    first: (p1.modulus(), r1),
                    second: (p2.modulus(), r2),
                });
            }
            ranks[a] = r1;
            methods[a] = RankMethod::Modular {
                primes: [p1.modulus(), p2.modulus()],
            };
        }
    }
    Ok((ranks, methods))
}

#[derive(Clone, Copy)]
enum Field2 {
    Exact,
    Mod(crate::linalg::ModPrime),
}

fn merge_method(a: &RankMethod, b: &RankMethod) -> RankMethod {
    if *a == RankMethod::Exact {
        b.clone()
    } else {
        a.clone()
    }
}

/// `dim Ext^{a,b}` for `a ≤ a_max`, `b ≤ b_max` over any graded algebra.
pub fn ext_dims_of(products: &GradedProducts, a_max: usize, b_max: usize, opts: &ExtOptions) -> Result<ExtTable> {
    let exact = products.over(&Rationals)?;
    let (p1, p2) = random_prime_pair(opts.prime_seed);
    let modular = (products.over(&p1)?, products.over(&p2)?);
    let mut table = BigradedTable::default();
    let mut methods = BTreeMap::new();
    table.set(0, 0, 1);
    methods.insert((0, 0), RankMethod::Exact);
    for b in 1..=b_max {
        let a_top = b.min(a_max + 1);
        let spaces: Vec<ChainSpace> = (0..=a_top).map(|a| ChainSpace::new(&products.dims, a, b)).collect();
        for s in &spaces {
            check_budget(s, opts.chain_budget)?;
        }
        let (ranks, rank_methods) = ranks_with_method(&spaces, a_top, opts, |field, a| {
            Ok(match field {
                Field2::Exact => full_rank(&exact, &spaces[a], &spaces[a - 1], opts.column_order_seed),
                Field2::Mod(p) => {
                    let fp = if p == p1 { &modular.0 } else { &modular.1 };
                    full_rank(fp, &spaces[a], &spaces[a - 1], opts.column_order_seed)
                }
            })
        })?;
        for a in 1..=a_top.min(a_max) {
            let dim = spaces[a].dim - ranks[a] - ranks.get(a + 1).copied().unwrap_or(0);
            table.set(a as u32, b as u32, dim as u64);
            methods.insert((a as u32, b as u32), merge_method(&rank_methods[a], &rank_methods[a + 1]));
        }
    }
    Ok(ExtTable { dims: table, methods })
}

pub fn ext_dims(alg: &NicholsAlgebra, a_max: usize, b_max: usize, opts: &ExtOptions) -> Result<ExtTable> {
    ext_dims_of(&GradedProducts::from_nichols(alg, b_max)?, a_max, b_max, opts)
}

/// `dim (Ext^{a,b})^{S_d}` for the chosen action.
pub fn invariant_ext_dims(alg: &NicholsAlgebra, mode: ActionMode, a_max: usize, b_max: usize, opts: &ExtOptions) -> Result<ExtTable> {
    let products = GradedProducts::from_nichols(alg, b_max)?;
    let top = products.top();
    let action = ExactAction::new(alg, mode, top)?;
    let exact = (products.over(&Rationals)?, action.over(&Rationals)?);
    let (p1, p2) = random_prime_pair(opts.prime_seed);
    let mod1 = (products.over(&p1)?, action.over(&p1)?);
    let mod2 = (products.over(&p2)?, action.over(&p2)?);
    let mut table = BigradedTable::default();
    let mut methods = BTreeMap::new();
    table.set(0, 0, 1);
    methods.insert((0, 0), RankMethod::Exact);
    for b in 1..=b_max {
        let a_top = b.min(a_max + 1);
        let spaces: Vec<ChainSpace> = (0..=a_top).map(|a| ChainSpace::new(&products.dims, a, b)).collect();
        for s in &spaces {
            check_budget(s, opts.chain_budget)?;
        }
        let targets: Vec<usize> = spaces.iter().map(|s| action.invariant_dim(s)).collect();
        let coords = OrbitCoords::new(alg, mode, b);
        let (ranks, rank_methods) = ranks_with_method(&spaces, a_top, opts, |field, a| {
            if targets[a] == 0 || targets[a - 1] == 0 {
                return Ok(0);
            }
            match field {
                Field2::Exact => invariant_rank(&exact.0, &exact.1, &coords, &spaces[a], &spaces[a - 1], targets[a], opts.column_order_seed),
                Field2::Mod(p) => {
                    let (prods, act) = if p == p1 { (&mod1.0, &mod1.1) } else { (&mod2.0, &mod2.1) };
                    invariant_rank(prods, act, &coords, &spaces[a], &spaces[a - 1], targets[a], opts.column_order_seed)
                }
            }
        })?;
        for a in 1..=a_top.min(a_max) {
            let dim = targets[a] - ranks[a] - ranks.get(a + 1).copied().unwrap_or(0);
            table.set(a as u32, b as u32, dim as u64);
            methods.insert((a as u32, b as u32), merge_method(&rank_methods[a], &rank_methods[a + 1]));
        }
    }
    Ok(ExtTable { dims: table, methods })
}

/// `Ext` over the quantum shuffle algebra truncated above degree `n_max`.
pub fn shuffle_ext_small(d: usize, n_max: usize, opts: &ExtOptions) -> Result<ExtTable> {
    if d != 3 || n_max > 4 {
        return Err(Error::Precondition(format!(
            "shuffle-algebra Ext is limited to d = 3, n ≤ 4 (got d = {d}, n = {n_max})"
        )));
    }
    let alpha = Alphabet::new(d)?;
    ext_dims_of(&GradedProducts::shuffle_algebra(&alpha, n_max)?, n_max, n_max, opts)
}

/// Even-`b` agreement of standard and geometric invariants; odd columns are listed only.
#[derive(Clone, Debug, Serialize)]
pub struct BosonizationReport {
    pub b_max: usize,
    /// `(a, b, standard, geometric)` with `b` even and the dims differing.
    pub even_mismatches: Vec<(u32, u32, u64, u64)>,
    /// `(a, b, standard, geometric)` with `b` odd and the dims differing.
    pub odd_differences: Vec<(u32, u32, u64, u64)>,
}

impl BosonizationReport {
    pub fn passes(&self) -> bool {
        self.even_mismatches.is_empty()
    }
}

pub fn bosonization_even_check(standard: &ExtTable, geometric: &ExtTable, b_max: usize) -> BosonizationReport {
    let mut report = BosonizationReport {
        b_max,
        even_mismatches: Vec::new(),
        odd_differences: Vec::new(),
    };
    for b in 0..=b_max as u32 {
        for a in 0..=b {
            let (s, g) = (standard.get(a, b), geometric.get(a, b));
            if s != g {
                let row = (a, b, s, g);
                if b % 2 == 0 {
                    report.even_mismatches.push(row);
                } else {
                    report.odd_differences.push(row);
                }
            }
        }
    }
    report
}

/// Coefficients of `1/H(t)` up to `t^{b_max}`.
pub fn inverse_hilbert(dims: &[usize], b_max: usize) -> Vec<i128> {
    let mut inv = vec![0i128; b_max + 1];
    inv[0] = 1;
    for b in 1..=b_max {
        let s: i128 = (1..=b.min(dims.len() - 1)).map(|k| dims[k] as i128 * inv[b - k]).sum();
        inv[b] = -s;
    }
    inv
}

/// `Σ_a (−1)^a dim Tor_{a,b}` for each `b`, against `[t^b] 1/H(t)`.
pub fn euler_characteristic_check(dims: &[usize], table: &ExtTable, b_max: usize) -> Vec<(usize, i128, i128)> {
    let inv = inverse_hilbert(dims, b_max);
    (0..=b_max)
        .map(|b| {
            let alt: i128 = (0..=b as u32)
                .map(|a| {
                    let x = table.get(a, b as u32) as i128;
                    if a % 2 == 0 {
                        x
                    } else {
                        -x
                    }
                })
                .sum();
            (b, alt, inv[b])
        })
        .collect()
}

/// `d_{a−1} ∘ d_a = 0` on every basis chain of `C_{a,b}`, over `Q`.
pub fn d_squared_vanishes(products: &GradedProducts, a: usize, b: usize) -> Result<bool> {
    if a < 2 {
        return Ok(true);
    }
    let p = products.over(&Rationals)?;
    let spaces: Vec<ChainSpace> = (a - 2..=a).map(|x| ChainSpace::new(&products.dims, x, b)).collect();
    for i in 0..spaces[2].dim {
        let (comp, idxs) = spaces[2].chain(i);
        let once = differential_of_chain(&p, &spaces[1], comp, &idxs);
        let twice = differential_of_vector(&p, &spaces[1], &spaces[0], &once);
        if !twice.is_empty() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The matrix of `d : C_{a,b} → C_{a−1,b}` over `Q`, column by column.
pub fn bar_differential(products: &GradedProducts, a: usize, b: usize) -> Result<(ChainSpace, ChainSpace, Vec<SparseVec<BigRational>>)> {
    if a == 0 {
        return Err(Error::Precondition("the bar differential starts at a = 1".into()));
    }
    let p = products.over(&Rationals)?;
    let src = ChainSpace::new(&products.dims, a, b);
    let dst = ChainSpace::new(&products.dims, a - 1, b);
    let cols = (0..src.dim)
        .map(|i| {
            let (comp, idxs) = src.chain(i);
            differential_of_chain(&p, &dst, comp, &idxs)
        })
        .collect();
    Ok((src, dst, cols))
}
