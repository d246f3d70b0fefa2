//! Degree-by-degree noncommutative completion of homogeneous relations under deglex.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::tensor::{deglex, TensorElem, Word};
use crate::error::{Error, Result};
use crate::qseries::laurent::{parse_rational, rational_to_string};

/// Stamp written into serialized rewrite systems.
pub const FORMAT_VERSION: &str = concat!("groebner-v1/", env!("CARGO_PKG_VERSION"));

/// Default cap on the number of rules.
pub const DEFAULT_RULE_CAP: usize = 200_000;

type Poly = BTreeMap<Word, BigRational>;

/// Rewriting rules `lead → tail` with `lead` the deglex-largest word of each basis element.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    pub alphabet_size: usize,
    rules: HashMap<Word, Vec<(Word, BigRational)>>,
    /// Every overlap of total length at most this has been resolved.
    pub completed_to: usize,
    /// Normal words by degree, deglex-sorted, for degrees `0..=completed_to`.
    normal_words: Vec<Vec<Word>>,
}

fn add_term(p: &mut Poly, w: Word, c: BigRational) {
    if c.is_zero() {
        return;
    }
    match p.entry(w) {
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

/// Memoized reduction against a fixed set of rules.
struct Reducer<'a> {
    rules: &'a HashMap<Word, Vec<(Word, BigRational)>>,
    lengths: Vec<usize>,
    memo: HashMap<Word, Vec<(Word, BigRational)>>,
}

impl<'a> Reducer<'a> {
    fn new(rules: &'a HashMap<Word, Vec<(Word, BigRational)>>) -> Self {
        let mut lengths: Vec<usize> = rules.keys().map(|w| w.len()).collect();
        lengths.sort_unstable();
        lengths.dedup();
        Self {
            rules,
            lengths,
            memo: HashMap::new(),
        }
    }

    fn find_lead(&self, w: &[u8]) -> Option<(usize, usize)> {
        for &len in &self.lengths {
            if len > w.len() {
                break;
            }
            for start in 0..=w.len() - len {
                if self.rules.contains_key(&w[start..start + len]) {
                    return Some((start, len));
                }
            }
        }
        None
    }

    fn reduce_word(&mut self, w: &[u8]) -> Vec<(Word, BigRational)> {
        if let Some(r) = self.memo.get(w) {
            return r.clone();
        }
        let out = match self.find_lead(w) {
            None => vec![(w.to_vec(), BigRational::one())],
            Some((start, len)) => {
                let mut acc = Poly::new();
                let tail = self.rules[&w[start..start + len]].clone();
                for (t, c) in tail {
                    let mut v = w[..start].to_vec();
                    v.extend_from_slice(&t);
                    v.extend_from_slice(&w[start + len..]);
                    for (x, y) in self.reduce_word(&v) {
                        add_term(&mut acc, x, &c * y);
                    }
                }
                acc.into_iter().collect()
            }
        };
        self.memo.insert(w.to_vec(), out.clone());
        out
    }

    fn reduce(&mut self, p: &Poly) -> Poly {
        let mut acc = Poly::new();
        for (w, c) in p {
            for (x, y) in self.reduce_word(w) {
                add_term(&mut acc, x, c * y);
            }
        }
        acc
    }

    fn forget_degree(&mut self, n: usize) {
        self.memo.retain(|w, _| w.len() != n);
    }
}

/// Reduced row echelon form over `Q` with the deglex-largest word as pivot.
fn interreduce(rows: Vec<Poly>) -> Vec<Poly> {
    let mut basis: BTreeMap<Word, Poly> = BTreeMap::new();
    for mut row in rows {
        // eliminate existing pivots from the largest word down
        loop {
            let hit = row
                .iter()
                .rev()
                .find(|(w, _)| basis.contains_key(*w))
                .map(|(w, c)| (w.clone(), c.clone()));
            let Some((w, c)) = hit else { break };
            for (x, y) in &basis[&w] {
                add_term(&mut row, x.clone(), -(&c * y));
            }
        }
        let Some((lead, c)) = row.iter().next_back().map(|(w, c)| (w.clone(), c.clone())) else {
            continue;
        };
        let inv = c.recip();
        let row: Poly = row.into_iter().map(|(w, x)| (w, x * &inv)).collect();
        for other in basis.values_mut() {
            if let Some(f) = other.get(&lead).cloned() {
                for (x, y) in &row {
                    add_term(other, x.clone(), -(&f * y));
                }
            }
        }
        basis.insert(lead, row);
    }
    basis.into_values().collect()
}

/// Completes the two-sided ideal generated by homogeneous `relations` through degree `max_deg`.
pub fn groebner_complete(relations: &[TensorElem], alphabet_size: usize, max_deg: usize, rule_cap: usize) -> Result<RewriteSystem> {
    if max_deg < 2 {
        return Err(Error::Precondition(format!("max_deg = {max_deg} must be at least 2")));
    }
    let mut by_degree: BTreeMap<usize, Vec<Poly>> = BTreeMap::new();
    for r in relations {
        if let Some(n) = r.degree() {
            by_degree
                .entry(n)
                .or_default()
                .push(r.terms().map(|(w, c)| (w.clone(), c.clone())).collect());
        }
    }
    let mut rules: HashMap<Word, Vec<(Word, BigRational)>> = HashMap::new();
    // prefix ↦ leads starting with it
    let mut by_prefix: HashMap<Word, Vec<Word>> = HashMap::new();
    let mut normal_words: Vec<Vec<Word>> = vec![vec![Vec::new()], (0..alphabet_size as u8).map(|a| vec![a]).collect()];
    let mut memo: HashMap<Word, Vec<(Word, BigRational)>> = HashMap::new();

    for n in 2..=max_deg {
        let mut candidates: Vec<Poly> = by_degree.remove(&n).unwrap_or_default();
        for (l1, t1) in &rules {
            for k in 1..l1.len() {
                let Some(partners) = by_prefix.get(&l1[l1.len() - k..]) else {
                    continue;
                };
                for l2 in partners {
                    if l2.len() <= k || l1.len() + l2.len() - k != n {
                        continue;
                    }
                    // l1·v = u·l2
                    let v = &l2[k..];
                    let u = &l1[..l1.len() - k];
                    let mut s = Poly::new();
                    for (t, c) in t1 {
                        let mut w = t.clone();
                        w.extend_from_slice(v);
                        add_term(&mut s, w, c.clone());
                    }
                    for (t, c) in &rules[l2] {
                        let mut w = u.to_vec();
                        w.extend_from_slice(t);
                        add_term(&mut s, w, -c.clone());
                    }
                    candidates.push(s);
                }
            }
        }

        let mut reducer = Reducer {
            memo: std::mem::take(&mut memo),
            ..Reducer::new(&rules)
        };
        let reduced: Vec<Poly> = candidates
            .iter()
            .map(|c| reducer.reduce(c))
            .filter(|p| !p.is_empty())
            .collect();
        reducer.forget_degree(n);
        memo = reducer.memo;

        for row in interreduce(reduced) {
            let (lead, _) = row.iter().next_back().expect("nonzero row");
            let lead = lead.clone();
            let tail: Vec<(Word, BigRational)> = row
                .iter()
                .filter(|(w, _)| **w != lead)
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect();
            for k in 1..=lead.len() {
                by_prefix.entry(lead[..k].to_vec()).or_default().push(lead.clone());
            }
            rules.insert(lead, tail);
        }
        if rules.len() > rule_cap {
            return Err(Error::RuleExplosion { cap: rule_cap });
        }

        let prev = &normal_words[n - 1];
        let mut next = Vec::new();
        for w in prev {
            for a in 0..alphabet_size as u8 {
                let mut v = w.clone();
                v.push(a);
                let suffix_is_lead = (1..=v.len()).any(|k| rules.contains_key(&v[v.len() - k..]));
                if !suffix_is_lead {
                    next.push(v);
                }
            }
        }
        next.sort_by(|a, b| deglex(a, b));
        normal_words.push(next);
        log::debug!("degree {n}: {} rules, {} normal words", rules.len(), normal_words[n].len());
    }

    Ok(RewriteSystem {
        alphabet_size,
        rules,
        completed_to: max_deg,
        normal_words,
    })
}

impl RewriteSystem {
    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// Normal-word counts for degrees `0..=completed_to`.
    pub fn normal_counts(&self) -> Vec<usize> {
        self.normal_words.iter().map(|w| w.len()).collect()
    }

    pub fn normal_words(&self, n: usize) -> Result<&[Word]> {
        self.normal_words
            .get(n)
            .map(|v| v.as_slice())
            .ok_or(Error::IncompleteRewriteSystem {
                completed: self.completed_to,
                degree: n,
            })
    }

    /// First degree with no normal words, if reached.
    pub fn top_degree(&self) -> Option<usize> {
        self.normal_words.iter().position(|w| w.is_empty()).map(|n| n - 1)
    }

    pub fn is_normal(&self, w: &[u8]) -> bool {
        Reducer::new(&self.rules).find_lead(w).is_none()
    }

    pub fn normal_form(&self, x: &TensorElem) -> Result<TensorElem> {
        self.normalizer().normal_form(x)
    }

    /// A reusable memoizing normal-form evaluator.
    pub fn normalizer(&self) -> Normalizer<'_> {
        Normalizer {
            system: self,
            reducer: Reducer::new(&self.rules),
        }
    }

    pub fn to_json(&self, d: usize) -> serde_json::Value {
        let mut rules: Vec<SerializedRule> = self
            .rules
            .iter()
            .map(|(lead, tail)| SerializedRule {
                lead: lead.clone(),
                tail: tail.iter().map(|(w, c)| (w.clone(), rational_to_string(c))).collect(),
            })
            .collect();
        rules.sort_by(|a, b| deglex(&a.lead, &b.lead));
        serde_json::to_value(SerializedSystem {
            version: FORMAT_VERSION.into(),
            d,
            alphabet_size: self.alphabet_size,
            completed_to: self.completed_to,
            rules,
        })
        .expect("serializable")
    }

    /// Rebuilds a system from [`RewriteSystem::to_json`] output; returns `None` on a version
    /// or degree mismatch.
    pub fn from_json(value: &serde_json::Value, d: usize) -> Result<Option<Self>> {
        let s: SerializedSystem = serde_json::from_value(value.clone())?;
        if s.version != FORMAT_VERSION || s.d != d {
            return Ok(None);
        }
        let mut rules = HashMap::new();
        for r in s.rules {
            let tail = r
                .tail
                .into_iter()
                .map(|(w, c)| Ok((w, parse_rational(&c).map_err(Error::Parse)?)))
                .collect::<Result<Vec<_>>>()?;
            rules.insert(r.lead, tail);
        }
        let mut normal_words: Vec<Vec<Word>> = vec![vec![Vec::new()]];
        let reducer = Reducer::new(&rules);
        for n in 1..=s.completed_to {
            let mut next = Vec::new();
            for w in &normal_words[n - 1] {
                for a in 0..s.alphabet_size as u8 {
                    let mut v = w.clone();
                    v.push(a);
                    if reducer.find_lead(&v).is_none() {
                        next.push(v);
                    }
                }
            }
            normal_words.push(next);
        }
        Ok(Some(Self {
            alphabet_size: s.alphabet_size,
            rules,
            completed_to: s.completed_to,
            normal_words,
        }))
    }
}

#[derive(Serialize, Deserialize)]
struct SerializedRule {
    lead: Word,
    tail: Vec<(Word, String)>,
}

#[derive(Serialize, Deserialize)]
struct SerializedSystem {
    version: String,
    d: usize,
    alphabet_size: usize,
    completed_to: usize,
    rules: Vec<SerializedRule>,
}

pub struct Normalizer<'a> {
    system: &'a RewriteSystem,
    reducer: Reducer<'a>,
}

impl Normalizer<'_> {
    /// Words beyond the completion degree are accepted only past the top degree, where
    /// everything vanishes.
    fn check_degree(&self, n: usize) -> Result<bool> {
        if n <= self.system.completed_to {
            return Ok(true);
        }
        match self.system.top_degree() {
            Some(top) if n > top => Ok(false),
            _ => Err(Error::IncompleteRewriteSystem {
                completed: self.system.completed_to,
                degree: n,
            }),
        }
    }

    pub fn normal_form_word(&mut self, w: &[u8]) -> Result<Vec<(Word, BigRational)>> {
        if !self.check_degree(w.len())? {
            return Ok(Vec::new());
        }
        Ok(self.reducer.reduce_word(w))
    }

    pub fn normal_form(&mut self, x: &TensorElem) -> Result<TensorElem> {
        let mut out = TensorElem::zero();
        for (w, c) in x.terms() {
            for (v, y) in self.normal_form_word(w)? {
                out.add_term(v, c * y);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutative_polynomials() {
        // xy − yx over two letters: normal words are x^a y^b... with y > x the lead is yx
        let rel = TensorElem::from_terms([(vec![0, 1], 1), (vec![1, 0], -1)]);
        let rs = groebner_complete(&[rel], 2, 5, 100).unwrap();
        assert_eq!(rs.normal_counts(), vec![1, 2, 3, 4, 5, 6]);
        let x = TensorElem::word(vec![1, 1, 0]);
        assert_eq!(rs.normal_form(&x).unwrap(), TensorElem::word(vec![0, 1, 1]));
    }

    #[test]
    fn interreduction_picks_largest_pivots() {
        let one = BigRational::one;
        let p = |terms: &[(Word, i64)]| -> Poly {
            terms
                .iter()
                .map(|(w, c)| (w.clone(), BigRational::from_integer((*c).into())))
                .collect()
        };
        let rows = interreduce(vec![p(&[(vec![1, 1], 1), (vec![0, 1], 1)]), p(&[(vec![1, 1], 1), (vec![0, 0], 1)])]);
        assert_eq!(rows.len(), 2);
        for r in &rows {
            assert_eq!(r.iter().next_back().unwrap().1, &one());
        }
    }
}
