//! Rewriting composites of δ-operations into admissible normal form.
//!
//! For `i < 2j` the relation
//!
//! ```text
//! δ_i δ_j = Σ binom(j - i + k - 1, j - k) δ_{i+j-k} δ_k,   ⌈(i+1)/2⌉ <= k <= ⌊(i+j)/3⌋
//! ```
//!
//! rewrites an inadmissible pair as a sum of admissible pairs. Each rewrite
//! strictly lowers the moment `Σ q·i_q` of a word (the inner index drops from
//! `j` to `k < j`), so normalization terminates.

use std::cell::RefCell;
use std::cmp::Reverse;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2::{binom_mod2_signed, F2Sum};
use crate::words::{AlphaWord, DeltaWord};

/// The value of `rewrite_pair` without memoization.
fn relation(i: u32, j: u32) -> F2Sum<DeltaWord> {
    if i >= 2 * j {
        return F2Sum::singleton(DeltaWord::from_valid(vec![i, j]));
    }
    let (i, j) = (i as i64, j as i64);
    let lo = (i + 2) / 2; // ⌈(i+1)/2⌉
    let hi = (i + j) / 3;
    (lo..=hi)
        .filter(|&k| binom_mod2_signed(j - i + k - 1, j - k).is_one())
        .map(|k| DeltaWord::from_valid(vec![(i + j - k) as u32, k as u32]))
        .collect()
}

/// Memoized relation table keyed by inadmissible pairs `(i, j)`, `i < 2j`.
#[derive(Debug, Default)]
pub struct RelationTable {
    entries: HashMap<(u32, u32), F2Sum<DeltaWord>>,
}

impl RelationTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, i: u32, j: u32) -> &F2Sum<DeltaWord> {
        self.entries.entry((i, j)).or_insert_with(|| relation(i, j))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Rewrites `δ_i δ_j`. Admissible pairs (`i >= 2j`) are returned unchanged.
pub fn rewrite_pair(i: u32, j: u32) -> F2Sum<DeltaWord> {
    assert!(i >= 2 && j >= 2, "δ-indices start at 2");
    relation(i, j)
}

/// A GF(2) sum of admissible words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AdmissibleSum(F2Sum<DeltaWord>);

impl AdmissibleSum {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The sum consisting of one admissible word.
    pub fn from_admissible(word: DeltaWord) -> Result<Self> {
        if !word.is_admissible() {
            return Err(Error::precondition(format!(
                "{} is not admissible",
                word.tuple_string()
            )));
        }
        Ok(AdmissibleSum(F2Sum::singleton(word)))
    }

    pub fn identity() -> Self {
        AdmissibleSum(F2Sum::singleton(DeltaWord::identity()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn terms(&self) -> &F2Sum<DeltaWord> {
        &self.0
    }

    pub fn into_terms(self) -> F2Sum<DeltaWord> {
        self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &DeltaWord> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for AdmissibleSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Serialize for AdmissibleSum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter())
    }
}

/// Normalizer owning a private relation table.
///
/// Words waiting to be rewritten are kept in a set ordered by decreasing
/// moment. Since every rewrite lowers the moment, a word is only popped once
/// all words that could produce it have been expanded, so duplicate
/// contributions cancel before any work is spent on them.
#[derive(Debug, Default)]
pub struct Normalizer {
    table: RelationTable,
}

impl Normalizer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn table(&self) -> &RelationTable {
        &self.table
    }

    pub fn normalize(&mut self, word: &DeltaWord) -> AdmissibleSum {
        let mut pending: BTreeSet<(Reverse<u64>, DeltaWord)> = BTreeSet::new();
        let mut result = F2Sum::zero();
        pending.insert((Reverse(word.moment()), word.clone()));

        while let Some((_, w)) = pending.pop_first() {
            let idx = w.indices();
            // leftmost inadmissible pair
            let Some(p) = (0..idx.len().saturating_sub(1)).find(|&p| idx[p] < 2 * idx[p + 1])
            else {
                result.toggle(w);
                continue;
            };
            let replacements = self.table.get(idx[p], idx[p + 1]).clone();
            for pair in &replacements {
                let mut v = Vec::with_capacity(idx.len());
                v.extend_from_slice(&idx[..p]);
                v.extend_from_slice(pair.indices());
                v.extend_from_slice(&idx[p + 2..]);
                let nw = DeltaWord::from_valid(v);
                let key = (Reverse(nw.moment()), nw);
                if !pending.remove(&key) {
                    pending.insert(key);
                }
            }
        }
        AdmissibleSum(result)
    }

    pub fn normalize_sum(&mut self, sum: &F2Sum<DeltaWord>) -> AdmissibleSum {
        let mut out = F2Sum::zero();
        for w in sum {
            out += self.normalize(w).0;
        }
        AdmissibleSum(out)
    }

    pub fn compose(&mut self, outer: &AdmissibleSum, inner: &AdmissibleSum) -> AdmissibleSum {
        let mut out = F2Sum::zero();
        for a in outer.iter() {
            for b in inner.iter() {
                out += self.normalize(&a.concat(b)).0;
            }
        }
        AdmissibleSum(out)
    }
}

thread_local! {
    static NORMALIZER: RefCell<Normalizer> = RefCell::new(Normalizer::new());
}

/// Normalizes `δ_I` to a sum of admissible words, using a per-thread table.
pub fn normalize(word: &DeltaWord) -> AdmissibleSum {
    NORMALIZER.with(|n| n.borrow_mut().normalize(word))
}

/// Normal form of the composite `outer ∘ inner`, extended bilinearly.
pub fn compose(outer: &AdmissibleSum, inner: &AdmissibleSum) -> AdmissibleSum {
    NORMALIZER.with(|n| n.borrow_mut().compose(outer, inner))
}

/// `θ(s, t) = δ_{2^s} δ_{2^{s-1}} … δ_{2^{t+1}}` for `s > t`.
pub fn theta_word(s: u32, t: u32) -> Result<DeltaWord> {
    if s <= t {
        return Err(Error::precondition(format!(
            "θ(s,t) needs s > t, got s={s}, t={t}"
        )));
    }
    if s > 30 {
        return Err(Error::precondition(
            "θ(s,t) with s > 30 overflows 32-bit indices",
        ));
    }
    Ok(DeltaWord::from_valid(
        (t + 1..=s).rev().map(|e| 1u32 << e).collect(),
    ))
}

/// Default search cap for [`annihilation_order`]: `t + 16`.
pub fn default_cap(t: u32) -> u32 {
    t + 16
}

fn search_annihilation(word: &DeltaWord, t: u32, cap: u32) -> Result<u32> {
    if cap > 30 {
        return Err(Error::precondition("cap above 30 overflows 32-bit indices"));
    }
    for s in t + 1..=cap {
        let full = theta_word(s, t)?.concat(word);
        if normalize(&full).is_zero() {
            return Ok(s);
        }
    }
    Err(Error::SearchCapExceeded { cap })
}

/// Least `s > t` with `θ(s,t) δ_i = 0`, searching up to `cap`.
///
/// Requires `i >= 2`, `t >= 1` and `2^t < i`; under these hypotheses such an
/// `s` always exists, so [`Error::SearchCapExceeded`] means the cap is too low.
pub fn annihilation_order(i: u32, t: u32, cap: u32) -> Result<u32> {
    if i < 2 {
        return Err(Error::precondition("δ-index must be at least 2"));
    }
    if t < 1 {
        return Err(Error::precondition("t must be at least 1"));
    }
    if t >= 32 || (1u64 << t) >= i as u64 {
        return Err(Error::precondition(format!(
            "need 2^t < i, got i={i}, t={t}"
        )));
    }
    search_annihilation(&DeltaWord::from_valid(vec![i]), t, cap)
}

/// Least `s > t` with `θ(s,t) δ_I = 0` for an admissible nonempty `I` and
/// `1 <= t < len(I)`.
pub fn annihilation_order_word(word: &DeltaWord, t: u32, cap: u32) -> Result<u32> {
    if word.is_empty() || !word.is_admissible() {
        return Err(Error::precondition("word must be admissible and nonempty"));
    }
    if t < 1 {
        return Err(Error::precondition("t must be at least 1"));
    }
    if t as usize >= word.len() {
        return Err(Error::precondition(format!(
            "need t < length {} of the word, got t={t}",
            word.len()
        )));
    }
    search_annihilation(word, t, cap)
}

/// The α-form relation: for `s > t`,
/// `α_s α_t = Σ binom(s-q-1, q-t) α_{s+2t-2q} α_q` over
/// `⌈(s+2t)/3⌉ <= q <= ⌊(s+t-1)/2⌋`. Normal pairs are returned unchanged.
pub fn rewrite_alpha_pair(s: u32, t: u32) -> F2Sum<AlphaWord> {
    if s <= t {
        return F2Sum::singleton(AlphaWord::from_raw(vec![s, t]));
    }
    let (s, t) = (s as i64, t as i64);
    let lo = (s + 2 * t + 2) / 3;
    let hi = (s + t - 1) / 2;
    (lo..=hi)
        .filter(|&q| binom_mod2_signed(s - q - 1, q - t).is_one())
        .map(|q| AlphaWord::from_raw(vec![(s + 2 * t - 2 * q) as u32, q as u32]))
        .collect()
}

/// Normal form of an α-word (indices non-decreasing outermost first),
/// computed with the α-form relation only. Independent of [`normalize`].
pub fn normalize_alpha(word: &AlphaWord) -> F2Sum<AlphaWord> {
    fn go(word: &AlphaWord, memo: &mut HashMap<AlphaWord, F2Sum<AlphaWord>>) -> F2Sum<AlphaWord> {
        if let Some(hit) = memo.get(word) {
            return hit.clone();
        }
        let idx = word.indices();
        let out = match (0..idx.len().saturating_sub(1)).find(|&p| idx[p] > idx[p + 1]) {
            None => F2Sum::singleton(word.clone()),
            Some(p) => {
                let mut acc = F2Sum::zero();
                for pair in &rewrite_alpha_pair(idx[p], idx[p + 1]) {
                    let mut v = idx[..p].to_vec();
                    v.extend_from_slice(pair.indices());
                    v.extend_from_slice(&idx[p + 2..]);
                    acc += go(&AlphaWord::from_raw(v), memo);
                }
                acc
            }
        };
        memo.insert(word.clone(), out.clone());
        out
    }
    go(word, &mut HashMap::new())
}
