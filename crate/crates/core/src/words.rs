//! Operation words in δ- and α-indexing.
//!
//! A [`DeltaWord`] `(i₁, …, i_r)` denotes the composite `δ_{i₁} δ_{i₂} … δ_{i_r}`,
//! stored outermost first, so `i_r` is applied to the argument first. On a
//! class of degree `m` the operation `δ_i` is defined for `2 <= i <= m` and
//! lands in degree `m + i`; `δ_m` is the divided square.
//!
//! The dual indexing sets `α_t = δ_{m-t}` on degree `m`, so `α₀ = γ₂` and
//! `α₁` is the André operation.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// A composite of δ-operations, outermost first. Every index is at least 2.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct DeltaWord(Vec<u32>);

impl DeltaWord {
    pub fn new(indices: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i < 2) {
            return Err(Error::Parse(format!("δ-index {bad} is below 2")));
        }
        Ok(DeltaWord(indices))
    }

    /// The empty word, i.e. the identity operation.
    pub fn identity() -> Self {
        DeltaWord(Vec::new())
    }

    /// Internal constructor for indices already known to be valid.
    pub(crate) fn from_valid(indices: Vec<u32>) -> Self {
        debug_assert!(indices.iter().all(|&i| i >= 2));
        DeltaWord(indices)
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `i₁ − i₂ − … − i_r`, and 0 for the empty word.
    pub fn excess(&self) -> i64 {
        match self.0.split_first() {
            None => 0,
            Some((&first, rest)) => first as i64 - rest.iter().map(|&i| i as i64).sum::<i64>(),
        }
    }

    /// `2^r` for a word of length `r`.
    pub fn weight(&self) -> u64 {
        1u64 << self.0.len()
    }

    pub fn statistics(&self) -> (u32, i64, u64) {
        (self.degree(), self.excess(), self.weight())
    }

    pub fn is_admissible(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= 2 * w[1])
    }

    /// Whether each operation, applied right to left starting from degree `n`,
    /// has its index in `[2, current degree]`.
    pub fn is_applicable(&self, n: SourceDegree) -> bool {
        let mut m = n.get() as u64;
        for &i in self.0.iter().rev() {
            if i < 2 || i as u64 > m {
                return false;
            }
            m += i as u64;
        }
        true
    }

    /// `self` applied after `inner`.
    pub fn concat(&self, inner: &DeltaWord) -> DeltaWord {
        let mut v = Vec::with_capacity(self.len() + inner.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&inner.0);
        DeltaWord(v)
    }

    /// Σ q·i_q with positions counted from 1. Every rewrite step lowers it.
    pub fn moment(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(q, &i)| (q as u64 + 1) * i as u64)
            .sum()
    }

    /// Tuple form, e.g. `(4 2)` or `()`.
    pub fn tuple_string(&self) -> String {
        let inner: Vec<String> = self.0.iter().map(u32::to_string).collect();
        format!("({})", inner.join(" "))
    }
}

impl fmt::Display for DeltaWord {
    /// `d4 d2`; the identity prints as `id`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "d{i}")?;
        }
        Ok(())
    }
}

/// A composite of α-operations, outermost first.
///
/// Index 0 (the divided square) only arises from conversions; parsed words
/// must use indices of at least 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct AlphaWord(Vec<u32>);

impl AlphaWord {
    pub fn new(indices: Vec<u32>) -> Result<Self> {
        if indices.contains(&0) {
            return Err(Error::Parse("α-index 0 is not a free operation".into()));
        }
        Ok(AlphaWord(indices))
    }

    pub(crate) fn from_raw(indices: Vec<u32>) -> Self {
        AlphaWord(indices)
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Normal form: `t₁ <= t₂ <= … <= t_r`.
    pub fn is_normal(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// True if some step is α₀, the divided square.
    pub fn has_divided_square(&self) -> bool {
        self.0.contains(&0)
    }

    pub fn prepend(&self, t: u32) -> AlphaWord {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(t);
        v.extend_from_slice(&self.0);
        AlphaWord(v)
    }
}

impl fmt::Display for AlphaWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("id");
        }
        for (k, t) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "a{t}")?;
        }
        Ok(())
    }
}

/// Homotopy degree of the class a word is applied to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct SourceDegree(u32);

impl SourceDegree {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::precondition("source degree must be at least 1"));
        }
        Ok(SourceDegree(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for SourceDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Converts to α-indexing at source degree `n`.
///
/// Fails if some step has its δ-index outside `[2, current degree]`.
/// A step with index equal to the current degree becomes α₀.
pub fn delta_to_alpha(word: &DeltaWord, n: SourceDegree) -> Result<AlphaWord> {
    let mut m = n.get();
    let mut out = Vec::with_capacity(word.len());
    for &i in word.indices().iter().rev() {
        if i < 2 || i > m {
            return Err(Error::IndexOutOfRange {
                index: i as i64,
                lo: 2,
                hi: m as i64,
                degree: m,
            });
        }
        out.push(m - i);
        m = m
            .checked_add(i)
            .ok_or_else(|| Error::precondition("degree overflow"))?;
    }
    out.reverse();
    Ok(AlphaWord(out))
}

/// Inverse of [`delta_to_alpha`] at the same source degree.
pub fn alpha_to_delta(word: &AlphaWord, n: SourceDegree) -> Result<DeltaWord> {
    let mut m = n.get();
    let mut out = Vec::with_capacity(word.len());
    for &t in word.indices().iter().rev() {
        // α_t on degree m is δ_{m-t}, defined for 0 <= t <= m - 2.
        if t + 2 > m {
            return Err(Error::IndexOutOfRange {
                index: t as i64,
                lo: 0,
                hi: m as i64 - 2,
                degree: m,
            });
        }
        let i = m - t;
        out.push(i);
        m = m
            .checked_add(i)
            .ok_or_else(|| Error::precondition("degree overflow"))?;
    }
    out.reverse();
    Ok(DeltaWord(out))
}

/// A word as written on the command line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedWord {
    /// `d4 d2`, optionally followed by `@n`.
    Delta(DeltaWord, Option<SourceDegree>),
    /// `a1 a1 @3`; the source degree is mandatory.
    Alpha(AlphaWord, SourceDegree),
}

impl ParsedWord {
    /// The word in δ-form, checked for applicability when a degree is given.
    pub fn to_delta(&self) -> Result<DeltaWord> {
        match self {
            ParsedWord::Delta(w, None) => Ok(w.clone()),
            ParsedWord::Delta(w, Some(n)) => {
                // reuse the conversion for its range check
                delta_to_alpha(w, *n)?;
                Ok(w.clone())
            }
            ParsedWord::Alpha(a, n) => alpha_to_delta(a, *n),
        }
    }

    pub fn source_degree(&self) -> Option<SourceDegree> {
        match self {
            ParsedWord::Delta(_, n) => *n,
            ParsedWord::Alpha(_, n) => Some(*n),
        }
    }
}

impl FromStr for ParsedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut delta = Vec::new();
        let mut alpha = Vec::new();
        let mut degree = None;
        for tok in s.split_whitespace() {
            let (head, rest) = tok.split_at(tok.chars().next().map_or(0, char::len_utf8));
            let value = |r: &str| {
                r.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad token `{tok}`")))
            };
            match head {
                "d" | "δ" => delta.push(value(rest)?),
                "a" | "α" => alpha.push(value(rest)?),
                "@" => {
                    if degree.is_some() {
                        return Err(Error::Parse("source degree given twice".into()));
                    }
                    degree = Some(value(rest)?);
                }
                _ => return Err(Error::Parse(format!("bad token `{tok}`"))),
            }
        }
        if !delta.is_empty() && !alpha.is_empty() {
            return Err(Error::Parse(
                "cannot mix δ- and α-indices in one word".into(),
            ));
        }
        let degree = degree
            .map(|n| {
                SourceDegree::new(n)
                    .map_err(|_| Error::Parse("source degree must be at least 1".into()))
            })
            .transpose()?;
        if !alpha.is_empty() {
            let n =
                degree.ok_or_else(|| Error::Parse("α-words need a source degree `@n`".into()))?;
            if alpha.contains(&0) {
                return Err(Error::Parse("α-indices must be at least 1".into()));
            }
            return Ok(ParsedWord::Alpha(AlphaWord(alpha), n));
        }
        Ok(ParsedWord::Delta(DeltaWord::new(delta)?, degree))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dw(v: &[u32]) -> DeltaWord {
        DeltaWord::new(v.to_vec()).unwrap()
    }

    fn n(k: u32) -> SourceDegree {
        SourceDegree::new(k).unwrap()
    }

    #[test]
    fn admissibility() {
        assert!(dw(&[8, 4, 2]).is_admissible());
        assert!(!dw(&[4, 3]).is_admissible());
        assert!(dw(&[]).is_admissible());
        assert!(dw(&[7]).is_admissible());
    }

    #[test]
    fn applicability() {
        assert!(dw(&[2]).is_applicable(n(3)));
        assert!(dw(&[4, 2]).is_applicable(n(3)));
        assert!(!dw(&[5]).is_applicable(n(3)));
        assert!(dw(&[]).is_applicable(n(1)));
        assert!(!dw(&[2]).is_applicable(n(1)));
    }

    #[test]
    fn conversions() {
        assert_eq!(
            delta_to_alpha(&dw(&[4, 2]), n(3)).unwrap().indices(),
            &[1, 1]
        );
        assert_eq!(delta_to_alpha(&dw(&[2]), n(3)).unwrap().indices(), &[1]);
        let top = delta_to_alpha(&dw(&[3]), n(3)).unwrap();
        assert_eq!(top.indices(), &[0]);
        assert!(top.has_divided_square());
        assert!(delta_to_alpha(&dw(&[5]), n(3)).is_err());

        let a = |v: &[u32]| AlphaWord::new(v.to_vec()).unwrap();
        assert_eq!(alpha_to_delta(&a(&[1, 1]), n(3)).unwrap(), dw(&[4, 2]));
        assert_eq!(alpha_to_delta(&a(&[1]), n(5)).unwrap(), dw(&[4]));
        assert_eq!(alpha_to_delta(&a(&[2, 1]), n(4)).unwrap(), dw(&[5, 3]));
        // α₂ needs degree >= 4
        assert!(alpha_to_delta(&a(&[2]), n(3)).is_err());
    }

    #[test]
    fn stats() {
        assert_eq!(dw(&[4, 2]).statistics(), (6, 2, 4));
        assert_eq!(dw(&[2]).statistics(), (2, 2, 2));
        assert_eq!(dw(&[]).statistics(), (0, 0, 1));
    }

    #[test]
    fn parsing() {
        assert_eq!(
            "d4 d2".parse::<ParsedWord>().unwrap(),
            ParsedWord::Delta(dw(&[4, 2]), None)
        );
        let p: ParsedWord = "a1 a1 @3".parse().unwrap();
        assert_eq!(p.to_delta().unwrap(), dw(&[4, 2]));
        assert!("d1".parse::<ParsedWord>().is_err());
        assert!("a0 @3".parse::<ParsedWord>().is_err());
        assert!("a1".parse::<ParsedWord>().is_err());
        assert!("d4 a1 @3".parse::<ParsedWord>().is_err());
        assert!("x4".parse::<ParsedWord>().is_err());
        assert_eq!(
            "".parse::<ParsedWord>().unwrap(),
            ParsedWord::Delta(dw(&[]), None)
        );
        let bad: ParsedWord = "d5 @3".parse().unwrap();
        assert!(matches!(bad.to_delta(), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn display() {
        assert_eq!(dw(&[4, 2]).to_string(), "d4 d2");
        assert_eq!(dw(&[4, 2]).tuple_string(), "(4 2)");
        assert_eq!(dw(&[]).tuple_string(), "()");
    }

    /// All words applicable at `n` with degree at most `max`.
    fn applicable_words(n: u32, max: u32) -> Vec<DeltaWord> {
        fn rec(m: u32, deg: u32, max: u32, inner: &mut Vec<u32>, out: &mut Vec<DeltaWord>) {
            let mut w = inner.clone();
            w.reverse();
            out.push(DeltaWord::from_valid(w));
            for i in 2..=m {
                if deg + i > max {
                    break;
                }
                inner.push(i);
                rec(m + i, deg + i, max, inner, out);
                inner.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, 0, max, &mut Vec::new(), &mut out);
        out
    }

    #[test]
    fn roundtrip_exhaustive() {
        for k in 1..=12 {
            for w in applicable_words(k, 22) {
                let a = delta_to_alpha(&w, n(k)).unwrap();
                assert_eq!(alpha_to_delta(&a, n(k)).unwrap(), w);
            }
        }
    }

    #[test]
    fn admissible_low_excess_is_alpha_normal() {
        for k in 1..=9u32 {
            for w in applicable_words(k, 26) {
                let a = delta_to_alpha(&w, n(k)).unwrap();
                let lhs = w.is_admissible() && w.excess() < k as i64;
                let rhs = a.is_normal() && a.indices().iter().all(|&t| t >= 1 && t + 2 <= k);
                assert_eq!(lhs, rhs, "{w} at {k} -> {a}");
            }
        }
    }

    #[test]
    fn prepending_alpha_one_keeps_normal() {
        for k in 3..=8u32 {
            for w in applicable_words(k, 24) {
                let a = delta_to_alpha(&w, n(k)).unwrap();
                if a.is_normal() && !a.has_divided_square() {
                    assert!(a.prepend(1).is_normal());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn concat_statistics(a in prop::collection::vec(2u32..20, 0..5), b in prop::collection::vec(2u32..20, 0..5)) {
            let (a, b) = (dw(&a), dw(&b));
            let c = a.concat(&b);
            prop_assert_eq!(c.weight(), a.weight() * b.weight());
            prop_assert_eq!(c.degree(), a.degree() + b.degree());
        }
    }
}
