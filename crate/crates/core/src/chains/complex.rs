use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign};

use crate::error::{Error, Result};
use crate::gf2::F2Sum;

use super::ring::{RingMonomial, TruncatedRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolId(usize);

/// A product of divided-power factors `γ_{2^e}(x)`, square-free in `(x, e)`.
pub type ChainMonomial = BTreeSet<(SymbolId, u32)>;

/// One basis term: ring coefficient times chain monomial.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChainTerm {
    pub coeff: RingMonomial,
    pub chain: ChainMonomial,
}

/// A GF(2) combination of [`ChainTerm`]s.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct ChainElement(F2Sum<ChainTerm>);

impl ChainElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = &ChainTerm> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn from_term(term: ChainTerm) -> Self {
        ChainElement(F2Sum::singleton(term))
    }
}

impl AddAssign for ChainElement {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl Add for ChainElement {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl FromIterator<ChainTerm> for ChainElement {
    fn from_iter<I: IntoIterator<Item = ChainTerm>>(iter: I) -> Self {
        ChainElement(iter.into_iter().collect())
    }
}

#[derive(Debug, Clone)]
pub struct ChainSymbol {
    pub name: String,
    pub degree: u32,
    pub boundary: ChainElement,
}

/// Free graded-commutative divided power algebra over a [`TruncatedRing`] on
/// declared symbols, with a differential fixed by each symbol's boundary.
///
/// Symbols have positive chain degree; degree-0 content is carried by the
/// ring coefficients. The differential is extended by the Leibniz rule and
/// `∂γ_k(x) = (∂x) γ_{k-1}(x)`.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    ring: TruncatedRing,
    symbols: Vec<ChainSymbol>,
    by_name: HashMap<String, SymbolId>,
}

impl ChainComplex {
    pub fn new(ring: TruncatedRing) -> Self {
        ChainComplex {
            ring,
            symbols: Vec::new(),
            by_name: HashMap::new(),
        }
    }

    pub fn ring(&self) -> &TruncatedRing {
        &self.ring
    }

    pub fn symbols(&self) -> &[ChainSymbol] {
        &self.symbols
    }

    pub fn symbol_id(&self, name: &str) -> Option<SymbolId> {
        self.by_name.get(name).copied()
    }

    pub fn symbol(&self, id: SymbolId) -> &ChainSymbol {
        &self.symbols[id.0]
    }

    /// Declares a symbol. Its boundary may only use symbols declared earlier,
    /// must have degree `degree - 1` and must itself be a cycle.
    pub fn add_symbol(
        &mut self,
        name: &str,
        degree: u32,
        boundary: ChainElement,
    ) -> Result<SymbolId> {
        if !is_symbol_name(name) {
            return Err(Error::Parse(format!(
                "`{name}` is not a valid symbol name (identifiers other than e<k>, g<k>)"
            )));
        }
        if self.by_name.contains_key(name) {
            return Err(Error::precondition(format!("duplicate symbol `{name}`")));
        }
        if degree == 0 {
            return Err(Error::precondition(format!(
                "symbol `{name}` has degree 0; degree-0 content lives in the coefficient ring"
            )));
        }
        if !boundary.is_zero() && self.degree(&boundary) != Some(degree as u64 - 1) {
            return Err(Error::precondition(format!(
                "boundary of `{name}` must be homogeneous of degree {}",
                degree - 1
            )));
        }
        if !self.boundary(&boundary).is_zero() {
            return Err(Error::precondition(format!(
                "boundary of `{name}` is not a cycle"
            )));
        }
        let id = SymbolId(self.symbols.len());
        self.symbols.push(ChainSymbol {
            name: name.to_owned(),
            degree,
            boundary,
        });
        self.by_name.insert(name.to_owned(), id);
        Ok(id)
    }

    pub fn one(&self) -> ChainElement {
        ChainElement::from_term(ChainTerm {
            coeff: self.ring.one(),
            chain: ChainMonomial::new(),
        })
    }

    pub fn scalar(&self, coeff: RingMonomial) -> ChainElement {
        ChainElement::from_term(ChainTerm {
            coeff,
            chain: ChainMonomial::new(),
        })
    }

    pub fn generator(&self, id: SymbolId) -> ChainElement {
        ChainElement::from_term(ChainTerm {
            coeff: self.ring.one(),
            chain: [(id, 0)].into_iter().collect(),
        })
    }

    fn monomial_degree(&self, m: &ChainMonomial) -> u64 {
        m.iter()
            .map(|(id, e)| (self.symbol(*id).degree as u64) << e)
            .sum()
    }

    /// Common chain degree of all terms; `None` for zero or mixed degrees.
    pub fn degree(&self, x: &ChainElement) -> Option<u64> {
        let mut it = x.terms().map(|t| self.monomial_degree(&t.chain));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    fn mul_terms(&self, a: &ChainTerm, b: &ChainTerm) -> Option<ChainTerm> {
        let coeff = self.ring.mul(&a.coeff, &b.coeff)?;
        let mut chain = a.chain.clone();
        for f in &b.chain {
            if !chain.insert(*f) {
                return None;
            }
        }
        Some(ChainTerm { coeff, chain })
    }

    pub fn mul(&self, x: &ChainElement, y: &ChainElement) -> ChainElement {
        let mut out = F2Sum::zero();
        for a in x.terms() {
            for b in y.terms() {
                if let Some(t) = self.mul_terms(a, b) {
                    out.toggle(t);
                }
            }
        }
        ChainElement(out)
    }

    /// `γ_k(x)` for a symbol `x`, as the product of its binary-digit levels.
    pub fn gamma_symbol(&self, id: SymbolId, k: u64) -> Result<ChainElement> {
        let term = ChainTerm {
            coeff: self.ring.one(),
            chain: [(id, 0)].into_iter().collect(),
        };
        self.gamma_term(&term, k)
    }

    /// `∂(γ_{2^e}(x)) = (∂x) γ_{2^e - 1}(x)`, where `γ_{2^e-1}(x)` is the
    /// product of levels `0..e`.
    fn boundary_factor(&self, id: SymbolId, level: u32) -> ChainElement {
        let lower = ChainElement::from_term(ChainTerm {
            coeff: self.ring.one(),
            chain: (0..level).map(|l| (id, l)).collect(),
        });
        self.mul(&self.symbol(id).boundary, &lower)
    }

    pub fn boundary(&self, x: &ChainElement) -> ChainElement {
        let mut out = ChainElement::zero();
        for term in x.terms() {
            for &(id, level) in &term.chain {
                let mut rest = term.chain.clone();
                rest.remove(&(id, level));
                let rest = ChainElement::from_term(ChainTerm {
                    coeff: term.coeff.clone(),
                    chain: rest,
                });
                out += self.mul(&rest, &self.boundary_factor(id, level));
            }
        }
        out
    }

    /// `γ_k` of a single term: `γ_k(c·y) = c^k γ_k(y)`, zero on products of
    /// two or more factors, and `γ_k(γ_{2^e}(x)) = γ_{k·2^e}(x)`.
    fn gamma_term(&self, term: &ChainTerm, k: u64) -> Result<ChainElement> {
        match k {
            0 => return Ok(self.one()),
            1 => return Ok(ChainElement::from_term(term.clone())),
            _ => {}
        }
        let degree = self.monomial_degree(&term.chain);
        if degree < 2 {
            return Err(Error::precondition(format!(
                "γ_{k} needs chain degree >= 2, got a term of degree {degree}"
            )));
        }
        if term.chain.len() != 1 {
            return Ok(ChainElement::zero());
        }
        let Ok(k32) = u32::try_from(k) else {
            return Ok(ChainElement::zero());
        };
        let Some(coeff) = self.ring.pow(&term.coeff, k32) else {
            return Ok(ChainElement::zero());
        };
        let &(id, level) = term.chain.iter().next().expect("one factor");
        let mut chain = ChainMonomial::new();
        let mut bits = k;
        let mut l = level;
        while bits > 0 {
            if bits & 1 == 1 {
                chain.insert((id, l));
            }
            bits >>= 1;
            l += 1;
        }
        Ok(ChainElement::from_term(ChainTerm { coeff, chain }))
    }

    /// `γ_k(x)`, expanding sums by `γ_k(x + y) = Σ_{r+s=k} γ_r(x) γ_s(y)`.
    ///
    /// For `k >= 2` every term must have chain degree at least 2.
    pub fn gamma(&self, k: u64, x: &ChainElement) -> Result<ChainElement> {
        let terms: Vec<&ChainTerm> = x.terms().collect();
        let ku = k as usize;
        let powers: Vec<Vec<ChainElement>> = terms
            .iter()
            .map(|t| {
                (0..=k)
                    .map(|r| self.gamma_term(t, r))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let mut suffix: Vec<ChainElement> = (0..=ku)
            .map(|r| {
                if r == 0 {
                    self.one()
                } else {
                    ChainElement::zero()
                }
            })
            .collect();
        for p in powers.iter().rev() {
            suffix = (0..=ku)
                .map(|total| {
                    let mut acc = ChainElement::zero();
                    for r in 0..=total {
                        if !p[r].is_zero() && !suffix[total - r].is_zero() {
                            acc += self.mul(&p[r], &suffix[total - r]);
                        }
                    }
                    acc
                })
                .collect();
        }
        Ok(suffix.swap_remove(ku))
    }

    /// Drops terms whose chain monomial has two or more factors.
    pub fn modulo_decomposables(&self, x: &ChainElement) -> ChainElement {
        x.terms().filter(|t| t.chain.len() <= 1).cloned().collect()
    }

    /// Least `r` with `γ₂^r(u) = 0`.
    ///
    /// Every coefficient of `u` must lie in the maximal ideal and every term
    /// must have chain degree at least 2. Each application of `γ₂` at least
    /// doubles the minimal coefficient degree, so `r <= ⌈log₂ N⌉`.
    pub fn gamma2_nilpotence_order(&self, u: &ChainElement) -> Result<u32> {
        for t in u.terms() {
            if !t.coeff.in_maximal_ideal() {
                return Err(Error::precondition(format!(
                    "coefficient of `{}` is not in the maximal ideal",
                    self.render_term(t)
                )));
            }
            if self.monomial_degree(&t.chain) < 2 {
                return Err(Error::precondition(format!(
                    "term `{}` has chain degree below 2",
                    self.render_term(t)
                )));
            }
        }
        let mut current = u.clone();
        let mut r = 0u32;
        while !current.is_zero() {
            current = self.gamma(2, &current)?;
            r += 1;
        }
        Ok(r)
    }

    pub fn render_term(&self, t: &ChainTerm) -> String {
        let mut parts = Vec::new();
        if !t.coeff.is_one() {
            parts.push(t.coeff.to_string());
        }
        for &(id, e) in &t.chain {
            let name = &self.symbol(id).name;
            if e == 0 {
                parts.push(name.clone());
            } else {
                parts.push(format!("g{}({name})", 1u64 << e));
            }
        }
        if parts.is_empty() {
            "1".to_owned()
        } else {
            parts.join("*")
        }
    }

    pub fn render(&self, x: &ChainElement) -> String {
        if x.is_zero() {
            return "0".to_owned();
        }
        x.terms()
            .map(|t| self.render_term(t))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses a sum of products such as `e1*x + e2^2*g2(y) + 1`.
    ///
    /// Factors are `0`, `1`, ring variables `e<k>` with optional `^p`,
    /// symbols by name, and divided powers `g<k>(name)`.
    pub fn parse(&self, text: &str) -> Result<ChainElement> {
        let mut out = ChainElement::zero();
        if text.trim().is_empty() {
            return Err(Error::Parse("empty chain expression".into()));
        }
        for term in text.split('+') {
            let mut acc = self.one();
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in `{text}`")));
            }
            for factor in term.split('*') {
                let f = self.parse_factor(factor.trim())?;
                acc = self.mul(&acc, &f);
            }
            out += acc;
        }
        Ok(out)
    }

    fn parse_factor(&self, f: &str) -> Result<ChainElement> {
        let bad = || Error::Parse(format!("bad factor `{f}`"));
        match f {
            "0" => return Ok(ChainElement::zero()),
            "1" => return Ok(self.one()),
            _ => {}
        }
        if let Some(inner) = f.strip_suffix(')') {
            let (head, name) = inner.split_once('(').ok_or_else(bad)?;
            let k: u64 = head
                .strip_prefix('g')
                .ok_or_else(bad)?
                .parse()
                .map_err(|_| bad())?;
            let id = self
                .symbol_id(name.trim())
                .ok_or_else(|| Error::Parse(format!("unknown symbol `{}`", name.trim())))?;
            return self.gamma_symbol(id, k);
        }
        let (base, power) = match f.split_once('^') {
            Some((b, p)) => (b, p.parse::<u32>().map_err(|_| bad())?),
            None => (f, 1),
        };
        if let Some(var) = ring_var(base) {
            return Ok(self
                .ring
                .var_power(var, power)?
                .map_or_else(ChainElement::zero, |m| self.scalar(m)));
        }
        if power != 1 {
            return Err(Error::Parse(format!(
                "powers of chain symbols are not supported: `{f}`"
            )));
        }
        let id = self
            .symbol_id(base)
            .ok_or_else(|| Error::Parse(format!("unknown symbol `{base}`")))?;
        Ok(self.generator(id))
    }
}

fn ring_var(s: &str) -> Option<usize> {
    let digits = s.strip_prefix('e')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

fn is_symbol_name(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    let reserved = |p: char| {
        s.strip_prefix(p)
            .is_some_and(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
    };
    (first.is_alphabetic() || first == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
        && !reserved('e')
        && !reserved('g')
}

impl fmt::Display for SymbolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}
