//! Free divided power algebras over GF(2).
//!
//! A basis monomial is a square-free product of factors `γ_{2^e}(g)`. Any
//! `γ_k(g)` is the product of the factors for the binary digits of `k`
//! (the structure constants `binom(h+k, h)` are odd exactly when `h` and `k`
//! share no binary digit), so square-freeness in `(g, e)` is the only
//! relation. Degree-1 generators are exterior: only level 0 exists.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{DimensionSeries, F2Sum};

/// A generator of a free divided power algebra.
pub trait GradedGenerator: Ord + Clone + fmt::Display {
    fn degree(&self) -> u32;

    fn weight(&self) -> u64 {
        1
    }
}

/// A named generator with explicit degree and weight.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    #[serde(default = "default_weight")]
    pub weight: u64,
}

fn default_weight() -> u64 {
    1
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
            weight: 1,
        }
    }

    pub fn with_weight(mut self, weight: u64) -> Self {
        self.weight = weight;
        self
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl GradedGenerator for Generator {
    fn degree(&self) -> u32 {
        self.degree
    }

    fn weight(&self) -> u64 {
        self.weight
    }
}

/// Parses a JSON list of `{name, degree, weight?}` objects.
pub fn generators_from_json(json: &str) -> Result<Vec<Generator>> {
    let gens: Vec<Generator> = serde_json::from_str(json)?;
    validate_generators(&gens)?;
    Ok(gens)
}

pub(crate) fn validate_generators(gens: &[Generator]) -> Result<()> {
    let mut names = BTreeSet::new();
    for g in gens {
        if g.degree == 0 {
            return Err(Error::precondition(format!(
                "generator `{}` has degree 0",
                g.name
            )));
        }
        if g.weight == 0 {
            return Err(Error::precondition(format!(
                "generator `{}` has weight 0",
                g.name
            )));
        }
        if !names.insert(&g.name) {
            return Err(Error::precondition(format!(
                "duplicate generator `{}`",
                g.name
            )));
        }
    }
    Ok(())
}

/// A square-free product of factors `γ_{2^e}(g)`, stored as `(g, e)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaMonomial<G: Ord> {
    factors: BTreeSet<(G, u32)>,
}

impl<G: GradedGenerator> GammaMonomial<G> {
    pub fn unit() -> Self {
        GammaMonomial {
            factors: BTreeSet::new(),
        }
    }

    pub fn generator(g: G) -> Self {
        let mut factors = BTreeSet::new();
        factors.insert((g, 0));
        GammaMonomial { factors }
    }

    /// The single factor `γ_{2^level}(g)`.
    pub fn level(g: G, level: u32) -> Result<Self> {
        if level > 0 && g.degree() < 2 {
            return Err(Error::precondition(format!(
                "degree-1 generator `{g}` has no divided powers"
            )));
        }
        let mut factors = BTreeSet::new();
        factors.insert((g, level));
        Ok(GammaMonomial { factors })
    }

    /// Builds a monomial from factor pairs; `None` if a pair repeats.
    pub fn from_factors(pairs: impl IntoIterator<Item = (G, u32)>) -> Result<Option<Self>> {
        let mut factors = BTreeSet::new();
        for (g, e) in pairs {
            if e > 0 && g.degree() < 2 {
                return Err(Error::precondition(format!(
                    "degree-1 generator `{g}` has no divided powers"
                )));
            }
            if !factors.insert((g, e)) {
                return Ok(None);
            }
        }
        Ok(Some(GammaMonomial { factors }))
    }

    pub fn factors(&self) -> impl Iterator<Item = &(G, u32)> {
        self.factors.iter()
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// The factor of a one-factor monomial.
    pub fn single_factor(&self) -> Option<&(G, u32)> {
        if self.factors.len() == 1 {
            self.factors.iter().next()
        } else {
            None
        }
    }

    /// `Σ 2^e · deg(g)`.
    pub fn degree(&self) -> u64 {
        self.factors
            .iter()
            .map(|(g, e)| (g.degree() as u64) << e)
            .sum()
    }

    /// `Σ 2^e · wt(g)`.
    pub fn weight(&self) -> u64 {
        self.factors.iter().map(|(g, e)| g.weight() << e).sum()
    }

    /// Product of two monomials, or `None` when a factor `(g, e)` collides
    /// (`γ_{2^e}(g)² = binom(2^{e+1}, 2^e) γ_{2^{e+1}}(g) = 0`).
    pub fn checked_mul(&self, other: &Self) -> Option<Self> {
        let mut factors = self.factors.clone();
        for f in &other.factors {
            if !factors.insert(f.clone()) {
                return None;
            }
        }
        Some(GammaMonomial { factors })
    }

    /// `γ_k` of this monomial.
    ///
    /// Products of two or more positive-degree factors have vanishing divided
    /// powers for `k >= 2`; on a single factor `γ_k(γ_{2^e}(g)) = γ_{k·2^e}(g)`.
    pub fn gamma_power(&self, k: u64) -> Result<GammaElement<G>> {
        match k {
            0 => return Ok(GammaElement::one()),
            1 => return Ok(GammaElement::from(self.clone())),
            _ => {}
        }
        if self.degree() < 2 {
            return Err(Error::precondition(format!(
                "γ_{k} needs degree >= 2, got `{self}` of degree {}",
                self.degree()
            )));
        }
        let Some((g, e)) = self.single_factor() else {
            return Ok(GammaElement::zero());
        };
        let mut factors = BTreeSet::new();
        let mut bits = k;
        let mut level = *e;
        while bits > 0 {
            if bits & 1 == 1 {
                factors.insert((g.clone(), level));
            }
            bits >>= 1;
            level += 1;
        }
        Ok(GammaElement::from(GammaMonomial { factors }))
    }
}

impl<G: GradedGenerator> fmt::Display for GammaMonomial<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (idx, (g, e)) in self.factors.iter().enumerate() {
            if idx > 0 {
                f.write_str("*")?;
            }
            if *e == 0 {
                write!(f, "{g}")?;
            } else {
                write!(f, "g{}({g})", 1u64 << e)?;
            }
        }
        Ok(())
    }
}

/// A GF(2) combination of divided power monomials.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaElement<G: Ord>(F2Sum<GammaMonomial<G>>);

impl<G: Ord> Default for GammaElement<G> {
    fn default() -> Self {
        GammaElement(F2Sum::zero())
    }
}

impl<G: GradedGenerator> From<GammaMonomial<G>> for GammaElement<G> {
    fn from(m: GammaMonomial<G>) -> Self {
        GammaElement(F2Sum::singleton(m))
    }
}

impl<G: GradedGenerator> FromIterator<GammaMonomial<G>> for GammaElement<G> {
    fn from_iter<I: IntoIterator<Item = GammaMonomial<G>>>(iter: I) -> Self {
        GammaElement(iter.into_iter().collect())
    }
}

impl<G: GradedGenerator> GammaElement<G> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        GammaMonomial::unit().into()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn monomials(&self) -> &F2Sum<GammaMonomial<G>> {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &GammaMonomial<G>> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The common degree of all monomials; `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u64> {
        let mut it = self.0.iter().map(GammaMonomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = F2Sum::zero();
        for a in &self.0 {
            for b in &other.0 {
                if let Some(m) = a.checked_mul(b) {
                    out.toggle(m);
                }
            }
        }
        GammaElement(out)
    }

    /// `γ_k(x)`, expanding sums by `γ_k(x + y) = Σ_{r+s=k} γ_r(x) γ_s(y)`.
    pub fn gamma_power(&self, k: u64) -> Result<Self> {
        let terms: Vec<&GammaMonomial<G>> = self.0.iter().collect();
        if k >= 2 {
            if let Some(bad) = terms.iter().find(|m| m.degree() < 2) {
                return Err(Error::precondition(format!(
                    "γ_{k} needs degree >= 2, got term `{bad}`"
                )));
            }
        }
        // powers[a][r] = γ_r(terms[a])
        let powers: Vec<Vec<Self>> = terms
            .iter()
            .map(|m| (0..=k).map(|r| m.gamma_power(r)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        // suffix[r] = γ_r(terms[a..]) built from the last term backwards
        let mut suffix: Vec<Self> = (0..=k)
            .map(|r| if r == 0 { Self::one() } else { Self::zero() })
            .collect();
        for p in powers.iter().rev() {
            let next: Vec<Self> = (0..=k as usize)
                .map(|total| {
                    let mut acc = Self::zero();
                    for r in 0..=total {
                        if p[r].is_zero() || suffix[total - r].is_zero() {
                            continue;
                        }
                        acc += p[r].multiply(&suffix[total - r]);
                    }
                    acc
                })
                .collect();
            suffix = next;
        }
        Ok(suffix.swap_remove(k as usize))
    }

    /// Image in the Γ-indecomposables: keeps exactly the single level-0 factors.
    pub fn q_gamma(&self) -> Self {
        GammaElement(
            self.0
                .iter()
                .filter(|m| matches!(m.single_factor(), Some((_, 0))))
                .cloned()
                .collect(),
        )
    }
}

impl<G: GradedGenerator> AddAssign for GammaElement<G> {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl<G: GradedGenerator> Add for GammaElement<G> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<G: GradedGenerator> fmt::Display for GammaElement<G> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Multiplies two basis monomials.
pub fn multiply<G: GradedGenerator>(a: &GammaMonomial<G>, b: &GammaMonomial<G>) -> GammaElement<G> {
    a.checked_mul(b)
        .map_or_else(GammaElement::zero, GammaElement::from)
}

/// Available factors `(g, e)` with `2^e deg(g) <= max_degree` and, if given,
/// `2^e wt(g) <= max_weight`.
fn factor_pool<G: GradedGenerator>(
    generators: &[G],
    max_degree: u64,
    max_weight: Option<u64>,
) -> Vec<(G, u32)> {
    let mut pool = Vec::new();
    for g in generators {
        let (d, w) = (g.degree() as u64, g.weight());
        let mut e = 0u32;
        while e < 63 && (d << e) <= max_degree && max_weight.is_none_or(|mw| (w << e) <= mw) {
            pool.push((g.clone(), e));
            if d < 2 {
                break;
            }
            e += 1;
        }
    }
    pool
}

/// Visits every monomial whose degree and weight stay within the bounds.
pub(crate) fn for_each_monomial<G: GradedGenerator>(
    generators: &[G],
    max_degree: u64,
    max_weight: Option<u64>,
    mut visit: impl FnMut(&GammaMonomial<G>, u64, u64),
) {
    struct Walk<'a, G: Ord> {
        pool: Vec<(G, u32)>,
        max_degree: u64,
        max_weight: Option<u64>,
        chosen: Vec<(G, u32)>,
        visit: &'a mut dyn FnMut(&GammaMonomial<G>, u64, u64),
    }

    impl<G: GradedGenerator> Walk<'_, G> {
        fn rec(&mut self, start: usize, deg: u64, wt: u64) {
            let m = GammaMonomial {
                factors: self.chosen.iter().cloned().collect(),
            };
            (self.visit)(&m, deg, wt);
            for idx in start..self.pool.len() {
                let (g, e) = &self.pool[idx];
                let d = deg + ((g.degree() as u64) << e);
                let w = wt + (g.weight() << e);
                if d > self.max_degree || self.max_weight.is_some_and(|mw| w > mw) {
                    continue;
                }
                self.chosen.push((g.clone(), *e));
                self.rec(idx + 1, d, w);
                self.chosen.pop();
            }
        }
    }

    Walk {
        pool: factor_pool(generators, max_degree, max_weight),
        max_degree,
        max_weight,
        chosen: Vec::new(),
        visit: &mut visit,
    }
    .rec(0, 0, 0);
}

/// All basis monomials of exactly the given degree, sorted.
pub fn basis<G: GradedGenerator>(generators: &[G], degree: u32) -> Vec<GammaMonomial<G>> {
    let mut out = Vec::new();
    for_each_monomial(generators, degree as u64, None, |m, d, _| {
        if d == degree as u64 {
            out.push(m.clone());
        }
    });
    out.sort();
    out
}

/// Number of basis monomials in each degree up to `max_degree`.
pub fn poincare<G: GradedGenerator>(generators: &[G], max_degree: u32) -> DimensionSeries {
    let mut series = DimensionSeries::zero(max_degree);
    for_each_monomial(generators, max_degree as u64, None, |_, d, _| {
        series.bump(d as u32)
    });
    series
}
