//! Homotopy of free simplicial algebras and the E¹ page of Quillen's
//! spectral sequence.
//!
//! The homotopy of the free algebra on one class `ι_n` of degree `n` is the
//! free divided power algebra on the classes `δ_I(ι_n)` with `I` admissible
//! and `excess(I) < n`. For a graded vector space `W` the same construction
//! applied to every basis element gives `𝒮(W)`, graded by degree and by
//! weight (`wt(w) = 1`, `wt(xy) = wt x + wt y`, `wt(δ_i x) = 2 wt x`).
//! The weight-`s`, degree-`t` part is `E¹_{s,t}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::adem::normalize;
use crate::error::{Error, Result};
use crate::gamma::{self, for_each_monomial, GammaElement, GammaMonomial, GradedGenerator};
use crate::gf2::DimensionSeries;
use crate::words::{alpha_to_delta, AlphaWord, DeltaWord, SourceDegree};

/// A free generator `δ_I(w)`: `I` admissible with `excess(I) < deg w`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SphereGenerator {
    base: String,
    source: SourceDegree,
    word: DeltaWord,
}

impl SphereGenerator {
    pub fn new(base: impl Into<String>, source: SourceDegree, word: DeltaWord) -> Result<Self> {
        let n = source.get() as i64;
        if !word.is_admissible() || word.excess() >= n {
            return Err(Error::precondition(format!(
                "{} is not an admissible word of excess < {n}",
                word.tuple_string()
            )));
        }
        Ok(SphereGenerator {
            base: base.into(),
            source,
            word,
        })
    }

    /// The fundamental class `ι_n`, printed as `i<n>`.
    pub fn iota(n: SourceDegree) -> Self {
        SphereGenerator {
            base: format!("i{n}"),
            source: n,
            word: DeltaWord::identity(),
        }
    }

    /// `δ_I ι_n`, named like [`SphereGenerator::iota`].
    pub fn on_iota(n: SourceDegree, word: DeltaWord) -> Result<Self> {
        Self::new(format!("i{n}"), n, word)
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn source(&self) -> SourceDegree {
        self.source
    }

    pub fn word(&self) -> &DeltaWord {
        &self.word
    }

    /// Splits an admissible word applied to a class of degree `source` into a
    /// free generator and a divided-power level.
    ///
    /// Leading operations that are the divided square of what follows
    /// (excess exactly `source`) become levels; words of larger excess are
    /// zero on the class and give `None`.
    fn from_applied(base: &str, source: SourceDegree, word: &DeltaWord) -> Option<(Self, u32)> {
        let n = source.get() as i64;
        let idx = word.indices();
        let mut level = 0u32;
        let mut start = 0usize;
        loop {
            let tail = DeltaWord::from_valid(idx[start..].to_vec());
            let e = tail.excess();
            if tail.is_empty() || e < n {
                let generator = SphereGenerator {
                    base: base.to_owned(),
                    source,
                    word: tail,
                };
                return Some((generator, level));
            }
            if e > n {
                return None;
            }
            level += 1;
            start += 1;
        }
    }
}

impl GradedGenerator for SphereGenerator {
    fn degree(&self) -> u32 {
        self.source.get() + self.word.degree()
    }

    fn weight(&self) -> u64 {
        self.word.weight()
    }
}

impl fmt::Display for SphereGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            f.write_str(&self.base)
        } else {
            write!(f, "{}({})", self.word, self.base)
        }
    }
}

/// Admissible words of excess `< n` and degree at most `max_word_degree`,
/// ordered by degree and then lexicographically.
pub fn admissible_words(n: SourceDegree, max_word_degree: u32) -> Vec<DeltaWord> {
    fn extend(inner: &[u32], degree: u32, n: u32, max: u32, out: &mut Vec<DeltaWord>) {
        out.push(DeltaWord::from_valid(inner.to_vec()));
        let lo = inner.first().map_or(2, |&j| 2 * j);
        // new excess i - degree must stay below n
        let hi = (n - 1 + degree).min(max - degree);
        for i in lo..=hi {
            let mut w = Vec::with_capacity(inner.len() + 1);
            w.push(i);
            w.extend_from_slice(inner);
            extend(&w, degree + i, n, max, out);
        }
    }
    let mut out = Vec::new();
    extend(&[], 0, n.get(), max_word_degree, &mut out);
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    out
}

/// Free generators `δ_I(ι_n)` of degree at most `max_degree`.
pub fn sphere_generators(n: SourceDegree, max_degree: u32) -> Vec<SphereGenerator> {
    let budget = max_degree.saturating_sub(n.get());
    if max_degree < n.get() {
        return Vec::new();
    }
    admissible_words(n, budget)
        .into_iter()
        .map(|word| SphereGenerator {
            base: format!("i{n}"),
            source: n,
            word,
        })
        .collect()
}

/// Dimensions of `π_t S(n)` for `t <= max_degree`.
pub fn sphere_poincare(n: SourceDegree, max_degree: u32) -> DimensionSeries {
    gamma::poincare(&sphere_generators(n, max_degree), max_degree)
}

/// A graded vector space given by named basis elements of positive degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedVectorSpace {
    pub generators: Vec<BasisElement>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElement {
    pub name: String,
    pub degree: u32,
}

impl GradedVectorSpace {
    pub fn new(generators: impl IntoIterator<Item = (String, u32)>) -> Result<Self> {
        let space = GradedVectorSpace {
            generators: generators
                .into_iter()
                .map(|(name, degree)| BasisElement { name, degree })
                .collect(),
        };
        space.validate()?;
        Ok(space)
    }

    /// Parses `{"generators":[{"name":"y","degree":4}]}`.
    pub fn from_json(json: &str) -> Result<Self> {
        let space: GradedVectorSpace = serde_json::from_str(json)?;
        space.validate()?;
        Ok(space)
    }

    fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for g in &self.generators {
            if g.degree == 0 {
                return Err(Error::precondition(format!(
                    "`{}` has degree 0; W must be connected",
                    g.name
                )));
            }
            if !seen.insert(&g.name) {
                return Err(Error::precondition(format!(
                    "duplicate generator `{}`",
                    g.name
                )));
            }
        }
        Ok(())
    }
}

/// Basis of `E¹_{s,t}` for `s <= s_max`, `t <= t_max`, nonzero entries only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E1Page {
    s_max: u64,
    t_max: u32,
    entries: BTreeMap<(u64, u32), Vec<GammaMonomial<SphereGenerator>>>,
}

impl E1Page {
    pub fn s_max(&self) -> u64 {
        self.s_max
    }

    pub fn t_max(&self) -> u32 {
        self.t_max
    }

    pub fn basis(&self, s: u64, t: u32) -> &[GammaMonomial<SphereGenerator>] {
        self.entries.get(&(s, t)).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, s: u64, t: u32) -> usize {
        self.basis(s, t).len()
    }

    /// Nonzero entries ordered by `s`, then `t`.
    pub fn entries(&self) -> impl Iterator<Item = ((u64, u32), &[GammaMonomial<SphereGenerator>])> {
        self.entries.iter().map(|(&k, v)| (k, v.as_slice()))
    }
}

/// The E¹ page `𝒮_s(W)_t` for a connected `W`.
pub fn e1_page(space: &GradedVectorSpace, s_max: u64, t_max: u32) -> Result<E1Page> {
    space.validate()?;
    let mut generators = Vec::new();
    for w in &space.generators {
        let n = SourceDegree::new(w.degree)?;
        if w.degree > t_max {
            continue;
        }
        for word in admissible_words(n, t_max - w.degree) {
            if word.weight() > s_max {
                continue;
            }
            generators.push(SphereGenerator {
                base: w.name.clone(),
                source: n,
                word,
            });
        }
    }
    let mut entries: BTreeMap<(u64, u32), Vec<_>> = BTreeMap::new();
    for_each_monomial(&generators, t_max as u64, Some(s_max), |m, deg, wt| {
        entries.entry((wt, deg as u32)).or_default().push(m.clone());
    });
    for v in entries.values_mut() {
        v.sort_by_cached_key(|m| m.to_string());
    }
    Ok(E1Page {
        s_max,
        t_max,
        entries,
    })
}

/// The operation `δ_i` on a basis monomial of degree `t`, `2 <= i <= t`.
///
/// `δ_t` is the divided square. Below the top, `δ_i` kills products of
/// positive-degree classes; on `γ_{2^e}(δ_I w)` it is computed by writing the
/// divided powers as the composite of top operations and normalizing.
pub fn delta_on_e1(
    x: &GammaMonomial<SphereGenerator>,
    i: u32,
) -> Result<GammaElement<SphereGenerator>> {
    let t = x.degree();
    if i < 2 || i as u64 > t {
        return Err(Error::IndexOutOfRange {
            index: i as i64,
            lo: 2,
            hi: t as i64,
            degree: t as u32,
        });
    }
    if i as u64 == t {
        return x.gamma_power(2);
    }
    let Some((g, level)) = x.single_factor() else {
        return Ok(GammaElement::zero());
    };
    let d = g.degree();
    let mut ops = Vec::with_capacity(1 + *level as usize + g.word.len());
    ops.push(i);
    ops.extend((0..*level).rev().map(|e| d << e));
    ops.extend_from_slice(g.word.indices());
    let composite = DeltaWord::from_valid(ops);

    let mut out = GammaElement::zero();
    for term in normalize(&composite).iter() {
        if let Some((generator, extra)) = SphereGenerator::from_applied(&g.base, g.source, term) {
            out += GammaMonomial::level(generator, extra)?.into();
        }
    }
    Ok(out)
}

/// The André operation `ϑ = α₁ = δ_{m-1}` on a homogeneous element of degree `m >= 3`.
pub fn vartheta(x: &GammaElement<SphereGenerator>) -> Result<GammaElement<SphereGenerator>> {
    if x.is_zero() {
        return Ok(GammaElement::zero());
    }
    let m = x
        .homogeneous_degree()
        .ok_or_else(|| Error::precondition("ϑ needs a homogeneous element"))?;
    if m < 3 {
        return Err(Error::precondition(format!("ϑ needs degree >= 3, got {m}")));
    }
    let mut out = GammaElement::zero();
    for mono in x.iter() {
        out += delta_on_e1(mono, (m - 1) as u32)?;
    }
    Ok(out)
}

/// `q_Γ(ϑ^k(start))` for `k = 0..=steps`, starting from `δ_I(ι_n)`.
///
/// Classes of degree at most 2 carry no André operation, so the iteration
/// continues with zero from there.
pub fn vartheta_iterate_qgamma(
    n: SourceDegree,
    start: &DeltaWord,
    steps: usize,
) -> Result<Vec<GammaElement<SphereGenerator>>> {
    let generator = SphereGenerator::on_iota(n, start.clone())?;
    let mut current = GammaElement::from(GammaMonomial::generator(generator));
    let mut out = Vec::with_capacity(steps + 1);
    out.push(current.q_gamma());
    for _ in 0..steps {
        current = match current.homogeneous_degree() {
            Some(m) if m >= 3 => vartheta(&current)?,
            _ => GammaElement::zero(),
        };
        out.push(current.q_gamma());
    }
    Ok(out)
}

/// `α_{n-2}^t(ι_n)` as a free generator.
pub fn alpha_power(n: SourceDegree, t: usize) -> Result<SphereGenerator> {
    if n.get() < 3 {
        return Err(Error::precondition("α_{n-2} needs n >= 3"));
    }
    let word = alpha_to_delta(&AlphaWord::new(vec![n.get() - 2; t])?, n)?;
    SphereGenerator::on_iota(n, word)
}
