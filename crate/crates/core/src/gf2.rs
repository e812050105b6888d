//! Arithmetic over the two-element field.
//!
//! Everything in this crate is computed mod 2. Dimensions of graded objects
//! over any field of characteristic 2 agree with the ones computed here, so no
//! general field arithmetic is provided.

use std::collections::btree_set;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use serde::Serialize;

use crate::error::{Error, Result};

/// An element of GF(2).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Bit(bool);

impl Bit {
    pub const ZERO: Bit = Bit(false);
    pub const ONE: Bit = Bit(true);

    pub fn is_one(self) -> bool {
        self.0
    }

    pub fn is_zero(self) -> bool {
        !self.0
    }
}

impl From<bool> for Bit {
    fn from(b: bool) -> Self {
        Bit(b)
    }
}

impl From<Bit> for u8 {
    fn from(b: Bit) -> Self {
        b.0 as u8
    }
}

impl Add for Bit {
    type Output = Bit;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Bit) -> Bit {
        Bit(self.0 ^ rhs.0)
    }
}

impl AddAssign for Bit {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Bit) {
        self.0 ^= rhs.0;
    }
}

impl Mul for Bit {
    type Output = Bit;
    fn mul(self, rhs: Bit) -> Bit {
        Bit(self.0 && rhs.0)
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0 as u8)
    }
}

/// `binom(h, k) mod 2` by the digit rule: odd iff every binary digit of `k`
/// is at most the corresponding digit of `h`. Zero when `k > h`.
pub fn binom_mod2(h: u64, k: u64) -> Bit {
    Bit(k & !h == 0)
}

/// Signed variant for relation coefficients whose indices may leave the
/// natural range; negative arguments give zero.
pub(crate) fn binom_mod2_signed(h: i64, k: i64) -> Bit {
    if h < 0 || k < 0 {
        Bit::ZERO
    } else {
        binom_mod2(h as u64, k as u64)
    }
}

/// A truncated Poincaré series: `coefficients[d]` is the dimension in degree `d`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionSeries {
    coefficients: Vec<u64>,
}

impl DimensionSeries {
    /// The series `1` truncated at `max_degree`.
    pub fn unit(max_degree: u32) -> Self {
        let mut coefficients = vec![0; max_degree as usize + 1];
        coefficients[0] = 1;
        DimensionSeries { coefficients }
    }

    pub fn zero(max_degree: u32) -> Self {
        DimensionSeries {
            coefficients: vec![0; max_degree as usize + 1],
        }
    }

    pub fn from_coefficients(coefficients: Vec<u64>) -> Self {
        assert!(!coefficients.is_empty(), "a series needs degree 0");
        DimensionSeries { coefficients }
    }

    pub fn max_degree(&self) -> u32 {
        (self.coefficients.len() - 1) as u32
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn get(&self, degree: u32) -> u64 {
        self.coefficients.get(degree as usize).copied().unwrap_or(0)
    }

    pub(crate) fn bump(&mut self, degree: u32) {
        self.coefficients[degree as usize] += 1;
    }

    /// Multiplies in place by `1 + t^d`, dropping terms past the truncation.
    fn mul_one_plus(&mut self, d: usize) {
        for deg in (d..self.coefficients.len()).rev() {
            self.coefficients[deg] += self.coefficients[deg - d];
        }
    }
}

impl fmt::Display for DimensionSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.coefficients {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Dimension series of the free divided power algebra on generators of the
/// given degrees, as a product of exterior factors.
///
/// Over GF(2) a divided power algebra on a generator `x` of degree `d >= 2`
/// splits as the exterior algebra on `γ_{2^e}(x)`, `e >= 0`, so its series is
/// `∏_e (1 + t^{2^e d})`. A degree-1 generator contributes `1 + t` only.
pub fn series_product_exterior(
    generator_degrees: &[u32],
    max_degree: u32,
) -> Result<DimensionSeries> {
    let mut series = DimensionSeries::unit(max_degree);
    let max = max_degree as u64;
    for &d in generator_degrees {
        if d == 0 {
            return Err(Error::precondition(
                "generator of degree 0 (the unit is implicit)",
            ));
        }
        if d == 1 {
            if max >= 1 {
                series.mul_one_plus(1);
            }
            continue;
        }
        let mut level_degree = d as u64;
        while level_degree <= max {
            series.mul_one_plus(level_degree as usize);
            level_degree *= 2;
        }
    }
    Ok(series)
}

/// A formal GF(2) linear combination of keys.
///
/// Coefficients are implicit: a key is either present (coefficient 1) or
/// absent. Adding a key that is already present cancels it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Sum<K: Ord> {
    keys: BTreeSet<K>,
}

impl<K: Ord> Default for F2Sum<K> {
    fn default() -> Self {
        F2Sum {
            keys: BTreeSet::new(),
        }
    }
}

impl<K: Ord> F2Sum<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn singleton(key: K) -> Self {
        let mut keys = BTreeSet::new();
        keys.insert(key);
        F2Sum { keys }
    }

    pub fn is_zero(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn contains(&self, key: &K) -> bool {
        self.keys.contains(key)
    }

    /// Adds a single key with coefficient 1.
    pub fn toggle(&mut self, key: K) {
        if !self.keys.remove(&key) {
            self.keys.insert(key);
        }
    }

    pub fn iter(&self) -> btree_set::Iter<'_, K> {
        self.keys.iter()
    }

    pub fn into_keys(self) -> BTreeSet<K> {
        self.keys
    }

    /// Applies `f` to every key and sums the images.
    pub fn flat_map<L: Ord, F>(&self, mut f: F) -> F2Sum<L>
    where
        F: FnMut(&K) -> F2Sum<L>,
    {
        let mut out = F2Sum::zero();
        for k in &self.keys {
            out += f(k);
        }
        out
    }
}

impl<K: Ord + Clone> F2Sum<K> {
    pub fn first(&self) -> Option<&K> {
        self.keys.iter().next()
    }
}

impl<K: Ord> AddAssign for F2Sum<K> {
    fn add_assign(&mut self, rhs: Self) {
        for k in rhs.keys {
            self.toggle(k);
        }
    }
}

impl<K: Ord + Clone> AddAssign<&F2Sum<K>> for F2Sum<K> {
    fn add_assign(&mut self, rhs: &F2Sum<K>) {
        for k in &rhs.keys {
            self.toggle(k.clone());
        }
    }
}

impl<K: Ord> Add for F2Sum<K> {
    type Output = F2Sum<K>;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<K: Ord> FromIterator<K> for F2Sum<K> {
    /// Sums the keys, so repeated keys cancel in pairs.
    fn from_iter<I: IntoIterator<Item = K>>(iter: I) -> Self {
        let mut out = F2Sum::zero();
        for k in iter {
            out.toggle(k);
        }
        out
    }
}

impl<K: Ord> Extend<K> for F2Sum<K> {
    fn extend<I: IntoIterator<Item = K>>(&mut self, iter: I) {
        for k in iter {
            self.toggle(k);
        }
    }
}

impl<'a, K: Ord> IntoIterator for &'a F2Sum<K> {
    type Item = &'a K;
    type IntoIter = btree_set::Iter<'a, K>;
    fn into_iter(self) -> Self::IntoIter {
        self.keys.iter()
    }
}

impl<K: Ord> IntoIterator for F2Sum<K> {
    type Item = K;
    type IntoIter = btree_set::IntoIter<K>;
    fn into_iter(self) -> Self::IntoIter {
        self.keys.into_iter()
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for F2Sum<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.keys.iter()).finish()
    }
}

impl<K: Ord + fmt::Display> fmt::Display for F2Sum<K> {
    /// Terms joined by ` + `, or `0` for the empty sum.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.keys.is_empty() {
            return f.write_str("0");
        }
        for (idx, k) in self.keys.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}
