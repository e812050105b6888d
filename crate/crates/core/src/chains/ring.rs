use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `GF(2)[ε₁, …, ε_g] / m^N` with `m = (ε₁, …, ε_g)`.
///
/// A local Artinian ring of characteristic 2 with `m^N = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncatedRing {
    vars: usize,
    trunc: u32,
}

impl TruncatedRing {
    pub fn new(vars: usize, trunc: u32) -> Result<Self> {
        if trunc == 0 {
            return Err(Error::precondition("truncation order must be at least 1"));
        }
        Ok(TruncatedRing { vars, trunc })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn trunc(&self) -> u32 {
        self.trunc
    }

    pub fn one(&self) -> RingMonomial {
        RingMonomial(vec![0; self.vars])
    }

    /// `ε_var^power` with `var` counted from 1; `None` if it is zero in the ring.
    pub fn var_power(&self, var: usize, power: u32) -> Result<Option<RingMonomial>> {
        if var == 0 || var > self.vars {
            return Err(Error::Parse(format!(
                "ring variable e{var} out of range (ring has {} variables)",
                self.vars
            )));
        }
        let mut exps = vec![0; self.vars];
        exps[var - 1] = power;
        Ok(self.reduce(RingMonomial(exps)))
    }

    fn reduce(&self, m: RingMonomial) -> Option<RingMonomial> {
        (m.total_degree() < self.trunc as u64).then_some(m)
    }

    pub fn mul(&self, a: &RingMonomial, b: &RingMonomial) -> Option<RingMonomial> {
        let exps = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        self.reduce(RingMonomial(exps))
    }

    pub fn pow(&self, a: &RingMonomial, k: u32) -> Option<RingMonomial> {
        let exps = a.0.iter().map(|x| x.saturating_mul(k)).collect();
        self.reduce(RingMonomial(exps))
    }
}

/// A monomial `ε^a` by its exponent vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RingMonomial(Vec<u32>);

impl RingMonomial {
    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Whether the monomial lies in the maximal ideal.
    pub fn in_maximal_ideal(&self) -> bool {
        self.total_degree() > 0
    }

    pub fn is_one(&self) -> bool {
        self.total_degree() == 0
    }
}

impl fmt::Display for RingMonomial {
    /// `e1^2*e3`, or `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "e{}", k + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
