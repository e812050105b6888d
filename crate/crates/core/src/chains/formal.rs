use serde::Serialize;

use crate::error::{Error, Result};

use super::complex::{ChainComplex, ChainElement, SymbolId};

/// Formal chain-level expressions built from the operators `Θ_i`, `∂` and
/// squaring, reduced by rewrite axioms rather than explicit chain maps.
#[derive(Debug, Clone)]
enum Formal {
    Chain(ChainElement),
    /// `Θ_i(y)`, the chain-level representative of `δ_i` on `y`.
    Theta(u64, Box<Formal>),
    Boundary(Box<Formal>),
    Square(Box<Formal>),
}

impl Formal {
    fn theta(i: u64, inner: Formal) -> Self {
        Formal::Theta(i, Box::new(inner))
    }

    fn boundary(inner: Formal) -> Self {
        Formal::Boundary(Box::new(inner))
    }
}

struct Reducer<'a> {
    complex: &'a ChainComplex,
}

impl Reducer<'_> {
    fn degree(&self, f: &Formal) -> Option<u64> {
        match f {
            Formal::Chain(c) => self.complex.degree(c),
            Formal::Theta(i, y) => Some(self.degree(y)? + i),
            Formal::Boundary(y) => self.degree(y)?.checked_sub(1),
            Formal::Square(y) => Some(2 * self.degree(y)?),
        }
    }

    /// Reduces to a concrete chain, or explains where the axioms run out.
    ///
    /// Axioms:
    /// `∂Θ_i(y) = Θ_i(∂y)` for `2 <= i < deg y`,
    /// `∂Θ_1(y) = Θ_1(∂y) + y²`,
    /// `Θ_n(y) = γ₂(y)` for `n = deg y`,
    /// `∂(y²) = 0`, `∂∂ = 0`, and `Θ_i(0) = 0`.
    fn reduce(&self, f: Formal) -> std::result::Result<ChainElement, String> {
        match f {
            Formal::Chain(c) => Ok(c),
            Formal::Square(y) => {
                let y = self.reduce(*y)?;
                Ok(self.complex.mul(&y, &y))
            }
            Formal::Theta(i, y) => {
                let y = self.reduce(*y)?;
                if y.is_zero() {
                    return Ok(y);
                }
                match self.complex.degree(&y) {
                    Some(d) if d == i => self.complex.gamma(2, &y).map_err(|e| e.to_string()),
                    Some(d) => Err(format!("Θ_{i} on a chain of degree {d} has no reduction")),
                    None => Err(format!("Θ_{i} on an inhomogeneous chain")),
                }
            }
            Formal::Boundary(inner) => match *inner {
                Formal::Chain(c) => Ok(self.complex.boundary(&c)),
                Formal::Boundary(_) | Formal::Square(_) => Ok(ChainElement::zero()),
                Formal::Theta(i, y) => {
                    let dy = self.degree(&y).ok_or("Θ on an inhomogeneous chain")?;
                    if i == dy {
                        // Top operation: reduce to γ₂ first, then take the boundary.
                        let c = self.reduce(Formal::Theta(i, y))?;
                        Ok(self.complex.boundary(&c))
                    } else if i >= 2 && i < dy {
                        self.reduce(Formal::theta(i, Formal::boundary(*y)))
                    } else if i == 1 {
                        let lhs = self.reduce(Formal::theta(1, Formal::boundary((*y).clone())))?;
                        let sq = self.reduce(Formal::Square(y))?;
                        Ok(lhs + sq)
                    } else {
                        Err(format!("∂Θ_{i} on degree {dy} has no axiom"))
                    }
                }
            },
        }
    }
}

/// Outcome of one `∂ϑ^r(u) = γ₂^r(∂u)` check.
#[derive(Debug, Clone, Serialize)]
pub struct NilcondStep {
    pub r: u32,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct NilcondReport {
    pub symbol: String,
    pub degree: u32,
    pub steps: Vec<NilcondStep>,
}

impl NilcondReport {
    pub fn all_hold(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }
}

/// Checks `∂ϑ^r(u) = γ₂^r(∂u)` for `r = 1..=r_max`, where `ϑ` on a class of
/// degree `m` is `Θ_{m-1}`.
///
/// The left side is reduced with the formal axioms only; the right side is
/// computed directly with [`ChainComplex::gamma`].
pub fn verify_nilcond(complex: &ChainComplex, u: SymbolId, r_max: u32) -> Result<NilcondReport> {
    if r_max < 1 {
        return Err(Error::precondition("r_max must be at least 1"));
    }
    let sym = complex.symbol(u);
    if sym.degree < 3 {
        return Err(Error::precondition(format!(
            "`{}` has degree {}; ϑ needs degree >= 3",
            sym.name, sym.degree
        )));
    }
    let reducer = Reducer { complex };
    let mut theta_u = Formal::Chain(complex.generator(u));
    let mut rhs = sym.boundary.clone();
    let mut steps = Vec::new();
    for r in 1..=r_max {
        let m = reducer.degree(&theta_u).expect("homogeneous");
        theta_u = Formal::theta(m - 1, theta_u);
        rhs = complex.gamma(2, &rhs)?;
        let lhs = reducer.reduce(Formal::boundary(theta_u.clone()));
        let (lhs_text, holds) = match lhs {
            Ok(c) => (complex.render(&c), c == rhs),
            Err(stuck) => (format!("irreducible: {stuck}"), false),
        };
        steps.push(NilcondStep {
            r,
            lhs: lhs_text,
            rhs: complex.render(&rhs),
            holds,
        });
    }
    Ok(NilcondReport {
        symbol: sym.name.clone(),
        degree: sym.degree,
        steps,
    })
}
