//! Chain-level divided powers over truncated coefficient rings.

mod complex;
mod formal;
mod ring;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use complex::{ChainComplex, ChainElement, ChainMonomial, ChainSymbol, ChainTerm, SymbolId};
pub use formal::{verify_nilcond, NilcondReport, NilcondStep};
pub use ring::{RingMonomial, TruncatedRing};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SymbolSpec {
    pub name: String,
    pub degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub boundary: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingSpec {
    pub vars: usize,
    pub trunc: u32,
}

/// JSON description of a complex, plus an optional element to act on:
///
/// `{"symbols":[{"name":"x","degree":3,"boundary":"v"}],"ring":{"vars":1,"trunc":3},"element":"e1*x"}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ChainSpec {
    pub symbols: Vec<SymbolSpec>,
    pub ring: RingSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub element: Option<String>,
}

impl ChainSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Builds the complex. Symbols are added in ascending degree, so a
    /// boundary may mention any symbol of lower degree.
    pub fn build(&self) -> Result<ChainComplex> {
        let mut complex = ChainComplex::new(TruncatedRing::new(self.ring.vars, self.ring.trunc)?);
        let mut order: Vec<&SymbolSpec> = self.symbols.iter().collect();
        order.sort_by_key(|s| s.degree);
        for spec in order {
            let boundary = match spec.boundary.as_deref().map(str::trim) {
                None | Some("") => ChainElement::zero(),
                Some(text) => complex.parse(text).map_err(|e| match e {
                    Error::Parse(msg) => {
                        Error::Parse(format!("boundary of `{}`: {msg}", spec.name))
                    }
                    other => other,
                })?,
            };
            complex.add_symbol(&spec.name, spec.degree, boundary)?;
        }
        Ok(complex)
    }

    pub fn element(&self, complex: &ChainComplex) -> Result<ChainElement> {
        let text = self
            .element
            .as_deref()
            .ok_or_else(|| Error::Parse("missing \"element\" field".into()))?;
        complex.parse(text)
    }
}
