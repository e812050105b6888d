//! Mod-2 homotopy operations for simplicial commutative algebras.
//!
//! The δ-operation words and their Adem-type normal form live in [`words`] and
//! [`adem`]; divided power algebras in [`gamma`]; the homotopy of free
//! simplicial algebras on spheres and the first page of the filtration
//! spectral sequence in [`sphere`]; chain-level divided powers over truncated
//! rings in [`chains`].

pub mod adem;
pub mod chains;
pub mod cli;
pub mod error;
pub mod gamma;
pub mod gf2;
pub mod sphere;
pub mod words;

pub use error::{Error, ErrorKind, Result};
