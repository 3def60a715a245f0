//! Exact-arithmetic invariants of plane curve singularities with embedded
//! points.
//!
//! The crate computes, over the rationals and simple algebraic extensions:
//! delta and epsilon invariants of generically reduced plane ideals, blow-up
//! resolution trees of reduced germs, Hilbert-Burch splittings of
//! parametric families, delta-constancy scans with equinormalizability
//! verdicts, and canonical forms for the weighted trees used in
//! equisingularity comparisons. No floating point anywhere.

pub mod config;
pub mod error;
pub mod estree;
pub mod factor;
pub mod family;
pub mod field;
pub mod gcd;
pub mod groebner;
pub mod invariants;
pub mod local;
pub mod numberfield;
pub mod parsepoly;
pub mod poly;
pub mod rational;
pub mod resolution;
pub mod trager;
pub mod unipoly;
pub mod zerodim;

pub use config::Limits;
pub use error::{Error, Result};
pub use field::Field;
pub use numberfield::{AlgebraicNumber, NumberField};
pub use poly::{APoly, Monomial, MonomialOrder, Poly, QPoly, VarSet};
pub use rational::Rational;
pub use unipoly::UniPoly;
