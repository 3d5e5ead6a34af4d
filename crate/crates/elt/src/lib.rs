//! Exact computer algebra for exploded layered tropical polynomials.
//!
//! Scalars pair a max-plus tangible value with a rational layer; polynomials
//! are functions, canonicalized by deleting monomials that never matter.
//! On top of the arithmetic the crate provides corner-root and corner-locus
//! analysis, layer profiles, and a complete univariate factorization
//! pipeline that transports primary polynomials to ordinary rational
//! polynomials and back.
//!
//! Start with the `examples/` directory for runnable tours of each
//! capability, or the `elt` binary for a command-line surface.

mod fm;
mod hull;

pub mod cli;
pub mod factor;
pub mod poly;
pub mod ratpoly;
pub mod scalar;
pub mod strata;

pub use poly::{Classification, EltPoly, LayerProfile, MultiIndex, PolyError, PrimaryDecomposition};
pub use scalar::{rat, rat_int, rational_str, EltScalar, Rational, ScalarError};
