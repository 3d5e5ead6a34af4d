//! Exact rational-coefficient polynomials and complete factorization over
//! the rationals, plus the layer-extraction map between primary layered
//! tropical polynomials and ordinary polynomials.

mod modp;
mod multi;
mod psi;
mod qpoly;
mod zassenhaus;

pub use multi::{QMFactorization, QMPoly};
pub use psi::{psi, psi_inverse};
pub use qpoly::{QFactorization, QPoly, RatPolyError};
