//! Exact computer algebra for arithmetic jet spaces and explicit
//! Manin–Mumford bounds.
//!
//! - [`poly`]: sparse integer polynomials in jet variables, with a text grammar.
//! - [`delta`]: Frobenius lifts and p-derivations over ℤ.
//! - [`jet`]: presentations `(I, δI, ..., δ^r I)` of arithmetic jet algebras.
//! - [`chow`]: truncated Chern/Segre series on a formal Chow ring.
//! - [`bound`]: the explicit torsion bounds built from those pieces.
//! - [`cli`]: the `jetcalc` command-line interface.
//!
//! Everything is exact big-integer arithmetic. Coefficients are integers,
//! which is the δ-stable subring of the Witt vectors that can be represented
//! finitely.

pub mod bound;
pub mod chow;
pub mod cli;
pub mod delta;
pub mod error;
pub mod jet;
pub mod poly;

pub use error::{Error, Result};
pub use poly::{parse_polynomial, Monomial, Polynomial, Variable, DEFAULT_TERM_LIMIT};
