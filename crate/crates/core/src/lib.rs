//! Combinatorics and homological invariants of universal and almost
//! universal squarefree lexsegment ideals, s-sequences of their generators,
//! and invariants of their symmetric algebras.
//!
//! Every closed-form result has an independent brute-force oracle next to
//! it, so the two can be compared exhaustively on small rings.

pub mod error;
pub mod groebner;
pub mod ideal;
pub mod koszul;
pub mod lexsegment;
pub mod linalg;
pub mod monomial;
pub mod polynomial;
pub mod resolution;
pub mod s_sequence;
pub mod sweep;
pub mod sym;

pub use error::{Error, Result};
pub use ideal::{IdealSpec, SqIdeal};
pub use monomial::{MixedMonomial, SqMonomial, TermOrder};
