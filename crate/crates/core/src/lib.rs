//! Noncommutative rational series over semirings.
//!
//! The crate covers the classical toolkit around the Kleene–Schützenberger
//! theorem: truncated series and their rational operations, rational
//! expressions with partial constant terms, linear representations with
//! conversions in both directions, reduction over fields, products dual to
//! the shuffle family, and the transfer series of weighted lattice paths in
//! a Fock-space model.

pub mod cancel;
pub mod error;
pub mod expr;
pub mod fock;
pub mod json;

pub mod linrep;
pub mod matrix;
pub mod random;
pub mod semiring;
pub mod series;
pub mod words;

pub use cancel::CancelToken;
pub use error::{Error, Result};
pub use expr::{const_term, eval_expr, parse_expr, LetterAssignment, Localization, RatExpr};
pub use linrep::{LinRep, Side};
pub use matrix::{matrix_star, Matrix};
pub use semiring::{
    Boolean, CompletedPositive, Field, Integer, MaxPlus, Natural, Rational, Semiring, SemiringKind,
};
pub use series::TruncatedSeries;
pub use words::{Alphabet, Polynomial, Word};
