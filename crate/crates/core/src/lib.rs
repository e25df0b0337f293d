//! Exact-arithmetic toolkit for Riordan matrices.
//!
//! * [`series`]: truncated power series over the rationals.
//! * [`parser`]: closed-form expressions such as `(1-sqrt(1-4*x))/(2*x)`.
//! * [`riordan`]: `T(f | g)` matrices, the group law, A-sequences.
//! * [`diagonals`]: diagonal generating functions and their bivariate forms.
//! * [`palindromic`]: the three-parameter family of palindromic matrices.
//! * [`delannoy`]: weighted Delannoy paths modulo `HV <-> VH`.
//! * [`fixtures`]: reference tables regenerated from the library.

pub mod delannoy;
pub mod dense;
pub mod diagonals;
pub mod error;
pub mod fixtures;
pub mod palindromic;
pub mod par;
pub mod parser;
pub mod poly;
pub mod rational;
pub mod riordan;
pub mod series;

pub use error::{DomainError, RiordanError, SeriesError};
pub use par::Exec;
pub use parser::{parse, parse_series, SeriesExpr};
pub use rational::Rational;
pub use riordan::{RiordanMatrix, RowPolynomial};
pub use series::PowerSeries;
