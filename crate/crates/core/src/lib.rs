//! Exact coefficients of the asymptotic expansion
//!
//! ```text
//! n! ~ sqrt(2 pi n) e^-n n^n (a_0 + a_1/n + a_2/n^2 + ...)
//! ```
//!
//! computed along several independent routes (derivatives of normalized
//! truncated exponential/logarithm series, sums of associated Stirling and
//! derangement numbers, Lagrange inversion, series reversion, coefficient
//! recurrences, and the Bernoulli-number Stirling series), together with exact
//! verification of the identities relating them and a high-precision numeric
//! check of the expansion itself.
//!
//! All symbolic work is done over exact rationals in [`TruncatedSeries`];
//! floating point only appears in [`asymptotic`].

pub mod asymptotic;
pub mod bigfloat;
pub mod coefficients;
pub mod combinatorics;
pub mod error;
pub mod exec;
pub mod identities;
pub mod rational;
pub mod series;

pub use bigfloat::BigFloat;
pub use coefficients::{CoeffTable, Method, Sequence};
pub use combinatorics::{AssocKind, AssocTable};
pub use error::{Error, Result};
pub use exec::Execution;
pub use identities::{IdentityId, IdentityReport};
pub use rational::Rational;
pub use series::TruncatedSeries;
