//! Exact Newton-polyhedron invariants of bivariate polynomial phases and the
//! mixed-norm Fourier restriction exponent regions they determine.
//!
//! Everything in this crate is computed in exact rational arithmetic. The
//! usual entry point is [`analysis::analyze`]:
//!
//! ```
//! use restrikt_core::{analysis::analyze, parse_polynomial, q};
//!
//! let phi = parse_polynomial("x2^2 - 2 x1^2 x2 + x1^4 + x1^5").unwrap();
//! let report = analyze(&phi).unwrap();
//! assert_eq!(report.heights.h, q(10, 7));
//! ```

pub mod adapted;
pub mod analysis;
pub mod augmented;
pub mod classify;
pub mod conditions;
pub mod corpus;
pub mod newton;
pub mod parse;
pub mod poly;
pub mod rational;
pub mod roots;
pub mod univariate;

pub use parse::{parse_polynomial, ParseError};
pub use poly::{BivariatePolynomial, Coefficient, LatticePoint, ShearMap};
pub use rational::{q, qi, ExtRational, Rational};
pub use univariate::UnivariatePolynomial;

/// Phases with exact rational coefficients.
pub type Polynomial = BivariatePolynomial<Rational>;
/// Phases with `f64` coefficients, for numerical evaluation.
pub type FloatPolynomial = BivariatePolynomial<f64>;
/// Shear functions `ψ(x1)` with exact coefficients.
pub type Univariate = UnivariatePolynomial<Rational>;
