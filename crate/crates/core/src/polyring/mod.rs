//! Exact polynomial and rational-function arithmetic over the rationals.
//!
//! Univariate polynomials in `Z` are dense; multivariate polynomials in
//! `(Z_n, Z_m)` and `(Z_n, Z_m, Pe)` are sparse maps from exponent vectors to
//! coefficients. Floating point only appears in evaluation and root finding.

mod multi;
mod roots;
mod tf;
mod uni;

use thiserror::Error;

pub use multi::{BiPoly, MultiPoly, TriPoly};
pub use roots::{reconstruct, roots_with_multiplicity, uni_roots, RootMult};
pub use tf::{unit_tf, RationalTf, TfPoly, Units};
pub use uni::UniPoly;

/// Reduced fraction of big integers with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("transfer function denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("root finding failed: {0}")]
    RootFinding(String),
}

/// `n / d` as an exact rational.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Exact rational value of a finite float (every binary float is rational).
pub fn rational_from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}
