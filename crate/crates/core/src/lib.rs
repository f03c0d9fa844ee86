//! Exact and numeric evaluation of the power sums `S_p(n) = 1^p + 2^p + ... + n^p`.
//!
//! Every closed form is evaluated in arbitrary-precision rational arithmetic
//! and checked against a brute-force oracle. The numeric side evaluates the
//! Hurwitz zeta function through its Hermite integral representation, which
//! closes the loop `S_p(n) = ζ(-p) - ζ(-p, n + 1)`.

pub mod bernoulli;
pub mod cli;
mod error;
pub mod hurwitz;
pub mod powersum;
pub mod quadrature;
pub mod verify;

pub use bernoulli::{
    bernoulli_number, bernoulli_polynomial, binomial, zeta_even_exact, zeta_neg_int,
    BernoulliCache, Convention, PiPower, Rational,
};
pub use error::{Error, Result};
pub use hurwitz::{
    f_closed, f_numeric, f_parity_exact, hermite_integrand, hurwitz_neg_exact,
    hurwitz_zeta_hermite, riemann_zeta_series, HurwitzArgs,
};
pub use powersum::{
    powersum_alternating, powersum_bernoulli_minus, powersum_bernoulli_plus,
    powersum_bruteforce, powersum_parity, powersum_polynomial, powersum_recursive,
    powersum_via_poly, Method, PowerSumQuery, SumPolynomial,
};
pub use quadrature::{Estimate, QuadratureConfig};
pub use verify::{
    convention_invariance_check, cross_validate, generating_function_check,
    leading_coefficient_check, Mismatch, VerificationReport,
};
