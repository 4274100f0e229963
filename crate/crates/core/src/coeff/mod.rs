//! Exact scalar arithmetic: rationals, univariate polynomials and rational
//! functions in the Brauer parameter ω.

mod poly;
mod ratfun;
mod rational;

pub use poly::{half_binomial, KPoly, Level, Omega, OmegaPoly, Poly, Variable, T};
pub use ratfun::RatFun;
pub use rational::Rational;
