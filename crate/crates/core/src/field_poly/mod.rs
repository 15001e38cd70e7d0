//! Exact coefficient fields, dense univariate polynomials and formal
//! bivariate expressions.

mod bivar;
mod poly;
mod ratfunc;
mod rational;
mod scalar;

pub use bivar::{eval_bivariate, BivarExpr};
pub use poly::{Degree, Poly};
pub use ratfunc::RationalFunction;
pub use rational::{ParseRationalError, Rational};
pub use scalar::Field;
