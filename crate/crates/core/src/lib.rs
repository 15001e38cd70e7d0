//! Exact computer algebra for plane polynomial curves `(f(z), g(z))`:
//! subalgebra membership with certificates, degree semigroups, polynomial
//! decomposition, and the embedded-line decision `k[f, g] = k[z]`.

pub mod corpus;
pub mod decompose;
pub mod error;
pub mod field_poly;
pub mod jacobian;
pub mod line;
pub mod subalgebra;
pub mod theorems;

pub use error::{AlgebraError, Result};
pub use field_poly::{eval_bivariate, BivarExpr, Degree, Field, Poly, Rational, RationalFunction};
