use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use super::scalar::Field;

fn clear_denominators(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.0.denom()));
    let nums = v.iter().map(|x| x.0.numer() * (&lcm / x.0.denom())).collect();
    (nums, lcm)
}

/// `n / d` in lowest terms for `d > 0`. One remainder step first keeps the gcd
/// cheap when the numerator is much larger than the denominator.
fn reduced(n: BigInt, d: BigInt) -> Rational {
    if d.is_one() {
        return Rational(BigRational::from_integer(n));
    }
    let g = d.gcd(&n.mod_floor(&d));
    if g.is_one() {
        Rational(BigRational::new_raw(n, d))
    } else {
        Rational(BigRational::new_raw(n / &g, d / g))
    }
}

/// An exact rational number, always in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

impl Rational {
    /// `numer / denom`. Panics if `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::integer(n)
    }
}

impl Field for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_int(n: i64) -> Self {
        Rational::integer(n)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }

    fn add(&self, rhs: &Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        if a.denom() == b.denom() {
            return reduced(a.numer() + b.numer(), a.denom().clone());
        }
        reduced(a.numer() * b.denom() + b.numer() * a.denom(), a.denom() * b.denom())
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        reduced(a.numer() * b.numer(), a.denom() * b.denom())
    }

    fn neg(&self) -> Self {
        Rational(-&self.0)
    }

    // one normalization per output coefficient instead of one per product
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        let (na, la) = clear_denominators(a);
        let (nb, lb) = clear_denominators(b);
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in na.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in nb.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        let den = la * lb;
        out.into_iter().map(|c| reduced(c, den.clone())).collect()
    }

    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `"n"` or `"n/d"` with an optional leading sign on `n`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        let t = s.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (t, None),
        };
        let num: BigInt = num.parse().map_err(|_| err())?;
        match den {
            None => Ok(Rational::integer(num)),
            Some(d) => {
                if d.starts_with(['+', '-']) {
                    return Err(err());
                }
                let den: BigInt = d.parse().map_err(|_| err())?;
                if den.is_zero() {
                    return Err(err());
                }
                Ok(Rational::new(num, den))
            }
        }
    }
}
