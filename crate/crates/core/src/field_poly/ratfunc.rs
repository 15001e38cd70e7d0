use std::fmt;

use super::poly::Poly;
use super::rational::Rational;
use super::scalar::{schoolbook, Field};

/// A rational function in `x` over the rationals, in canonical form:
/// the denominator is monic and coprime to the numerator, and zero is `0/1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly<Rational>,
    den: Poly<Rational>,
}

impl RationalFunction {
    /// `num / den`, normalized. Returns `None` when `den` is zero.
    pub fn new(num: Poly<Rational>, den: Poly<Rational>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::normalized(num, den))
    }

    pub fn from_poly(num: Poly<Rational>) -> Self {
        RationalFunction { num, den: Poly::one() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::from_poly(Poly::identity())
    }

    pub fn numer(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<Rational> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The value as a rational constant, if it is one.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.constant_term())
    }

    /// d/dx.
    pub fn derivative(&self) -> Self {
        if self.den.is_constant() {
            return Self::from_poly(self.num.derivative());
        }
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::normalized(top, &self.den * &self.den)
    }

    fn normalized(num: Poly<Rational>, den: Poly<Rational>) -> Self {
        if num.is_zero() {
            return RationalFunction { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.divmod(&g).unwrap().0, den.divmod(&g).unwrap().0)
        };
        let lc = den.leading_coeff().cloned().unwrap();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RationalFunction { num, den }
    }
}

impl Field for RationalFunction {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    fn from_int(n: i64) -> Self {
        Self::constant(Rational::from(n))
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_constant() {
                return RationalFunction { num, den: self.den.clone() };
            }
            return Self::normalized(num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::normalized(num, &self.den * &rhs.den)
    }

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.den.is_constant() && rhs.den.is_constant() {
            return Self::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel before multiplying to keep degrees small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let a = self.num.divmod(&g1).unwrap().0;
        let d = rhs.den.divmod(&g1).unwrap().0;
        let c = rhs.num.divmod(&g2).unwrap().0;
        let b = self.den.divmod(&g2).unwrap().0;
        Self::normalized(&a * &c, &b * &d)
    }

    // polynomial coefficients: Kronecker substitution x^i y^j ↦ t^(i + j·stride)
    fn convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        if !a.iter().chain(b).all(|c| c.den.is_constant()) {
            return schoolbook(a, b);
        }
        let x_deg = |v: &[Self]| v.iter().filter_map(|c| c.num.deg()).max().unwrap_or(0);
        let stride = x_deg(a) + x_deg(b) + 1;
        let pack = |v: &[Self]| {
            let mut out = vec![Rational::zero(); v.len() * stride];
            for (j, c) in v.iter().enumerate() {
                for (i, r) in c.num.coeffs().iter().enumerate() {
                    out[j * stride + i] = r.clone();
                }
            }
            out
        };
        let packed = Rational::convolve(&pack(a), &pack(b));
        (0..a.len() + b.len() - 1)
            .map(|j| {
                let start = (j * stride).min(packed.len());
                let end = ((j + 1) * stride).min(packed.len());
                Self::from_poly(Poly::new(packed[start..end].to_vec()))
            })
            .collect()
    }

    fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalized(self.den.clone(), self.num.clone()))
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            f.write_str(&self.num.render("x"))
        } else {
            write!(f, "({})/({})", self.num.render("x"), self.den.render("x"))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}
