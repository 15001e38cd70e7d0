//! Functional decomposition and extraction of a faithful parameter.
//!
//! If `f = f̃ ∘ h` and `g = g̃ ∘ h` with `deg h > 1`, then `k[f, g] ⊆ k[h]`
//! and `z` is not a faithful parameter of the curve.

use crate::error::{AlgebraError, Result};
use crate::field_poly::{Field, Poly};

/// `f = f_tilde ∘ h`, `g = g_tilde ∘ h` with `h` monic, `h(0) = 0`, and
/// `deg h` maximal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition<F: Field> {
    pub h: Poly<F>,
    pub f_tilde: Poly<F>,
    pub g_tilde: Poly<F>,
}

impl<F: Field> Decomposition<F> {
    pub fn inner_degree(&self) -> usize {
        self.h.deg().unwrap_or(0)
    }
}

/// Normalized inner factor of degree `e`, or `None` if `f` has none.
///
/// The coefficients of `h` are read off the top `e - 1` coefficients of the
/// monic `f / lc(f)`, which agree with those of `h^(deg f / e)`; each step is a
/// linear equation with leading factor `deg f / e`. The candidate is then
/// confirmed by recomposition.
pub fn right_factor<F: Field>(f: &Poly<F>, e: usize) -> Result<Option<Poly<F>>> {
    let n = f.deg().unwrap_or(0);
    if n == 0 || e == 0 || !n.is_multiple_of(e) {
        return Err(AlgebraError::BadDegree { degree: n, inner: e });
    }
    if e == 1 {
        return Ok(Some(Poly::identity()));
    }
    let r = n / e;
    let target = f.monic();
    let mut h: Vec<F> = vec![F::zero(); e + 1];
    h[e] = F::one();
    let r_inv = F::from_int(r as i64).inv().unwrap();
    for k in 1..e {
        let current = Poly::new(h.clone()).pow(r as u32);
        let c = target.coeff(n - k).sub(&current.coeff(n - k)).mul(&r_inv);
        h[e - k] = c;
    }
    let h = Poly::new(h);
    match left_cofactor(f, &h) {
        Ok(_) => Ok(Some(h)),
        Err(AlgebraError::NotComposable) => Ok(None),
        Err(err) => Err(err),
    }
}

/// The unique `f̃` with `f = f̃ ∘ h`, found by `h`-adic expansion of `f`.
pub fn left_cofactor<F: Field>(f: &Poly<F>, h: &Poly<F>) -> Result<Poly<F>> {
    if h.is_constant() {
        return Err(AlgebraError::PreconditionViolated("inner polynomial must be nonconstant".into()));
    }
    let mut digits = Vec::new();
    let mut rest = f.clone();
    while !rest.is_zero() {
        let (q, r) = rest.divmod(h)?;
        if !r.is_constant() {
            return Err(AlgebraError::NotComposable);
        }
        digits.push(r.constant_term());
        rest = q;
    }
    let cofactor = Poly::new(digits);
    if cofactor.compose(h) != *f {
        return Err(AlgebraError::InternalInconsistency(format!(
            "cofactor {cofactor} does not recompose to {f}"
        )));
    }
    Ok(cofactor)
}

fn divisors_descending(n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.reverse();
    out
}

/// Largest common inner factor of `f` and `g`.
pub fn common_parameter<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<Decomposition<F>> {
    if f.is_constant() && g.is_constant() {
        return Err(AlgebraError::TrivialAlgebra);
    }
    // a constant factors through anything, so only the other generator constrains h
    let (lead, other) = if f.is_constant() { (g, f) } else { (f, g) };
    let m = lead.deg().unwrap();
    let n = other.deg().unwrap_or(0);
    let bound = crate::subalgebra::semigroup::gcd(m, n);
    for e in divisors_descending(bound) {
        let Some(h) = right_factor(lead, e)? else {
            continue;
        };
        let other_tilde = if other.is_constant() {
            other.clone()
        } else {
            match left_cofactor(other, &h) {
                Ok(c) => c,
                Err(AlgebraError::NotComposable) => continue,
                Err(err) => return Err(err),
            }
        };
        let lead_tilde = left_cofactor(lead, &h)?;
        let (f_tilde, g_tilde) = if f.is_constant() {
            (other_tilde, lead_tilde)
        } else {
            (lead_tilde, other_tilde)
        };
        return Ok(Decomposition { h, f_tilde, g_tilde });
    }
    unreachable!("e = 1 always yields h = z")
}

pub fn is_faithful<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<bool> {
    Ok(common_parameter(f, g)?.inner_degree() == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_poly::Rational;

    type P = Poly<Rational>;

    fn p(c: &[i64]) -> P {
        P::from_ints(c)
    }

    fn z(k: usize) -> P {
        P::monomial(Rational::from(1), k)
    }

    #[test]
    fn right_factor_examples() {
        let f = p(&[0, 0, 2, 0, 1]);
        assert_eq!(right_factor(&f, 2).unwrap(), Some(z(2)));
        assert_eq!(left_cofactor(&f, &z(2)).unwrap(), p(&[0, 2, 1]));
        assert_eq!(right_factor(&p(&[4, 1, 9]), 1).unwrap(), Some(z(1)));
        assert_eq!(right_factor(&(&z(6) + &z(2)), 3).unwrap(), None);
        assert_eq!(
            right_factor(&z(5), 2),
            Err(AlgebraError::BadDegree { degree: 5, inner: 2 })
        );
    }

    #[test]
    fn right_factor_normalizes_shifted_inner() {
        // f = 3 (2z^2 + 2z + 5)^3 - 1 factors through h = z^2 + z
        let inner = p(&[5, 2, 2]);
        let f = &p(&[-1, 0, 0, 3]).compose(&inner);
        let h = right_factor(f, 2).unwrap().unwrap();
        assert_eq!(h, p(&[0, 1, 1]));
        assert_eq!(left_cofactor(f, &h).unwrap().compose(&h), *f);
    }

    #[test]
    fn left_cofactor_examples() {
        assert_eq!(left_cofactor(&z(6), &z(2)).unwrap(), z(3));
        assert_eq!(left_cofactor(&p(&[0, 1, 0, 1]), &z(2)), Err(AlgebraError::NotComposable));
        assert_eq!(left_cofactor(&p(&[7]), &z(2)).unwrap(), p(&[7]));
    }

    #[test]
    fn common_parameter_examples() {
        let d = common_parameter(&p(&[0, 0, 2, 0, 1]), &z(6)).unwrap();
        assert_eq!(d.h, z(2));
        assert_eq!(d.f_tilde, p(&[0, 2, 1]));
        assert_eq!(d.g_tilde, z(3));

        let d = common_parameter(&z(3), &(&z(6) + &z(2))).unwrap();
        assert_eq!(d.h, z(1));

        let d = common_parameter(&z(1), &p(&[1, 5, 0, 2])).unwrap();
        assert_eq!(d.h, z(1));
    }

    #[test]
    fn constant_generator_cases() {
        let d = common_parameter(&p(&[3]), &p(&[1, 0, 2])).unwrap();
        assert_eq!(d.h, z(2));
        assert_eq!(d.f_tilde, p(&[3]));
        assert_eq!(d.g_tilde, p(&[1, 2]));
        assert!(is_faithful(&z(1), &P::zero()).unwrap());
        assert_eq!(common_parameter(&p(&[1]), &p(&[2])), Err(AlgebraError::TrivialAlgebra));
    }

    #[test]
    fn faithfulness() {
        assert!(is_faithful(&z(3), &(&z(6) + &z(2))).unwrap());
        assert!(!is_faithful(&z(2), &z(4)).unwrap());
    }
}
