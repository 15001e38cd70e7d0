//! Jacobian pairs in `k[x, y]`, viewed as polynomials in `y` over `k(x)`,
//! and membership of `f_y`, `g_y` in `k(x)[f, g]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::field_poly::{BivarExpr, Field, Poly, Rational, RationalFunction};
use crate::subalgebra::{is_member_in, sagbi_basis_with, MembershipResult, SagbiConfig};

/// A polynomial in `x, y`, stored as a polynomial in `y` with coefficients in `k(x)`.
#[derive(Clone, PartialEq, Eq)]
pub struct BiPoly(Poly<RationalFunction>);

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly(Poly::zero())
    }

    pub fn one() -> Self {
        BiPoly(Poly::one())
    }

    pub fn x() -> Self {
        BiPoly(Poly::constant(RationalFunction::x()))
    }

    pub fn y() -> Self {
        BiPoly(Poly::identity())
    }

    pub fn constant(c: Rational) -> Self {
        BiPoly(Poly::constant(RationalFunction::constant(c)))
    }

    /// `Σ c · x^i y^j` over the given `(i, j, c)`.
    pub fn from_terms(terms: impl IntoIterator<Item = (usize, usize, Rational)>) -> Self {
        let mut out = BiPoly::zero();
        for (i, j, c) in terms {
            let coeff = RationalFunction::from_poly(Poly::monomial(c, i));
            out = &out + &BiPoly(Poly::monomial(coeff, j));
        }
        out
    }

    pub fn from_y_poly(p: Poly<RationalFunction>) -> Self {
        BiPoly(p)
    }

    pub fn as_y_poly(&self) -> &Poly<RationalFunction> {
        &self.0
    }

    pub fn into_y_poly(self) -> Poly<RationalFunction> {
        self.0
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.0.deg()
    }

    pub fn pow(&self, exp: u32) -> Self {
        BiPoly(self.0.pow(exp))
    }

    /// `p(self)` for a univariate `p`.
    pub fn apply(&self, p: &Poly<Rational>) -> Self {
        let lifted = Poly::new(p.coeffs().iter().cloned().map(RationalFunction::constant).collect());
        BiPoly(lifted.compose(&self.0))
    }

    pub fn partial_y(&self) -> Self {
        BiPoly(self.0.derivative())
    }

    pub fn partial_x(&self) -> Self {
        BiPoly(Poly::new(self.0.coeffs().iter().map(RationalFunction::derivative).collect()))
    }

    /// The value as a rational constant, if it is one.
    /// Total degree in `x` and `y`; `None` for zero.
    pub fn total_degree(&self) -> Option<usize> {
        self.0
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| j + c.numer().deg().unwrap_or(0))
            .max()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if !self.0.is_constant() {
            return None;
        }
        self.0.constant_term().as_constant()
    }

    /// Renders as a polynomial in `x` and `y` when all coefficients are
    /// polynomial in `x`; otherwise coefficients are shown as fractions.
    pub fn render(&self) -> String {
        let polynomial = self.0.coeffs().iter().all(RationalFunction::is_polynomial);
        if !polynomial {
            return self.0.render("y");
        }
        let mut expr = BivarExpr::zero();
        for (j, c) in self.0.coeffs().iter().enumerate() {
            let scale = c.denom().constant_term().inv().unwrap();
            for (i, a) in c.numer().coeffs().iter().enumerate() {
                expr.add_term(i as u32, j as u32, a.mul(&scale));
            }
        }
        expr.render("x", "y")
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", self.render())
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        BiPoly(&self.0 + &rhs.0)
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        BiPoly(&self.0 - &rhs.0)
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        BiPoly(&self.0 * &rhs.0)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly(-&self.0)
    }
}

/// `f_x g_y − f_y g_x`.
pub fn jacobian_det(f: &BiPoly, g: &BiPoly) -> BiPoly {
    &(&f.partial_x() * &g.partial_y()) - &(&f.partial_y() * &g.partial_x())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prop21Report {
    pub jacobian: BiPoly,
    /// The Jacobian is a nonzero element of `k`.
    pub jacobian_constant: bool,
    pub fy_member: MembershipResult<RationalFunction>,
    pub gy_member: MembershipResult<RationalFunction>,
}

pub fn prop21_probe(f: &BiPoly, g: &BiPoly) -> Result<Prop21Report> {
    prop21_probe_with(f, g, &SagbiConfig::default())
}

/// Computes the Jacobian and tests `f_y, g_y ∈ k(x)[f, g]` regardless of
/// whether the Jacobian is constant.
pub fn prop21_probe_with(f: &BiPoly, g: &BiPoly, config: &SagbiConfig) -> Result<Prop21Report> {
    let jacobian = jacobian_det(f, g);
    let jacobian_constant = jacobian.as_constant().is_some_and(|c| !c.is_zero());
    let (fy, gy) = (f.partial_y(), g.partial_y());
    let (fy_member, gy_member) = if f.0.is_constant() && g.0.is_constant() {
        // k(x)[f, g] = k(x): exactly the y-free elements
        (constant_membership(&fy.0), constant_membership(&gy.0))
    } else {
        let basis = sagbi_basis_with(&f.0, &g.0, config)?;
        (is_member_in(&fy.0, &basis)?, is_member_in(&gy.0, &basis)?)
    };
    Ok(Prop21Report { jacobian, jacobian_constant, fy_member, gy_member })
}

fn constant_membership(u: &Poly<RationalFunction>) -> MembershipResult<RationalFunction> {
    match u.deg() {
        Some(d) if d > 0 => {
            MembershipResult { member: false, certificate: None, obstruction_degree: Some(d) }
        }
        _ => MembershipResult {
            member: true,
            certificate: Some(BivarExpr::constant(u.constant_term())),
            obstruction_degree: None,
        },
    }
}

/// A tame automorphism together with the constant its Jacobian must equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameAutomorphism {
    pub f: BiPoly,
    pub g: BiPoly,
    /// Product of the Jacobians of the elementary steps.
    pub expected_jacobian: Rational,
}

pub fn random_tame_automorphism(seed: u64, steps: usize, max_deg: usize) -> (BiPoly, BiPoly) {
    let t = random_tame_automorphism_traced(seed, steps, max_deg);
    (t.f, t.g)
}

/// Starting from `(x, y)`, applies `steps` random moves. A move is either a
/// scaling `(aF, bG)` or an elementary map `(F, G) ↦ (F, G + p(F))` followed
/// by a swap, so consecutive elementary maps alternate sides and degrees grow.
/// `deg p` is limited so that the total degree, and with it the y-degree,
/// never exceeds `max_deg`. Coefficients of `p` lie in `{-1, 0, 1}`.
pub fn random_tame_automorphism_traced(seed: u64, steps: usize, max_deg: usize) -> TameAutomorphism {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut f, mut g) = (BiPoly::x(), BiPoly::y());
    let mut jac = Rational::one();
    for _ in 0..steps {
        if rng.gen_bool(0.2) {
            let (a, b) = (small_nonzero(&mut rng), small_nonzero(&mut rng));
            f = &f * &BiPoly::constant(a.clone());
            g = &g * &BiPoly::constant(b.clone());
            jac = jac.mul(&a).mul(&b);
            continue;
        }
        let df = f.total_degree().unwrap_or(0).max(1);
        let top = (max_deg / df).min(3);
        if top > 0 {
            let dp = rng.gen_range(1..=top);
            let mut coeffs: Vec<Rational> =
                (0..dp).map(|_| Rational::from(rng.gen_range(-1..=1))).collect();
            coeffs.push(Rational::from(if rng.gen_bool(0.5) { 1 } else { -1 }));
            g = &g + &f.apply(&Poly::new(coeffs));
        }
        std::mem::swap(&mut f, &mut g);
        jac = jac.neg();
    }
    TameAutomorphism { f, g, expected_jacobian: jac }
}

fn small_nonzero(rng: &mut ChaCha8Rng) -> Rational {
    let choices = [-3i64, -2, -1, 1, 2, 3];
    Rational::from(choices[rng.gen_range(0..choices.len())])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn y_plus_x2() -> BiPoly {
        BiPoly::from_terms([(0, 1, r(1)), (2, 0, r(1))])
    }

    #[test]
    fn jacobian_examples() {
        assert_eq!(jacobian_det(&BiPoly::x(), &BiPoly::y()).as_constant(), Some(r(1)));
        assert_eq!(jacobian_det(&BiPoly::y(), &BiPoly::x()).as_constant(), Some(r(-1)));
        let f = y_plus_x2();
        let g = &BiPoly::x() + &f.pow(2);
        assert_eq!(jacobian_det(&f, &g).as_constant(), Some(r(-1)));
    }

    #[test]
    fn probe_identity_like_pair() {
        let rep = prop21_probe(&BiPoly::x(), &y_plus_x2()).unwrap();
        assert!(rep.jacobian_constant);
        assert!(rep.fy_member.member);
        assert_eq!(rep.fy_member.certificate, Some(BivarExpr::zero()));
        assert!(rep.gy_member.member);
    }

    #[test]
    fn probe_elementary_pair() {
        let f = y_plus_x2();
        let g = &BiPoly::x() + &f.pow(2);
        let rep = prop21_probe(&f, &g).unwrap();
        assert!(rep.jacobian_constant);
        assert!(rep.fy_member.member);
        assert_eq!(
            rep.gy_member.certificate,
            Some(BivarExpr::monomial(RationalFunction::from_int(2), 1, 0))
        );
    }

    #[test]
    fn probe_cusp_pair() {
        let f = BiPoly::y().pow(2);
        let g = BiPoly::y().pow(3);
        let rep = prop21_probe(&f, &g).unwrap();
        assert!(!rep.jacobian_constant);
        assert!(rep.jacobian.as_y_poly().is_zero());
        assert!(!rep.fy_member.member);
        assert_eq!(rep.fy_member.obstruction_degree, Some(1));
        assert!(rep.gy_member.member);
    }

    #[test]
    fn probe_degenerate_field_constants() {
        let rep = prop21_probe(&BiPoly::x(), &BiPoly::constant(r(2))).unwrap();
        assert!(!rep.jacobian_constant);
        assert!(rep.fy_member.member && rep.gy_member.member);
    }

    #[test]
    fn tame_generator() {
        let (f, g) = random_tame_automorphism(5, 0, 8);
        assert_eq!((f, g), (BiPoly::x(), BiPoly::y()));
        assert_eq!(random_tame_automorphism(9, 4, 8), random_tame_automorphism(9, 4, 8));
        for seed in 0..10 {
            let t = random_tame_automorphism_traced(seed, 5, 8);
            assert_eq!(jacobian_det(&t.f, &t.g).as_constant(), Some(t.expected_jacobian));
            assert!(t.f.y_degree().unwrap_or(0) <= 8 && t.g.y_degree().unwrap_or(0) <= 8);
        }
    }

    #[test]
    fn render_round_shape() {
        assert_eq!(y_plus_x2().render(), "x^2 + y");
        assert_eq!(BiPoly::zero().render(), "0");
    }
}
