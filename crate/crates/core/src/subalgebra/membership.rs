use super::basis::{sagbi_basis_with, subduct, subduct_remainder, SagbiBasis, SagbiConfig};
use super::linsolve::solve_augmented;
use crate::error::{AlgebraError, Result};
use crate::field_poly::{BivarExpr, Field, Poly};

/// Outcome of a membership test `u ∈ k[f, g]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipResult<F: Field> {
    pub member: bool,
    /// `P` with `P(f, g) = u`, present iff `member`.
    pub certificate: Option<BivarExpr<F>>,
    /// Degree of the nonconstant subduction remainder, present iff not `member`.
    pub obstruction_degree: Option<usize>,
}

impl<F: Field> MembershipResult<F> {
    fn member(certificate: BivarExpr<F>) -> Self {
        MembershipResult { member: true, certificate: Some(certificate), obstruction_degree: None }
    }

    fn non_member(degree: usize) -> Self {
        MembershipResult { member: false, certificate: None, obstruction_degree: Some(degree) }
    }
}

pub fn is_member<F: Field>(u: &Poly<F>, f: &Poly<F>, g: &Poly<F>) -> Result<MembershipResult<F>> {
    is_member_with(u, f, g, &SagbiConfig::default())
}

pub fn is_member_with<F: Field>(
    u: &Poly<F>,
    f: &Poly<F>,
    g: &Poly<F>,
    config: &SagbiConfig,
) -> Result<MembershipResult<F>> {
    let basis = sagbi_basis_with(f, g, config)?;
    is_member_in(u, &basis)
}

/// Membership against a precomputed basis. The certificate is re-evaluated
/// before it is returned.
pub fn is_member_in<F: Field>(u: &Poly<F>, basis: &SagbiBasis<F>) -> Result<MembershipResult<F>> {
    let (rem, consumed) = subduct(u, basis);
    match rem.deg() {
        Some(d) if d > 0 => Ok(MembershipResult::non_member(d)),
        _ => {
            let certificate = consumed.add(&BivarExpr::constant(rem.constant_term()));
            let (f, g) = basis.curve();
            if certificate.eval(f, g) != *u {
                return Err(AlgebraError::InternalInconsistency(format!(
                    "membership certificate {certificate} does not evaluate to {u}"
                )));
            }
            Ok(MembershipResult::member(certificate))
        }
    }
}

/// Membership decision without a certificate: `None` for members, otherwise
/// the obstruction degree.
pub fn membership_obstruction<F: Field>(u: &Poly<F>, basis: &SagbiBasis<F>) -> Option<usize> {
    subduct_remainder(u, basis).deg().filter(|&d| d > 0)
}

/// Independent membership oracle: solves for `P = Σ c_ij X^i Y^j` over all
/// monomials with `i·deg f + j·deg g ≤ bound` by exact linear algebra.
///
/// Finding nothing within the bound does not prove non-membership.
pub fn brute_force_member<F: Field>(
    u: &Poly<F>,
    f: &Poly<F>,
    g: &Poly<F>,
    bound: usize,
) -> Option<BivarExpr<F>> {
    let du = u.deg().unwrap_or(0);
    if bound < du {
        return None;
    }
    let m = f.deg().unwrap_or(0);
    let n = g.deg().unwrap_or(0);
    let max_i = bound.checked_div(m).unwrap_or(0);
    let mut monomials = Vec::new();
    for i in 0..=max_i {
        let left = bound - i * m;
        let max_j = left.checked_div(n).unwrap_or(0);
        for j in 0..=max_j {
            monomials.push((i as u32, j as u32));
        }
    }
    let f_pows: Vec<Poly<F>> = std::iter::successors(Some(Poly::one()), |p| Some(p * f))
        .take(max_i + 1)
        .collect();
    let max_j = monomials.iter().map(|&(_, j)| j as usize).max().unwrap_or(0);
    let g_pows: Vec<Poly<F>> = std::iter::successors(Some(Poly::one()), |p| Some(p * g))
        .take(max_j + 1)
        .collect();
    let columns: Vec<Poly<F>> = monomials
        .iter()
        .map(|&(i, j)| &f_pows[i as usize] * &g_pows[j as usize])
        .collect();
    let height = columns
        .iter()
        .filter_map(Poly::deg)
        .chain(std::iter::once(du))
        .max()
        .unwrap()
        + 1;
    let rows: Vec<Vec<F>> = (0..height)
        .map(|k| {
            let mut row: Vec<F> = columns.iter().map(|c| c.coeff(k)).collect();
            row.push(u.coeff(k));
            row
        })
        .collect();
    let solution = solve_augmented(rows, monomials.len())?;
    Some(BivarExpr::from_terms(
        monomials.into_iter().zip(solution).map(|((i, j), c)| (i, j, c)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field_poly::Rational;

    type P = Poly<Rational>;
    type B = BivarExpr<Rational>;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn z(k: usize) -> P {
        P::monomial(r(1), k)
    }

    fn example() -> (P, P) {
        (z(3), &z(6) + &z(2))
    }

    #[test]
    fn example_members() {
        let (f, g) = example();
        let res = is_member(&z(2), &f, &g).unwrap();
        assert!(res.member);
        assert_eq!(res.certificate, Some(B::from_terms([(0, 1, r(1)), (2, 0, r(-1))])));
        let res = is_member(&z(5), &f, &g).unwrap();
        assert!(res.member);
        assert_eq!(res.certificate, Some(B::from_terms([(1, 1, r(1)), (3, 0, r(-1))])));
    }

    #[test]
    fn example_non_member() {
        let (f, g) = example();
        let res = is_member(&z(1), &f, &g).unwrap();
        assert!(!res.member);
        assert_eq!(res.obstruction_degree, Some(1));
        assert!(res.certificate.is_none());
    }

    #[test]
    fn zero_and_constants_are_members() {
        let (f, g) = example();
        let res = is_member(&P::zero(), &f, &g).unwrap();
        assert_eq!(res.certificate, Some(B::zero()));
        let res = is_member(&P::constant(r(-4)), &f, &g).unwrap();
        assert_eq!(res.certificate, Some(B::constant(r(-4))));
    }

    #[test]
    fn brute_force_examples() {
        let (f, g) = example();
        let cert = brute_force_member(&z(2), &f, &g, 12).unwrap();
        assert_eq!(cert.eval(&f, &g), z(2));
        assert_eq!(cert, B::from_terms([(0, 1, r(1)), (2, 0, r(-1))]));
        assert_eq!(brute_force_member(&f, &f, &g, 3), Some(B::x()));
        assert_eq!(brute_force_member(&z(1), &f, &g, 30), None);
        assert_eq!(brute_force_member(&z(9), &f, &g, 3), None);
    }

    #[test]
    fn constant_generator_is_handled_by_oracle() {
        let f = P::constant(r(2));
        let g = P::from_ints(&[1, 1]);
        let cert = brute_force_member(&z(2), &f, &g, 2).unwrap();
        assert_eq!(cert.eval(&f, &g), z(2));
    }
}
