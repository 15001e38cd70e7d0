//! Deciding whether a parametrized curve `(f(z), g(z))` is an embedded line,
//! i.e. whether `k[f, g] = k[z]`.
//!
//! Two independent deciders are provided: the derivative criterion
//! (`f'` and `g'` both lie in `k[f, g]`) and the constructive elimination
//! that lowers the larger generator by a power of the smaller one. `is_line`
//! runs both and fails loudly if they disagree.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decompose::common_parameter;
use crate::error::{AlgebraError, Result};
use crate::field_poly::{BivarExpr, Field, Poly, Rational};
use crate::subalgebra::{is_member_in, membership_obstruction, sagbi_basis_with, SagbiConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    F,
    G,
}

/// Why a curve is or is not a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LineReason {
    CriterionHolds,
    DerivativeNotMember { which: Generator },
    AlgebraTrivial,
    DivisibilityFailure { m: usize, n: usize },
    UnfaithfulParameter { deg_h: usize },
}

impl LineReason {
    pub fn name(&self) -> &'static str {
        match self {
            LineReason::CriterionHolds => "CriterionHolds",
            LineReason::DerivativeNotMember { .. } => "DerivativeNotMember",
            LineReason::AlgebraTrivial => "AlgebraTrivial",
            LineReason::DivisibilityFailure { .. } => "DivisibilityFailure",
            LineReason::UnfaithfulParameter { .. } => "UnfaithfulParameter",
        }
    }
}

/// `is_line` holds iff `inverse` is present, and then `inverse(f, g) = z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineVerdict<F: Field> {
    pub is_line: bool,
    pub inverse: Option<BivarExpr<F>>,
    pub reason: LineReason,
}

impl<F: Field> LineVerdict<F> {
    fn line(inverse: BivarExpr<F>) -> Self {
        LineVerdict { is_line: true, inverse: Some(inverse), reason: LineReason::CriterionHolds }
    }

    fn not_line(reason: LineReason) -> Self {
        LineVerdict { is_line: false, inverse: None, reason }
    }
}

pub fn criterion_check<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<bool> {
    Ok(criterion_verdict(f, g, &SagbiConfig::default())?.is_line)
}

/// The derivative criterion: `k[f, g] ≠ k` and `f', g' ∈ k[f, g]`.
///
/// When it holds, `z` itself must be a member; its certificate is the inverse.
/// A criterion that holds without `z ∈ k[f, g]` is reported as an
/// internal inconsistency.
pub fn criterion_verdict<F: Field>(
    f: &Poly<F>,
    g: &Poly<F>,
    config: &SagbiConfig,
) -> Result<LineVerdict<F>> {
    if f.is_constant() && g.is_constant() {
        return Ok(LineVerdict::not_line(LineReason::AlgebraTrivial));
    }
    let basis = sagbi_basis_with(f, g, config)?;
    for (which, p) in [(Generator::F, f), (Generator::G, g)] {
        if membership_obstruction(&p.derivative(), &basis).is_some() {
            return Ok(LineVerdict::not_line(LineReason::DerivativeNotMember { which }));
        }
    }
    let z = is_member_in(&Poly::identity(), &basis)?;
    match z.certificate {
        Some(inverse) => Ok(LineVerdict::line(inverse)),
        None => Err(AlgebraError::InternalInconsistency(format!(
            "f' and g' lie in k[f, g] but z does not (f = {f}, g = {g})"
        ))),
    }
}

/// Constructive elimination: while both generators are nonconstant and
/// `deg p = l·deg q`, replace `p` by `p - a·(q/b)^l` (`a`, `b` the leading
/// coefficients). The expressions of the current generators in the original
/// `(X, Y)` are carried along, so a generator of degree 1 yields the inverse.
pub fn reduce_to_line<F: Field>(f: &Poly<F>, g: &Poly<F>) -> LineVerdict<F> {
    let mut p = f.clone();
    let mut q = g.clone();
    let mut pe = BivarExpr::x();
    let mut qe = BivarExpr::y();
    loop {
        let (dp, dq) = (p.deg().unwrap_or(0), q.deg().unwrap_or(0));
        if dp == 1 {
            return LineVerdict::line(invert_linear(&p, &pe));
        }
        if dq == 1 {
            return LineVerdict::line(invert_linear(&q, &qe));
        }
        match (dp, dq) {
            (0, 0) => return LineVerdict::not_line(LineReason::AlgebraTrivial),
            (0, d) | (d, 0) => {
                return LineVerdict::not_line(LineReason::UnfaithfulParameter { deg_h: d })
            }
            _ => {}
        }
        // reduce the larger one; f on ties
        let (big, big_e, small, small_e) = if dp >= dq {
            (&mut p, &mut pe, &q, &qe)
        } else {
            (&mut q, &mut qe, &p, &pe)
        };
        let (db, ds) = (big.deg().unwrap(), small.deg().unwrap());
        if db % ds != 0 {
            return LineVerdict::not_line(LineReason::DivisibilityFailure { m: dp, n: dq });
        }
        let l = (db / ds) as u32;
        let a = big.leading_coeff().unwrap().clone();
        let b_inv = small.leading_coeff().unwrap().inv().unwrap();
        let factor = a.mul(&b_inv.pow(l));
        *big = &*big - &small.pow(l).scale(&factor);
        *big_e = big_e.sub(&small_e.pow(l).scale(&factor));
    }
}

fn invert_linear<F: Field>(p: &Poly<F>, expr: &BivarExpr<F>) -> BivarExpr<F> {
    let alpha_inv = p.coeff(1).inv().unwrap();
    expr.sub(&BivarExpr::constant(p.coeff(0))).scale(&alpha_inv)
}

pub fn is_line<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<LineVerdict<F>> {
    is_line_with(f, g, &SagbiConfig::default())
}

/// Full decision: rejects unfaithful parameters first, then runs both
/// deciders and requires them to agree.
pub fn is_line_with<F: Field>(
    f: &Poly<F>,
    g: &Poly<F>,
    config: &SagbiConfig,
) -> Result<LineVerdict<F>> {
    let decomposition = match common_parameter(f, g) {
        Ok(d) => d,
        Err(AlgebraError::TrivialAlgebra) => {
            return Ok(LineVerdict::not_line(LineReason::AlgebraTrivial));
        }
        Err(err) => return Err(err),
    };
    let deg_h = decomposition.inner_degree();
    if deg_h > 1 {
        return Ok(LineVerdict::not_line(LineReason::UnfaithfulParameter { deg_h }));
    }
    let constructive = reduce_to_line(f, g);
    let criterion = criterion_verdict(f, g, config)?;
    if constructive.is_line != criterion.is_line {
        return Err(AlgebraError::InternalInconsistency(format!(
            "deciders disagree on ({f}, {g}): elimination says {:?}, criterion says {:?}",
            constructive.reason, criterion.reason
        )));
    }
    if let Some(inv) = &constructive.inverse {
        if inv.eval(f, g) != Poly::identity() {
            return Err(AlgebraError::InternalInconsistency(format!(
                "inverse {inv} does not evaluate to z"
            )));
        }
    }
    Ok(constructive)
}

/// Default degree cap for [`random_line_curve`].
pub const DEFAULT_LINE_DEGREE_CAP: usize = 30;

pub fn random_line_curve(seed: u64, steps: usize, max_coeff: i64) -> (Poly<Rational>, Poly<Rational>) {
    random_line_curve_capped(seed, steps, max_coeff, DEFAULT_LINE_DEGREE_CAP)
}

fn random_nonzero(rng: &mut ChaCha8Rng, max_coeff: i64) -> Rational {
    let max = max_coeff.max(1);
    loop {
        let c = rng.gen_range(-max..=max);
        if c != 0 {
            return Rational::from(c);
        }
    }
}

/// Applies `steps` random elementary moves to `(z, 0)`: swaps, nonzero
/// scalings, and `t ↦ t + p(other)`. Each move is an automorphism of
/// `k[X, Y]`, so the image still generates `k[z]`. Degrees stay `≤ max_degree`.
pub fn random_line_curve_capped(
    seed: u64,
    steps: usize,
    max_coeff: i64,
    max_degree: usize,
) -> (Poly<Rational>, Poly<Rational>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pair = [Poly::<Rational>::identity(), Poly::zero()];
    apply_random_moves(&mut rng, &mut pair, steps, max_coeff, max_degree);
    let [f, g] = pair;
    (f, g)
}

pub(crate) fn apply_random_moves(
    rng: &mut ChaCha8Rng,
    pair: &mut [Poly<Rational>; 2],
    steps: usize,
    max_coeff: i64,
    max_degree: usize,
) {
    let max = max_coeff.max(1);
    for _ in 0..steps {
        match rng.gen_range(0..5) {
            0 => pair.swap(0, 1),
            1 => {
                let t = rng.gen_range(0..2);
                let c = random_nonzero(rng, max);
                pair[t] = pair[t].scale(&c);
            }
            _ => {
                // substitutions are drawn more often so that degrees grow
                let t = rng.gen_range(0..2);
                let other = pair[1 - t].clone();
                let d_other = other.deg().unwrap_or(0).max(1);
                let top = (max_degree / d_other).clamp(1, 3);
                let dp = rng.gen_range(1..=top);
                let mut coeffs: Vec<Rational> =
                    (0..dp).map(|_| Rational::from(rng.gen_range(-max..=max))).collect();
                coeffs.push(random_nonzero(rng, max));
                let p = Poly::new(coeffs);
                pair[t] = &pair[t] + &p.compose(&other);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Poly<Rational>;
    type B = BivarExpr<Rational>;

    fn p(c: &[i64]) -> P {
        P::from_ints(c)
    }

    fn z(k: usize) -> P {
        P::monomial(Rational::from(1), k)
    }

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn criterion_examples() {
        assert!(criterion_check(&z(2), &p(&[0, 1, 0, 0, 1])).unwrap());
        assert!(!criterion_check(&z(3), &(&z(6) + &z(2))).unwrap());
        assert!(!criterion_check(&p(&[3]), &p(&[5])).unwrap());
        let v = criterion_verdict(&z(3), &(&z(6) + &z(2)), &SagbiConfig::default()).unwrap();
        assert_eq!(v.reason, LineReason::DerivativeNotMember { which: Generator::G });
    }

    #[test]
    fn reduce_examples() {
        let v = reduce_to_line(&z(2), &p(&[0, 1, 0, 0, 1]));
        assert!(v.is_line);
        assert_eq!(v.inverse, Some(B::from_terms([(0, 1, r(1)), (2, 0, r(-1))])));

        let v = reduce_to_line(&z(3), &(&z(6) + &z(2)));
        assert!(!v.is_line);
        assert_eq!(v.reason, LineReason::DivisibilityFailure { m: 3, n: 2 });

        let g = p(&[4, 0, 7, 1, 3]);
        let v = reduce_to_line(&z(1), &g);
        assert_eq!(v.inverse, Some(B::x()));
    }

    #[test]
    fn reduce_handles_constants_and_ties() {
        assert_eq!(reduce_to_line(&p(&[2]), &p(&[3])).reason, LineReason::AlgebraTrivial);
        assert_eq!(
            reduce_to_line(&p(&[2]), &z(3)).reason,
            LineReason::UnfaithfulParameter { deg_h: 3 }
        );
        // equal degrees: f is reduced, f - g = z
        let v = reduce_to_line(&p(&[0, 1, 1]), &z(2));
        assert_eq!(v.inverse, Some(B::from_terms([(1, 0, r(1)), (0, 1, r(-1))])));
        // affine generator: z = (f - 3)/2
        let v = reduce_to_line(&p(&[3, 2]), &z(5));
        assert_eq!(v.inverse, Some(B::from_terms([(1, 0, Rational::new(1, 2)), (0, 0, Rational::new(-3, 2))])));
    }

    #[test]
    fn is_line_examples() {
        let v = is_line(&z(3), &(&z(6) + &z(2))).unwrap();
        assert!(!v.is_line);
        assert_eq!(v.reason, LineReason::DivisibilityFailure { m: 3, n: 2 });

        let v = is_line(&z(2), &p(&[0, 1, 0, 0, 1])).unwrap();
        assert!(v.is_line);
        assert_eq!(v.inverse, Some(B::from_terms([(0, 1, r(1)), (2, 0, r(-1))])));

        let v = is_line(&p(&[0, 0, 2, 0, 1]), &z(6)).unwrap();
        assert_eq!(v.reason, LineReason::UnfaithfulParameter { deg_h: 2 });

        assert_eq!(is_line(&p(&[1]), &p(&[1])).unwrap().reason, LineReason::AlgebraTrivial);
    }

    #[test]
    fn generator_basics() {
        assert_eq!(random_line_curve(7, 0, 3), (z(1), P::zero()));
        assert_eq!(random_line_curve(42, 6, 3), random_line_curve(42, 6, 3));
        for seed in 0..20 {
            let (f, g) = random_line_curve(seed, 5, 3);
            assert!(f.deg().unwrap_or(0) <= DEFAULT_LINE_DEGREE_CAP);
            assert!(g.deg().unwrap_or(0) <= DEFAULT_LINE_DEGREE_CAP);
            let v = is_line(&f, &g).unwrap();
            assert!(v.is_line, "seed {seed}: ({f}, {g})");
        }
    }
}
