use std::collections::BTreeMap;

use super::semigroup::{self, factor_largest_first, reachable};
use crate::error::{AlgebraError, Result};
use crate::field_poly::{BivarExpr, Field, Poly};

/// One element of a SAGBI basis: a monic polynomial of `k[f, g]` together with
/// an expression in `X = f`, `Y = g` that produces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement<F: Field> {
    pub poly: Poly<F>,
    pub provenance: BivarExpr<F>,
    pub degree: usize,
}

/// A basis of `k[f, g]` whose degrees generate the degree semigroup.
///
/// Elements are monic, have pairwise distinct degrees, are sorted by degree,
/// and no element's degree lies in the semigroup generated by the others.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SagbiBasis<F: Field> {
    elements: Vec<BasisElement<F>>,
    f: Poly<F>,
    g: Poly<F>,
}

/// Limits for basis completion.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SagbiConfig {
    /// Maximum number of completion steps; `None` means `10·(deg f + deg g)²`.
    pub iteration_cap: Option<usize>,
}

impl SagbiConfig {
    pub fn with_cap(cap: usize) -> Self {
        SagbiConfig { iteration_cap: Some(cap) }
    }

    pub fn cap_for(&self, m: usize, n: usize) -> usize {
        self.iteration_cap.unwrap_or(10 * (m + n) * (m + n)).max(1)
    }
}

impl<F: Field> SagbiBasis<F> {
    pub fn elements(&self) -> &[BasisElement<F>] {
        &self.elements
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.elements.iter().map(|e| e.degree).collect()
    }

    pub fn curve(&self) -> (&Poly<F>, &Poly<F>) {
        (&self.f, &self.g)
    }

    /// gcd of the degree semigroup.
    pub fn degree_gcd(&self) -> usize {
        semigroup::gcd_all(self.degrees())
    }

    pub fn contains_degree(&self, d: usize) -> bool {
        semigroup::contains(&self.degrees(), d)
    }

    /// A monic product of basis elements of degree `d`, with its expression
    /// in `X, Y`; `None` when `d` is not in the semigroup.
    pub fn realize_degree(&self, d: usize) -> Option<(Poly<F>, BivarExpr<F>)> {
        let gens = self.degrees();
        let reach = reachable(&gens, d);
        let exps = factor_largest_first(&gens, d, &reach)?;
        let mut poly = Poly::one();
        let mut expr = BivarExpr::constant(F::one());
        for (el, &e) in self.elements.iter().zip(&exps) {
            if e > 0 {
                poly = &poly * &el.poly.pow(e);
                expr = expr.mul(&el.provenance.pow(e));
            }
        }
        Some((poly, expr))
    }

    /// Checks `provenance(f, g) = poly` for every element.
    pub fn provenance_holds(&self) -> bool {
        self.elements.iter().all(|e| e.provenance.eval(&self.f, &self.g) == e.poly)
    }
}

/// Powers of basis elements, extended on demand.
struct PowerCache<F: Field> {
    powers: Vec<Vec<Poly<F>>>,
}

impl<F: Field> PowerCache<F> {
    fn new(n: usize) -> Self {
        PowerCache { powers: vec![Vec::new(); n] }
    }

    fn power(&mut self, elems: &[BasisElement<F>], k: usize, e: u32) -> &Poly<F> {
        let list = &mut self.powers[k];
        if list.is_empty() {
            list.push(Poly::one());
        }
        while list.len() <= e as usize {
            let next = list.last().unwrap() * &elems[k].poly;
            list.push(next);
        }
        &list[e as usize]
    }

    fn product(&mut self, elems: &[BasisElement<F>], exps: &[u32]) -> Poly<F> {
        let mut acc: Option<Poly<F>> = None;
        for (k, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = self.power(elems, k, e);
            acc = Some(match acc {
                None => p.clone(),
                Some(a) => &a * p,
            });
        }
        acc.unwrap_or_else(Poly::one)
    }
}

type Consumed<F> = BTreeMap<Vec<u32>, F>;

fn subduct_raw<F: Field>(u: &Poly<F>, elems: &[BasisElement<F>]) -> (Poly<F>, Consumed<F>) {
    let mut consumed = Consumed::new();
    let Some(top) = u.deg() else {
        return (Poly::zero(), consumed);
    };
    let gens: Vec<usize> = elems.iter().map(|e| e.degree).collect();
    let reach = reachable(&gens, top);
    let mut cache = PowerCache::new(elems.len());
    let mut r = u.clone();
    while let Some(d) = r.deg() {
        if d == 0 || !reach[d] {
            break;
        }
        let exps = factor_largest_first(&gens, d, &reach).unwrap();
        let c = r.leading_coeff().unwrap().clone();
        let prod = cache.product(elems, &exps);
        r = &r - &prod.scale(&c);
        debug_assert!(r.deg().is_none_or(|nd| nd < d));
        let slot = consumed.entry(exps).or_insert_with(F::zero);
        *slot = slot.add(&c);
    }
    consumed.retain(|_, c| !c.is_zero());
    (r, consumed)
}

fn expand<F: Field>(consumed: &Consumed<F>, elems: &[BasisElement<F>]) -> BivarExpr<F> {
    let mut cache: Vec<Vec<BivarExpr<F>>> = vec![Vec::new(); elems.len()];
    let mut out = BivarExpr::zero();
    for (exps, c) in consumed {
        let mut term = BivarExpr::constant(c.clone());
        for (k, &e) in exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let list = &mut cache[k];
            if list.is_empty() {
                list.push(BivarExpr::constant(F::one()));
            }
            while list.len() <= e as usize {
                let next = list.last().unwrap().mul(&elems[k].provenance);
                list.push(next);
            }
            term = term.mul(&list[e as usize]);
        }
        out = out.add(&term);
    }
    out
}

/// Subduction of `u` by the basis.
///
/// Returns `(remainder, consumed)` with `u = consumed(f, g) + remainder`, where
/// the remainder is constant or has degree outside the degree semigroup.
/// When a degree has several factorizations the largest basis degree is
/// consumed first.
pub fn subduct<F: Field>(u: &Poly<F>, basis: &SagbiBasis<F>) -> (Poly<F>, BivarExpr<F>) {
    let (r, consumed) = subduct_raw(u, &basis.elements);
    (r, expand(&consumed, &basis.elements))
}

/// Remainder of the subduction of `u`, without building the consumed expression.
pub fn subduct_remainder<F: Field>(u: &Poly<F>, basis: &SagbiBasis<F>) -> Poly<F> {
    subduct_raw(u, &basis.elements).0
}

/// Subducts a candidate against `elems`; returns the normalized new element
/// if the remainder is nonconstant.
fn reduce_candidate<F: Field>(
    poly: &Poly<F>,
    prov: &BivarExpr<F>,
    elems: &[BasisElement<F>],
) -> Option<BasisElement<F>> {
    let (r, consumed) = subduct_raw(poly, elems);
    let degree = r.deg().filter(|&d| d > 0)?;
    let lc_inv = r.leading_coeff().unwrap().inv().unwrap();
    let provenance = prov.sub(&expand(&consumed, elems)).scale(&lc_inv);
    Some(BasisElement { poly: r.scale(&lc_inv), provenance, degree })
}

fn insert_sorted<F: Field>(elems: &mut Vec<BasisElement<F>>, el: BasisElement<F>) {
    let pos = elems.partition_point(|e| e.degree < el.degree);
    elems.insert(pos, el);
}

/// Removes elements whose degree is generated by the others, replacing each
/// by its subduction remainder. The generated subalgebra is unchanged.
fn interreduce<F: Field>(elems: &mut Vec<BasisElement<F>>) {
    loop {
        let degrees: Vec<usize> = elems.iter().map(|e| e.degree).collect();
        let redundant = (0..elems.len()).rev().find(|&k| {
            let others: Vec<usize> = degrees
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != k)
                .map(|(_, &d)| d)
                .collect();
            semigroup::contains(&others, degrees[k])
        });
        let Some(k) = redundant else { return };
        let el = elems.remove(k);
        if let Some(new) = reduce_candidate(&el.poly, &el.provenance, elems) {
            insert_sorted(elems, new);
        }
    }
}

pub fn sagbi_basis<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<SagbiBasis<F>> {
    sagbi_basis_with(f, g, &SagbiConfig::default())
}

/// Completes `{f, g}` to a SAGBI basis of `k[f, g]`.
///
/// Each round subducts the binomial relations among the current basis
/// degrees (the tête-à-têtes); the first nonconstant remainder is adjoined
/// and the round restarts. The degree semigroup grows strictly with every
/// adjunction, so the loop ends.
pub fn sagbi_basis_with<F: Field>(
    f: &Poly<F>,
    g: &Poly<F>,
    config: &SagbiConfig,
) -> Result<SagbiBasis<F>> {
    if f.is_constant() && g.is_constant() {
        return Err(AlgebraError::TrivialAlgebra);
    }
    let m = f.deg().unwrap_or(0);
    let n = g.deg().unwrap_or(0);
    let cap = config.cap_for(m, n);
    let mut steps = 0usize;
    let tick = |steps: &mut usize| {
        *steps += 1;
        if *steps > cap {
            Err(AlgebraError::InternalLimitExceeded(cap))
        } else {
            Ok(())
        }
    };

    let mut elems: Vec<BasisElement<F>> = Vec::new();
    for (poly, prov) in [(f, BivarExpr::x()), (g, BivarExpr::y())] {
        if poly.is_constant() {
            continue;
        }
        tick(&mut steps)?;
        if let Some(el) = reduce_candidate(poly, &prov, &elems) {
            insert_sorted(&mut elems, el);
            interreduce(&mut elems);
        }
    }

    'rounds: loop {
        let degrees: Vec<usize> = elems.iter().map(|e| e.degree).collect();
        let relations = semigroup::presentation(&degrees);
        let mut cache = PowerCache::new(elems.len());
        for rel in relations {
            tick(&mut steps)?;
            let lhs = cache.product(&elems, &rel.lhs);
            let rhs = cache.product(&elems, &rel.rhs);
            let diff = &lhs - &rhs;
            let (r, _) = subduct_raw(&diff, &elems);
            if r.is_constant() {
                continue;
            }
            let prov = expand(&BTreeMap::from([(rel.lhs.clone(), F::one())]), &elems)
                .sub(&expand(&BTreeMap::from([(rel.rhs.clone(), F::one())]), &elems));
            let el = reduce_candidate(&diff, &prov, &elems).expect("nonconstant remainder");
            insert_sorted(&mut elems, el);
            interreduce(&mut elems);
            continue 'rounds;
        }
        break;
    }

    Ok(SagbiBasis { elements: elems, f: f.clone(), g: g.clone() })
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
    fn example_curve_basis() {
        let (f, g) = example();
        let basis = sagbi_basis(&f, &g).unwrap();
        assert_eq!(basis.degrees(), vec![2, 3]);
        let els = basis.elements();
        assert_eq!(els[0].poly, z(2));
        assert_eq!(els[0].provenance, B::from_terms([(0, 1, r(1)), (2, 0, r(-1))]));
        assert_eq!(els[1].poly, z(3));
        assert_eq!(els[1].provenance, B::x());
        assert!(basis.provenance_holds());
    }

    #[test]
    fn redundant_generator_is_dropped() {
        let basis = sagbi_basis(&z(1), &z(7)).unwrap();
        assert_eq!(basis.degrees(), vec![1]);
        assert_eq!(basis.elements()[0].provenance, B::x());
    }

    #[test]
    fn already_complete_basis() {
        let basis = sagbi_basis(&z(2), &z(3)).unwrap();
        assert_eq!(basis.degrees(), vec![2, 3]);
        assert_eq!(basis.elements()[1].provenance, B::y());
    }

    #[test]
    fn non_monic_inputs_carry_scaling_in_provenance() {
        let f = P::from_ints(&[1, 0, 3]);
        let g = P::from_ints(&[0, 2]);
        let basis = sagbi_basis(&f, &g).unwrap();
        assert_eq!(basis.degrees(), vec![1]);
        assert_eq!(basis.elements()[0].provenance, B::monomial(Rational::new(1, 2), 0, 1));
        assert!(basis.provenance_holds());
    }

    #[test]
    fn completion_discovers_new_degrees() {
        // k[z^4 + z, z^6]: the tête-à-tête (z^6)^2 - (z^4 + z)^3 has degree 9
        let f = P::from_ints(&[0, 1, 0, 0, 1]);
        let g = z(6);
        let basis = sagbi_basis(&f, &g).unwrap();
        assert!(basis.provenance_holds());
        assert!(basis.degrees().len() >= 3);
        assert_eq!(basis.degree_gcd(), 1);
    }

    #[test]
    fn subduction_examples() {
        let (f, g) = example();
        let basis = sagbi_basis(&f, &g).unwrap();
        let (rem, consumed) = subduct(&P::from_ints(&[0, 2, 0, 0, 0, 6]), &basis);
        assert_eq!(rem, P::from_ints(&[0, 2]));
        assert_eq!(consumed, B::from_terms([(1, 1, r(6)), (3, 0, r(-6))]));

        let (rem, consumed) = subduct(&P::constant(r(7)), &basis);
        assert_eq!(rem, P::constant(r(7)));
        assert!(consumed.is_zero());

        let (rem, consumed) = subduct(&z(2), &basis);
        assert!(rem.is_zero());
        assert_eq!(consumed, B::from_terms([(0, 1, r(1)), (2, 0, r(-1))]));
    }

    #[test]
    fn trivial_algebra_rejected() {
        assert_eq!(
            sagbi_basis(&P::constant(r(3)), &P::constant(r(5))),
            Err(AlgebraError::TrivialAlgebra)
        );
    }

    #[test]
    fn iteration_cap_is_enforced() {
        let f = P::from_ints(&[0, 1, 0, 0, 1]);
        let err = sagbi_basis_with(&f, &z(6), &SagbiConfig::with_cap(2)).unwrap_err();
        assert_eq!(err, AlgebraError::InternalLimitExceeded(2));
    }
}
