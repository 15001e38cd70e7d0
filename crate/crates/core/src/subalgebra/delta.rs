use super::basis::{sagbi_basis_with, SagbiBasis, SagbiConfig};
use super::semigroup::gcd;
use crate::error::{AlgebraError, Result};
use crate::field_poly::{Field, Poly};

/// Degree sequence `(δ_0, …, δ_h)` with `δ_0 = deg g`, `δ_1 = deg f`, and the
/// gcd chain `(d_2, …, d_{h+1})`, `d_{i+1} = gcd(δ_0, …, δ_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaSequence {
    pub deltas: Vec<usize>,
    pub ds: Vec<usize>,
    pub h: usize,
}

impl DeltaSequence {
    /// Builds a sequence from raw degrees, computing the gcd chain.
    /// Requires at least two positive entries.
    pub fn from_deltas(deltas: Vec<usize>) -> Result<Self> {
        if deltas.len() < 2 || deltas.contains(&0) {
            return Err(AlgebraError::PreconditionViolated(
                "a degree sequence needs at least two positive entries".into(),
            ));
        }
        let mut ds = Vec::with_capacity(deltas.len() - 1);
        let mut acc = deltas[0];
        for &d in &deltas[1..] {
            acc = gcd(acc, d);
            ds.push(acc);
        }
        Ok(DeltaSequence { h: deltas.len() - 1, deltas, ds })
    }

    /// `d_i` for `2 ≤ i ≤ h + 1`.
    pub fn d(&self, i: usize) -> usize {
        self.ds[i - 2]
    }

    /// True when the parameter is faithful, i.e. `d_{h+1} = 1`.
    pub fn ends_at_one(&self) -> bool {
        self.ds.last() == Some(&1)
    }
}

/// Coefficients `(α_0, …, α_h)` with `Σ α_i δ_i = degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupRepr {
    pub alphas: Vec<usize>,
}

pub fn delta_sequence<F: Field>(f: &Poly<F>, g: &Poly<F>) -> Result<DeltaSequence> {
    delta_sequence_with(f, g, &SagbiConfig::default())
}

pub fn delta_sequence_with<F: Field>(
    f: &Poly<F>,
    g: &Poly<F>,
    config: &SagbiConfig,
) -> Result<DeltaSequence> {
    if f.is_constant() && g.is_constant() {
        return Err(AlgebraError::TrivialAlgebra);
    }
    if f.is_constant() || g.is_constant() {
        return Err(AlgebraError::PreconditionViolated(
            "the degree sequence needs both generators nonconstant".into(),
        ));
    }
    let basis = sagbi_basis_with(f, g, config)?;
    Ok(delta_sequence_from_basis(&basis))
}

/// Extends `(deg g, deg f)` by the smallest semigroup degree not divisible by
/// the current gcd until the gcd reaches that of the whole semigroup.
pub fn delta_sequence_from_basis<F: Field>(basis: &SagbiBasis<F>) -> DeltaSequence {
    let (f, g) = basis.curve();
    let mut deltas = vec![g.deg().unwrap(), f.deg().unwrap()];
    let mut d = gcd(deltas[0], deltas[1]);
    let mut ds = vec![d];
    let target = basis.degree_gcd();
    let degrees = basis.degrees();
    while d > target {
        // a semigroup element not divisible by d contains such a generator,
        // so the smallest one is a generator
        let next = *degrees
            .iter()
            .filter(|&&e| e % d != 0)
            .min()
            .expect("the gcd chain has not reached the semigroup gcd");
        deltas.push(next);
        d = gcd(d, next);
        ds.push(d);
    }
    DeltaSequence { h: deltas.len() - 1, deltas, ds }
}

fn mod_inverse(a: usize, modulus: usize) -> usize {
    if modulus == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i64, modulus as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(modulus as i64) as usize
}

/// Writes `degree = Σ α_i δ_i` with `0 ≤ α_i < d_i / d_{i+1}` for `i ≥ 2`.
///
/// The constrained coefficients are fixed from the top down: all of
/// `δ_0, …, δ_{i-1}` are multiples of `d_i`, so `α_i δ_i` is pinned modulo
/// `d_i`, and `gcd(d_i/d_{i+1}, δ_i/d_{i+1}) = 1` makes `α_i` unique in range.
/// The remaining `α_0 δ_0 + α_1 δ_1` is solved with `α_0` as large as possible.
pub fn semigroup_represent(degree: usize, delta: &DeltaSequence) -> Result<SemigroupRepr> {
    let h = delta.h;
    let not_in = || AlgebraError::NotInSemigroup(degree);
    let mut alphas = vec![0usize; h + 1];
    if !degree.is_multiple_of(delta.d(h + 1)) {
        return Err(not_in());
    }
    let mut rem = degree;
    for i in (2..=h).rev() {
        let (di, dnext) = (delta.d(i), delta.d(i + 1));
        let modulus = di / dnext;
        let step = (delta.deltas[i] / dnext) % modulus;
        let alpha = ((rem / dnext) % modulus) * mod_inverse(step, modulus) % modulus;
        rem = rem.checked_sub(alpha * delta.deltas[i]).ok_or_else(not_in)?;
        alphas[i] = alpha;
    }
    let (d0, d1) = (delta.deltas[0], delta.deltas[1]);
    let a0 = (0..=rem / d0)
        .rev()
        .find(|a0| (rem - a0 * d0).is_multiple_of(d1))
        .ok_or_else(not_in)?;
    alphas[0] = a0;
    alphas[1] = (rem - a0 * d0) / d1;
    Ok(SemigroupRepr { alphas })
}
