//! Deterministic test corpora of plane curves with known line status.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field_poly::{Poly, Rational};
use crate::line::{apply_random_moves, random_line_curve_capped};

/// How a corpus curve was produced, which fixes whether it is a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveKind {
    /// Image of `(z, 0)` under elementary automorphisms.
    Line,
    /// A line composed with an inner polynomial of the given degree ≥ 2.
    Composed { inner_degree: usize },
    /// Automorphic image of `(z³, z⁶ + z²)` after an affine reparametrization.
    CuspPattern,
}

impl CurveKind {
    pub fn is_line(&self) -> bool {
        matches!(self, CurveKind::Line)
    }

    pub fn name(&self) -> &'static str {
        match self {
            CurveKind::Line => "line",
            CurveKind::Composed { .. } => "composed",
            CurveKind::CuspPattern => "cusp-pattern",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusCurve {
    pub f: Poly<Rational>,
    pub g: Poly<Rational>,
    pub kind: CurveKind,
}

/// Sizes and limits for [`curve_corpus`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub lines: usize,
    pub composed: usize,
    pub cusp_patterns: usize,
    pub max_steps: usize,
    pub max_coeff: i64,
    pub max_degree: usize,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        CorpusSpec {
            lines: 120,
            composed: 60,
            cusp_patterns: 40,
            max_steps: 7,
            max_coeff: 3,
            max_degree: 30,
        }
    }
}

fn random_inner(rng: &mut ChaCha8Rng, degree: usize, max_coeff: i64) -> Poly<Rational> {
    let mut coeffs: Vec<Rational> =
        (0..degree).map(|_| Rational::from(rng.gen_range(-max_coeff..=max_coeff))).collect();
    coeffs.push(Rational::from(1));
    Poly::new(coeffs)
}

/// Lines, lines composed with `z² + …` or `z³ + …`, and cusp-pattern curves,
/// in that order. Deterministic in `seed`.
pub fn curve_corpus(seed: u64, spec: &CorpusSpec) -> Vec<CorpusCurve> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(spec.lines + spec.composed + spec.cusp_patterns);
    for _ in 0..spec.lines {
        let steps = rng.gen_range(1..=spec.max_steps);
        let (f, g) = random_line_curve_capped(rng.gen(), steps, spec.max_coeff, spec.max_degree);
        out.push(CorpusCurve { f, g, kind: CurveKind::Line });
    }
    for _ in 0..spec.composed {
        let inner_degree = rng.gen_range(2..=3);
        let steps = rng.gen_range(1..=spec.max_steps);
        let cap = (spec.max_degree / inner_degree).max(1);
        let (f, g) = random_line_curve_capped(rng.gen(), steps, spec.max_coeff, cap);
        let q = random_inner(&mut rng, inner_degree, spec.max_coeff);
        out.push(CorpusCurve {
            f: f.compose(&q),
            g: g.compose(&q),
            kind: CurveKind::Composed { inner_degree },
        });
    }
    let z = Poly::<Rational>::identity();
    for _ in 0..spec.cusp_patterns {
        let mut pair = [z.pow(3), &z.pow(6) + &z.pow(2)];
        let steps = rng.gen_range(0..=spec.max_steps.min(4));
        apply_random_moves(&mut rng, &mut pair, steps, spec.max_coeff, spec.max_degree);
        let shift = random_inner(&mut rng, 1, spec.max_coeff);
        let [f, g] = pair;
        out.push(CorpusCurve { f: f.compose(&shift), g: g.compose(&shift), kind: CurveKind::CuspPattern });
    }
    out
}

/// Random curve with `deg f`, `deg g` drawn from `degrees` and small integer coefficients.
pub fn random_curve(
    seed: u64,
    degrees: std::ops::RangeInclusive<usize>,
    max_coeff: i64,
) -> (Poly<Rational>, Poly<Rational>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let d = rng.gen_range(degrees.clone());
        let mut coeffs: Vec<Rational> =
            (0..d).map(|_| Rational::from(rng.gen_range(-max_coeff..=max_coeff))).collect();
        let lead = loop {
            let c = rng.gen_range(-max_coeff..=max_coeff);
            if c != 0 {
                break c;
            }
        };
        coeffs.push(Rational::from(lead));
        Poly::new(coeffs)
    };
    let f = draw(&mut rng);
    let g = draw(&mut rng);
    (f, g)
}
