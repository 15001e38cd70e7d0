//! Acceptance checks, one line per criterion. All comparisons are exact.
//!
//! Run with `cargo test -p amoh-core --test acceptance -- --nocapture`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use amoh_core::corpus::{curve_corpus, random_curve, CorpusSpec, CurveKind};
use amoh_core::decompose::common_parameter;
use amoh_core::jacobian::{prop21_probe, random_tame_automorphism_traced};
use amoh_core::line::{criterion_check, is_line, reduce_to_line, LineReason};
use amoh_core::subalgebra::{
    brute_force_member, is_member, is_member_in, sagbi_basis, semigroup_represent, DeltaSequence,
};
use amoh_core::theorems::{check_prop22, check_strong_am, strong_am_sweep};
use amoh_core::subalgebra::SagbiConfig;
use amoh_core::{eval_bivariate, BivarExpr, Poly, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type P = Poly<Rational>;

struct Outcome {
    passed: bool,
    summary: String,
}

fn outcome(passed: bool, summary: impl Into<String>) -> Outcome {
    Outcome { passed, summary: summary.into() }
}

fn criterion(
    id: u32,
    name: &str,
    limit: Option<Duration>,
    body: impl FnOnce() -> Outcome,
) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let (mut passed, mut summary) = match result {
        Ok(o) => (o.passed, o.summary),
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            (false, format!("panicked: {msg}"))
        }
    };
    if let Some(limit) = limit {
        if elapsed > limit {
            passed = false;
            summary.push_str(&format!("; over time limit {limit:?}"));
        }
    }
    println!(
        "criterion {id} [{}] {name}: {summary} ({:.2}s)",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    passed
}

fn z(k: usize) -> P {
    P::monomial(Rational::from(1), k)
}

fn cusp_example() -> Outcome {
    let (f, g) = (z(3), &z(6) + &z(2));
    let mut ok = true;
    for u in [z(2), z(5)] {
        let r = is_member(&u, &f, &g).unwrap();
        ok &= r.member && eval_bivariate(r.certificate.as_ref().unwrap(), &f, &g) == u;
    }
    let v = is_line(&f, &g).unwrap();
    ok &= !v.is_line && matches!(v.reason, LineReason::DivisibilityFailure { .. });
    let s = check_strong_am(&f, &g, 1).unwrap();
    ok &= s.applicable && s.divisibility_holds && g.deg().unwrap() % f.deg().unwrap() == 0;
    ok &= s.u_degree == 2 && s.v_degree == 5;
    outcome(ok, format!("z^2, z^5 members; verdict {}; strong AM at a = 1 applicable", v.reason.name()))
}

fn decider_agreement() -> Outcome {
    let corpus = curve_corpus(2024, &CorpusSpec::default());
    let lines = corpus.iter().filter(|c| c.kind.is_line()).count();
    let max_line_degree = corpus
        .iter()
        .filter(|c| c.kind.is_line())
        .map(|c| c.f.deg().unwrap_or(0).max(c.g.deg().unwrap_or(0)))
        .max()
        .unwrap_or(0);
    let mut disagreements = 0;
    let mut wrong_kind = 0;
    let mut bad_inverses = 0;
    for c in &corpus {
        let crit = criterion_check(&c.f, &c.g).unwrap();
        let red = reduce_to_line(&c.f, &c.g);
        disagreements += usize::from(crit != red.is_line);
        wrong_kind += usize::from(red.is_line != c.kind.is_line());
        if c.kind.is_line() {
            let good = red.inverse.as_ref().is_some_and(|inv| eval_bivariate(inv, &c.f, &c.g) == P::identity());
            bad_inverses += usize::from(!good);
        }
    }
    let ok = corpus.len() >= 200 && lines >= 100 && disagreements == 0 && wrong_kind == 0 && bad_inverses == 0;
    outcome(
        ok,
        format!(
            "{} curves ({lines} lines, max line degree {max_line_degree}); {disagreements} disagreements, \
             {wrong_kind} misclassified, {bad_inverses} bad inverses",
            corpus.len()
        ),
    )
}

fn random_certificate(rng: &mut ChaCha8Rng, m: usize, n: usize, budget: usize) -> BivarExpr<Rational> {
    let mut p = BivarExpr::zero();
    for _ in 0..rng.gen_range(1..=6) {
        let i = rng.gen_range(0..=budget / m);
        let j = rng.gen_range(0..=(budget - i * m) / n);
        let c = loop {
            let c = rng.gen_range(-5i64..=5);
            if c != 0 {
                break c;
            }
        };
        p.add_term(i as u32, j as u32, Rational::from(c));
    }
    p
}

fn membership_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let curves: Vec<(P, P)> = (0..20).map(|s| random_curve(1000 + s, 2..=6, 3)).collect();
    let mut failures = 0;
    let mut members = Vec::new();
    for (k, (f, g)) in curves.iter().enumerate() {
        let basis = sagbi_basis(f, g).unwrap();
        let (m, n) = (f.deg().unwrap(), g.deg().unwrap());
        for _ in 0..25 {
            let p = random_certificate(&mut rng, m, n, 40);
            assert!(p.weighted_degree(m, n).unwrap_or(0) <= 40);
            let u = eval_bivariate(&p, f, g);
            let r = is_member_in(&u, &basis).unwrap();
            let ok = r.member && eval_bivariate(r.certificate.as_ref().unwrap(), f, g) == u;
            failures += usize::from(!ok);
            if members.len() < 35 && rng.gen_bool(0.1) {
                members.push((k, u));
            }
        }
    }
    let mut non_members = Vec::new();
    let mut attempts = 0;
    while non_members.len() < 15 && attempts < 10_000 {
        attempts += 1;
        let k = rng.gen_range(0..curves.len());
        let (f, g) = &curves[k];
        let len = rng.gen_range(2..=12);
        let coeffs: Vec<i64> = (0..len).map(|_| rng.gen_range(-3..=3)).collect();
        let u = P::from_ints(&coeffs);
        if !is_member(&u, f, g).unwrap().member {
            non_members.push((k, u));
        }
    }
    let mut oracle_mismatches = 0;
    let sample: Vec<&(usize, P)> = members.iter().chain(&non_members).collect();
    for (k, u) in &sample {
        let (f, g) = &curves[*k];
        let bound = u.deg().unwrap_or(0) + f.deg().unwrap() * g.deg().unwrap();
        let oracle = brute_force_member(u, f, g, bound);
        let member = is_member(u, f, g).unwrap().member;
        let oracle_ok = oracle.as_ref().is_none_or(|c| eval_bivariate(c, f, g) == *u);
        oracle_mismatches += usize::from(member != oracle.is_some() || !oracle_ok);
    }
    let ok = failures == 0 && sample.len() == 50 && non_members.len() >= 10 && oracle_mismatches == 0;
    outcome(
        ok,
        format!(
            "500 certificates, {failures} failures; oracle sample {} ({} non-members), {oracle_mismatches} mismatches",
            sample.len(),
            non_members.len()
        ),
    )
}

fn semigroup_representation() -> Outcome {
    let delta = DeltaSequence::from_deltas(vec![6, 3, 2]).unwrap();
    let modulus = delta.d(2) / delta.d(3);
    let mut mismatches = 0;
    let mut representable = 0;
    for k in 0..=30usize {
        let mut tails = std::collections::BTreeSet::new();
        for a0 in 0..=k / 6 {
            for a1 in 0..=k / 3 {
                for a2 in 0..modulus {
                    if 6 * a0 + 3 * a1 + 2 * a2 == k {
                        tails.insert(a2);
                    }
                }
            }
        }
        let mut any = false;
        for a0 in 0..=k / 6 {
            for a1 in 0..=k / 3 {
                let rest = k as isize - (6 * a0 + 3 * a1) as isize;
                any |= rest >= 0 && rest % 2 == 0;
            }
        }
        let fine = match semigroup_represent(k, &delta) {
            Ok(r) => {
                representable += 1;
                let total: usize = r.alphas.iter().zip(&delta.deltas).map(|(a, d)| a * d).sum();
                any && tails.len() == 1 && tails.contains(&r.alphas[2]) && total == k
            }
            Err(_) => !any && tails.is_empty(),
        };
        mismatches += usize::from(!fine);
    }
    outcome(mismatches == 0, format!("degrees 0..=30, {representable} representable, {mismatches} mismatches"))
}

fn strong_am_assertion() -> Outcome {
    let spec = CorpusSpec { lines: 80, composed: 60, cusp_patterns: 60, max_degree: 24, ..Default::default() };
    let corpus = curve_corpus(99, &spec);
    // 40 lines, 30 composed and 30 cusp patterns, both generators nonconstant
    let mut quotas = [40usize, 30, 30];
    let mut pairs = Vec::new();
    for c in &corpus {
        if c.f.is_constant() || c.g.is_constant() {
            continue;
        }
        let slot = match c.kind {
            CurveKind::Line => 0,
            CurveKind::Composed { .. } => 1,
            CurveKind::CuspPattern => 2,
        };
        if quotas[slot] > 0 {
            quotas[slot] -= 1;
            pairs.push(c);
        }
    }
    let mut cases = 0;
    let mut applicable = 0;
    let mut violations = 0;
    for c in &pairs {
        match strong_am_sweep(&c.f, &c.g, &SagbiConfig::default()) {
            Ok(reports) => {
                for r in reports {
                    cases += 1;
                    applicable += usize::from(r.applicable);
                    violations += usize::from(r.applicable && !r.divisibility_holds);
                }
            }
            Err(_) => violations += 1,
        }
    }
    outcome(
        violations == 0 && pairs.len() == 100,
        format!(
            "{} nonconstant pairs, {cases} values of a, {applicable} applicable, {violations} violations",
            pairs.len()
        ),
    )
}

fn characterization_grid() -> Outcome {
    let zz = P::identity();
    let mut curves = 0;
    let mut failures = 0;
    let mut perturbed_passing = 0;
    for c in -3i64..=3 {
        for b in [-3i64, -2, -1, 1, 2, 3] {
            for n in 2u32..=7 {
                curves += 1;
                let f = &zz + &P::constant(Rational::from(c));
                let g = &f.pow(n) - &P::constant(Rational::from(b));
                let r = check_prop22(&f, &g).unwrap();
                let ok = r.condition_221_holds
                    && r.condition_222_holds
                    && r.is_line
                    && r.derived_derivatives_verified
                    && r.canonical_c == Some(Rational::from(c))
                    && r.canonical_b == Some(Rational::from(b));
                failures += usize::from(!ok);
                let p = check_prop22(&f, &(&g + &zz)).unwrap();
                perturbed_passing += usize::from(p.condition_221_holds && p.condition_222_holds);
            }
        }
    }
    outcome(
        failures == 0 && perturbed_passing == 0,
        format!("{curves} curves, {failures} failures; {perturbed_passing} perturbed variants pass both conditions"),
    )
}

fn forward_jacobian() -> Outcome {
    let mut failures = 0;
    let mut max_y = 0;
    for seed in 0..50u64 {
        let t = random_tame_automorphism_traced(seed, 5, 16);
        max_y = max_y.max(t.f.y_degree().unwrap_or(0)).max(t.g.y_degree().unwrap_or(0));
        let r = prop21_probe(&t.f, &t.g).unwrap();
        let (f, g) = (t.f.as_y_poly(), t.g.as_y_poly());
        let verifies = |m: &amoh_core::subalgebra::MembershipResult<_>, target: &Poly<_>| {
            m.member && eval_bivariate(m.certificate.as_ref().unwrap(), f, g) == *target
        };
        let ok = r.jacobian_constant
            && r.jacobian.as_constant() == Some(t.expected_jacobian.clone())
            && verifies(&r.fy_member, t.f.partial_y().as_y_poly())
            && verifies(&r.gy_member, t.g.partial_y().as_y_poly());
        failures += usize::from(!ok);
    }
    outcome(failures == 0 && max_y <= 16, format!("50 automorphisms (max y-degree {max_y}), {failures} failures"))
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize) -> P {
    let mut c: Vec<i64> = (0..degree).map(|_| rng.gen_range(-3..=3)).collect();
    c.push(loop {
        let x = rng.gen_range(-3i64..=3);
        if x != 0 {
            break x;
        }
    });
    P::from_ints(&c)
}

fn decomposition_round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = 0;
    let mut strictly_larger = 0;
    for _ in 0..100 {
        let e = rng.gen_range(2..=3);
        let top = 24 / e;
        let h = random_poly(&mut rng, e);
        let (df, dg) = (rng.gen_range(1..=top), rng.gen_range(1..=top));
        let ft = random_poly(&mut rng, df);
        let gt = random_poly(&mut rng, dg);
        let (f, g) = (ft.compose(&h), gt.compose(&h));
        let d = common_parameter(&f, &g).unwrap();
        let recovered = d.inner_degree();
        strictly_larger += usize::from(recovered > e);
        let v = is_line(&f, &g).unwrap();
        let ok = recovered >= e
            && d.f_tilde.compose(&d.h) == f
            && d.g_tilde.compose(&d.h) == g
            && f.deg().unwrap() <= 24
            && g.deg().unwrap() <= 24
            && matches!(v.reason, LineReason::UnfaithfulParameter { deg_h } if deg_h == recovered);
        failures += usize::from(!ok);
    }
    outcome(failures == 0, format!("100 triples, {failures} failures ({strictly_larger} with a larger inner factor)"))
}

#[test]
fn acceptance() {
    let results = [
        criterion(1, "cusp curve example", Some(Duration::from_secs(1)), cusp_example),
        criterion(2, "decider agreement on corpus", Some(Duration::from_secs(60)), decider_agreement),
        criterion(3, "membership round trip and oracle", None, membership_round_trip),
        criterion(4, "semigroup representation over (6, 3, 2)", None, semigroup_representation),
        criterion(5, "strong AM divisibility sweep", None, strong_am_assertion),
        criterion(6, "two-condition characterization grid", Some(Duration::from_secs(10)), characterization_grid),
        criterion(7, "forward Jacobian probe", Some(Duration::from_secs(120)), forward_jacobian),
        criterion(8, "decomposition round trip", None, decomposition_round_trip),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    assert!(results.iter().all(|&p| p));
}
