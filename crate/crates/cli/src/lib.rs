//! The `amoh` command-line tool.

pub mod parse;

use std::io::{BufRead, Write};

use amoh_core::corpus::{curve_corpus, CorpusSpec, CurveKind};
use amoh_core::decompose::{common_parameter, Decomposition};
use amoh_core::jacobian::prop21_probe_with;
use amoh_core::line::{is_line_with, LineReason, LineVerdict};
use amoh_core::subalgebra::{
    delta_sequence_from_basis, is_member_in, sagbi_basis_with, semigroup_represent, DeltaSequence,
    MembershipResult, SagbiBasis, SagbiConfig,
};
use amoh_core::theorems::{check_prop22_with, check_strong_am_with, strong_am_sweep, StrongAmReport};
use amoh_core::{AlgebraError, BivarExpr, Field, Poly, Rational};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;

use crate::parse::{parse_bipoly, parse_poly, ParseError};

/// Environment variable overriding the subalgebra completion cap.
pub const ITER_CAP_VAR: &str = "AMOH_ITER_CAP";

#[derive(Debug, Parser)]
#[command(name = "amoh", version, about = "Exact algebra of plane polynomial curves")]
pub struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[arg(long = "f")]
    pub f: String,
    #[arg(long = "g")]
    pub g: String,
    /// Name of the parameter variable.
    #[arg(long, default_value = "z")]
    pub var: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether k[f, g] = k[z], with an inverse when it is.
    IsLine(CurveArgs),
    /// Test u ∈ k[f, g]; reads one u per line from stdin when --u is absent.
    Member {
        #[arg(long = "u")]
        u: Option<String>,
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// Basis of k[f, g] whose degrees generate the degree semigroup.
    Sagbi(CurveArgs),
    /// δ-sequence and gcd chain of the degree semigroup.
    Delta(CurveArgs),
    /// Express a degree over a δ-sequence.
    Represent {
        #[arg(long)]
        degree: usize,
        /// Comma-separated δ-sequence, instead of --f/--g.
        #[arg(long, conflicts_with_all = ["f", "g"])]
        deltas: Option<String>,
        #[arg(long = "f", requires = "g")]
        f: Option<String>,
        #[arg(long = "g", requires = "f")]
        g: Option<String>,
        #[arg(long, default_value = "z")]
        var: String,
    },
    /// Largest common inner factor h with f = f̃(h), g = g̃(h).
    Decompose(CurveArgs),
    /// Witnesses of degrees m − a, n − a and the divisibility conclusion.
    StrongAm {
        /// Check one a; all admissible a when omitted.
        #[arg(long)]
        a: Option<usize>,
        #[command(flatten)]
        curve: CurveArgs,
    },
    /// The two conditions n f'g − m f g' ∈ k*, f^(n/d) − g^(m/d) ∈ k and their consequences.
    Prop22(CurveArgs),
    /// Jacobian of (f, g) in x, y and membership of f_y, g_y in k(x)[f, g].
    JacobianProbe {
        #[arg(long = "f")]
        f: String,
        #[arg(long = "g")]
        g: String,
    },
    /// Write a deterministic curve corpus as line-delimited JSON.
    GenCorpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = CorpusSpec::default().lines)]
        lines: usize,
        #[arg(long, default_value_t = CorpusSpec::default().composed)]
        composed: usize,
        #[arg(long, default_value_t = CorpusSpec::default().cusp_patterns)]
        cusp: usize,
        #[arg(long, default_value_t = CorpusSpec::default().max_steps)]
        max_steps: usize,
        #[arg(long, default_value_t = CorpusSpec::default().max_coeff)]
        max_coeff: i64,
        #[arg(long, default_value_t = CorpusSpec::default().max_degree)]
        max_degree: usize,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("--{arg}: {source}")]
    Parse { arg: String, source: ParseError },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Algebra(AlgebraError::InternalInconsistency(_))
            | CliError::Algebra(AlgebraError::InternalLimitExceeded(_)) => 2,
            _ => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "Usage",
            CliError::Parse { .. } => "ParseError",
            CliError::Io(_) => "Io",
            CliError::Algebra(e) => match e {
                AlgebraError::DivisionByZeroPoly => "DivisionByZeroPoly",
                AlgebraError::TrivialAlgebra => "TrivialAlgebra",
                AlgebraError::NotInSemigroup(_) => "NotInSemigroup",
                AlgebraError::BadDegree { .. } => "BadDegree",
                AlgebraError::NotComposable => "NotComposable",
                AlgebraError::NotMonic(_) => "NotMonic",
                AlgebraError::PreconditionViolated(_) => "PreconditionViolated",
                AlgebraError::InternalLimitExceeded(_) => "InternalLimitExceeded",
                AlgebraError::InternalInconsistency(_) => "InternalInconsistency",
            },
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "error": self.kind(), "message": self.to_string() });
        if let CliError::Parse { arg, source } = self {
            v["argument"] = json!(arg);
            v["position"] = json!(source.position);
            v["expected"] = json!(source.expected);
        }
        v
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Completion cap from [`ITER_CAP_VAR`], if set.
pub fn config_from_env() -> CliResult<SagbiConfig> {
    match std::env::var(ITER_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(SagbiConfig::with_cap)
            .map_err(|_| CliError::Usage(format!("{ITER_CAP_VAR} must be a nonnegative integer, got {v:?}"))),
        Err(_) => Ok(SagbiConfig::default()),
    }
}

fn poly_arg(arg: &str, text: &str, var: &str) -> CliResult<Poly<Rational>> {
    parse_poly(text, var).map_err(|source| CliError::Parse { arg: arg.to_string(), source })
}

fn curve(c: &CurveArgs) -> CliResult<(Poly<Rational>, Poly<Rational>)> {
    Ok((poly_arg("f", &c.f, &c.var)?, poly_arg("g", &c.g, &c.var)?))
}

/// Terms of a certificate as `[{"i", "j", "coeff"}]`, ordered by `(i, j)`.
pub fn certificate_json<F: Field>(e: &BivarExpr<F>) -> Value {
    Value::Array(
        e.terms()
            .map(|(i, j, c)| json!({ "i": i, "j": j, "coeff": c.to_string() }))
            .collect(),
    )
}

pub fn membership_json<F: Field>(m: &MembershipResult<F>) -> Value {
    match (&m.certificate, m.obstruction_degree) {
        (Some(cert), _) if m.member => json!({ "member": true, "certificate": certificate_json(cert) }),
        (_, d) => json!({ "member": false, "obstruction_degree": d }),
    }
}

fn membership_text<F: Field>(u: &str, m: &MembershipResult<F>) -> String {
    match &m.certificate {
        Some(cert) if m.member => format!("member: {u} = {}", cert.render("X", "Y")),
        _ => format!(
            "not a member: {u} (subduction stops in degree {})",
            m.obstruction_degree.map_or("?".into(), |d| d.to_string())
        ),
    }
}

fn reason_detail(r: &LineReason) -> Value {
    match r {
        LineReason::DerivativeNotMember { which } => json!({ "which": format!("{which:?}") }),
        LineReason::DivisibilityFailure { m, n } => json!({ "m": m, "n": n }),
        LineReason::UnfaithfulParameter { deg_h } => json!({ "deg_h": deg_h }),
        LineReason::CriterionHolds | LineReason::AlgebraTrivial => json!({}),
    }
}

fn verdict_json(v: &LineVerdict<Rational>) -> Value {
    json!({
        "is_line": v.is_line,
        "reason": v.reason.name(),
        "detail": reason_detail(&v.reason),
        "inverse": v.inverse.as_ref().map(certificate_json),
    })
}

fn verdict_text(v: &LineVerdict<Rational>, var: &str) -> String {
    match (&v.inverse, &v.reason) {
        (Some(inv), _) => format!("line: {var} = {}", inv.render("X", "Y")),
        (None, LineReason::DivisibilityFailure { m, n }) => {
            format!("not a line: DivisibilityFailure (elimination stalls at degrees {m} and {n}, neither divides the other)")
        }
        (None, LineReason::UnfaithfulParameter { deg_h }) => {
            format!("not a line: UnfaithfulParameter (common inner factor of degree {deg_h})")
        }
        (None, LineReason::DerivativeNotMember { which }) => {
            format!("not a line: DerivativeNotMember ({which:?}' is not in k[f, g])")
        }
        (None, r) => format!("not a line: {}", r.name()),
    }
}

fn basis_json(b: &SagbiBasis<Rational>, var: &str) -> Value {
    json!({
        "degrees": b.degrees(),
        "elements": b.elements().iter().map(|e| json!({
            "degree": e.degree,
            "poly": e.poly.render(var),
            "provenance": certificate_json(&e.provenance),
        })).collect::<Vec<_>>(),
    })
}

fn delta_json(d: &DeltaSequence) -> Value {
    json!({ "deltas": d.deltas, "ds": d.ds, "h": d.h })
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(", ")
}

fn decomposition_json(d: &Decomposition<Rational>, var: &str) -> Value {
    json!({
        "h": d.h.render(var),
        "f_tilde": d.f_tilde.render("w"),
        "g_tilde": d.g_tilde.render("w"),
        "inner_degree": d.inner_degree(),
        "faithful": d.inner_degree() == 1,
    })
}

fn strong_am_json(r: &StrongAmReport<Rational>) -> Value {
    json!({
        "a": r.a,
        "applicable": r.applicable,
        "u_degree": r.u_degree,
        "v_degree": r.v_degree,
        "u_witness": r.u_witness.as_ref().map(certificate_json),
        "v_witness": r.v_witness.as_ref().map(certificate_json),
        "divisibility_holds": r.divisibility_holds,
        "inner_degree": r.inner_degree,
        "u_alphas": r.u_repr.as_ref().map(|x| x.alphas.clone()),
        "v_alphas": r.v_repr.as_ref().map(|x| x.alphas.clone()),
    })
}

fn strong_am_text(r: &StrongAmReport<Rational>) -> String {
    if r.applicable {
        format!(
            "a = {}: witnesses u = {}, v = {} (degrees {}, {}); divisibility {}",
            r.a,
            r.u_witness.as_ref().unwrap().render("X", "Y"),
            r.v_witness.as_ref().unwrap().render("X", "Y"),
            r.u_degree,
            r.v_degree,
            if r.divisibility_holds { "holds" } else { "FAILS" }
        )
    } else {
        format!("a = {}: no elements of degrees {} and {}", r.a, r.u_degree, r.v_degree)
    }
}

fn opt_string<T: ToString>(x: &Option<T>) -> Value {
    x.as_ref().map_or(Value::Null, |v| json!(v.to_string()))
}

struct Io<'a> {
    stdin: &'a mut dyn BufRead,
    out: &'a mut dyn Write,
    json: bool,
}

impl Io<'_> {
    fn emit(&mut self, value: Value, text: impl FnOnce() -> String) -> CliResult<()> {
        if self.json {
            writeln!(self.out, "{value}")?;
        } else {
            writeln!(self.out, "{}", text())?;
        }
        Ok(())
    }
}

fn dispatch(cmd: Command, io: &mut Io<'_>, config: &SagbiConfig) -> CliResult<i32> {
    match cmd {
        Command::IsLine(c) => {
            let (f, g) = curve(&c)?;
            let v = is_line_with(&f, &g, config)?;
            io.emit(verdict_json(&v), || verdict_text(&v, &c.var))?;
        }
        Command::Member { u, curve: c } => {
            let (f, g) = curve(&c)?;
            let basis = sagbi_basis_with(&f, &g, config)?;
            match u {
                Some(text) => {
                    let u = poly_arg("u", &text, &c.var)?;
                    let m = is_member_in(&u, &basis)?;
                    io.emit(membership_json(&m), || membership_text(&text, &m))?;
                }
                None => return member_batch(&basis, &c.var, io),
            }
        }
        Command::Sagbi(c) => {
            let (f, g) = curve(&c)?;
            let b = sagbi_basis_with(&f, &g, config)?;
            io.emit(basis_json(&b, &c.var), || {
                b.elements()
                    .iter()
                    .map(|e| format!("degree {}: {} = {}", e.degree, e.poly.render(&c.var), e.provenance))
                    .collect::<Vec<_>>()
                    .join("\n")
            })?;
        }
        Command::Delta(c) => {
            let (f, g) = curve(&c)?;
            let d = delta_sequence_from_basis(&sagbi_basis_with(&f, &g, config)?);
            io.emit(delta_json(&d), || {
                format!("delta = ({})\nd = ({})", join(&d.deltas), join(&d.ds))
            })?;
        }
        Command::Represent { degree, deltas, f, g, var } => {
            let delta = match (deltas, f, g) {
                (Some(list), _, _) => {
                    let values = list
                        .split(',')
                        .map(|s| s.trim().parse::<usize>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| CliError::Usage(format!("--deltas: expected integers, got {list:?}")))?;
                    DeltaSequence::from_deltas(values)?
                }
                (None, Some(f), Some(g)) => {
                    let (f, g) = curve(&CurveArgs { f, g, var })?;
                    delta_sequence_from_basis(&sagbi_basis_with(&f, &g, config)?)
                }
                _ => return Err(CliError::Usage("represent needs --deltas or both --f and --g".into())),
            };
            match semigroup_represent(degree, &delta) {
                Ok(r) => io.emit(
                    json!({ "degree": degree, "deltas": delta.deltas, "representable": true, "alphas": r.alphas }),
                    || {
                        let terms: Vec<String> =
                            r.alphas.iter().zip(&delta.deltas).map(|(a, d)| format!("{a}*{d}")).collect();
                        format!("{degree} = {}  alpha = ({})", terms.join(" + "), join(&r.alphas))
                    },
                )?,
                Err(AlgebraError::NotInSemigroup(_)) => io.emit(
                    json!({ "degree": degree, "deltas": delta.deltas, "representable": false, "alphas": null }),
                    || format!("{degree} is not in the semigroup generated by ({})", join(&delta.deltas)),
                )?,
                Err(e) => return Err(e.into()),
            }
        }
        Command::Decompose(c) => {
            let (f, g) = curve(&c)?;
            let d = common_parameter(&f, &g)?;
            io.emit(decomposition_json(&d, &c.var), || {
                format!(
                    "h = {}\nf = f~(h), f~ = {}\ng = g~(h), g~ = {}",
                    d.h.render(&c.var),
                    d.f_tilde.render("w"),
                    d.g_tilde.render("w")
                )
            })?;
        }
        Command::StrongAm { a, curve: c } => {
            let (f, g) = curve(&c)?;
            match a {
                Some(a) => {
                    let r = check_strong_am_with(&f, &g, a, config)?;
                    io.emit(strong_am_json(&r), || strong_am_text(&r))?;
                }
                None => {
                    let reports = strong_am_sweep(&f, &g, config)?;
                    io.emit(
                        json!({ "reports": reports.iter().map(strong_am_json).collect::<Vec<_>>() }),
                        || reports.iter().map(strong_am_text).collect::<Vec<_>>().join("\n"),
                    )?;
                }
            }
        }
        Command::Prop22(c) => {
            let (f, g) = curve(&c)?;
            let r = check_prop22_with(&f, &g, config)?;
            io.emit(
                json!({
                    "condition_221_holds": r.condition_221_holds,
                    "a": opt_string(&r.a),
                    "condition_222_holds": r.condition_222_holds,
                    "b": opt_string(&r.b),
                    "is_line": r.is_line,
                    "canonical_c": opt_string(&r.canonical_c),
                    "canonical_b": opt_string(&r.canonical_b),
                    "derived_derivatives_verified": r.derived_derivatives_verified,
                }),
                || {
                    let show = |x: &Option<Rational>| x.as_ref().map_or("-".into(), Rational::to_string);
                    format!(
                        "n f'g - m f g' constant nonzero: {} (a = {})\nf^(n/d) - g^(m/d) constant: {} (b = {})\nline: {}\ncanonical form: c = {}, b = {}\nderivative identities verified: {}",
                        r.condition_221_holds,
                        show(&r.a),
                        r.condition_222_holds,
                        show(&r.b),
                        r.is_line,
                        show(&r.canonical_c),
                        show(&r.canonical_b),
                        r.derived_derivatives_verified
                    )
                },
            )?;
        }
        Command::JacobianProbe { f, g } => {
            let parse = |arg: &str, t: &str| {
                parse_bipoly(t).map_err(|source| CliError::Parse { arg: arg.to_string(), source })
            };
            let (f, g) = (parse("f", &f)?, parse("g", &g)?);
            let r = prop21_probe_with(&f, &g, config)?;
            io.emit(
                json!({
                    "jacobian": r.jacobian.render(),
                    "jacobian_constant": r.jacobian_constant,
                    "fy_member": membership_json(&r.fy_member),
                    "gy_member": membership_json(&r.gy_member),
                }),
                || {
                    format!(
                        "jacobian = {} (nonzero constant: {})\nf_y: {}\ng_y: {}",
                        r.jacobian.render(),
                        r.jacobian_constant,
                        membership_text("f_y", &r.fy_member),
                        membership_text("g_y", &r.gy_member)
                    )
                },
            )?;
        }
        Command::GenCorpus { seed, lines, composed, cusp, max_steps, max_coeff, max_degree } => {
            if max_steps == 0 {
                return Err(CliError::Usage("--max-steps must be positive".into()));
            }
            let spec = CorpusSpec { lines, composed, cusp_patterns: cusp, max_steps, max_coeff, max_degree };
            for c in curve_corpus(seed, &spec) {
                let inner = match c.kind {
                    CurveKind::Composed { inner_degree } => json!(inner_degree),
                    _ => Value::Null,
                };
                let row = json!({
                    "f": c.f.render("z"),
                    "g": c.g.render("z"),
                    "kind": c.kind.name(),
                    "inner_degree": inner,
                });
                writeln!(io.out, "{row}")?;
            }
        }
    }
    Ok(0)
}

fn member_batch(basis: &SagbiBasis<Rational>, var: &str, io: &mut Io<'_>) -> CliResult<i32> {
    let mut status = 0;
    let mut line = String::new();
    loop {
        line.clear();
        if io.stdin.read_line(&mut line)? == 0 {
            return Ok(status);
        }
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        let result = poly_arg("u", text, var).and_then(|u| Ok(is_member_in(&u, basis)?));
        match result {
            Ok(m) => io.emit(membership_json(&m), || membership_text(text, &m))?,
            Err(e) => {
                status = status.max(e.exit_code());
                io.emit(e.to_json(), || format!("error: {e}"))?;
            }
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit status.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code;
        }
    };
    let json = cli.json;
    let result = config_from_env().and_then(|config| {
        let mut io = Io { stdin, out: &mut *out, json };
        dispatch(cli.command, &mut io, &config)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            if json {
                let _ = writeln!(out, "{}", e.to_json());
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            e.exit_code()
        }
    }
}
