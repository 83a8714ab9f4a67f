//! The `planar-aut` command line.
//!
//! Every verb maps onto one library operation. Results go to stdout, as text
//! or as a versioned JSON envelope; diagnostics go to stderr. Exit codes are
//! 0 on success, 1 on a domain error and 2 on a parse or usage error.

use std::ffi::OsString;
use std::io::{Read, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use planar_aut::amalgam::{reduce, ReducedWord, Side};
use planar_aut::exactalg::parse::{parse_mat2, parse_matpoly2};
use planar_aut::exactalg::{FieldSpec, Mat2, PolyMatrix, ProjPoint, Scalar, UniPoly};
use planar_aut::freefactor::{free_factorize, TauWord};
use planar_aut::linmap::{
    classify, congruence_modulus_for, congruence_subgroup_gens, degree_law_check, induce_representation, psi,
    psi_inv, rho_s, BoundedBfsSection, CyclicUnipotentSection, OrbitSection, SubgroupSpec, TrivialSection,
    DEFAULT_IMAGE_CAP,
};
use planar_aut::matpoly::{e_generation_factorize, verify_pingpong, EFactor, EWord, PolyVector};
use planar_aut::planeaut::{vdk_factorize, PolyAut, VdkAmalgam, VdkFactor};
use planar_aut::witness::{
    cornulier_suite, gamma_suite, hypothesis_h_suite, normal_form, GammaElt, Letter, Report,
};
use planar_aut::Error;

/// Version tag carried by every JSON document.
pub const SCHEMA: &str = "planar-aut/1";

#[derive(Debug, Parser)]
#[command(name = "planar-aut", version, about = "Exact computations in Aut K² and GL(2, K[t])")]
struct Cli {
    /// Base field: `q` for ℚ, `fp:P` for 𝔽_P.
    #[arg(long, global = true, default_value = "q")]
    field: FieldSpec,
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// Payload arguments are inline text, `-` for stdin, or `@path`.
#[derive(Debug, Subcommand)]
enum Command {
    /// Composite φ₁∘φ₂∘⋯ of automorphisms `(f ; g)`.
    Compose {
        #[arg(required = true)]
        auts: Vec<String>,
    },
    /// Inverse automorphism.
    Inverse { aut: String },
    /// Reduced amalgam word of a product of automorphisms, or of a Γ-word
    /// in the letters s, s^-1, s', s'^-1, t, t^-1 with `--gamma`.
    Normalize {
        #[arg(long)]
        gamma: bool,
        #[arg(required = true)]
        word: Vec<String>,
    },
    /// Van der Kulk factorization.
    FactorVdk { aut: String },
    /// Reduced τ-word of an element of Aut₁.
    FactorFree { aut: String },
    /// Reduced E-word of an element of GL₁(2, K[t]).
    FactorE { matrix: String },
    /// ψ: Aut₁ → GL₁(2, K[t]).
    Psi { aut: String },
    /// ψ⁻¹.
    PsiInv { matrix: String },
    /// Reducibility, unipotence and quasi-order of a 2×2 matrix.
    Classify { matrix: String },
    /// ρ_S for S generated by the `--gen` matrices.
    RhoS {
        aut: String,
        #[arg(long = "gen")]
        gens: Vec<String>,
        /// Word length explored when no closed-form section applies.
        #[arg(long, default_value_t = 6)]
        bfs_depth: usize,
    },
    /// Congruence subgroup S′ ⊂ S over ℚ, with Schreier generators.
    Congruence {
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        /// Prime modulus; chosen from the quasi-order pair set by default.
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_IMAGE_CAP)]
        cap: usize,
    },
    /// Ind_{S′}^{S} ρ_{S′}(φ) as a block matrix.
    Induce {
        aut: String,
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        #[arg(long)]
        modulus: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_IMAGE_CAP)]
        cap: usize,
        #[arg(long, default_value_t = 6)]
        bfs_depth: usize,
    },
    /// Run a witness suite.
    Witness {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Word length for the Γ distinctness check.
        #[arg(long, default_value_t = 6)]
        max_length: usize,
    },
    /// Ping-pong grid over ℙ¹(𝔽_p) with deterministic samples.
    Pingpong {
        #[arg(long, default_value_t = 3)]
        factors: usize,
        #[arg(long, default_value_t = 3)]
        vectors: usize,
    },
    /// deg σ and deg ψ(σ) against the factor degrees of σ ∈ Aut₁.
    DegreeLaw { aut: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Gamma,
    Cornulier,
    H,
}

impl Command {
    fn verb(&self) -> &'static str {
        match self {
            Command::Compose { .. } => "compose",
            Command::Inverse { .. } => "inverse",
            Command::Normalize { .. } => "normalize",
            Command::FactorVdk { .. } => "factor-vdk",
            Command::FactorFree { .. } => "factor-free",
            Command::FactorE { .. } => "factor-e",
            Command::Psi { .. } => "psi",
            Command::PsiInv { .. } => "psi-inv",
            Command::Classify { .. } => "classify",
            Command::RhoS { .. } => "rho-s",
            Command::Congruence { .. } => "congruence",
            Command::Induce { .. } => "induce",
            Command::Witness { .. } => "witness",
            Command::Pingpong { .. } => "pingpong",
            Command::DegreeLaw { .. } => "degree-law",
        }
    }
}

/// A computed result in both output forms. `failure` is set by reports whose
/// checks did not all pass.
struct Output {
    text: String,
    json: Value,
    failure: Option<Error>,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, failure: None }
    }
}

enum Failure {
    Input(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_parse() {
            Failure::Input(e.to_string())
        } else {
            Failure::Domain(e)
        }
    }
}

struct Ctx<'a> {
    field: FieldSpec,
    stdin: &'a mut dyn Read,
    stdin_text: Option<String>,
}

impl Ctx<'_> {
    fn load(&mut self, arg: &str) -> Result<String, Failure> {
        if arg == "-" {
            if self.stdin_text.is_none() {
                let mut buf = String::new();
                self.stdin.read_to_string(&mut buf).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
                self.stdin_text = Some(buf);
            }
            return Ok(self.stdin_text.clone().unwrap_or_default());
        }
        match arg.strip_prefix('@') {
            Some(path) => std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}"))),
            None => Ok(arg.to_string()),
        }
    }

    fn aut(&mut self, arg: &str) -> Result<PolyAut, Failure> {
        Ok(PolyAut::parse(self.load(arg)?.trim(), self.field)?)
    }

    fn mat(&mut self, arg: &str) -> Result<Mat2, Failure> {
        Ok(parse_mat2(self.load(arg)?.trim(), self.field)?)
    }

    fn subgroup(&mut self, gens: &[String], field: FieldSpec) -> Result<SubgroupSpec, Failure> {
        let ms = gens.iter().map(|g| Ok(parse_mat2(self.load(g)?.trim(), field)?)).collect::<Result<_, Failure>>()?;
        Ok(SubgroupSpec::new(field, ms)?)
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let mut ctx = Ctx { field: cli.field, stdin, stdin_text: None };
    let verb = cli.command.verb();
    match execute(&cli.command, &mut ctx) {
        Ok(output) => {
            let written = if cli.json {
                let doc = json!({
                    "schema": SCHEMA,
                    "verb": verb,
                    "field": cli.field.to_string(),
                    "ok": output.failure.is_none(),
                    "result": output.json,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))
            } else {
                writeln!(out, "{}", output.text.trim_end())
            };
            if written.is_err() {
                return 1;
            }
            match output.failure {
                None => 0,
                Some(e) => {
                    let _ = writeln!(err, "error: {e}");
                    1
                }
            }
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn execute(cmd: &Command, ctx: &mut Ctx) -> Result<Output, Failure> {
    let field = ctx.field;
    Ok(match cmd {
        Command::Compose { auts } => {
            let parsed = auts.iter().map(|a| ctx.aut(a)).collect::<Result<Vec<_>, _>>()?;
            let phi = PolyAut::compose_all(field, parsed.iter())?;
            Output::new(phi.to_string(), json!(phi.to_string()))
        }
        Command::Inverse { aut } => {
            let phi = ctx.aut(aut)?.inverse();
            Output::new(phi.to_string(), json!(phi.to_string()))
        }
        Command::Normalize { gamma: true, word } => {
            let src = word.iter().map(|w| ctx.load(w)).collect::<Result<Vec<_>, _>>()?.join(" ");
            let letters = parse_letters(&src)?;
            render_reduced(&normal_form(&letters), gamma_elt)
        }
        Command::Normalize { gamma: false, word } => {
            let auts = word.iter().map(|a| ctx.aut(a)).collect::<Result<Vec<_>, _>>()?;
            render_reduced(&reduce(&VdkAmalgam::new(field), &auts)?, |g| g.to_string())
        }
        Command::FactorVdk { aut } => {
            let phi = ctx.aut(aut)?;
            let w = vdk_factorize(phi.f(), phi.g())?;
            let items: Vec<(&str, String)> = w
                .factors
                .iter()
                .map(|x| match x {
                    VdkFactor::Affine(a) => ("affine", a.to_aut().to_string()),
                    VdkFactor::Elementary(e) => ("elementary", e.to_aut().to_string()),
                })
                .collect();
            let tail = w.tail.to_aut().to_string();
            let mut text: Vec<String> = items.iter().map(|(k, a)| format!("{k:<10} {a}")).collect();
            text.push(format!("{:<10} {tail}", "tail"));
            Output::new(
                text.join("\n"),
                json!({
                    "length": w.length(),
                    "factors": items.iter().map(|(k, a)| json!({"kind": k, "aut": a})).collect::<Vec<_>>(),
                    "tail": tail,
                }),
            )
        }
        Command::FactorFree { aut } => render_tau_word(&free_factorize(&ctx.aut(aut)?)?),
        Command::FactorE { matrix } => {
            let g = parse_matpoly2(ctx.load(matrix)?.trim(), field)?;
            render_e_word(&e_generation_factorize(&g)?)
        }
        Command::Psi { aut } => {
            let g = psi(&ctx.aut(aut)?)?;
            Output::new(g.to_string(), json!(g.to_string()))
        }
        Command::PsiInv { matrix } => {
            let g = parse_matpoly2(ctx.load(matrix)?.trim(), field)?;
            let phi = psi_inv(&g)?;
            Output::new(phi.to_string(), json!(phi.to_string()))
        }
        Command::Classify { matrix } => {
            let c = classify(&ctx.mat(matrix)?)?;
            let order = c.quasi_order.map_or_else(|| "none".to_string(), |n| n.to_string());
            Output::new(
                format!(
                    "K-reducible    {}\nunipotent      {}\nquasi-unipotent {}\nquasi-order    {order}",
                    c.k_reducible, c.unipotent, c.quasi_unipotent
                ),
                json!({
                    "k_reducible": c.k_reducible,
                    "unipotent": c.unipotent,
                    "quasi_unipotent": c.quasi_unipotent,
                    "quasi_order": c.quasi_order,
                }),
            )
        }
        Command::RhoS { aut, gens, bfs_depth } => {
            let phi = ctx.aut(aut)?;
            let s = ctx.subgroup(gens, field)?;
            let section = section_for(&s, *bfs_depth)?;
            let g = rho_s(&phi, &s, section.as_ref())?;
            Output::new(g.to_string(), json!(g.to_string()))
        }
        Command::Congruence { gens, modulus, cap } => {
            let s = ctx.subgroup(gens, field)?;
            let m = match modulus {
                Some(m) => *m,
                None => congruence_modulus_for(&s)?,
            };
            let cs = congruence_subgroup_gens(&s, m, *cap)?;
            let strings = |ms: &[Mat2]| ms.iter().map(Mat2::to_string).collect::<Vec<_>>();
            let (gens, reps) = (strings(&cs.generators), strings(&cs.coset_reps));
            Output::new(
                format!(
                    "modulus     {m}\nindex       {}\ngenerators  {}\ncoset reps  {}",
                    cs.index,
                    list_or_none(&gens),
                    list_or_none(&reps)
                ),
                json!({ "modulus": m, "index": cs.index, "generators": gens, "coset_reps": reps }),
            )
        }
        Command::Induce { aut, gens, modulus, cap, bfs_depth } => {
            let phi = ctx.aut(aut)?;
            let s = ctx.subgroup(gens, field)?;
            let m = match modulus {
                Some(m) => *m,
                None => congruence_modulus_for(&s)?,
            };
            let cs = congruence_subgroup_gens(&s, m, *cap)?;
            let section = section_for(&cs.subgroup()?, *bfs_depth)?;
            let big = induce_representation(&phi, &cs, section.as_ref())?;
            Output::new(
                format!("modulus {m}, index {}\n{big}", cs.index),
                json!({ "modulus": m, "index": cs.index, "matrix": poly_matrix_rows(&big) }),
            )
        }
        Command::Witness { suite, max_length } => run_suite(*suite, *max_length),
        Command::Pingpong { factors, vectors } => pingpong(field, *factors, *vectors)?,
        Command::DegreeLaw { aut } => {
            let w = free_factorize(&ctx.aut(aut)?)?;
            let law = degree_law_check(&w, field)?;
            Output::new(
                format!(
                    "factor degrees {:?}\ndeg σ          {}\ndeg ψ(σ)       {}",
                    law.factor_degrees, law.deg_sigma, law.deg_psi
                ),
                json!({
                    "factor_degrees": law.factor_degrees,
                    "deg_sigma": law.deg_sigma,
                    "deg_psi": law.deg_psi,
                }),
            )
        }
    })
}

fn list_or_none(items: &[String]) -> String {
    if items.is_empty() {
        "none".into()
    } else {
        items.join(", ")
    }
}

/// Letters separated by whitespace, with a byte offset on failure.
fn parse_letters(src: &str) -> Result<Vec<Letter>, Failure> {
    let mut out = Vec::new();
    let mut rest = src;
    while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
        let tail = &rest[start..];
        let end = tail.find(char::is_whitespace).unwrap_or(tail.len());
        let token = &tail[..end];
        let offset = src.len() - tail.len();
        out.push(token.parse().map_err(|m: String| Failure::Input(format!("ParseError at byte {offset}: {m}")))?);
        rest = &tail[end..];
    }
    Ok(out)
}

fn gamma_elt(g: &GammaElt) -> String {
    let power = |name: &str, n: String| if n == "1" { name.to_string() } else { format!("{name}^{n}") };
    let mut parts = Vec::new();
    let (k, second) = match g {
        GammaElt::One { a, b } => (*a, (*b != 0).then(|| power("s'", b.to_string()))),
        GammaElt::Two { k, q } => (*k, Some(power("t", q.to_string()))),
    };
    if k != 0 {
        parts.push(power("s", k.to_string()));
    }
    parts.extend(second);
    if parts.is_empty() {
        "id".into()
    } else {
        parts.join(" ")
    }
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::One => "1",
        Side::Two => "2",
    }
}

fn render_reduced<E: Clone>(w: &ReducedWord<E>, show: impl Fn(&E) -> String) -> Output {
    let factors: Vec<(String, String)> = w.factors.iter().map(|(s, g)| (side_name(*s).to_string(), show(g))).collect();
    let tail = show(&w.tail);
    let mut text = vec![format!("length {}", w.length())];
    text.extend(factors.iter().map(|(s, g)| format!("G{s}  {g}")));
    text.push(format!("A   {tail}"));
    Output::new(
        text.join("\n"),
        json!({
            "length": w.length(),
            "factors": factors.iter().map(|(s, g)| json!({"side": s, "element": g})).collect::<Vec<_>>(),
            "tail": tail,
        }),
    )
}

fn render_tau_word(w: &TauWord) -> Output {
    let items: Vec<Value> =
        w.factors().iter().map(|u| json!({"delta": u.delta.to_string(), "f": u.f.to_string()})).collect();
    Output::new(w.to_string(), json!(items))
}

fn render_e_word(w: &EWord) -> Output {
    let items: Vec<Value> =
        w.factors().iter().map(|x| json!({"delta": x.delta.to_string(), "f": x.f.to_string()})).collect();
    Output::new(w.to_string(), json!(items))
}

fn poly_matrix_rows(m: &PolyMatrix) -> Vec<Vec<String>> {
    (0..m.size()).map(|i| (0..m.size()).map(|j| m.get(i, j).to_string()).collect()).collect()
}

/// Trivial section for `S = {id}`, the closed form for a cyclic unipotent
/// group, and a bounded search otherwise.
fn section_for(s: &SubgroupSpec, depth: usize) -> Result<Box<dyn OrbitSection>, Error> {
    let nontrivial: Vec<&Mat2> = s.generators().iter().filter(|g| !g.is_identity()).collect();
    Ok(match nontrivial[..] {
        [] => Box::new(TrivialSection { field: s.field() }),
        [u] if u.trace() == Scalar::from_i64(2, s.field()) && u.det().is_one() => {
            Box::new(CyclicUnipotentSection::new(u.clone())?)
        }
        _ => Box::new(BoundedBfsSection::new(s.clone(), depth)),
    })
}

fn report_output(report: &Report) -> Output {
    let failed = report.checks.iter().filter(|c| !c.ok()).count();
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "expected": c.expected, "observed": c.observed, "ok": c.ok(), "detail": c.detail}))
        .collect();
    let mut out = Output::new(report.to_string(), json!({ "checks": checks, "failed": failed }));
    if failed > 0 {
        out.failure = Some(Error::LawViolation(format!("{failed} of {} checks failed", report.checks.len())));
    }
    out
}

fn run_suite(suite: Suite, max_length: usize) -> Output {
    match suite {
        Suite::Gamma => report_output(&gamma_suite(max_length)),
        Suite::Cornulier => report_output(&cornulier_suite()),
        Suite::H => report_output(&hypothesis_h_suite()),
    }
}

/// Samples `E_δ(tᵏ)` for `k < factors` and `tⁿ·w_δ + tⁿ⁻¹·(1, 0)` for
/// `1 ≤ n ≤ vectors` on every line δ.
fn pingpong(field: FieldSpec, factors: usize, vectors: usize) -> Result<Output, Error> {
    let lines = ProjPoint::enumerate(field)?;
    let one = Scalar::one(field);
    let mut samples = std::collections::BTreeMap::new();
    let mut vecs = std::collections::BTreeMap::new();
    for d in &lines {
        let fs = (0..factors).map(|k| EFactor::new(d.clone(), UniPoly::monomial(one.clone(), k))).collect::<Result<_, _>>()?;
        let (w0, w1) = d.w();
        let vs = (1..=vectors)
            .map(|n| {
                let first = UniPoly::monomial(w0.clone(), n).add(&UniPoly::monomial(one.clone(), n - 1));
                PolyVector::new(first, UniPoly::monomial(w1.clone(), n))
            })
            .collect::<Result<_, _>>()?;
        samples.insert(d.clone(), fs);
        vecs.insert(d.clone(), vs);
    }
    let report = verify_pingpong(&samples, &vecs)?;
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| json!({"factor": v.factor.to_string(), "vector": v.vector.to_string(), "image": v.image.to_string()}))
        .collect();
    let mut out = Output::new(
        format!(
            "lines {}, checked {}, same-line pairs skipped {}, violations {}",
            lines.len(),
            report.checked,
            report.skipped_same_line,
            report.violations.len()
        ),
        json!({
            "lines": lines.len(),
            "checked": report.checked,
            "skipped_same_line": report.skipped_same_line,
            "violations": violations,
        }),
    );
    if !report.is_clean() {
        out.failure = Some(Error::LawViolation(format!("{} ping-pong violations", report.violations.len())));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn letter_offsets() {
        assert_eq!(parse_letters("  s t^-1 ").ok().map(|v| v.len()), Some(2));
        match parse_letters("s  tt") {
            Err(Failure::Input(m)) => assert!(m.starts_with("ParseError at byte 3"), "{m}"),
            _ => panic!("expected a parse failure"),
        }
    }

    #[test]
    fn gamma_rendering() {
        let half = "1/2".parse().unwrap();
        assert_eq!(gamma_elt(&GammaElt::One { a: 0, b: 0 }), "id");
        assert_eq!(gamma_elt(&GammaElt::One { a: -2, b: 1 }), "s^-2 s'");
        assert_eq!(gamma_elt(&GammaElt::Two { k: 1, q: half }), "s t^1/2");
    }
}
