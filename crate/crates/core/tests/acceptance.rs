//! The ten acceptance criteria, one PASS/FAIL line each.

mod common;

use std::collections::{BTreeMap, HashMap};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use rand::Rng;

use common::*;
use planar_aut::exactalg::{FieldSpec, Mat2, MatPoly2, PolyMatrix, ProjPoint, Scalar, UniPoly};
use planar_aut::linmap::{
    classify, congruence_modulus, congruence_modulus_for, congruence_subgroup_gens, degree_law_check,
    induce_representation, pair_set_c, psi, psi_inv, rho_s, CyclicUnipotentSection, OrbitSection, SubgroupSpec,
    TrivialSection, DEFAULT_IMAGE_CAP,
};
use planar_aut::matpoly::{e_generation_factorize_traced, verify_pingpong, EFactor, PolyVector};
use planar_aut::planeaut::{vdk_factorize, PolyAut};
use planar_aut::witness::{cornulier_suite, gamma_suite};

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn fields() -> [FieldSpec; 2] {
    [Q, f7()]
}

fn vdk_round_trip() -> Outcome {
    let mut failures = 0;
    let mut cases = 0;
    for (salt, field) in fields().into_iter().enumerate() {
        let mut r = rng(100 + salt as u64);
        for _ in 0..500 {
            let phi = compose_all(field, &factor_word(&mut r, field, 6));
            cases += 1;
            match vdk_factorize(phi.f(), phi.g()) {
                Ok(w) if w.recompose() == phi => {}
                _ => failures += 1,
            }
        }
    }
    Outcome::new(failures == 0, format!("{cases} words over Q and F_7, {failures} failures"))
}

fn psi_homomorphism() -> Outcome {
    let (mut hom, mut inv_psi, mut psi_inv_ok, mut cases) = (0, 0, 0, 0);
    for (salt, field) in fields().into_iter().enumerate() {
        let mut r = rng(200 + salt as u64);
        for _ in 0..200 {
            let (phi, chi) = aut1_pair(&mut r, field);
            cases += 1;
            let (gp, gc) = (psi(&phi).unwrap(), psi(&chi).unwrap());
            if psi(&phi.compose(&chi).unwrap()).unwrap() == gp.mul(&gc) {
                hom += 1;
            }
            if psi_inv(&gp).unwrap() == phi {
                inv_psi += 1;
            }
            if psi(&psi_inv(&gp).unwrap()).unwrap() == gp {
                psi_inv_ok += 1;
            }
        }
    }
    Outcome::new(
        hom == cases && inv_psi == cases && psi_inv_ok == cases,
        format!(
            "{cases} pairs: ψ(φχ) = ψ(φ)ψ(χ) {hom}/{cases}, ψ⁻¹ψ = id {inv_psi}/{cases}, ψψ⁻¹ = id {psi_inv_ok}/{cases}"
        ),
    )
}

fn e_generation_uniqueness() -> Outcome {
    let (mut same, mut decreasing, mut cases) = (0, 0, 0);
    for (salt, field) in fields().into_iter().enumerate() {
        let mut r = rng(300 + salt as u64);
        for _ in 0..150 {
            let w = e_word(&mut r, field, 4, 2);
            cases += 1;
            let (got, degrees) = e_generation_factorize_traced(&w.recompose(field)).unwrap();
            if got == w {
                same += 1;
            }
            if degrees.windows(2).all(|d| d[1] < d[0]) {
                decreasing += 1;
            }
        }
    }
    Outcome::new(
        same == cases && decreasing == cases,
        format!("{cases} E-words: identical refactorization {same}/{cases}, strictly decreasing degree {decreasing}/{cases}"),
    )
}

fn degree_laws() -> Outcome {
    let (mut ok, mut cases) = (0, 0);
    let mut first_error = String::new();
    for (salt, field) in fields().into_iter().enumerate() {
        let mut r = rng(400 + salt as u64);
        for _ in 0..100 {
            let w = tau_word(&mut r, field, 3, 3);
            cases += 1;
            match degree_law_check(&w, field) {
                Ok(_) => ok += 1,
                Err(e) if first_error.is_empty() => first_error = format!("; first violation: {e}"),
                Err(_) => {}
            }
        }
    }
    Outcome::new(ok == cases, format!("{cases} reduced τ-words, {} violations{first_error}", cases - ok))
}

fn ping_pong() -> Outcome {
    let f3 = FieldSpec::prime(3).unwrap();
    let mut r = rng(500);
    let mut samples = BTreeMap::new();
    let mut vectors = BTreeMap::new();
    for d in ProjPoint::enumerate(f3).unwrap() {
        let factors: Vec<EFactor> = (0..3)
            .map(|_| {
                let deg = r.gen_range(0..=2);
                EFactor::new(d.clone(), poly(&mut r, f3, 0, deg, 1)).unwrap()
            })
            .collect();
        let (w0, w1) = d.w();
        let vs: Vec<PolyVector> = (0..3)
            .map(|_| {
                let n = r.gen_range(0..=3);
                let low0 = if n == 0 { UniPoly::zero(f3) } else { poly(&mut r, f3, 0, n - 1, 1) };
                let low1 = if n == 0 { UniPoly::zero(f3) } else { poly(&mut r, f3, 0, n - 1, 1) };
                let top = |c: &Scalar| UniPoly::monomial(c.clone(), n);
                PolyVector::new(top(&w0).add(&low0), top(&w1).add(&low1)).unwrap()
            })
            .collect();
        samples.insert(d.clone(), factors);
        vectors.insert(d, vs);
    }
    let rep = verify_pingpong(&samples, &vectors).unwrap();
    Outcome::new(
        rep.is_clean() && rep.checked == 4 * 3 * 3 * 3,
        format!("ℙ¹(F_3): {} inclusions checked, {} violations", rep.checked, rep.violations.len()),
    )
}

fn gamma_witness() -> Outcome {
    let r = gamma_suite(6);
    let failing: Vec<&str> = r.checks.iter().filter(|c| !c.ok()).map(|c| c.name.as_str()).collect();
    let distinct = r.checks.iter().find(|c| c.name.starts_with("reduced")).map_or("", |c| c.detail.as_str());
    let detail = if failing.is_empty() {
        format!("{} checks ok, negative controls fail; distinctness: {distinct}", r.checks.len())
    } else {
        format!("failing: {failing:?}")
    };
    Outcome::new(r.all_ok(), detail)
}

fn cornulier() -> Outcome {
    let r = cornulier_suite();
    let identities = r.checks.iter().filter(|c| c.expected).count();
    let held = r.checks.iter().filter(|c| c.expected && c.observed).count();
    let controls_failed = r.checks.iter().filter(|c| !c.expected && !c.observed).count();
    Outcome::new(
        r.all_ok() && identities == 25,
        format!("{held}/{identities} identities exact, {controls_failed}/{} negative controls fail", r.checks.len() - identities),
    )
}

/// A pair `(u^k∘φ, u^l∘χ)` for a random pair of `Aut₁`.
fn aut_s_pair(r: &mut impl Rng, u: &Mat2) -> (PolyAut, PolyAut) {
    let (phi, chi) = aut1_pair(r, Q);
    let mut lift = |a: PolyAut| {
        let k = r.gen_range(-3..=3);
        PolyAut::linear(&u.pow(k).unwrap()).unwrap().compose(&a).unwrap()
    };
    (lift(phi), lift(chi))
}

fn theorem_c1() -> Outcome {
    let u = Mat2::from_i64(Q, [[1, 1], [0, 1]]);
    let s = SubgroupSpec::new(Q, vec![u.clone()]).unwrap();
    let section = CyclicUnipotentSection::new(u.clone()).unwrap();
    let mut r = rng(800);
    let (mut mult, mut base, mut cases) = (0, 0, 0);
    let mut images: HashMap<MatPoly2, PolyAut> = HashMap::new();
    let mut injective = true;
    for _ in 0..100 {
        let (phi, chi) = aut_s_pair(&mut r, &u);
        cases += 1;
        let (gp, gc) = (rho_s(&phi, &s, &section).unwrap(), rho_s(&chi, &s, &section).unwrap());
        if rho_s(&phi.compose(&chi).unwrap(), &s, &section).unwrap() == gp.mul(&gc) {
            mult += 1;
        }
        for (g, a) in [(gp, phi), (gc, chi)] {
            if section.contains(&g.eval0()) && g.eval0() == a.differential_at_origin() {
                base += 1;
            }
            if let Some(prev) = images.insert(g, a.clone()) {
                injective &= prev == a;
            }
        }
    }
    Outcome::new(
        mult == cases && base == 2 * cases && injective,
        format!(
            "{cases} pairs: multiplicative {mult}/{cases}, G(0) ∈ S {base}/{}, injective on {} distinct images: {injective}",
            2 * cases,
            images.len()
        ),
    )
}

fn blocks_nonzero(m: &PolyMatrix) -> usize {
    let n = m.size() / 2;
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| m.block(i, j) != MatPoly2::new(
        UniPoly::zero(m.field()),
        UniPoly::zero(m.field()),
        UniPoly::zero(m.field()),
        UniPoly::zero(m.field()),
    )).count()
}

fn quasi_u_pipeline() -> Outcome {
    let m = congruence_modulus(&pair_set_c(12, Q).unwrap(), &BigInt::from(1)).unwrap();
    let u = Mat2::from_i64(Q, [[1, 1], [0, 1]]);
    let cs = congruence_subgroup_gens(&SubgroupSpec::new(Q, vec![u]).unwrap(), 5, DEFAULT_IMAGE_CAP).unwrap();
    let gens_ok = cs.generators.iter().all(|g| cs.contains_mod(g));

    let minus = Mat2::from_i64(Q, [[-1, 0], [0, -1]]);
    let s = SubgroupSpec::new(Q, vec![minus.clone()]).unwrap();
    let m2 = congruence_modulus_for(&s).unwrap();
    let cs2 = congruence_subgroup_gens(&s, m2, DEFAULT_IMAGE_CAP).unwrap();
    let section = TrivialSection { field: Q };
    let mut r = rng(900);
    let (mut mult, mut perm, mut cases) = (0, 0, 0);
    for _ in 0..50 {
        let (phi, chi) = aut_s_pair(&mut r, &minus);
        cases += 1;
        let a = induce_representation(&phi, &cs2, &section).unwrap();
        let b = induce_representation(&chi, &cs2, &section).unwrap();
        let ab = induce_representation(&phi.compose(&chi).unwrap(), &cs2, &section).unwrap();
        if a.mul(&b).unwrap() == ab {
            mult += 1;
        }
        if blocks_nonzero(&a) == 2 && blocks_nonzero(&b) == 2 {
            perm += 1;
        }
    }
    Outcome::new(
        m == 5 && cs.index == 5 && gens_ok && cs2.index == 2 && mult == cases && perm == cases,
        format!(
            "modulus(C_12) = {m}; ⟨[[1,1],[0,1]]⟩ mod 5: index {}, generators ≡ id: {gens_ok}; ⟨−id⟩ mod {m2}: index {}, \
             Ind multiplicative {mult}/{cases}, one block per row {perm}/{cases}",
            cs.index, cs2.index
        ),
    )
}

fn classification_table() -> Outcome {
    let rows = [
        ([[1, 1], [0, 1]], (true, true, true, Some(1))),
        ([[0, -1], [1, 0]], (false, false, true, Some(4))),
        ([[1, 1], [1, 0]], (false, false, false, None)),
    ];
    let mut ok = 0;
    let mut cells = Vec::new();
    for (m, (red, uni, qu, ord)) in rows {
        let c = classify(&Mat2::from_i64(Q, m)).unwrap();
        if (c.k_reducible, c.unipotent, c.quasi_unipotent, c.quasi_order) == (red, uni, qu, ord) {
            ok += 1;
        }
        cells.push(format!(
            "{}: reducible {} unipotent {} quasi-order {:?}",
            Mat2::from_i64(Q, m),
            c.k_reducible,
            c.unipotent,
            c.quasi_order
        ));
    }
    Outcome::new(ok == 3, format!("{ok}/3 rows exact; {}", cells.join("; ")))
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("vdK round trip", "exact", vdk_round_trip),
        ("ψ homomorphism and inverse", "exact", psi_homomorphism),
        ("E-generation uniqueness", "exact", e_generation_uniqueness),
        ("degree laws", "exact", degree_laws),
        ("ping-pong over ℙ¹(F_3)", "exact", ping_pong),
        ("Γ witness", "exact", gamma_witness),
        ("Cornulier identity", "exact, zero tolerance", cornulier),
        ("ρ_S for S = ⟨[[1,1],[0,1]]⟩", "exact", theorem_c1),
        ("quasi-unipotent pipeline", "exact", quasi_u_pipeline),
        ("classification table", "exact", classification_table),
    ];
    println!("acceptance suite, seed {SEED:#x}");
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, tol, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = run();
        let status = if out.pass { "PASS" } else { "FAIL" };
        failed += usize::from(!out.pass);
        println!(
            "{status} {:>2} {name} | {} | tolerance: {tol} | seed {SEED:#x} | {:.2?}",
            i + 1,
            out.detail,
            t.elapsed()
        );
    }
    println!("{} of {} criteria passed in {:.2?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
