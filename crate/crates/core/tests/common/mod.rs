//! Seeded random corpora shared by the integration suites.

#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::test_runner::{Config, RngSeed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use planar_aut::exactalg::{FieldSpec, Mat2, ProjPoint, Scalar, UniPoly};
use planar_aut::freefactor::{TauFactor, TauWord};
use planar_aut::matpoly::{EFactor, EWord};
use planar_aut::planeaut::{AffineAut, ElementaryAut, PolyAut};

pub const SEED: u64 = 0x5eed_2024;

pub const Q: FieldSpec = FieldSpec::Rationals;

pub fn f7() -> FieldSpec {
    FieldSpec::prime(7).unwrap()
}

pub fn rng(salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ salt)
}

/// Property-test configuration with the shared fixed seed.
pub fn config(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(SEED), failure_persistence: None, ..Config::default() }
}

/// `n/d` with `|n| ≤ height`, `1 ≤ d ≤ height` over ℚ; a uniform residue
/// over 𝔽_p.
pub fn scalar(rng: &mut impl Rng, field: FieldSpec, height: i64) -> Scalar {
    match field {
        FieldSpec::Rationals => {
            let n = rng.gen_range(-height..=height);
            let d = rng.gen_range(1..=height);
            Scalar::from_ratio(&BigInt::from(n), &BigInt::from(d), field).unwrap()
        }
        FieldSpec::Prime(p) => Scalar::from_i64(rng.gen_range(0..p as i64), field),
    }
}

pub fn nonzero(rng: &mut impl Rng, field: FieldSpec, height: i64) -> Scalar {
    loop {
        let s = scalar(rng, field, height);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn invertible(rng: &mut impl Rng, field: FieldSpec, height: i64) -> Mat2 {
    loop {
        let m = Mat2::new(
            scalar(rng, field, height),
            scalar(rng, field, height),
            scalar(rng, field, height),
            scalar(rng, field, height),
        );
        if !m.det().is_zero() {
            return m;
        }
    }
}

pub fn affine(rng: &mut impl Rng, field: FieldSpec, height: i64) -> PolyAut {
    let t = (scalar(rng, field, height), scalar(rng, field, height));
    AffineAut::new(invertible(rng, field, height), Some(t)).unwrap().to_aut()
}

/// Polynomial of exact degree `deg` whose coefficients below `low` vanish.
pub fn poly(rng: &mut impl Rng, field: FieldSpec, low: usize, deg: usize, height: i64) -> UniPoly {
    let mut coeffs: Vec<Scalar> = (0..=deg)
        .map(|i| if i < low { Scalar::zero(field) } else { scalar(rng, field, height) })
        .collect();
    coeffs[deg] = nonzero(rng, field, height);
    UniPoly::from_coeffs(field, coeffs)
}

pub fn elementary(rng: &mut impl Rng, field: FieldSpec, max_deg: usize, height: i64) -> PolyAut {
    let deg = rng.gen_range(2..=max_deg);
    ElementaryAut::new(
        nonzero(rng, field, height),
        nonzero(rng, field, height),
        scalar(rng, field, height),
        poly(rng, field, 0, deg, height),
    )
    .unwrap()
    .to_aut()
}

/// Up to `max_len` factors, each affine or elementary at random.
pub fn factor_word(rng: &mut impl Rng, field: FieldSpec, max_len: usize) -> Vec<PolyAut> {
    let len = rng.gen_range(1..=max_len);
    (0..len)
        .map(|_| if rng.gen_bool(0.5) { affine(rng, field, 3) } else { elementary(rng, field, 4, 3) })
        .collect()
}

pub fn compose_all(field: FieldSpec, word: &[PolyAut]) -> PolyAut {
    PolyAut::compose_all(field, word.iter()).unwrap()
}

pub fn proj_point(rng: &mut impl Rng, field: FieldSpec, height: i64) -> ProjPoint {
    if rng.gen_ratio(1, 5) {
        ProjPoint::vertical(field)
    } else {
        ProjPoint::new(Scalar::one(field), scalar(rng, field, height)).unwrap()
    }
}

/// Random nonzero `f ∈ t²K[t]` of degree between 2 and `max_deg`.
pub fn tau_poly(rng: &mut impl Rng, field: FieldSpec, max_deg: usize, height: i64) -> UniPoly {
    let deg = rng.gen_range(2..=max_deg);
    poly(rng, field, 2, deg, height)
}

/// A reduced τ-word with `1..=max_len` factors at consecutive distinct points.
pub fn tau_word(rng: &mut impl Rng, field: FieldSpec, max_len: usize, max_deg: usize) -> TauWord {
    let len = rng.gen_range(1..=max_len);
    let mut factors: Vec<TauFactor> = Vec::with_capacity(len);
    while factors.len() < len {
        let delta = proj_point(rng, field, 3);
        if factors.last().is_some_and(|f| f.delta == delta) {
            continue;
        }
        factors.push(TauFactor::new(delta, tau_poly(rng, field, max_deg, 3)).unwrap());
    }
    let w = TauWord::from_factors(factors);
    assert_eq!(w.len(), len);
    w
}

/// A random element of `Aut₁` together with its generating word.
pub fn aut1(rng: &mut impl Rng, field: FieldSpec, max_len: usize, max_deg: usize) -> (TauWord, PolyAut) {
    let w = tau_word(rng, field, max_len, max_deg);
    let phi = w.recompose(field);
    (w, phi)
}

/// A reduced E-word with `1..=max_len` factors whose polynomials have degree
/// at most `max_deg`.
pub fn e_word(rng: &mut impl Rng, field: FieldSpec, max_len: usize, max_deg: usize) -> EWord {
    let len = rng.gen_range(1..=max_len);
    let mut factors: Vec<EFactor> = Vec::with_capacity(len);
    while factors.len() < len {
        let delta = proj_point(rng, field, 3);
        if factors.last().is_some_and(|f| f.delta == delta) {
            continue;
        }
        let deg = rng.gen_range(0..=max_deg);
        factors.push(EFactor::new(delta, poly(rng, field, 0, deg, 3)).unwrap());
    }
    EWord::from_factors(factors)
}

/// Largest `deg φ · deg χ` in the sampled pairs; keeps products of degree at
/// most 27 so the exact suites stay fast.
pub const PAIR_DEGREE_CAP: u32 = 27;

/// Two random elements of `Aut₁` (up to two τ-factors of degree at most 3
/// each) whose composite has degree at most [`PAIR_DEGREE_CAP`].
pub fn aut1_pair(rng: &mut impl Rng, field: FieldSpec) -> (PolyAut, PolyAut) {
    loop {
        let (_, phi) = aut1(rng, field, 2, 3);
        let (_, chi) = aut1(rng, field, 2, 3);
        if phi.degree() * chi.degree() <= PAIR_DEGREE_CAP {
            return (phi, chi);
        }
    }
}
