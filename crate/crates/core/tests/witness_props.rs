mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use planar_aut::exactalg::{Mat2, Scalar};
use planar_aut::planeaut::Membership;
use planar_aut::witness::{
    conjugate_by, cornulier_suite, distinctness_suite, gamma_suite, gamma_word, hypothesis_h_suite,
    hypothesis_h_witness, normal_form, verify_cornulier_identity, verify_cornulier_left_conjugation, BinomialPoly,
    GammaAmalgam, Letter,
};
use planar_aut::amalgam::AmalgamSpec;
use planar_aut::Error;

fn binomial(r: &mut ChaCha8Rng, deg: usize) -> BinomialPoly {
    BinomialPoly::new((0..=deg).map(|_| scalar(r, Q, 6)).collect()).unwrap()
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn binomial_basis_round_trip(seed in any::<u64>(), deg in 0usize..=8) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let f = binomial(&mut r, deg);
        prop_assert_eq!(BinomialPoly::from_unipoly(&f.to_unipoly()).unwrap(), f.clone());
        let g = poly(&mut r, Q, 0, deg, 6);
        prop_assert_eq!(BinomialPoly::from_unipoly(&g).unwrap().to_unipoly(), g);
    }

    #[test]
    fn cornulier_identity_holds(seed in any::<u64>(), deg in 0usize..=4, num in -6i64..=6, den in 1i64..=3) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let f = binomial(&mut r, deg);
        let alpha = Scalar::from_i64(num, Q).div(&Scalar::from_i64(den, Q)).unwrap();
        prop_assert!(verify_cornulier_identity(&f, &alpha).unwrap());
    }

    #[test]
    fn h_witness_moves_b0_off_b(seed in any::<u64>(), rational in any::<bool>()) {
        let field = if rational { Q } else { f7() };
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let g = Mat2::new(nonzero(&mut r, field, 5), Scalar::zero(field), scalar(&mut r, field, 5), nonzero(&mut r, field, 5));
        match hypothesis_h_witness(&g) {
            Ok(gamma) => prop_assert_ne!(conjugate_by(&gamma, &g).unwrap().membership(), Membership::InB),
            Err(e) => {
                prop_assert_eq!(e, Error::IsIdentity);
                prop_assert!(g.is_identity());
            }
        }
    }

    #[test]
    fn gamma_normal_form_detects_identity(seed in any::<u64>(), len in 0usize..6) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let word: Vec<Letter> = (0..len).map(|_| Letter::ALL[r.gen_range(0..Letter::ALL.len())]).collect();
        let nf = normal_form(&word);
        let trivial_form = nf.length() == 0 && nf.tail == GammaAmalgam.identity();
        prop_assert_eq!(trivial_form, gamma_word(&word).is_identity());
    }
}

#[test]
fn left_conjugation_is_a_negative_control() {
    let f = BinomialPoly::basis(2);
    assert!(!verify_cornulier_left_conjugation(&f, &Scalar::from_i64(1, Q)).unwrap());
    assert!(verify_cornulier_left_conjugation(&BinomialPoly::basis(0), &Scalar::from_i64(1, Q)).unwrap());
}

#[test]
fn h_witness_rejects_non_b0() {
    assert_eq!(hypothesis_h_witness(&Mat2::from_i64(Q, [[1, 1], [0, 1]])), Err(Error::NotInB0));
}

#[test]
fn gamma_examples() {
    let parse = |s: &str| -> Vec<Letter> { s.split_whitespace().map(|l| l.parse().unwrap()).collect() };
    // σ∘τ∘σ⁻¹ = τ² and σ, σ′ commute.
    assert!(gamma_word(&parse("s t s^-1 t^-1 t^-1")).is_identity());
    assert_eq!(normal_form(&parse("s t s^-1 t^-1 t^-1")).length(), 0);
    assert!(gamma_word(&parse("s s' s^-1 s'^-1")).is_identity());
    assert!(gamma_word(&parse("s s^-1 t t^-1 s' s'^-1")).is_identity());
    assert!(!gamma_word(&parse("s' t")).is_identity());
    assert_eq!(normal_form(&parse("s' t s' t^-1")).length(), 4);
}

#[test]
fn suites_are_clean() {
    assert!(gamma_suite(4).all_ok());
    assert!(cornulier_suite().all_ok());
    assert!(hypothesis_h_suite().all_ok());
    assert!(distinctness_suite(4).is_clean());
}
