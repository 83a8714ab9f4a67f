mod common;

use std::collections::BTreeMap;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use planar_aut::exactalg::{FieldSpec, ProjPoint, UniPoly};
use planar_aut::matpoly::{bracket, e_generation_factorize_traced, is_in_gl1, verify_pingpong, EFactor, PolyVector};

proptest! {
    #![proptest_config(config(96))]

    #[test]
    fn e_generation_round_trip(seed in any::<u64>(), rational in any::<bool>()) {
        let field = if rational { Q } else { f7() };
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let w = e_word(&mut r, field, 4, 2);
        let g = w.recompose(field);
        prop_assert!(is_in_gl1(&g));
        prop_assert!(g.det().is_one());
        let (got, degrees) = e_generation_factorize_traced(&g).unwrap();
        prop_assert_eq!(got, w);
        prop_assert!(degrees.windows(2).all(|d| d[1] < d[0]));
    }

    #[test]
    fn bracket_is_polarized_determinant(seed in any::<u64>(), rational in any::<bool>()) {
        let field = if rational { Q } else { f7() };
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (invertible(&mut r, field, 6), invertible(&mut r, field, 6));
        let expected = &(&a.trace() * &b.trace()) - &a.mul(&b).trace();
        prop_assert_eq!(bracket(&a, &b), expected);
    }
}

#[test]
fn pingpong_over_small_fields() {
    for p in [2u64, 3, 5] {
        let field = FieldSpec::prime(p).unwrap();
        let mut r = rng(40 + p);
        let mut samples = BTreeMap::new();
        let mut vectors = BTreeMap::new();
        for d in ProjPoint::enumerate(field).unwrap() {
            let fs: Vec<EFactor> = (0..3)
                .map(|_| {
                    let deg = r.gen_range(0..3);
                    EFactor::new(d.clone(), poly(&mut r, field, 0, deg, 2)).unwrap()
                })
                .collect();
            let (w0, w1) = d.w();
            let vs: Vec<PolyVector> = (0..3)
                .map(|_| {
                    let n = r.gen_range(1..4);
                    let lo = poly(&mut r, field, 0, n - 1, 2);
                    PolyVector::new(UniPoly::monomial(w0.clone(), n).add(&lo), UniPoly::monomial(w1.clone(), n)).unwrap()
                })
                .collect();
            samples.insert(d.clone(), fs);
            vectors.insert(d, vs);
        }
        let report = verify_pingpong(&samples, &vectors).unwrap();
        let lines = p as usize + 1;
        assert!(report.is_clean());
        assert_eq!(report.checked, lines * 3 * (lines - 1) * 3);
        assert_eq!(report.skipped_same_line, lines * 3 * 3);
    }
}
