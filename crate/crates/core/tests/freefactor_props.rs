mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use planar_aut::exactalg::{ProjPoint, UniPoly};
use planar_aut::freefactor::{conjugate_tau, free_factorize, tau, TauFactor, TauWord};
use planar_aut::planeaut::PolyAut;

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn factorization_is_unique(seed in any::<u64>(), rational in any::<bool>()) {
        let field = if rational { Q } else { f7() };
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let w = tau_word(&mut r, field, 3, 3);
        let phi = w.recompose(field);
        prop_assert_eq!(free_factorize(&phi).unwrap(), w.clone());
        let product: usize = w.factors().iter().map(|u| u.f.degree().unwrap()).product();
        prop_assert_eq!(phi.degree() as usize, product);
    }

    #[test]
    fn conjugation_formula(seed in any::<u64>(), rational in any::<bool>()) {
        let field = if rational { Q } else { f7() };
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let m = invertible(&mut r, field, 4);
        let u = TauFactor::new(proj_point(&mut r, field, 4), tau_poly(&mut r, field, 4, 4)).unwrap();
        let lin = PolyAut::linear(&m).unwrap();
        let direct = lin.compose(&u.to_aut()).unwrap().compose(&lin.inverse()).unwrap();
        let c = conjugate_tau(&m, &u).unwrap();
        prop_assert_eq!(c.to_aut(), direct);
        prop_assert_eq!(c.delta, u.delta.apply(&m).unwrap());
    }
}

#[test]
fn recomposition_on_corpus() {
    let mut r = rng(31);
    for _ in 0..300 {
        let w = tau_word(&mut r, Q, 3, 3);
        let phi = w.recompose(Q);
        assert_eq!(free_factorize(&phi).unwrap().recompose(Q), phi);
    }
}

#[test]
fn uniqueness_for_longer_words() {
    let mut r = rng(32);
    for _ in 0..20 {
        let w = tau_word(&mut r, f7(), 5, 2);
        assert_eq!(free_factorize(&w.recompose(f7())).unwrap(), w);
    }
    let mut r = rng(33);
    let w = tau_word(&mut r, Q, 1, 6);
    assert_eq!(free_factorize(&w.recompose(Q)).unwrap(), w);
}

#[test]
fn merge_law() {
    let d = ProjPoint::from_i64(Q, 3, -1).unwrap();
    let f = UniPoly::from_i64s(Q, &[0, 0, 2, 1]);
    let g = UniPoly::from_i64s(Q, &[0, 0, -2, 0, 5]);
    let w = TauWord::from_factors([TauFactor::new(d.clone(), f.clone()).unwrap(), TauFactor::new(d.clone(), g.clone()).unwrap()]);
    assert_eq!(w.factors(), &[TauFactor::new(d.clone(), f.add(&g)).unwrap()]);
    let w = TauWord::from_factors([TauFactor::new(d.clone(), f.clone()).unwrap(), TauFactor::new(d.clone(), f.neg()).unwrap()]);
    assert!(w.is_empty());
    assert_eq!(
        tau(&d, &f).unwrap().compose(&tau(&d, &g).unwrap()).unwrap(),
        tau(&d, &f.add(&g)).unwrap()
    );
}
