mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use planar_aut::exactalg::parse::{parse_bipoly, parse_mat2, parse_matpoly2, parse_proj, parse_unipoly};
use planar_aut::exactalg::{BiPoly, FieldSpec, MatPoly2, ProjPoint, Scalar, UniPoly};
use planar_aut::Error;

fn field_of(k: u8) -> FieldSpec {
    match k % 3 {
        0 => Q,
        1 => f7(),
        _ => FieldSpec::prime(2).unwrap(),
    }
}

fn bipoly(r: &mut ChaCha8Rng, field: FieldSpec) -> BiPoly {
    use rand::Rng;
    let terms: Vec<((u32, u32), Scalar)> =
        (0..r.gen_range(0..6)).map(|_| ((r.gen_range(0..4), r.gen_range(0..4)), scalar(r, field, 5))).collect();
    BiPoly::from_terms(field, terms)
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn field_axioms(seed in any::<u64>(), k in any::<u8>()) {
        let field = field_of(k);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (scalar(&mut r, field, 9), scalar(&mut r, field, 9), scalar(&mut r, field, 9));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a - &a, Scalar::zero(field));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        } else {
            prop_assert_eq!(a.inv(), Err(Error::DivisionByZero));
        }
    }

    #[test]
    fn degree_is_additive(seed in any::<u64>(), k in any::<u8>()) {
        let field = field_of(k);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let f = poly(&mut r, field, 0, 4, 5);
        let g = poly(&mut r, field, 0, 3, 5);
        prop_assert_eq!(f.mul(&g).degree(), Some(f.degree().unwrap() + g.degree().unwrap()));
        let (q, rem) = f.div_rem(&g).unwrap();
        prop_assert_eq!(q.mul(&g).add(&rem), f);
        prop_assert!(rem.degree().is_none_or(|d| d < g.degree().unwrap()));
    }

    #[test]
    fn display_parses_back(seed in any::<u64>(), k in any::<u8>()) {
        let field = field_of(k);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let f = poly(&mut r, field, 0, 5, 7);
        prop_assert_eq!(parse_unipoly(&f.to_string(), field).unwrap(), f);
        let b = bipoly(&mut r, field);
        prop_assert_eq!(parse_bipoly(&b.to_string(), field).unwrap(), b);
        let m = invertible(&mut r, field, 7);
        prop_assert_eq!(parse_mat2(&m.to_string(), field).unwrap(), m.clone());
        let mp = MatPoly2::new(poly(&mut r, field, 0, 2, 3), UniPoly::zero(field), poly(&mut r, field, 1, 3, 3), UniPoly::one(field));
        prop_assert_eq!(parse_matpoly2(&mp.to_string(), field).unwrap(), mp);
        let d = proj_point(&mut r, field, 7);
        prop_assert_eq!(parse_proj(&d.to_string(), field).unwrap(), d);
    }

    #[test]
    fn projective_canonical_form(seed in any::<u64>(), k in any::<u8>()) {
        let field = field_of(k);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let d = proj_point(&mut r, field, 7);
        let l = nonzero(&mut r, field, 7);
        let scaled = ProjPoint::new(d.a() * &l, d.b() * &l).unwrap();
        prop_assert_eq!(&scaled, &d);
        prop_assert_eq!(ProjPoint::new(d.a().clone(), d.b().clone()).unwrap(), d);
    }

    #[test]
    fn bipoly_substitution_is_a_homomorphism(seed in any::<u64>()) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (bipoly(&mut r, Q), bipoly(&mut r, Q));
        let (u, v) = (bipoly(&mut r, Q), bipoly(&mut r, Q));
        prop_assert_eq!(a.mul(&b).subst(&u, &v), a.subst(&u, &v).mul(&b.subst(&u, &v)));
    }
}

#[test]
fn e_delta_over_f5() {
    let f5 = FieldSpec::prime(5).unwrap();
    let points = ProjPoint::enumerate(f5).unwrap();
    assert_eq!(points.len(), 6);
    for d in points {
        let e = d.e_delta();
        assert!(e.mul(&e).is_zero());
        assert!(!e.is_zero() && e.det().is_zero());
        let (w0, w1) = d.w();
        assert!(e.apply((&w0, &w1)).0.is_zero() && e.apply((&w0, &w1)).1.is_zero());
        let col = if e.a.is_zero() && e.c.is_zero() { (e.b.clone(), e.d.clone()) } else { (e.a.clone(), e.c.clone()) };
        assert!(d.contains(&col.0, &col.1));
    }
}

#[test]
fn canonical_e_delta_values() {
    let e = |a, b| ProjPoint::from_i64(Q, a, b).unwrap().e_delta().to_string();
    assert_eq!(e(0, 1), "[[0,0],[1,0]]");
    assert_eq!(e(1, 0), "[[0,-1],[0,0]]");
    assert_eq!(e(1, 1), "[[1,-1],[1,-1]]");
}

#[test]
fn parse_errors_carry_offsets() {
    assert!(matches!(parse_unipoly("t^2 + x", Q), Err(Error::Parse { offset: 6, .. })));
    assert!(matches!(parse_bipoly("x/0", Q), Err(Error::Parse { .. })));
    assert!(matches!(parse_proj("(0:0)", Q), Err(Error::ZeroVector) | Err(Error::Parse { .. })));
    assert!("fp:8".parse::<FieldSpec>().is_err());
    assert_eq!("fp:7".parse::<FieldSpec>().unwrap(), f7());
}
