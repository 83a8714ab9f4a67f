//! The projective line ℙ¹ and the square-zero endomorphisms `e_δ`.

use std::fmt;

use super::field::{FieldSpec, Scalar};
use super::mat::Mat2;
use crate::error::{Error, Result};

/// A line through the origin, stored as `(1 : b)` or `(0 : 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    a: Scalar,
    b: Scalar,
}

impl ProjPoint {
    /// The line spanned by `(a, b)`.
    pub fn new(a: Scalar, b: Scalar) -> Result<Self> {
        if a.is_zero() {
            if b.is_zero() {
                return Err(Error::ZeroVector);
            }
            return Ok(ProjPoint { b: Scalar::one(a.field()), a });
        }
        let b = b.div(&a)?;
        Ok(ProjPoint { a: Scalar::one(b.field()), b })
    }

    pub fn from_i64(field: FieldSpec, a: i64, b: i64) -> Result<Self> {
        Self::new(Scalar::from_i64(a, field), Scalar::from_i64(b, field))
    }

    /// `(0 : 1)`, the line preserved by the lower-triangular matrices.
    pub fn vertical(field: FieldSpec) -> Self {
        ProjPoint { a: Scalar::zero(field), b: Scalar::one(field) }
    }

    /// `(1 : 0)`.
    pub fn horizontal(field: FieldSpec) -> Self {
        ProjPoint { a: Scalar::one(field), b: Scalar::zero(field) }
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    pub fn a(&self) -> &Scalar {
        &self.a
    }

    pub fn b(&self) -> &Scalar {
        &self.b
    }

    /// The canonical spanning vector `w = (a, b)`.
    pub fn w(&self) -> (Scalar, Scalar) {
        (self.a.clone(), self.b.clone())
    }

    /// The linear form `ℓ(x, y) = b*x - a*y`, returned as its coefficients.
    /// It vanishes exactly on the line.
    pub fn ell(&self) -> (Scalar, Scalar) {
        (self.b.clone(), -&self.a)
    }

    /// Whether the nonzero vector `(x, y)` lies on the line.
    pub fn contains(&self, x: &Scalar, y: &Scalar) -> bool {
        (&(&self.b * x) - &(&self.a * y)).is_zero()
    }

    /// `M·δ`.
    pub fn apply(&self, m: &Mat2) -> Result<ProjPoint> {
        let (x, y) = m.apply((&self.a, &self.b));
        ProjPoint::new(x, y)
    }

    /// `e_δ = w·ℓᵀ`, with image `δ` and `e_δ² = 0`.
    pub fn e_delta(&self) -> Mat2 {
        let (w0, w1) = self.w();
        let (l0, l1) = self.ell();
        Mat2::new(&w0 * &l0, &w0 * &l1, &w1 * &l0, &w1 * &l1)
    }

    /// All `p + 1` points of ℙ¹(𝔽_p), `(0:1)` first.
    pub fn enumerate(field: FieldSpec) -> Result<Vec<ProjPoint>> {
        let elements = field
            .elements()
            .ok_or_else(|| Error::UnsupportedField(format!("cannot enumerate the projective line over {field}")))?;
        let mut out = vec![Self::vertical(field)];
        out.extend(elements.into_iter().map(|b| ProjPoint { a: Scalar::one(field), b }));
        Ok(out)
    }
}

/// `e_δ` for the canonical representative of `δ`.
pub fn e_delta(delta: &ProjPoint) -> Mat2 {
    delta.e_delta()
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}:{})", self.a, self.b)
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ProjPoint[{}]{self}", self.field())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn e_delta_examples() {
        let e = |a, b| ProjPoint::from_i64(Q, a, b).unwrap().e_delta();
        assert_eq!(e(0, 1), Mat2::from_i64(Q, [[0, 0], [1, 0]]));
        assert_eq!(e(1, 1), Mat2::from_i64(Q, [[1, -1], [1, -1]]));
        assert_eq!(e(1, 0), Mat2::from_i64(Q, [[0, -1], [0, 0]]));
    }

    #[test]
    fn e_delta_over_f5() {
        let f5 = FieldSpec::prime(5).unwrap();
        let points = ProjPoint::enumerate(f5).unwrap();
        assert_eq!(points.len(), 6);
        for d in points {
            let e = d.e_delta();
            assert!(!e.is_zero());
            assert!(e.mul(&e).is_zero());
            assert!(e.det().is_zero());
            let (x, y) = e.apply((&Scalar::one(f5), &Scalar::from_i64(3, f5)));
            assert!(d.contains(&x, &y));
        }
    }

    #[test]
    fn zero_vector_rejected() {
        assert_eq!(ProjPoint::from_i64(Q, 0, 0), Err(Error::ZeroVector));
    }

    proptest! {
        #[test]
        fn canonical_form_is_scale_invariant(a in -6i64..6, b in -6i64..6, k in 1i64..5) {
            prop_assume!(a != 0 || b != 0);
            let p = ProjPoint::from_i64(Q, a, b).unwrap();
            let q = ProjPoint::from_i64(Q, -k * a, -k * b).unwrap();
            prop_assert_eq!(&p, &q);
            let again = ProjPoint::new(p.a().clone(), p.b().clone()).unwrap();
            prop_assert_eq!(p, again);
        }
    }
}
