//! Polynomial automorphisms of the plane and their affine and elementary
//! subgroups.

mod vdk;

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::bipoly::PowerCache;
use crate::exactalg::{parse, BiPoly, FieldSpec, Mat2, Scalar, UniPoly};

pub use vdk::{inverse, vdk_factorize, VdkAmalgam, VdkFactor, VdkWord};

/// The automorphism `(x, y) ↦ (f(x, y), g(x, y))`.
///
/// Values of this type always have a polynomial inverse: raw pairs are
/// certified by [`PolyAut::new`] through the van der Kulk reduction.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyAut {
    f: BiPoly,
    g: BiPoly,
}

/// Syntactic position of an automorphism relative to the two factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Membership {
    /// In `B = Aff ∩ Elem`.
    InB,
    Affine,
    Elementary,
    General,
}

impl PolyAut {
    /// Certifies `(f, g)` as an automorphism.
    pub fn new(f: BiPoly, g: BiPoly) -> Result<Self> {
        vdk_factorize(&f, &g)?;
        Ok(PolyAut { f, g })
    }

    pub(crate) fn from_pair_unchecked(f: BiPoly, g: BiPoly) -> Self {
        PolyAut { f, g }
    }

    /// Parses and certifies `(f ; g)`.
    pub fn parse(src: &str, field: FieldSpec) -> Result<Self> {
        let (f, g) = parse::parse_pair(src, field)?;
        Self::new(f, g)
    }

    pub fn identity(field: FieldSpec) -> Self {
        PolyAut { f: BiPoly::x(field), g: BiPoly::y(field) }
    }

    pub fn linear(m: &Mat2) -> Result<Self> {
        Ok(AffineAut::new(m.clone(), None)?.to_aut())
    }

    /// `(x, y) ↦ (x, y + f(x))`.
    pub fn shear(f: &UniPoly) -> Self {
        let field = f.field();
        PolyAut { f: BiPoly::x(field), g: BiPoly::y(field).add(&BiPoly::from_unipoly_in_x(f)) }
    }

    pub fn field(&self) -> FieldSpec {
        self.f.field()
    }

    pub fn f(&self) -> &BiPoly {
        &self.f
    }

    pub fn g(&self) -> &BiPoly {
        &self.g
    }

    /// `self ∘ other`, the map `v ↦ self(other(v))`.
    pub fn compose(&self, other: &PolyAut) -> Result<PolyAut> {
        self.field().check(&other.field())?;
        Ok(self.compose_same_field(other))
    }

    pub(crate) fn compose_same_field(&self, other: &PolyAut) -> PolyAut {
        let mut cache = PowerCache::new(&other.f);
        PolyAut {
            f: self.f.subst_with(&mut cache, &other.g),
            g: self.g.subst_with(&mut cache, &other.g),
        }
    }

    /// `a₁ ∘ a₂ ∘ ⋯ ∘ aₙ`; the identity for an empty list.
    pub fn compose_all<'a, I>(field: FieldSpec, auts: I) -> Result<PolyAut>
    where
        I: IntoIterator<Item = &'a PolyAut>,
    {
        auts.into_iter().try_fold(Self::identity(field), |acc, a| acc.compose(a))
    }

    pub fn eval(&self, x: &Scalar, y: &Scalar) -> (Scalar, Scalar) {
        (self.f.eval(x, y), self.g.eval(x, y))
    }

    /// Matrix of the degree-one terms.
    pub fn differential_at_origin(&self) -> Mat2 {
        Mat2::new(self.f.coeff(1, 0), self.f.coeff(0, 1), self.g.coeff(1, 0), self.g.coeff(0, 1))
    }

    pub fn translation(&self) -> (Scalar, Scalar) {
        (self.f.coeff(0, 0), self.g.coeff(0, 0))
    }

    pub fn fixes_origin(&self) -> bool {
        self.f.coeff(0, 0).is_zero() && self.g.coeff(0, 0).is_zero()
    }

    /// Whether the automorphism fixes the origin with identity differential.
    pub fn is_in_aut1(&self) -> bool {
        self.fixes_origin() && self.differential_at_origin().is_identity()
    }

    /// Maximal total degree of the components; the identity has degree 1.
    pub fn degree(&self) -> u32 {
        self.f.total_degree().unwrap_or(0).max(self.g.total_degree().unwrap_or(0)).max(1)
    }

    pub fn is_identity(&self) -> bool {
        self.f == BiPoly::x(self.field()) && self.g == BiPoly::y(self.field())
    }

    pub fn membership(&self) -> Membership {
        match (self.as_affine().is_some(), self.as_elementary().is_some()) {
            (true, true) => Membership::InB,
            (true, false) => Membership::Affine,
            (false, true) => Membership::Elementary,
            (false, false) => Membership::General,
        }
    }

    pub fn as_affine(&self) -> Option<AffineAut> {
        if self.degree() > 1 {
            return None;
        }
        AffineAut::new(self.differential_at_origin(), Some(self.translation())).ok()
    }

    pub fn as_elementary(&self) -> Option<ElementaryAut> {
        let f_ok = self.f.terms().keys().all(|e| matches!(e, (0, 0) | (1, 0)));
        let g_ok = self.g.terms().keys().all(|&(i, j)| j == 0 || (i, j) == (0, 1));
        if !f_ok || !g_ok {
            return None;
        }
        let h = BiPoly::from_terms(
            self.field(),
            self.g.terms().iter().filter(|(e, _)| e.1 == 0).map(|(e, c)| (*e, c.clone())),
        );
        ElementaryAut::new(
            self.f.coeff(1, 0),
            self.g.coeff(0, 1),
            self.f.coeff(0, 0),
            h.as_unipoly_in_x().expect("terms free of y"),
        )
        .ok()
    }

    pub fn inverse(&self) -> PolyAut {
        inverse(self)
    }
}

impl fmt::Display for PolyAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} ; {})", self.f, self.g)
    }
}

impl fmt::Debug for PolyAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyAut[{}]{self}", self.field())
    }
}

/// `v ↦ L·v + u`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineAut {
    linear: Mat2,
    translation: (Scalar, Scalar),
}

impl AffineAut {
    /// A missing translation means zero.
    pub fn new(linear: Mat2, translation: Option<(Scalar, Scalar)>) -> Result<Self> {
        if linear.det().is_zero() {
            return Err(Error::SingularMatrix);
        }
        let field = linear.field();
        let translation = translation.unwrap_or_else(|| (Scalar::zero(field), Scalar::zero(field)));
        Ok(AffineAut { linear, translation })
    }

    pub fn linear(&self) -> &Mat2 {
        &self.linear
    }

    pub fn translation(&self) -> &(Scalar, Scalar) {
        &self.translation
    }

    /// Whether the map lies in `B`: the linear part is lower-triangular.
    pub fn is_in_b(&self) -> bool {
        self.linear.is_lower_triangular()
    }

    pub fn to_aut(&self) -> PolyAut {
        let m = &self.linear;
        PolyAut {
            f: BiPoly::linear(&m.a, &m.b, &self.translation.0),
            g: BiPoly::linear(&m.c, &m.d, &self.translation.1),
        }
    }

    pub fn inverse(&self) -> AffineAut {
        let li = self.linear.inv().expect("invertible by construction");
        let (u0, u1) = li.apply((&self.translation.0, &self.translation.1));
        AffineAut { linear: li, translation: (-u0, -u1) }
    }
}

/// `(x, y) ↦ (z₁x + t₀, z₂y + f(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementaryAut {
    z1: Scalar,
    z2: Scalar,
    t0: Scalar,
    f: UniPoly,
}

impl ElementaryAut {
    pub fn new(z1: Scalar, z2: Scalar, t0: Scalar, f: UniPoly) -> Result<Self> {
        if z1.is_zero() || z2.is_zero() {
            return Err(Error::NotAnAutomorphism("elementary map with z1*z2 = 0".into()));
        }
        Ok(ElementaryAut { z1, z2, t0, f })
    }

    pub fn z1(&self) -> &Scalar {
        &self.z1
    }

    pub fn z2(&self) -> &Scalar {
        &self.z2
    }

    pub fn t0(&self) -> &Scalar {
        &self.t0
    }

    pub fn poly(&self) -> &UniPoly {
        &self.f
    }

    pub fn is_in_b(&self) -> bool {
        self.f.degree().is_none_or(|d| d <= 1)
    }

    pub fn to_aut(&self) -> PolyAut {
        let field = self.z1.field();
        PolyAut {
            f: BiPoly::linear(&self.z1, &Scalar::zero(field), &self.t0),
            g: BiPoly::y(field).scale(&self.z2).add(&BiPoly::from_unipoly_in_x(&self.f)),
        }
    }

    /// `(x, y) ↦ ((x − t₀)/z₁, (y − f((x − t₀)/z₁))/z₂)`.
    pub fn inverse(&self) -> ElementaryAut {
        let z1i = self.z1.inv().expect("nonzero");
        let z2i = self.z2.inv().expect("nonzero");
        let back = UniPoly::from_coeffs(self.z1.field(), vec![-&(&self.t0 * &z1i), z1i.clone()]);
        ElementaryAut {
            t0: -&(&self.t0 * &z1i),
            z1: z1i,
            f: self.f.compose(&back).scale(&-&z2i),
            z2: z2i,
        }
    }
}
