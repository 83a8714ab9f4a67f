//! The van der Kulk normal form `Aut K² = Aff *_B Elem`.

use super::{AffineAut, ElementaryAut, Membership, PolyAut};
use crate::amalgam::{self, AmalgamSpec, ReducedWord, Side};
use crate::error::{Error, Result};
use crate::exactalg::{BiPoly, FieldSpec, Mat2, Scalar, UniPoly};

/// The amalgam `Aff(K²) *_B Elem(K²)`: side One is affine, side Two
/// elementary.
#[derive(Clone, Copy, Debug)]
pub struct VdkAmalgam {
    pub field: FieldSpec,
}

impl VdkAmalgam {
    pub fn new(field: FieldSpec) -> Self {
        VdkAmalgam { field }
    }

    fn mat(&self, m: [[i64; 2]; 2]) -> PolyAut {
        PolyAut::linear(&Mat2::from_i64(self.field, m)).expect("invertible")
    }

    fn monomial_shear(&self, k: usize) -> PolyAut {
        PolyAut::shear(&UniPoly::monomial(Scalar::one(self.field), k))
    }
}

/// Representative of `gB` for affine `g ∉ B`: the linear map
/// `[[0,1],[1,β]]` sending `(0:1)` to the line `(1:β)` that `g` sends it to.
fn affine_rep(a: &AffineAut) -> (PolyAut, PolyAut) {
    let l = a.linear();
    let beta = l.d.div(&l.b).expect("g not in B");
    let field = beta.field();
    let r = Mat2::new(Scalar::zero(field), Scalar::one(field), Scalar::one(field), beta.clone());
    let r_inv = Mat2::new(-&beta, Scalar::one(field), Scalar::one(field), Scalar::zero(field));
    let r_inv = AffineAut::new(r_inv, None).expect("invertible");
    let rest = r_inv.to_aut().compose_same_field(&a.to_aut());
    (AffineAut::new(r, None).expect("invertible").to_aut(), rest)
}

/// Representative of `gB` for elementary `g ∉ B`: the shear `(x, y + h(x))`
/// with `h ∈ x²K[x]`.
fn elementary_rep(e: &ElementaryAut) -> (PolyAut, PolyAut) {
    let field = e.z1().field();
    let z1i = e.z1().inv().expect("nonzero");
    let back = UniPoly::from_coeffs(field, vec![-&(e.t0() * &z1i), z1i]);
    let h = e.poly().compose(&back).truncate_below(2);
    let r = PolyAut::shear(&h);
    let rest = PolyAut::shear(&h.neg()).compose_same_field(&e.to_aut());
    (r, rest)
}

impl AmalgamSpec for VdkAmalgam {
    type Elem = PolyAut;

    fn identity(&self) -> PolyAut {
        PolyAut::identity(self.field)
    }

    fn mul(&self, a: &PolyAut, b: &PolyAut) -> PolyAut {
        a.compose_same_field(b)
    }

    fn inv(&self, a: &PolyAut) -> PolyAut {
        if let Some(x) = a.as_affine() {
            return x.inverse().to_aut();
        }
        if let Some(x) = a.as_elementary() {
            return x.inverse().to_aut();
        }
        inverse(a)
    }

    fn in_a(&self, g: &PolyAut) -> bool {
        g.membership() == Membership::InB
    }

    fn side_of(&self, g: &PolyAut) -> Option<Side> {
        match g.membership() {
            Membership::Affine => Some(Side::One),
            Membership::Elementary => Some(Side::Two),
            _ => None,
        }
    }

    fn coset_rep(&self, g: &PolyAut) -> (PolyAut, PolyAut) {
        if let Some(a) = g.as_affine() {
            if !a.is_in_b() {
                return affine_rep(&a);
            }
        }
        if let Some(e) = g.as_elementary() {
            if !e.is_in_b() {
                return elementary_rep(&e);
            }
        }
        // Not a non-B factor element; the engine's check reports it.
        (g.clone(), self.identity())
    }

    fn samples(&self, side: Side) -> Vec<PolyAut> {
        match side {
            // Right cosets B·γ of linear maps are told apart by the line of
            // the first row.
            Side::One => {
                let mut out: Vec<PolyAut> = Vec::new();
                for m in [[[0, 1], [1, 0]], [[1, 1], [0, 1]], [[1, -1], [0, 1]], [[1, 2], [0, 1]]] {
                    let cand = self.mat(m);
                    let row = cand.differential_at_origin();
                    let fresh = out.iter().all(|o| {
                        let r = o.differential_at_origin();
                        !(&(&r.a * &row.b) - &(&r.b * &row.a)).is_zero()
                    });
                    if fresh && out.len() < 3 {
                        out.push(cand);
                    }
                }
                out
            }
            Side::Two => (2..5).map(|k| self.monomial_shear(k)).collect(),
        }
    }

    fn h_witness(&self, a: &PolyAut) -> Option<Vec<PolyAut>> {
        let flip = self.mat([[0, 1], [1, 0]]);
        let candidates = vec![
            vec![flip.clone()],
            vec![self.mat([[1, 1], [0, 1]])],
            vec![self.mat([[0, 1], [1, 1]])],
            vec![self.monomial_shear(2)],
            vec![self.monomial_shear(3)],
            vec![self.monomial_shear(4)],
            vec![self.monomial_shear(3), flip.clone()],
            vec![self.monomial_shear(4), flip],
        ];
        candidates.into_iter().find(|gamma| {
            let g = PolyAut::compose_all(self.field, gamma.iter()).expect("same field");
            let conj = g.compose_same_field(a).compose_same_field(&inverse(&g));
            !self.in_a(&conj)
        })
    }
}

/// A factor of a van der Kulk word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum VdkFactor {
    Affine(AffineAut),
    Elementary(ElementaryAut),
}

impl VdkFactor {
    pub fn to_aut(&self) -> PolyAut {
        match self {
            VdkFactor::Affine(a) => a.to_aut(),
            VdkFactor::Elementary(e) => e.to_aut(),
        }
    }

    pub fn side(&self) -> Side {
        match self {
            VdkFactor::Affine(_) => Side::One,
            VdkFactor::Elementary(_) => Side::Two,
        }
    }

    pub fn inverse(&self) -> VdkFactor {
        match self {
            VdkFactor::Affine(a) => VdkFactor::Affine(a.inverse()),
            VdkFactor::Elementary(e) => VdkFactor::Elementary(e.inverse()),
        }
    }
}

/// Reduced word `x₁ ⋯ xₙ · x₀`: alternating affine and elementary coset
/// representatives followed by a tail in `B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VdkWord {
    pub factors: Vec<VdkFactor>,
    pub tail: AffineAut,
}

impl VdkWord {
    pub fn length(&self) -> usize {
        self.factors.len()
    }

    /// `One` for affine factors, `Two` for elementary ones.
    pub fn type_seq(&self) -> Vec<Side> {
        self.factors.iter().map(VdkFactor::side).collect()
    }

    pub fn recompose(&self) -> PolyAut {
        self.factors
            .iter()
            .map(VdkFactor::to_aut)
            .chain(std::iter::once(self.tail.to_aut()))
            .reduce(|acc, a| acc.compose_same_field(&a))
            .expect("nonempty")
    }

    fn from_reduced(w: ReducedWord<PolyAut>) -> Result<VdkWord> {
        let bug = |what: &str| Error::InternalAssertion(format!("reduced word has a malformed {what}"));
        let factors = w
            .factors
            .iter()
            .map(|(side, g)| match side {
                Side::One => g.as_affine().map(VdkFactor::Affine).ok_or_else(|| bug("affine factor")),
                Side::Two => g.as_elementary().map(VdkFactor::Elementary).ok_or_else(|| bug("elementary factor")),
            })
            .collect::<Result<_>>()?;
        let tail = w.tail.as_affine().ok_or_else(|| bug("tail"))?;
        Ok(VdkWord { factors, tail })
    }
}

fn not_aut(msg: impl Into<String>) -> Error {
    Error::NotAnAutomorphism(msg.into())
}

/// Factors `(f, g)` into its van der Kulk normal form, or certifies that it
/// is not an automorphism.
pub fn vdk_factorize(f: &BiPoly, g: &BiPoly) -> Result<VdkWord> {
    let field = f.field();
    field.check(&g.field())?;
    let flip = PolyAut::from_pair_unchecked(BiPoly::y(field), BiPoly::x(field));
    // Left inverses of the reduction steps, in order.
    let mut steps: Vec<PolyAut> = Vec::new();
    let (mut f, mut g) = (f.clone(), g.clone());
    loop {
        let (Some(df), Some(dg)) = (f.total_degree(), g.total_degree()) else {
            return Err(not_aut("a component is zero"));
        };
        if df.max(dg) <= 1 {
            break;
        }
        if df == 0 || dg == 0 {
            return Err(not_aut("a component is constant"));
        }
        if df > dg {
            std::mem::swap(&mut f, &mut g);
            steps.push(flip.clone());
            continue;
        }
        if dg % df != 0 {
            return Err(not_aut(format!("degree {df} does not divide degree {dg}")));
        }
        let k = dg / df;
        let lf = f.leading_form().pow(k);
        let c = g
            .leading_form()
            .proportionality(&lf)
            .ok_or_else(|| not_aut(format!("leading forms in degrees {df} and {dg} are not proportional powers")))?;
        g = g.sub(&f.pow(k).scale(&c));
        steps.push(PolyAut::shear(&UniPoly::monomial(c, k as usize)));
    }
    let last = PolyAut::from_pair_unchecked(f, g);
    let affine = last.as_affine().ok_or_else(|| not_aut("the residual affine map is singular"))?;
    steps.push(affine.to_aut());
    let spec = VdkAmalgam::new(field);
    VdkWord::from_reduced(amalgam::reduce(&spec, &steps)?)
}

/// Inverse through the normal form: invert each factor, reverse the order.
pub fn inverse(phi: &PolyAut) -> PolyAut {
    let w = vdk_factorize(phi.f(), phi.g()).expect("values of PolyAut are automorphisms");
    std::iter::once(w.tail.inverse().to_aut())
        .chain(w.factors.iter().rev().map(|x| x.inverse().to_aut()))
        .reduce(|acc, a| acc.compose_same_field(&a))
        .expect("nonempty")
}
