//! The free product decomposition `Aut₁ K² = *_δ F_δ`.

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{BiPoly, FieldSpec, Mat2, ProjPoint, Scalar, UniPoly};
use crate::planeaut::{vdk_factorize, PolyAut, VdkFactor};

/// `τ_δ(f)` with `f ∈ t²K[t]` nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TauFactor {
    pub delta: ProjPoint,
    pub f: UniPoly,
}

impl TauFactor {
    pub fn new(delta: ProjPoint, f: UniPoly) -> Result<Self> {
        check_shape(&f)?;
        if f.is_zero() {
            return Err(Error::BadShape("τ-factor with f = 0".into()));
        }
        Ok(TauFactor { delta, f })
    }

    pub fn to_aut(&self) -> PolyAut {
        tau_unchecked(&self.delta, &self.f)
    }
}

impl fmt::Display for TauFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau{}({})", self.delta, self.f)
    }
}

fn check_shape(f: &UniPoly) -> Result<()> {
    if f.valuation().is_some_and(|v| v < 2) {
        return Err(Error::BadShape(format!("{f} has terms of degree below 2")));
    }
    Ok(())
}

fn tau_unchecked(delta: &ProjPoint, f: &UniPoly) -> PolyAut {
    let field = delta.field();
    let (a, b) = delta.w();
    let (l0, l1) = delta.ell();
    let zero = Scalar::zero(field);
    let image = BiPoly::linear(&l0, &l1, &zero).apply_unipoly(f);
    PolyAut::from_pair_unchecked(
        BiPoly::x(field).add(&image.scale(&a)),
        BiPoly::y(field).add(&image.scale(&b)),
    )
}

/// `τ_δ(f): v ↦ v + f(ℓ_δ(v))·w_δ`, i.e. `(x + a·f(bx − ay), y + b·f(bx − ay))`.
pub fn tau(delta: &ProjPoint, f: &UniPoly) -> Result<PolyAut> {
    delta.field().check(&f.field())?;
    check_shape(f)?;
    if f.is_zero() {
        return Err(Error::BadShape("τ_δ(0) is excluded".into()));
    }
    Ok(tau_unchecked(delta, f))
}

/// `f(s) ↦ μ·f(λs)`.
fn rescale(f: &UniPoly, lambda: &Scalar, mu: &Scalar) -> UniPoly {
    let coeffs = f.coeffs().iter().enumerate().map(|(i, c)| &(c * &lambda.pow(i as u64)) * mu).collect();
    UniPoly::from_coeffs(f.field(), coeffs)
}

/// The ratio `u / v` of proportional nonzero vectors.
fn ratio(u: &(Scalar, Scalar), v: &(Scalar, Scalar)) -> Scalar {
    if v.0.is_zero() {
        u.1.div(&v.1).expect("nonzero vector")
    } else {
        u.0.div(&v.0).expect("nonzero vector")
    }
}

/// `M·τ_δ(f)·M⁻¹ = τ_{Mδ}(μ·f(λs))` where `ℓ_δ∘M⁻¹ = λ·ℓ_{Mδ}` and
/// `M·w_δ = μ·w_{Mδ}`.
pub fn conjugate_tau(m: &Mat2, factor: &TauFactor) -> Result<TauFactor> {
    let mi = m.inv()?;
    let target = factor.delta.apply(m)?;
    let (l0, l1) = factor.delta.ell();
    // Row vector ℓ·M⁻¹.
    let row = (&(&l0 * &mi.a) + &(&l1 * &mi.c), &(&l0 * &mi.b) + &(&l1 * &mi.d));
    let lambda = ratio(&row, &target.ell());
    let (w0, w1) = factor.delta.w();
    let mu = ratio(&m.apply((&w0, &w1)), &target.w());
    TauFactor::new(target, rescale(&factor.f, &lambda, &mu))
}

/// A reduced product of τ-factors, read left to right under composition.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TauWord {
    factors: Vec<TauFactor>,
}

impl TauWord {
    pub fn identity() -> Self {
        TauWord { factors: Vec::new() }
    }

    /// Builds the reduced word of the product, merging neighbours at the
    /// same point.
    pub fn from_factors<I: IntoIterator<Item = TauFactor>>(factors: I) -> Self {
        let mut w = Self::identity();
        for f in factors {
            w.push(f);
        }
        w
    }

    /// Right multiplication by one factor.
    pub fn push(&mut self, factor: TauFactor) {
        match self.factors.last_mut() {
            Some(last) if last.delta == factor.delta => {
                let sum = last.f.add(&factor.f);
                if sum.is_zero() {
                    self.factors.pop();
                } else {
                    last.f = sum;
                }
            }
            _ => self.factors.push(factor),
        }
    }

    pub fn factors(&self) -> &[TauFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn recompose(&self, field: FieldSpec) -> PolyAut {
        self.factors
            .iter()
            .map(TauFactor::to_aut)
            .fold(PolyAut::identity(field), |acc, a| acc.compose_same_field(&a))
    }
}

impl fmt::Display for TauWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// Decomposes `φ ∈ Aut₁` into its reduced τ-word.
///
/// The van der Kulk word `L₁ ε₁ L₂ ε₂ ⋯` is rewritten by pushing linear
/// parts to the right: each shear `ε = τ_{(0:1)}(h)` preceded by the running
/// linear prefix `L` becomes `L·ε·L⁻¹ = τ_{L(0:1)}(μ·h(λs))`.
pub fn free_factorize(phi: &PolyAut) -> Result<TauWord> {
    if !phi.is_in_aut1() {
        return Err(Error::NotInAut1(format!("{phi} does not fix the origin with identity differential")));
    }
    let field = phi.field();
    let vertical = ProjPoint::vertical(field);
    let w = vdk_factorize(phi.f(), phi.g())?;
    let mut prefix = Mat2::identity(field);
    let mut out = TauWord::identity();
    for x in &w.factors {
        match x {
            VdkFactor::Affine(a) => prefix = prefix.mul(a.linear()),
            VdkFactor::Elementary(e) => {
                let shear = TauFactor::new(vertical.clone(), e.poly().clone())
                    .map_err(|_| Error::InternalAssertion(format!("elementary factor {} is not a shear", e.to_aut())))?;
                out.push(conjugate_tau(&prefix, &shear)?);
            }
        }
    }
    let last = prefix.mul(w.tail.linear());
    let (u0, u1) = prefix.apply((&w.tail.translation().0, &w.tail.translation().1));
    if !last.is_identity() || !u0.is_zero() || !u1.is_zero() {
        return Err(Error::InternalAssertion(format!("accumulated linear part {last} is not the identity")));
    }
    Ok(out)
}
