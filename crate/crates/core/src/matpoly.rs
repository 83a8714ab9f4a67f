//! The matrix side: `GL₁(2, K[t])`, its generators `E_δ`, highest
//! components of vectors, and the ping-pong check.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Mat2, MatPoly2, ProjPoint, Scalar, UniPoly};

/// `id + t·f(t)·e_δ` with `f ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EFactor {
    pub delta: ProjPoint,
    pub f: UniPoly,
}

impl EFactor {
    pub fn new(delta: ProjPoint, f: UniPoly) -> Result<Self> {
        delta.field().check(&f.field())?;
        if f.is_zero() {
            return Err(Error::BadShape("E-factor with f = 0".into()));
        }
        Ok(EFactor { delta, f })
    }

    pub fn matrix(&self) -> MatPoly2 {
        MatPoly2::id_plus(&self.f.shift_up(1), &self.delta.e_delta())
    }
}

impl fmt::Display for EFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}({})", self.delta, self.f)
    }
}

/// A reduced product of `E`-factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EWord {
    factors: Vec<EFactor>,
}

impl EWord {
    pub fn identity() -> Self {
        EWord { factors: Vec::new() }
    }

    /// Builds the reduced word of the product; `(id + tf·e)(id + tg·e) =
    /// id + t(f+g)·e` because `e² = 0`.
    pub fn from_factors<I: IntoIterator<Item = EFactor>>(factors: I) -> Self {
        let mut w = Self::identity();
        for f in factors {
            w.push(f);
        }
        w
    }

    pub fn push(&mut self, factor: EFactor) {
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

    pub fn factors(&self) -> &[EFactor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn recompose(&self, field: FieldSpec) -> MatPoly2 {
        self.factors.iter().fold(MatPoly2::identity(field), |acc, x| acc.mul(&x.matrix()))
    }
}

impl fmt::Display for EWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" * "))
    }
}

/// `det G = 1` and `G(0) = id`.
pub fn is_in_gl1(g: &MatPoly2) -> bool {
    g.det().is_one() && g.eval0().is_identity()
}

/// `⟨A|B⟩ = det(A+B) − det A − det B`.
pub fn bracket(a: &Mat2, b: &Mat2) -> Scalar {
    &(&a.add(b).det() - &a.det()) - &b.det()
}

/// Whether every column of `a` lies on the line `δ`.
fn image_within(a: &Mat2, delta: &ProjPoint) -> bool {
    delta.contains(&a.a, &a.c) && delta.contains(&a.b, &a.d)
}

/// The line spanned by the columns of a rank-one matrix.
fn image_line(a: &Mat2) -> Result<ProjPoint> {
    if a.is_zero() || !a.det().is_zero() {
        return Err(Error::InternalAssertion(format!("top coefficient {a} does not have rank one")));
    }
    if a.a.is_zero() && a.c.is_zero() {
        ProjPoint::new(a.b.clone(), a.d.clone())
    } else {
        ProjPoint::new(a.a.clone(), a.c.clone())
    }
}

/// The scalar `c` with `c·x = y`, if any.
fn proportional(x: &Mat2, y: &Mat2) -> Option<Scalar> {
    let (xs, ys) = (x.entries(), y.entries());
    let i = xs.iter().position(|e| !e.is_zero())?;
    let c = ys[i].div(xs[i]).ok()?;
    (x.scale(&c) == *y).then_some(c)
}

/// Factors `G ∈ GL₁(2, K[t])` into `E`-generators; also returns the degree
/// of the running matrix at the start of each peeling step.
pub fn e_generation_factorize_traced(g: &MatPoly2) -> Result<(EWord, Vec<usize>)> {
    if !is_in_gl1(g) {
        return Err(Error::NotInGL1);
    }
    let field = g.field();
    let mut h = g.clone();
    let mut raw = Vec::new();
    let mut degrees = Vec::new();
    while !h.is_identity() {
        let n_top = h.degree().expect("nonzero matrix");
        degrees.push(n_top);
        let top = h.coefficient(n_top);
        let delta = image_line(&top)?;
        let e = delta.e_delta();
        // A₀ = id is never inside E, so the search stops.
        let n = (0..n_top)
            .rev()
            .find(|&n| !image_within(&h.coefficient(n), &delta))
            .expect("A_0 = id is not in E");
        let c = proportional(&e.mul(&h.coefficient(n)), &top)
            .ok_or_else(|| Error::InternalAssertion(format!("c·e·A_{n} = A_{n_top} has no solution")))?;
        let shift = n_top - n;
        let step = UniPoly::monomial(c.clone(), shift);
        h = MatPoly2::id_plus(&step.neg(), &e).mul(&h);
        if h.degree().is_some_and(|d| d >= n_top) {
            return Err(Error::InternalAssertion(format!("degree did not drop below {n_top}")));
        }
        raw.push(EFactor::new(delta, UniPoly::monomial(c, shift - 1))?);
    }
    let word = EWord::from_factors(raw);
    debug_assert_eq!(word.recompose(field), *g);
    Ok((word, degrees))
}

/// The unique reduced `E`-word of `G ∈ GL₁(2, K[t])`.
pub fn e_generation_factorize(g: &MatPoly2) -> Result<EWord> {
    e_generation_factorize_traced(g).map(|(w, _)| w)
}

/// A nonzero vector of `K[t]²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyVector(pub UniPoly, pub UniPoly);

impl PolyVector {
    pub fn new(a: UniPoly, b: UniPoly) -> Result<Self> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(PolyVector(a, b))
    }

    pub fn degree(&self) -> usize {
        vector_degree(self).expect("nonzero by construction")
    }

    pub fn apply(&self, m: &MatPoly2) -> Result<PolyVector> {
        let (a, b) = m.apply((&self.0, &self.1));
        PolyVector::new(a, b)
    }
}

impl fmt::Display for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.0, self.1)
    }
}

pub fn vector_degree(v: &PolyVector) -> Result<usize> {
    v.0.degree().max(v.1.degree()).ok_or(Error::ZeroVector)
}

/// The highest component `hc(v) = v_n`, `n = deg v`.
pub fn vector_hc(v: &PolyVector) -> Result<(Scalar, Scalar)> {
    let n = vector_degree(v)?;
    Ok((v.0.coeff(n), v.1.coeff(n)))
}

/// `v ∈ Ω_δ`: the highest component lies on `δ`.
pub fn omega_member(v: &PolyVector, delta: &ProjPoint) -> Result<bool> {
    let (a, b) = vector_hc(v)?;
    Ok(delta.contains(&a, &b))
}

/// A failure of `E*_δ·Ω_{δ′} ⊂ Ω_δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PingPongViolation {
    pub factor: EFactor,
    pub vector: PolyVector,
    pub vector_line: ProjPoint,
    pub image: PolyVector,
}

#[derive(Clone, Debug, Default)]
pub struct PingPongReport {
    pub checked: usize,
    pub skipped_same_line: usize,
    pub violations: Vec<PingPongViolation>,
}

impl PingPongReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `E*_δ·Ω_{δ′} ⊂ Ω_δ` on every sampled pair with `δ ≠ δ′`.
pub fn verify_pingpong(
    samples: &BTreeMap<ProjPoint, Vec<EFactor>>,
    vectors: &BTreeMap<ProjPoint, Vec<PolyVector>>,
) -> Result<PingPongReport> {
    for (d, vs) in vectors {
        for v in vs {
            if !omega_member(v, d)? {
                return Err(Error::BadShape(format!("{v} is not in Ω_{d}")));
            }
        }
    }
    let mut report = PingPongReport::default();
    for (d, factors) in samples {
        for x in factors {
            if x.delta != *d {
                return Err(Error::BadShape(format!("factor {x} is listed under {d}")));
            }
            let m = x.matrix();
            for (dv, vs) in vectors {
                if dv == d {
                    report.skipped_same_line += vs.len();
                    continue;
                }
                for v in vs {
                    report.checked += 1;
                    let image = v.apply(&m)?;
                    if !omega_member(&image, d)? {
                        report.violations.push(PingPongViolation {
                            factor: x.clone(),
                            vector: v.clone(),
                            vector_line: dv.clone(),
                            image,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}
