//! Cornulier's representation of `ℚ[t] ⋊ ℚ` over
//! `R = ℚ[[x]] ⊕ ℚ((x))/ℚ[[x]]`, where the second summand squares to zero.

use std::collections::BTreeMap;
use std::fmt;

use super::{Check, Report};
use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Scalar, UniPoly};

const Q: FieldSpec = FieldSpec::Rationals;

/// `(a, b) ∈ R` with `a` a power series known modulo `x^precision` (exact
/// when `precision` is `None`) and `b = Σ c_k [x^{−k}]` a principal part.
#[derive(Clone, Debug)]
pub struct SquareZeroElt {
    pub regular: UniPoly,
    pub precision: Option<usize>,
    pub singular: BTreeMap<u32, Scalar>,
}

impl SquareZeroElt {
    pub fn exact(regular: UniPoly) -> Self {
        SquareZeroElt { regular, precision: None, singular: BTreeMap::new() }
    }

    pub fn zero() -> Self {
        Self::exact(UniPoly::zero(Q))
    }

    pub fn one() -> Self {
        Self::exact(UniPoly::one(Q))
    }

    /// A series truncated at `x^precision`.
    pub fn series(regular: UniPoly, precision: usize) -> Self {
        SquareZeroElt { regular: regular.truncate_above(precision), precision: Some(precision), singular: BTreeMap::new() }
    }

    /// The class `Σ c_k [x^{−k}]`.
    pub fn principal<I: IntoIterator<Item = (u32, Scalar)>>(terms: I) -> Self {
        let mut s = Self::zero();
        for (k, c) in terms {
            add_term(&mut s.singular, k, c);
        }
        s
    }

    pub fn pole_order(&self) -> u32 {
        self.singular.keys().next_back().copied().unwrap_or(0)
    }

    pub fn add(&self, o: &SquareZeroElt) -> SquareZeroElt {
        let precision = min_precision(self.precision, o.precision);
        let mut singular = self.singular.clone();
        for (k, c) in &o.singular {
            add_term(&mut singular, *k, c.clone());
        }
        let regular = self.regular.add(&o.regular);
        SquareZeroElt { regular: truncate(regular, precision), precision, singular }
    }

    /// `(a, b)(a′, b′) = (aa′, ab′ + a′b)`; fails if a regular part is not
    /// known far enough to multiply against the other's principal part.
    pub fn mul(&self, o: &SquareZeroElt) -> Result<SquareZeroElt> {
        let precision = min_precision(self.precision, o.precision);
        let regular = truncate(self.regular.mul(&o.regular), precision);
        let mut singular = series_times_principal(self, &o.singular)?;
        for (k, c) in series_times_principal(o, &self.singular)? {
            add_term(&mut singular, k, c);
        }
        Ok(SquareZeroElt { regular, precision, singular })
    }

    /// Equality in `R`, with regular parts compared up to the common
    /// precision.
    pub fn agrees_with(&self, o: &SquareZeroElt) -> bool {
        let p = min_precision(self.precision, o.precision);
        self.singular == o.singular && truncate(self.regular.clone(), p) == truncate(o.regular.clone(), p)
    }
}

impl fmt::Display for SquareZeroElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let reg = self.regular.to_string().replace('t', "x");
        write!(f, "{reg}")?;
        if let Some(p) = self.precision {
            write!(f, " + O(x^{p})")?;
        }
        for (k, c) in self.singular.iter().rev() {
            write!(f, " + {c}[x^-{k}]")?;
        }
        Ok(())
    }
}

fn add_term(map: &mut BTreeMap<u32, Scalar>, k: u32, c: Scalar) {
    assert!(k >= 1, "principal parts have negative exponents");
    let sum = map.get(&k).map_or(c.clone(), |old| old + &c);
    if sum.is_zero() {
        map.remove(&k);
    } else {
        map.insert(k, sum);
    }
}

fn min_precision(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

fn truncate(p: UniPoly, precision: Option<usize>) -> UniPoly {
    match precision {
        Some(n) => p.truncate_above(n),
        None => p,
    }
}

/// The principal part of `a·b` for a series `a` and principal part `b`.
fn series_times_principal(a: &SquareZeroElt, b: &BTreeMap<u32, Scalar>) -> Result<BTreeMap<u32, Scalar>> {
    let mut out = BTreeMap::new();
    let needed = b.keys().next_back().copied().unwrap_or(0) as usize;
    if a.precision.is_some_and(|p| p < needed) {
        return Err(Error::BadShape(format!(
            "series known to order {} cannot absorb a pole of order {needed}",
            a.precision.unwrap_or(0)
        )));
    }
    for (k, c) in b {
        for (j, aj) in a.regular.coeffs().iter().enumerate().take(*k as usize) {
            if !aj.is_zero() {
                add_term(&mut out, k - j as u32, aj * c);
            }
        }
    }
    Ok(out)
}

/// A 2×2 matrix over `R`, entries row-major.
#[derive(Clone, Debug)]
pub struct SzMat(pub [SquareZeroElt; 4]);

impl SzMat {
    pub fn mul(&self, o: &SzMat) -> Result<SzMat> {
        let [a, b, c, d] = &self.0;
        let [e, f, g, h] = &o.0;
        Ok(SzMat([
            a.mul(e)?.add(&b.mul(g)?),
            a.mul(f)?.add(&b.mul(h)?),
            c.mul(e)?.add(&d.mul(g)?),
            c.mul(f)?.add(&d.mul(h)?),
        ]))
    }

    pub fn agrees_with(&self, o: &SzMat) -> bool {
        self.0.iter().zip(&o.0).all(|(x, y)| x.agrees_with(y))
    }
}

impl fmt::Display for SzMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.0;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// `f(t) = Σ aₙ·binom(t, n)` over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialPoly {
    coeffs: Vec<Scalar>,
}

/// `binom(α, n)` for a scalar `α`.
fn binom_scalar(alpha: &Scalar, n: usize) -> Scalar {
    (0..n).fold(Scalar::one(Q), |acc, i| {
        let num = alpha - &Scalar::from_i64(i as i64, Q);
        (&acc * &num).div(&Scalar::from_i64(i as i64 + 1, Q)).expect("i + 1 ≠ 0")
    })
}

/// `binom(t, n)` as a polynomial in `t`.
fn binom_poly(n: usize) -> UniPoly {
    (0..n).fold(UniPoly::one(Q), |acc, i| {
        let factor = UniPoly::from_coeffs(Q, vec![Scalar::from_i64(-(i as i64), Q), Scalar::one(Q)]);
        let inv = Scalar::from_i64(i as i64 + 1, Q).inv().expect("nonzero");
        acc.mul(&factor).scale(&inv)
    })
}

impl BinomialPoly {
    pub fn new(coeffs: Vec<Scalar>) -> Result<Self> {
        for c in &coeffs {
            Q.check(&c.field())?;
        }
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Ok(BinomialPoly { coeffs })
    }

    /// `binom(t, n)`.
    pub fn basis(n: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(Q); n + 1];
        coeffs[n] = Scalar::one(Q);
        BinomialPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficients in the binomial basis are the forward differences at 0.
    pub fn from_unipoly(f: &UniPoly) -> Result<Self> {
        Q.check(&f.field())?;
        let Some(deg) = f.degree() else { return Ok(BinomialPoly { coeffs: Vec::new() }) };
        let mut values: Vec<Scalar> = (0..=deg).map(|i| f.eval(&Scalar::from_i64(i as i64, Q))).collect();
        let mut coeffs = Vec::with_capacity(deg + 1);
        while !values.is_empty() {
            coeffs.push(values[0].clone());
            values = values.windows(2).map(|w| &w[1] - &w[0]).collect();
        }
        Self::new(coeffs)
    }

    pub fn to_unipoly(&self) -> UniPoly {
        self.coeffs
            .iter()
            .enumerate()
            .fold(UniPoly::zero(Q), |acc, (n, a)| acc.add(&binom_poly(n).scale(a)))
    }

    /// `f(t + α)`.
    pub fn shift(&self, alpha: &Scalar) -> Result<Self> {
        let moved = self.to_unipoly().compose(&UniPoly::from_coeffs(Q, vec![alpha.clone(), Scalar::one(Q)]));
        Self::from_unipoly(&moved)
    }
}

impl fmt::Display for BinomialPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| format!("{c}*binom(t,{n})"))
            .collect();
        if terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&terms.join(" + "))
    }
}

/// `ρ₁(Σ aₙ binom(t, n)) = [[1, Σ aₙ[x^{−n−1}]], [0, 1]]`.
pub fn cornulier_rho1(f: &BinomialPoly) -> SzMat {
    let entry = SquareZeroElt::principal(
        f.coeffs().iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(n, a)| (n as u32 + 1, a.clone())),
    );
    SzMat([SquareZeroElt::one(), entry, SquareZeroElt::zero(), SquareZeroElt::one()])
}

/// `ρ₂(τ^α) = diag(1, (1 + x)^α)` with the binomial series kept to
/// `x^order`; exact when `α` is a nonnegative integer.
pub fn cornulier_rho2(alpha: &Scalar, order: usize) -> Result<SzMat> {
    Q.check(&alpha.field())?;
    let q = alpha.as_rational().expect("rational");
    let entry = if q.is_integer() && !q.numer().sign().eq(&num_bigint::Sign::Minus) {
        let n: usize = q.numer().try_into().map_err(|_| Error::BadShape(format!("exponent {alpha} too large")))?;
        SquareZeroElt::exact(UniPoly::from_coeffs(Q, (0..=n).map(|k| binom_scalar(alpha, k)).collect()))
    } else {
        SquareZeroElt::series(UniPoly::from_coeffs(Q, (0..order).map(|k| binom_scalar(alpha, k)).collect()), order)
    };
    Ok(SzMat([SquareZeroElt::one(), SquareZeroElt::zero(), SquareZeroElt::zero(), entry]))
}

fn conjugate(f: &BinomialPoly, left: &Scalar, right: &Scalar) -> Result<SzMat> {
    let order = f.coeffs().len() + 1;
    cornulier_rho2(left, order)?.mul(&cornulier_rho1(f))?.mul(&cornulier_rho2(right, order)?)
}

/// `ρ₂(τ^{−α})·ρ₁(f)·ρ₂(τ^α) = ρ₁(f(t + α))`, checked exactly.
///
/// Conjugating by `diag(1, u)` multiplies the corner entry by `u`, and
/// `Σ binom(t + α, n)[x^{−n−1}]` is `(1 + x)^α·Σ binom(t, n)[x^{−n−1}]`, so
/// the `(1 + x)^α` factor must come from the right.
pub fn verify_cornulier_identity(f: &BinomialPoly, alpha: &Scalar) -> Result<bool> {
    let lhs = conjugate(f, &-alpha, alpha)?;
    Ok(lhs.agrees_with(&cornulier_rho1(&f.shift(alpha)?)))
}

/// The same check with `ρ₂(τ^α)` on the left, which fails whenever `f` is
/// not constant and `α ≠ 0`.
pub fn verify_cornulier_left_conjugation(f: &BinomialPoly, alpha: &Scalar) -> Result<bool> {
    let lhs = conjugate(f, alpha, &-alpha)?;
    Ok(lhs.agrees_with(&cornulier_rho1(&f.shift(alpha)?)))
}

/// The grid `f = binom(t, n)` for `n ≤ 4` and `α ∈ {1, −1, 2, ½, −3/5}`,
/// plus negative controls.
pub fn cornulier_suite() -> Report {
    let alphas = [(1, 1), (-1, 1), (2, 1), (1, 2), (-3, 5)];
    let mut r = Report::default();
    for n in 0..=4 {
        let f = BinomialPoly::basis(n);
        for (p, q) in alphas {
            let alpha = Scalar::from_ratio(&p.into(), &q.into(), Q).expect("q ≠ 0");
            let outcome = verify_cornulier_identity(&f, &alpha);
            let detail = match &outcome {
                Ok(_) => "exact".to_string(),
                Err(e) => e.to_string(),
            };
            r.push(Check::new(format!("f = binom(t,{n}), α = {alpha}"), true, outcome == Ok(true), detail));
        }
    }
    for (n, (p, q)) in [(1, (1, 1)), (3, (-3, 5))] {
        let f = BinomialPoly::basis(n);
        let alpha = Scalar::from_ratio(&p.into(), &q.into(), Q).expect("q ≠ 0");
        let observed = verify_cornulier_left_conjugation(&f, &alpha) == Ok(true);
        r.push(Check::new(
            format!("ρ₂(τ^α) on the left, f = binom(t,{n}), α = {alpha}"),
            false,
            observed,
            "negative control",
        ));
    }
    r
}
