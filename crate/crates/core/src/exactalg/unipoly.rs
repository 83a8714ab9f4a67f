//! Dense univariate polynomials over a [`FieldSpec`].

use std::fmt;

use super::field::{FieldSpec, Scalar};
use crate::error::{Error, Result};

/// A polynomial in one variable, printed as `t`.
///
/// `coeffs[i]` is the coefficient of `t^i`; the vector never ends in a zero,
/// so the zero polynomial has no coefficients and no degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniPoly {
    field: FieldSpec,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn zero(field: FieldSpec) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(Scalar::one(field))
    }

    pub fn constant(c: Scalar) -> Self {
        Self::from_coeffs(c.field(), vec![c])
    }

    /// The variable `t`.
    pub fn t(field: FieldSpec) -> Self {
        Self::monomial(Scalar::one(field), 1)
    }

    pub fn monomial(c: Scalar, k: usize) -> Self {
        let field = c.field();
        if c.is_zero() {
            return Self::zero(field);
        }
        let mut coeffs = vec![Scalar::zero(field); k + 1];
        coeffs[k] = c;
        UniPoly { field, coeffs }
    }

    pub fn from_coeffs(field: FieldSpec, coeffs: Vec<Scalar>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        let mut p = UniPoly { field, coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(field: FieldSpec, coeffs: &[i64]) -> Self {
        Self::from_coeffs(field, coeffs.iter().map(|&c| Scalar::from_i64(c, field)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Scalar::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` stands for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Self::from_coeffs(self.field, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        Self::from_coeffs(self.field, coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly { field: self.field, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> UniPoly {
        Self::from_coeffs(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let mut out = vec![Scalar::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::from_coeffs(self.field, out)
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut base = self.clone();
        let mut acc = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplication by `t^k`.
    pub fn shift_up(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Scalar::zero(self.field); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { field: self.field, coeffs }
    }

    /// Exact division by `t^k`; fails if a coefficient below `t^k` is nonzero.
    pub fn shift_down(&self, k: usize) -> Result<UniPoly> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::BadShape(format!("{self} is not divisible by t^{k}")));
        }
        Ok(UniPoly {
            field: self.field,
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        })
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(self.field), |acc, c| &(&acc * x) + c)
    }

    /// `self(inner)` by Horner's rule.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(self.field), |acc, c| acc.mul(inner).add(&Self::constant(c.clone())))
    }

    /// Euclidean division, `self = q*divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.leading().unwrap().inv()?;
        let mut rem = self.clone();
        let mut quot = vec![Scalar::zero(self.field); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading().unwrap() * &lead_inv;
            quot[rd - dd] = c.clone();
            rem = rem.sub(&divisor.scale(&c).shift_up(rd - dd));
        }
        Ok((Self::from_coeffs(self.field, quot), rem))
    }

    /// Keeps the coefficients of `t^0 .. t^(k-1)`.
    pub fn truncate_above(&self, k: usize) -> UniPoly {
        Self::from_coeffs(self.field, self.coeffs.iter().take(k).cloned().collect())
    }

    /// Drops the coefficients of `t^0 .. t^(k-1)`.
    pub fn truncate_below(&self, k: usize) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i < k { Scalar::zero(self.field) } else { c.clone() })
            .collect();
        Self::from_coeffs(self.field, coeffs)
    }
}

/// Writes a polynomial in the text grammar with variable `var`.
///
/// Terms appear by decreasing degree, e.g. `t^3 - 2*t`, `-1/2*t^2 + 1`.
pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Scalar, String)>,
{
    let mut first = true;
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let text = c.to_string();
        let (negative, magnitude) = match c {
            Scalar::Rational(_) => match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            },
            Scalar::Mod { .. } => (false, text),
        };
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else if negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        match (mono.is_empty(), magnitude == "1") {
            (true, _) => write!(f, "{magnitude}")?,
            (false, true) => write!(f, "{mono}")?,
            (false, false) => write!(f, "{magnitude}*{mono}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

pub(crate) fn power_text(var: &str, k: u32) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(&Scalar, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .map(|(i, c)| (c, power_text("t", i as u32)))
            .collect();
        write_terms(f, terms)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly[{}]({self})", self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn display() {
        assert_eq!(UniPoly::from_i64s(Q, &[0, -2, 0, 1]).to_string(), "t^3 - 2*t");
        assert_eq!(UniPoly::zero(Q).to_string(), "0");
        assert_eq!(UniPoly::from_i64s(Q, &[1, 0, -1]).to_string(), "-t^2 + 1");
    }

    #[test]
    fn compose_and_division() {
        let f = UniPoly::from_i64s(Q, &[1, 0, 1]);
        let g = UniPoly::from_i64s(Q, &[1, 1]);
        assert_eq!(f.compose(&g), UniPoly::from_i64s(Q, &[2, 2, 1]));
        let (q, r) = f.div_rem(&g).unwrap();
        assert_eq!(q.mul(&g).add(&r), f);
        assert_eq!(r.degree(), Some(0));
    }

    #[test]
    fn shifts() {
        let f = UniPoly::from_i64s(Q, &[0, 0, 3, 1]);
        assert_eq!(f.shift_down(2).unwrap(), UniPoly::from_i64s(Q, &[3, 1]));
        assert!(f.shift_down(3).is_err());
        assert_eq!(f.shift_down(2).unwrap().shift_up(2), f);
    }

    fn arb_poly(field: FieldSpec) -> impl Strategy<Value = UniPoly> {
        proptest::collection::vec(-5i64..5, 0..6).prop_map(move |v| UniPoly::from_i64s(field, &v))
    }

    proptest! {
        #[test]
        fn degree_is_additive(f in arb_poly(Q), g in arb_poly(Q),
                              f7 in arb_poly(FieldSpec::Prime(7)), g7 in arb_poly(FieldSpec::Prime(7))) {
            for (a, b) in [(f, g), (f7, g7)] {
                if let (Some(da), Some(db)) = (a.degree(), b.degree()) {
                    prop_assert_eq!(a.mul(&b).degree(), Some(da + db));
                }
            }
        }
    }
}
