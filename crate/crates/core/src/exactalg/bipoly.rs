//! Sparse polynomials in `x` and `y`.

use std::collections::BTreeMap;
use std::fmt;

use super::field::{FieldSpec, Scalar};
use super::unipoly::{power_text, write_terms, UniPoly};

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
pub type Exponent = (u32, u32);

/// A polynomial in `x, y` stored as a map from exponents to nonzero
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiPoly {
    field: FieldSpec,
    terms: BTreeMap<Exponent, Scalar>,
}

impl BiPoly {
    pub fn zero(field: FieldSpec) -> Self {
        BiPoly { field, terms: BTreeMap::new() }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn one(field: FieldSpec) -> Self {
        Self::constant(Scalar::one(field))
    }

    pub fn x(field: FieldSpec) -> Self {
        Self::monomial(Scalar::one(field), 1, 0)
    }

    pub fn y(field: FieldSpec) -> Self {
        Self::monomial(Scalar::one(field), 0, 1)
    }

    pub fn monomial(c: Scalar, i: u32, j: u32) -> Self {
        let mut p = Self::zero(c.field());
        if !c.is_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Exponent, Scalar)>>(field: FieldSpec, terms: I) -> Self {
        let mut p = Self::zero(field);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    /// `a*x + b*y + c`.
    pub fn linear(a: &Scalar, b: &Scalar, c: &Scalar) -> Self {
        Self::from_terms(a.field(), [((1, 0), a.clone()), ((0, 1), b.clone()), ((0, 0), c.clone())])
    }

    /// The polynomial `f(x)`.
    pub fn from_unipoly_in_x(f: &UniPoly) -> Self {
        Self::from_terms(
            f.field(),
            f.coeffs().iter().enumerate().map(|(i, c)| ((i as u32, 0), c.clone())),
        )
    }

    fn add_term(&mut self, e: Exponent, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(slot) => {
                let s = &*slot + c;
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *slot = s;
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, Scalar> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> Scalar {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximal `i + j` over the support; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn degree_in_x(&self) -> Option<u32> {
        self.terms.keys().map(|(i, _)| *i).max()
    }

    pub fn degree_in_y(&self) -> Option<u32> {
        self.terms.keys().map(|(_, j)| *j).max()
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> BiPoly {
        BiPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|((i, j), _)| i + j == d)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Top-degree homogeneous component.
    pub fn leading_form(&self) -> BiPoly {
        match self.total_degree() {
            Some(d) => self.homogeneous_part(d),
            None => self.clone(),
        }
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, &-c);
        }
        out
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            field: self.field,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> BiPoly {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        BiPoly {
            field: self.field,
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        // Dense accumulation over the bounding box of the product.
        let wx = (self.degree_in_x().unwrap() + other.degree_in_x().unwrap() + 1) as usize;
        let wy = (self.degree_in_y().unwrap() + other.degree_in_y().unwrap() + 1) as usize;
        let mut grid: Vec<Option<Scalar>> = vec![None; wx * wy];
        for ((i1, j1), a) in &self.terms {
            for ((i2, j2), b) in &other.terms {
                let idx = (i1 + i2) as usize * wy + (j1 + j2) as usize;
                let prod = a * b;
                grid[idx] = Some(match grid[idx].take() {
                    Some(acc) => &acc + &prod,
                    None => prod,
                });
            }
        }
        let terms = grid
            .into_iter()
            .enumerate()
            .filter_map(|(idx, c)| {
                c.filter(|c| !c.is_zero())
                    .map(|c| (((idx / wy) as u32, (idx % wy) as u32), c))
            })
            .collect();
        BiPoly { field: self.field, terms }
    }

    pub fn pow(&self, mut e: u32) -> BiPoly {
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

    pub fn eval(&self, x: &Scalar, y: &Scalar) -> Scalar {
        self.terms.iter().fold(Scalar::zero(self.field), |acc, ((i, j), c)| {
            &acc + &(&(c * &x.pow(*i as u64)) * &y.pow(*j as u64))
        })
    }

    /// `self(u, v)`: substitutes `u` for `x` and `v` for `y`.
    pub fn subst(&self, u: &BiPoly, v: &BiPoly) -> BiPoly {
        let mut upow = PowerCache::new(u);
        self.subst_with(&mut upow, v)
    }

    /// Substitution sharing a cache of the powers of `u`; the `y`-direction
    /// is handled by Horner's rule in `v`.
    pub(crate) fn subst_with(&self, upow: &mut PowerCache, v: &BiPoly) -> BiPoly {
        let Some(dy) = self.degree_in_y() else {
            return Self::zero(self.field);
        };
        // Coefficient of y^j as a polynomial in x, already evaluated at u.
        let mut slices: Vec<BiPoly> = vec![Self::zero(self.field); dy as usize + 1];
        for ((i, j), c) in &self.terms {
            let term = upow.get(*i).scale(c);
            slices[*j as usize] = slices[*j as usize].add(&term);
        }
        let mut acc = Self::zero(self.field);
        for slice in slices.iter().rev() {
            acc = acc.mul(v).add(slice);
        }
        acc
    }

    /// `f(self)` for a univariate `f`, by Horner's rule.
    pub fn apply_unipoly(&self, f: &UniPoly) -> BiPoly {
        f.coeffs()
            .iter()
            .rev()
            .fold(Self::zero(self.field), |acc, c| acc.mul(self).add(&Self::constant(c.clone())))
    }

    /// Reads the polynomial as a polynomial in `x` alone.
    pub fn as_unipoly_in_x(&self) -> Option<UniPoly> {
        if self.terms.keys().any(|(_, j)| *j != 0) {
            return None;
        }
        let n = self.degree_in_x().map_or(0, |d| d as usize + 1);
        let coeffs = (0..n).map(|i| self.coeff(i as u32, 0)).collect();
        Some(UniPoly::from_coeffs(self.field, coeffs))
    }

    /// Whether `self = c * other` for some nonzero scalar `c`; returns `c`.
    pub fn proportionality(&self, other: &BiPoly) -> Option<Scalar> {
        if self.terms.len() != other.terms.len() || self.is_zero() {
            return None;
        }
        let (e0, a0) = self.terms.iter().next().unwrap();
        let b0 = other.terms.get(e0)?;
        let c = a0.div(b0).ok()?;
        for (e, a) in &self.terms {
            let b = other.terms.get(e)?;
            if *a != &c * b {
                return None;
            }
        }
        Some(c)
    }
}

/// Lazily computed powers `u^0, u^1, ...`.
pub(crate) struct PowerCache {
    powers: Vec<BiPoly>,
}

impl PowerCache {
    pub(crate) fn new(u: &BiPoly) -> Self {
        PowerCache { powers: vec![BiPoly::one(u.field()), u.clone()] }
    }

    pub(crate) fn get(&mut self, k: u32) -> &BiPoly {
        while self.powers.len() <= k as usize {
            let next = self.powers.last().unwrap().mul(&self.powers[1]);
            self.powers.push(next);
        }
        &self.powers[k as usize]
    }
}

fn monomial_text(i: u32, j: u32) -> String {
    match (i, j) {
        (0, _) => power_text("y", j),
        (_, 0) => power_text("x", i),
        _ => format!("{}*{}", power_text("x", i), power_text("y", j)),
    }
}

impl fmt::Display for BiPoly {
    /// Graded order: higher total degree first, then higher power of `x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(&Exponent, &Scalar)> = self.terms.iter().collect();
        terms.sort_by(|((i1, j1), _), ((i2, j2), _)| (i2 + j2, i2).cmp(&(i1 + j1, i1)));
        write_terms(f, terms.into_iter().map(|((i, j), c)| (c, monomial_text(*i, *j))))
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly[{}]({self})", self.field)
    }
}
