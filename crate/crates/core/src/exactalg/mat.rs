//! 2×2 matrices over `K` and over `K[t]`, and square matrices over `K[t]`.

use std::fmt;

use super::field::{FieldSpec, Scalar};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// The matrix `[[a, b], [c, d]]`, acting on column vectors:
/// `(x, y) ↦ (a*x + b*y, c*x + d*y)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
    pub d: Scalar,
}

impl Mat2 {
    pub fn new(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Self {
        debug_assert!([&b, &c, &d].iter().all(|s| s.field() == a.field()));
        Mat2 { a, b, c, d }
    }

    pub fn from_i64(field: FieldSpec, m: [[i64; 2]; 2]) -> Self {
        let s = |n| Scalar::from_i64(n, field);
        Mat2::new(s(m[0][0]), s(m[0][1]), s(m[1][0]), s(m[1][1]))
    }

    pub fn identity(field: FieldSpec) -> Self {
        Self::scalar(Scalar::one(field))
    }

    pub fn zero(field: FieldSpec) -> Self {
        Self::scalar(Scalar::zero(field))
    }

    /// `λ·id`.
    pub fn scalar(l: Scalar) -> Self {
        let z = Scalar::zero(l.field());
        Mat2::new(l.clone(), z.clone(), z, l)
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    pub fn entries(&self) -> [&Scalar; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn det(&self) -> Scalar {
        &(&self.a * &self.d) - &(&self.b * &self.c)
    }

    pub fn trace(&self) -> Scalar {
        &self.a + &self.d
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.entries().iter().all(|s| s.is_zero())
    }

    /// Whether `self` is a scalar multiple of the identity.
    pub fn is_homothety(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d
    }

    /// `b = 0`: the shape of the linear parts of `B`.
    pub fn is_lower_triangular(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.c.is_zero()
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        Mat2::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c, &self.d + &o.d)
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        Mat2::new(&self.a - &o.a, &self.b - &o.b, &self.c - &o.c, &self.d - &o.d)
    }

    pub fn scale(&self, s: &Scalar) -> Mat2 {
        Mat2::new(&self.a * s, &self.b * s, &self.c * s, &self.d * s)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            &(&self.a * &o.a) + &(&self.b * &o.c),
            &(&self.a * &o.b) + &(&self.b * &o.d),
            &(&self.c * &o.a) + &(&self.d * &o.c),
            &(&self.c * &o.b) + &(&self.d * &o.d),
        )
    }

    pub fn inv(&self) -> Result<Mat2> {
        let det = self.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let k = det.inv()?;
        Ok(Mat2::new(&self.d * &k, &(-&self.b) * &k, &(-&self.c) * &k, &self.a * &k))
    }

    /// Integer power; negative exponents need an invertible matrix.
    pub fn pow(&self, e: i64) -> Result<Mat2> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut sq = base;
        let mut acc = Mat2::identity(self.field());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&sq);
            }
            n >>= 1;
            if n > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    pub fn apply(&self, v: (&Scalar, &Scalar)) -> (Scalar, Scalar) {
        (
            &(&self.a * v.0) + &(&self.b * v.1),
            &(&self.c * v.0) + &(&self.d * v.1),
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat2[{}]{self}", self.field())
    }
}

/// A 2×2 matrix with entries in `K[t]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatPoly2 {
    pub a: UniPoly,
    pub b: UniPoly,
    pub c: UniPoly,
    pub d: UniPoly,
}

impl MatPoly2 {
    pub fn new(a: UniPoly, b: UniPoly, c: UniPoly, d: UniPoly) -> Self {
        MatPoly2 { a, b, c, d }
    }

    pub fn identity(field: FieldSpec) -> Self {
        Self::constant(&Mat2::identity(field))
    }

    pub fn constant(m: &Mat2) -> Self {
        MatPoly2::new(
            UniPoly::constant(m.a.clone()),
            UniPoly::constant(m.b.clone()),
            UniPoly::constant(m.c.clone()),
            UniPoly::constant(m.d.clone()),
        )
    }

    /// `id + u·e`.
    pub fn id_plus(u: &UniPoly, e: &Mat2) -> Self {
        let one = UniPoly::one(u.field());
        MatPoly2::new(
            one.add(&u.scale(&e.a)),
            u.scale(&e.b),
            u.scale(&e.c),
            one.add(&u.scale(&e.d)),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.a.field()
    }

    pub fn entries(&self) -> [&UniPoly; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn mul(&self, o: &MatPoly2) -> MatPoly2 {
        MatPoly2::new(
            self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        )
    }

    pub fn add(&self, o: &MatPoly2) -> MatPoly2 {
        MatPoly2::new(self.a.add(&o.a), self.b.add(&o.b), self.c.add(&o.c), self.d.add(&o.d))
    }

    pub fn det(&self) -> UniPoly {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    /// The constant term `G(0)`.
    pub fn eval0(&self) -> Mat2 {
        self.coefficient(0)
    }

    /// The coefficient matrix `A_n` of `G(t) = Σ A_n t^n`.
    pub fn coefficient(&self, n: usize) -> Mat2 {
        Mat2::new(self.a.coeff(n), self.b.coeff(n), self.c.coeff(n), self.d.coeff(n))
    }

    /// Maximal entry degree; `None` for the zero matrix.
    pub fn degree(&self) -> Option<usize> {
        self.entries().iter().filter_map(|p| p.degree()).max()
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn apply(&self, v: (&UniPoly, &UniPoly)) -> (UniPoly, UniPoly) {
        (
            self.a.mul(v.0).add(&self.b.mul(v.1)),
            self.c.mul(v.0).add(&self.d.mul(v.1)),
        )
    }

    /// Inverse of a matrix whose determinant is a nonzero constant.
    pub fn inv(&self) -> Result<MatPoly2> {
        let det = self.det();
        if det.degree() != Some(0) {
            return Err(Error::SingularMatrix);
        }
        let k = det.coeff(0).inv()?;
        Ok(MatPoly2::new(
            self.d.scale(&k),
            self.b.neg().scale(&k),
            self.c.neg().scale(&k),
            self.a.scale(&k),
        ))
    }
}

impl fmt::Display for MatPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Debug for MatPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatPoly2[{}]{self}", self.field())
    }
}

/// An `n×n` matrix over `K[t]`, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    field: FieldSpec,
    n: usize,
    entries: Vec<UniPoly>,
}

impl PolyMatrix {
    pub fn zero(field: FieldSpec, n: usize) -> Self {
        PolyMatrix { field, n, entries: vec![UniPoly::zero(field); n * n] }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zero(field, n);
        for i in 0..n {
            m.set(i, i, UniPoly::one(field));
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<UniPoly>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::BadShape(format!("expected a square matrix with {n} columns per row")));
        }
        Ok(PolyMatrix { field, n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &UniPoly {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: UniPoly) {
        self.entries[i * self.n + j] = p;
    }

    /// Writes the 2×2 block at block position `(bi, bj)`.
    pub fn set_block(&mut self, bi: usize, bj: usize, m: &MatPoly2) {
        let (r, c) = (2 * bi, 2 * bj);
        self.set(r, c, m.a.clone());
        self.set(r, c + 1, m.b.clone());
        self.set(r + 1, c, m.c.clone());
        self.set(r + 1, c + 1, m.d.clone());
    }

    pub fn block(&self, bi: usize, bj: usize) -> MatPoly2 {
        let (r, c) = (2 * bi, 2 * bj);
        MatPoly2::new(
            self.get(r, c).clone(),
            self.get(r, c + 1).clone(),
            self.get(r + 1, c).clone(),
            self.get(r + 1, c + 1).clone(),
        )
    }

    pub fn mul(&self, o: &PolyMatrix) -> Result<PolyMatrix> {
        if self.n != o.n {
            return Err(Error::BadShape(format!("{}x{} times {}x{}", self.n, self.n, o.n, o.n)));
        }
        let mut out = Self::zero(self.field, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let s = (0..self.n)
                    .map(|k| self.get(i, k).mul(o.get(k, j)))
                    .fold(UniPoly::zero(self.field), |acc, p| acc.add(&p));
                out.set(i, j, s);
            }
        }
        Ok(out)
    }

    pub fn rows(&self) -> impl Iterator<Item = &[UniPoly]> {
        self.entries.chunks(self.n.max(1))
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, p) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix[{}]{self}", self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn det_of_s_prime() {
        let sp = Mat2::from_i64(Q, [[1, 1], [1, 0]]);
        assert_eq!(sp.det(), Scalar::from_i64(-1, Q));
        assert_eq!(sp.inv().unwrap(), Mat2::from_i64(Q, [[0, 1], [1, -1]]));
        assert_eq!(sp.pow(-3).unwrap().mul(&sp.pow(3).unwrap()), Mat2::identity(Q));
    }

    #[test]
    fn singular_inverse() {
        assert_eq!(Mat2::from_i64(Q, [[1, 2], [2, 4]]).inv(), Err(Error::SingularMatrix));
    }

    #[test]
    fn eval0_of_id_plus_t_e() {
        let e = Mat2::from_i64(Q, [[0, 0], [1, 0]]);
        let g = MatPoly2::id_plus(&UniPoly::t(Q), &e);
        assert_eq!(g.to_string(), "[[1,0],[t,1]]");
        assert!(g.eval0().is_identity());
        assert!(g.det().is_one());
        assert!(g.mul(&g.inv().unwrap()).is_identity());
    }

    #[test]
    fn block_matrix_product() {
        let g = MatPoly2::id_plus(&UniPoly::t(Q), &Mat2::from_i64(Q, [[0, 1], [0, 0]]));
        let mut m = PolyMatrix::zero(Q, 4);
        m.set_block(0, 1, &g);
        m.set_block(1, 0, &g);
        let sq = m.mul(&m).unwrap();
        assert_eq!(sq.block(0, 0), g.mul(&g));
        assert_eq!(sq.block(0, 1), MatPoly2::constant(&Mat2::zero(Q)));
    }
}
