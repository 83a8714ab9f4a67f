//! Recursive-descent parser for the text grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*      // '/' only by constants
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' | 'y' | 't' | '(' expr ')'
//! matrix := '[' row (',' row)* ']'      row := '[' expr (',' expr)* ']'
//! point  := '(' expr ':' expr ')'
//! aut    := '(' expr ';' expr ')'
//! ```
//!
//! Whitespace is ignored. Errors carry the byte offset where parsing failed.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::bipoly::BiPoly;
use super::field::{FieldSpec, Scalar};
use super::mat::{Mat2, MatPoly2, PolyMatrix};
use super::proj::ProjPoint;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u32 = 4096;

/// Exponents of `x`, `y`, `t`.
type Mono = [u32; 3];

const VARS: [char; 3] = ['x', 'y', 't'];

/// Sparse polynomial in `x, y, t` used while parsing.
#[derive(Clone, Debug)]
struct Expr {
    field: FieldSpec,
    terms: BTreeMap<Mono, Scalar>,
}

impl Expr {
    fn constant(c: Scalar) -> Self {
        Self::monomial(c, [0, 0, 0])
    }

    fn monomial(c: Scalar, m: Mono) -> Self {
        let mut terms = BTreeMap::new();
        let field = c.field();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Expr { field, terms }
    }

    fn add_term(&mut self, m: Mono, c: Scalar) {
        let sum = match self.terms.remove(&m) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    fn add(mut self, o: Expr) -> Expr {
        for (m, c) in o.terms {
            self.add_term(m, c);
        }
        self
    }

    fn neg(self) -> Expr {
        Expr { field: self.field, terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }

    fn mul(&self, o: &Expr) -> Expr {
        let mut out = Expr { field: self.field, terms: BTreeMap::new() };
        for (m1, a) in &self.terms {
            for (m2, b) in &o.terms {
                out.add_term([m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2]], a * b);
            }
        }
        out
    }

    fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero(self.field)),
            1 => self.terms.get(&[0, 0, 0]).cloned(),
            _ => None,
        }
    }
}

struct Parser<'s> {
    src: &'s str,
    pos: usize,
    field: FieldSpec,
    allowed: [bool; 3],
}

impl<'s> Parser<'s> {
    fn new(src: &'s str, field: FieldSpec, allowed: &str) -> Self {
        let mut flags = [false; 3];
        for (i, v) in VARS.iter().enumerate() {
            flags[i] = allowed.contains(*v);
        }
        Parser { src, pos: 0, field, allowed: flags }
    }

    fn err<T>(&self, offset: usize, msg: impl Into<String>) -> Result<T> {
        Err(Error::parse(offset, msg))
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |f| format!("'{f}'"));
            self.err(self.pos, format!("expected '{c}', found {found}"))
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.err(self.pos, format!("unexpected '{c}' after end of expression")),
        }
    }

    fn integer(&mut self) -> Result<(usize, String)> {
        self.skip_ws();
        let start = self.pos;
        let digits: String = self.src[start..].chars().take_while(char::is_ascii_digit).collect();
        if digits.is_empty() {
            return self.err(start, "expected an integer");
        }
        self.pos += digits.len();
        Ok((start, digits))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc.add(self.term()?);
            } else if self.eat('-') {
                acc = acc.add(self.term()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat('/') {
                self.skip_ws();
                let at = self.pos;
                let divisor = self.unary()?;
                let Some(c) = divisor.as_constant() else {
                    return self.err(at, "division is only allowed by constants");
                };
                let Ok(inv) = c.inv() else {
                    return self.err(at, "division by zero");
                };
                acc = acc.mul(&Expr::constant(inv));
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let (at, digits) = self.integer()?;
        let e: u32 = match digits.parse() {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return self.err(at, format!("exponent larger than {MAX_EXPONENT}")),
        };
        let mut acc = Expr::constant(Scalar::one(self.field));
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(c) = self.peek() else {
            return self.err(self.pos, "unexpected end of input");
        };
        let at = self.pos;
        if c.is_ascii_digit() {
            let (_, digits) = self.integer()?;
            let n: BigInt = digits.parse().expect("digits");
            return Ok(Expr::constant(Scalar::from_bigint(&n, self.field)));
        }
        if let Some(i) = VARS.iter().position(|v| *v == c) {
            self.pos += 1;
            if !self.allowed[i] {
                return self.err(at, format!("variable '{c}' is not allowed here"));
            }
            let mut m = [0; 3];
            m[i] = 1;
            return Ok(Expr::monomial(Scalar::one(self.field), m));
        }
        if c == '(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        self.err(at, format!("unexpected '{c}'"))
    }

    fn matrix_rows(&mut self) -> Result<Vec<Vec<Expr>>> {
        self.expect('[')?;
        let mut rows = Vec::new();
        loop {
            self.expect('[')?;
            let mut row = vec![self.expr()?];
            while self.eat(',') {
                row.push(self.expr()?);
            }
            self.expect(']')?;
            rows.push(row);
            if !self.eat(',') {
                break;
            }
        }
        self.expect(']')?;
        Ok(rows)
    }
}

fn to_scalar(e: &Expr) -> Scalar {
    e.as_constant().expect("variables were rejected while parsing")
}

fn to_unipoly(e: &Expr) -> UniPoly {
    let n = e.terms.keys().map(|m| m[2] as usize + 1).max().unwrap_or(0);
    let mut coeffs = vec![Scalar::zero(e.field); n];
    for (m, c) in &e.terms {
        coeffs[m[2] as usize] = c.clone();
    }
    UniPoly::from_coeffs(e.field, coeffs)
}

fn to_bipoly(e: &Expr) -> BiPoly {
    BiPoly::from_terms(e.field, e.terms.iter().map(|(m, c)| ((m[0], m[1]), c.clone())))
}

fn run<T>(src: &str, field: FieldSpec, vars: &str, body: impl FnOnce(&mut Parser) -> Result<T>) -> Result<T> {
    let mut p = Parser::new(src, field, vars);
    let out = body(&mut p)?;
    p.finish()?;
    Ok(out)
}

pub fn parse_scalar(src: &str, field: FieldSpec) -> Result<Scalar> {
    run(src, field, "", |p| p.expr().map(|e| to_scalar(&e)))
}

/// A polynomial in `t`.
pub fn parse_unipoly(src: &str, field: FieldSpec) -> Result<UniPoly> {
    run(src, field, "t", |p| p.expr().map(|e| to_unipoly(&e)))
}

/// A polynomial in `x` and `y`.
pub fn parse_bipoly(src: &str, field: FieldSpec) -> Result<BiPoly> {
    run(src, field, "xy", |p| p.expr().map(|e| to_bipoly(&e)))
}

fn square_rows(p: &Parser, rows: Vec<Vec<Expr>>, n: Option<usize>) -> Result<Vec<Vec<Expr>>> {
    let len = rows.len();
    if n.is_some_and(|n| n != len) || rows.iter().any(|r| r.len() != len) {
        let shape = n.map_or("a square matrix".to_string(), |n| format!("a {n}x{n} matrix"));
        return p.err(0, format!("expected {shape}"));
    }
    Ok(rows)
}

/// A 2×2 matrix with constant entries.
pub fn parse_mat2(src: &str, field: FieldSpec) -> Result<Mat2> {
    run(src, field, "", |p| {
        let rows = p.matrix_rows()?;
        let r = square_rows(p, rows, Some(2))?;
        Ok(Mat2::new(to_scalar(&r[0][0]), to_scalar(&r[0][1]), to_scalar(&r[1][0]), to_scalar(&r[1][1])))
    })
}

/// A 2×2 matrix over `K[t]`.
pub fn parse_matpoly2(src: &str, field: FieldSpec) -> Result<MatPoly2> {
    run(src, field, "t", |p| {
        let rows = p.matrix_rows()?;
        let r = square_rows(p, rows, Some(2))?;
        Ok(MatPoly2::new(to_unipoly(&r[0][0]), to_unipoly(&r[0][1]), to_unipoly(&r[1][0]), to_unipoly(&r[1][1])))
    })
}

/// A square matrix of any size over `K[t]`.
pub fn parse_polymatrix(src: &str, field: FieldSpec) -> Result<PolyMatrix> {
    run(src, field, "t", |p| {
        let rows = p.matrix_rows()?;
        let r = square_rows(p, rows, None)?;
        PolyMatrix::from_rows(field, r.iter().map(|row| row.iter().map(to_unipoly).collect()).collect())
    })
}

/// A projective point `(a:b)`.
pub fn parse_proj(src: &str, field: FieldSpec) -> Result<ProjPoint> {
    run(src, field, "", |p| {
        p.expect('(')?;
        let a = to_scalar(&p.expr()?);
        p.expect(':')?;
        let b = to_scalar(&p.expr()?);
        p.expect(')')?;
        ProjPoint::new(a, b).map_err(|_| Error::parse(0, "(0:0) is not a projective point"))
    })
}

/// The components of an automorphism `(f ; g)`.
pub fn parse_pair(src: &str, field: FieldSpec) -> Result<(BiPoly, BiPoly)> {
    run(src, field, "xy", |p| {
        p.expect('(')?;
        let f = to_bipoly(&p.expr()?);
        p.expect(';')?;
        let g = to_bipoly(&p.expr()?);
        p.expect(')')?;
        Ok((f, g))
    })
}
