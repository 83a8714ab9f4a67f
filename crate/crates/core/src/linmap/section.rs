//! Orbit sections for `S` acting on ℙ¹ and the representation `ρ_S`.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::sync::OnceLock;

use num_integer::Integer;

use super::{conj_const, tau_to_efactor, SubgroupSpec};
use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Mat2, MatPoly2, ProjPoint, Scalar};
use crate::freefactor::{conjugate_tau, free_factorize};
use crate::planeaut::PolyAut;

/// How far a section's orbit representatives can be trusted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SectionMode {
    /// `S` is trivial; every point is its own representative.
    Trivial,
    /// Closed-form representatives for a cyclic unipotent group.
    CyclicExact,
    /// Minimum over a ball of the given word length; cross-checked at run
    /// time.
    BoundedBfs(usize),
}

/// A choice of representative in each `S`-orbit of ℙ¹.
pub trait OrbitSection {
    fn mode(&self) -> SectionMode;
    /// `(rep(δ), g)` with `g ∈ S` and `g·rep(δ) = δ`.
    fn section(&self, delta: &ProjPoint) -> Result<(ProjPoint, Mat2)>;
    /// Membership of a matrix in `S`.
    fn contains(&self, m: &Mat2) -> bool;
}

/// Section for the trivial group.
#[derive(Clone, Debug)]
pub struct TrivialSection {
    pub field: FieldSpec,
}

impl OrbitSection for TrivialSection {
    fn mode(&self) -> SectionMode {
        SectionMode::Trivial
    }

    fn section(&self, delta: &ProjPoint) -> Result<(ProjPoint, Mat2)> {
        Ok((delta.clone(), Mat2::identity(self.field)))
    }

    fn contains(&self, m: &Mat2) -> bool {
        m.is_identity()
    }
}

/// Section for `S = ⟨u⟩` with `u ≠ id` unipotent.
///
/// In the basis `(w, v₀)` with `w` spanning the fixed line and `(u − 1)v₀ = w`,
/// `u` moves the affine coordinate `x` of `x·w + v₀` to `x + 1`. Over ℚ the
/// representative has `x ∈ [0, 1)`; over 𝔽_p it has `x = 0`.
#[derive(Clone, Debug)]
pub struct CyclicUnipotentSection {
    u: Mat2,
    nil: Mat2,
    w: (Scalar, Scalar),
    v0: (Scalar, Scalar),
}

impl CyclicUnipotentSection {
    pub fn new(u: Mat2) -> Result<Self> {
        let field = u.field();
        if !(u.trace() == Scalar::from_i64(2, field) && u.det().is_one()) || u.is_identity() {
            return Err(Error::BadShape(format!("{u} is not a nontrivial unipotent matrix")));
        }
        let nil = u.sub(&Mat2::identity(field));
        let (zero, one) = (Scalar::zero(field), Scalar::one(field));
        let v0 = if nil.a.is_zero() && nil.c.is_zero() { (zero, one) } else { (one, zero) };
        let w = nil.apply((&v0.0, &v0.1));
        Ok(CyclicUnipotentSection { u, nil, w, v0 })
    }

    pub fn generator(&self) -> &Mat2 {
        &self.u
    }

    /// `uᵏ = 1 + k(u − 1)`.
    fn power(&self, k: &Scalar) -> Mat2 {
        Mat2::identity(self.u.field()).add(&self.nil.scale(k))
    }

    fn basis(&self) -> Mat2 {
        Mat2::new(self.w.0.clone(), self.v0.0.clone(), self.w.1.clone(), self.v0.1.clone())
    }
}

impl OrbitSection for CyclicUnipotentSection {
    fn mode(&self) -> SectionMode {
        SectionMode::CyclicExact
    }

    fn section(&self, delta: &ProjPoint) -> Result<(ProjPoint, Mat2)> {
        let field = self.u.field();
        let p = self.basis();
        let (alpha, beta) = p.inv()?.apply((delta.a(), delta.b()));
        if beta.is_zero() {
            return Ok((delta.clone(), Mat2::identity(field)));
        }
        let x = alpha.div(&beta)?;
        let k = match x.as_rational() {
            Some(q) => Scalar::from_bigint(&q.numer().div_floor(q.denom()), field),
            None => x.clone(),
        };
        let rx = &x - &k;
        let rep = ProjPoint::new(&(&rx * &self.w.0) + &self.v0.0, &(&rx * &self.w.1) + &self.v0.1)?;
        Ok((rep, self.power(&k)))
    }

    fn contains(&self, m: &Mat2) -> bool {
        let diff = m.sub(&Mat2::identity(m.field()));
        let (ns, ds) = (self.nil.entries(), diff.entries());
        let i = ns.iter().position(|e| !e.is_zero()).expect("u ≠ id");
        let Ok(k) = ds[i].div(ns[i]) else { return false };
        if self.nil.scale(&k) != diff {
            return false;
        }
        k.as_rational().is_none_or(|q| q.is_integer())
    }
}

/// Section by breadth-first search over words of bounded length: the
/// representative is the least point of the explored part of the orbit.
pub struct BoundedBfsSection {
    group: SubgroupSpec,
    depth: usize,
    ball: OnceLock<HashSet<Mat2>>,
}

impl BoundedBfsSection {
    pub fn new(group: SubgroupSpec, depth: usize) -> Self {
        BoundedBfsSection { group, depth, ball: OnceLock::new() }
    }

    fn ball(&self) -> &HashSet<Mat2> {
        self.ball.get_or_init(|| {
            let letters = self.group.letters();
            let id = Mat2::identity(self.group.field());
            let mut seen = HashSet::from([id.clone()]);
            let mut frontier = vec![id];
            for _ in 0..self.depth {
                let mut next = Vec::new();
                for g in &frontier {
                    for l in &letters {
                        let h = g.mul(l);
                        if seen.insert(h.clone()) {
                            next.push(h);
                        }
                    }
                }
                frontier = next;
            }
            seen
        })
    }
}

fn is_unipotent(m: &Mat2) -> bool {
    m.trace() == Scalar::from_i64(2, m.field()) && m.det().is_one()
}

impl OrbitSection for BoundedBfsSection {
    fn mode(&self) -> SectionMode {
        SectionMode::BoundedBfs(self.depth)
    }

    fn section(&self, delta: &ProjPoint) -> Result<(ProjPoint, Mat2)> {
        let letters = self.group.letters();
        // Point reached -> matrix M with M·δ = point.
        let mut reached = BTreeMap::from([(delta.clone(), Mat2::identity(self.group.field()))]);
        let mut queue = VecDeque::from([(delta.clone(), 0usize)]);
        while let Some((p, d)) = queue.pop_front() {
            if d == self.depth {
                continue;
            }
            let m = reached[&p].clone();
            for l in &letters {
                let q = p.apply(l)?;
                let lm = l.mul(&m);
                match reached.get(&q) {
                    Some(known) => {
                        let stab = known.inv()?.mul(&lm);
                        if !is_unipotent(&stab) {
                            return Err(Error::SectionInconsistency(format!(
                                "stabilizer element {stab} of {delta} is not unipotent"
                            )));
                        }
                    }
                    None => {
                        reached.insert(q.clone(), lm);
                        queue.push_back((q, d + 1));
                    }
                }
            }
        }
        let (rep, m) = reached.into_iter().next().expect("contains δ");
        Ok((rep, m.inv()?))
    }

    fn contains(&self, m: &Mat2) -> bool {
        self.ball().contains(m)
    }
}

fn rho_raw(phi: &PolyAut, section: &dyn OrbitSection) -> Result<MatPoly2> {
    let field = phi.field();
    if !phi.fixes_origin() {
        return Err(Error::NotInAutS(format!("{phi} does not fix the origin")));
    }
    let d = phi.differential_at_origin();
    if !section.contains(&d) {
        return Err(Error::NotInAutS(format!("differential {d} is not in S")));
    }
    let chi = PolyAut::linear(&d.inv()?)?.compose(phi)?;
    let word = free_factorize(&chi)?;
    let mut product = MatPoly2::identity(field);
    for u in word.factors() {
        let (rep, g) = section.section(&u.delta)?;
        let gi = g.inv()?;
        let v = conjugate_tau(&gi, u)?;
        if v.delta != rep {
            return Err(Error::SectionInconsistency(format!("carrier {g} does not send {rep} to {}", u.delta)));
        }
        if rep == u.delta && v != *u {
            return Err(Error::SectionInconsistency(format!("stabilizer {g} of {rep} acts nontrivially on F_δ")));
        }
        product = product.mul(&conj_const(&g, &tau_to_efactor(&v).matrix(), &gi));
    }
    Ok(MatPoly2::constant(&d).mul(&product))
}

/// `ρ_S(φ) = D·Φ(D⁻¹∘φ)` with `D = dφ|₀ ∈ S`, where each τ-factor `u` at
/// `δ` maps to `g·ψ(g⁻¹ug)·g⁻¹` for the carrier `g` of `δ`.
///
/// Sections found by bounded search are spot-checked against
/// `ρ_S(s∘φ) = s·ρ_S(φ)` for every generator `s`.
pub fn rho_s(phi: &PolyAut, s: &SubgroupSpec, section: &dyn OrbitSection) -> Result<MatPoly2> {
    s.field().check(&phi.field())?;
    let out = rho_raw(phi, section)?;
    if let SectionMode::BoundedBfs(_) = section.mode() {
        for g in s.generators() {
            let moved = PolyAut::linear(g)?.compose(phi)?;
            if rho_raw(&moved, section)? != MatPoly2::constant(g).mul(&out) {
                return Err(Error::SectionInconsistency(format!("ρ_S({g}∘φ) ≠ {g}·ρ_S(φ)")));
            }
        }
    }
    Ok(out)
}
