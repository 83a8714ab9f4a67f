//! Congruence subgroups `S′ ⊂ S` of finite index on which hypothesis 𝒰 holds,
//! and the induced representation `Ind_{S′}^{S} ρ_{S′}`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::section::{rho_s, OrbitSection};
use super::{quasi_order_bound, SubgroupSpec};
use crate::error::{Error, Result};
use crate::exactalg::{field::is_prime, FieldSpec, Mat2, PolyMatrix, Scalar, UniPoly};
use crate::planeaut::PolyAut;

/// Default bound on the size of the image of `S` modulo `m`.
pub const DEFAULT_IMAGE_CAP: usize = 20_000;

fn rational_poly(coeffs: &[i64]) -> UniPoly {
    UniPoly::from_i64s(FieldSpec::Rationals, coeffs)
}

/// The cyclotomic polynomial `Φ_n` over ℚ.
fn cyclotomic(n: u64) -> Result<UniPoly> {
    let mut num = UniPoly::monomial(Scalar::one(FieldSpec::Rationals), n as usize).sub(&rational_poly(&[1]));
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        let (q, r) = num.div_rem(&cyclotomic(d)?)?;
        debug_assert!(r.is_zero());
        num = q;
    }
    Ok(num)
}

fn constant_term(p: &UniPoly) -> Option<Scalar> {
    match p.degree() {
        None => Some(Scalar::zero(p.field())),
        Some(0) => Some(p.coeff(0)),
        _ => None,
    }
}

fn pair_set_rationals(n: u64) -> Result<BTreeSet<(Scalar, Scalar)>> {
    // In ℚ(ζ) = ℚ[X]/Φ_N the N-th roots of unity are the classes of Xⁱ.
    let phi = cyclotomic(n)?;
    let x = |k: u64| -> Result<UniPoly> {
        Ok(UniPoly::monomial(Scalar::one(FieldSpec::Rationals), k as usize).div_rem(&phi)?.1)
    };
    let roots: Vec<UniPoly> = (0..n).map(x).collect::<Result<_>>()?;
    let mut out = BTreeSet::new();
    for i in 0..n {
        for j in i..n {
            let s = roots[i as usize].add(&roots[j as usize]);
            if let (Some(s), Some(p)) = (constant_term(&s), constant_term(&roots[((i + j) % n) as usize])) {
                out.insert((s, p));
            }
        }
    }
    Ok(out)
}

/// Arithmetic in `𝔽_{p²} = 𝔽_p[X]/(X² + c₁X + c₀)`, elements `a + bX`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Fp2 {
    p: u64,
    c1: u64,
    c0: u64,
}

impl Fp2 {
    /// The lexicographically least monic irreducible quadratic.
    fn new(p: u64) -> Self {
        for c1 in 0..p {
            for c0 in 0..p {
                let has_root = (0..p).any(|z| (mulm(z, z, p) + mulm(c1, z, p) + c0).is_multiple_of(p));
                if !has_root {
                    return Fp2 { p, c1, c0 };
                }
            }
        }
        unreachable!("an irreducible quadratic exists over every prime field")
    }

    fn mul(&self, u: (u64, u64), v: (u64, u64)) -> (u64, u64) {
        let p = self.p;
        let (a, b) = u;
        let (c, d) = v;
        // (a + bX)(c + dX) with X² = −c₁X − c₀.
        let bd = mulm(b, d, p);
        let k0 = (mulm(a, c, p) + p - mulm(bd, self.c0, p)) % p;
        let k1 = (mulm(a, d, p) + mulm(b, c, p) + p - mulm(bd, self.c1, p)) % p;
        (k0, k1)
    }

    fn pow(&self, mut u: (u64, u64), mut e: u64) -> (u64, u64) {
        let mut acc = (1 % self.p, 0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, u);
            }
            u = self.mul(u, u);
            e >>= 1;
        }
        acc
    }

    fn generator(&self) -> (u64, u64) {
        let order = self.p * self.p - 1;
        let primes = prime_divisors(order);
        (0..self.p)
            .flat_map(|b| (0..self.p).map(move |a| (a, b)))
            .find(|&g| g != (0, 0) && primes.iter().all(|q| self.pow(g, order / q) != (1, 0)))
            .expect("the multiplicative group is cyclic")
    }
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pair_set_prime(n: u64, p: u64) -> BTreeSet<(Scalar, Scalar)> {
    let field = FieldSpec::Prime(p);
    let fp2 = Fp2::new(p);
    let order = p * p - 1;
    let d = n.gcd(&order);
    let h = fp2.pow(fp2.generator(), order / d);
    let roots: Vec<(u64, u64)> = (0..d).map(|k| fp2.pow(h, k)).collect();
    let mut out = BTreeSet::new();
    for z1 in &roots {
        for z2 in &roots {
            let s = ((z1.0 + z2.0) % p, (z1.1 + z2.1) % p);
            let q = fp2.mul(*z1, *z2);
            if s.1 == 0 && q.1 == 0 {
                out.insert((Scalar::from_i64(s.0 as i64, field), Scalar::from_i64(q.0 as i64, field)));
            }
        }
    }
    out
}

/// All `(ζ₁ + ζ₂, ζ₁ζ₂)` with `ζ₁, ζ₂` `N`-th roots of unity in `K̄` for which
/// both values lie in `K`. These are the (trace, determinant) pairs of
/// `K`-reducible matrices of quasi-order dividing `N`.
pub fn pair_set_c(n: u64, field: FieldSpec) -> Result<Vec<(Scalar, Scalar)>> {
    if n == 0 {
        return Err(Error::BadShape("N must be positive".into()));
    }
    let set = match field {
        FieldSpec::Rationals => pair_set_rationals(n)?,
        FieldSpec::Prime(p) => pair_set_prime(n, p),
    };
    Ok(set.into_iter().collect())
}

fn congruent_mod(q: &BigRational, target: i64, m: u64) -> bool {
    let m = BigInt::from(m);
    if q.denom().is_multiple_of(&m) {
        return false;
    }
    (q.numer() - q.denom() * BigInt::from(target)).is_multiple_of(&m)
}

/// The least prime `m ∤ d` such that no pair of `C` other than `(2, 1)` is
/// congruent to `(2, 1)` modulo `m`.
pub fn congruence_modulus(c: &[(Scalar, Scalar)], d: &BigInt) -> Result<u64> {
    let pairs: Vec<(&BigRational, &BigRational)> = c
        .iter()
        .map(|(s, p)| match (s.as_rational(), p.as_rational()) {
            (Some(s), Some(p)) => Ok((s, p)),
            _ => Err(Error::UnsupportedField("congruence moduli are defined over Q".into())),
        })
        .collect::<Result<_>>()?;
    let two = BigRational::from_integer(2.into());
    let others: Vec<_> = pairs.into_iter().filter(|(s, p)| !(**s == two && p.is_one())).collect();
    (2u64..)
        .filter(|&m| is_prime(m) && !d.is_multiple_of(&BigInt::from(m)))
        .find(|&m| others.iter().all(|(s, p)| !(congruent_mod(s, 2, m) && congruent_mod(p, 1, m))))
        .ok_or_else(|| Error::InternalAssertion("no congruence modulus".into()))
}

/// The lcm of all entry denominators of the generators of `S` and their
/// inverses.
pub fn denominator_lcm(s: &SubgroupSpec) -> Result<BigInt> {
    if s.field() != FieldSpec::Rationals {
        return Err(Error::UnsupportedField(format!("denominators are not defined over {}", s.field())));
    }
    Ok(s.letters()
        .iter()
        .flat_map(|g| g.entries().map(|e| e.as_rational().expect("rational").denom().clone()))
        .fold(BigInt::one(), |acc, den| acc.lcm(&den)))
}

/// [`congruence_modulus`] for `C = pair_set_c(N_S)` and `d` the denominator
/// lcm of `S`.
pub fn congruence_modulus_for(s: &SubgroupSpec) -> Result<u64> {
    let d = denominator_lcm(s)?;
    let c = pair_set_c(quasi_order_bound(s), s.field())?;
    congruence_modulus(&c, &d)
}

type Residue = [u64; 4];

fn reduce_mod(g: &Mat2, m: u64) -> Result<Residue> {
    let field = FieldSpec::Prime(m);
    let mut out = [0u64; 4];
    for (slot, e) in out.iter_mut().zip(g.entries()) {
        let q = e.as_rational().ok_or_else(|| Error::UnsupportedField("reduction mod m needs Q".into()))?;
        *slot = Scalar::from_rational(q, field)
            .map_err(|_| Error::CosetError(format!("{g} has a denominator divisible by {m}")))?
            .as_residue()
            .expect("residue");
    }
    Ok(out)
}

fn mul_mod(x: &Residue, y: &Residue, m: u64) -> Residue {
    let f = |a: u64, b: u64, c: u64, d: u64| (mulm(a, b, m) + mulm(c, d, m)) % m;
    [
        f(x[0], y[0], x[1], y[2]),
        f(x[0], y[1], x[1], y[3]),
        f(x[2], y[0], x[3], y[2]),
        f(x[2], y[1], x[3], y[3]),
    ]
}

/// The kernel `S′` of `S → GL(2, 𝔽_m)` with its coset representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceSubgroup {
    pub modulus: u64,
    /// Schreier generators of `S′`.
    pub generators: Vec<Mat2>,
    pub index: usize,
    /// `r₁ = id, r₂, …`; `rᵢ` is the first element found in its coset.
    pub coset_reps: Vec<Mat2>,
}

impl CongruenceSubgroup {
    pub fn subgroup(&self) -> Result<SubgroupSpec> {
        SubgroupSpec::new(FieldSpec::Rationals, self.generators.clone())
    }

    /// Whether `M ≡ id (mod m)`.
    pub fn contains_mod(&self, g: &Mat2) -> bool {
        reduce_mod(g, self.modulus).is_ok_and(|r| r == [1, 0, 0, 1])
    }
}

/// Schreier generators of `S′ = ker(S → GL(2, ℤ/m))`.
///
/// The image is enumerated by breadth-first search over positive words in the
/// generators, which suffices since the image is finite.
pub fn congruence_subgroup_gens(s: &SubgroupSpec, m: u64, cap: usize) -> Result<CongruenceSubgroup> {
    if s.field() != FieldSpec::Rationals {
        return Err(Error::UnsupportedField(format!("congruence subgroups are built over Q, not {}", s.field())));
    }
    if !is_prime(m) {
        return Err(Error::NotPrime(m));
    }
    let gens = s.generators();
    let images: Vec<Residue> = gens.iter().map(|g| reduce_mod(g, m)).collect::<Result<_>>()?;
    let id = Mat2::identity(FieldSpec::Rationals);
    let mut index_of: HashMap<Residue, usize> = HashMap::from([([1, 0, 0, 1], 0)]);
    let mut reps = vec![id.clone()];
    let mut residues = vec![[1u64, 0, 0, 1]];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for (g, gi) in gens.iter().zip(&images) {
            let y = mul_mod(&residues[i], gi, m);
            if let std::collections::hash_map::Entry::Vacant(e) = index_of.entry(y) {
                if reps.len() == cap {
                    return Err(Error::ImageCapExceeded(cap));
                }
                e.insert(reps.len());
                queue.push_back(reps.len());
                reps.push(reps[i].mul(g));
                residues.push(y);
            }
        }
    }
    let mut seen = HashSet::new();
    let mut generators = Vec::new();
    for (t, x) in reps.iter().zip(&residues) {
        for (g, gi) in gens.iter().zip(&images) {
            let j = index_of[&mul_mod(x, gi, m)];
            let h = t.mul(g).mul(&reps[j].inv()?);
            if !h.is_identity() && seen.insert(h.clone()) {
                generators.push(h);
            }
        }
    }
    Ok(CongruenceSubgroup { modulus: m, generators, index: reps.len(), coset_reps: reps })
}

/// `Ind_{S′}^{S} ρ_{S′}(φ)` as an `n × n` array of 2×2 blocks, `n = [S : S′]`.
///
/// Block `(i, j)` is `ρ_{S′}(rᵢ⁻¹∘φ∘r_j)` when `rᵢ⁻¹ D r_j ∈ S′` for the
/// differential `D` of `φ`, and zero otherwise.
pub fn induce_representation(
    phi: &PolyAut,
    cs: &CongruenceSubgroup,
    section: &dyn OrbitSection,
) -> Result<PolyMatrix> {
    let field = phi.field();
    let s_prime = cs.subgroup()?;
    let d = phi.differential_at_origin();
    let n = cs.index;
    let mut out = PolyMatrix::zero(field, 2 * n);
    let invs: Vec<Mat2> = cs.coset_reps.iter().map(Mat2::inv).collect::<Result<_>>()?;
    for (i, ri_inv) in invs.iter().enumerate() {
        let left = ri_inv.mul(&d);
        let hits: Vec<usize> = (0..n).filter(|&j| cs.contains_mod(&left.mul(&cs.coset_reps[j]))).collect();
        let [j] = hits[..] else {
            return Err(Error::CosetError(format!("row {i} meets {} cosets", hits.len())));
        };
        let inner = PolyAut::linear(ri_inv)?
            .compose(phi)?
            .compose(&PolyAut::linear(&cs.coset_reps[j])?)?;
        out.set_block(i, j, &rho_s(&inner, &s_prime, section)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn q(n: i64) -> Scalar {
        Scalar::from_i64(n, Q)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1).unwrap(), rational_poly(&[-1, 1]));
        assert_eq!(cyclotomic(4).unwrap(), rational_poly(&[1, 0, 1]));
        assert_eq!(cyclotomic(6).unwrap(), rational_poly(&[1, -1, 1]));
        assert_eq!(cyclotomic(12).unwrap(), rational_poly(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn pair_set_over_q() {
        let c = pair_set_c(12, Q).unwrap();
        assert!(c.contains(&(q(2), q(1))));
        assert!(c.contains(&(q(-2), q(1))));
        assert!(c.contains(&(q(0), q(-1))));
        assert!(c.contains(&(q(0), q(1))));
        assert!(c.contains(&(q(1), q(1))));
        assert!(c.contains(&(q(-1), q(1))));
        // ζ₁ζ₂ = 1 forces ζ₂ = ζ̄₁; the traces 2cos(2πk/12) in ℚ are 0, ±1, ±2.
        assert!(!c.contains(&(q(3), q(1))));
        let c1 = pair_set_c(1, Q).unwrap();
        assert_eq!(c1, vec![(q(2), q(1))]);
    }

    #[test]
    fn pair_set_over_prime_field() {
        let f5 = FieldSpec::prime(5).unwrap();
        let c = pair_set_c(24, f5).unwrap();
        // Every (s, p) with s² − 4p a square occurs, plus irreducible ones.
        assert!(c.contains(&(Scalar::from_i64(2, f5), Scalar::one(f5))));
        assert!(c.len() > 5);
    }

    #[test]
    fn moduli() {
        let c = pair_set_c(12, Q).unwrap();
        assert_eq!(congruence_modulus(&c, &BigInt::one()).unwrap(), 5);
        assert_eq!(congruence_modulus(&c, &BigInt::from(10)).unwrap(), 7);
        assert_eq!(congruence_modulus(&[(q(2), q(1))], &BigInt::one()).unwrap(), 2);
        let f5 = FieldSpec::prime(5).unwrap();
        let s = SubgroupSpec::new(f5, vec![]).unwrap();
        assert!(matches!(congruence_modulus_for(&s), Err(Error::UnsupportedField(_))));
    }

    #[test]
    fn congruence_subgroup_of_sl2z_generator() {
        let s = SubgroupSpec::new(Q, vec![Mat2::from_i64(Q, [[1, 1], [0, 1]])]).unwrap();
        let cs = congruence_subgroup_gens(&s, 5, DEFAULT_IMAGE_CAP).unwrap();
        assert_eq!(cs.index, 5);
        assert_eq!(cs.generators, vec![Mat2::from_i64(Q, [[1, 5], [0, 1]])]);
        assert!(matches!(congruence_subgroup_gens(&s, 5, 3), Err(Error::ImageCapExceeded(3))));
    }
}
