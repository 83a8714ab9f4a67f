//! Unipotent, quasi-unipotent and `K`-reducible matrices, and the
//! hypotheses 𝒰 and 𝒬𝒰 on finitely generated subgroups.

use std::collections::{HashSet, VecDeque};

use super::SubgroupSpec;
use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Mat2, Scalar};

/// Quasi-orders that occur over ℚ: `φ(n) ≤ 2` forces `n ∈ {1, 2, 3, 4, 6}`.
const RATIONAL_QUASI_ORDERS: [u64; 5] = [1, 2, 3, 4, 6];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub k_reducible: bool,
    pub unipotent: bool,
    pub quasi_unipotent: bool,
    pub quasi_order: Option<u64>,
}

fn is_unipotent(m: &Mat2) -> bool {
    let f = m.field();
    m.trace() == Scalar::from_i64(2, f) && m.det().is_one()
}

fn is_k_reducible(m: &Mat2) -> bool {
    let f = m.field();
    let (tr, det) = (m.trace(), m.det());
    match f {
        FieldSpec::Prime(2) => f
            .elements()
            .expect("finite")
            .iter()
            .any(|z| (&(&(z * z) - &(&tr * z)) + &det).is_zero()),
        _ => (&(&tr * &tr) - &det.mul_i64(4)).is_square(),
    }
}

fn pow_u64(m: &Mat2, mut e: u64) -> Mat2 {
    let mut acc = Mat2::identity(m.field());
    let mut base = m.clone();
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

fn prime_factors(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        let mut k = 0;
        while n.is_multiple_of(d) {
            n /= d;
            k += 1;
        }
        if k > 0 {
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Divisors of `p² − 1`, factored as `(p − 1)(p + 1)`.
fn divisors_of_order(p: u64) -> Vec<u64> {
    let mut factors = prime_factors(p - 1);
    for (q, k) in prime_factors(p + 1) {
        match factors.iter_mut().find(|(r, _)| *r == q) {
            Some(slot) => slot.1 += k,
            None => factors.push((q, k)),
        }
    }
    let mut out = vec![1u64];
    for (p, k) in factors {
        let current = out.clone();
        let mut pk = 1;
        for _ in 0..k {
            pk *= p;
            out.extend(current.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

/// The smallest `n > 0` with `Mⁿ` unipotent, if any.
fn quasi_order(m: &Mat2) -> Option<u64> {
    let candidates = match m.field() {
        FieldSpec::Rationals => RATIONAL_QUASI_ORDERS.to_vec(),
        FieldSpec::Prime(p) => divisors_of_order(p),
    };
    candidates.into_iter().find(|&n| is_unipotent(&pow_u64(m, n)))
}

pub fn classify(m: &Mat2) -> Result<Classification> {
    if m.det().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let quasi_order = quasi_order(m);
    Ok(Classification {
        k_reducible: is_k_reducible(m),
        unipotent: is_unipotent(m),
        quasi_unipotent: quasi_order.is_some(),
        quasi_order,
    })
}

/// A uniform `N` with every quasi-order dividing `N`: 12 over ℚ, `p² − 1`
/// over 𝔽_p.
pub fn quasi_order_bound(s: &SubgroupSpec) -> u64 {
    match s.field() {
        FieldSpec::Rationals => 12,
        FieldSpec::Prime(p) => p * p - 1,
    }
}

/// Outcome of a bounded search; `NoCounterexampleFound` is not a proof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HypothesisVerdict {
    NoCounterexampleFound { explored: usize },
    /// `word` lists generator indices from 1, negated for inverses.
    Counterexample { element: Mat2, word: Vec<i32> },
}

impl HypothesisVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, HypothesisVerdict::NoCounterexampleFound { .. })
    }
}

fn search(s: &SubgroupSpec, bound: usize, bad: impl Fn(&Classification) -> bool) -> HypothesisVerdict {
    let field = s.field();
    let letters: Vec<(i32, Mat2)> = s
        .generators()
        .iter()
        .enumerate()
        .flat_map(|(i, g)| [(i as i32 + 1, g.clone()), (-(i as i32) - 1, g.inv().expect("invertible"))])
        .collect();
    let id = Mat2::identity(field);
    let mut seen = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([(id, Vec::new())]);
    while let Some((g, word)) = queue.pop_front() {
        let c = classify(&g).expect("products of invertible matrices");
        if c.k_reducible && bad(&c) {
            return HypothesisVerdict::Counterexample { element: g, word };
        }
        if word.len() == bound {
            continue;
        }
        for (k, l) in &letters {
            let h = g.mul(l);
            if seen.insert(h.clone()) {
                let mut w = word.clone();
                w.push(*k);
                queue.push_back((h, w));
            }
        }
    }
    HypothesisVerdict::NoCounterexampleFound { explored: seen.len() }
}

/// 𝒰: every `K`-reducible element of `S` is unipotent.
pub fn check_hypothesis_u(s: &SubgroupSpec, word_bound: usize) -> HypothesisVerdict {
    search(s, word_bound, |c| !c.unipotent)
}

/// 𝒬𝒰: every `K`-reducible element of `S` is quasi-unipotent.
pub fn check_hypothesis_qu(s: &SubgroupSpec, word_bound: usize) -> HypothesisVerdict {
    search(s, word_bound, |c| !c.quasi_unipotent)
}
