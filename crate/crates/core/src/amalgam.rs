//! Reduced words in an amalgamated product `G₁ *_A G₂`.
//!
//! The engine only ever multiplies elements that lie in a common factor, so
//! instances may represent the two factors by unrelated data.

use std::collections::{HashMap, VecDeque};
use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

/// One of the two factors of the amalgam.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    One,
    Two,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::One => Side::Two,
            Side::Two => Side::One,
        }
    }

    /// `1` or `2`.
    pub fn index(self) -> u8 {
        match self {
            Side::One => 1,
            Side::Two => 2,
        }
    }
}

/// The group data of an amalgam instance.
pub trait AmalgamSpec {
    type Elem: Clone + Eq + Hash + Debug;

    fn identity(&self) -> Self::Elem;
    /// Product `a·b`; only called when both lie in one factor.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn in_a(&self, g: &Self::Elem) -> bool;
    /// The factor containing `g`, for `g ∉ A`; `None` if `g` lies in neither.
    fn side_of(&self, g: &Self::Elem) -> Option<Side>;
    /// Fixed representative `r` of the left coset `gA`, with `g = r·a`.
    fn coset_rep(&self, g: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// Elements of `G_side \ A` lying in pairwise distinct right cosets `Aγ`.
    fn samples(&self, side: Side) -> Vec<Self::Elem>;
    /// Some `γ`, given as a word, with `γ·a·γ⁻¹ ∉ A`.
    fn h_witness(&self, _a: &Self::Elem) -> Option<Vec<Self::Elem>> {
        None
    }
}

/// `x₁ ⋯ xₙ · x₀` with alternating coset representatives `xᵢ` and `x₀ ∈ A`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord<E> {
    pub factors: Vec<(Side, E)>,
    pub tail: E,
}

impl<E: Clone> ReducedWord<E> {
    pub fn length(&self) -> usize {
        self.factors.len()
    }

    pub fn type_seq(&self) -> Vec<Side> {
        self.factors.iter().map(|(s, _)| *s).collect()
    }

    /// The word as a list of elements, tail last.
    pub fn elements(&self) -> Vec<E> {
        self.factors
            .iter()
            .map(|(_, e)| e.clone())
            .chain(std::iter::once(self.tail.clone()))
            .collect()
    }

    /// Whether the word starts and ends in `corner`.
    pub fn has_corner(&self, corner: Side) -> bool {
        matches!((self.factors.first(), self.factors.last()),
            (Some((a, _)), Some((b, _))) if *a == corner && *b == corner)
    }
}

fn checked_rep<S: AmalgamSpec>(spec: &S, g: &S::Elem, side: Side) -> Result<(S::Elem, S::Elem)> {
    let (r, a) = spec.coset_rep(g);
    if spec.mul(&r, &a) != *g {
        return Err(Error::SpecViolation(format!("coset_rep({g:?}) = ({r:?}, {a:?}) does not multiply back")));
    }
    if !spec.in_a(&a) {
        return Err(Error::SpecViolation(format!("remainder {a:?} of {g:?} is not in A")));
    }
    if spec.in_a(&r) || spec.side_of(&r) != Some(side) {
        return Err(Error::SpecViolation(format!("representative {r:?} of {g:?} left its factor")));
    }
    Ok((r, a))
}

/// Normal form of the product of `word`.
pub fn reduce<S: AmalgamSpec>(spec: &S, word: &[S::Elem]) -> Result<ReducedWord<S::Elem>> {
    let mut factors: Vec<(Side, S::Elem)> = Vec::new();
    let mut tail = spec.identity();
    for g in word {
        if spec.in_a(g) {
            tail = spec.mul(&tail, g);
            continue;
        }
        let side = spec
            .side_of(g)
            .ok_or_else(|| Error::SpecViolation(format!("{g:?} lies in neither factor")))?;
        let mut h = spec.mul(&tail, g);
        if matches!(factors.last(), Some((s, _)) if *s == side) {
            let (_, last) = factors.pop().unwrap();
            h = spec.mul(&last, &h);
            if spec.in_a(&h) {
                tail = h;
                continue;
            }
        }
        let (r, a) = checked_rep(spec, &h, side)?;
        factors.push((side, r));
        tail = a;
    }
    Ok(ReducedWord { factors, tail })
}

fn conjugate_word<S: AmalgamSpec>(spec: &S, gamma: &[S::Elem], w: &[S::Elem]) -> Vec<S::Elem> {
    let mut out = gamma.to_vec();
    out.extend_from_slice(w);
    out.extend(gamma.iter().rev().map(|g| spec.inv(g)));
    out
}

/// A word `γ` such that `γ·w·γ⁻¹` reduces to a word starting and ending in
/// `corner`.
pub fn conjugate_to_type<S: AmalgamSpec>(
    spec: &S,
    w: &ReducedWord<S::Elem>,
    corner: Side,
) -> Result<Vec<S::Elem>> {
    if w.length() == 0 {
        if w.tail == spec.identity() {
            return Err(Error::IsIdentity);
        }
        let h = spec.h_witness(&w.tail).ok_or(Error::NeedsHWitness)?;
        let moved = reduce(spec, &conjugate_word(spec, &h, &w.elements()))?;
        if moved.length() == 0 {
            return Err(Error::SpecViolation(format!("h_witness did not move {:?} out of A", w.tail)));
        }
        let mut gamma = conjugate_to_type(spec, &moved, corner)?;
        gamma.extend(h);
        return Ok(gamma);
    }
    if w.has_corner(corner) {
        return Ok(Vec::new());
    }
    let elements = w.elements();
    for s in spec.samples(corner) {
        let gamma = vec![s];
        if reduce(spec, &conjugate_word(spec, &gamma, &elements))?.has_corner(corner) {
            return Ok(gamma);
        }
    }
    Err(Error::TrivialAmalgam(format!("no sample of side {} conjugates into the corner", corner.index())))
}

/// An element of `G₁′ ∩ A` or `G₂′ ∩ A` not met on the other side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubamalgamViolation<E> {
    pub element: E,
    pub found_in: Side,
    /// Generator indices, negated and shifted by one for inverses.
    pub word: Vec<i32>,
}

/// Outcome of a bounded search. An empty violation list means no
/// counterexample was found up to the bound, not that none exists.
#[derive(Clone, Debug)]
pub struct SubamalgamReport<E> {
    pub bound: usize,
    pub explored: [usize; 2],
    pub violations: Vec<SubamalgamViolation<E>>,
}

impl<E> SubamalgamReport<E> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// All products of at most `bound` generators and inverses, with a shortest
/// word for each.
fn ball<S: AmalgamSpec>(spec: &S, gens: &[S::Elem], bound: usize) -> HashMap<S::Elem, Vec<i32>> {
    let mut letters: Vec<(i32, S::Elem)> = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let k = i as i32 + 1;
        letters.push((k, g.clone()));
        letters.push((-k, spec.inv(g)));
    }
    let mut seen = HashMap::from([(spec.identity(), Vec::new())]);
    let mut queue = VecDeque::from([(spec.identity(), Vec::new())]);
    while let Some((g, word)) = queue.pop_front() {
        if word.len() == bound {
            continue;
        }
        for (k, l) in &letters {
            let h = spec.mul(&g, l);
            if !seen.contains_key(&h) {
                let mut w = word.clone();
                w.push(*k);
                seen.insert(h.clone(), w.clone());
                queue.push_back((h, w));
            }
        }
    }
    seen
}

/// Bounded check that `G₁′ ∩ A = G₂′ ∩ A` for `G₁′ = ⟨gens1⟩ ⊂ G₁` and
/// `G₂′ = ⟨gens2⟩ ⊂ G₂`.
pub fn subamalgam_check<S: AmalgamSpec>(
    spec: &S,
    gens1: &[S::Elem],
    gens2: &[S::Elem],
    bound: usize,
) -> SubamalgamReport<S::Elem> {
    let b1 = ball(spec, gens1, bound);
    let b2 = ball(spec, gens2, bound);
    let mut violations = Vec::new();
    for (mine, theirs, side) in [(&b1, &b2, Side::One), (&b2, &b1, Side::Two)] {
        let mut found: Vec<_> = mine
            .iter()
            .filter(|(g, _)| spec.in_a(g) && !theirs.contains_key(*g))
            .map(|(g, w)| SubamalgamViolation { element: g.clone(), found_in: side, word: w.clone() })
            .collect();
        found.sort_by(|a, b| (a.word.len(), &a.word).cmp(&(b.word.len(), &b.word)));
        violations.extend(found);
    }
    SubamalgamReport { bound, explored: [b1.len(), b2.len()], violations }
}
