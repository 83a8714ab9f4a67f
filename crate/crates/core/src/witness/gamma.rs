//! `Γ = ⟨σ, σ′, τ | σσ′ = σ′σ, στσ⁻¹ = τ²⟩` realized by `S = ½·id`,
//! `S′ = [[1,1],[1,0]]` and `T = (x, y + x²)`.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{Check, Report};
use crate::amalgam::{reduce, AmalgamSpec, ReducedWord, Side};
use crate::exactalg::{FieldSpec, Mat2, Scalar, UniPoly};
use crate::planeaut::PolyAut;

const Q: FieldSpec = FieldSpec::Rationals;

/// `(S, S′, T)`.
pub fn gamma_generators() -> (PolyAut, PolyAut, PolyAut) {
    let half = Scalar::from_ratio(&BigInt::one(), &BigInt::from(2), Q).expect("2 ≠ 0");
    let s = PolyAut::linear(&Mat2::scalar(half)).expect("invertible");
    let sp = PolyAut::linear(&Mat2::from_i64(Q, [[1, 1], [1, 0]])).expect("invertible");
    let t = PolyAut::shear(&UniPoly::from_i64s(Q, &[0, 0, 1]));
    (s, sp, t)
}

fn relation_checks(t: &PolyAut, label: &str, expected: bool) -> Report {
    let (s, sp, _) = gamma_generators();
    let mut r = Report::default();
    let lhs = s.compose_same_field(&sp);
    let rhs = sp.compose_same_field(&s);
    if expected {
        r.push(Check::new("σσ′ = σ′σ", true, lhs == rhs, format!("{lhs}")));
    }
    let conj = s.compose_same_field(t).compose_same_field(&s.inverse());
    let square = t.compose_same_field(t);
    r.push(Check::new(
        format!("στσ⁻¹ = τ² with τ = {label}"),
        expected,
        conj == square,
        format!("στσ⁻¹ = {conj}, τ² = {square}"),
    ));
    r
}

/// Both defining relations, followed by a negative control with
/// `τ̃ = (x, y + x³)` in place of `τ`.
pub fn verify_gamma_relations() -> Report {
    let (_, _, t) = gamma_generators();
    let mut r = relation_checks(&t, "T", true);
    r.extend(relation_checks(&PolyAut::shear(&UniPoly::from_i64s(Q, &[0, 0, 0, 1])), "(x, y + x^3)", false));
    r
}

/// A letter of a word in `σ^±, σ′^±, τ^±`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Sigma,
    SigmaInv,
    SigmaP,
    SigmaPInv,
    Tau,
    TauInv,
}

impl Letter {
    pub const ALL: [Letter; 6] =
        [Letter::Sigma, Letter::SigmaInv, Letter::SigmaP, Letter::SigmaPInv, Letter::Tau, Letter::TauInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::Sigma => Letter::SigmaInv,
            Letter::SigmaInv => Letter::Sigma,
            Letter::SigmaP => Letter::SigmaPInv,
            Letter::SigmaPInv => Letter::SigmaP,
            Letter::Tau => Letter::TauInv,
            Letter::TauInv => Letter::Tau,
        }
    }

    /// The letter as an element of the abstract amalgam.
    pub fn element(self) -> GammaElt {
        let q = |n: i64| BigRational::from_integer(n.into());
        match self {
            Letter::Sigma => GammaElt::One { a: 1, b: 0 },
            Letter::SigmaInv => GammaElt::One { a: -1, b: 0 },
            Letter::SigmaP => GammaElt::One { a: 0, b: 1 },
            Letter::SigmaPInv => GammaElt::One { a: 0, b: -1 },
            Letter::Tau => GammaElt::Two { k: 0, q: q(1) },
            Letter::TauInv => GammaElt::Two { k: 0, q: q(-1) },
        }
    }

    fn automorphism(self, gens: &(PolyAut, PolyAut, PolyAut)) -> PolyAut {
        let (s, sp, t) = gens;
        match self {
            Letter::Sigma => s.clone(),
            Letter::SigmaInv => s.inverse(),
            Letter::SigmaP => sp.clone(),
            Letter::SigmaPInv => sp.inverse(),
            Letter::Tau => t.clone(),
            Letter::TauInv => t.inverse(),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Letter::Sigma => "s",
            Letter::SigmaInv => "s^-1",
            Letter::SigmaP => "s'",
            Letter::SigmaPInv => "s'^-1",
            Letter::Tau => "t",
            Letter::TauInv => "t^-1",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Letter {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Letter::ALL
            .into_iter()
            .find(|l| l.to_string() == s)
            .ok_or_else(|| format!("unknown letter `{s}`; expected one of s, s^-1, s', s'^-1, t, t^-1"))
    }
}

/// The automorphism of a word, letters composed left to right.
pub fn gamma_word(letters: &[Letter]) -> PolyAut {
    let gens = gamma_generators();
    letters
        .iter()
        .fold(PolyAut::identity(Q), |acc, l| acc.compose_same_field(&l.automorphism(&gens)))
}

/// Elements of the factors of `Γ = G₁ *_A G₂` with `A = ⟨σ⟩`,
/// `G₁ = ⟨σ, σ′⟩ ≅ ℤ²` and `G₂ = ⟨σ⟩ ⋉ ℤ[½]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GammaElt {
    /// `σᵃσ′ᵇ`; elements of `A` always use this form with `b = 0`.
    One { a: i64, b: i64 },
    /// `σᵏτ^q` with `q ∈ ℤ[½]` nonzero.
    Two { k: i64, q: BigRational },
}

impl GammaElt {
    fn normalized(self) -> GammaElt {
        match self {
            GammaElt::Two { k, q } if q.is_zero() => GammaElt::One { a: k, b: 0 },
            e => e,
        }
    }

    fn as_two(&self) -> (i64, BigRational) {
        match self {
            GammaElt::Two { k, q } => (*k, q.clone()),
            GammaElt::One { a, b: 0 } => (*a, BigRational::zero()),
            GammaElt::One { .. } => panic!("σ′ does not lie in the second factor"),
        }
    }
}

fn pow2(k: i64) -> BigRational {
    let two = BigRational::from_integer(2.into());
    if k >= 0 {
        num_traits::pow(two, k as usize)
    } else {
        num_traits::pow(two.recip(), k.unsigned_abs() as usize)
    }
}

/// The amalgam structure on `Γ`.
#[derive(Clone, Copy, Debug, Default)]
pub struct GammaAmalgam;

impl AmalgamSpec for GammaAmalgam {
    type Elem = GammaElt;

    fn identity(&self) -> GammaElt {
        GammaElt::One { a: 0, b: 0 }
    }

    fn mul(&self, x: &GammaElt, y: &GammaElt) -> GammaElt {
        match (x, y) {
            (GammaElt::One { a, b }, GammaElt::One { a: c, b: d }) => GammaElt::One { a: a + c, b: b + d },
            _ => {
                // σᵏτ^q · σˡτʳ = σ^{k+l} τ^{q/2ˡ + r}.
                let (k, q) = x.as_two();
                let (l, r) = y.as_two();
                GammaElt::Two { k: k + l, q: q * pow2(-l) + r }.normalized()
            }
        }
    }

    fn inv(&self, x: &GammaElt) -> GammaElt {
        match x {
            GammaElt::One { a, b } => GammaElt::One { a: -a, b: -b },
            GammaElt::Two { k, q } => GammaElt::Two { k: -k, q: -q * pow2(*k) },
        }
    }

    fn in_a(&self, g: &GammaElt) -> bool {
        matches!(g, GammaElt::One { b: 0, .. })
    }

    fn side_of(&self, g: &GammaElt) -> Option<Side> {
        match g {
            GammaElt::One { b: 0, .. } => None,
            GammaElt::One { .. } => Some(Side::One),
            GammaElt::Two { .. } => Some(Side::Two),
        }
    }

    fn coset_rep(&self, g: &GammaElt) -> (GammaElt, GammaElt) {
        match g {
            GammaElt::One { a, b } => (GammaElt::One { a: 0, b: *b }, GammaElt::One { a: *a, b: 0 }),
            GammaElt::Two { k, q } => (GammaElt::Two { k: 0, q: q * pow2(*k) }, GammaElt::One { a: *k, b: 0 }),
        }
    }

    fn samples(&self, side: Side) -> Vec<GammaElt> {
        (1..=3)
            .map(|n| match side {
                Side::One => GammaElt::One { a: 0, b: n },
                Side::Two => GammaElt::Two { k: 0, q: BigRational::from_integer(n.into()) },
            })
            .collect()
    }

    fn h_witness(&self, a: &GammaElt) -> Option<Vec<GammaElt>> {
        (!matches!(a, GammaElt::One { a: 0, b: 0 })).then(|| vec![Letter::Tau.element()])
    }
}

/// Normal form of a word in the amalgam.
pub fn normal_form(letters: &[Letter]) -> ReducedWord<GammaElt> {
    let elems: Vec<GammaElt> = letters.iter().map(|l| l.element()).collect();
    reduce(&GammaAmalgam, &elems).expect("coset representatives of Γ are consistent")
}

/// Outcome of [`distinctness_suite`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinctnessReport {
    pub max_length: usize,
    /// Freely reduced words enumerated.
    pub words: usize,
    /// Distinct normal forms among them.
    pub normal_forms: usize,
    /// Pairs of words with equal normal forms but different automorphisms.
    pub relation_breaks: Vec<(Vec<Letter>, Vec<Letter>)>,
    /// Pairs of words with different normal forms but equal automorphisms.
    pub collisions: Vec<(Vec<Letter>, Vec<Letter>)>,
}

impl DistinctnessReport {
    pub fn is_clean(&self) -> bool {
        self.relation_breaks.is_empty() && self.collisions.is_empty()
    }
}

/// Enumerates all freely reduced words of length at most `max_length`, groups
/// them by normal form in the amalgam, and checks that the realization in
/// `Aut₀ℚ²` is constant on each class and injective across classes.
pub fn distinctness_suite(max_length: usize) -> DistinctnessReport {
    let gens = gamma_generators();
    let autos: Vec<PolyAut> = Letter::ALL.iter().map(|l| l.automorphism(&gens)).collect();
    let mut by_form: HashMap<ReducedWord<GammaElt>, (Vec<Letter>, PolyAut)> = HashMap::new();
    let mut relation_breaks = Vec::new();
    let mut words = 0usize;

    // Words are grown by prepending, so each costs one composition.
    let mut layer: Vec<(Vec<Letter>, PolyAut)> = vec![(Vec::new(), PolyAut::identity(Q))];
    for len in 0..=max_length {
        let mut next = Vec::new();
        for (w, phi) in &layer {
            words += 1;
            let form = normal_form(w);
            match by_form.get(&form) {
                Some((w0, phi0)) => {
                    if phi0 != phi {
                        relation_breaks.push((w0.clone(), w.clone()));
                    }
                }
                None => {
                    by_form.insert(form, (w.clone(), phi.clone()));
                }
            }
            if len == max_length {
                continue;
            }
            for (l, a) in Letter::ALL.iter().zip(&autos) {
                if w.first() == Some(&l.inverse()) {
                    continue;
                }
                let mut nw = Vec::with_capacity(w.len() + 1);
                nw.push(*l);
                nw.extend_from_slice(w);
                next.push((nw, a.compose_same_field(phi)));
            }
        }
        layer = next;
    }

    let mut seen: HashMap<&PolyAut, &Vec<Letter>> = HashMap::new();
    let mut collisions = Vec::new();
    for (w, phi) in by_form.values() {
        if let Some(w0) = seen.insert(phi, w) {
            collisions.push((w0.clone(), w.clone()));
        }
    }
    DistinctnessReport { max_length, words, normal_forms: by_form.len(), relation_breaks, collisions }
}

/// `S′ⁿ` is neither lower- nor upper-triangular for `0 < |n| ≤ bound`.
pub fn s_prime_power_check(bound: i64) -> Check {
    let sp = Mat2::from_i64(Q, [[1, 1], [1, 0]]);
    let bad: Vec<i64> = (-bound..=bound)
        .filter(|&n| n != 0)
        .filter(|&n| {
            let m = sp.pow(n).expect("invertible");
            m.is_lower_triangular() || m.is_upper_triangular()
        })
        .collect();
    Check::new(
        format!("S′ⁿ off both Borel subgroups for 0 < |n| ≤ {bound}"),
        true,
        bad.is_empty(),
        if bad.is_empty() { "no triangular power".to_string() } else { format!("triangular for n = {bad:?}") },
    )
}

/// Relations, negative control, powers of `S′`, and distinctness up to
/// `max_length`.
pub fn gamma_suite(max_length: usize) -> Report {
    let mut r = verify_gamma_relations();
    r.push(s_prime_power_check(12));
    let d = distinctness_suite(max_length);
    r.push(Check::new(
        format!("reduced Γ-words of length ≤ {max_length} are distinct"),
        true,
        d.is_clean(),
        format!(
            "{} words, {} normal forms, {} relation breaks, {} collisions",
            d.words,
            d.normal_forms,
            d.relation_breaks.len(),
            d.collisions.len()
        ),
    ));
    // A faithful realization must separate τ from τ².
    let same = gamma_word(&[Letter::Tau]) == gamma_word(&[Letter::Tau, Letter::Tau]);
    r.push(Check::new("τ and τ² coincide", false, same, "negative control"));
    r
}
