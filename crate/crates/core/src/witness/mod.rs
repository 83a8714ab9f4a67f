//! Explicit witnesses: the group `Γ = ⟨σ, σ′, τ⟩ ⊂ Aut₀ℚ²`, conjugates
//! escaping `B₀`, and Cornulier's representation over a square-zero
//! extension.

mod cornulier;
mod gamma;

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Mat2, UniPoly};
use crate::planeaut::{Membership, PolyAut};

pub use cornulier::{
    cornulier_rho1, cornulier_rho2, cornulier_suite, verify_cornulier_identity, verify_cornulier_left_conjugation,
    BinomialPoly, SquareZeroElt, SzMat,
};
pub use gamma::{
    distinctness_suite, gamma_generators, gamma_suite, gamma_word, normal_form, s_prime_power_check,
    verify_gamma_relations,
    DistinctnessReport, GammaAmalgam, GammaElt, Letter,
};

/// One named check; `expected` is `false` for negative controls.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub expected: bool,
    pub observed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: bool, observed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), expected, observed, detail: detail.into() }
    }

    pub fn ok(&self) -> bool {
        self.expected == self.observed
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.ok() { "ok" } else { "FAIL" };
            let kind = if c.expected { "" } else { " (negative control)" };
            writeln!(f, "{status:4} {}{kind}: {}", c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Some `γ` with `γ∘g∘γ⁻¹ ∉ B` for `g ∈ B₀ \ {id}`.
///
/// A non-homothety is moved off the lower-triangular matrices by a linear
/// conjugation; a homothety `λ·id` is conjugated by `T = (x, y + x²)` to
/// `(λx, λy + (λ² − λ)x²)`.
pub fn hypothesis_h_witness(g: &Mat2) -> Result<PolyAut> {
    if !g.is_lower_triangular() {
        return Err(Error::NotInB0);
    }
    if g.is_identity() {
        return Err(Error::IsIdentity);
    }
    let field = g.field();
    let candidates: Vec<PolyAut> = if g.is_homothety() {
        vec![PolyAut::shear(&UniPoly::monomial(crate::exactalg::Scalar::one(field), 2))]
    } else {
        [[[0, 1], [1, 0]], [[1, 1], [0, 1]], [[0, 1], [1, 1]]]
            .into_iter()
            .map(|m| PolyAut::linear(&Mat2::from_i64(field, m)))
            .collect::<Result<_>>()?
    };
    let ga = PolyAut::linear(g)?;
    candidates
        .into_iter()
        .find(|c| c.compose_same_field(&ga).compose_same_field(&c.inverse()).membership() != Membership::InB)
        .ok_or_else(|| Error::InternalAssertion(format!("no conjugate of {g} leaves B")))
}

/// `γ∘g∘γ⁻¹`.
pub fn conjugate_by(gamma: &PolyAut, g: &Mat2) -> Result<PolyAut> {
    gamma.compose(&PolyAut::linear(g)?)?.compose(&gamma.inverse())
}

/// Witness checks for a few elements of `B₀` over ℚ.
pub fn hypothesis_h_suite() -> Report {
    let q = FieldSpec::Rationals;
    let mut r = Report::default();
    for m in [[[1, 0], [1, 1]], [[3, 0], [0, 3]], [[2, 0], [5, 1]], [[-1, 0], [0, -1]]] {
        let g = Mat2::from_i64(q, m);
        let outcome = hypothesis_h_witness(&g).and_then(|gamma| Ok((conjugate_by(&gamma, &g)?, gamma)));
        let (observed, detail) = match outcome {
            Ok((c, gamma)) => (c.membership() != Membership::InB, format!("γ = {gamma}, conjugate {c}")),
            Err(e) => (false, e.to_string()),
        };
        r.push(Check::new(format!("H-witness for {g}"), true, observed, detail));
    }
    let id = Mat2::identity(q);
    let refused = hypothesis_h_witness(&id) == Err(Error::IsIdentity);
    r.push(Check::new("H-witness refuses the identity", true, refused, "IsIdentity"));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn h_witness_examples() {
        let g = Mat2::from_i64(Q, [[1, 0], [1, 1]]);
        let gamma = hypothesis_h_witness(&g).unwrap();
        assert_eq!(gamma, PolyAut::parse("(y ; x)", Q).unwrap());
        assert!(conjugate_by(&gamma, &g).unwrap().differential_at_origin().is_upper_triangular());

        let g = Mat2::from_i64(Q, [[3, 0], [0, 3]]);
        let gamma = hypothesis_h_witness(&g).unwrap();
        assert_eq!(conjugate_by(&gamma, &g).unwrap(), PolyAut::parse("(3*x ; 3*y + 6*x^2)", Q).unwrap());

        assert_eq!(hypothesis_h_witness(&Mat2::identity(Q)), Err(Error::IsIdentity));
        assert_eq!(hypothesis_h_witness(&Mat2::from_i64(Q, [[1, 1], [0, 1]])), Err(Error::NotInB0));
        assert!(hypothesis_h_suite().all_ok());
    }
}
