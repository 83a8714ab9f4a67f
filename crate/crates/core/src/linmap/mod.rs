//! Linearization: the isomorphism `ψ: Aut₁K² ≅ GL₁(2, K[t])`, matrix
//! classification, the representations `ρ_S`, and the congruence-subgroup
//! pipeline.

mod classify;
mod congruence;
mod section;

use std::fmt;

use crate::error::{Error, Result};
use crate::exactalg::{FieldSpec, Mat2, MatPoly2};
use crate::freefactor::{free_factorize, tau, TauFactor, TauWord};
use crate::matpoly::{e_generation_factorize, EFactor};
use crate::planeaut::PolyAut;

pub use classify::{
    check_hypothesis_qu, check_hypothesis_u, classify, quasi_order_bound, Classification, HypothesisVerdict,
};
pub use congruence::{
    congruence_modulus, congruence_modulus_for, congruence_subgroup_gens, denominator_lcm, induce_representation,
    pair_set_c, CongruenceSubgroup, DEFAULT_IMAGE_CAP,
};
pub use section::{
    rho_s, BoundedBfsSection, CyclicUnipotentSection, OrbitSection, SectionMode, TrivialSection,
};

/// A finitely generated subgroup `S ⊂ GL(K²)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupSpec {
    field: FieldSpec,
    generators: Vec<Mat2>,
}

impl SubgroupSpec {
    pub fn new(field: FieldSpec, generators: Vec<Mat2>) -> Result<Self> {
        for g in &generators {
            field.check(&g.field())?;
            if g.det().is_zero() {
                return Err(Error::SingularMatrix);
            }
        }
        Ok(SubgroupSpec { field, generators })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn generators(&self) -> &[Mat2] {
        &self.generators
    }

    /// Generators followed by their inverses.
    pub fn letters(&self) -> Vec<Mat2> {
        let mut out = self.generators.clone();
        out.extend(self.generators.iter().map(|g| g.inv().expect("invertible")));
        out
    }
}

impl fmt::Display for SubgroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// `ψ_δ(τ_δ(f)) = id + (f/t)·e_δ`.
pub fn tau_to_efactor(u: &TauFactor) -> EFactor {
    let f = u.f.shift_down(2).expect("f ∈ t²K[t]");
    EFactor::new(u.delta.clone(), f).expect("nonzero")
}

/// Inverse of [`tau_to_efactor`]: `(δ, f) ↦ τ_δ(t²f)`.
pub fn efactor_to_tau(x: &EFactor) -> TauFactor {
    TauFactor::new(x.delta.clone(), x.f.shift_up(2)).expect("nonzero with valuation ≥ 2")
}

/// `ψ` on a reduced τ-word.
pub fn psi_of_word(w: &TauWord, field: FieldSpec) -> MatPoly2 {
    w.factors().iter().fold(MatPoly2::identity(field), |acc, u| acc.mul(&tau_to_efactor(u).matrix()))
}

/// `ψ: Aut₁K² → GL₁(2, K[t])`.
pub fn psi(phi: &PolyAut) -> Result<MatPoly2> {
    Ok(psi_of_word(&free_factorize(phi)?, phi.field()))
}

/// `ψ⁻¹: GL₁(2, K[t]) → Aut₁K²`.
pub fn psi_inv(g: &MatPoly2) -> Result<PolyAut> {
    let w = e_generation_factorize(g)?;
    let field = g.field();
    w.factors().iter().try_fold(PolyAut::identity(field), |acc, x| {
        let u = efactor_to_tau(x);
        Ok(acc.compose_same_field(&tau(&u.delta, &u.f)?))
    })
}

/// Degrees of `σ` and `ψ(σ)` for a reduced τ-word, with the factor degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeLaw {
    pub deg_sigma: u64,
    pub deg_psi: u64,
    pub factor_degrees: Vec<u64>,
}

/// Checks `deg σ = Π mᵢ` and `deg ψ(σ) = Σ mᵢ − m`.
pub fn degree_law_check(w: &TauWord, field: FieldSpec) -> Result<DegreeLaw> {
    let ms: Vec<u64> = w.factors().iter().map(|u| u.f.degree().expect("nonzero") as u64).collect();
    let sigma = w.recompose(field);
    let g = psi_of_word(w, field);
    let law = DegreeLaw {
        deg_sigma: sigma.degree() as u64,
        deg_psi: g.degree().unwrap_or(0) as u64,
        factor_degrees: ms.clone(),
    };
    let product: u64 = ms.iter().product();
    let sum: u64 = ms.iter().sum::<u64>() - ms.len() as u64;
    if law.deg_sigma != product {
        return Err(Error::LawViolation(format!("deg σ = {} but Π m = {product}", law.deg_sigma)));
    }
    if law.deg_psi != sum {
        return Err(Error::LawViolation(format!("deg ψ(σ) = {} but Σ m − m = {sum}", law.deg_psi)));
    }
    Ok(law)
}

/// `g·M·g⁻¹` for a constant `g`.
pub(crate) fn conj_const(g: &Mat2, m: &MatPoly2, g_inv: &Mat2) -> MatPoly2 {
    MatPoly2::constant(g).mul(m).mul(&MatPoly2::constant(g_inv))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse::parse_matpoly2;
    use crate::exactalg::{ProjPoint, UniPoly};

    const Q: FieldSpec = FieldSpec::Rationals;

    fn aut(s: &str) -> PolyAut {
        PolyAut::parse(s, Q).unwrap()
    }

    fn t2_word(points: &[(i64, i64)]) -> TauWord {
        TauWord::from_factors(points.iter().map(|&(a, b)| {
            TauFactor::new(ProjPoint::from_i64(Q, a, b).unwrap(), UniPoly::from_i64s(Q, &[0, 0, 1])).unwrap()
        }))
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(&aut("(x ; y + x^2)")).unwrap().to_string(), "[[1,0],[t,1]]");
        assert!(psi(&PolyAut::identity(Q)).unwrap().is_identity());
        let phi = aut("(x + y^2 ; y + (x + y^2)^2)");
        assert_eq!(psi(&phi).unwrap().to_string(), "[[1,-t],[t,-t^2 + 1]]");
    }

    #[test]
    fn psi_inv_examples() {
        assert!(psi_inv(&MatPoly2::identity(Q)).unwrap().is_identity());
        let m = |s| parse_matpoly2(s, Q).unwrap();
        assert_eq!(psi_inv(&m("[[1,0],[t,1]]")).unwrap(), aut("(x ; y + x^2)"));
        assert_eq!(
            psi_inv(&m("[[1,t],[t,t^2+1]]")).unwrap(),
            aut("(x - y^2 ; y + (x - y^2)^2)")
        );
        assert_eq!(psi_inv(&m("[[1,t],[t,1]]")), Err(Error::NotInGL1));
    }

    #[test]
    fn degree_law_examples() {
        let law = degree_law_check(&t2_word(&[(0, 1)]), Q).unwrap();
        assert_eq!((law.deg_sigma, law.deg_psi, law.factor_degrees), (2, 1, vec![2]));
        let law = degree_law_check(&t2_word(&[(0, 1), (1, 0)]), Q).unwrap();
        assert_eq!((law.deg_sigma, law.deg_psi), (4, 2));
        let law = degree_law_check(&TauWord::identity(), Q).unwrap();
        assert_eq!((law.deg_sigma, law.deg_psi), (1, 0));
    }
}
