//! Exact arithmetic: the fields ℚ and 𝔽_p, polynomials in `t` and in
//! `x, y`, small matrices, and the projective line.

pub mod bipoly;
pub mod field;
pub mod mat;
pub mod parse;
pub mod proj;
pub mod unipoly;

pub use bipoly::BiPoly;
pub use field::{FieldSpec, Scalar};
pub use mat::{Mat2, MatPoly2, PolyMatrix};
pub use proj::{e_delta, ProjPoint};
pub use unipoly::UniPoly;
