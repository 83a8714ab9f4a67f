//! Exact computations with polynomial automorphisms of the affine plane
//! over ℚ and 𝔽_p.

pub mod amalgam;
pub mod error;
pub mod exactalg;
pub mod freefactor;
pub mod linmap;
pub mod matpoly;
pub mod planeaut;
pub mod witness;

pub use error::{Error, Result};
