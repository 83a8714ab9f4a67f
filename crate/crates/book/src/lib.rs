//! The guide in `book/` rendered as doc comments, so that `cargo test` runs
//! every listing against the current library.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/exact-algebra.md")]
pub mod exact_algebra {}
#[doc = include_str!("../../../book/src/automorphisms.md")]
pub mod automorphisms {}
#[doc = include_str!("../../../book/src/amalgams.md")]
pub mod amalgams {}
#[doc = include_str!("../../../book/src/free-factors.md")]
pub mod free_factors {}
#[doc = include_str!("../../../book/src/matrices.md")]
pub mod matrices {}
#[doc = include_str!("../../../book/src/linearization.md")]
pub mod linearization {}
#[doc = include_str!("../../../book/src/witnesses.md")]
pub mod witnesses {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
