//! Exact combinatorial irregular Hodge numbers for Clarke mirror pairs of
//! toric Landau–Ginzburg models.
//!
//! Everything in this crate is computed over arbitrary-precision integers and
//! rationals. The crate is `no_std` and only needs `alloc`.
//!
//! The layers, bottom to top:
//!
//! - [`linalg`]: Smith/Hermite normal forms, ranks, kernels, wedge powers,
//!   lattice volumes and Jordan profiles.
//! - [`polytope`]: exact facet enumeration, hull triangulation and volumes.
//! - [`lp`]: a small exact simplex solver used for feasibility questions.
//! - [`fan`]: stacky fans, validation, support functions and the convexity
//!   and regularity predicates.
//! - [`boxes`]: box elements, ages and face projections.
//! - [`poset`]: finite posets, graded sheaves and their cohomology.
//! - [`duality`]: orthogonal pair posets, the sheaves Ξ and Ξ̌, Hodge tables
//!   and the duality check.
//! - [`tropical`]: regular subdivisions, the tropical cell poset and the
//!   tropical Jacobian sheaves.
//! - [`constructions`]: weak Fano, BHK, nef partition (Cayley) and stacky
//!   hypersurface recipes.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod boxes;
pub mod constructions;
pub mod duality;
pub mod fan;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod poset;
pub mod table;
pub mod tropical;

mod assemble;

pub use linalg::{Int, Rat};
pub use table::{Bidegree, HodgeTable};
