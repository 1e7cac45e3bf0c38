//! Finite-dimensional Hopf algebras given by structure constants, their
//! actions on presented algebras, and invariant theory of those actions.

mod action;
mod algebra;
pub mod invariants;

pub use action::HopfAction;
pub use algebra::{pair, Character, HopfAlgebra, HopfElement, Tensor2};
