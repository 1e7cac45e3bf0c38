//! Exact computation of discriminants, traces and Frobenius data for graded
//! algebras that are free of finite rank over a subalgebra, with Hopf
//! actions, smash products and reflection groups.
//!
//! Everything is generic over an exact coefficient field ([`Scalar`]); the
//! aliases below fix it to `ℚ` or to cyclotomic numbers.

pub mod bundle;
pub mod check;
pub mod commpoly;
pub mod cyclotomic;
pub mod error;
pub mod graded;
pub mod hopf;
pub mod instances;
pub mod linalg;
pub mod ncpoly;
pub mod parse;
pub mod reflection;
pub mod report;
pub mod scalar;
pub mod smash;

pub use commpoly::CommPoly;
pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use ncpoly::{Algebra, NcPoly, Word};
pub use scalar::{Rational, Scalar};

pub type QAlgebra = Algebra<Rational>;
pub type QPoly = NcPoly<Rational>;
pub type QCommPoly = CommPoly<Rational>;
pub type QInstance = instances::Instance<Rational>;

pub type CycAlgebra = Algebra<Cyclotomic>;
pub type CycPoly = NcPoly<Cyclotomic>;
pub type CycCommPoly = CommPoly<Cyclotomic>;
pub type CycInstance = instances::Instance<Cyclotomic>;
