//! Exact construction and verification of finite-dimensional quasi-Hopf
//! algebras over cyclotomic fields.

pub mod acceptance;
pub mod algebra;
pub mod classify;
pub mod cohomology;
pub mod cyclo;
pub mod error;
pub mod families;
pub mod group;
mod par;
pub mod qhopf;
pub mod serial;
pub mod twist;

pub use algebra::{AlgElement, CheckOutcome, FinAlgebra, LinMap};
pub use cyclo::CycloNum;
pub use error::{Error, Result};
pub use group::AbelianGroup;
pub use qhopf::{GradedQuasiHopf, QuasiHopf, VerifyReport};
