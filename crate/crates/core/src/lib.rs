//! Exact Weyl-group, braid-group and Hecke-algebra machinery for checking the
//! decategorified form of relative Serre duality for parabolic induction
//! between Hecke categories: the right adjoint of induction agrees with the
//! left adjoint twisted by the relative full twist.

pub mod coxeter;
pub mod garside;
pub mod hecke;
pub mod laurent;
pub mod parabolic;
pub mod report;

pub use coxeter::{CoxeterError, CoxeterSystem, ElemId, ElementTable, GenSet, ParabolicSubset, WeylElement};
pub use hecke::{Coefficients, CostandardExpansion, HeckeAlgebra, HeckeElt, HeckeError};
pub use laurent::LaurentPoly;
pub use parabolic::{ParabolicContext, ParabolicError};
pub use report::{CheckResult, Status};
