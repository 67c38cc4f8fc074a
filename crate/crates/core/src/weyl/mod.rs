//! Weyl algebra arithmetic and the differential-operator realization of
//! `sp_2n`, which is the ground truth for every relation check.

mod action;
mod basis;
mod element;
mod structure;

pub use action::apply_to_monomial;
pub use basis::{Label, RootKind, SpBasis};
pub use element::{WeylElement, WeylMonomial};
pub use structure::{Coeffs, IdentityFailure, StructureConstants};
