//! Exact construction and verification of cuspidal generalized weight
//! modules over the symplectic Lie algebra `sp_2n`.
//!
//! Everything is computed over the rationals with no rounding. Modules are
//! materialized on a finite box of the even lattice, and identities are only
//! asserted where every block involved stays inside the box.
//!
//! ```
//! use cuspidal_core::genweight::{build_f, check_cuspidal, check_relations, iso_check, Params};
//! use cuspidal_core::random::{random_family, seeded_rng};
//! use cuspidal_core::reconstruct::{reconstruct, PartialModule};
//!
//! let params = Params::default_for(2)?;
//! let family = random_family(&mut seeded_rng(7), 2, 3);
//! let module = build_f(&family, &params, 3)?;
//! assert!(check_relations(&module).passed());
//! assert!(check_cuspidal(&module).passed());
//!
//! let rebuilt = reconstruct(&PartialModule::strip(&module)?)?;
//! assert!(iso_check(&rebuilt, &module)?.is_some());
//! # Ok::<(), cuspidal_core::Error>(())
//! ```

pub mod error;
pub mod genweight;
pub mod linalg;
pub mod random;
pub mod reconstruct;
pub mod report;
pub mod sl2;
pub mod weyl;

pub use error::{Error, Result};
pub use genweight::{BlockSource, GenModule, HomSolution, Layout, Params, SupportBox};
pub use linalg::{Matrix, NilpotentFamily, Poly, Scalar};
pub use report::{Report, Violation};
pub use weyl::{Label, SpBasis, StructureConstants, WeylElement};
