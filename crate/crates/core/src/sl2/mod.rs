//! `sl_2`-modules built from two commuting operators, their Casimir, and
//! tensor products with the two and three dimensional simple modules.

mod checks;
mod module;
mod tensor;

pub use checks::{check_annihilator, check_double_tensor, g_charpoly, g_charpoly_check, g_matrix};
pub use module::{build_vbar, casimir_action, CommutingPair, Sl2Module};
pub use tensor::{tensor_finite, FiniteSimple};
