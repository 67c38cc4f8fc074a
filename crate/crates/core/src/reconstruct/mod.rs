//! Rank two reconstruction: recovering the nilpotent family from the
//! Casimir of the subalgebra generated by `X_{±(ε2-ε1)}`, and rebuilding the
//! whole module from that subalgebra's action plus `X_{2ε1}`.

mod partial;
mod rebuild;
mod solve;

pub use partial::PartialModule;
pub use rebuild::{
    reconstruct, reconstruct_with, LayerOrder, LoweringStep, RaisingStep, Reconstruction,
};
pub use solve::{
    casimir_a, recover_t12, solve_lowering_extension, solve_raising_extension, Branch,
    LoweringSolution,
};
