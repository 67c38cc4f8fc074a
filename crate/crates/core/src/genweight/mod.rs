//! Truncated generalized weight modules: the builders for `N(a)` and `F V`,
//! relation and cuspidality checks, extraction of the nilpotent family,
//! hom spaces, and the self-extension demo.

mod build;
mod checks;
mod ext;
mod extract;
mod hom;
mod layout;
mod module;
mod params;
mod u0;

pub use build::{build_f, build_f_on, build_n, build_n_on, build_n_via_weyl};
pub use checks::{
    check_cuspidal, check_relations, check_weight_spaces, is_weight_module, support_connected,
    weights_injective,
};
pub use ext::{
    extension_report, self_extension_family, CriterionRow, ExtensionCertificate, ExtensionReport,
};
pub use extract::{extract_t, extract_t_as};
pub use hom::{hom_space, iso_check, HomSolution};
pub(crate) use hom::{intertwiner_space, pick_invertible};
pub use layout::{Layout, SupportBox};
pub(crate) use module::check_storage;
pub use module::{BlockDoc, BlockSource, GenModule, ModuleDoc};
pub use params::{weight_of, Params, WeightVector};
pub use u0::{u0_commutes, zero_weight_words, ZeroWord};
