//! Self-extensions of `N(a)` and the weight-module criterion.

use std::sync::Arc;

use serde::Serialize;

use super::{
    build_f_on, check_relations, is_weight_module, iso_check, BlockSource, GenModule, Layout,
    Params,
};
use crate::error::Result;
use crate::linalg::NilpotentFamily;

/// `F(V_i)` for `i = 1..n`, where `V_i` is two dimensional with `T_i` a
/// Jordan block and every other operator zero.
pub fn self_extension_family(params: &Params, radius: i64) -> Result<Vec<GenModule>> {
    let layout = Layout::new(params.n(), radius)?;
    (0..params.n())
        .map(|i| {
            build_f_on(
                &NilpotentFamily::jordan_direction(params.n(), i),
                params,
                &layout,
            )
        })
        .collect()
}

/// Evidence that one self-extension is a genuine, non-split, non-weight
/// module.
#[derive(Debug, Clone, Serialize)]
pub struct ExtensionCertificate {
    pub index: usize,
    pub weight: bool,
    /// Cartan labels acting by a non-scalar matrix at the origin.
    pub jordan_labels: Vec<String>,
    pub relation_violations: usize,
    /// Whether the module is isomorphic to `N(a) ⊕ N(a)`.
    pub split: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionRow {
    pub family: String,
    pub all_zero: bool,
    pub weight: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionReport {
    pub n: usize,
    pub count: usize,
    pub certificates: Vec<ExtensionCertificate>,
    /// Pairs `(i, j)` found isomorphic; empty when the extensions are
    /// pairwise distinct.
    pub isomorphic_pairs: Vec<(usize, usize)>,
    pub criterion: Vec<CriterionRow>,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.count == self.n
            && self.isomorphic_pairs.is_empty()
            && self.certificates.iter().all(|c| {
                !c.weight && !c.jordan_labels.is_empty() && c.relation_violations == 0 && !c.split
            })
            && self.criterion.iter().all(|r| r.all_zero == r.weight)
    }
}

/// Builds the self-extensions and certifies them; `extra` families are added
/// to the weight-criterion table alongside the zero families and the
/// extensions themselves.
pub fn extension_report(
    params: &Params,
    radius: i64,
    extra: &[NilpotentFamily],
) -> Result<ExtensionReport> {
    let layout: Arc<Layout> = Layout::new(params.n(), radius)?;
    let n = params.n();
    let modules: Vec<GenModule> = (0..n)
        .map(|i| build_f_on(&NilpotentFamily::jordan_direction(n, i), params, &layout))
        .collect::<Result<_>>()?;
    let split_model = build_f_on(&NilpotentFamily::zero(n, 2), params, &layout)?;
    let origin = layout.support().origin();
    let basis = layout.basis();
    let mut certificates = Vec::new();
    for (i, m) in modules.iter().enumerate() {
        let jordan_labels = basis
            .cartan_indices()
            .into_iter()
            .filter(|&h| m.block(h, origin).is_some_and(|b| b.as_scalar().is_none()))
            .map(|h| basis.name(h))
            .collect();
        certificates.push(ExtensionCertificate {
            index: i + 1,
            weight: is_weight_module(m),
            jordan_labels,
            relation_violations: check_relations(m).violations.len(),
            split: iso_check(m, &split_model)?.is_some(),
        });
    }
    let mut isomorphic_pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if iso_check(&modules[i], &modules[j])?.is_some() {
                isomorphic_pairs.push((i + 1, j + 1));
            }
        }
    }
    let mut criterion = Vec::new();
    let mut row = |name: String, fam: &NilpotentFamily| -> Result<()> {
        let m = build_f_on(fam, params, &layout)?;
        criterion.push(CriterionRow {
            family: name,
            all_zero: fam.is_zero(),
            weight: is_weight_module(&m),
        });
        Ok(())
    };
    for dim in 1..=2 {
        row(format!("zero, dim {dim}"), &NilpotentFamily::zero(n, dim))?;
    }
    for i in 0..n {
        row(
            format!("jordan T{}", i + 1),
            &NilpotentFamily::jordan_direction(n, i),
        )?;
    }
    for (k, fam) in extra.iter().enumerate() {
        row(format!("extra {}, dim {}", k + 1, fam.dim()), fam)?;
    }
    Ok(ExtensionReport {
        n,
        count: modules.len(),
        certificates,
        isomorphic_pairs,
        criterion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_extensions_for_rank_two() {
        let p = Params::default_for(2).unwrap();
        let r = extension_report(&p, 2, &[]).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.certificates[0].jordan_labels, vec!["H[2e1]", "H[e2-e1]"]);
        assert_eq!(r.certificates[1].jordan_labels, vec!["H[e2-e1]"]);
    }
}
