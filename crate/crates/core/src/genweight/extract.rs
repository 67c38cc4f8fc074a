use super::{BlockSource, Params};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, NilpotentFamily, Scalar};
use crate::weyl::Label;

/// Recovers the nilpotent family from the Cartan action on the weight space
/// at the origin: `T_1 = Y_1 - (2a_1 + 1)/2` and
/// `T_k = Y_k + T_{k-1} - (a_k - a_{k-1})`.
pub fn extract_t<M: BlockSource>(m: &M) -> Result<NilpotentFamily> {
    extract_t_as(m, m.params())
}

/// As [`extract_t`], reading the blocks against the given parameters.
pub fn extract_t_as<M: BlockSource>(m: &M, params: &Params) -> Result<NilpotentFamily> {
    let n = params.n();
    let origin = vec![0; n];
    let y = |k: usize| -> Result<&Matrix> {
        m.block_at(&Label::H(k), &origin)
            .ok_or_else(|| Error::Consistency(format!("no Cartan block H({k}) at the origin")))
    };
    let a = params.a();
    let mut mats = Vec::with_capacity(n);
    let shift0 = -(&a[0] + &Scalar::half());
    mats.push(y(0)?.shift(&shift0));
    for k in 1..n {
        let t = (y(k)? + &mats[k - 1]).shift(&(&a[k - 1] - &a[k]));
        mats.push(t);
    }
    NilpotentFamily::new(mats).map_err(|e| {
        Error::Consistency(format!(
            "extracted operators do not form a nilpotent family: {e}"
        ))
    })
}
