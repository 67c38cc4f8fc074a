use std::collections::BTreeMap;

use super::WeylElement;
use crate::error::{Error, Result};
use crate::linalg::Scalar;

/// Applies `w` to the formal monomial `x^{a+b}`. Each `x_i` raises `b_i` by
/// one; each `∂_i` multiplies by the current exponent `a_i + b_i` and lowers
/// `b_i` by one. Returns the resulting combination of lattice points.
pub fn apply_to_monomial(
    w: &WeylElement,
    a: &[Scalar],
    b: &[i64],
) -> Result<Vec<(Vec<i64>, Scalar)>> {
    let n = w.n();
    if a.len() != n || b.len() != n {
        return Err(Error::Dimension(format!(
            "parameter and lattice point must have length {n}"
        )));
    }
    if let Some(ai) = a.iter().find(|ai| ai.is_integer()) {
        return Err(Error::Parameter(format!(
            "integral exponent parameter {ai} would annihilate monomials"
        )));
    }
    let mut out: BTreeMap<Vec<i64>, Scalar> = BTreeMap::new();
    for ((x, d), c) in w.terms() {
        let mut coeff = c.clone();
        let mut point = b.to_vec();
        for i in 0..n {
            let exponent = &a[i] + &Scalar::from_int(b[i]);
            for k in 0..d[i] {
                coeff *= &(&exponent - &Scalar::from_int(k as i64));
            }
            point[i] += x[i] as i64 - d[i] as i64;
        }
        let slot = out.entry(point).or_insert_with(Scalar::zero);
        *slot += &coeff;
    }
    Ok(out.into_iter().filter(|(_, c)| !c.is_zero()).collect())
}
