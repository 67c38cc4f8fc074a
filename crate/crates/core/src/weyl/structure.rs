//! Structure constants of `sp_2n` in the fixed basis, computed from the
//! Weyl algebra realization rather than entered by hand.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{SpBasis, WeylElement, WeylMonomial};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// Sparse coefficient vector over the basis labels.
pub type Coeffs = Vec<(usize, Scalar)>;

#[derive(Debug, Clone)]
pub struct StructureConstants {
    dim: usize,
    table: Vec<Vec<Coeffs>>,
}

/// A failed identity among structure constants, naming the offending labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityFailure {
    pub labels: Vec<usize>,
}

impl StructureConstants {
    /// Expresses every commutator of basis images in the span of the basis
    /// images, by one exact linear solve per ordered pair.
    pub fn compute(basis: &SpBasis) -> Result<StructureConstants> {
        let dim = basis.len();
        let mut monomials: BTreeMap<WeylMonomial, usize> = BTreeMap::new();
        for i in 0..dim {
            for key in basis.image(i).terms().keys() {
                let next = monomials.len();
                monomials.entry(key.clone()).or_insert(next);
            }
        }
        // Column k holds the coefficients of image k over the monomials.
        let mut system = Matrix::zero(monomials.len(), dim);
        for k in 0..dim {
            for (key, c) in basis.image(k).terms() {
                system[(monomials[key], k)] = c.clone();
            }
        }
        let express = |w: &WeylElement| -> Option<Coeffs> {
            let mut rhs = vec![Scalar::zero(); monomials.len()];
            for (key, c) in w.terms() {
                rhs[*monomials.get(key)?] = c.clone();
            }
            let x = system.solve(&rhs).ok()??;
            Some(
                x.into_iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .collect(),
            )
        };

        let rows: Vec<Result<Vec<Coeffs>>> = (0..dim)
            .into_par_iter()
            .map(|u| {
                (0..dim)
                    .map(|v| {
                        let w = basis.image(u).commutator(basis.image(v))?;
                        express(&w).ok_or_else(|| Error::RealizationInconsistency {
                            u: basis.name(u),
                            v: basis.name(v),
                        })
                    })
                    .collect()
            })
            .collect();
        let table = rows.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(StructureConstants { dim, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[u, v]` as a sparse combination of basis labels.
    pub fn bracket(&self, u: usize, v: usize) -> &[(usize, Scalar)] {
        &self.table[u][v]
    }

    pub fn bracket_dense(&self, u: usize, v: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (k, c) in &self.table[u][v] {
            out[*k] = c.clone();
        }
        out
    }

    /// Bracket of two arbitrary elements given as dense coefficient vectors.
    pub fn bracket_elements(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim];
        for (u, xu) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (v, yv) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let s = xu * yv;
                for (k, c) in &self.table[u][v] {
                    out[*k] += &(&s * c);
                }
            }
        }
        out
    }

    pub fn antisymmetry_failures(&self) -> Vec<IdentityFailure> {
        let mut out = Vec::new();
        for u in 0..self.dim {
            for v in u..self.dim {
                let a = self.bracket_dense(u, v);
                let b = self.bracket_dense(v, u);
                if a.iter().zip(&b).any(|(x, y)| !(x + y).is_zero()) {
                    out.push(IdentityFailure { labels: vec![u, v] });
                }
            }
        }
        out
    }

    /// Exhaustive Jacobi check over all label triples.
    pub fn jacobi_failures(&self) -> Vec<IdentityFailure> {
        let unit = |i: usize| {
            let mut v = vec![Scalar::zero(); self.dim];
            v[i] = Scalar::one();
            v
        };
        let triples: Vec<(usize, usize, usize)> = (0..self.dim)
            .flat_map(|u| (0..self.dim).flat_map(move |v| (0..self.dim).map(move |w| (u, v, w))))
            .collect();
        triples
            .into_par_iter()
            .filter_map(|(u, v, w)| {
                let (eu, ev, ew) = (unit(u), unit(v), unit(w));
                let t1 = self.bracket_elements(&eu, &self.bracket_dense(v, w));
                let t2 = self.bracket_elements(&ev, &self.bracket_dense(w, u));
                let t3 = self.bracket_elements(&ew, &self.bracket_dense(u, v));
                let ok = (0..self.dim).all(|k| (&(&t1[k] + &t2[k]) + &t3[k]).is_zero());
                (!ok).then(|| IdentityFailure {
                    labels: vec![u, v, w],
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::Label;

    #[test]
    fn named_brackets() {
        let b = SpBasis::new(2).unwrap();
        let sc = StructureConstants::compute(&b).unwrap();
        let xm = b.idx(&Label::x_neg_sum(2, 0, 0));
        let xp = b.idx(&Label::x_sum(2, 0, 0));
        let h = b.idx(&Label::H(0));
        // ∂1² x1² - x1² ∂1² = 4 x1∂1 + 2 = 4 (x1∂1 + 1/2)
        assert_eq!(sc.bracket(xm, xp), &[(h, Scalar::from_int(4))]);
        assert_eq!(sc.bracket(h, xp), &[(xp, Scalar::from_int(2))]);
        let x12 = b.idx(&Label::x_diff(2, 0, 1));
        assert!(sc.bracket(x12, x12).is_empty());
    }

    #[test]
    fn brackets_respect_grading() {
        let b = SpBasis::new(3).unwrap();
        let sc = StructureConstants::compute(&b).unwrap();
        for u in 0..b.len() {
            for v in 0..b.len() {
                let total: Vec<i64> = b
                    .weight(u)
                    .iter()
                    .zip(b.weight(v))
                    .map(|(x, y)| x + y)
                    .collect();
                for (k, _) in sc.bracket(u, v) {
                    assert_eq!(b.weight(*k), total);
                }
            }
        }
    }
}
