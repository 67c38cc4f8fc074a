use serde::{Deserialize, Serialize};

use super::reduce::{RowReducer, SparseRow};
use super::{Matrix, Scalar};
use crate::error::{Error, Result};

/// `n` pairwise commuting nilpotent operators on a common space: a finite
/// dimensional module over the power series ring in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NilpotentFamily {
    dim: usize,
    mats: Vec<Matrix>,
}

impl NilpotentFamily {
    pub fn new(mats: Vec<Matrix>) -> Result<Self> {
        let Some(first) = mats.first() else {
            return Err(Error::FamilyInvariant("empty family".into()));
        };
        let dim = first.rows();
        for (i, t) in mats.iter().enumerate() {
            if t.shape() != (dim, dim) {
                return Err(Error::FamilyInvariant(format!(
                    "operator {} has shape {:?}, expected {dim}x{dim}",
                    i + 1,
                    t.shape()
                )));
            }
            if !t.is_nilpotent() {
                return Err(Error::FamilyInvariant(format!(
                    "operator {} is not nilpotent",
                    i + 1
                )));
            }
        }
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                if !mats[i].commutes_with(&mats[j]) {
                    return Err(Error::FamilyInvariant(format!(
                        "operators {} and {} do not commute",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(NilpotentFamily { dim, mats })
    }

    /// The family with every operator zero (the simple module is `dim = 1`).
    pub fn zero(n: usize, dim: usize) -> Self {
        NilpotentFamily {
            dim,
            mats: vec![Matrix::zero(dim, dim); n],
        }
    }

    /// `T_i` is a single 2x2 Jordan block, all other operators vanish.
    pub fn jordan_direction(n: usize, i: usize) -> Self {
        let mut fam = NilpotentFamily::zero(n, 2);
        fam.mats[i] = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        fam
    }

    pub fn n(&self) -> usize {
        self.mats.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    /// `T_i`, zero-indexed.
    pub fn t(&self, i: usize) -> &Matrix {
        &self.mats[i]
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(Matrix::is_zero)
    }

    /// `g T_i g⁻¹` for every operator.
    pub fn conjugate(&self, g: &Matrix) -> Result<Self> {
        let inv = g.inverse()?;
        NilpotentFamily::new(self.mats.iter().map(|t| &(g * t) * &inv).collect())
    }

    /// A basis of the module maps `f: self → other`, i.e. the matrices with
    /// `other.T_i · f = f · self.T_i` for all `i`.
    pub fn intertwiners(&self, other: &NilpotentFamily) -> Result<Vec<Matrix>> {
        if self.n() != other.n() {
            return Err(Error::Parameter(
                "families have different variable counts".into(),
            ));
        }
        let (src, tgt) = (self.dim, other.dim);
        let var = |r: usize, c: usize| r * src + c;
        let mut reducer = RowReducer::new(tgt * src);
        for (s, t) in self.mats.iter().zip(&other.mats) {
            for r in 0..tgt {
                for c in 0..src {
                    let mut row = SparseRow::new();
                    for k in 0..tgt {
                        add(&mut row, var(k, c), &t[(r, k)]);
                    }
                    for k in 0..src {
                        add(&mut row, var(r, k), &-&s[(k, c)]);
                    }
                    reducer.push(row);
                }
            }
        }
        Ok(reducer
            .nullspace()
            .into_iter()
            .map(|v| Matrix::new(tgt, src, v).expect("intertwiner shape"))
            .collect())
    }
}

fn add(row: &mut SparseRow, col: usize, v: &Scalar) {
    if v.is_zero() {
        return;
    }
    let e = row.entry(col).or_insert_with(Scalar::zero);
    *e += v;
    if e.is_zero() {
        row.remove(&col);
    }
}

#[derive(Deserialize)]
struct FamilyDoc {
    mats: Vec<Matrix>,
}

impl<'de> Deserialize<'de> for NilpotentFamily {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let doc = FamilyDoc::deserialize(d)?;
        NilpotentFamily::new(doc.mats).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_families() {
        let j = Matrix::from_ints(&[&[0, 1], &[0, 0]]);
        let jt = j.transpose();
        assert!(matches!(
            NilpotentFamily::new(vec![j.clone(), jt]),
            Err(Error::FamilyInvariant(_))
        ));
        assert!(matches!(
            NilpotentFamily::new(vec![Matrix::identity(2)]),
            Err(Error::FamilyInvariant(_))
        ));
        assert!(NilpotentFamily::new(vec![j.clone(), j]).is_ok());
    }

    #[test]
    fn intertwiner_dimensions() {
        // End of a single Jordan block J2 in one variable: polynomials in J2.
        let v = NilpotentFamily::jordan_direction(1, 0);
        assert_eq!(v.intertwiners(&v).unwrap().len(), 2);
        // Hom(k, J2) for the simple module k: the socle, dimension one.
        let k = NilpotentFamily::zero(1, 1);
        assert_eq!(k.intertwiners(&v).unwrap().len(), 1);
        assert_eq!(v.intertwiners(&k).unwrap().len(), 1);
        // Two different directions in two variables.
        let v1 = NilpotentFamily::jordan_direction(2, 0);
        let v2 = NilpotentFamily::jordan_direction(2, 1);
        assert_eq!(v1.intertwiners(&v2).unwrap().len(), 1);
    }
}
