//! Weight-preserving module maps between truncated modules.

use rand::Rng;
use serde::Serialize;

use super::{BlockSource, GenModule};
use crate::error::{Error, Result};
use crate::linalg::reduce::axpy_entry;
use crate::linalg::{Matrix, RowReducer, Scalar, SparseRow};
use crate::random::seeded_rng;

/// A family of linear maps `φ_b: M1^b → M2^b`, one per box point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HomSolution {
    pub maps: Vec<Matrix>,
}

impl HomSolution {
    /// The diagonal extension of a single linear map to every point.
    pub fn diagonal(f: &Matrix, npoints: usize) -> HomSolution {
        HomSolution {
            maps: vec![f.clone(); npoints],
        }
    }

    pub fn compose(&self, other: &HomSolution) -> HomSolution {
        HomSolution {
            maps: self
                .maps
                .iter()
                .zip(&other.maps)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.maps.iter().all(|m| m.is_square() && m.is_invertible())
    }

    /// Checks `M2(X, b) φ_b = φ_{b + wt X} M1(X, b)` for every block.
    pub fn intertwines(&self, m1: &GenModule, m2: &GenModule) -> bool {
        let layout = m1.layout();
        (0..layout.basis().len()).all(|l| {
            (0..layout.support().len()).all(|p| match (m1.block(l, p), m2.block(l, p)) {
                (Some(x1), Some(x2)) => {
                    let q = layout.target(l, p).expect("block has target");
                    x2 * &self.maps[p] == &self.maps[q] * x1
                }
                _ => true,
            })
        })
    }

    fn combination(basis: &[HomSolution], coeffs: &[Scalar]) -> HomSolution {
        let mut maps: Vec<Matrix> = basis[0]
            .maps
            .iter()
            .map(|m| Matrix::zero(m.rows(), m.cols()))
            .collect();
        for (h, c) in basis.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (acc, m) in maps.iter_mut().zip(&h.maps) {
                *acc = &*acc + &m.scale(c);
            }
        }
        HomSolution { maps }
    }
}

fn check_compatible(m1: &GenModule, m2: &GenModule) -> Result<()> {
    if m1.params() != m2.params() {
        return Err(Error::Parameter("modules have different parameters".into()));
    }
    if !m1.layout().same_shape(m2.layout()) {
        return Err(Error::Parameter("modules live on different boxes".into()));
    }
    Ok(())
}

/// A basis of the weight-preserving maps `M1 → M2` commuting with every
/// block, found as the nullspace of one sparse linear system.
pub fn hom_space(m1: &GenModule, m2: &GenModule) -> Result<Vec<HomSolution>> {
    check_compatible(m1, m2)?;
    let labels: Vec<usize> = (0..m1.layout().basis().len()).collect();
    let points: Vec<usize> = (0..m1.layout().support().len()).collect();
    Ok(intertwiner_space(m1, m2, &labels, &points)
        .into_iter()
        .map(|maps| HomSolution { maps })
        .collect())
}

/// Families `φ_p: M1^p → M2^p` over `points` with
/// `M2(l, p) φ_p = φ_q M1(l, p)` for the given labels whenever both `p` and
/// its target `q` are among `points`.
pub(crate) fn intertwiner_space<A: BlockSource, B: BlockSource>(
    m1: &A,
    m2: &B,
    labels: &[usize],
    points: &[usize],
) -> Vec<Vec<Matrix>> {
    let layout = m1.layout();
    let mut slot = vec![None; layout.support().len()];
    let mut offsets = Vec::with_capacity(points.len() + 1);
    offsets.push(0);
    for (k, &p) in points.iter().enumerate() {
        slot[p] = Some(k);
        offsets.push(offsets[k] + m2.dim_at(p) * m1.dim_at(p));
    }
    let var = |p: usize, r: usize, c: usize| {
        offsets[slot[p].expect("listed point")] + r * m1.dim_at(p) + c
    };
    let mut reducer = RowReducer::new(offsets[points.len()]);
    for &l in labels {
        for &p in points {
            let (Some(x1), Some(x2)) = (m1.block(l, p), m2.block(l, p)) else {
                continue;
            };
            let q = layout.target(l, p).expect("block has target");
            if slot[q].is_none() {
                continue;
            }
            for r in 0..x2.rows() {
                for c in 0..x1.cols() {
                    let mut row = SparseRow::new();
                    for k in 0..x2.cols() {
                        axpy_entry(&mut row, var(p, k, c), &x2[(r, k)]);
                    }
                    for k in 0..x1.rows() {
                        axpy_entry(&mut row, var(q, r, k), &-&x1[(k, c)]);
                    }
                    if !row.is_empty() {
                        reducer.push(row);
                    }
                }
            }
        }
    }
    reducer
        .nullspace()
        .into_iter()
        .map(|v| {
            points
                .iter()
                .enumerate()
                .map(|(k, &p)| {
                    Matrix::new(
                        m2.dim_at(p),
                        m1.dim_at(p),
                        v[offsets[k]..offsets[k + 1]].to_vec(),
                    )
                    .expect("block shape")
                })
                .collect()
        })
        .collect()
}

const RANDOM_TRIES: usize = 24;

/// A member of the span of `basis` invertible at every point: first the
/// basis vectors, then seeded random integer combinations.
pub(crate) fn pick_invertible(basis: &[HomSolution]) -> Option<HomSolution> {
    if basis.is_empty() {
        return None;
    }
    if let Some(h) = basis.iter().find(|h| h.is_invertible()) {
        return Some(h.clone());
    }
    let mut rng = seeded_rng(0x150);
    for _ in 0..RANDOM_TRIES {
        let coeffs: Vec<Scalar> = (0..basis.len())
            .map(|_| Scalar::from_int(rng.gen_range(-5..=5)))
            .collect();
        let h = HomSolution::combination(basis, &coeffs);
        if h.is_invertible() {
            return Some(h);
        }
    }
    None
}

/// Searches the hom space for a member invertible at every point.
pub fn iso_check(m1: &GenModule, m2: &GenModule) -> Result<Option<HomSolution>> {
    check_compatible(m1, m2)?;
    if m1.dims() != m2.dims() {
        return Ok(None);
    }
    Ok(pick_invertible(&hom_space(m1, m2)?))
}
