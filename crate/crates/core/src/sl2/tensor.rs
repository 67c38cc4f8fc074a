use super::Sl2Module;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};

/// The simple `sl_2`-module of dimension `m` in the basis `v_0, ..., v_{m-1}`
/// with `h v_k = (m-1-2k) v_k`, `f v_k = v_{k+1}`, `e v_k = k(m-k) v_{k-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSimple {
    m: usize,
    e: Matrix,
    f: Matrix,
    h: Matrix,
}

impl FiniteSimple {
    pub fn new(m: usize) -> Result<FiniteSimple> {
        if !(2..=3).contains(&m) {
            return Err(Error::Parameter(format!(
                "only dimensions 2 and 3 are supported, got {m}"
            )));
        }
        let mut e = Matrix::zero(m, m);
        let mut f = Matrix::zero(m, m);
        let mut h = Matrix::zero(m, m);
        for k in 0..m {
            h[(k, k)] = Scalar::from_int(m as i64 - 1 - 2 * k as i64);
            if k + 1 < m {
                f[(k + 1, k)] = Scalar::one();
            }
            if k > 0 {
                e[(k - 1, k)] = Scalar::from_int((k * (m - k)) as i64);
            }
        }
        Ok(FiniteSimple { m, e, f, h })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn e(&self) -> &Matrix {
        &self.e
    }

    pub fn f(&self) -> &Matrix {
        &self.f
    }

    pub fn h(&self) -> &Matrix {
        &self.h
    }

    /// The coefficient of `v_{k-1}` in `e v_k`.
    fn e_coeff(&self, k: usize) -> Scalar {
        self.e[(k - 1, k)].clone()
    }

    fn h_value(&self, k: usize) -> i64 {
        self.m as i64 - 1 - 2 * k as i64
    }
}

/// `S ⊗ M` regrouped by `h`-eigenvalue: the block at `j` is
/// `W^(j) = ⊕_k v_k ⊗ M^(j+k)`, on which `h` acts with a single shift of
/// `h_M` at `j`.
pub fn tensor_finite(m: &Sl2Module, s: &FiniteSimple) -> Result<Sl2Module> {
    let (lo, hi) = m.window();
    let size = s.m();
    let hi_t = hi - (size as i64 - 1);
    if hi_t < lo {
        return Err(Error::Parameter(format!(
            "window {:?} is too small for a tensor with dimension {size}",
            m.window()
        )));
    }
    let dim = |j: i64| m.dim(j);
    let grid = |rows: i64, cols: i64, entry: &dyn Fn(usize, usize) -> Option<Matrix>| -> Matrix {
        let blocks: Vec<Vec<Matrix>> = (0..size)
            .map(|r| {
                (0..size)
                    .map(|c| {
                        entry(r, c).unwrap_or_else(|| {
                            Matrix::zero(dim(rows + r as i64), dim(cols + c as i64))
                        })
                    })
                    .collect()
            })
            .collect();
        Matrix::from_blocks(&blocks).expect("consistent block shapes")
    };
    Sl2Module::from_fn(
        lo,
        hi_t,
        |j| {
            grid(j + 1, j, &|r, c| {
                let src = j + c as i64;
                if r == c {
                    m.e(src).cloned()
                } else if r + 1 == c {
                    Some(Matrix::identity(dim(src)).scale(&s.e_coeff(c)))
                } else {
                    None
                }
            })
        },
        |j| {
            grid(j - 1, j, &|r, c| {
                let src = j + c as i64;
                if r == c {
                    m.f(src).cloned()
                } else if r == c + 1 {
                    Some(Matrix::identity(dim(src)))
                } else {
                    None
                }
            })
        },
        |j| {
            grid(j, j, &|r, c| {
                let src = j + c as i64;
                (r == c).then(|| m.h(src).expect("in window").shift_int(s.h_value(c)))
            })
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::{build_vbar, CommutingPair};

    #[test]
    fn finite_simples_are_modules() {
        for m in 2..=3 {
            let s = FiniteSimple::new(m).unwrap();
            assert_eq!(&(s.e() * s.f()) - &(s.f() * s.e()), s.h().clone());
        }
        assert!(FiniteSimple::new(4).is_err());
    }

    #[test]
    fn displayed_blocks_for_dimension_two() {
        let v = build_vbar(&CommutingPair::scalars(0, 0), 3).unwrap();
        let t = tensor_finite(&v, &FiniteSimple::new(2).unwrap()).unwrap();
        assert_eq!(t.e(0).unwrap(), &Matrix::from_ints(&[&[0, 1], &[0, -1]]));
        assert_eq!(t.f(0).unwrap(), &Matrix::from_ints(&[&[0, 0], &[1, 1]]));
        assert_eq!(t.f(1).unwrap(), &Matrix::from_ints(&[&[1, 0], &[1, 2]]));
        assert!(t.check_relations().passed());
    }
}
