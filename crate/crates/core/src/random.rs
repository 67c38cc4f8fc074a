//! Seeded generators for test data. All randomness in the crate flows
//! through [`seeded_rng`], so runs with equal seeds are identical.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{Matrix, NilpotentFamily, Scalar};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small(rng: &mut impl Rng, bound: i64) -> Scalar {
    Scalar::from_int(rng.gen_range(-bound..=bound))
}

/// Strictly upper triangular with nonzero superdiagonal, hence a single
/// Jordan block.
pub fn random_regular_nilpotent(rng: &mut impl Rng, dim: usize) -> Matrix {
    let mut s = Matrix::zero(dim, dim);
    for r in 0..dim {
        for c in r + 1..dim {
            s[(r, c)] = if c == r + 1 {
                Scalar::from_int([1, 2, -1][rng.gen_range(0..3)])
            } else {
                small(rng, 2)
            };
        }
    }
    s
}

/// `Σ_k c_k S^k` for `k` in `from..dim`, with small random integer `c_k`.
fn random_polynomial_in(rng: &mut impl Rng, s: &Matrix, from: u32) -> Matrix {
    let dim = s.rows();
    let mut acc = Matrix::zero(dim, dim);
    for k in from..dim.max(1) as u32 {
        acc = &acc + &s.pow(k).scale(&small(rng, 2));
    }
    acc
}

/// `n` commuting nilpotent operators, each a polynomial without constant
/// term in one random regular nilpotent seed.
pub fn random_family(rng: &mut impl Rng, n: usize, dim: usize) -> NilpotentFamily {
    let s = random_regular_nilpotent(rng, dim);
    let mats = (0..n).map(|_| random_polynomial_in(rng, &s, 1)).collect();
    NilpotentFamily::new(mats).expect("polynomials in a nilpotent seed commute and are nilpotent")
}

/// A random invertible matrix: a product of unit lower and unit upper
/// triangular factors.
pub fn random_invertible(rng: &mut impl Rng, dim: usize) -> Matrix {
    let mut lower = Matrix::identity(dim);
    let mut upper = Matrix::identity(dim);
    for r in 0..dim {
        for c in 0..r {
            lower[(r, c)] = small(rng, 2);
            upper[(c, r)] = small(rng, 2);
        }
    }
    &lower * &upper
}

/// Two commuting operators, both polynomials in one random integer matrix.
pub fn random_commuting_pair(rng: &mut impl Rng, dim: usize) -> (Matrix, Matrix) {
    let mut s = Matrix::zero(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            s[(r, c)] = small(rng, 2);
        }
    }
    let p = random_polynomial_in(rng, &s, 1).shift(&small(rng, 3));
    let q = random_polynomial_in(rng, &s, 1).shift(&small(rng, 3));
    (p, q)
}
