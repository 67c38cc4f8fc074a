//! The local equations that pin down a rank two module from its restriction.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::genweight::{BlockSource, Params};
use crate::linalg::{Matrix, NilpotentFamily, Scalar};
use crate::weyl::Label;

/// Sign of the square root taken in [`recover_t12`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    Plus,
    Minus,
}

/// `C = (H_{ε2-ε1} + 1)² + 4 X_{ε1-ε2} X_{ε2-ε1}` on the weight space at `b`.
pub fn casimir_a<M: BlockSource>(m: &M, b: &[i64]) -> Result<Matrix> {
    let n = m.layout().n();
    if n != 2 {
        return Err(Error::Parameter(format!(
            "the Casimir of a needs rank 2, got {n}"
        )));
    }
    let interior = |what: &str| Error::Interior {
        index: format!("{b:?}"),
        reason: format!("{what} is not available"),
    };
    let up = Label::x_diff(2, 1, 0);
    let down = Label::x_diff(2, 0, 1);
    let h = m
        .block_at(&Label::H(1), b)
        .ok_or_else(|| interior("H[e2-e1]"))?;
    let x_up = m.block_at(&up, b).ok_or_else(|| interior("X[e2-e1]"))?;
    let b_up = [b[0] - 1, b[1] + 1];
    let x_down = m
        .block_at(&down, &b_up)
        .ok_or_else(|| interior("X[e1-e2]"))?;
    Ok(&h.shift_int(1).pow(2) + &(x_down * x_up).scale(&Scalar::from_int(4)))
}

/// `T_1 = (Y2' - Y1 - 1)/2 - a_1` and `T_2 = (Y2' + Y1 - 1)/2 - a_2`, where
/// `Y2'` is the square root of `Y2` with eigenvalue `±(a_1 + a_2 + 1)`.
pub fn recover_t12(
    y1: &Matrix,
    y2: &Matrix,
    params: &Params,
    branch: Branch,
) -> Result<NilpotentFamily> {
    if params.n() != 2 {
        return Err(Error::Parameter("recovery needs rank 2".into()));
    }
    let a = params.a();
    let mut root = &(&a[0] + &a[1]) + &Scalar::one();
    if branch == Branch::Minus {
        root = -root;
    }
    let y2_root = y2.sqrt_single_eigenvalue(&root).map_err(|e| {
        Error::BlockMembership(format!("Casimir is not in the expected block: {e}"))
    })?;
    let half = Scalar::half();
    let t1 = (&y2_root - y1).shift_int(-1).scale(&half).shift(&-&a[0]);
    let t2 = (&y2_root + y1).shift_int(-1).scale(&half).shift(&-&a[1]);
    NilpotentFamily::new(vec![t1, t2]).map_err(|e| {
        Error::BlockMembership(format!(
            "recovered operators are not a nilpotent family: {e}"
        ))
    })
}

/// Solves `(Q - P - 3)² + 4XQ = (Q + P + 3)²` for `X` and checks the
/// solution by substitution.
pub fn solve_raising_extension(p: &Matrix, q: &Matrix) -> Result<Matrix> {
    if !p.is_square() || p.shape() != q.shape() {
        return Err(Error::Dimension(
            "P and Q must be square of equal size".into(),
        ));
    }
    let q_inv = q
        .inverse()
        .map_err(|e| Error::Precondition(format!("Q is not invertible: {e}")))?;
    let lhs_fixed = (q - p).shift_int(-3).pow(2);
    let rhs = (q + p).shift_int(3).pow(2);
    let quarter = Scalar::new(1, 4);
    let x = &(&rhs - &lhs_fixed).scale(&quarter) * &q_inv;
    if &lhs_fixed + &(&x * q).scale(&Scalar::from_int(4)) != rhs {
        return Err(Error::Consistency(
            "raising solution fails substitution".into(),
        ));
    }
    Ok(x)
}

/// The lowering data of one square of weight spaces: `u` from the top left,
/// `x` and `y` on the middle row, `v`, `w` on the top row, and `z = x - u`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoweringSolution {
    pub u: Matrix,
    pub x: Matrix,
    pub y: Matrix,
    pub v: Matrix,
    pub w: Matrix,
    pub z: Matrix,
}

impl LoweringSolution {
    /// `(P-1)(P+1)⁻¹x - (P+1)(P+3)⁻¹u - (x - u + 4)` and
    /// `x - P(P+1)(P+3)⁻¹(P+2)⁻¹u`.
    pub fn residuals(&self, p: &Matrix) -> Result<(Matrix, Matrix)> {
        let inv = |s: i64| {
            p.shift_int(s)
                .inverse()
                .map_err(|e| Error::Precondition(format!("P + {s} is not invertible: {e}")))
        };
        let (inv1, inv2, inv3) = (inv(1)?, inv(2)?, inv(3)?);
        let difference = &(&(&(&p.shift_int(-1) * &inv1) * &self.x)
            - &(&(&p.shift_int(1) * &inv3) * &self.u))
            - &(&self.x - &self.u).shift_int(4);
        let product = &self.x - &(&(&(&(p * &p.shift_int(1)) * &inv3) * &inv2) * &self.u);
        Ok((difference, product))
    }
}

/// Solves the lowering equations for `u` and derives `x, y, v, w`; every
/// output is checked by substitution.
pub fn solve_lowering_extension(p: &Matrix) -> Result<LoweringSolution> {
    if !p.is_square() {
        return Err(Error::Dimension("P must be square".into()));
    }
    let inv = |s: i64| {
        p.shift_int(s)
            .inverse()
            .map_err(|e| Error::Precondition(format!("P + {s} is not invertible: {e}")))
    };
    let (inv1, inv2, inv3) = (inv(1)?, inv(2)?, inv(3)?);
    // x = K u, then y - v = x - u + 4 becomes L u = 4 with
    // L = (P-1)(P+1)⁻¹K - (P+1)(P+3)⁻¹ - K + 1.
    let k = &(&(p * &p.shift_int(1)) * &inv3) * &inv2;
    let l = (&(&(&(&p.shift_int(-1) * &inv1) * &k) - &(&p.shift_int(1) * &inv3)) - &k).shift_int(1);
    let u = l
        .inverse()
        .map_err(|e| Error::Consistency(format!("lowering equation is degenerate: {e}")))?
        .scale(&Scalar::from_int(4));
    let x = &k * &u;
    let y = &(&p.shift_int(-1) * &inv1) * &x;
    let v = &(&p.shift_int(1) * &inv3) * &u;
    let w = x.clone();
    let z = &x - &u;
    let sol = LoweringSolution { u, x, y, v, w, z };
    let (difference, product) = sol.residuals(p)?;
    if !difference.is_zero() || !product.is_zero() {
        return Err(Error::Consistency(
            "lowering solution fails substitution".into(),
        ));
    }
    Ok(sol)
}
