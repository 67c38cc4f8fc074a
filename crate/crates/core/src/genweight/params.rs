use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Scalar;

/// The parameter vector `a` fixing the block: `a_i + a_j` is non-integral
/// for all `i, j` (so in particular every `a_i` and `2a_i` is non-integral).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Params {
    a: Vec<Scalar>,
}

const DEFAULT_DENOMINATORS: [i64; 12] = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

impl Params {
    pub fn new(a: Vec<Scalar>) -> Result<Params> {
        if a.len() < 2 {
            return Err(Error::Parameter(format!(
                "rank must be at least 2, got {}",
                a.len()
            )));
        }
        if let Some(ai) = a.iter().find(|ai| ai.is_integer()) {
            return Err(Error::Parameter(format!("a_i = {ai} is an integer")));
        }
        for i in 0..a.len() {
            for j in i..a.len() {
                if (&a[i] + &a[j]).is_integer() {
                    return Err(Error::Parameter(format!(
                        "a_{} + a_{} = {} is an integer",
                        i + 1,
                        j + 1,
                        &a[i] + &a[j]
                    )));
                }
            }
        }
        Ok(Params { a })
    }

    /// `a = (1/3, 1/5, 1/7, ...)`.
    pub fn default_for(n: usize) -> Result<Params> {
        if n > DEFAULT_DENOMINATORS.len() {
            return Err(Error::Parameter(format!(
                "no default parameters for rank {n}"
            )));
        }
        Params::new(
            DEFAULT_DENOMINATORS[..n]
                .iter()
                .map(|&d| Scalar::new(1, d))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Scalar] {
        &self.a
    }

    /// `a_i + b_i` (zero-indexed).
    pub fn exponent(&self, i: usize, b: &[i64]) -> Scalar {
        &self.a[i] + &Scalar::from_int(b[i])
    }
}

/// The values of a weight on the Cartan basis `H(0), ..., H(n-1)`.
pub type WeightVector = Vec<Scalar>;

/// The weight of the monomial `x^b`: `H_{2ε1} ↦ (2a_1 + 2b_1 + 1)/2` and
/// `H_{ε_{i+1}-ε_i} ↦ a_{i+1} + b_{i+1} - a_i - b_i`.
pub fn weight_of(params: &Params, b: &[i64]) -> WeightVector {
    let mut w = Vec::with_capacity(params.n());
    w.push(&params.exponent(0, b) + &Scalar::half());
    for i in 1..params.n() {
        w.push(&params.exponent(i, b) - &params.exponent(i - 1, b));
    }
    w
}
