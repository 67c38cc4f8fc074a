//! Normal-ordered elements of the Weyl algebra `W_n`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Scalar;

/// Exponent pair `(α, β)` standing for the normal-ordered monomial `x^α ∂^β`.
pub type WeylMonomial = (Vec<u32>, Vec<u32>);

/// A differential operator with polynomial coefficients, stored in normal
/// order (all `x` to the left of all `∂`). Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylElement {
    n: usize,
    terms: BTreeMap<WeylMonomial, Scalar>,
}

impl WeylElement {
    pub fn zero(n: usize) -> Self {
        WeylElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        WeylElement::monomial(n, vec![0; n], vec![0; n], c)
    }

    pub fn one(n: usize) -> Self {
        WeylElement::constant(n, Scalar::one())
    }

    pub fn monomial(n: usize, x: Vec<u32>, d: Vec<u32>, c: Scalar) -> Self {
        assert!(x.len() == n && d.len() == n, "exponent length must equal n");
        let mut e = WeylElement::zero(n);
        e.add_term(x, d, c);
        e
    }

    /// `x_i` (zero-indexed).
    pub fn x(n: usize, i: usize) -> Self {
        let mut x = vec![0; n];
        x[i] = 1;
        WeylElement::monomial(n, x, vec![0; n], Scalar::one())
    }

    /// `∂_i` (zero-indexed).
    pub fn d(n: usize, i: usize) -> Self {
        let mut d = vec![0; n];
        d[i] = 1;
        WeylElement::monomial(n, vec![0; n], d, Scalar::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<WeylMonomial, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: &[u32], d: &[u32]) -> Scalar {
        self.terms
            .get(&(x.to_vec(), d.to_vec()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    fn add_term(&mut self, x: Vec<u32>, d: Vec<u32>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (x, d);
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v += &c;
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn check_rank(&self, other: &WeylElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "Weyl algebras of rank {} and {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for ((x, d), c) in &other.terms {
            out.add_term(x.clone(), d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> WeylElement {
        let mut out = WeylElement::zero(self.n);
        for ((x, d), c) in &self.terms {
            out.add_term(x.clone(), d.clone(), c * s);
        }
        out
    }

    pub fn sub(&self, other: &WeylElement) -> Result<WeylElement> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Normal-ordered product. Per variable, moving `∂^b` past `x^c` gives
    /// `Σ_k C(b,k) c!/(c-k)! x^{c-k} ∂^{b-k}` (iterated `∂x = x∂ + 1`);
    /// distinct variables commute, so the full product is the tensor product
    /// of these one-variable expansions.
    pub fn product(&self, other: &WeylElement) -> Result<WeylElement> {
        self.check_rank(other)?;
        let mut out = WeylElement::zero(self.n);
        for ((xa, da), ca) in &self.terms {
            for ((xb, db), cb) in &other.terms {
                // Expansion of ∂^{da} x^{xb}: list of (x-exponents, ∂-exponents, coeff)
                let mut partial: Vec<(Vec<u32>, Vec<u32>, Scalar)> =
                    vec![(xa.clone(), db.clone(), ca * cb)];
                for i in 0..self.n {
                    let (b, c) = (da[i], xb[i]);
                    let mut next = Vec::new();
                    for (x, d, coeff) in &partial {
                        for k in 0..=b.min(c) {
                            let w = Scalar::from_int(binomial(b, k) as i64)
                                * Scalar::from_int(falling(c, k) as i64);
                            let mut x = x.clone();
                            let mut d = d.clone();
                            x[i] += c - k;
                            d[i] += b - k;
                            next.push((x, d, coeff * &w));
                        }
                    }
                    partial = next;
                }
                for (x, d, c) in partial {
                    out.add_term(x, d, c);
                }
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, other: &WeylElement) -> Result<WeylElement> {
        self.product(other)?.sub(&other.product(self)?)
    }
}

fn binomial(n: u32, k: u32) -> u64 {
    (0..k).fold(1u64, |acc, j| acc * (n - j) as u64 / (j + 1) as u64)
}

fn falling(c: u32, k: u32) -> u64 {
    (0..k).map(|j| (c - j) as u64).product()
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((x, d), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &e) in x.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·x{}", i + 1)?,
                    _ => write!(f, "·x{}^{e}", i + 1)?,
                }
            }
            for (i, &e) in d.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "·∂{}", i + 1)?,
                    _ => write!(f, "·∂{}^{e}", i + 1)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct TermDoc {
    x: Vec<u32>,
    d: Vec<u32>,
    c: Scalar,
}

impl Serialize for WeylElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let docs: Vec<TermDoc> = self
            .terms
            .iter()
            .map(|((x, d), c)| TermDoc {
                x: x.clone(),
                d: d.clone(),
                c: c.clone(),
            })
            .collect();
        docs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeylElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let docs = Vec::<TermDoc>::deserialize(d)?;
        let n = docs.first().map_or(0, |t| t.x.len());
        let mut out = WeylElement::zero(n);
        for t in docs {
            if t.x.len() != n || t.d.len() != n {
                return Err(serde::de::Error::custom("inconsistent exponent lengths"));
            }
            out.add_term(t.x, t.d, t.c);
        }
        Ok(out)
    }
}
