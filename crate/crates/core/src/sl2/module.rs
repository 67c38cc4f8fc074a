use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::report::{Report, Violation};

/// Two commuting square matrices of equal size.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutingPair {
    p: Matrix,
    q: Matrix,
}

impl CommutingPair {
    pub fn new(p: Matrix, q: Matrix) -> Result<CommutingPair> {
        if !p.is_square() || p.shape() != q.shape() {
            return Err(Error::Dimension(format!(
                "P and Q must be square of equal size, got {:?} and {:?}",
                p.shape(),
                q.shape()
            )));
        }
        if !p.commutes_with(&q) {
            return Err(Error::FamilyInvariant("P and Q do not commute".into()));
        }
        Ok(CommutingPair { p, q })
    }

    pub fn scalars(p: i64, q: i64) -> CommutingPair {
        CommutingPair {
            p: Matrix::scalar(1, Scalar::from_int(p)),
            q: Matrix::scalar(1, Scalar::from_int(q)),
        }
    }

    pub fn p(&self) -> &Matrix {
        &self.p
    }

    pub fn q(&self) -> &Matrix {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.p.rows()
    }

    /// `(P + Q + c Id)²`.
    pub fn shifted_sum_squared(&self, c: i64) -> Matrix {
        (&self.p + &self.q).shift_int(c).pow(2)
    }
}

/// A module over `sl_2` on the window `lo..=hi`: `e` maps index `i` to
/// `i + 1`, `f` maps `i` to `i - 1`, `h` preserves `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2Module {
    lo: i64,
    hi: i64,
    dims: Vec<usize>,
    e: Vec<Option<Matrix>>,
    f: Vec<Option<Matrix>>,
    h: Vec<Matrix>,
}

impl Sl2Module {
    /// `e`, `f`, `h` are evaluated at every index where their target lies in
    /// the window.
    pub fn from_fn(
        lo: i64,
        hi: i64,
        mut e: impl FnMut(i64) -> Matrix,
        mut f: impl FnMut(i64) -> Matrix,
        mut h: impl FnMut(i64) -> Matrix,
    ) -> Result<Sl2Module> {
        if lo > hi {
            return Err(Error::Parameter(format!("empty window {lo}..={hi}")));
        }
        let h: Vec<Matrix> = (lo..=hi).map(&mut h).collect();
        let dims: Vec<usize> = h.iter().map(Matrix::rows).collect();
        let m = Sl2Module {
            lo,
            hi,
            e: (lo..=hi).map(|i| (i < hi).then(|| e(i))).collect(),
            f: (lo..=hi).map(|i| (i > lo).then(|| f(i))).collect(),
            dims,
            h,
        };
        m.check_shapes()?;
        Ok(m)
    }

    fn check_shapes(&self) -> Result<()> {
        for i in self.lo..=self.hi {
            let d = self.dim(i);
            let bad = |what: &str, m: &Matrix, expected: (usize, usize)| {
                Error::Dimension(format!(
                    "{what} at {i} has shape {:?}, expected {expected:?}",
                    m.shape()
                ))
            };
            let h = self.h(i).expect("in window");
            if h.shape() != (d, d) {
                return Err(bad("h", h, (d, d)));
            }
            if let Some(e) = self.e(i) {
                if e.shape() != (self.dim(i + 1), d) {
                    return Err(bad("e", e, (self.dim(i + 1), d)));
                }
            }
            if let Some(f) = self.f(i) {
                if f.shape() != (self.dim(i - 1), d) {
                    return Err(bad("f", f, (self.dim(i - 1), d)));
                }
            }
        }
        Ok(())
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn contains(&self, i: i64) -> bool {
        (self.lo..=self.hi).contains(&i)
    }

    fn slot(&self, i: i64) -> Option<usize> {
        self.contains(i).then(|| (i - self.lo) as usize)
    }

    pub fn dim(&self, i: i64) -> usize {
        self.dims[self.slot(i).expect("index in window")]
    }

    pub fn e(&self, i: i64) -> Option<&Matrix> {
        self.e[self.slot(i)?].as_ref()
    }

    pub fn f(&self, i: i64) -> Option<&Matrix> {
        self.f[self.slot(i)?].as_ref()
    }

    pub fn h(&self, i: i64) -> Option<&Matrix> {
        Some(&self.h[self.slot(i)?])
    }

    /// A copy with `Id` added to the `e` block at `i`.
    pub fn perturb_e(&self, i: i64) -> Result<Sl2Module> {
        let slot = self
            .slot(i)
            .filter(|_| i < self.hi)
            .ok_or_else(|| Error::Interior {
                index: i.to_string(),
                reason: "no e block".into(),
            })?;
        let mut out = self.clone();
        let e = out.e[slot].as_mut().expect("e block");
        e[(0, 0)] += &Scalar::one();
        Ok(out)
    }

    /// `[e, f] = h`, `[h, e] = 2e` and `[h, f] = -2f` at every index where
    /// the composed blocks stay in the window.
    pub fn check_relations(&self) -> Report {
        let mut report = Report::new();
        for i in self.lo..=self.hi {
            let at = vec![i];
            let h = self.h(i).expect("in window");
            if let (Some(ep), Some(f), Some(fn_), Some(e)) =
                (self.e(i - 1), self.f(i), self.f(i + 1), self.e(i))
            {
                let lhs = &(ep * f) - &(fn_ * e);
                report.record(
                    (&lhs != h).then(|| {
                        Violation::pair("e".into(), "f".into(), at.clone(), lhs, h.clone())
                    }),
                );
            }
            if let (Some(e), Some(hn)) = (self.e(i), self.h(i + 1)) {
                let lhs = &(hn * e) - &(e * h);
                let rhs = e.scale(&Scalar::from_int(2));
                report.record(
                    (lhs != rhs)
                        .then(|| Violation::pair("h".into(), "e".into(), at.clone(), lhs, rhs)),
                );
            }
            if let (Some(f), Some(hp)) = (self.f(i), self.h(i - 1)) {
                let lhs = &(hp * f) - &(f * h);
                let rhs = f.scale(&Scalar::from_int(-2));
                report.record(
                    (lhs != rhs)
                        .then(|| Violation::pair("h".into(), "f".into(), at.clone(), lhs, rhs)),
                );
            }
        }
        report
    }
}

/// `V̄`: a copy of `V` at every index, with `e = P - i`, `f = Q + i` and
/// `h = Q - P + 2i`.
pub fn build_vbar(pq: &CommutingPair, radius: i64) -> Result<Sl2Module> {
    let pq = CommutingPair::new(pq.p.clone(), pq.q.clone())?;
    let p = &pq.p;
    let q = &pq.q;
    Sl2Module::from_fn(
        -radius,
        radius,
        |i| p.shift_int(-i),
        |i| q.shift_int(i),
        |i| (q - p).shift_int(2 * i),
    )
}

/// `(h + 1)² + 4fe` on the block at `i`.
pub fn casimir_action(m: &Sl2Module, i: i64) -> Result<Matrix> {
    let interior = |j: i64| {
        m.contains(j).then_some(()).ok_or_else(|| Error::Interior {
            index: i.to_string(),
            reason: format!("{j} is outside the window {:?}", m.window()),
        })
    };
    interior(i - 1)?;
    interior(i)?;
    interior(i + 1)?;
    let h = m.h(i).expect("in window");
    let fe = m.f(i + 1).expect("interior") * m.e(i).expect("interior");
    Ok(&h.shift_int(1).pow(2) + &fe.scale(&Scalar::from_int(4)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scalar_weights() {
        let m = build_vbar(&CommutingPair::scalars(0, 0), 3).unwrap();
        for i in -3..=3 {
            assert_eq!(m.h(i).unwrap(), &Matrix::scalar(1, Scalar::from_int(2 * i)));
        }
        assert!(m.check_relations().passed());
        assert_eq!(casimir_action(&m, 0).unwrap(), Matrix::identity(1));
    }

    #[test]
    fn jordan_pair() {
        let pq =
            CommutingPair::new(Matrix::from_ints(&[&[0, 1], &[0, 0]]), Matrix::zero(2, 2)).unwrap();
        let m = build_vbar(&pq, 2).unwrap();
        assert_eq!(m.e(0).unwrap(), pq.p());
        assert_eq!(
            casimir_action(&m, 0).unwrap(),
            Matrix::from_ints(&[&[1, 2], &[0, 1]])
        );
        assert!(m.check_relations().passed());
    }

    #[test]
    fn edges_and_invalid_pairs() {
        let m = build_vbar(&CommutingPair::scalars(1, 2), 2).unwrap();
        assert!(matches!(casimir_action(&m, 2), Err(Error::Interior { .. })));
        let bad = CommutingPair::new(
            Matrix::from_ints(&[&[0, 1], &[0, 0]]),
            Matrix::from_ints(&[&[0, 0], &[1, 0]]),
        );
        assert!(matches!(bad, Err(Error::FamilyInvariant(_))));
    }
}
