//! Commutativity of the zero-weight part of the enveloping algebra on the
//! weight space at the origin.

use rayon::prelude::*;

use super::BlockSource;
use crate::linalg::Matrix;
use crate::report::{Report, Violation};

/// A product of root vectors returning to the origin, with its matrix on the
/// origin's weight space. `word[0]` acts first.
#[derive(Debug, Clone)]
pub struct ZeroWord {
    pub word: Vec<usize>,
    pub matrix: Matrix,
}

/// All products of at most `degree_cap` root vectors with root sum zero whose
/// intermediate points stay in the box.
pub fn zero_weight_words<M: BlockSource>(m: &M, degree_cap: usize) -> Vec<ZeroWord> {
    let layout = m.layout();
    let origin = layout.support().origin();
    let roots = layout.basis().root_indices();
    let mut out = Vec::new();
    let mut stack = vec![(origin, Vec::new(), Matrix::identity(m.dim_at(origin)))];
    while let Some((p, word, mat)) = stack.pop() {
        if !word.is_empty() && p == origin {
            out.push(ZeroWord {
                word: word.clone(),
                matrix: mat.clone(),
            });
        }
        if word.len() == degree_cap {
            continue;
        }
        for &l in roots.iter().rev() {
            let (Some(q), Some(block)) = (layout.target(l, p), m.block(l, p)) else {
                continue;
            };
            let mut next = word.clone();
            next.push(l);
            stack.push((q, next, block * &mat));
        }
    }
    out.sort_by(|x, y| (x.word.len(), &x.word).cmp(&(y.word.len(), &y.word)));
    out
}

fn word_name<M: BlockSource>(m: &M, word: &[usize]) -> String {
    let basis = m.layout().basis();
    word.iter()
        .rev()
        .map(|&l| basis.name(l))
        .collect::<Vec<_>>()
        .join("*")
}

/// Checks that all zero-weight products of degree at most `degree_cap`
/// commute pairwise on the origin's weight space.
pub fn u0_commutes<M: BlockSource + Sync>(m: &M, degree_cap: usize) -> Report {
    let mut words = zero_weight_words(m, degree_cap);
    let mut distinct: Vec<ZeroWord> = Vec::new();
    for w in words.drain(..) {
        if !distinct.iter().any(|d| d.matrix == w.matrix) {
            distinct.push(w);
        }
    }
    let origin = m
        .layout()
        .support()
        .point(m.layout().support().origin())
        .to_vec();
    let reports: Vec<Report> = (0..distinct.len())
        .into_par_iter()
        .map(|i| {
            let mut report = Report::new();
            for j in i + 1..distinct.len() {
                let (x, y) = (&distinct[i], &distinct[j]);
                let c = x.matrix.commutator(&y.matrix);
                report.record((!c.is_zero()).then(|| {
                    let zero = Matrix::zero(c.rows(), c.cols());
                    Violation::pair(
                        word_name(m, &x.word),
                        word_name(m, &y.word),
                        origin.clone(),
                        c,
                        zero,
                    )
                }));
            }
            report
        })
        .collect();
    Report::merged(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genweight::{build_f, Params};
    use crate::linalg::NilpotentFamily;

    #[test]
    fn degree_zero_is_vacuous() {
        let p = Params::default_for(2).unwrap();
        let m = build_f(&NilpotentFamily::jordan_direction(2, 0), &p, 2).unwrap();
        let r = u0_commutes(&m, 0);
        assert_eq!(r.checks, 0);
        assert!(r.passed());
    }

    #[test]
    fn degree_two_words() {
        let p = Params::default_for(2).unwrap();
        let m = build_f(&NilpotentFamily::jordan_direction(2, 0), &p, 2).unwrap();
        // one word X_{-α} X_α for each of the eight roots
        assert_eq!(zero_weight_words(&m, 2).len(), 8);
        assert!(u0_commutes(&m, 2).passed());
    }
}
