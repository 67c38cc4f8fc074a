//! Exact verification of module structure on the truncated support.

use std::collections::{HashSet, VecDeque};

use rayon::prelude::*;

use super::{weight_of, BlockSource, Params, SupportBox};
use crate::linalg::Matrix;
use crate::report::{Report, Violation};

/// Checks `ρ(u)ρ(v) - ρ(v)ρ(u) = ρ([u, v])` for every ordered pair of basis
/// labels at every point where all the blocks involved stay inside the box.
pub fn check_relations<M: BlockSource + Sync>(m: &M) -> Report {
    let layout = m.layout();
    let nl = layout.basis().len();
    let pairs: Vec<(usize, usize)> = (0..nl).flat_map(|u| (0..nl).map(move |v| (u, v))).collect();
    let reports: Vec<Report> = pairs
        .par_iter()
        .map(|&(u, v)| {
            let mut report = Report::new();
            for p in 0..layout.support().len() {
                if let Some(violation) = relation_at(m, u, v, p) {
                    report.record(violation);
                }
            }
            report
        })
        .collect();
    Report::merged(reports)
}

/// `None` when some block needed at `p` is missing; otherwise the outcome.
fn relation_at<M: BlockSource>(m: &M, u: usize, v: usize, p: usize) -> Option<Option<Violation>> {
    let layout = m.layout();
    let pv = layout.target(v, p)?;
    let pu = layout.target(u, p)?;
    let q = layout.target(u, pv)?;
    let lhs = &(m.block(u, pv)? * m.block(v, p)?) - &(m.block(v, pu)? * m.block(u, p)?);
    let mut rhs = Matrix::zero(m.dim_at(q), m.dim_at(p));
    for (w, c) in layout.structure().bracket(u, v) {
        rhs = &rhs + &m.block(*w, p)?.scale(c);
    }
    let basis = layout.basis();
    Some((lhs != rhs).then(|| {
        Violation::pair(
            basis.name(u),
            basis.name(v),
            layout.support().point(p).to_vec(),
            lhs,
            rhs,
        )
    }))
}

/// Every root block inside the box must be square and invertible.
pub fn check_cuspidal<M: BlockSource + Sync>(m: &M) -> Report {
    let layout = m.layout();
    let basis = layout.basis();
    let reports: Vec<Report> = basis
        .root_indices()
        .into_par_iter()
        .map(|l| {
            let mut report = Report::new();
            for p in 0..layout.support().len() {
                let Some(block) = m.block(l, p) else { continue };
                let ok = block.is_square() && block.is_invertible();
                report.record((!ok).then(|| {
                    Violation::single(
                        basis.name(l),
                        layout.support().point(p).to_vec(),
                        "root vector does not act bijectively",
                    )
                    .with_lhs(block.clone())
                }));
            }
            report
        })
        .collect();
    Report::merged(reports)
}

/// True when every Cartan block is a scalar matrix.
pub fn is_weight_module<M: BlockSource>(m: &M) -> bool {
    let layout = m.layout();
    layout.basis().cartan_indices().into_iter().all(|h| {
        (0..layout.support().len()).all(|p| m.block(h, p).is_some_and(|b| b.as_scalar().is_some()))
    })
}

/// At every point the Cartan blocks commute and each has the single
/// eigenvalue prescribed by the weight of the point.
pub fn check_weight_spaces<M: BlockSource + Sync>(m: &M) -> Report {
    let layout = m.layout();
    let basis = layout.basis();
    let cartan = basis.cartan_indices();
    let reports: Vec<Report> = (0..layout.support().len())
        .into_par_iter()
        .map(|p| {
            let b = layout.support().point(p);
            let weight = weight_of(m.params(), b);
            let mut report = Report::new();
            for (k, &h) in cartan.iter().enumerate() {
                let Some(block) = m.block(h, p) else {
                    report.record(Some(Violation::single(
                        basis.name(h),
                        b.to_vec(),
                        "missing Cartan block",
                    )));
                    continue;
                };
                report.record((!block.has_single_eigenvalue(&weight[k])).then(|| {
                    Violation::single(
                        basis.name(h),
                        b.to_vec(),
                        format!("eigenvalue differs from {}", weight[k]),
                    )
                    .with_lhs(block.clone())
                }));
                for &h2 in &cartan[k + 1..] {
                    let Some(other) = m.block(h2, p) else {
                        continue;
                    };
                    let c = block.commutator(other);
                    report.record((!c.is_zero()).then(|| {
                        Violation::pair(
                            basis.name(h),
                            basis.name(h2),
                            b.to_vec(),
                            c,
                            Matrix::zero(block.rows(), block.rows()),
                        )
                    }));
                }
            }
            report
        })
        .collect();
    Report::merged(reports)
}

/// From every point, every other point is reachable through invertible root
/// blocks.
pub fn support_connected<M: BlockSource>(m: &M) -> bool {
    let layout = m.layout();
    let npts = layout.support().len();
    let roots = layout.basis().root_indices();
    let edges: Vec<Vec<usize>> = (0..npts)
        .map(|p| {
            roots
                .iter()
                .filter_map(|&l| {
                    let q = layout.target(l, p)?;
                    m.block(l, p)
                        .filter(|b| b.is_square() && b.is_invertible())
                        .map(|_| q)
                })
                .collect()
        })
        .collect();
    (0..npts).all(|start| {
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for &q in &edges[p] {
                if seen.insert(q) {
                    queue.push_back(q);
                }
            }
        }
        seen.len() == npts
    })
}

/// Distinct box points carry distinct weights.
pub fn weights_injective(params: &Params, sbox: &SupportBox) -> bool {
    let weights: HashSet<_> = sbox.points().iter().map(|b| weight_of(params, b)).collect();
    weights.len() == sbox.len()
}
