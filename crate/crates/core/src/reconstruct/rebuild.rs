//! Reassembling a rank two module from its restriction data.

use serde::Serialize;

use super::partial::{line_labels, line_points, raising_label};
use super::PartialModule;
use super::{
    casimir_a, recover_t12, solve_lowering_extension, solve_raising_extension, Branch,
    LoweringSolution,
};
use crate::error::{Error, Result};
use crate::genweight::{
    build_f_on, check_relations, intertwiner_space, pick_invertible, BlockSource, GenModule,
    HomSolution, Layout,
};
use crate::linalg::{Matrix, NilpotentFamily};
use crate::weyl::Label;

/// Which half of the support is extended first when solving for
/// `X_{ε2-ε1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LayerOrder {
    UpThenDown,
    DownThenUp,
}

/// One solve for `X_{ε2-ε1}` at `point`, in the normalized basis.
#[derive(Debug, Clone, Serialize)]
pub struct RaisingStep {
    pub layer: i64,
    pub point: Vec<i64>,
    pub p: Matrix,
    pub q: Matrix,
    pub x: Matrix,
}

/// One solve for `X_{-2ε1}` at `point`, in the normalized basis.
#[derive(Debug, Clone, Serialize)]
pub struct LoweringStep {
    pub layer: i64,
    pub point: Vec<i64>,
    pub p: Matrix,
    pub solution: LoweringSolution,
}

#[derive(Debug, Clone)]
pub struct Reconstruction {
    /// The module, in the basis of the partial data.
    pub module: GenModule,
    /// The family recovered from the Casimir at the origin.
    pub family: NilpotentFamily,
    pub raising: Vec<RaisingStep>,
    pub lowering: Vec<LoweringStep>,
}

fn failure(layer: impl ToString, reason: impl Into<String>) -> Error {
    Error::Reconstruction {
        layer: layer.to_string(),
        reason: reason.into(),
    }
}

/// Block storage with the two propagation rules: brackets through the
/// structure constants, and transport through an invertible root block.
struct Work<'a> {
    layout: &'a Layout,
    blocks: Vec<Vec<Option<Matrix>>>,
}

impl Work<'_> {
    fn get(&self, l: usize, p: usize) -> Option<&Matrix> {
        self.blocks[l][p].as_ref()
    }

    fn invertible(&self, l: usize, p: usize) -> Option<Matrix> {
        self.get(l, p)
            .filter(|m| m.is_square())
            .and_then(|m| m.inverse().ok())
    }

    /// `Σ c_w W(p)` over the bracket `[u, y]`, if every block is known.
    fn bracket_sum(
        &self,
        u: usize,
        y: usize,
        p: usize,
        rows: usize,
        cols: usize,
    ) -> Option<Matrix> {
        let mut acc = Matrix::zero(rows, cols);
        for (w, c) in self.layout.structure().bracket(u, y) {
            acc = &acc + &self.get(*w, p)?.scale(c);
        }
        Some(acc)
    }

    /// `Y(p)` from `[u, y] = c Y` with both factors known around `p`.
    fn by_bracket(&self, y: usize, p: usize) -> Option<Matrix> {
        let layout = self.layout;
        let nl = layout.basis().len();
        for u in 0..nl {
            for v in 0..nl {
                let coeffs = layout.structure().bracket(u, v);
                let [(w, c)] = coeffs else { continue };
                if *w != y || c.is_zero() {
                    continue;
                }
                let (Some(pv), Some(pu)) = (layout.target(v, p), layout.target(u, p)) else {
                    continue;
                };
                let (Some(a), Some(b), Some(cc), Some(d)) = (
                    self.get(u, pv),
                    self.get(v, p),
                    self.get(v, pu),
                    self.get(u, p),
                ) else {
                    continue;
                };
                let value = &(a * b) - &(cc * d);
                return Some(value.scale(&c.recip().expect("nonzero")));
            }
        }
        None
    }

    /// `Y(p)` by moving a known `Y` block along an invertible root block.
    fn by_transport(&self, y: usize, p: usize, via: &[usize]) -> Option<Matrix> {
        let layout = self.layout;
        let sbox = layout.support();
        let wy = layout.basis().weight(y);
        for &u in via {
            if u == y {
                continue;
            }
            let wu = layout.basis().weight(u);
            let neg: Vec<i64> = wu.iter().map(|c| -c).collect();
            // forward: Y(p0 + wu) = (U(p0 + wy) Y(p0) - Σ c W(p0)) U(p0)⁻¹
            if let Some(p0) = sbox.shifted(p, &neg) {
                let found = (|| {
                    let y0 = self.get(y, p0)?;
                    let u_inv = self.invertible(u, p0)?;
                    let u_far = self.get(u, layout.target(y, p0)?)?;
                    let lhs = u_far * y0;
                    let corr = self.bracket_sum(u, y, p0, lhs.rows(), lhs.cols())?;
                    Some(&(&lhs - &corr) * &u_inv)
                })();
                if found.is_some() {
                    return found;
                }
            }
            // backward: Y(p) = U(p + wy)⁻¹ (Y(p + wu) U(p) + Σ c W(p))
            let found = (|| {
                let p_up = layout.target(u, p)?;
                let y_up = self.get(y, p_up)?;
                let u_here = self.get(u, p)?;
                let q = sbox.shifted(p, &wy)?;
                let u_far_inv = self.invertible(u, q)?;
                let lhs = y_up * u_here;
                let corr = self.bracket_sum(u, y, p, lhs.rows(), lhs.cols())?;
                Some(&u_far_inv * &(&lhs + &corr))
            })();
            if found.is_some() {
                return found;
            }
        }
        None
    }

    /// Fills missing blocks of `labels` until nothing changes.
    fn close(&mut self, labels: &[usize], via: &[usize], brackets: bool) {
        let npts = self.layout.support().len();
        loop {
            let mut progress = false;
            for &y in labels {
                for p in 0..npts {
                    if self.blocks[y][p].is_some() || self.layout.target(y, p).is_none() {
                        continue;
                    }
                    let value = self.by_transport(y, p, via).or_else(|| {
                        if brackets {
                            self.by_bracket(y, p)
                        } else {
                            None
                        }
                    });
                    if let Some(m) = value {
                        self.blocks[y][p] = Some(m);
                        progress = true;
                    }
                }
            }
            if !progress {
                return;
            }
        }
    }

    fn missing(&self) -> Option<(usize, usize)> {
        (0..self.blocks.len()).find_map(|l| {
            (0..self.layout.support().len())
                .find(|&p| self.blocks[l][p].is_none() && self.layout.target(l, p).is_some())
                .map(|p| (l, p))
        })
    }
}

fn layer_of(b: &[i64]) -> i64 {
    (b[0] + b[1]) / 2
}

/// Per-point basis changes that make `X_{2ε1}` the identity and the line
/// data agree with `F` of the recovered family.
fn normalizing_maps(partial: &PartialModule, model: &GenModule) -> Result<Vec<Matrix>> {
    let layout = partial.layout();
    let sbox = layout.support();
    let line = line_points(layout);
    let basis: Vec<HomSolution> = intertwiner_space(partial, model, &line_labels(layout), &line)
        .into_iter()
        .map(|maps| HomSolution { maps })
        .collect();
    let on_line = pick_invertible(&basis).ok_or_else(|| {
        failure(
            0,
            "the line data is not isomorphic to that of the recovered family",
        )
    })?;
    let raise = raising_label(layout);
    let mut g: Vec<Option<Matrix>> = vec![None; sbox.len()];
    for (k, &p) in line.iter().enumerate() {
        g[p] = Some(on_line.maps[k].clone());
        let step: [i64; 2] = [2, 0];
        let mut cur = p;
        while let Some(next) = sbox.shifted(cur, &step) {
            let u = partial.block(raise, cur).expect("X[2e1] inside the box");
            let inv = u
                .inverse()
                .map_err(|_| failure(layer_of(sbox.point(cur)), "X[2e1] is not invertible"))?;
            g[next] = Some(g[cur].as_ref().expect("set") * &inv);
            cur = next;
        }
        let mut cur = p;
        while let Some(prev) = sbox.shifted(cur, &[-2, 0]) {
            let u = partial.block(raise, prev).expect("X[2e1] inside the box");
            g[prev] = Some(g[cur].as_ref().expect("set") * u);
            cur = prev;
        }
    }
    Ok(g.into_iter()
        .map(|m| m.expect("every point lies on a column through the line"))
        .collect())
}

/// Rebuilds the full module from its restriction data.
pub fn reconstruct(partial: &PartialModule) -> Result<GenModule> {
    reconstruct_with(partial, LayerOrder::UpThenDown).map(|r| r.module)
}

pub fn reconstruct_with(partial: &PartialModule, order: LayerOrder) -> Result<Reconstruction> {
    let layout = partial.layout().clone();
    let sbox = layout.support();
    let basis = layout.basis();
    let params = partial.params().clone();
    let report = partial.check();
    if let Some(v) = report.violations.first() {
        if v.label_v.is_none() {
            return Err(Error::Precondition(format!(
                "{} at {:?}: {}",
                v.label_u,
                v.b,
                v.reason.clone().unwrap_or_default()
            )));
        }
        return Err(failure(
            layer_of(&v.b),
            format!(
                "restriction data violates [{}, {}] at {:?}",
                v.label_u,
                v.label_v.clone().unwrap_or_default(),
                v.b
            ),
        ));
    }

    let origin = sbox.origin();
    let zero = [0, 0];
    let y1 = partial
        .block(basis.idx(&Label::H(1)), origin)
        .expect("Cartan block at origin");
    let y2 = casimir_a(partial, &zero)?;
    let family = recover_t12(y1, &y2, &params, Branch::Plus)?;
    let model = build_f_on(&family, &params, &layout)?;
    let g = normalizing_maps(partial, &model)?;
    let g_inv: Vec<Matrix> = g
        .iter()
        .map(|m| m.inverse().expect("normalizing maps are invertible"))
        .collect();

    let mut work = Work {
        layout: &layout,
        blocks: (0..basis.len())
            .map(|l| {
                (0..sbox.len())
                    .map(|p| {
                        partial.block(l, p).map(|m| {
                            let q = layout.target(l, p).expect("block has target");
                            &(&g[q] * m) * &g_inv[p]
                        })
                    })
                    .collect()
            })
            .collect(),
    };
    let raise = raising_label(&layout);
    let up = basis.idx(&Label::x_diff(2, 1, 0));
    let down = basis.idx(&Label::x_diff(2, 0, 1));
    let lower = basis.idx(&Label::x_neg_sum(2, 0, 0));
    let h1 = basis.idx(&Label::H(1));
    let h0 = basis.idx(&Label::H(0));

    // X_{ε1-ε2} and both Cartan elements commute with X_{2ε1} up to scalars.
    work.close(&[down, h0, h1], &[raise], false);

    let radius = layout.radius();
    let layers: Vec<i64> = match order {
        LayerOrder::UpThenDown => (1..=radius).chain((-radius..=-1).rev()).collect(),
        LayerOrder::DownThenUp => (-radius..=-1).rev().chain(1..=radius).collect(),
    };
    let mut raising = Vec::new();
    for k in layers {
        for t in 0..sbox.len() {
            let b = sbox.point(t);
            if layer_of(b) != k || b.iter().sum::<i64>() != 2 * k {
                continue;
            }
            let Some(t_up) = layout.target(up, t) else {
                continue;
            };
            let (neighbour, shift) = if k > 0 {
                (sbox.shifted(t, &[-2, 0]), -1)
            } else {
                (sbox.shifted(t, &[2, 0]), -5)
            };
            let p = neighbour
                .and_then(|s| work.get(up, s))
                .map(|x| x.shift_int(shift))
                .ok_or_else(|| failure(k, format!("no neighbouring X[e2-e1] for {b:?}")))?;
            let q = work
                .get(down, t_up)
                .cloned()
                .ok_or_else(|| failure(k, format!("X[e1-e2] unknown at {:?}", sbox.point(t_up))))?;
            let x = solve_raising_extension(&p, &q)
                .map_err(|e| failure(k, format!("at {b:?}: {e}")))?;
            let h = work
                .get(h1, t)
                .ok_or_else(|| failure(k, format!("H[e2-e1] unknown at {b:?}")))?;
            if h != &(&q - &p).shift_int(-4) {
                return Err(failure(
                    k,
                    format!("H[e2-e1] at {b:?} disagrees with the solved X[e2-e1]"),
                ));
            }
            work.blocks[up][t] = Some(x.clone());
            raising.push(RaisingStep {
                layer: k,
                point: b.to_vec(),
                p,
                q,
                x,
            });
        }
    }

    let mut lowering = Vec::new();
    for t in 0..sbox.len() {
        if layout.target(lower, t).is_none() {
            continue;
        }
        let Some(x_up) = work.get(up, t) else {
            continue;
        };
        let b = sbox.point(t).to_vec();
        let p = x_up.shift_int(-3);
        let solution = solve_lowering_extension(&p)
            .map_err(|e| failure(layer_of(&b), format!("at {b:?}: {e}")))?;
        work.blocks[lower][t] = Some(solution.u.clone());
        lowering.push(LoweringStep {
            layer: layer_of(&b),
            point: b,
            p,
            solution,
        });
    }
    for step in &lowering {
        let t = sbox.index_of(&step.point).expect("in box");
        let checks = [
            ([-2, 0], &step.solution.x),
            ([-3, 1], &step.solution.y),
            ([-1, 1], &step.solution.v),
            ([-2, 2], &step.solution.w),
        ];
        for (shift, expected) in checks {
            let Some(s) = sbox.shifted(t, &shift) else {
                continue;
            };
            if let Some(actual) = work.get(lower, s) {
                if actual != expected {
                    return Err(failure(
                        step.layer,
                        format!(
                            "X[-2e1] at {:?} disagrees with the square at {:?}",
                            sbox.point(s),
                            step.point
                        ),
                    ));
                }
            }
        }
    }

    let all: Vec<usize> = (0..basis.len()).collect();
    let roots = basis.root_indices();
    work.close(&all, &roots, true);
    if let Some((l, p)) = work.missing() {
        return Err(failure(
            layer_of(sbox.point(p)),
            format!(
                "could not determine {} at {:?}",
                basis.name(l),
                sbox.point(p)
            ),
        ));
    }
    let blocks = work.blocks;
    let normalized = GenModule::new(params, layout.clone(), partial.dims().to_vec(), blocks)?;
    let module = normalized.conjugate(&g_inv)?;
    let report = check_relations(&module);
    if let Some(v) = report.violations.first() {
        return Err(failure(
            layer_of(&v.b),
            format!(
                "relation [{}, {}] fails at {:?}",
                v.label_u,
                v.label_v.clone().unwrap_or_default(),
                v.b
            ),
        ));
    }
    if PartialModule::strip(&module)? != *partial {
        return Err(Error::Consistency(
            "reconstruction does not extend the restriction data".into(),
        ));
    }
    Ok(Reconstruction {
        module,
        family,
        raising,
        lowering,
    })
}
