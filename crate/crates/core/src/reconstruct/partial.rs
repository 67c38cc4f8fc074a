use std::sync::Arc;

use crate::error::{Error, Result};
use crate::genweight::{
    check_relations, check_storage, BlockSource, GenModule, Layout, ModuleDoc, Params,
};
use crate::linalg::Matrix;
use crate::report::{Report, Violation};
use crate::weyl::Label;

/// Restriction data for rank two: the action of the subalgebra generated by
/// `X_{±(ε2-ε1)}` (with both Cartan elements) on the line through the origin
/// in direction `ε2 - ε1`, and the action of `X_{2ε1}` everywhere.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialModule {
    params: Params,
    layout: Arc<Layout>,
    dims: Vec<usize>,
    blocks: Vec<Vec<Option<Matrix>>>,
}

/// Labels kept on the line, in basis order.
pub(crate) fn line_labels(layout: &Layout) -> Vec<usize> {
    let basis = layout.basis();
    [
        Label::x_diff(2, 0, 1),
        Label::x_diff(2, 1, 0),
        Label::H(0),
        Label::H(1),
    ]
    .iter()
    .map(|l| basis.idx(l))
    .collect()
}

pub(crate) fn raising_label(layout: &Layout) -> usize {
    layout.basis().idx(&Label::x_sum(2, 0, 0))
}

/// Box points of the form `(-m, m)`.
pub(crate) fn line_points(layout: &Layout) -> Vec<usize> {
    let sbox = layout.support();
    (0..sbox.len())
        .filter(|&p| sbox.point(p)[0] + sbox.point(p)[1] == 0)
        .collect()
}

impl PartialModule {
    /// Checks shapes and that only the restricted labels are present.
    pub fn new(
        params: Params,
        layout: Arc<Layout>,
        dims: Vec<usize>,
        blocks: Vec<Vec<Option<Matrix>>>,
    ) -> Result<PartialModule> {
        if layout.n() != 2 {
            return Err(Error::Parameter(format!(
                "partial data needs rank 2, got {}",
                layout.n()
            )));
        }
        check_storage(&params, &layout, &dims, &blocks, false)?;
        let line = line_labels(&layout);
        let raise = raising_label(&layout);
        let sbox = layout.support();
        for (l, row) in blocks.iter().enumerate() {
            for (p, m) in row.iter().enumerate() {
                let on_line = sbox.point(p)[0] + sbox.point(p)[1] == 0;
                let keep = l == raise || (line.contains(&l) && on_line);
                if m.is_some() && !keep {
                    return Err(Error::Dimension(format!(
                        "partial data cannot hold {} at {:?}",
                        layout.basis().name(l),
                        sbox.point(p)
                    )));
                }
                if m.is_none() && keep && layout.target(l, p).is_some() {
                    return Err(Error::Dimension(format!(
                        "partial data is missing {} at {:?}",
                        layout.basis().name(l),
                        sbox.point(p)
                    )));
                }
            }
        }
        Ok(PartialModule {
            params,
            layout,
            dims,
            blocks,
        })
    }

    /// The restriction of a rank two module.
    pub fn strip(m: &GenModule) -> Result<PartialModule> {
        let layout = m.layout().clone();
        if layout.n() != 2 {
            return Err(Error::Parameter(format!(
                "partial data needs rank 2, got {}",
                layout.n()
            )));
        }
        let line = line_labels(&layout);
        let raise = raising_label(&layout);
        let sbox = layout.support();
        let blocks = (0..layout.basis().len())
            .map(|l| {
                (0..sbox.len())
                    .map(|p| {
                        let on_line = sbox.point(p)[0] + sbox.point(p)[1] == 0;
                        let keep = l == raise || (line.contains(&l) && on_line);
                        if keep {
                            m.block(l, p).cloned()
                        } else {
                            None
                        }
                    })
                    .collect()
            })
            .collect();
        PartialModule::new(m.params().clone(), layout, m.dims().to_vec(), blocks)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Replaces one block (same shape). Used for fault injection.
    pub fn with_block(&self, label: usize, point: usize, m: Matrix) -> Result<PartialModule> {
        let mut blocks = self.blocks.clone();
        match &blocks[label][point] {
            Some(old) if old.shape() == m.shape() => blocks[label][point] = Some(m),
            _ => {
                return Err(Error::Dimension(format!(
                    "no block at label {label}, point {point}"
                )))
            }
        }
        PartialModule::new(
            self.params.clone(),
            self.layout.clone(),
            self.dims.clone(),
            blocks,
        )
    }

    /// The relations among the stored blocks, plus invertibility of every
    /// `X_{2ε1}` block.
    pub fn check(&self) -> Report {
        let mut report = check_relations(self);
        let raise = raising_label(&self.layout);
        for p in 0..self.layout.support().len() {
            if let Some(u) = &self.blocks[raise][p] {
                let ok = u.is_square() && u.is_invertible();
                report.record((!ok).then(|| {
                    Violation::single(
                        self.layout.basis().name(raise),
                        self.layout.support().point(p).to_vec(),
                        "X[2e1] block is not invertible",
                    )
                    .with_lhs(u.clone())
                }));
            }
        }
        report
    }

    pub fn to_doc(&self) -> ModuleDoc {
        ModuleDoc::from_source(self, None)
    }

    pub fn from_doc(doc: &ModuleDoc) -> Result<PartialModule> {
        let (params, layout, dims, blocks) = doc.decode()?;
        PartialModule::new(params, layout, dims, blocks)
    }
}

impl BlockSource for PartialModule {
    fn params(&self) -> &Params {
        &self.params
    }

    fn layout(&self) -> &Arc<Layout> {
        &self.layout
    }

    fn dim_at(&self, point: usize) -> usize {
        self.dims[point]
    }

    fn block(&self, label: usize, point: usize) -> Option<&Matrix> {
        self.blocks[label][point].as_ref()
    }
}
