//! Block storage for truncated generalized weight modules.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Layout, Params};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Scalar};
use crate::weyl::Label;

/// Read access to block data, shared by complete modules and the partial
/// restriction data used during reconstruction.
pub trait BlockSource {
    fn params(&self) -> &Params;
    fn layout(&self) -> &Arc<Layout>;
    fn dim_at(&self, point: usize) -> usize;
    fn block(&self, label: usize, point: usize) -> Option<&Matrix>;

    fn block_at(&self, label: &Label, b: &[i64]) -> Option<&Matrix> {
        let l = self.layout().basis().index_of(label)?;
        let p = self.layout().support().index_of(b)?;
        self.block(l, p)
    }
}

/// A generalized weight module on a truncated support: one weight space
/// `V^b` per box point and one matrix per (basis label, point) whose target
/// `b + wt(label)` also lies in the box.
#[derive(Debug, Clone, PartialEq)]
pub struct GenModule {
    params: Params,
    layout: Arc<Layout>,
    dims: Vec<usize>,
    blocks: Vec<Vec<Option<Matrix>>>,
}

impl PartialEq for Layout {
    fn eq(&self, other: &Layout) -> bool {
        self.same_shape(other)
    }
}

impl GenModule {
    /// Validates shapes: a block exists exactly when its target is in the
    /// box, with shape `dims[target] x dims[source]`.
    pub fn new(
        params: Params,
        layout: Arc<Layout>,
        dims: Vec<usize>,
        blocks: Vec<Vec<Option<Matrix>>>,
    ) -> Result<GenModule> {
        check_storage(&params, &layout, &dims, &blocks, true)?;
        Ok(GenModule {
            params,
            layout,
            dims,
            blocks,
        })
    }

    /// Builds a module by evaluating `f(label, point)` on every admissible
    /// (label, point) pair.
    pub fn from_fn(
        params: Params,
        layout: Arc<Layout>,
        dims: Vec<usize>,
        mut f: impl FnMut(usize, usize) -> Result<Matrix>,
    ) -> Result<GenModule> {
        let blocks = (0..layout.basis().len())
            .map(|l| {
                (0..layout.support().len())
                    .map(|p| layout.target(l, p).map(|_| f(l, p)).transpose())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        GenModule::new(params, layout, dims, blocks)
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn blocks(&self) -> &[Vec<Option<Matrix>>] {
        &self.blocks
    }

    /// Replaces a single block, keeping its shape. Used for fault injection.
    pub fn with_block(&self, label: usize, point: usize, m: Matrix) -> Result<GenModule> {
        let mut blocks = self.blocks.clone();
        match &blocks[label][point] {
            Some(old) if old.shape() == m.shape() => blocks[label][point] = Some(m),
            _ => {
                return Err(Error::Dimension(format!(
                    "no block of shape {:?} at label {label}, point {point}",
                    m.shape()
                )))
            }
        }
        GenModule::new(
            self.params.clone(),
            self.layout.clone(),
            self.dims.clone(),
            blocks,
        )
    }

    /// Adds the identity to one block. Used by the fault-injection suites.
    pub fn perturbed(&self, label: usize, point: usize) -> Result<GenModule> {
        let old = self.blocks[label][point]
            .as_ref()
            .ok_or_else(|| Error::Dimension("no block to perturb".into()))?;
        let mut m = old.clone();
        m[(0, 0)] += &Scalar::one();
        self.with_block(label, point, m)
    }

    /// Transports the module along per-point basis changes `g_b`:
    /// the new block is `g_{b'} X g_b⁻¹`.
    pub fn conjugate(&self, g: &[Matrix]) -> Result<GenModule> {
        let inv: Vec<Matrix> = g.iter().map(Matrix::inverse).collect::<Result<_>>()?;
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(l, row)| {
                row.iter()
                    .enumerate()
                    .map(|(p, m)| {
                        m.as_ref().map(|m| {
                            let q = self.layout.target(l, p).expect("block has target");
                            &(&g[q] * m) * &inv[p]
                        })
                    })
                    .collect()
            })
            .collect();
        GenModule::new(
            self.params.clone(),
            self.layout.clone(),
            self.dims.clone(),
            blocks,
        )
    }

    /// The same blocks read against different parameters.
    pub fn reinterpret(&self, params: Params) -> Result<GenModule> {
        if params.n() != self.n() {
            return Err(Error::Parameter("rank mismatch".into()));
        }
        Ok(GenModule {
            params,
            ..self.clone()
        })
    }

    pub fn to_doc(&self) -> ModuleDoc {
        ModuleDoc::from_source(self, None)
    }

    pub fn from_doc(doc: &ModuleDoc) -> Result<GenModule> {
        let (params, layout, dims, blocks) = doc.decode()?;
        GenModule::new(params, layout, dims, blocks)
    }
}

impl BlockSource for GenModule {
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

pub(crate) fn check_storage(
    params: &Params,
    layout: &Layout,
    dims: &[usize],
    blocks: &[Vec<Option<Matrix>>],
    complete: bool,
) -> Result<()> {
    if params.n() != layout.n() {
        return Err(Error::Parameter(
            "parameter rank differs from layout rank".into(),
        ));
    }
    let npts = layout.support().len();
    if dims.len() != npts || blocks.len() != layout.basis().len() {
        return Err(Error::Dimension("storage does not match the layout".into()));
    }
    for (l, row) in blocks.iter().enumerate() {
        if row.len() != npts {
            return Err(Error::Dimension("storage does not match the layout".into()));
        }
        for (p, m) in row.iter().enumerate() {
            match (layout.target(l, p), m) {
                (Some(q), Some(m)) => {
                    if m.shape() != (dims[q], dims[p]) {
                        return Err(Error::Dimension(format!(
                            "block {} at {:?} has shape {:?}, expected {:?}",
                            layout.basis().name(l),
                            layout.support().point(p),
                            m.shape(),
                            (dims[q], dims[p])
                        )));
                    }
                }
                (Some(_), None) if complete => {
                    return Err(Error::Dimension(format!(
                        "missing block {} at {:?}",
                        layout.basis().name(l),
                        layout.support().point(p)
                    )))
                }
                (None, Some(_)) => {
                    return Err(Error::Dimension(format!(
                        "block {} at {:?} leaves the box",
                        layout.basis().name(l),
                        layout.support().point(p)
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// JSON form shared by complete and partial modules:
/// `{n, a, R, dims: {"b1,b2,...": d}, blocks: [{label, b, matrix}]}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ModuleDoc {
    pub n: usize,
    pub a: Vec<Scalar>,
    #[serde(rename = "R")]
    pub radius: i64,
    pub dims: BTreeMap<String, usize>,
    pub blocks: Vec<BlockDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BlockDoc {
    pub label: String,
    pub b: Vec<i64>,
    pub matrix: Matrix,
}

pub(crate) fn point_key(b: &[i64]) -> String {
    b.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

type Decoded = (Params, Arc<Layout>, Vec<usize>, Vec<Vec<Option<Matrix>>>);

impl ModuleDoc {
    pub(crate) fn from_source(src: &impl BlockSource, labels: Option<&[usize]>) -> ModuleDoc {
        let layout = src.layout();
        let sbox = layout.support();
        let basis = layout.basis();
        let all: Vec<usize> = (0..basis.len()).collect();
        let mut blocks = Vec::new();
        for &l in labels.unwrap_or(&all) {
            for p in 0..sbox.len() {
                if let Some(m) = src.block(l, p) {
                    blocks.push(BlockDoc {
                        label: basis.name(l),
                        b: sbox.point(p).to_vec(),
                        matrix: m.clone(),
                    });
                }
            }
        }
        ModuleDoc {
            n: layout.n(),
            a: src.params().a().to_vec(),
            radius: layout.radius(),
            dims: (0..sbox.len())
                .map(|p| (point_key(sbox.point(p)), src.dim_at(p)))
                .collect(),
            blocks,
        }
    }

    pub(crate) fn decode(&self) -> Result<Decoded> {
        let params = Params::new(self.a.clone())?;
        if params.n() != self.n {
            return Err(Error::Document("length of a differs from n".into()));
        }
        let layout = Layout::new(self.n, self.radius)?;
        let sbox = layout.support();
        let mut dims = vec![None; sbox.len()];
        for (key, &d) in &self.dims {
            let b: Vec<i64> = key
                .split(',')
                .map(|s| s.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Document(format!("bad point key {key:?}")))?;
            let p = sbox
                .index_of(&b)
                .ok_or_else(|| Error::Document(format!("point {key} is outside the box")))?;
            dims[p] = Some(d);
        }
        let dims: Vec<usize> = dims
            .into_iter()
            .enumerate()
            .map(|(p, d)| {
                d.ok_or_else(|| Error::Document(format!("no dimension for {:?}", sbox.point(p))))
            })
            .collect::<Result<_>>()?;
        let mut blocks = vec![vec![None; sbox.len()]; layout.basis().len()];
        for bd in &self.blocks {
            let l = layout.basis().parse_label(&bd.label)?;
            let p = sbox
                .index_of(&bd.b)
                .ok_or_else(|| Error::Document(format!("point {:?} is outside the box", bd.b)))?;
            if blocks[l][p].replace(bd.matrix.clone()).is_some() {
                return Err(Error::Document(format!(
                    "duplicate block {} at {:?}",
                    bd.label, bd.b
                )));
            }
        }
        Ok((params, layout, dims, blocks))
    }
}
