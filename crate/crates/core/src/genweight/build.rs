//! Builders for `N(a)` and for `F V`.

use std::sync::Arc;

use super::{GenModule, Layout, Params};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, NilpotentFamily, Scalar};
use crate::weyl::{apply_to_monomial, Label, RootKind};

/// The block of `label` at `b` in `F V`, where `ops[i] = T_i + (a_i + b_i) Id`.
fn block_from_ops(label: &Label, ops: &[Matrix]) -> Matrix {
    let dim = ops[0].rows();
    match label {
        Label::H(0) => ops[0].shift(&Scalar::half()),
        Label::H(i) => &ops[*i] - &ops[i - 1],
        Label::X(_) => match label.root_kind().expect("root label") {
            RootKind::Diff(_, j) => ops[j].clone(),
            RootKind::Sum(_, _) => Matrix::identity(dim),
            RootKind::NegSum(i, j) if i == j => &ops[i] * &ops[i].shift_int(-1),
            RootKind::NegSum(i, j) => &ops[i] * &ops[j],
        },
    }
}

fn shifted_ops(params: &Params, family: &NilpotentFamily, b: &[i64]) -> Vec<Matrix> {
    family
        .mats()
        .iter()
        .enumerate()
        .map(|(i, t)| t.shift(&params.exponent(i, b)))
        .collect()
}

/// `N(a)` on the box of radius `radius`: every weight space is one
/// dimensional and the blocks are the scalar coefficients of the monomial
/// action.
pub fn build_n(params: &Params, radius: i64) -> Result<GenModule> {
    let layout = Layout::new(params.n(), radius)?;
    build_n_on(params, &layout)
}

pub fn build_n_on(params: &Params, layout: &Arc<Layout>) -> Result<GenModule> {
    let sbox = layout.support();
    GenModule::from_fn(
        params.clone(),
        layout.clone(),
        vec![1; sbox.len()],
        |l, p| {
            let b = sbox.point(p);
            let ops: Vec<Matrix> = (0..params.n())
                .map(|i| Matrix::scalar(1, params.exponent(i, b)))
                .collect();
            Ok(block_from_ops(layout.basis().label(l), &ops))
        },
    )
}

/// `N(a)` computed by letting the differential operator images act on the
/// monomials `x^{a+b}`.
pub fn build_n_via_weyl(params: &Params, radius: i64) -> Result<GenModule> {
    let layout = Layout::new(params.n(), radius)?;
    let sbox = layout.support();
    GenModule::from_fn(
        params.clone(),
        layout.clone(),
        vec![1; sbox.len()],
        |l, p| {
            let terms = apply_to_monomial(layout.basis().image(l), params.a(), sbox.point(p))?;
            let q = layout.target(l, p).expect("block has target");
            let mut c = Scalar::zero();
            for (pt, s) in terms {
                if pt.as_slice() != sbox.point(q) {
                    return Err(Error::Consistency(format!(
                        "{} sends x^{:?} to x^{pt:?}",
                        layout.basis().name(l),
                        sbox.point(p)
                    )));
                }
                c += &s;
            }
            Ok(Matrix::scalar(1, c))
        },
    )
}

/// `F V`: every weight space is a copy of `V`, with the nilpotent parts
/// `T_i` added to the coefficients of `N(a)`.
pub fn build_f(family: &NilpotentFamily, params: &Params, radius: i64) -> Result<GenModule> {
    let layout = Layout::new(params.n(), radius)?;
    build_f_on(family, params, &layout)
}

pub fn build_f_on(
    family: &NilpotentFamily,
    params: &Params,
    layout: &Arc<Layout>,
) -> Result<GenModule> {
    if family.n() != params.n() {
        return Err(Error::Parameter(format!(
            "family has {} operators, rank is {}",
            family.n(),
            params.n()
        )));
    }
    let family = NilpotentFamily::new(family.mats().to_vec())?;
    let sbox = layout.support();
    GenModule::from_fn(
        params.clone(),
        layout.clone(),
        vec![family.dim(); sbox.len()],
        |l, p| {
            let ops = shifted_ops(params, &family, sbox.point(p));
            Ok(block_from_ops(layout.basis().label(l), &ops))
        },
    )
}
