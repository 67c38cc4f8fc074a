//! The basis of `sp_2n` and its realization by differential operators.

use std::collections::HashMap;
use std::fmt;

use super::WeylElement;
use crate::error::{Error, Result};
use crate::linalg::Scalar;

/// A basis element of `sp_2n`: a root vector `X_α` (α as an integer vector
/// in the ε-basis) or one of the Cartan elements `H_{2ε1}` (`H(0)`) and
/// `H_{ε_{i+1}-ε_i}` (`H(i)`, `1 ≤ i < n`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    X(Vec<i64>),
    H(usize),
}

/// The shape of a root, zero-indexed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootKind {
    /// `ε_i - ε_j`
    Diff(usize, usize),
    /// `ε_i + ε_j`, including `2ε_i` when `i = j`
    Sum(usize, usize),
    /// `-ε_i - ε_j`, including `-2ε_i` when `i = j`
    NegSum(usize, usize),
}

impl Label {
    /// Classifies a root label; `None` for Cartan elements.
    pub fn root_kind(&self) -> Option<RootKind> {
        let Label::X(root) = self else {
            return None;
        };
        let pos: Vec<usize> = root
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i, c.max(0) as usize))
            .collect();
        let neg: Vec<usize> = root
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| std::iter::repeat_n(i, (-c).max(0) as usize))
            .collect();
        match (pos.as_slice(), neg.as_slice()) {
            ([i], [j]) => Some(RootKind::Diff(*i, *j)),
            ([i, j], []) => Some(RootKind::Sum(*i, *j)),
            ([], [i, j]) => Some(RootKind::NegSum(*i, *j)),
            _ => None,
        }
    }

    fn unit(n: usize, entries: &[(usize, i64)]) -> Vec<i64> {
        let mut v = vec![0; n];
        for &(i, c) in entries {
            v[i] += c;
        }
        v
    }

    /// `X_{ε_i - ε_j}`, zero-indexed, `i ≠ j`.
    pub fn x_diff(n: usize, i: usize, j: usize) -> Label {
        Label::X(Label::unit(n, &[(i, 1), (j, -1)]))
    }

    /// `X_{ε_i + ε_j}`; `i = j` gives `X_{2ε_i}`.
    pub fn x_sum(n: usize, i: usize, j: usize) -> Label {
        Label::X(Label::unit(n, &[(i, 1), (j, 1)]))
    }

    /// `X_{-ε_i - ε_j}`; `i = j` gives `X_{-2ε_i}`.
    pub fn x_neg_sum(n: usize, i: usize, j: usize) -> Label {
        Label::X(Label::unit(n, &[(i, -1), (j, -1)]))
    }

    pub fn is_cartan(&self) -> bool {
        matches!(self, Label::H(_))
    }

    /// The weight of the label in the ε-basis (zero for Cartan elements).
    pub fn weight(&self, n: usize) -> Vec<i64> {
        match self {
            Label::X(r) => r.clone(),
            Label::H(_) => vec![0; n],
        }
    }

    /// The root naming the label, for display: `α` for `X_α`, and the simple
    /// root attached to a Cartan element.
    fn root_name(&self, n: usize) -> Vec<i64> {
        match self {
            Label::X(r) => r.clone(),
            Label::H(0) => Label::unit(n, &[(0, 2)]),
            Label::H(i) => Label::unit(n, &[(*i, 1), (i - 1, -1)]),
        }
    }

    fn format_root(root: &[i64]) -> String {
        let term = |c: i64, i: usize| -> String {
            match c.abs() {
                1 => format!("e{}", i + 1),
                a => format!("{a}e{}", i + 1),
            }
        };
        let mut s = String::new();
        for (i, &c) in root.iter().enumerate().filter(|(_, c)| **c > 0) {
            if !s.is_empty() {
                s.push('+');
            }
            s.push_str(&term(c, i));
        }
        for (i, &c) in root.iter().enumerate().filter(|(_, c)| **c < 0) {
            s.push('-');
            s.push_str(&term(c, i));
        }
        s
    }

    fn parse_root(text: &str) -> Option<Vec<(usize, i64)>> {
        let mut out = Vec::new();
        let mut rest = text.trim();
        let mut sign = 1;
        while !rest.is_empty() {
            if let Some(r) = rest.strip_prefix('-') {
                sign = -1;
                rest = r;
            } else if let Some(r) = rest.strip_prefix('+') {
                sign = 1;
                rest = r;
            }
            let e = rest.find('e')?;
            let coeff: i64 = if e == 0 { 1 } else { rest[..e].parse().ok()? };
            let after = &rest[e + 1..];
            let end = after.find(['+', '-']).unwrap_or(after.len());
            let idx: usize = after[..end].parse().ok()?;
            if idx == 0 {
                return None;
            }
            out.push((idx - 1, sign * coeff));
            rest = &after[end..];
            sign = 1;
        }
        Some(out)
    }

    /// Parses `X[e1-e2]`, `X[2e1]`, `H[2e1]`, `H[e2-e1]`, ... for rank `n`.
    pub fn parse(text: &str, n: usize) -> Result<Label> {
        let bad = || Error::Document(format!("unrecognized label {text:?}"));
        let (kind, inner) = text
            .strip_suffix(']')
            .and_then(|t| t.split_once('['))
            .ok_or_else(bad)?;
        let entries = Label::parse_root(inner).ok_or_else(bad)?;
        if entries.iter().any(|&(i, _)| i >= n) {
            return Err(bad());
        }
        let root = Label::unit(n, &entries);
        match kind {
            "X" => Ok(Label::X(root)),
            "H" => (0..n)
                .map(Label::H)
                .find(|h| h.root_name(n) == root)
                .ok_or_else(bad),
            _ => Err(bad()),
        }
    }

    pub fn display(&self, n: usize) -> String {
        let kind = if self.is_cartan() { "H" } else { "X" };
        format!("{kind}[{}]", Label::format_root(&self.root_name(n)))
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::X(r) => write!(f, "X{r:?}"),
            Label::H(i) => write!(f, "H({i})"),
        }
    }
}

/// The basis of `sp_2n` with the fixed order used everywhere: for each pair
/// `i < j` the four roots `ε_i-ε_j, ε_j-ε_i, ε_i+ε_j, -ε_i-ε_j`, then
/// `±2ε_i` for each `i`, then the Cartan elements `H(0), ..., H(n-1)`.
#[derive(Debug, Clone)]
pub struct SpBasis {
    n: usize,
    labels: Vec<Label>,
    images: Vec<WeylElement>,
    index: HashMap<Label, usize>,
}

impl SpBasis {
    pub fn new(n: usize) -> Result<SpBasis> {
        if n < 2 {
            return Err(Error::Parameter(format!(
                "rank must be at least 2, got {n}"
            )));
        }
        let mut labels = Vec::with_capacity(2 * n * n + n);
        for i in 0..n {
            for j in i + 1..n {
                labels.push(Label::x_diff(n, i, j));
                labels.push(Label::x_diff(n, j, i));
                labels.push(Label::x_sum(n, i, j));
                labels.push(Label::x_neg_sum(n, i, j));
            }
        }
        for i in 0..n {
            labels.push(Label::x_sum(n, i, i));
            labels.push(Label::x_neg_sum(n, i, i));
        }
        labels.extend((0..n).map(Label::H));
        let images = labels.iter().map(|l| image(n, l)).collect();
        let index = labels
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, l)| (l, i))
            .collect();
        Ok(SpBasis {
            n,
            labels,
            images,
            index,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, idx: usize) -> &Label {
        &self.labels[idx]
    }

    pub fn image(&self, idx: usize) -> &WeylElement {
        &self.images[idx]
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Index of a label that is known to be in the basis.
    pub fn idx(&self, label: &Label) -> usize {
        self.index_of(label)
            .unwrap_or_else(|| panic!("{label:?} is not a basis label for n = {}", self.n))
    }

    pub fn weight(&self, idx: usize) -> Vec<i64> {
        self.labels[idx].weight(self.n)
    }

    pub fn name(&self, idx: usize) -> String {
        self.labels[idx].display(self.n)
    }

    pub fn parse_label(&self, text: &str) -> Result<usize> {
        let label = Label::parse(text, self.n)?;
        self.index_of(&label)
            .ok_or_else(|| Error::Document(format!("{text} is not a basis label")))
    }

    pub fn cartan_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.labels[i].is_cartan())
            .collect()
    }

    pub fn root_indices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| !self.labels[i].is_cartan())
            .collect()
    }
}

/// The differential operator realizing a basis label.
fn image(n: usize, label: &Label) -> WeylElement {
    let one = Scalar::one();
    let mono = |x: Vec<u32>, d: Vec<u32>| WeylElement::monomial(n, x, d, one.clone());
    let euler = |i: usize| {
        let mut e = vec![0; n];
        e[i] = 1;
        mono(e.clone(), e)
    };
    match label {
        Label::H(0) => euler(0)
            .add(&WeylElement::constant(n, Scalar::half()))
            .expect("same rank"),
        Label::H(i) => euler(*i).sub(&euler(i - 1)).expect("same rank"),
        Label::X(root) => {
            let x: Vec<u32> = root.iter().map(|&c| c.max(0) as u32).collect();
            let d: Vec<u32> = root.iter().map(|&c| (-c).max(0) as u32).collect();
            mono(x, d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension() {
        for n in 2..6 {
            assert_eq!(SpBasis::new(n).unwrap().len(), 2 * n * n + n);
        }
        assert_eq!(SpBasis::new(3).unwrap().len(), 21);
        assert!(matches!(SpBasis::new(1), Err(Error::Parameter(_))));
    }

    #[test]
    fn images_of_named_labels() {
        let b = SpBasis::new(2).unwrap();
        let h = b.image(b.idx(&Label::H(0)));
        let expect = WeylElement::monomial(2, vec![1, 0], vec![1, 0], Scalar::one())
            .add(&WeylElement::constant(2, Scalar::half()))
            .unwrap();
        assert_eq!(h, &expect);
        let x = b.image(b.idx(&Label::x_diff(2, 0, 1)));
        assert_eq!(
            x,
            &WeylElement::monomial(2, vec![1, 0], vec![0, 1], Scalar::one())
        );
        assert_eq!(
            b.image(b.idx(&Label::x_sum(2, 1, 1))),
            &WeylElement::monomial(2, vec![0, 2], vec![0, 0], Scalar::one())
        );
        assert_eq!(
            b.image(b.idx(&Label::x_neg_sum(2, 0, 0))),
            &WeylElement::monomial(2, vec![0, 0], vec![2, 0], Scalar::one())
        );
    }

    #[test]
    fn root_kinds() {
        assert_eq!(
            Label::x_diff(3, 2, 0).root_kind(),
            Some(RootKind::Diff(2, 0))
        );
        assert_eq!(Label::x_sum(3, 1, 1).root_kind(), Some(RootKind::Sum(1, 1)));
        assert_eq!(
            Label::x_neg_sum(3, 0, 2).root_kind(),
            Some(RootKind::NegSum(0, 2))
        );
        assert_eq!(Label::H(1).root_kind(), None);
    }

    #[test]
    fn label_names_round_trip() {
        for n in 2..5 {
            let b = SpBasis::new(n).unwrap();
            for i in 0..b.len() {
                let name = b.name(i);
                assert_eq!(b.parse_label(&name).unwrap(), i, "{name}");
            }
        }
        let b = SpBasis::new(2).unwrap();
        assert_eq!(b.name(b.idx(&Label::H(1))), "H[e2-e1]");
        assert_eq!(b.name(b.idx(&Label::x_sum(2, 0, 0))), "X[2e1]");
        assert_eq!(b.name(b.idx(&Label::x_neg_sum(2, 0, 1))), "X[-e1-e2]");
        assert!(b.parse_label("Y[e1]").is_err());
        assert!(b.parse_label("X[e3]").is_err());
    }
}
