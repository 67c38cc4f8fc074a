use std::collections::HashMap;
use std::sync::Arc;

use crate::error::Result;
use crate::weyl::{SpBasis, StructureConstants};

/// The truncated support: every `b ∈ Z^n` with even coordinate sum and
/// `|b_i| ≤ radius`, in lexicographic order.
#[derive(Debug, Clone)]
pub struct SupportBox {
    n: usize,
    radius: i64,
    points: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

impl SupportBox {
    pub fn new(n: usize, radius: i64) -> SupportBox {
        let mut points = vec![Vec::new()];
        for _ in 0..n {
            points = points
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (-radius..=radius).map(move |c| {
                        let mut q = p.clone();
                        q.push(c);
                        q
                    })
                })
                .collect();
        }
        points.retain(|p| p.iter().sum::<i64>().rem_euclid(2) == 0);
        let index = points
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        SupportBox {
            n,
            radius,
            points,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn point(&self, idx: usize) -> &[i64] {
        &self.points[idx]
    }

    pub fn index_of(&self, b: &[i64]) -> Option<usize> {
        self.index.get(b).copied()
    }

    pub fn origin(&self) -> usize {
        self.index_of(&vec![0; self.n])
            .expect("origin is in every box")
    }

    /// Index of `b + shift`, when that point lies in the box.
    pub fn shifted(&self, idx: usize, shift: &[i64]) -> Option<usize> {
        let q: Vec<i64> = self.points[idx]
            .iter()
            .zip(shift)
            .map(|(x, s)| x + s)
            .collect();
        self.index_of(&q)
    }
}

/// Everything fixed by `(n, R)`: the basis, its structure constants, the
/// box, and the table of label shifts `target[label][b] = b + wt(label)`.
#[derive(Debug)]
pub struct Layout {
    basis: SpBasis,
    structure: StructureConstants,
    sbox: SupportBox,
    targets: Vec<Vec<Option<usize>>>,
}

impl Layout {
    pub fn new(n: usize, radius: i64) -> Result<Arc<Layout>> {
        let basis = SpBasis::new(n)?;
        let structure = StructureConstants::compute(&basis)?;
        let sbox = SupportBox::new(n, radius);
        let targets = (0..basis.len())
            .map(|l| {
                let w = basis.weight(l);
                (0..sbox.len()).map(|p| sbox.shifted(p, &w)).collect()
            })
            .collect();
        Ok(Arc::new(Layout {
            basis,
            structure,
            sbox,
            targets,
        }))
    }

    pub fn n(&self) -> usize {
        self.basis.n()
    }

    pub fn radius(&self) -> i64 {
        self.sbox.radius()
    }

    pub fn basis(&self) -> &SpBasis {
        &self.basis
    }

    pub fn structure(&self) -> &StructureConstants {
        &self.structure
    }

    pub fn support(&self) -> &SupportBox {
        &self.sbox
    }

    /// `b + wt(label)` when inside the box.
    pub fn target(&self, label: usize, point: usize) -> Option<usize> {
        self.targets[label][point]
    }

    pub fn same_shape(&self, other: &Layout) -> bool {
        self.n() == other.n() && self.radius() == other.radius()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn box_membership() {
        let b = SupportBox::new(2, 4);
        assert_eq!(b.len(), 41);
        assert!(b.points().iter().all(|p| p.iter().sum::<i64>() % 2 == 0));
        assert!(b.index_of(&[1, 0]).is_none());
        assert!(b.index_of(&[4, -4]).is_some());
        let b3 = SupportBox::new(3, 3);
        assert_eq!(b3.len(), 171);
    }

    #[test]
    fn shifts_stay_in_the_lattice() {
        let layout = Layout::new(2, 2).unwrap();
        let sbox = layout.support();
        for l in 0..layout.basis().len() {
            for p in 0..sbox.len() {
                if let Some(q) = layout.target(l, p) {
                    let diff: Vec<i64> = sbox
                        .point(q)
                        .iter()
                        .zip(sbox.point(p))
                        .map(|(x, y)| x - y)
                        .collect();
                    assert_eq!(diff, layout.basis().weight(l));
                }
            }
        }
    }
}
