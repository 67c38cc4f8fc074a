use super::{casimir_action, tensor_finite, CommutingPair, FiniteSimple, Sl2Module};
use crate::error::Result;
use crate::linalg::{Matrix, Poly, Scalar};
use crate::report::{Report, Violation};

/// The shifts `c` for which `Π (casimir - (P+Q+c)²)` annihilates
/// `C^m ⊗ V̄`.
fn annihilator_shifts(m: usize) -> &'static [i64] {
    match m {
        2 => &[2, 0],
        _ => &[3, 1, -1],
    }
}

/// Checks that the product of shifted squares kills the Casimir on every
/// interior block of `C^m ⊗ M`.
pub fn check_annihilator(m: &Sl2Module, pq: &CommutingPair, size: usize) -> Result<Report> {
    let s = FiniteSimple::new(size)?;
    let t = tensor_finite(m, &s)?;
    let (lo, hi) = t.window();
    let mut report = Report::new();
    for j in lo + 1..hi {
        let c = casimir_action(&t, j)?;
        let mut product = Matrix::identity(c.rows());
        for &shift in annihilator_shifts(size) {
            let target = pq.shifted_sum_squared(shift).block_diag_repeat(size);
            product = &product * &(&c - &target);
        }
        report.record((!product.is_zero()).then(|| {
            let zero = Matrix::zero(product.rows(), product.cols());
            Violation::pair(
                format!("casimir(C{size}⊗V)"),
                "annihilator".into(),
                vec![j],
                product,
                zero,
            )
        }));
    }
    Ok(report)
}

/// The Casimir of `C² ⊗ V̄` on `W^(0)` written in terms of `P` and `Q`.
pub fn g_matrix(pq: &CommutingPair) -> Matrix {
    let (p, q) = (pq.p(), pq.q());
    let four = Scalar::from_int(4);
    let base = (q - p).shift_int(2).pow(2);
    let g11 = &base + &(&q.shift_int(1) * p).scale(&four);
    let g12 = q.shift_int(1).scale(&four);
    let g21 = p.scale(&four);
    let g22 = (&base + &(&q.shift_int(2) * &p.shift_int(-1)).scale(&four)).shift_int(4);
    Matrix::from_blocks(&[vec![g11, g12], vec![g21, g22]]).expect("square blocks")
}

/// `(G - (P+Q+2)²)(G - (P+Q)²) = 0` with block-diagonal shifts, and
/// `χ_G = χ_{(P+Q+2)²} · χ_{(P+Q)²}`.
pub fn g_charpoly_check(pq: &CommutingPair) -> Report {
    let g = g_matrix(pq);
    let s1 = pq.shifted_sum_squared(2);
    let s2 = pq.shifted_sum_squared(0);
    let mut report = Report::new();
    let product = &(&g - &s1.block_diag_repeat(2)) * &(&g - &s2.block_diag_repeat(2));
    report.record((!product.is_zero()).then(|| {
        let zero = Matrix::zero(product.rows(), product.cols());
        Violation::pair("G".into(), "factorization".into(), vec![0], product, zero)
    }));
    let chi_g = g.charpoly().expect("square");
    let expected = s1
        .charpoly()
        .expect("square")
        .mul(&s2.charpoly().expect("square"));
    report.record((chi_g != expected).then(|| {
        Violation::single(
            "G".into(),
            vec![0],
            format!("characteristic polynomial {chi_g} differs from {expected}"),
        )
    }));
    report
}

/// The characteristic polynomial of `G`.
pub fn g_charpoly(pq: &CommutingPair) -> Poly {
    g_matrix(pq).charpoly().expect("square")
}

/// Compares the Casimir spectra of `C² ⊗ C² ⊗ M` at `j` with those of
/// `C³ ⊗ M` at `j` together with `M` at `j + 1`, reflecting
/// `C² ⊗ C² ≅ C³ ⊕ C`.
pub fn check_double_tensor(m: &Sl2Module) -> Result<Report> {
    let c2 = FiniteSimple::new(2)?;
    let twice = tensor_finite(&tensor_finite(m, &c2)?, &c2)?;
    let three = tensor_finite(m, &FiniteSimple::new(3)?)?;
    let (lo, hi) = twice.window();
    let mut report = Report::new();
    for j in lo + 1..hi {
        if !m.contains(j + 2) || !m.contains(j) {
            continue;
        }
        let lhs = casimir_action(&twice, j)?.charpoly()?;
        let rhs = casimir_action(&three, j)?
            .charpoly()?
            .mul(&casimir_action(m, j + 1)?.charpoly()?);
        report.record((lhs != rhs).then(|| {
            Violation::single(
                "C2⊗C2⊗V".into(),
                vec![j],
                format!("casimir spectrum {lhs} differs from {rhs}"),
            )
        }));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::build_vbar;

    #[test]
    fn scalar_g() {
        assert_eq!(
            g_charpoly(&CommutingPair::scalars(0, 0)),
            Poly::from_ints(&[0, -4, 1])
        );
        assert_eq!(
            g_charpoly(&CommutingPair::scalars(1, 0)),
            Poly::from_ints(&[9, -10, 1])
        );
        assert!(g_charpoly_check(&CommutingPair::scalars(2, -1)).passed());
    }

    #[test]
    fn g_is_the_tensor_casimir() {
        let pq = CommutingPair::new(
            Matrix::from_ints(&[&[1, 1], &[0, 1]]),
            Matrix::from_ints(&[&[2, 3], &[0, 2]]),
        )
        .unwrap();
        let v = build_vbar(&pq, 3).unwrap();
        let t = tensor_finite(&v, &FiniteSimple::new(2).unwrap()).unwrap();
        assert_eq!(casimir_action(&t, 0).unwrap(), g_matrix(&pq));
    }

    #[test]
    fn annihilators_and_faults() {
        let pq = CommutingPair::scalars(0, 0);
        let v = build_vbar(&pq, 3).unwrap();
        for m in 2..=3 {
            let r = check_annihilator(&v, &pq, m).unwrap();
            assert!(r.passed() && r.checks > 0);
        }
        assert!(check_double_tensor(&v).unwrap().passed());
        let bad = v.perturb_e(0).unwrap();
        let r = check_annihilator(&bad, &pq, 2).unwrap();
        assert!(!r.passed());
    }
}
