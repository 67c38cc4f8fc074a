//! Verification reports shared by every checker.

use serde::Serialize;

use crate::linalg::Matrix;

/// One failed identity: the labels involved, the lattice point (or window
/// index), and both sides when they are matrices.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub label_u: String,
    pub label_v: Option<String>,
    pub b: Vec<i64>,
    pub lhs: Option<Matrix>,
    pub rhs: Option<Matrix>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Violation {
    pub fn pair(
        label_u: String,
        label_v: String,
        b: Vec<i64>,
        lhs: Matrix,
        rhs: Matrix,
    ) -> Violation {
        Violation {
            label_u,
            label_v: Some(label_v),
            b,
            lhs: Some(lhs),
            rhs: Some(rhs),
            reason: None,
        }
    }

    pub fn single(label: String, b: Vec<i64>, reason: impl Into<String>) -> Violation {
        Violation {
            label_u: label,
            label_v: None,
            b,
            lhs: None,
            rhs: None,
            reason: Some(reason.into()),
        }
    }

    pub fn with_lhs(mut self, m: Matrix) -> Violation {
        self.lhs = Some(m);
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Report {
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn record(&mut self, violation: Option<Violation>) {
        self.checks += 1;
        self.violations.extend(violation);
    }

    pub fn merge(&mut self, other: Report) {
        self.checks += other.checks;
        self.violations.extend(other.violations);
    }

    pub fn merged(reports: impl IntoIterator<Item = Report>) -> Report {
        let mut out = Report::new();
        for r in reports {
            out.merge(r);
        }
        out
    }
}
