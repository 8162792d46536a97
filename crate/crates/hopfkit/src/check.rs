//! Violation reports shared by every axiom-checking entry point.
//!
//! A check never stops at the first broken law: it evaluates each axiom as
//! an exact matrix identity and records one witness per violated law, the
//! first differing entry in row-major order, decoded back into the tensor
//! legs of the law's domain and codomain. Reports are therefore
//! deterministic and diffable.

use crate::exactla::{ExactMatrix, TensorShape};
use serde::Serialize;
use std::fmt;

/// One violated law with its witnessing multi-index.
///
/// `indices` lists the domain legs first, then the codomain legs, of the
/// first entry where the two sides of the law differ.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Violation {
    pub law: String,
    pub indices: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "{} at ({})", self.law, idx.join(","))
    }
}

/// Outcome of an invariant suite: empty means every law held exactly.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct CheckReport {
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport::default()
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Compares both sides of a law and records the first differing entry,
    /// with the column decoded over `col_dims` and the row over `row_dims`.
    pub fn expect_identity(
        &mut self,
        law: &str,
        lhs: &ExactMatrix,
        rhs: &ExactMatrix,
        col_dims: &[usize],
        row_dims: &[usize],
    ) {
        assert_eq!(
            (lhs.rows, lhs.cols),
            (rhs.rows, rhs.cols),
            "law {:?} compares maps of different shape",
            law
        );
        if let Some((r, c)) = lhs.first_difference(rhs) {
            let mut indices = TensorShape::new(col_dims.to_vec())
                .unflatten(c)
                .expect("column index in range");
            indices.extend(
                TensorShape::new(row_dims.to_vec())
                    .unflatten(r)
                    .expect("row index in range"),
            );
            self.violations.push(Violation {
                law: law.to_string(),
                indices,
            });
        }
    }

    /// Records a violation that is not an entrywise identity failure
    /// (for example a rank or membership defect).
    pub fn fail(&mut self, law: &str, indices: Vec<usize>) {
        self.violations.push(Violation {
            law: law.to_string(),
            indices,
        });
    }

    /// Merges another report, prefixing its law names.
    pub fn absorb(&mut self, prefix: &str, other: CheckReport) {
        for v in other.violations {
            self.violations.push(Violation {
                law: format!("{}: {}", prefix, v.law),
                indices: v.indices,
            });
        }
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "all laws hold")
        } else {
            for (k, v) in self.violations.iter().enumerate() {
                if k > 0 {
                    writeln!(f)?;
                }
                write!(f, "violated: {}", v)?;
            }
            Ok(())
        }
    }
}
