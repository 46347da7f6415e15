//! Canonical text rendering for matrices: `[[1, 0], [1/2, -i]]`.
//!
//! Entries use the scalar syntax from [`crate::scalar`]. A matrix with no
//! rows renders as `[]`; a matrix with empty rows renders as `[[], []]`.

use std::fmt;

use crate::matrix::Matrix;
use crate::scalar::{format_scalar, Scalar};

pub fn format_matrix(m: &Matrix<Scalar>) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| {
            let cells: Vec<String> = (0..m.cols())
                .map(|c| format_scalar(m.entry(r, c)))
                .collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

impl fmt::Display for Matrix<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_matrix(self))
    }
}
