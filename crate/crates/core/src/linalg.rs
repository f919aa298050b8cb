//! Exact dense linear algebra over the Gaussian rationals: reduced row
//! echelon form with first-nonzero pivoting, particular solutions, and
//! deterministic nullspace bases. Used by the kernel-basis and graded
//! ansatz solvers; matrix sizes stay in the low hundreds.

use crate::scalar::{ec_inv, ec_is_zero, ec_one, ec_zero, ExactComplex};

pub type Matrix = Vec<Vec<ExactComplex>>;

/// In-place reduced row echelon form; returns pivot column per pivot row.
/// Pivot selection is the first row with a nonzero entry in the current
/// column, so the result is deterministic for a given input.
#[allow(clippy::needless_range_loop)] // elimination reads one row while writing another
pub fn rref(mat: &mut Matrix) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !ec_is_zero(&mat[r][col])) else {
            continue;
        };
        mat.swap(row, p);
        let inv = ec_inv(&mat[row][col]).expect("pivot is nonzero");
        for cell in mat[row][col..cols].iter_mut() {
            *cell = cell.clone() * inv.clone();
        }
        for r in 0..rows {
            if r != row && !ec_is_zero(&mat[r][col]) {
                let factor = mat[r][col].clone();
                for c in col..cols {
                    let delta = factor.clone() * mat[row][c].clone();
                    mat[r][c] = mat[r][c].clone() - delta;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

/// Solve `A x = b` exactly. Returns the particular solution with all free
/// variables set to zero, or `None` when the system is inconsistent.
pub fn solve(a: &Matrix, b: &[ExactComplex]) -> Option<Vec<ExactComplex>> {
    let rows = a.len();
    assert_eq!(rows, b.len(), "rhs length mismatch");
    if rows == 0 {
        return Some(Vec::new());
    }
    let cols = a[0].len();
    let mut aug: Matrix = a
        .iter()
        .zip(b.iter())
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    // Inconsistent iff a pivot lands in the augmented column.
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![ec_zero(); cols];
    for (prow, &pcol) in pivots.iter().enumerate() {
        x[pcol] = aug[prow][cols].clone();
    }
    Some(x)
}

/// Deterministic basis of the nullspace of `A` (columns = `cols`).
/// One basis vector per free column, in ascending column order.
pub fn nullspace(a: &Matrix, cols: usize) -> Vec<Vec<ExactComplex>> {
    let mut mat: Matrix = a.to_vec();
    for row in &mat {
        assert_eq!(row.len(), cols, "column count mismatch");
    }
    let pivots = rref(&mut mat);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![ec_zero(); cols];
        v[free] = ec_one();
        for (prow, &pcol) in pivots.iter().enumerate() {
            v[pcol] = -mat[prow][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Rank via row reduction.
pub fn rank(a: &Matrix) -> usize {
    let mut mat = a.to_vec();
    rref(&mut mat).len()
}
