//! Dense direct solve and spectral diagnostics.

use nalgebra::{DMatrix, DVector};

use crate::error::{FemError, Result};

/// Pivots smaller than this times `max |A_ij|` are treated as zero.
pub const PIVOT_TOL: f64 = 1e-14;

/// Bound factor for `||Ax - b|| <= RESIDUAL_TOL (||A||_F ||x|| + ||b||)`.
pub const RESIDUAL_TOL: f64 = 1e-10;

/// LU factorization with partial pivoting of a private copy of `matrix`.
pub fn solve_dense(matrix: &DMatrix<f64>, rhs: &DVector<f64>) -> Result<DVector<f64>> {
    let n = matrix.nrows();
    if matrix.ncols() != n {
        return Err(FemError::InvalidInput(format!(
            "matrix must be square, got {}x{}",
            n,
            matrix.ncols()
        )));
    }
    if rhs.len() != n {
        return Err(FemError::LengthMismatch {
            expected: n,
            got: rhs.len(),
        });
    }
    if matrix.iter().any(|v| !v.is_finite()) {
        return Err(FemError::InvalidInput("matrix has non-finite entries".into()));
    }
    let scale = matrix.amax();
    let mut lu = matrix.clone();
    let mut x = rhs.clone();

    for k in 0..n {
        let (p, pivot) = (k..n)
            .map(|i| (i, lu[(i, k)].abs()))
            .fold((k, -1.0), |best, c| if c.1 > best.1 { c } else { best });
        if !(pivot > PIVOT_TOL * scale) {
            return Err(FemError::SingularMatrix { dof: k });
        }
        if p != k {
            lu.swap_rows(p, k);
            x.swap_rows(p, k);
        }
        let d = lu[(k, k)];
        for i in k + 1..n {
            let l = lu[(i, k)] / d;
            if l == 0.0 {
                continue;
            }
            lu[(i, k)] = l;
            for j in k + 1..n {
                lu[(i, j)] -= l * lu[(k, j)];
            }
            x[i] -= l * x[k];
        }
    }
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| lu[(k, j)] * x[j]).sum();
        x[k] = (x[k] - s) / lu[(k, k)];
    }

    let residual = (matrix * &x - rhs).norm();
    let bound = RESIDUAL_TOL * (matrix.norm() * x.norm() + rhs.norm());
    if residual > bound {
        return Err(FemError::InaccurateSolve { residual, bound });
    }
    Ok(x)
}

/// 2-norm condition number `sigma_max / sigma_min`; infinite when singular.
pub fn condition_number(matrix: &DMatrix<f64>) -> f64 {
    if matrix.is_empty() {
        return 1.0;
    }
    let sv = matrix.clone().singular_values();
    let max = sv.max();
    let min = sv.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Smallest real part over the (possibly complex) spectrum.
pub fn min_real_eigenvalue(matrix: &DMatrix<f64>) -> f64 {
    matrix
        .clone()
        .complex_eigenvalues()
        .iter()
        .map(|z| z.re)
        .fold(f64::INFINITY, f64::min)
}
