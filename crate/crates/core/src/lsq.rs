//! Deterministic linear least squares via column-equilibrated normal
//! equations.
//!
//! Mixed bases like { F ln F * F^j, F^j } over several decades produce
//! column norms spanning many orders of magnitude; equilibrating columns to
//! unit norm before forming the normal matrix keeps its condition number
//! meaningful and the solve stable. Coefficients are mapped back to the
//! original scaling afterwards.

use nalgebra::{DMatrix, DVector};

use crate::{Error, Result};

/// Solution of an unweighted least-squares problem.
#[derive(Debug, Clone)]
pub struct LsqFit {
    pub coeffs: Vec<f64>,
    /// Largest absolute residual over the sample points.
    pub max_residual: f64,
    /// Residual RMS with the degree-of-freedom correction.
    pub rms_residual: f64,
    /// 2-norm condition number of the equilibrated normal matrix.
    pub condition: f64,
    /// Diagonal of (X^T X)^{-1} in the original column scaling, for
    /// standard-error estimates.
    pub normal_inverse_diag: Vec<f64>,
}

/// Solve min ||X c - y||_2 through the normal equations. Summation order is
/// fixed by the row order of the design matrix, so repeated runs are
/// bit-identical.
pub fn solve_least_squares(design: &DMatrix<f64>, y: &DVector<f64>) -> Result<LsqFit> {
    let rows = design.nrows();
    let cols = design.ncols();
    if rows < cols {
        return Err(Error::RankDeficient {
            cond: f64::INFINITY,
        });
    }

    let mut scales = Vec::with_capacity(cols);
    for j in 0..cols {
        let norm = design.column(j).norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::RankDeficient {
                cond: f64::INFINITY,
            });
        }
        scales.push(norm);
    }
    let mut scaled = design.clone();
    for j in 0..cols {
        let s = scales[j];
        scaled.column_mut(j).apply(|v| *v /= s);
    }

    let normal = scaled.transpose() * &scaled;
    let rhs = scaled.transpose() * y;

    let svd = normal.clone().svd(false, false);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let condition = if smin > 0.0 {
        smax / smin
    } else {
        f64::INFINITY
    };
    if !condition.is_finite() || condition > 1e14 {
        return Err(Error::RankDeficient { cond: condition });
    }

    let lu = normal.clone().lu();
    let scaled_coeffs = lu
        .solve(&rhs)
        .ok_or(Error::RankDeficient { cond: condition })?;
    let inv = lu
        .try_inverse()
        .ok_or(Error::RankDeficient { cond: condition })?;

    let coeffs: Vec<f64> = (0..cols).map(|j| scaled_coeffs[j] / scales[j]).collect();

    let fitted = &scaled * &scaled_coeffs;
    let mut max_residual = 0.0f64;
    let mut sq = 0.0f64;
    for i in 0..rows {
        let r = y[i] - fitted[i];
        max_residual = max_residual.max(r.abs());
        sq += r * r;
    }
    let dof = (rows - cols).max(1) as f64;
    let rms_residual = (sq / dof).sqrt();

    Ok(LsqFit {
        coeffs,
        max_residual,
        rms_residual,
        condition,
        normal_inverse_diag: (0..cols)
            .map(|j| inv[(j, j)] / (scales[j] * scales[j]))
            .collect(),
    })
}
