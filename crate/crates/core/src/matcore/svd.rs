//! Singular value decomposition with a consistency check.
//!
//! The implicit-shift iteration can stop with singular values that do not
//! reconstruct the input when a singular value sits near machine epsilon and
//! the deflation threshold is tight. Every decomposition here is checked
//! against `Σσ² = ‖M‖²_F` and, when both singular-vector sets are present,
//! against `UΣV* = M`. Looser deflation thresholds and the adjoint problem
//! are tried first, then faer's divide-and-conquer SVD.

use nalgebra::{DMatrix, DVector, Dyn, SVD};

use super::matrix::C64;
use crate::error::{Error, Result};

/// All far below the `1e-9` relative rank cutoff used downstream.
const DEFLATION_EPS: [f64; 3] = [5.0 * f64::EPSILON, 1e-14, 1e-12];
const CONSISTENCY_TOL: f64 = 1e-10;

pub type ComplexSvd = SVD<C64, Dyn, Dyn>;

fn consistent(m: &DMatrix<C64>, svd: &ComplexSvd) -> bool {
    let norm = m.norm();
    let energy = svd.singular_values.iter().map(|s| s * s).sum::<f64>().sqrt();
    if (energy - norm).abs() > CONSISTENCY_TOL * norm.max(f64::MIN_POSITIVE) {
        return false;
    }
    match (&svd.u, &svd.v_t) {
        (Some(_), Some(_)) => svd
            .clone()
            .recompose()
            .map(|r| (r - m).norm() <= CONSISTENCY_TOL * norm.max(1.0))
            .unwrap_or(false),
        _ => true,
    }
}

fn attempt(m: &DMatrix<C64>, u: bool, v: bool, eps: f64) -> Option<ComplexSvd> {
    SVD::try_new(m.clone(), u, v, eps, 0).filter(|svd| consistent(m, svd))
}

/// SVD of `m`, verified; falls back to decomposing `m*` and swapping factors.
pub fn checked_svd(m: &DMatrix<C64>, compute_u: bool, compute_v: bool) -> Result<ComplexSvd> {
    let adjoint = m.adjoint();
    for eps in DEFLATION_EPS {
        if let Some(svd) = attempt(m, compute_u, compute_v, eps) {
            return Ok(svd);
        }
        if let Some(t) = attempt(&adjoint, compute_v, compute_u, eps) {
            return Ok(SVD {
                u: t.v_t.map(|v| v.adjoint()),
                v_t: t.u.map(|u| u.adjoint()),
                singular_values: t.singular_values,
            });
        }
    }
    if let Some(svd) = faer_svd(m, compute_u, compute_v).filter(|svd| consistent(m, svd)) {
        return Ok(svd);
    }
    Err(Error::NumericalFailure(format!(
        "SVD of a {}×{} matrix failed its consistency check",
        m.nrows(),
        m.ncols()
    )))
}

fn faer_svd(m: &DMatrix<C64>, compute_u: bool, compute_v: bool) -> Option<ComplexSvd> {
    let (rows, cols) = m.shape();
    let k = rows.min(cols);
    let f = faer::Mat::<C64>::from_fn(rows, cols, |i, j| m[(i, j)]);
    let svd = f.thin_svd().ok()?;
    let (u, s, v) = (svd.U(), svd.S().column_vector(), svd.V());
    Some(SVD {
        u: compute_u.then(|| DMatrix::from_fn(rows, k, |i, j| u[(i, j)])),
        v_t: compute_v.then(|| DMatrix::from_fn(k, cols, |i, j| v[(j, i)].conj())),
        singular_values: DVector::from_fn(k, |i, _| s[i].re),
    })
}
