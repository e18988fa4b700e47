//! Floating-point linear algebra with rigorous error bounds.
//!
//! Rounding-to-nearest errors are bounded by the usual `γ_n = nu/(1 − nu)`
//! estimates; every bound is pushed one ulp upward after each operation.

use nalgebra::{DMatrix, DVector};

use super::mesh::DiscreteOperator;
use crate::error::{Error, Result};

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

pub(crate) fn gamma(n: usize) -> f64 {
    let nu = n as f64 * UNIT_ROUNDOFF;
    (nu / (1.0 - nu)).next_up().next_up()
}

#[inline]
pub(crate) fn add_up(a: f64, b: f64) -> f64 {
    (a + b).next_up()
}

#[inline]
pub(crate) fn mul_up(a: f64, b: f64) -> f64 {
    (a * b).next_up()
}

#[inline]
pub(crate) fn sqrt_up(a: f64) -> f64 {
    a.max(0.0).sqrt().next_up()
}

/// Upper bound of the Euclidean norm.
pub(crate) fn norm_up(v: impl IntoIterator<Item = f64>) -> f64 {
    let mut s = 0.0f64;
    for x in v {
        s = add_up(s, mul_up(x.abs(), x.abs()));
    }
    sqrt_up(s)
}

/// Lower bound of the Euclidean norm.
pub(crate) fn norm_down(v: impl IntoIterator<Item = f64>) -> f64 {
    let mut s = 0.0f64;
    for x in v {
        s = (s + (x * x).next_down()).next_down().max(0.0);
    }
    s.sqrt().next_down().max(0.0)
}

/// Non-rigorous eigendecomposition of the midpoint matrix, ascending.
pub fn approx_eigenbasis(m: &DiscreteOperator) -> Result<(DMatrix<f64>, Vec<f64>)> {
    let dense = m.mid_dense();
    dense_eigenbasis(dense)
}

pub(crate) fn dense_eigenbasis(dense: DMatrix<f64>) -> Result<(DMatrix<f64>, Vec<f64>)> {
    let n = dense.nrows();
    if dense.iter().any(|v| !v.is_finite()) {
        return Err(Error::Numeric("matrix has non-finite entries".into()));
    }
    let eig = dense.symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let mut q = DMatrix::zeros(n, n);
    let mut vals = Vec::with_capacity(n);
    for (dst, &src) in order.iter().enumerate() {
        q.set_column(dst, &eig.eigenvectors.column(src));
        vals.push(eig.eigenvalues[src]);
    }
    Ok((q, vals))
}

/// Rigorous upper bound of `max_ij |⟨v_i, v_j⟩ − δ_ij|` over the columns of `q`.
///
/// The matrix is split as `Q = Q₁ + Q₂` with `Q₁` rounded to a grid coarse enough
/// that `Q₁ᵀQ₁` is computed exactly by any summation order; only the small cross
/// terms carry rounding error.
pub fn orthogonality_defect(q: &DMatrix<f64>) -> f64 {
    let n = q.nrows();
    let m = q.ncols();
    let log_n = (n.max(2) as f64).log2().ceil() as i32;
    let mag = q.iter().fold(0.0f64, |a, &b| a.max(b.abs())).max(f64::MIN_POSITIVE);
    let e = mag.log2().ceil() as i32; // entries < 2^e
    let beta = (53 - log_n) / 2 - e;
    let scale = 2f64.powi(beta);
    let q1 = q.map(|x| (x * scale).round() / scale);
    let q2 = q - &q1;
    let g1 = q1.tr_mul(&q1);
    let x = q1.tr_mul(&q2);
    let y = q2.tr_mul(&q2);
    let n1: Vec<f64> = (0..m).map(|j| norm_up(q1.column(j).iter().copied())).collect();
    let n2: Vec<f64> = (0..m).map(|j| norm_up(q2.column(j).iter().copied())).collect();
    let g = gamma(n);
    let mut s = 0.0f64;
    for j in 0..m {
        for i in 0..m {
            let total = g1[(i, j)] + x[(i, j)] + x[(j, i)] + y[(i, j)];
            let dev = if i == j { (total - 1.0).abs() } else { total.abs() };
            // rounding of the three additions and of the cross-term products
            let mut err = mul_up(
                4.0 * UNIT_ROUNDOFF,
                add_up(add_up(g1[(i, j)].abs(), x[(i, j)].abs()), add_up(x[(j, i)].abs(), y[(i, j)].abs())),
            );
            let cross = add_up(add_up(mul_up(n1[i], n2[j]), mul_up(n2[i], n1[j])), mul_up(n2[i], n2[j]));
            err = add_up(err, mul_up(g, cross));
            // the subtraction of 1 is exact near 1; otherwise allow one rounding
            let dev = if i == j { add_up(dev, mul_up(UNIT_ROUNDOFF, dev)) } else { dev };
            s = s.max(add_up(dev, err));
        }
    }
    s
}

/// Products needed by the separation step, with error bounds.
pub struct ProjectedOperator {
    /// `D̃ = QᵀMQ` computed in floating point (midpoint matrix).
    pub d: DMatrix<f64>,
    /// Entrywise bound on `|D̃ − v_iᵀ M v_j|` valid for every `M` in the interval matrix.
    pub d_err: DMatrix<f64>,
    /// Upper bounds of `‖M v_j‖`.
    pub mv_norm: Vec<f64>,
    /// Upper bound of `‖M‖_F`.
    pub frobenius: f64,
}

/// Computes `W = M Q` with per-entry error bounds, and `D̃ = Qᵀ W`.
pub fn project(m: &DiscreteOperator, q: &DMatrix<f64>) -> ProjectedOperator {
    let n = m.dim();
    let k = q.ncols();
    let mut w = DMatrix::zeros(n, k);
    let mut w_err = DMatrix::zeros(n, k);
    let max_row = m.rows().iter().map(|r| r.len()).max().unwrap_or(1);
    let g_row = gamma(max_row);
    let mut frob = 0.0f64;
    for (i, row) in m.rows().iter().enumerate() {
        let entries: Vec<(usize, f64, f64)> = row
            .iter()
            .map(|&(j, lo, hi)| {
                let (mid, rad) = DiscreteOperator::mid_rad(lo, hi);
                (j, mid, rad)
            })
            .collect();
        for &(_, mid, rad) in &entries {
            let a = add_up(mid.abs(), rad);
            frob = add_up(frob, mul_up(a, a));
        }
        for c in 0..k {
            let mut s = 0.0;
            let mut abs_sum = 0.0;
            let mut rad_sum = 0.0;
            for &(j, mid, rad) in &entries {
                let v = q[(j, c)];
                s += mid * v;
                abs_sum = add_up(abs_sum, mul_up(mid.abs(), v.abs()));
                rad_sum = add_up(rad_sum, mul_up(rad, v.abs()));
            }
            w[(i, c)] = s;
            w_err[(i, c)] = add_up(mul_up(g_row, abs_sum), rad_sum);
        }
    }
    let frobenius = sqrt_up(frob);
    let d = q.tr_mul(&w);
    let qn: Vec<f64> = (0..k).map(|j| norm_up(q.column(j).iter().copied())).collect();
    let wn: Vec<f64> = (0..k).map(|j| norm_up(w.column(j).iter().copied())).collect();
    let en: Vec<f64> = (0..k).map(|j| norm_up(w_err.column(j).iter().copied())).collect();
    let g = gamma(n);
    let mut d_err = DMatrix::zeros(k, k);
    for j in 0..k {
        for i in 0..k {
            d_err[(i, j)] = add_up(mul_up(g, mul_up(qn[i], wn[j])), mul_up(qn[i], en[j]));
        }
    }
    let mv_norm = (0..k).map(|j| add_up(mul_up(wn[j], 1.0 + g), en[j])).collect();
    ProjectedOperator { d, d_err, mv_norm, frobenius }
}

/// Upper bound of `‖M u − λ u‖` over the interval matrix, and a lower bound of `‖u‖`.
pub fn residual_bounds(m: &DiscreteOperator, lambda: f64, u: &DVector<f64>) -> (f64, f64) {
    let mut sq = 0.0f64;
    for (i, row) in m.rows().iter().enumerate() {
        let mut s = -lambda * u[i];
        let mut abs_sum = (lambda * u[i]).abs().next_up();
        let mut rad_sum = 0.0;
        for &(j, lo, hi) in row {
            let (mid, rad) = DiscreteOperator::mid_rad(lo, hi);
            s += mid * u[j];
            abs_sum = add_up(abs_sum, mul_up(mid.abs(), u[j].abs()));
            rad_sum = add_up(rad_sum, mul_up(rad, u[j].abs()));
        }
        let g = gamma(row.len() + 2);
        let bound = add_up(add_up(s.abs(), mul_up(g, abs_sum)), rad_sum);
        sq = add_up(sq, mul_up(bound, bound));
    }
    (sqrt_up(sq), norm_down(u.iter().copied()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_zero_defect() {
        let q = DMatrix::<f64>::identity(5, 5);
        assert!(orthogonality_defect(&q) < 1e-15);
    }

    #[test]
    fn defect_detects_perturbation() {
        let mut q = DMatrix::<f64>::identity(4, 4);
        q[(0, 1)] = 1e-6;
        let s = orthogonality_defect(&q);
        assert!(s >= 1e-6 && s < 1.1e-6);
    }

    #[test]
    fn eigenbasis_residual() {
        let n = 50;
        let a = DMatrix::from_fn(n, n, |i, j| ((i * 7 + j * 7 + i * j) % 13) as f64 / 13.0);
        let s = &a + a.transpose();
        let (q, vals) = dense_eigenbasis(s.clone()).unwrap();
        let r = &s * &q - &q * DMatrix::from_diagonal(&DVector::from_vec(vals.clone()));
        assert!(r.norm() < 1e-10);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
    }
}
