use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::Triangle;

use super::basis::{Basis, BasisSpec};

pub const BOUNDARY_POINTS_PER_SIDE: usize = 300;
pub const INTERIOR_POINTS: usize = 40;

/// Point layout used for collocation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CollocationLayout {
    pub per_side: usize,
    pub interior: usize,
    pub seed: u64,
}

impl Default for CollocationLayout {
    fn default() -> Self {
        CollocationLayout { per_side: BOUNDARY_POINTS_PER_SIDE, interior: INTERIOR_POINTS, seed: 0 }
    }
}

impl CollocationLayout {
    /// Chebyshev nodes of the first kind on each side, side by side.
    pub fn boundary_points(&self, apex: [f64; 2]) -> Vec<[f64; 2]> {
        let v = [[0.0, 0.0], [1.0, 0.0], apex];
        let n = self.per_side;
        let mut pts = Vec::with_capacity(3 * n);
        for s in 0..3 {
            let (p, q) = (v[s], v[(s + 1) % 3]);
            for i in 1..=n {
                let t = ((2 * i - 1) as f64 * std::f64::consts::PI / (2 * n) as f64).cos();
                let a = 0.5 * (1.0 - t);
                pts.push([p[0] + a * (q[0] - p[0]), p[1] + a * (q[1] - p[1])]);
            }
        }
        pts
    }

    /// Uniform points in the open triangle by rejection sampling from the bounding box.
    pub fn interior_points(&self, apex: [f64; 2]) -> Vec<[f64; 2]> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let (x0, x1) = (apex[0].min(0.0), apex[0].max(1.0));
        let mut pts = Vec::with_capacity(self.interior);
        while pts.len() < self.interior {
            let x = rng.gen_range(x0..x1);
            let y = rng.gen_range(0.0..apex[1]);
            let e1 = (apex[0] - 1.0) * y - apex[1] * (x - 1.0);
            let e2 = -apex[0] * (y - apex[1]) + apex[1] * (x - apex[0]);
            if y > 0.0 && e1 > 0.0 && e2 > 0.0 {
                pts.push([x, y]);
            }
        }
        pts
    }
}

/// Basis values at the boundary points stacked over values at the interior points.
pub fn collocation_matrix(basis: &Basis, layout: &CollocationLayout, lambda: f64) -> Result<DMatrix<f64>> {
    if !(lambda > 0.0) {
        return Err(Error::NonPositive(format!("lambda = {lambda}")));
    }
    let k = lambda.sqrt();
    let mut pts = layout.boundary_points(basis.apex);
    pts.extend(layout.interior_points(basis.apex));
    let n = basis.len();
    let mut a = DMatrix::zeros(pts.len(), n);
    let mut row = vec![0.0; n];
    for (i, p) in pts.iter().enumerate() {
        basis.eval_row(p[0], p[1], k, &mut row);
        for (j, v) in row.iter().enumerate() {
            a[(i, j)] = *v;
        }
    }
    Ok(a)
}

pub fn build_collocation(t: &Triangle, spec: BasisSpec, lambda: f64) -> Result<DMatrix<f64>> {
    let basis = Basis::new(t, spec)?;
    collocation_matrix(&basis, &CollocationLayout::default(), lambda)
}

/// Smallest singular value of the boundary block of an orthonormal basis of
/// the column space, with the corresponding coefficient vector (unit 2-norm).
pub fn subspace_smin(a: &DMatrix<f64>, boundary_rows: usize) -> Result<(f64, Vec<f64>)> {
    let svd = a.clone().svd(true, true);
    let u = svd.u.ok_or_else(|| Error::Numeric("svd without U".into()))?;
    let vt = svd.v_t.ok_or_else(|| Error::Numeric("svd without V".into()))?;
    let smax = svd.singular_values.max();
    if !(smax > 0.0) || !smax.is_finite() {
        return Err(Error::Numeric("collocation matrix is zero or not finite".into()));
    }
    let tol = smax * f64::EPSILON * a.nrows() as f64;
    let keep: Vec<usize> = (0..svd.singular_values.len()).filter(|&i| svd.singular_values[i] > tol).collect();
    let r = keep.len();
    let mut qb = DMatrix::zeros(boundary_rows, r);
    for (c, &i) in keep.iter().enumerate() {
        for row in 0..boundary_rows {
            qb[(row, c)] = u[(row, i)];
        }
    }
    let svd_b = qb.svd(false, true);
    let vbt = svd_b.v_t.ok_or_else(|| Error::Numeric("svd without V".into()))?;
    let (imin, smin) = svd_b
        .singular_values
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, &s)| if s < acc.1 { (i, s) } else { acc });
    // c = V Σ⁻¹ z for the minimizing right vector z of the boundary block
    let n = a.ncols();
    let mut c = vec![0.0; n];
    for (col, &i) in keep.iter().enumerate() {
        let w = vbt[(imin, col)] / svd.singular_values[i];
        for (j, cj) in c.iter_mut().enumerate() {
            *cj += vt[(i, j)] * w;
        }
    }
    let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
    c.iter_mut().for_each(|x| *x /= norm);
    Ok((smin, c))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_and_finiteness() {
        let t = Triangle::from_f64(crate::DEFAULT_PRECISION, 0.635, 0.275).unwrap();
        let a = build_collocation(&t, BasisSpec::default(), 50.0).unwrap();
        assert_eq!((a.nrows(), a.ncols()), (940, 84));
        assert!(a.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn seeded_matrix_is_reproducible() {
        let t = Triangle::from_f64(crate::DEFAULT_PRECISION, 0.3, 0.6).unwrap();
        let a = build_collocation(&t, BasisSpec::default(), 80.0).unwrap();
        let b = build_collocation(&t, BasisSpec::default(), 80.0).unwrap();
        assert!(a.iter().zip(b.iter()).all(|(x, y)| x.to_bits() == y.to_bits()));
    }

    #[test]
    fn interior_points_are_inside() {
        let layout = CollocationLayout::default();
        let t = Triangle::from_f64(crate::DEFAULT_PRECISION, 0.635, 0.275).unwrap();
        for p in layout.interior_points([0.635, 0.275]) {
            assert!(t.contains_point_f64(p[0], p[1]));
        }
    }
}
