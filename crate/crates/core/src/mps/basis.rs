//! Particular-solution basis: Fourier–Bessel functions about the centroid and
//! second-kind Bessel "charges" clustered outside each vertex.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Triangle;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisSpec {
    /// Charges per vertex.
    pub n_c: usize,
    /// Clustering rate of the charges towards the vertex.
    pub sigma: f64,
    /// Distance scale of the outermost charge.
    pub ell0: f64,
    /// Highest Fourier–Bessel order about the centroid.
    pub d: usize,
}

impl Default for BasisSpec {
    fn default() -> Self {
        BasisSpec { n_c: 7, sigma: 2.5, ell0: 1.0, d: 10 }
    }
}

impl BasisSpec {
    pub fn size(&self) -> usize {
        9 * self.n_c + 2 * self.d + 1
    }
}

/// Basis geometry for one triangle. Columns are ordered as: for each charge
/// `(Y₀, Y₁ cos θ, Y₁ sin θ)`, then `J₀` and `(J_j cos jθ, J_j sin jθ)` for `j = 1..=d`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Basis {
    pub spec: BasisSpec,
    pub apex: [f64; 2],
    pub charges: Vec<[f64; 2]>,
    pub center: [f64; 2],
}

impl Basis {
    pub fn new(t: &Triangle, spec: BasisSpec) -> Result<Self> {
        let (cx, cy) = t.apex_f64();
        Self::from_apex([cx, cy], spec)
    }

    pub fn from_apex(apex: [f64; 2], spec: BasisSpec) -> Result<Self> {
        if apex[1] <= 0.0 {
            return Err(Error::DegenerateTriangle("apex height is not positive".into()));
        }
        let v = [[0.0, 0.0], [1.0, 0.0], apex];
        let mut charges = Vec::with_capacity(3 * spec.n_c);
        for i in 0..3 {
            let p = v[i];
            let a = v[(i + 1) % 3];
            let b = v[(i + 2) % 3];
            let unit = |q: [f64; 2]| {
                let (dx, dy) = (q[0] - p[0], q[1] - p[1]);
                let n = dx.hypot(dy);
                [dx / n, dy / n]
            };
            let (ua, ub) = (unit(a), unit(b));
            let bis = [ua[0] + ub[0], ua[1] + ub[1]];
            let nb = bis[0].hypot(bis[1]);
            let dir = [-bis[0] / nb, -bis[1] / nb];
            for j in 0..spec.n_c {
                let dist = spec.ell0 * (-spec.sigma * j as f64 / (spec.n_c as f64).sqrt()).exp();
                charges.push([p[0] + dist * dir[0], p[1] + dist * dir[1]]);
            }
        }
        let center = [(1.0 + apex[0]) / 3.0, apex[1] / 3.0];
        let basis = Basis { spec, apex, charges, center };
        basis.check_charges()?;
        Ok(basis)
    }

    fn check_charges(&self) -> Result<()> {
        let [cx, cy] = self.apex;
        for (index, q) in self.charges.iter().enumerate() {
            let (x, y) = (q[0], q[1]);
            let e0 = y;
            let e1 = (cx - 1.0) * y - cy * (x - 1.0);
            let e2 = -cx * (y - cy) + cy * (x - cx);
            if e0 >= 0.0 && e1 >= 0.0 && e2 >= 0.0 {
                return Err(Error::ChargeInsideDomain { index });
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.spec.size()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Writes all basis values at `(x, y)` for wavenumber `k` into `out`.
    pub fn eval_row(&self, x: f64, y: f64, k: f64, out: &mut [f64]) {
        let mut c = 0;
        for q in &self.charges {
            let (dx, dy) = (x - q[0], y - q[1]);
            let r = dx.hypot(dy);
            let y0 = libm::y0(k * r);
            let y1 = libm::y1(k * r);
            out[c] = y0;
            out[c + 1] = y1 * dx / r;
            out[c + 2] = y1 * dy / r;
            c += 3;
        }
        let (dx, dy) = (x - self.center[0], y - self.center[1]);
        let r = dx.hypot(dy);
        let th = dy.atan2(dx);
        out[c] = libm::j0(k * r);
        c += 1;
        for j in 1..=self.spec.d {
            let jj = libm::jn(j as i32, k * r);
            let (s, co) = (j as f64 * th).sin_cos();
            out[c] = jj * co;
            out[c + 1] = jj * s;
            c += 2;
        }
    }

    /// `u(x, y) = Σ c_i φ_i(x, y)` in floating point.
    pub fn eval_sum(&self, coeffs: &[f64], x: f64, y: f64, k: f64) -> f64 {
        let mut row = vec![0.0; self.len()];
        self.eval_row(x, y, k, &mut row);
        row.iter().zip(coeffs).map(|(a, b)| a * b).sum()
    }

    /// `Σ |c_i φ_i(x, y)|`, the scale against which `u` cancels.
    pub fn eval_abs_sum(&self, coeffs: &[f64], x: f64, y: f64, k: f64) -> f64 {
        let mut row = vec![0.0; self.len()];
        self.eval_row(x, y, k, &mut row);
        row.iter().zip(coeffs).map(|(a, b)| (a * b).abs()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_size_and_exterior_charges() {
        let b = Basis::from_apex([0.635, 0.275], BasisSpec::default()).unwrap();
        assert_eq!(b.len(), 84);
        assert_eq!(b.charges.len(), 21);
        // first charge of vertex A lies on the outward bisector at distance ell0
        let q = b.charges[0];
        assert!((q[0].hypot(q[1]) - 1.0).abs() < 1e-14);
        assert!(q[1] < 0.0 || q[0] < 0.0);
    }

    #[test]
    fn row_solves_helmholtz_numerically() {
        let b = Basis::from_apex([0.5, 0.8], BasisSpec { n_c: 2, sigma: 2.5, ell0: 1.0, d: 3 }).unwrap();
        let k = 7.0;
        let h = 1e-3;
        let (x, y) = (0.45, 0.3);
        let n = b.len();
        let mut c = vec![0.0; n];
        let mut e = [vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]];
        b.eval_row(x, y, k, &mut c);
        b.eval_row(x + h, y, k, &mut e[0]);
        b.eval_row(x - h, y, k, &mut e[1]);
        b.eval_row(x, y + h, k, &mut e[2]);
        b.eval_row(x, y - h, k, &mut e[3]);
        for i in 0..n {
            let lap = (e[0][i] + e[1][i] + e[2][i] + e[3][i] - 4.0 * c[i]) / (h * h);
            assert!((lap + k * k * c[i]).abs() < 1e-3 * (1.0 + c[i].abs() * k * k), "column {i}");
        }
    }
}
