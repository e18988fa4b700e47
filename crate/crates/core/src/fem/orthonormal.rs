//! High-precision check of the near-orthonormal perturbation bound.
//!
//! For vectors `v_1, …, v_m` in `R^m` with `|⟨v_i, v_j⟩ − δ_ij| ≤ s` and `8ms < 1`,
//! Gram–Schmidt yields an orthonormal family `w_i` with `‖v_i − w_i‖ ≤ √(3s)`.

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Outcome of an exact Gram–Schmidt run.
#[derive(Clone, Debug)]
pub struct GramSchmidtReport {
    /// Upper bound of `max |⟨v_i, v_j⟩ − δ_ij|`.
    pub s: Interval,
    /// Enclosures of `‖v_i − w_i‖`.
    pub deviations: Vec<Interval>,
}

fn dot(a: &[Interval], b: &[Interval]) -> Interval {
    let mut s = Interval::zero(a[0].prec());
    for (x, y) in a.iter().zip(b) {
        s.add_mul(x, y);
    }
    s
}

/// Runs Gram–Schmidt in interval arithmetic on `vectors` (each of length `m`).
pub fn gram_schmidt_deviation(vectors: &[Vec<f64>], prec: u32) -> Result<GramSchmidtReport> {
    let m = vectors.len();
    if m == 0 || vectors.iter().any(|v| v.len() != m) {
        return Err(Error::Precondition("expected m vectors of length m".into()));
    }
    let v: Vec<Vec<Interval>> = vectors.iter().map(|v| v.iter().map(|&x| Interval::point(prec, x)).collect()).collect();
    let mut s = Interval::zero(prec);
    for i in 0..m {
        for j in 0..m {
            let mut g = dot(&v[i], &v[j]);
            if i == j {
                g = &g - &Interval::one(prec);
            }
            s = s.max(&g.abs());
        }
    }
    let s = s.upper_point();
    let ms8 = s.mul_u32(8 * m as u32);
    if !ms8.lt(&Interval::one(prec)) {
        return Err(Error::LemmaPrecondition { value: ms8.hi_f64() });
    }
    let mut w: Vec<Vec<Interval>> = Vec::with_capacity(m);
    let mut deviations = Vec::with_capacity(m);
    for i in 0..m {
        let mut u = v[i].clone();
        for wk in &w {
            let c = dot(&v[i], wk);
            for (ue, we) in u.iter_mut().zip(wk) {
                ue.sub_assign_ref(&(&c * we));
            }
        }
        let norm = dot(&u, &u).sqrt();
        let wi: Vec<Interval> = u.iter().map(|x| x / &norm).collect();
        let diff: Vec<Interval> = v[i].iter().zip(&wi).map(|(a, b)| a - b).collect();
        deviations.push(dot(&diff, &diff).sqrt());
        w.push(wi);
    }
    Ok(GramSchmidtReport { s, deviations })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthonormal_input_has_no_deviation() {
        let v = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let r = gram_schmidt_deviation(&v, 128).unwrap();
        assert!(r.deviations.iter().all(|d| d.hi_f64() < 1e-30));
    }

    #[test]
    fn precondition_rejected() {
        let v = vec![vec![1.0, 0.2], vec![0.0, 1.0]];
        assert!(matches!(gram_schmidt_deviation(&v, 128), Err(Error::LemmaPrecondition { .. })));
    }
}
