use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Triangle;

use super::basis::{Basis, BasisSpec};
use super::collocation::{collocation_matrix, subspace_smin, CollocationLayout};

/// Approximate eigenpair from the particular-solution search.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MpsCandidate {
    pub lambda: f64,
    pub coeffs: Vec<f64>,
    pub basis: Basis,
    pub smin: f64,
}

impl MpsCandidate {
    pub fn spec(&self) -> BasisSpec {
        self.basis.spec
    }

    pub fn k(&self) -> f64 {
        self.lambda.sqrt()
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.basis.eval_sum(&self.coeffs, x, y, self.k())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchOptions {
    pub layout: CollocationLayout,
    /// Relative bracket width at which the golden search stops.
    pub tol: f64,
    /// Largest acceptable σ_min at the minimum.
    pub ceiling: f64,
    /// Samples of the coarse scan locating the dip before refinement.
    pub scan: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { layout: CollocationLayout::default(), tol: 1e-13, ceiling: 1e-3, scan: 24 }
    }
}

pub struct SubspaceObjective {
    basis: Basis,
    layout: CollocationLayout,
}

impl SubspaceObjective {
    pub fn new(basis: Basis, layout: CollocationLayout) -> Self {
        SubspaceObjective { basis, layout }
    }

    pub fn smin(&self, lambda: f64) -> Result<(f64, Vec<f64>)> {
        let a = collocation_matrix(&self.basis, &self.layout, lambda)?;
        subspace_smin(&a, 3 * self.layout.per_side)
    }
}

pub fn golden_search(t: &Triangle, bracket: (f64, f64), spec: BasisSpec) -> Result<MpsCandidate> {
    golden_search_with(t, bracket, spec, &SearchOptions::default())
}

/// Coarse scan of the bracket followed by golden-section refinement of the
/// deepest sample's neighbourhood.
pub fn golden_search_with(t: &Triangle, bracket: (f64, f64), spec: BasisSpec, opts: &SearchOptions) -> Result<MpsCandidate> {
    let (lo, hi) = bracket;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::Precondition(format!("bracket ({lo}, {hi}) must be positive and nonempty")));
    }
    let obj = SubspaceObjective::new(Basis::new(t, spec)?, opts.layout);
    let f = |x: f64| obj.smin(x).map(|r| r.0);

    let n = opts.scan.max(3);
    let step = (hi - lo) / (n - 1) as f64;
    let mut best = (0, f64::INFINITY);
    for i in 0..n {
        let v = f(lo + step * i as f64)?;
        if v < best.1 {
            best = (i, v);
        }
    }
    let mut a = lo + step * best.0.saturating_sub(1) as f64;
    let mut b = (lo + step * (best.0 + 1) as f64).min(hi);

    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    while b - a > opts.tol * b {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2)?;
        }
    }
    let lambda = if f1 <= f2 { x1 } else { x2 };
    let (smin, coeffs) = obj.smin(lambda)?;
    if smin > opts.ceiling {
        return Err(Error::NoDip { smin, ceiling: opts.ceiling });
    }
    Ok(MpsCandidate { lambda, coeffs, basis: obj.basis, smin })
}

/// `±5%` window about an estimate, kept clear of neighbouring estimates.
pub fn bracket_around(estimate: f64, neighbours: &[f64]) -> (f64, f64) {
    let mut lo = 0.95 * estimate;
    let mut hi = 1.05 * estimate;
    for &m in neighbours {
        if m < estimate {
            lo = lo.max(0.5 * (m + estimate));
        } else if m > estimate {
            hi = hi.min(0.5 * (m + estimate));
        }
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn right_isosceles_ground_state() {
        let t = Triangle::from_f64(crate::DEFAULT_PRECISION, 0.0, 1.0).unwrap();
        let c = golden_search(&t, (45.0, 55.0), BasisSpec::default()).unwrap();
        let exact = 5.0 * PI * PI;
        assert!((c.lambda - exact).abs() < 1e-9 * exact, "{} vs {exact}", c.lambda);
        assert!(c.smin < 1e-8);
        let norm: f64 = c.coeffs.iter().map(|x| x * x).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bracket_is_clipped_by_neighbours() {
        let (lo, hi) = bracket_around(100.0, &[98.0, 130.0]);
        assert_eq!(lo, 99.0);
        assert_eq!(hi, 105.0);
    }

    #[test]
    fn empty_bracket_rejected() {
        let t = Triangle::from_f64(crate::DEFAULT_PRECISION, 0.0, 1.0).unwrap();
        assert!(golden_search(&t, (50.0, 40.0), BasisSpec::default()).is_err());
    }
}
