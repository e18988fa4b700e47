//! First pass: a certified lower bound for `λ_{k+1}` from a nonconforming
//! finite-element discretization.
//!
//! The discrete operator is diagonalized in floating point, the approximate
//! eigenbasis is shown to be close to an orthonormal one, and grouped
//! Gershgorin disks of the projected operator separate the lowest `k`
//! discrete eigenvalues from the rest. The Crouzeix–Raviart a-priori bound
//! then converts discrete lower bounds into bounds for the continuous
//! spectrum.

pub mod linalg;
pub mod mesh;
pub mod orthonormal;
pub mod separation;

use nalgebra::DVector;

pub use linalg::{approx_eigenbasis, orthogonality_defect};
pub use mesh::{assemble, CrMesh, DiscreteOperator, EdgeKind};
pub use orthonormal::{gram_schmidt_deviation, GramSchmidtReport};
pub use separation::{certify_separation, liu_lower_bound, parlett_refine, SpectralSeparation, CR_CONSTANT};

use crate::error::Result;
use crate::geometry::Triangle;
use crate::interval::Interval;

/// Default mesh subdivision for the first pass.
pub const DEFAULT_MESH: usize = 32;

/// Result of the first pass for one triangle.
#[derive(Clone, Debug)]
pub struct FirstPass {
    pub mesh: usize,
    pub h: Interval,
    /// Approximate discrete eigenvalues (ascending, first `k + 1`).
    pub estimates: Vec<f64>,
    pub separation: SpectralSeparation,
    /// Certified lower bound of the discrete eigenvalue `k + 1`.
    pub discrete_next: Interval,
    /// Certified lower bound of the continuous eigenvalue `k + 1`.
    pub lower_bound: Interval,
}

/// Runs assembly, diagonalization, separation and the lower bound for `λ_{k+1}`.
pub fn first_pass(t: &Triangle, n: usize, k: usize) -> Result<FirstPass> {
    let prec = t.prec();
    let (mesh, m) = assemble(t, n)?;
    let (q, vals) = approx_eigenbasis(&m)?;
    let (disks, s) = separation::gershgorin_disks(&m, &q, 0.0)?;
    let sep = separation::separate(&disks, k, prec, s)?;
    let mut discrete_next = sep.rest_lower.clone();
    if let Ok(next_sep) = separation::separate(&disks, k + 1, prec, s) {
        let u = DVector::from_column_slice(q.column(k).as_slice());
        if let Ok(enc) = parlett_refine(&m, vals[k], &u, &next_sep, k + 1, prec) {
            if enc.lower_point().gt(&discrete_next) || enc.lo() > discrete_next.lo() {
                discrete_next = enc.lower_point();
            }
        }
    }
    let lower_bound = liu_lower_bound(&discrete_next, mesh.h())?;
    Ok(FirstPass {
        mesh: n,
        h: mesh.h().clone(),
        estimates: vals[..=k].to_vec(),
        separation: sep,
        discrete_next,
        lower_bound,
    })
}

/// Non-rigorous approximations of the lowest `count` discrete eigenvalues.
pub fn fem_estimates(t: &Triangle, n: usize, count: usize) -> Result<Vec<f64>> {
    let (_, m) = assemble(t, n)?;
    let vals = m.mid_dense().symmetric_eigenvalues();
    let mut v: Vec<f64> = vals.iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v.truncate(count);
    Ok(v)
}
