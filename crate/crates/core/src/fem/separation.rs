//! Gershgorin separation, residual refinement and the eigenvalue lower bound.

use nalgebra::{DMatrix, DVector};

use super::linalg::{add_up, mul_up, orthogonality_defect, project, residual_bounds, sqrt_up};
use super::mesh::DiscreteOperator;
use crate::error::{Error, Result};
use crate::interval::Interval;

/// Constant in the Crouzeix–Raviart a-priori bound `C_h ≤ 0.1893 h`.
pub const CR_CONSTANT: f64 = 0.1893;

/// Certified localization of the lowest `index_certified` eigenvalues.
#[derive(Clone, Debug)]
pub struct SpectralSeparation {
    /// Disjoint enclosures of eigenvalue clusters, ascending.
    pub cluster_enclosures: Vec<Interval>,
    /// Number of eigenvalues (with multiplicity) inside each cluster.
    pub multiplicities: Vec<usize>,
    /// Lower bound for every eigenvalue beyond the clusters.
    pub rest_lower: Interval,
    pub index_certified: usize,
    /// The defect `s` used for the inflation.
    pub orthogonality: f64,
}

impl SpectralSeparation {
    /// Cluster containing the eigenvalue of 1-based index `idx`, with its first index.
    pub fn cluster_of(&self, idx: usize) -> Option<(usize, usize)> {
        let mut first = 1;
        for (c, &mult) in self.multiplicities.iter().enumerate() {
            if idx < first + mult {
                return Some((c, first));
            }
            first += mult;
        }
        None
    }
}

/// Gershgorin disk data `[center − radius, center + radius]` as outward `f64` bounds.
#[derive(Clone, Copy, Debug)]
pub struct Disk {
    pub lo: f64,
    pub hi: f64,
}

/// Disks of `D̃ = QᵀMQ` inflated by the orthonormalization error and by `extra_s`
/// on top of the computed orthogonality defect.
pub fn gershgorin_disks(m: &DiscreteOperator, q: &DMatrix<f64>, extra_s: f64) -> Result<(Vec<Disk>, f64)> {
    let n = q.ncols();
    if q.nrows() != m.dim() || n != m.dim() {
        return Err(Error::Precondition("basis must be square with the operator dimension".into()));
    }
    let s = add_up(orthogonality_defect(q), extra_s.max(0.0));
    let ms8 = 8.0 * n as f64 * s;
    if ms8 >= 1.0 {
        return Err(Error::LemmaPrecondition { value: ms8 });
    }
    let p = project(m, q);
    let root = sqrt_up(mul_up(3.0, s));
    let sum_mv = p.mv_norm.iter().fold(0.0, |a, &b| add_up(a, b));
    let flat = mul_up(mul_up(4.0 * n as f64, s), p.frobenius);
    let mut disks = Vec::with_capacity(n);
    for i in 0..n {
        let mut off = 0.0f64;
        for j in 0..n {
            let e = p.d_err[(i, j)];
            off = if i == j { add_up(off, e) } else { add_up(off, add_up(p.d[(i, j)].abs(), e)) };
        }
        // Σ_j √(3s)(‖Mv_i‖ + ‖Mv_j‖) + 4s‖M‖
        let infl = add_up(mul_up(root, add_up(mul_up(n as f64, p.mv_norm[i]), sum_mv)), flat);
        let radius = add_up(off, infl);
        let c = p.d[(i, i)];
        disks.push(Disk { lo: (c - radius).next_down(), hi: (c + radius).next_up() });
    }
    Ok((disks, s))
}

/// Groups disks into connected components and certifies that the lowest
/// components hold exactly `k` disks.
pub fn separate(disks: &[Disk], k: usize, prec: u32, s: f64) -> Result<SpectralSeparation> {
    if k == 0 || k >= disks.len() {
        return Err(Error::Precondition(format!("cannot separate {k} of {} eigenvalues", disks.len())));
    }
    let mut sorted: Vec<Disk> = disks.to_vec();
    sorted.sort_by(|a, b| a.lo.total_cmp(&b.lo));
    let mut comps: Vec<(f64, f64, usize)> = Vec::new();
    for d in sorted {
        match comps.last_mut() {
            Some(last) if d.lo <= last.1 => {
                last.1 = last.1.max(d.hi);
                last.2 += 1;
            }
            _ => comps.push((d.lo, d.hi, 1)),
        }
    }
    let mut count = 0;
    let mut clusters = Vec::new();
    let mut mult = Vec::new();
    for (c, &(lo, hi, m)) in comps.iter().enumerate() {
        if count == k {
            let rest_lo = comps[c].0;
            return Ok(SpectralSeparation {
                cluster_enclosures: clusters,
                multiplicities: mult,
                rest_lower: Interval::point(prec, rest_lo),
                index_certified: k,
                orthogonality: s,
            });
        }
        if count + m > k {
            return Err(Error::SeparationFailure(format!(
                "disks {}..{} merge across the gap after eigenvalue {k} (component [{lo:e}, {hi:e}])",
                count + 1,
                count + m
            )));
        }
        clusters.push(Interval::new(prec, lo, hi));
        mult.push(m);
        count += m;
    }
    Err(Error::SeparationFailure("no eigenvalues remain above the clusters".into()))
}

/// Certifies the lowest `k` eigenvalues of `m` from an approximate eigenbasis.
pub fn certify_separation(m: &DiscreteOperator, q: &DMatrix<f64>, k: usize, prec: u32) -> Result<SpectralSeparation> {
    let (disks, s) = gershgorin_disks(m, q, 0.0)?;
    separate(&disks, k, prec, s)
}

/// Residual enclosure `[λ̃ − ‖r‖/‖ũ‖, λ̃ + ‖r‖/‖ũ‖]`, certified to contain the `idx`-th
/// eigenvalue (1-based) using the separation to discharge proximity.
pub fn parlett_refine(
    m: &DiscreteOperator,
    lambda: f64,
    u: &DVector<f64>,
    sep: &SpectralSeparation,
    idx: usize,
    prec: u32,
) -> Result<Interval> {
    let (r, un) = residual_bounds(m, lambda, u);
    if un <= 0.0 {
        return Err(Error::NonPositive("approximate eigenvector norm".into()));
    }
    let width = (r / un.next_down()).next_up();
    let enc = Interval::new(prec, (lambda - width).next_down(), (lambda + width).next_up());
    let (cluster, _) = sep
        .cluster_of(idx)
        .ok_or_else(|| Error::ProximityUncertified(format!("index {idx} is outside the separated clusters")))?;
    if sep.multiplicities[cluster] != 1 {
        return Err(Error::ProximityUncertified(format!(
            "eigenvalue {idx} lies in a cluster of multiplicity {}",
            sep.multiplicities[cluster]
        )));
    }
    let own = &sep.cluster_enclosures[cluster];
    if !enc.overlaps(own) {
        return Err(Error::ProximityUncertified(format!("residual interval {enc} misses cluster {own}")));
    }
    for (c, other) in sep.cluster_enclosures.iter().enumerate() {
        if c != cluster && enc.overlaps(other) {
            return Err(Error::ProximityUncertified(format!("residual interval {enc} meets another cluster {other}")));
        }
    }
    if !enc.lt(&sep.rest_lower) {
        return Err(Error::ProximityUncertified(format!("residual interval {enc} reaches the remaining spectrum")));
    }
    Ok(enc.intersect(own).unwrap_or(enc))
}

/// Lower bound `λ_h/(1 + (C_h)² λ_h)` for the continuous eigenvalue, `C_h = 0.1893 h`.
pub fn liu_lower_bound(lambda_h: &Interval, h: &Interval) -> Result<Interval> {
    if !lambda_h.is_positive() {
        return Err(Error::NonPositive(format!("discrete eigenvalue bound {lambda_h}")));
    }
    let prec = lambda_h.prec();
    let lo = lambda_h.lower_point();
    let ch = &Interval::parse(prec, "0.1893").expect("constant") * h;
    let denom = &Interval::one(prec) + &(&ch.sqr() * &lo);
    let v = &lo / &denom;
    Ok(v.lower_point().hull(&v.lower_point()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::linalg::dense_eigenbasis;

    fn diag(vals: &[f64]) -> DiscreteOperator {
        let rows = vals.iter().enumerate().map(|(i, &v)| vec![(i, v, v)]).collect();
        DiscreteOperator::from_rows(rows)
    }

    #[test]
    fn diagonal_with_exact_basis() {
        let m = diag(&[1.0, 2.0, 5.0, 9.0]);
        let q = DMatrix::identity(4, 4);
        for k in 1..4 {
            let sep = certify_separation(&m, &q, k, 64).unwrap();
            assert_eq!(sep.multiplicities.iter().sum::<usize>(), k);
        }
        let sep = certify_separation(&m, &q, 2, 64).unwrap();
        assert!(sep.rest_lower.lo_f64() <= 5.0 && sep.rest_lower.lo_f64() > 4.99);
        let u = DVector::from_vec(vec![0.0, 1.0, 0.0, 0.0]);
        let enc = parlett_refine(&m, 2.0, &u, &sep, 2, 64).unwrap();
        assert!(enc.contains_f64(2.0) && enc.width_f64() < 1e-12);
    }

    #[test]
    fn mixed_vector_is_not_certified() {
        let m = diag(&[1.0, 2.0, 5.0, 9.0]);
        let q = DMatrix::identity(4, 4);
        let sep = certify_separation(&m, &q, 2, 64).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let u = DVector::from_vec(vec![h, h, 0.0, 0.0]);
        assert!(matches!(parlett_refine(&m, 1.5, &u, &sep, 1, 64), Err(Error::ProximityUncertified(_))));
    }

    #[test]
    fn lemma_precondition() {
        let m = diag(&[1.0, 2.0, 5.0, 9.0]);
        let q = DMatrix::identity(4, 4);
        // 8·4·s = 1.2
        let err = gershgorin_disks(&m, &q, 1.2 / 32.0).unwrap_err();
        assert!(matches!(err, Error::LemmaPrecondition { .. }));
    }

    #[test]
    fn liu_formula() {
        let v = liu_lower_bound(&Interval::point(128, 100.0), &Interval::point(128, 0.1)).unwrap();
        let expect = 100.0 / (1.0 + 0.01893f64.powi(2) * 100.0);
        assert!((v.lo_f64() - expect).abs() < 1e-12);
        assert!(liu_lower_bound(&Interval::point(128, -1.0), &Interval::point(128, 0.1)).is_err());
    }

    #[test]
    fn rotated_basis_still_separates() {
        let vals = [1.0, 3.0, 3.5, 8.0, 12.0];
        let m = diag(&vals);
        let (mut q, _) = dense_eigenbasis(m.mid_dense()).unwrap();
        // small rotation in the (0,1) plane
        let (c, s) = (1e-8f64.cos(), 1e-8f64.sin());
        for r in 0..5 {
            let (a, b) = (q[(r, 0)], q[(r, 1)]);
            q[(r, 0)] = c * a - s * b;
            q[(r, 1)] = s * a + c * b;
        }
        let sep = certify_separation(&m, &q, 3, 64).unwrap();
        assert!(sep.cluster_enclosures[0].contains_f64(1.0));
    }
}
