//! Sign checks of `ξ_{k1} − ξ̄` on sub-segments, and the intermediate eigenvalues.

use crate::certifier::{certify_selected, CertificationRecord, CertifiedEigenvalue, CertifyOptions, EigenEnclosure};
use crate::error::{Error, Result};
use crate::fem::first_pass;
use crate::geometry::{quotient_stability_radius, StabilityMode};
use crate::interval::Interval;

use super::parallelogram::{SideRef, SideTask, Target};

/// Outcome of validating one sub-segment.
#[derive(Clone, Debug)]
pub struct SegmentVerdict {
    pub task: SideTask,
    /// Enclosures of `λ_1` and `λ_k` at the sub-segment midpoint.
    pub eig_enclosures: Vec<EigenEnclosure>,
    pub records: Vec<CertificationRecord>,
    /// First-pass lower bound of `λ_{k+1}` at the midpoint.
    pub midpoint_next_lower: Interval,
    pub midpoint_xi: Interval,
    pub mode: StabilityMode,
    pub radius: Interval,
    /// Encloses `ξ_{k1}` on the whole sub-segment.
    pub xi_enclosure: Interval,
    pub certified_sign: i8,
    pub sign_ok: bool,
}

/// Certifies `λ_1` and `λ_k` at the midpoint of the task's sub-segment and
/// decides the sign of `ξ_{k1} − ξ̄` on the whole sub-segment.
pub fn validate_segment(task: &SideTask, opts: &CertifyOptions) -> Result<SegmentVerdict> {
    let k = task.target().k();
    let mid = task.perturbation()?.base;
    let fp = first_pass(&mid, opts.fem_mesh, k)?;
    let certified = certify_selected(&mid, &fp, &[1, k], opts)?;
    let records = certified.iter().map(|c| c.record.clone()).collect();
    let enclosures: Vec<EigenEnclosure> = certified.into_iter().map(|c: CertifiedEigenvalue| c.enclosure).collect();
    let mut verdict = conclude_segment(task, &enclosures[0].value, &enclosures[1].value)?;
    verdict.eig_enclosures = enclosures;
    verdict.records = records;
    verdict.midpoint_next_lower = fp.lower_bound.lower_point();
    Ok(verdict)
}

/// Quotient, stability inflation and sign decision from the two midpoint enclosures.
pub fn conclude_segment(task: &SideTask, lambda_1: &Interval, lambda_k: &Interval) -> Result<SegmentVerdict> {
    if !lambda_1.is_positive() {
        return Err(Error::NonPositive(format!("λ_1 enclosure {lambda_1}")));
    }
    let sp = task.perturbation()?;
    let xi = lambda_k / lambda_1;
    let mode = sp.mode()?;
    let radius = quotient_stability_radius(&sp, &xi, mode)?;
    let xi_enclosure = xi.inflate(radius.hi());
    let threshold = task.threshold();
    let diff = &xi_enclosure - threshold;
    let sign = diff.sign().ok_or_else(|| Error::SignUndecided {
        enclosure: xi_enclosure.to_string(),
        threshold: threshold.mid_f64(),
    })?;
    Ok(SegmentVerdict {
        task: task.clone(),
        eig_enclosures: Vec::new(),
        records: Vec::new(),
        midpoint_next_lower: Interval::zero(xi.prec()),
        midpoint_xi: xi,
        mode,
        radius,
        xi_enclosure,
        certified_sign: sign,
        sign_ok: sign == task.expected_sign,
    })
}

/// `λ_2` and `λ_3` at the center of a `ξ41` side, and enclosures valid on the whole side.
#[derive(Clone, Debug)]
pub struct SideIntermediates {
    pub at_center: Vec<CertifiedEigenvalue>,
    /// `Φ` with `λ_n^{(t)}/λ_n ∈ [1/Φ, Φ]` along the side.
    pub factor: Interval,
    /// Enclosures of `λ_2`, `λ_3` holding at every point of the side.
    pub over_side: Vec<Interval>,
    pub center_next_lower: Interval,
}

pub fn intermediate_eigs(side: &SideRef, opts: &CertifyOptions) -> Result<SideIntermediates> {
    if side.target() != Target::Xi41 {
        return Err(Error::Precondition(format!("{} is a ξ21 side; intermediate eigenvalues belong to ξ41 sides", side.label())));
    }
    let center = side.center_triangle()?;
    let fp = first_pass(&center, opts.fem_mesh, 4)?;
    let at_center = certify_selected(&center, &fp, &[2, 3], opts)?;
    let sp = side.perturbation()?;
    let factor = sp.eigenvalue_factor()?;
    let over_side = at_center.iter().map(|c| sp.propagate_eigenvalue(&c.enclosure.value)).collect::<Result<Vec<_>>>()?;
    Ok(SideIntermediates { at_center, factor, over_side, center_next_lower: fp.lower_bound.lower_point() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::IPoint;
    use crate::prover::parallelogram::{ParallelogramSpec, Side};

    const P: u32 = 128;

    fn spec(xi21: f64) -> ParallelogramSpec {
        let p = |x, y| IPoint::from_f64(P, x, y);
        ParallelogramSpec::new("T", p(0.635, 0.275), p(0.0046, 0.0012), p(-0.0042, -0.0005), Interval::point(P, xi21), Interval::point(P, 3.0))
            .unwrap()
    }

    #[test]
    fn point_segment_has_no_inflation() {
        let task = SideTask::new(spec(1.6).side(Side::PlusV21), 1 << 40, 1 << 39, 1).unwrap();
        let (l1, l2) = (Interval::new(P, 99.0, 100.0), Interval::new(P, 170.0, 171.0));
        let v = conclude_segment(&task, &l1, &l2).unwrap();
        assert!(v.radius.hi_f64() < 1e-9);
        assert!(v.sign_ok && v.certified_sign == 1);
        assert!((v.xi_enclosure.lo_f64() - 1.7).abs() < 1e-9);
    }

    #[test]
    fn inflation_covers_sub_segment_and_sign_is_checked() {
        let task = SideTask::new(spec(1.6).side(Side::PlusV21), 4, 2, -1).unwrap();
        let (l1, l2) = (Interval::point(P, 100.0), Interval::point(P, 170.0));
        let v = conclude_segment(&task, &l1, &l2).unwrap();
        assert!(v.radius.hi_f64() > 0.0);
        assert!(v.xi_enclosure.contains(&v.midpoint_xi));
        assert_eq!(v.certified_sign, 1);
        assert!(!v.sign_ok);
    }

    #[test]
    fn threshold_at_midpoint_quotient_is_undecided() {
        let task = SideTask::new(spec(1.7).side(Side::PlusV21), 40, 20, 1).unwrap();
        let (l1, l2) = (Interval::point(P, 100.0), Interval::point(P, 170.0));
        assert!(matches!(conclude_segment(&task, &l1, &l2), Err(Error::SignUndecided { .. })));
    }

    #[test]
    fn intermediates_need_a_xi41_side() {
        let side = spec(1.6).side(Side::MinusV21);
        assert!(matches!(intermediate_eigs(&side, &CertifyOptions::default()), Err(Error::Precondition(_))));
    }
}
