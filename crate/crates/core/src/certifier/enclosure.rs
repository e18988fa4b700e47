use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Triangle;
use crate::interval::Interval;
use crate::mps::MpsCandidate;
use crate::records::IntervalRecord;

/// Rigorous bounds on the tension `t[u] = ‖u‖_{∂T} / ‖u‖_T`.
#[derive(Clone, Debug)]
pub struct TensionBound {
    /// Encloses (from above) `‖u‖²_{L²(∂T)}`.
    pub boundary_sq: Interval,
    /// Lower bound of `‖u‖²_{L²(T)}`.
    pub interior_sq: Interval,
    /// Upper bound of `t[u]²`, as a point interval.
    pub t_sq_upper: Interval,
}

impl TensionBound {
    pub fn new(boundary_sq: Interval, interior_sq: Interval) -> Result<Self> {
        let interior_low = interior_sq.lower_point();
        if !interior_low.is_positive() {
            return Err(Error::NonPositive("interior norm lower bound".into()));
        }
        let t_sq_upper = (&boundary_sq.upper_point().clamp_nonnegative() / &interior_low).upper_point();
        Ok(TensionBound { boundary_sq, interior_sq, t_sq_upper })
    }

    pub fn tension_upper_f64(&self) -> f64 {
        self.t_sq_upper.sqrt().hi_f64()
    }
}

#[derive(Clone, Debug)]
pub struct EigenEnclosure {
    pub value: Interval,
    /// 1-based spectral index. Until a position check confirms it, this is a claim.
    pub index: usize,
    pub triangle: Triangle,
}

/// `d = √(n λ̃ · 2 / (ρ t⁻² − 28(1+ρ)(1+λ^{−1/2})))` where `n` bounds the
/// number of eigenvalues in the near window.
pub fn distance_bound(lambda: f64, tb: &TensionBound, rho: &Interval, lambda_upper: &Interval, near_count: usize) -> Result<Interval> {
    let prec = rho.prec();
    if !(lambda > 1.0) {
        return Err(Error::Precondition(format!("candidate eigenvalue {lambda} must exceed 1")));
    }
    let lam = Interval::point(prec, lambda);
    let one = Interval::one(prec);
    let inv_t_sq = tb.t_sq_upper.recip();
    let c_term = &(&Interval::from_int(prec, 28) * &(&one + rho)) * &(&one + &lam.sqrt().recip());
    let denom = &(rho * &inv_t_sq) - &c_term;
    if !denom.is_positive() {
        let (lo, _) = denom.to_decimal(6);
        return Err(Error::DenominatorNonpositive(lo));
    }
    let num = lambda_upper.upper_point().mul_u32(2 * near_count as u32);
    Ok((&num / &denom.lower_point()).sqrt().upper_point())
}

/// Enclosure `[λ − d, λ + d]` of an eigenvalue, assuming a single eigenvalue
/// within `√λ` of the candidate.
pub fn certify_enclosure(cand: &MpsCandidate, tb: &TensionBound, rho: &Interval, lambda_upper: &Interval) -> Result<Interval> {
    certify_enclosure_near(cand, tb, rho, lambda_upper, 1)
}

pub fn certify_enclosure_near(
    cand: &MpsCandidate,
    tb: &TensionBound,
    rho: &Interval,
    lambda_upper: &Interval,
    near_count: usize,
) -> Result<Interval> {
    let d = distance_bound(cand.lambda, tb, rho, lambda_upper, near_count)?;
    Ok(Interval::point(rho.prec(), cand.lambda).inflate(d.hi()))
}

/// `[λ − √λ, λ + √λ]`, the window in which eigenvalues enter the near term.
pub fn near_window(lambda: f64, prec: u32) -> Interval {
    let lam = Interval::point(prec, lambda);
    let r = lam.sqrt();
    Interval::from_floats((&lam - &r).lo().clone(), (&lam + &r).hi().clone()).expect("ordered window")
}

/// Record of one certification, with outward-rounded decimal endpoints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificationRecord {
    pub apex: [IntervalRecord; 2],
    pub index: usize,
    pub lambda_candidate: String,
    pub smin: f64,
    pub boundary_sq: IntervalRecord,
    pub interior_sq: IntervalRecord,
    pub t_sq_upper: IntervalRecord,
    pub inradius: IntervalRecord,
    pub distance: IntervalRecord,
    pub enclosure: IntervalRecord,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mps::{Basis, BasisSpec};

    const P: u32 = 128;

    fn cand(lambda: f64) -> MpsCandidate {
        let basis = Basis::from_apex([0.0, 1.0], BasisSpec::default()).unwrap();
        MpsCandidate { lambda, coeffs: vec![0.0; basis.len()], basis, smin: 0.0 }
    }

    fn tb(t_sq: f64) -> TensionBound {
        TensionBound::new(Interval::point(P, t_sq), Interval::one(P)).unwrap()
    }

    #[test]
    fn enclosure_matches_closed_form() {
        let rho = Interval::point(P, 0.25);
        let lam = 50.0;
        let e = certify_enclosure(&cand(lam), &tb(1e-16), &rho, &Interval::point(P, 51.0)).unwrap();
        let denom = 0.25 / 1e-16 - 28.0 * 1.25 * (1.0 + 1.0 / lam.sqrt());
        let d = (2.0 * 51.0 / denom).sqrt();
        assert!(e.contains_f64(lam - d * (1.0 - 1e-12)) && e.contains_f64(lam + d * (1.0 - 1e-12)));
        assert!(e.width_f64() < 2.0 * d * (1.0 + 1e-12));
    }

    #[test]
    fn denominator_at_zero_is_rejected() {
        // ρ t⁻² = 28(1+ρ)(1+λ^{−1/2}) exactly: ρ = 1, λ = 4 gives 84
        let rho = Interval::one(P);
        let t_sq = 1.0 / 84.0;
        let tb = TensionBound { boundary_sq: Interval::zero(P), interior_sq: Interval::one(P), t_sq_upper: Interval::ratio(P, 1, 84).upper_point() };
        let r = certify_enclosure(&cand(4.0), &tb, &rho, &Interval::point(P, 5.0));
        assert!(matches!(r, Err(Error::DenominatorNonpositive(_))), "{t_sq}");
    }

    #[test]
    fn looser_tension_never_narrows() {
        let rho = Interval::point(P, 0.3);
        let up = Interval::point(P, 60.0);
        let mut last = 0.0;
        for t_sq in [1e-20, 1e-18, 1e-16, 1e-14] {
            let w = certify_enclosure(&cand(50.0), &tb(t_sq), &rho, &up).unwrap().width_f64();
            assert!(w >= last);
            last = w;
        }
    }
}
