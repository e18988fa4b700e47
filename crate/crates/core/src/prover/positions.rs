//! Certified spectral indices along a side.

use serde::{Deserialize, Serialize};

use crate::certifier::check_positions;
use crate::error::{Error, Result};
use crate::fem::first_pass;
use crate::interval::Interval;
use crate::records::IntervalRecord;

use super::parallelogram::{SideRef, Target};

/// Lower bound of `λ_{k+1}` valid on the whole side.
#[derive(Clone, Debug)]
pub struct SideBound {
    pub k: usize,
    pub mesh: usize,
    pub at_center: Interval,
    pub factor: Interval,
    pub over_side: Interval,
}

/// First pass at the side center, propagated along the side by `λ_n^{(t)} ≥ λ_n / Φ`.
pub fn side_lower_bound(side: &SideRef, k: usize, mesh: usize) -> Result<SideBound> {
    let center = side.center_triangle()?;
    let fp = first_pass(&center, mesh, k)?;
    let sp = side.perturbation()?;
    let factor = sp.eigenvalue_factor()?;
    let at_center = fp.lower_bound.lower_point();
    let over_side = (&at_center / &factor).lower_point();
    Ok(SideBound { k, mesh, at_center, factor, over_side })
}

/// Enclosures claimed for `λ_1` and `λ_k` on one sub-segment.
#[derive(Clone, Debug)]
pub struct ClaimedPair {
    pub sub_index: usize,
    pub lambda_1: Interval,
    pub lambda_k: Interval,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositionReport {
    pub side: String,
    pub k: usize,
    pub mesh: usize,
    pub center_lower: IntervalRecord,
    pub factor: IntervalRecord,
    pub side_lower: IntervalRecord,
    pub intermediates: Vec<IntervalRecord>,
    pub checked: Vec<usize>,
}

/// Checks that on every sub-segment the claimed enclosures, together with the
/// intermediates when `k = 4`, are pairwise disjoint and below `bound`, in the
/// claimed order. By counting they are then `λ_1, …, λ_k`.
pub fn check_side_positions(pairs: &[ClaimedPair], intermediates: &[Interval], k: usize, bound: &Interval) -> Result<()> {
    let expected_intermediates = k.checked_sub(2).ok_or_else(|| Error::Precondition(format!("k = {k} is below 2")))?;
    if intermediates.len() != expected_intermediates {
        return Err(Error::Precondition(format!("k = {k} needs {expected_intermediates} intermediate enclosures, got {}", intermediates.len())));
    }
    for p in pairs {
        let mut chain = Vec::with_capacity(k);
        chain.push(p.lambda_1.clone());
        chain.extend(intermediates.iter().cloned());
        chain.push(p.lambda_k.clone());
        let mut sorted = chain.clone();
        sorted.sort_by(|a, b| a.lo().total_cmp(b.lo()));
        check_positions(&sorted, bound)?;
        if sorted != chain {
            return Err(Error::Precondition(format!("sub-segment {}: enclosures are not in the claimed index order", p.sub_index)));
        }
    }
    Ok(())
}

pub fn certify_positions(side: &SideRef, pairs: &[ClaimedPair], intermediates: &[Interval], mesh: usize) -> Result<PositionReport> {
    let k = side.target().k();
    if side.target() == Target::Xi21 && !intermediates.is_empty() {
        return Err(Error::Precondition("ξ21 sides take no intermediate enclosures".into()));
    }
    let bound = side_lower_bound(side, k, mesh)?;
    check_side_positions(pairs, intermediates, k, &bound.over_side)?;
    Ok(PositionReport {
        side: side.label(),
        k,
        mesh,
        center_lower: IntervalRecord::new(&bound.at_center),
        factor: IntervalRecord::new(&bound.factor),
        side_lower: IntervalRecord::new(&bound.over_side),
        intermediates: intermediates.iter().map(IntervalRecord::new).collect(),
        checked: pairs.iter().map(|p| p.sub_index).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 64;

    fn pair(i: usize, a: (f64, f64), b: (f64, f64)) -> ClaimedPair {
        ClaimedPair { sub_index: i, lambda_1: Interval::new(P, a.0, a.1), lambda_k: Interval::new(P, b.0, b.1) }
    }

    #[test]
    fn k2_disjoint_below_bound() {
        let pairs = [pair(1, (10.0, 10.1), (20.0, 20.1)), pair(2, (10.2, 10.3), (20.5, 20.6))];
        check_side_positions(&pairs, &[], 2, &Interval::point(P, 25.0)).unwrap();
    }

    #[test]
    fn k4_overlap_is_reported() {
        let pairs = [pair(1, (10.0, 10.1), (30.0, 30.1))];
        let mids = [Interval::new(P, 20.0, 21.0), Interval::new(P, 29.5, 30.05)];
        let err = check_side_positions(&pairs, &mids, 4, &Interval::point(P, 40.0)).unwrap_err();
        assert!(matches!(err, Error::Overlap { first: 3, second: 4 }), "{err}");
    }

    #[test]
    fn gap_and_order_failures() {
        let pairs = [pair(1, (10.0, 10.1), (20.0, 20.1))];
        assert!(matches!(check_side_positions(&pairs, &[], 2, &Interval::point(P, 20.05)), Err(Error::GapInsufficient { .. })));
        let swapped = [pair(1, (20.0, 20.1), (10.0, 10.1))];
        assert!(matches!(check_side_positions(&swapped, &[], 2, &Interval::point(P, 30.0)), Err(Error::Precondition(_))));
        assert!(check_side_positions(&pairs, &[], 4, &Interval::point(P, 30.0)).is_err());
    }
}
