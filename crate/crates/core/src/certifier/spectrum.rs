use crate::error::{Error, Result};
use crate::fem::{first_pass, FirstPass, DEFAULT_MESH};
use crate::geometry::Triangle;
use crate::interval::Interval;
use crate::mps::{bracket_around, golden_search_with, BasisSpec, MpsCandidate, SearchOptions};
use crate::records::IntervalRecord;

use super::boundary::{boundary_norm_upper_with, BoundaryOptions};
use super::enclosure::{certify_enclosure_near, near_window, CertificationRecord, EigenEnclosure, TensionBound};
use super::interior::{interior_norm_lower_with, DEFAULT_GRID, DEFAULT_SHRINK};

#[derive(Clone, Debug, PartialEq)]
pub struct CertifyOptions {
    pub fem_mesh: usize,
    pub basis: BasisSpec,
    pub search: SearchOptions,
    pub boundary: BoundaryOptions,
    pub grid_n: usize,
    pub shrink: f64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            fem_mesh: DEFAULT_MESH,
            basis: BasisSpec::default(),
            search: SearchOptions::default(),
            boundary: BoundaryOptions::default(),
            grid_n: DEFAULT_GRID,
            shrink: DEFAULT_SHRINK,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CertifiedEigenvalue {
    pub enclosure: EigenEnclosure,
    pub candidate: MpsCandidate,
    pub tension: TensionBound,
    pub record: CertificationRecord,
}

#[derive(Clone, Debug)]
pub struct CertifiedSpectrum {
    pub triangle: Triangle,
    /// `λ_1, …, λ_k` in order.
    pub eigenvalues: Vec<CertifiedEigenvalue>,
    /// Certified lower bound of `λ_{k+1}`.
    pub next_lower: Interval,
    pub first_pass: FirstPass,
}

impl CertifiedSpectrum {
    pub fn enclosure(&self, index: usize) -> Option<&Interval> {
        self.eigenvalues.get(index.checked_sub(1)?).map(|e| &e.enclosure.value)
    }
}

/// Rigorous tension bound of a candidate on the triangle.
pub fn tension_bound(cand: &MpsCandidate, t: &Triangle, opts: &CertifyOptions) -> Result<TensionBound> {
    let (boundary, _) = boundary_norm_upper_with(cand, t, &opts.boundary)?;
    let (interior, _) = interior_norm_lower_with(cand, t, opts.grid_n, opts.shrink)?;
    TensionBound::new(boundary, interior)
}

/// Candidates for `λ_1..λ_k` searched about the FEM estimates.
pub fn search_candidates(t: &Triangle, estimates: &[f64], k: usize, opts: &CertifyOptions) -> Result<Vec<MpsCandidate>> {
    (0..k)
        .map(|i| {
            let bracket = bracket_around(estimates[i], estimates);
            golden_search_with(t, bracket, opts.basis, &opts.search)
        })
        .collect()
}

/// Certifies enclosures of `λ_1..λ_k` with their indices.
///
/// The first pass bounds `λ_{k+1} ≥ L`. Each candidate's near window must
/// lie below `L`, so it holds at most `k` eigenvalues; that gives provisional
/// enclosures which, when pairwise disjoint and below `L`, hold exactly one
/// eigenvalue each. The final enclosures count only the eigenvalues whose
/// provisional enclosures meet the near window.
pub fn certify_spectrum(t: &Triangle, k: usize, opts: &CertifyOptions) -> Result<CertifiedSpectrum> {
    let fp = first_pass(t, opts.fem_mesh, k)?;
    let cands = search_candidates(t, &fp.estimates, k, opts)?;
    let tensions = cands.iter().map(|c| tension_bound(c, t, opts)).collect::<Result<Vec<_>>>()?;
    certify_from_candidates(t, fp, cands, tensions)
}

pub fn certify_from_candidates(
    t: &Triangle,
    fp: FirstPass,
    cands: Vec<MpsCandidate>,
    tensions: Vec<TensionBound>,
) -> Result<CertifiedSpectrum> {
    let prec = t.prec();
    let k = cands.len();
    let next_lower = fp.lower_bound.lower_point();
    let (_, rho) = t.incenter_inradius()?;
    let windows: Vec<Interval> = cands.iter().map(|c| near_window(c.lambda, prec)).collect();
    for (i, w) in windows.iter().enumerate() {
        if !w.lt(&next_lower) {
            let (lo, hi) = w.to_decimal(8);
            return Err(Error::NearSet(format!("window [{lo}, {hi}] of candidate {} reaches the bound on λ_{}", i + 1, k + 1)));
        }
    }
    let provisional = (0..k)
        .map(|i| certify_enclosure_near(&cands[i], &tensions[i], &rho, &windows[i].upper_point(), k))
        .collect::<Result<Vec<_>>>()?;
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| cands[a].lambda.total_cmp(&cands[b].lambda));
    check_positions(&order.iter().map(|&i| provisional[i].clone()).collect::<Vec<_>>(), &next_lower)?;

    let mut eigenvalues = Vec::with_capacity(k);
    for (rank, &i) in order.iter().enumerate() {
        let near: Vec<usize> = (0..k).filter(|&j| provisional[j].overlaps(&windows[i])).collect();
        let upper = |encl: &[Interval]| near.iter().map(|&j| encl[j].upper_point()).fold(Interval::zero(prec), |a, b| a.max(&b));
        let first = certify_enclosure_near(&cands[i], &tensions[i], &rho, &upper(&provisional), near.len())?;
        let mut refined = provisional.clone();
        refined[i] = first.intersect(&provisional[i]).unwrap_or(first);
        let second = certify_enclosure_near(&cands[i], &tensions[i], &rho, &upper(&refined), near.len())?;
        let value = second.intersect(&refined[i]).unwrap_or(second);
        let record = certification_record(t, &cands[i], &tensions[i], &rho, &value, rank + 1);
        eigenvalues.push(CertifiedEigenvalue {
            enclosure: EigenEnclosure { value, index: rank + 1, triangle: t.clone() },
            candidate: cands[i].clone(),
            tension: tensions[i].clone(),
            record,
        });
    }
    Ok(CertifiedSpectrum { triangle: t.clone(), eigenvalues, next_lower, first_pass: fp })
}

/// Certifies the eigenvalues with the given 1-based `indices` only.
///
/// Without enclosures of the other eigenvalues below `L`, each near window may
/// hold up to `k` of them, where `λ_{k+1} ≥ L` is the first-pass bound. The
/// returned indices are claims; a position check has to confirm them.
pub fn certify_selected(t: &Triangle, fp: &FirstPass, indices: &[usize], opts: &CertifyOptions) -> Result<Vec<CertifiedEigenvalue>> {
    let prec = t.prec();
    let k = fp.estimates.len() - 1;
    let next_lower = fp.lower_bound.lower_point();
    let (_, rho) = t.incenter_inradius()?;
    let mut out = Vec::with_capacity(indices.len());
    for &index in indices {
        if index == 0 || index > k {
            return Err(Error::Precondition(format!("index {index} outside 1..={k}")));
        }
        let bracket = bracket_around(fp.estimates[index - 1], &fp.estimates);
        let cand = golden_search_with(t, bracket, opts.basis, &opts.search)?;
        let window = near_window(cand.lambda, prec);
        if !window.lt(&next_lower) {
            let (lo, hi) = window.to_decimal(8);
            return Err(Error::NearSet(format!("window [{lo}, {hi}] of candidate {index} reaches the bound on λ_{}", k + 1)));
        }
        let tension = tension_bound(&cand, t, opts)?;
        let value = certify_enclosure_near(&cand, &tension, &rho, &window.upper_point(), k)?;
        let record = certification_record(t, &cand, &tension, &rho, &value, index);
        out.push(CertifiedEigenvalue {
            enclosure: EigenEnclosure { value, index, triangle: t.clone() },
            candidate: cand,
            tension,
            record,
        });
    }
    Ok(out)
}

fn certification_record(t: &Triangle, cand: &MpsCandidate, tb: &TensionBound, rho: &Interval, value: &Interval, index: usize) -> CertificationRecord {
    let prec = t.prec();
    let d = (value - &Interval::point(prec, cand.lambda)).abs().upper_point();
    let apex = t.apex();
    CertificationRecord {
        apex: [IntervalRecord::new(&apex.x), IntervalRecord::new(&apex.y)],
        index,
        lambda_candidate: format!("{:e}", cand.lambda),
        smin: cand.smin,
        boundary_sq: IntervalRecord::new(&tb.boundary_sq),
        interior_sq: IntervalRecord::new(&tb.interior_sq),
        t_sq_upper: IntervalRecord::new(&tb.t_sq_upper),
        inradius: IntervalRecord::new(rho),
        distance: IntervalRecord::new(&d),
        enclosure: IntervalRecord::new(value),
    }
}

/// Sorted enclosures must be pairwise disjoint and below `bound`; then by
/// counting they hold `λ_1, …, λ_k` in order.
pub fn check_positions(sorted: &[Interval], bound: &Interval) -> Result<()> {
    for i in 0..sorted.len() {
        for j in i + 1..sorted.len() {
            if sorted[i].overlaps(&sorted[j]) {
                return Err(Error::Overlap { first: i + 1, second: j + 1 });
            }
        }
        if !sorted[i].lt(bound) {
            let (lo, _) = bound.to_decimal(10);
            return Err(Error::GapInsufficient { index: i + 1, bound: lo });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 64;

    #[test]
    fn positions_accept_disjoint_enclosures() {
        let e = [Interval::new(P, 1.0, 2.0), Interval::new(P, 3.0, 4.0)];
        assert!(check_positions(&e, &Interval::point(P, 5.0)).is_ok());
    }

    #[test]
    fn positions_report_overlap_and_gap() {
        let e = [Interval::new(P, 1.0, 2.0), Interval::new(P, 3.0, 4.0), Interval::new(P, 3.5, 4.5)];
        assert!(matches!(check_positions(&e, &Interval::point(P, 9.0)), Err(Error::Overlap { first: 2, second: 3 })));
        assert!(matches!(check_positions(&e[..2], &Interval::point(P, 3.9)), Err(Error::GapInsufficient { index: 2, .. })));
    }
}
