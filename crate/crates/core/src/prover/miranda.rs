//! Poincaré–Miranda conclusion from recorded sign verdicts.
//!
//! On each parallelogram, `ξ21 − ξ̄21` must have constant and opposite signs on
//! the `±v21` sides, and `ξ41 − ξ̄41` on the `±v41` sides. Mapping the
//! parallelogram affinely onto `[−1, 1]²` then gives a common zero inside.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::records::IntervalRecord;

use super::artifacts::VerdictRecord;
use super::config::ProverConfig;
use super::parallelogram::{check_coverage, sub_segment_params, ParallelogramSpec, Side, Target};
use super::positions::PositionReport;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideConclusion {
    pub side: Side,
    pub target: Target,
    pub expected_sign: i8,
    pub n_sub: usize,
    /// Smallest certified distance between the quotient enclosure and `ξ̄`.
    pub min_margin: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParallelogramConclusion {
    pub name: String,
    pub apex_box: [IntervalRecord; 2],
    pub xi21_bar: String,
    pub xi41_bar: String,
    pub sides: Vec<SideConclusion>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProofCertificate {
    pub statement: String,
    pub parallelograms: Vec<ParallelogramConclusion>,
    /// Apex boxes are disjoint and normalized (base strictly longest, `c_x > 1/2`),
    /// so triangles from different boxes are not similar.
    pub pairwise_non_similar: bool,
    pub verdict_count: usize,
}

/// Issues the certificate, or reports what is missing or contradictory.
pub fn miranda_conclude(config: &ProverConfig, verdicts: &[VerdictRecord], positions: &[PositionReport]) -> Result<ProofCertificate> {
    config.validate()?;
    let prec = config.precision_bits;
    check_coverage(prec, config.n_sub)?;
    let mut by_key: BTreeMap<String, Vec<&VerdictRecord>> = BTreeMap::new();
    for v in verdicts {
        by_key.entry(v.key()).or_default().push(v);
    }
    let mut missing = Vec::new();
    let mut conclusions = Vec::new();
    for entry in &config.parallelograms {
        let spec = config.parallelogram(&entry.name)?;
        let mut sides = Vec::new();
        for side in Side::ALL {
            let sref = spec.side(side);
            let expected = entry.expected_signs[&side];
            let threshold = spec.threshold(side.target());
            let mut min_margin = f64::INFINITY;
            for c in 1..=config.n_sub {
                let key = format!("{}:{}:{}/{}", spec.name, side, c, config.n_sub);
                let Some(found) = by_key.get(&key) else {
                    missing.push(key);
                    continue;
                };
                let (s, ell) = sub_segment_params(prec, config.n_sub, c)?;
                let mid = sref.point(&s);
                for v in found {
                    if v.target != side.target() || v.expected_sign != expected || !v.sign_ok {
                        return Err(Error::Contradiction(format!("{key}: target, expected sign or sign flag disagree with the configuration")));
                    }
                    let [mx, my] = &v.midpoint;
                    if !mx.to_interval()?.overlaps(&mid.x) || !my.to_interval()?.overlaps(&mid.y) || !v.half_length.to_interval()?.overlaps(&ell) {
                        return Err(Error::Contradiction(format!("{key}: recorded sub-segment does not match the side geometry")));
                    }
                    let diff = &v.xi_enclosure.to_interval()? - threshold;
                    match diff.sign() {
                        Some(sign) if sign == expected => min_margin = min_margin.min(diff.mig().to_f64()),
                        _ => return Err(Error::Contradiction(format!("{key}: ξ − ξ̄ = {diff} does not have sign {expected:+}"))),
                    }
                }
            }
            let label = sref.label();
            match positions.iter().find(|p| p.side == label) {
                Some(p) if p.k == side.target().k() => {
                    let unchecked: Vec<String> =
                        (1..=config.n_sub).filter(|c| !p.checked.contains(c)).map(|c| format!("{label}:{c}/{} positions", config.n_sub)).collect();
                    missing.extend(unchecked);
                }
                Some(p) => return Err(Error::Contradiction(format!("{label}: position report is for k = {}", p.k))),
                None => missing.push(format!("{label} positions")),
            }
            sides.push(SideConclusion { side, target: side.target(), expected_sign: expected, n_sub: config.n_sub, min_margin });
        }
        let apex = spec.apex_box();
        conclusions.push(ParallelogramConclusion {
            name: spec.name.clone(),
            apex_box: [IntervalRecord::new(&apex.x), IntervalRecord::new(&apex.y)],
            xi21_bar: config.xi21_bar.clone(),
            xi41_bar: config.xi41_bar.clone(),
            sides,
        });
    }
    if !missing.is_empty() {
        return Err(Error::IncompleteCoverage(missing));
    }
    let specs = config.parallelograms.iter().map(|p| config.parallelogram(&p.name)).collect::<Result<Vec<_>>>()?;
    let pairwise_non_similar = if specs.len() > 1 {
        check_non_similar(&specs)?;
        true
    } else {
        false
    };
    let statement = format!(
        "each listed parallelogram contains an apex (c_x, c_y) with λ2/λ1 = {} and λ4/λ1 = {}",
        config.xi21_bar, config.xi41_bar
    );
    Ok(ProofCertificate { statement, parallelograms: conclusions, pairwise_non_similar, verdict_count: verdicts.len() })
}

/// Triangles with apexes in different boxes are not similar when every box
/// lies in `c_x > 1/2`, `c_x² + c_y² < 1` (the base is the strictly longest side,
/// which fixes the normalization up to the reflection `c_x ↦ 1 − c_x`) and the
/// boxes are pairwise disjoint.
fn check_non_similar(specs: &[ParallelogramSpec]) -> Result<()> {
    let boxes: Vec<_> = specs.iter().map(|s| s.apex_box()).collect();
    for (s, b) in specs.iter().zip(&boxes) {
        let half = crate::interval::Interval::ratio(s.prec(), 1, 2);
        let r2 = &b.x.sqr() + &b.y.sqr();
        if !b.x.gt(&half) || !r2.lt(&crate::interval::Interval::one(s.prec())) {
            return Err(Error::Contradiction(format!("apex box of {} is not in the normalized region", s.name)));
        }
    }
    for i in 0..boxes.len() {
        for j in i + 1..boxes.len() {
            if boxes[i].x.overlaps(&boxes[j].x) && boxes[i].y.overlaps(&boxes[j].y) {
                return Err(Error::Contradiction(format!("apex boxes of {} and {} overlap", specs[i].name, specs[j].name)));
            }
        }
    }
    Ok(())
}
