//! Verdicts of the model fields `f = a`, `g = b`, where a point of a
//! parallelogram is `center + a·v21 + b·v41`, `(a, b) ∈ [−1, 1]²`.
//!
//! `ξ21 − ξ̄21` is replaced by `f` and `ξ41 − ξ̄41` by `g`, which satisfy the
//! sign condition with positive signs on the `+` sides. Used to exercise the
//! conclusion logic without eigenvalue computations.

use crate::error::Result;
use crate::geometry::StabilityMode;
use crate::interval::Interval;
use crate::records::IntervalRecord;

use super::artifacts::VerdictRecord;
use super::config::ProverConfig;
use super::parallelogram::{sub_segment_params, Side, Target};
use super::positions::PositionReport;

pub fn linear_verdicts(config: &ProverConfig) -> Result<(Vec<VerdictRecord>, Vec<PositionReport>)> {
    let prec = config.precision_bits;
    let mut verdicts = Vec::new();
    let mut positions = Vec::new();
    for entry in &config.parallelograms {
        let spec = config.parallelogram(&entry.name)?;
        for side in Side::ALL {
            let sref = spec.side(side);
            let field = match side {
                Side::PlusV21 | Side::PlusV41 => 1,
                Side::MinusV21 | Side::MinusV41 => -1,
            };
            let threshold = spec.threshold(side.target());
            let xi = threshold + &Interval::from_int(prec, field);
            let zero = IntervalRecord::new(&Interval::zero(prec));
            for c in 1..=config.n_sub {
                let (s, ell) = sub_segment_params(prec, config.n_sub, c)?;
                let mid = sref.point(&s);
                verdicts.push(VerdictRecord {
                    parallelogram: spec.name.clone(),
                    side,
                    target: side.target(),
                    n_sub: config.n_sub,
                    sub_index: c,
                    expected_sign: entry.expected_signs[&side],
                    xi_bar: IntervalRecord::new(threshold),
                    midpoint: [IntervalRecord::new(&mid.x), IntervalRecord::new(&mid.y)],
                    half_length: IntervalRecord::new(&ell),
                    eigenvalues: Vec::new(),
                    midpoint_next_lower: zero.clone(),
                    midpoint_xi: IntervalRecord::new(&xi),
                    mode: StabilityMode::SameSign,
                    radius: zero.clone(),
                    xi_enclosure: IntervalRecord::new(&xi),
                    certified_sign: field as i8,
                    sign_ok: field as i8 == entry.expected_signs[&side],
                });
            }
            positions.push(PositionReport {
                side: sref.label(),
                k: side.target().k(),
                mesh: 0,
                center_lower: zero.clone(),
                factor: IntervalRecord::new(&Interval::one(prec)),
                side_lower: zero.clone(),
                intermediates: if side.target() == Target::Xi41 { vec![zero.clone(), zero] } else { Vec::new() },
                checked: (1..=config.n_sub).collect(),
            });
        }
    }
    Ok((verdicts, positions))
}
