//! Parallelograms in the apex plane, their sides and sub-segments.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{SegmentPerturbation, Triangle};
use crate::interval::{IPoint, Interval};

pub const XI21_BAR: &str = "1.67675";
pub const XI41_BAR: &str = "2.99372";

/// Quotient validated on a side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    Xi21,
    Xi41,
}

impl Target {
    /// Index `k` of the numerator eigenvalue in `ξ_{k1} = λ_k / λ_1`.
    pub fn k(self) -> usize {
        match self {
            Target::Xi21 => 2,
            Target::Xi41 => 4,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Target::Xi21 => "xi21",
            Target::Xi41 => "xi41",
        }
    }
}

/// A side `center + offset + s·direction`, `s ∈ [−1, 1]`, named by its offset.
///
/// Moving along `v41` keeps `ξ21` nearly constant, so the sides offset by
/// `±v21` carry the `ξ21` sign condition and the sides offset by `±v41` carry
/// the `ξ41` one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    #[serde(rename = "+v21")]
    PlusV21,
    #[serde(rename = "-v21")]
    MinusV21,
    #[serde(rename = "+v41")]
    PlusV41,
    #[serde(rename = "-v41")]
    MinusV41,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::PlusV21, Side::MinusV21, Side::PlusV41, Side::MinusV41];

    pub fn label(self) -> &'static str {
        match self {
            Side::PlusV21 => "+v21",
            Side::MinusV21 => "-v21",
            Side::PlusV41 => "+v41",
            Side::MinusV41 => "-v41",
        }
    }

    pub fn target(self) -> Target {
        match self {
            Side::PlusV21 | Side::MinusV21 => Target::Xi21,
            Side::PlusV41 | Side::MinusV41 => Target::Xi41,
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::PlusV21 => Side::MinusV21,
            Side::MinusV21 => Side::PlusV21,
            Side::PlusV41 => Side::MinusV41,
            Side::MinusV41 => Side::PlusV41,
        }
    }

    fn offset_sign(self) -> i64 {
        match self {
            Side::PlusV21 | Side::PlusV41 => 1,
            Side::MinusV21 | Side::MinusV41 => -1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Side::ALL
            .into_iter()
            .find(|side| side.label() == s)
            .ok_or_else(|| Error::Config(format!("unknown side {s:?}; expected one of +v21, -v21, +v41, -v41")))
    }
}

/// Parallelogram with vertices `center ± v21 ± v41` and its two thresholds.
#[derive(Clone, Debug)]
pub struct ParallelogramSpec {
    pub name: String,
    pub center: IPoint,
    pub v21: IPoint,
    pub v41: IPoint,
    pub xi21_bar: Interval,
    pub xi41_bar: Interval,
}

impl ParallelogramSpec {
    /// Validates that all four vertices are proper triangles.
    pub fn new(name: impl Into<String>, center: IPoint, v21: IPoint, v41: IPoint, xi21_bar: Interval, xi41_bar: Interval) -> Result<Self> {
        let spec = ParallelogramSpec { name: name.into(), center, v21, v41, xi21_bar, xi41_bar };
        for v in spec.vertices() {
            Triangle::new(v.x, v.y)?;
        }
        Ok(spec)
    }

    pub fn prec(&self) -> u32 {
        self.center.x.prec()
    }

    pub fn vertices(&self) -> [IPoint; 4] {
        let (a, b) = (&self.v21, &self.v41);
        let c = &self.center;
        [c.add(a).add(b), c.add(a).sub(b), c.sub(a).sub(b), c.sub(a).add(b)]
    }

    /// Interval box containing the parallelogram.
    pub fn apex_box(&self) -> IPoint {
        let v = self.vertices();
        let hx = v.iter().skip(1).fold(v[0].x.clone(), |h, p| h.hull(&p.x));
        let hy = v.iter().skip(1).fold(v[0].y.clone(), |h, p| h.hull(&p.y));
        IPoint::new(hx, hy)
    }

    pub fn threshold(&self, target: Target) -> &Interval {
        match target {
            Target::Xi21 => &self.xi21_bar,
            Target::Xi41 => &self.xi41_bar,
        }
    }

    pub fn side(&self, side: Side) -> SideRef {
        SideRef { spec: self.clone(), side }
    }
}

/// One side of a parallelogram.
#[derive(Clone, Debug)]
pub struct SideRef {
    pub spec: ParallelogramSpec,
    pub side: Side,
}

impl SideRef {
    pub fn label(&self) -> String {
        format!("{}:{}", self.spec.name, self.side)
    }

    pub fn target(&self) -> Target {
        self.side.target()
    }

    fn offset(&self) -> IPoint {
        let sign = Interval::from_int(self.spec.prec(), self.side.offset_sign());
        match self.target() {
            Target::Xi21 => self.spec.v21.scale(&sign),
            Target::Xi41 => self.spec.v41.scale(&sign),
        }
    }

    /// Direction of travel along the side.
    pub fn direction(&self) -> IPoint {
        match self.target() {
            Target::Xi21 => self.spec.v41.clone(),
            Target::Xi41 => self.spec.v21.clone(),
        }
    }

    /// Apex at parameter `s ∈ [−1, 1]`.
    pub fn point(&self, s: &Interval) -> IPoint {
        self.spec.center.add(&self.offset()).add(&self.direction().scale(s))
    }

    pub fn center_triangle(&self) -> Result<Triangle> {
        let c = self.point(&Interval::zero(self.spec.prec()));
        Triangle::new(c.x, c.y)
    }

    /// The whole side as a perturbation of its center.
    pub fn perturbation(&self) -> Result<SegmentPerturbation> {
        SegmentPerturbation::new(self.center_triangle()?, self.direction(), Interval::one(self.spec.prec()))
    }
}

/// `[s_c − ℓ, s_c + ℓ]` with `s_c = −1 + (2c − 1)/N`, `ℓ = 1/N`: sub-segment `c` of `N`.
pub fn sub_segment_params(prec: u32, n_sub: usize, index: usize) -> Result<(Interval, Interval)> {
    if n_sub == 0 || index == 0 || index > n_sub {
        return Err(Error::Config(format!("sub-segment index {index} outside 1..={n_sub}")));
    }
    let (n, c) = (n_sub as i64, index as i64);
    Ok((Interval::ratio(prec, 2 * c - 1 - n, n), Interval::ratio(prec, 1, n)))
}

/// Checks that the sub-segments `[s_c − ℓ, s_c + ℓ]` tile `[−1, 1]`.
pub fn check_coverage(prec: u32, n_sub: usize) -> Result<()> {
    let mut reach = Interval::from_int(prec, -1);
    for c in 1..=n_sub {
        let (s, ell) = sub_segment_params(prec, n_sub, c)?;
        let start = &s - &ell;
        if !(start.lo() <= reach.hi() && start.hi() >= reach.lo()) {
            return Err(Error::IncompleteCoverage(vec![format!("gap before sub-segment {c} of {n_sub}")]));
        }
        reach = &s + &ell;
    }
    if !reach.contains_f64(1.0) {
        return Err(Error::IncompleteCoverage(vec![format!("sub-segments of {n_sub} stop short of the side end")]));
    }
    Ok(())
}

/// One sub-segment of one side, with the sign expected for `ξ − ξ̄`.
#[derive(Clone, Debug)]
pub struct SideTask {
    pub side: SideRef,
    pub n_sub: usize,
    pub sub_index: usize,
    pub expected_sign: i8,
}

impl SideTask {
    pub fn new(side: SideRef, n_sub: usize, sub_index: usize, expected_sign: i8) -> Result<Self> {
        sub_segment_params(side.spec.prec(), n_sub, sub_index)?;
        if expected_sign != 1 && expected_sign != -1 {
            return Err(Error::Config(format!("expected sign must be ±1, got {expected_sign}")));
        }
        Ok(SideTask { side, n_sub, sub_index, expected_sign })
    }

    pub fn target(&self) -> Target {
        self.side.target()
    }

    pub fn threshold(&self) -> &Interval {
        self.side.spec.threshold(self.target())
    }

    pub fn key(&self) -> String {
        format!("{}:{}/{}", self.side.label(), self.sub_index, self.n_sub)
    }

    /// The sub-segment as a perturbation of its midpoint.
    pub fn perturbation(&self) -> Result<SegmentPerturbation> {
        let prec = self.side.spec.prec();
        let (s, ell) = sub_segment_params(prec, self.n_sub, self.sub_index)?;
        let mid = self.side.point(&s);
        SegmentPerturbation::new(Triangle::new(mid.x, mid.y)?, self.side.direction(), ell)
    }
}
