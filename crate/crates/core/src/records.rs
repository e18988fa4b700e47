//! Serializable records. Interval endpoints are written as decimal strings
//! rounded outward, together with the working precision.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;

/// Significant digits used when rendering endpoints.
pub const RECORD_DIGITS: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalRecord {
    pub lo: String,
    pub hi: String,
    pub precision: u32,
}

impl IntervalRecord {
    pub fn new(x: &Interval) -> Self {
        let (lo, hi) = x.to_decimal(RECORD_DIGITS);
        IntervalRecord { lo, hi, precision: x.prec() }
    }

    /// An enclosure of the recorded interval (outward again on parsing).
    pub fn to_interval(&self) -> Result<Interval> {
        Interval::parse_pair(self.precision, &self.lo, &self.hi)
            .ok_or_else(|| Error::Config(format!("malformed interval record [{}, {}]", self.lo, self.hi)))
    }
}

impl From<&Interval> for IntervalRecord {
    fn from(x: &Interval) -> Self {
        IntervalRecord::new(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_outward() {
        let x = Interval::ratio(256, 1, 3);
        let r = IntervalRecord::new(&x);
        let back = r.to_interval().unwrap();
        assert!(back.contains(&x));
        assert!(back.width_f64() < 1e-38);
        let json = serde_json::to_string(&r).unwrap();
        let again: IntervalRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(again, r);
    }
}
