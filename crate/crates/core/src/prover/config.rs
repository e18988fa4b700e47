//! Prover configuration (JSON).

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::certifier::CertifyOptions;
use crate::error::{Error, Result};
use crate::interval::{IPoint, Interval, DEFAULT_PRECISION};
use crate::mps::BasisSpec;

use super::parallelogram::{ParallelogramSpec, Side, SideRef, SideTask, XI21_BAR, XI41_BAR};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParallelogramConfig {
    pub name: String,
    pub center: [String; 2],
    pub v21: [String; 2],
    pub v41: [String; 2],
    /// Expected sign of `ξ − ξ̄` on each side.
    pub expected_signs: BTreeMap<Side, i8>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProverConfig {
    pub precision_bits: u32,
    pub seed: u64,
    pub n_sub: usize,
    /// FEM mesh of the first pass at sub-segment midpoints and side centers.
    pub fem_mesh: usize,
    pub basis: BasisSpec,
    pub xi21_bar: String,
    pub xi41_bar: String,
    pub parallelograms: Vec<ParallelogramConfig>,
}

fn pair(x: &str, y: &str) -> [String; 2] {
    [x.to_owned(), y.to_owned()]
}

fn signs(v21: i8, v41: i8) -> BTreeMap<Side, i8> {
    BTreeMap::from([(Side::PlusV21, v21), (Side::MinusV21, -v21), (Side::PlusV41, v41), (Side::MinusV41, -v41)])
}

impl ProverConfig {
    /// The two parallelograms about `A = (0.635, 0.275)` and `B = (0.84906, 0.31995)`.
    pub fn reference() -> Self {
        ProverConfig {
            precision_bits: DEFAULT_PRECISION,
            seed: 0,
            n_sub: 40,
            fem_mesh: 32,
            basis: BasisSpec { n_c: 12, d: 12, ..BasisSpec::default() },
            xi21_bar: XI21_BAR.into(),
            xi41_bar: XI41_BAR.into(),
            parallelograms: vec![
                ParallelogramConfig {
                    name: "A".into(),
                    center: pair("0.63500", "0.27500"),
                    v21: pair("0.004610608896618232", "0.0012403688839389946"),
                    v41: pair("-0.0041659682109460045", "-0.000511581170421992"),
                    expected_signs: signs(1, 1),
                },
                ParallelogramConfig {
                    name: "B".into(),
                    center: pair("0.84906", "0.31995"),
                    v21: pair("0.0028159587453638808", "0.0020776257941965285"),
                    v41: pair("0.007180726583099708", "0.00213029677112299"),
                    expected_signs: signs(1, 1),
                },
            ],
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let cfg: ProverConfig = serde_json::from_slice(&fs::read(path)?)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision_bits < 64 {
            return Err(Error::Config(format!("precision {} is below 64 bits", self.precision_bits)));
        }
        if self.n_sub == 0 {
            return Err(Error::Config("n_sub must be positive".into()));
        }
        let mut names: Vec<&str> = self.parallelograms.iter().map(|p| p.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Config("parallelogram names must be unique".into()));
        }
        for p in &self.parallelograms {
            for side in Side::ALL {
                let s = p.expected_signs.get(&side).copied();
                let o = p.expected_signs.get(&side.opposite()).copied();
                match (s, o) {
                    (Some(s), Some(o)) if (s == 1 || s == -1) && s == -o => {}
                    _ => {
                        return Err(Error::Config(format!(
                            "{}: expected signs on {side} and {} must be ±1 and opposite",
                            p.name,
                            side.opposite()
                        )))
                    }
                }
            }
            self.parallelogram(&p.name)?;
        }
        Ok(())
    }

    fn num(&self, text: &str) -> Result<Interval> {
        Interval::parse(self.precision_bits, text).ok_or_else(|| Error::Config(format!("cannot parse number {text:?}")))
    }

    fn point(&self, p: &[String; 2]) -> Result<IPoint> {
        Ok(IPoint::new(self.num(&p[0])?, self.num(&p[1])?))
    }

    fn entry(&self, name: &str) -> Result<&ParallelogramConfig> {
        self.parallelograms.iter().find(|p| p.name == name).ok_or_else(|| Error::Config(format!("no parallelogram named {name:?}")))
    }

    pub fn parallelogram(&self, name: &str) -> Result<ParallelogramSpec> {
        let p = self.entry(name)?;
        ParallelogramSpec::new(
            &p.name,
            self.point(&p.center)?,
            self.point(&p.v21)?,
            self.point(&p.v41)?,
            self.num(&self.xi21_bar)?,
            self.num(&self.xi41_bar)?,
        )
    }

    /// Resolves `NAME:SIDE` (e.g. `A:+v21`) to the side and its expected sign.
    pub fn side(&self, label: &str) -> Result<(SideRef, i8)> {
        let (name, side) = label.split_once(':').ok_or_else(|| Error::Config(format!("side {label:?} is not of the form NAME:SIDE")))?;
        let side: Side = side.parse()?;
        let sign = self.entry(name)?.expected_signs.get(&side).copied().ok_or_else(|| Error::Config(format!("no expected sign for {label}")))?;
        Ok((self.parallelogram(name)?.side(side), sign))
    }

    pub fn task(&self, label: &str, n_sub: usize, index: usize) -> Result<SideTask> {
        let (side, sign) = self.side(label)?;
        SideTask::new(side, n_sub, index, sign)
    }

    pub fn certify_options(&self) -> CertifyOptions {
        let mut opts = CertifyOptions { fem_mesh: self.fem_mesh, basis: self.basis, ..CertifyOptions::default() };
        opts.search.layout.seed = self.seed;
        opts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_config_is_valid_and_round_trips() {
        let cfg = ProverConfig::reference();
        cfg.validate().unwrap();
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(serde_json::from_str::<ProverConfig>(&text).unwrap(), cfg);
        let (side, sign) = cfg.side("A:+v21").unwrap();
        assert_eq!(sign, 1);
        assert_eq!(side.label(), "A:+v21");
        let a = cfg.parallelogram("A").unwrap();
        assert!((a.center.x.mid_f64() - 0.635).abs() < 1e-15 && a.center.x.width_f64() < 1e-60);
        assert!(cfg.side("C:+v21").is_err());
        assert!(cfg.side("A+v21").is_err());
    }

    #[test]
    fn signs_must_be_opposite() {
        let mut cfg = ProverConfig::reference();
        cfg.parallelograms[0].expected_signs.insert(Side::MinusV41, 1);
        assert!(matches!(cfg.validate(), Err(Error::Config(_))));
    }
}
