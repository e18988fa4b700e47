//! JSON artifacts: sealed records, verdict files and the run manifest.
//!
//! Every artifact carries the SHA-256 of its payload in canonical form (keys
//! sorted) and the hash of the manifest of the run that produced it.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::certifier::CertificationRecord;
use crate::error::{Error, Result};
use crate::geometry::StabilityMode;
use crate::interval::Interval;
use crate::records::IntervalRecord;

use super::parallelogram::{Side, Target};
use super::positions::ClaimedPair;
use super::segment::{SegmentVerdict, SideIntermediates};

/// SHA-256 of the canonical JSON form of `value`, hex encoded.
pub fn canonical_digest<T: Serialize>(value: &T) -> Result<String> {
    let canonical = serde_json::to_value(value)?;
    Ok(hex::encode(Sha256::digest(serde_json::to_vec(&canonical)?)))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArtifactKind {
    Verdict,
    Intermediates,
    Positions,
    Certificate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Artifact<T> {
    pub kind: ArtifactKind,
    pub manifest: String,
    pub sha256: String,
    pub payload: T,
}

impl<T: Serialize + DeserializeOwned> Artifact<T> {
    pub fn seal(kind: ArtifactKind, manifest: &str, payload: T) -> Result<Self> {
        let sha256 = canonical_digest(&payload)?;
        Ok(Artifact { kind, manifest: manifest.to_owned(), sha256, payload })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }

    /// Reads an artifact and checks its kind and payload hash.
    pub fn read(path: &Path, kind: ArtifactKind) -> Result<Self> {
        let raw: Artifact<serde_json::Value> = serde_json::from_slice(&fs::read(path)?)?;
        if raw.kind != kind {
            return Err(Error::Integrity(format!("{}: expected a {kind:?} artifact, found {:?}", path.display(), raw.kind)));
        }
        let digest = hex::encode(Sha256::digest(serde_json::to_vec(&raw.payload)?));
        if digest != raw.sha256 {
            return Err(Error::Integrity(format!("{}: payload hash {digest} does not match the recorded {}", path.display(), raw.sha256)));
        }
        Ok(Artifact { kind: raw.kind, manifest: raw.manifest, sha256: raw.sha256, payload: serde_json::from_value(raw.payload)? })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub started_unix: u64,
    pub elapsed_secs: f64,
}

/// Parameters of one program run. Its hash leaves out the timing.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command: String,
    pub config_path: Option<String>,
    pub config_sha256: String,
    pub arguments: BTreeMap<String, String>,
    pub seed: u64,
    pub precision_bits: u32,
    pub out_dir: String,
    pub version: String,
    pub timing: Option<Timing>,
}

impl RunManifest {
    pub fn hash(&self) -> Result<String> {
        let mut untimed = self.clone();
        untimed.timing = None;
        canonical_digest(&untimed)
    }
}

/// Serialized form of a [`SegmentVerdict`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub parallelogram: String,
    pub side: Side,
    pub target: Target,
    pub n_sub: usize,
    pub sub_index: usize,
    pub expected_sign: i8,
    pub xi_bar: IntervalRecord,
    pub midpoint: [IntervalRecord; 2],
    pub half_length: IntervalRecord,
    /// Claimed indices 1 and k.
    pub eigenvalues: Vec<CertificationRecord>,
    pub midpoint_next_lower: IntervalRecord,
    pub midpoint_xi: IntervalRecord,
    pub mode: StabilityMode,
    pub radius: IntervalRecord,
    pub xi_enclosure: IntervalRecord,
    pub certified_sign: i8,
    pub sign_ok: bool,
}

impl VerdictRecord {
    pub fn from_verdict(v: &SegmentVerdict) -> Result<Self> {
        let sp = v.task.perturbation()?;
        let apex = sp.base.apex();
        Ok(VerdictRecord {
            parallelogram: v.task.side.spec.name.clone(),
            side: v.task.side.side,
            target: v.task.target(),
            n_sub: v.task.n_sub,
            sub_index: v.task.sub_index,
            expected_sign: v.task.expected_sign,
            xi_bar: IntervalRecord::new(v.task.threshold()),
            midpoint: [IntervalRecord::new(&apex.x), IntervalRecord::new(&apex.y)],
            half_length: IntervalRecord::new(&sp.ell),
            eigenvalues: v.records.clone(),
            midpoint_next_lower: IntervalRecord::new(&v.midpoint_next_lower),
            midpoint_xi: IntervalRecord::new(&v.midpoint_xi),
            mode: v.mode,
            radius: IntervalRecord::new(&v.radius),
            xi_enclosure: IntervalRecord::new(&v.xi_enclosure),
            certified_sign: v.certified_sign,
            sign_ok: v.sign_ok,
        })
    }

    pub fn key(&self) -> String {
        format!("{}:{}:{}/{}", self.parallelogram, self.side, self.sub_index, self.n_sub)
    }

    /// The claimed `λ_1` and `λ_k` enclosures.
    pub fn claimed_pair(&self) -> Result<ClaimedPair> {
        let k = self.target.k();
        let find = |index: usize| -> Result<Interval> {
            self.eigenvalues
                .iter()
                .find(|r| r.index == index)
                .ok_or_else(|| Error::Contradiction(format!("{} has no enclosure for λ_{index}", self.key())))?
                .enclosure
                .to_interval()
        };
        Ok(ClaimedPair { sub_index: self.sub_index, lambda_1: find(1)?, lambda_k: find(k)? })
    }
}

/// Serialized form of [`SideIntermediates`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntermediateRecord {
    pub parallelogram: String,
    pub side: Side,
    pub at_center: Vec<CertificationRecord>,
    pub factor: IntervalRecord,
    pub over_side: Vec<IntervalRecord>,
    pub center_next_lower: IntervalRecord,
}

impl IntermediateRecord {
    pub fn new(parallelogram: &str, side: Side, m: &SideIntermediates) -> Self {
        IntermediateRecord {
            parallelogram: parallelogram.to_owned(),
            side,
            at_center: m.at_center.iter().map(|c| c.record.clone()).collect(),
            factor: IntervalRecord::new(&m.factor),
            over_side: m.over_side.iter().map(IntervalRecord::new).collect(),
            center_next_lower: IntervalRecord::new(&m.center_next_lower),
        }
    }

    pub fn over_side(&self) -> Result<Vec<Interval>> {
        self.over_side.iter().map(IntervalRecord::to_interval).collect()
    }
}

/// Reads every artifact of `kind` in `dir`, sorted by file name.
pub fn read_dir<T: Serialize + DeserializeOwned>(dir: &Path, kind: ArtifactKind) -> Result<Vec<Artifact<T>>> {
    let mut paths: Vec<_> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut out = Vec::new();
    for p in paths {
        let head: serde_json::Value = serde_json::from_slice(&fs::read(&p)?)?;
        let matches = head.get("kind").and_then(|k| serde_json::from_value::<ArtifactKind>(k.clone()).ok()) == Some(kind);
        if matches {
            out.push(Artifact::read(&p, kind)?);
        }
    }
    Ok(out)
}
