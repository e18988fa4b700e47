//! Sign conditions of eigenvalue quotients along parallelogram sides in the
//! apex plane, and the Poincaré–Miranda conclusion.

pub mod artifacts;
pub mod config;
pub mod miranda;
pub mod parallelogram;
pub mod positions;
pub mod segment;
pub mod synthetic;

pub use artifacts::{read_dir, Artifact, ArtifactKind, IntermediateRecord, RunManifest, Timing, VerdictRecord};
pub use config::{ParallelogramConfig, ProverConfig};
pub use miranda::{miranda_conclude, ParallelogramConclusion, ProofCertificate, SideConclusion};
pub use parallelogram::{check_coverage, sub_segment_params, ParallelogramSpec, Side, SideRef, SideTask, Target, XI21_BAR, XI41_BAR};
pub use positions::{certify_positions, check_side_positions, side_lower_bound, ClaimedPair, PositionReport, SideBound};
pub use synthetic::linear_verdicts;
pub use segment::{conclude_segment, intermediate_eigs, validate_segment, SegmentVerdict, SideIntermediates};
