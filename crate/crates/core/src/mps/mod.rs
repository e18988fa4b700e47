//! Second pass, search stage: particular-solution basis, collocation and
//! golden-section minimization of the subspace angle, plus rigorous
//! evaluation of the resulting approximate eigenfunction along segments.

mod basis;
mod collocation;
mod eval;
mod search;

pub use basis::{Basis, BasisSpec};
pub use collocation::{build_collocation, collocation_matrix, subspace_smin, CollocationLayout, BOUNDARY_POINTS_PER_SIDE, INTERIOR_POINTS};
pub use eval::{eval_u_model, eval_u_taylor, RigorousEigenfunction, Segment, DEFAULT_MODEL_DEGREE};
pub use search::{bracket_around, golden_search, golden_search_with, MpsCandidate, SearchOptions, SubspaceObjective};
