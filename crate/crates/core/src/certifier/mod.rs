//! Second pass, certification stage: rigorous tension bounds and
//! distance-to-spectrum enclosures.

mod boundary;
mod enclosure;
mod interior;
mod spectrum;

pub use boundary::{boundary_norm_upper, boundary_norm_upper_with, float_boundary_estimate, BoundaryOptions, BoundaryReport};
pub use enclosure::{
    certify_enclosure, certify_enclosure_near, distance_bound, near_window, CertificationRecord, EigenEnclosure, TensionBound,
};
pub use interior::{interior_grid, interior_norm_lower, interior_norm_lower_with, InteriorReport, DEFAULT_GRID, DEFAULT_SHRINK};
pub use spectrum::{
    certify_from_candidates, certify_selected, certify_spectrum, check_positions, search_candidates, tension_bound, CertifiedEigenvalue, CertifiedSpectrum,
    CertifyOptions,
};
