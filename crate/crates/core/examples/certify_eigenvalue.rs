//! Certifies a single eigenvalue candidate of a triangle and reports each stage.
//!
//! Usage: certify_eigenvalue [cx cy lo hi] [n_c d]

use std::time::Instant;

use trispec::certifier::{
    boundary_norm_upper_with, certify_enclosure, float_boundary_estimate, interior_norm_lower_with, near_window, BoundaryOptions,
    TensionBound,
};
use trispec::geometry::Triangle;
use trispec::mps::{golden_search, BasisSpec};

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (cx, cy, lo, hi) = if args.len() >= 4 {
        (args[0].as_str(), args[1].as_str(), args[2].parse()?, args[3].parse()?)
    } else {
        ("0", "1", 45.0, 55.0)
    };
    let t = Triangle::parse(trispec::DEFAULT_PRECISION, cx, cy)?;
    let clock = Instant::now();
    let mut spec = BasisSpec::default();
    if args.len() >= 6 {
        spec.n_c = args[4].parse()?;
        spec.d = args[5].parse()?;
    }
    let cand = golden_search(&t, (lo, hi), spec)?;
    println!("candidate λ = {:.15}, σ_min = {:.3e}  [{:.1?}]", cand.lambda, cand.smin, clock.elapsed());

    let clock = Instant::now();
    let (boundary, report) = boundary_norm_upper_with(&cand, &t, &BoundaryOptions::default())?;
    println!(
        "boundary ∫u² ≤ {:.4e} (float estimate {:.4e}); {} segments, {} splits, depth {}  [{:.1?}]",
        boundary.hi_f64(),
        float_boundary_estimate(&cand, &t),
        report.segments,
        report.splits,
        report.deepest,
        clock.elapsed()
    );

    let clock = Instant::now();
    let (interior, report) = interior_norm_lower_with(&cand, &t, 8, 0.8)?;
    println!(
        "interior ∫u² ≥ {:.4e}; {} of {} cells contribute, {} skipped for sign changes  [{:.1?}]",
        interior.lo_f64(),
        report.contributing,
        report.triangles,
        report.sign_changes,
        clock.elapsed()
    );

    let tb = TensionBound::new(boundary, interior)?;
    let (_, rho) = t.incenter_inradius()?;
    let window = near_window(cand.lambda, t.prec());
    let enc = certify_enclosure(&cand, &tb, &rho, &window.upper_point())?;
    let (elo, ehi) = enc.to_decimal(20);
    println!("tension ≤ {:.3e}; enclosure [{elo}, {ehi}], width {:.3e}", tb.tension_upper_f64(), enc.width_f64());
    Ok(())
}
