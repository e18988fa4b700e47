//! Homothety containment and the quotient stability radius along a sub-segment of A.
//!
//! cargo run --release --example stability_radius -- [N]

use trispec::fem::fem_estimates;
use trispec::geometry::{containment_homothety, quotient_stability_radius};
use trispec::prover::ProverConfig;
use trispec::Interval;

fn main() -> trispec::Result<()> {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(40);
    let cfg = ProverConfig::reference();
    let task = cfg.task("A:+v21", n, n / 2)?;
    let sp = task.perturbation()?;
    let mode = sp.mode()?;
    let (p, q) = sp.cross_products();
    println!("p_v = {:.4e}, q_v = {:.4e}: {mode:?}", p.mid_f64(), q.mid_f64());
    println!("eigenvalue factor Φ = {:.10}", sp.eigenvalue_factor()?.hi_f64());

    let ends = [sp.at(&(-&sp.ell))?, sp.at(&sp.ell)?];
    let cert = containment_homothety(&ends[0], &ends[1])?;
    println!("end triangles: {:?} with factor {:.10}", cert.direction, cert.factor.hi_f64());

    let e = fem_estimates(&sp.base, 24, 2)?;
    let xi = e[1] / e[0];
    let r = quotient_stability_radius(&sp, &Interval::point(sp.base.prec(), xi), mode)?;
    println!("FEM ξ21 at the midpoint {xi:.6}, radius {:.3e}", r.hi_f64());
    for t in ends {
        let e = fem_estimates(&t, 24, 2)?;
        println!("    at an end ξ21 = {:.6} (|Δ| = {:.3e})", e[1] / e[0], (e[1] / e[0] - xi).abs());
    }
    Ok(())
}
