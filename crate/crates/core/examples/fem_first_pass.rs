//! First pass on the right isosceles triangle: separates the four lowest
//! eigenvalues and prints a certified lower bound for the fifth.
//!
//! cargo run --release --example fem_first_pass -- [N] [k]

use std::time::Instant;

use trispec::fem;
use trispec::geometry::Triangle;

fn main() -> trispec::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(fem::DEFAULT_MESH);
    let k: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(4);
    let t = Triangle::from_f64(128, 0.0, 1.0)?;
    let start = Instant::now();
    let pass = fem::first_pass(&t, n, k)?;
    let pi2 = std::f64::consts::PI.powi(2);
    println!("mesh N = {n}, h = {:.6}", pass.h.mid_f64());
    println!("orthogonality defect s = {:.3e}", pass.separation.orthogonality);
    for (i, est) in pass.estimates.iter().enumerate() {
        println!("  discrete λ_{} ≈ {est:.6}  ({:.4} π²)", i + 1, est / pi2);
    }
    for (c, enc) in pass.separation.cluster_enclosures.iter().enumerate() {
        println!("  cluster {c}: {enc:.10} x{}", pass.separation.multiplicities[c]);
    }
    println!("discrete λ_{} ≥ {:.6}", k + 1, pass.discrete_next.lo_f64());
    println!("continuous λ_{} ≥ {:.6}  (= {:.4} π²)", k + 1, pass.lower_bound.lo_f64(), pass.lower_bound.lo_f64() / pi2);
    println!("elapsed {:.1?}", start.elapsed());
    Ok(())
}
