//! Certifies the first k eigenvalues of a triangle with their indices.
//!
//! Usage: certify_spectrum [cx cy k] [n_c d]

use std::time::Instant;

use trispec::certifier::{certify_spectrum, CertifyOptions};
use trispec::geometry::Triangle;
use trispec::mps::BasisSpec;

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (cx, cy, k) = if args.len() >= 3 { (args[0].as_str(), args[1].as_str(), args[2].parse()?) } else { ("0", "1", 4) };
    let t = Triangle::parse(trispec::DEFAULT_PRECISION, cx, cy)?;
    let clock = Instant::now();
    let mut opts = CertifyOptions::default();
    if args.len() >= 5 {
        opts.basis = BasisSpec { n_c: args[3].parse()?, d: args[4].parse()?, ..BasisSpec::default() };
    }
    let spec = certify_spectrum(&t, k, &opts)?;
    let pi2 = std::f64::consts::PI.powi(2);
    for e in &spec.eigenvalues {
        let (lo, hi) = e.enclosure.value.to_decimal(18);
        println!(
            "λ_{} ∈ [{lo}, {hi}]  width {:.2e}  (= {:.9} π²)  tension ≤ {:.2e}",
            e.enclosure.index,
            e.enclosure.value.width_f64(),
            e.enclosure.value.mid_f64() / pi2,
            e.tension.tension_upper_f64()
        );
    }
    println!("λ_{} ≥ {:.6}  [{:.1?}]", k + 1, spec.next_lower.lo_f64(), clock.elapsed());
    Ok(())
}
