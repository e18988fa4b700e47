//! Validates the sign of `ξ − ξ̄` on one sub-segment of a reference parallelogram side.
//!
//! Usage: validate_segment [SIDE N INDEX], e.g. `validate_segment A:+v21 40 20`

use std::time::Instant;

use trispec::prover::{validate_segment, ProverConfig};

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (side, n, index) = if args.len() >= 3 { (args[0].clone(), args[1].parse()?, args[2].parse()?) } else { ("A:+v21".into(), 40, 20) };
    let cfg = ProverConfig::reference();
    let task = cfg.task(&side, n, index)?;
    let clock = Instant::now();
    let v = validate_segment(&task, &cfg.certify_options())?;
    for e in &v.eig_enclosures {
        println!("λ_{} ∈ {}  width {:.2e}", e.index, e.value, e.value.width_f64());
    }
    println!("λ_{} ≥ {:.4} at the midpoint", task.target().k() + 1, v.midpoint_next_lower.lo_f64());
    println!("ξ at midpoint {}  radius {:.3e} ({:?})", v.midpoint_xi, v.radius.hi_f64(), v.mode);
    println!("ξ on sub-segment {}  vs ξ̄ = {}", v.xi_enclosure, task.threshold().mid_f64());
    println!("sign {:+}, expected {:+}: {}  [{:.1?}]", v.certified_sign, task.expected_sign, if v.sign_ok { "ok" } else { "WRONG" }, clock.elapsed());
    Ok(())
}
