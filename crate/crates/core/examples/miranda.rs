//! The Miranda conclusion on synthetic verdicts where ξ − ξ̄ is linear on each
//! parallelogram, then with one verdict removed.
//!
//! cargo run --release --example miranda -- [N]

use trispec::prover::{linear_verdicts, miranda_conclude, ProverConfig};

fn main() -> trispec::Result<()> {
    let mut cfg = ProverConfig::reference();
    cfg.n_sub = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let (mut verdicts, positions) = linear_verdicts(&cfg)?;
    let cert = miranda_conclude(&cfg, &verdicts, &positions)?;
    println!("{}", serde_json::to_string_pretty(&cert).expect("certificate serializes"));
    let dropped = verdicts.remove(verdicts.len() / 2).key();
    match miranda_conclude(&cfg, &verdicts, &positions) {
        Ok(_) => println!("unexpectedly concluded without {dropped}"),
        Err(e) => println!("without {dropped}: {e}"),
    }
    Ok(())
}
