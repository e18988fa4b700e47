//! Rigorous Bessel enclosures next to the f64 values from libm.
//!
//! cargo run --release --example interval_bessel -- [x] [bits]

use trispec::bessel::{bessel, BesselKind};
use trispec::Interval;

fn main() -> trispec::Result<()> {
    let args: Vec<String> = std::env::args().collect();
    let x: f64 = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(7.5);
    let bits: u32 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(256);
    let point = Interval::point(bits, x);
    let wide = Interval::new(bits, x - 1e-3, x + 1e-3);
    for (kind, order, float) in [
        (BesselKind::First, 0, libm::j0(x)),
        (BesselKind::First, 1, libm::j1(x)),
        (BesselKind::Second, 0, libm::y0(x)),
        (BesselKind::Second, 1, libm::y1(x)),
    ] {
        let name = if kind == BesselKind::First { "J" } else { "Y" };
        let enc = bessel(kind, order, &point)?;
        let (lo, hi) = enc.to_decimal(30);
        println!("{name}{order}({x}) ∈ [{lo}, {hi}]  width {:.1e}, libm {float:.17}", enc.width_f64());
        let over = bessel(kind, order, &wide)?;
        println!("    over x ± 1e-3: {over}");
    }
    Ok(())
}
