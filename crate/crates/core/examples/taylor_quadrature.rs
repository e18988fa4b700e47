//! Degree-m Taylor model of J0 along a segment and the rigorous integral of its square.
//!
//! cargo run --release --example taylor_quadrature -- [degree]

use trispec::bessel::BesselKind;
use trispec::taylor::{bessel_taylor, integrate_even_part, TaylorModel};
use trispec::Interval;

const P: u32 = 256;

fn main() -> trispec::Result<()> {
    let degree: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(25);
    let degree = if degree % 2 == 0 { degree + 1 } else { degree };
    // argument path x(t) = 4 + 2t, t ∈ [−1, 1], so the segment [2, 6] has length 4
    let path = TaylorModel::from_polynomial(&[Interval::from_int(P, 4), Interval::from_int(P, 2)], degree)?;
    let j0 = bessel_taylor(BesselKind::First, 0, &path)?;
    let sq = j0.mul(&j0);
    println!("J0 model: degree {}, remainder ≤ {:.3e}", j0.degree(), j0.remainder().hi_f64());
    let integral = integrate_even_part(&sq, &Interval::from_int(P, 4))?;
    let (lo, hi) = integral.to_decimal(25);
    println!("∫_2^6 J0(x)² dx ∈ [{lo}, {hi}]");

    // midpoint-rule cross-check in f64
    let n = 200_000;
    let h = 4.0 / n as f64;
    let approx: f64 = (0..n).map(|i| libm::j0(2.0 + (i as f64 + 0.5) * h).powi(2) * h).sum();
    println!("midpoint rule with {n} panels: {approx:.15}");
    Ok(())
}
