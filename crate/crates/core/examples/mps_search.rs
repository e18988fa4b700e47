//! Searches for approximate eigenpairs of a triangle and reports a
//! floating-point estimate of their tension.
//!
//! Usage: mps_search [cx cy lo hi] [n_c d]

use std::time::Instant;

use trispec::geometry::Triangle;
use trispec::mps::{golden_search, BasisSpec, MpsCandidate};

fn boundary_sq(c: &MpsCandidate) -> f64 {
    let v = [[0.0, 0.0], [1.0, 0.0], c.basis.apex];
    let panels = 2000;
    let mut sum = 0.0;
    for s in 0..3 {
        let (p, q) = (v[s], v[(s + 1) % 3]);
        let len = (q[0] - p[0]).hypot(q[1] - p[1]);
        for i in 0..panels {
            // two-point Gauss per panel
            for g in [-1.0 / 3f64.sqrt(), 1.0 / 3f64.sqrt()] {
                let a = (i as f64 + 0.5 + 0.5 * g) / panels as f64;
                let u = c.eval(p[0] + a * (q[0] - p[0]), p[1] + a * (q[1] - p[1]));
                sum += 0.5 * u * u * len / panels as f64;
            }
        }
    }
    sum
}

fn interior_sq(c: &MpsCandidate) -> f64 {
    let [cx, cy] = c.basis.apex;
    let n = 200;
    let area = 0.5 * cy / (n * n) as f64;
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n - i {
            // barycentric grid, centroids of up and down cells
            let pt = |a: f64, b: f64| (a / n as f64 + b / n as f64 * cx, b / n as f64 * cy);
            let (x, y) = pt(i as f64 + 1.0 / 3.0, j as f64 + 1.0 / 3.0);
            sum += c.eval(x, y).powi(2) * area;
            if i + j + 1 < n {
                let (x, y) = pt(i as f64 + 2.0 / 3.0, j as f64 + 2.0 / 3.0);
                sum += c.eval(x, y).powi(2) * area;
            }
        }
    }
    sum
}

fn main() {
    let args: Vec<f64> = std::env::args().skip(1).map(|a| a.parse().expect("numeric argument")).collect();
    let (cx, cy, lo, hi) = if args.len() >= 4 { (args[0], args[1], args[2], args[3]) } else { (0.0, 1.0, 45.0, 55.0) };
    let mut spec = BasisSpec::default();
    if args.len() >= 6 {
        spec.n_c = args[4] as usize;
        spec.d = args[5] as usize;
    }
    let t = Triangle::from_f64(trispec::DEFAULT_PRECISION, cx, cy).expect("valid triangle");
    let start = Instant::now();
    let c = golden_search(&t, (lo, hi), spec).expect("search");
    println!("lambda = {:.15}  smin = {:.3e}  ({:.1?})", c.lambda, c.smin, start.elapsed());
    let b = boundary_sq(&c);
    let i = interior_sq(&c);
    println!("boundary ≈ {b:.3e}  interior ≈ {i:.3e}  tension ≈ {:.3e}", (b / i).sqrt());
    let cmax = c.coeffs.iter().fold(0f64, |m, x| m.max(x.abs()));
    println!("max |c_i| = {cmax:.3e}  ‖u‖ = {:.3e}", i.sqrt());
}
