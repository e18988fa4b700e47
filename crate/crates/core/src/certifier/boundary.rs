use crate::error::{Error, Result};
use crate::geometry::Triangle;
use crate::interval::{IPoint, Interval};
use crate::mps::{MpsCandidate, RigorousEigenfunction, Segment, DEFAULT_MODEL_DEGREE};
use crate::taylor::integrate_even_part;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryOptions {
    /// Initial Chebyshev-graded segments per side.
    pub initial: usize,
    /// Odd Taylor degree.
    pub degree: usize,
    /// A segment is accepted once its enclosure width is below this
    /// fraction of the estimated total, scaled by the segment's share of the perimeter.
    pub rel_tol: f64,
    pub max_depth: u32,
}

impl Default for BoundaryOptions {
    fn default() -> Self {
        BoundaryOptions { initial: 16, degree: DEFAULT_MODEL_DEGREE, rel_tol: 1e-3, max_depth: 12 }
    }
}

/// Statistics of a boundary integration, for reporting.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct BoundaryReport {
    pub segments: usize,
    pub splits: usize,
    pub deepest: u32,
}

pub fn boundary_norm_upper(cand: &MpsCandidate, t: &Triangle) -> Result<Interval> {
    boundary_norm_upper_with(cand, t, &BoundaryOptions::default()).map(|r| r.0)
}

/// Rigorous enclosure of `∫_∂T u²` (lower end clamped at zero).
pub fn boundary_norm_upper_with(cand: &MpsCandidate, t: &Triangle, opts: &BoundaryOptions) -> Result<(Interval, BoundaryReport)> {
    let prec = t.prec();
    let f = RigorousEigenfunction::new(cand, prec);
    let verts = t.vertices();
    let perimeter = t.perimeter().hi_f64();
    let estimate = float_boundary_estimate(cand, t).max(f64::MIN_POSITIVE);
    let mut report = BoundaryReport::default();
    let mut total = Interval::zero(prec);
    let mut work: Vec<(Segment, u32)> = Vec::new();
    let pi = Interval::pi(prec);
    for s in 0..3 {
        let (p, q) = (&verts[s], &verts[(s + 1) % 3]);
        let dir = q.sub(p);
        let n = opts.initial.max(1);
        let nodes: Vec<IPoint> = (0..=n)
            .map(|j| {
                let a = if j == 0 {
                    Interval::zero(prec)
                } else if j == n {
                    Interval::one(prec)
                } else {
                    (&Interval::one(prec) - &(&pi * &Interval::ratio(prec, j as i64, n as i64)).cos()).div_u32(2)
                };
                p.add(&dir.scale(&a))
            })
            .collect();
        for w in nodes.windows(2).rev() {
            work.push((Segment::new(w[0].clone(), w[1].clone()), 0));
        }
    }
    while let Some((seg, depth)) = work.pop() {
        let model = f.u_sq_model(&seg, opts.degree)?;
        let len = seg.length();
        let integral = integrate_even_part(&model, &len)?;
        let tol = opts.rel_tol * estimate * len.hi_f64() / perimeter;
        let width = integral.width_f64();
        if width <= tol {
            total = &total + &integral;
            report.segments += 1;
            report.deepest = report.deepest.max(depth);
            continue;
        }
        if depth >= opts.max_depth {
            return Err(Error::NonconvergentSubdivision { depth });
        }
        report.splits += 1;
        let (a, b) = seg.split();
        work.push((b, depth + 1));
        work.push((a, depth + 1));
    }
    Ok((total.clamp_nonnegative(), report))
}

/// Non-rigorous estimate of `∫_∂T u²` by Gauss–Legendre panels, used only to
/// steer subdivision.
pub fn float_boundary_estimate(cand: &MpsCandidate, t: &Triangle) -> f64 {
    let v = t.vertices_f64();
    let panels = 256;
    let g = [-0.906179845938664, -0.5384693101056831, 0.0, 0.5384693101056831, 0.906179845938664];
    let w = [0.23692688505618908, 0.47862867049936647, 0.5688888888888889, 0.47862867049936647, 0.23692688505618908];
    let mut sum = 0.0;
    for s in 0..3 {
        let (p, q) = (v[s], v[(s + 1) % 3]);
        let len = (q.0 - p.0).hypot(q.1 - p.1);
        for i in 0..panels {
            // cosine-graded panels
            let a0 = 0.5 * (1.0 - (std::f64::consts::PI * i as f64 / panels as f64).cos());
            let a1 = 0.5 * (1.0 - (std::f64::consts::PI * (i + 1) as f64 / panels as f64).cos());
            for (gx, gw) in g.iter().zip(w) {
                let a = 0.5 * (a0 + a1) + 0.5 * (a1 - a0) * gx;
                let u = cand.eval(p.0 + a * (q.0 - p.0), p.1 + a * (q.1 - p.1));
                sum += 0.5 * (a1 - a0) * gw * u * u * len;
            }
        }
    }
    sum
}
