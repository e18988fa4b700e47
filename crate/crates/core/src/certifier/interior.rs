use std::collections::HashMap;

use rug::Float;

use crate::bessel::j0_first_zero;
use crate::error::{Error, Result};
use crate::geometry::Triangle;
use crate::interval::{IPoint, Interval};
use crate::mps::{MpsCandidate, RigorousEigenfunction, Segment, DEFAULT_MODEL_DEGREE};
use crate::taylor::TaylorModel;

pub const DEFAULT_GRID: usize = 8;
pub const DEFAULT_SHRINK: f64 = 0.8;

/// Relative precision at which a piece's lower bound of `|u|` is accepted.
const PIECE_REL_TOL: f64 = 1e-2;
/// Maximum bisection depth of the parameter interval of one grid edge.
const PIECE_MAX_DEPTH: u32 = 12;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct InteriorReport {
    pub triangles: usize,
    pub contributing: usize,
    pub sign_changes: usize,
}

/// Grid of the interior triangle `G + shrink·(T − G)` (`G` the centroid),
/// split into `n²` congruent triangles. Returns the lattice points and the
/// vertex-index triples of the cells.
pub fn interior_grid(t: &Triangle, grid_n: usize, shrink: &Interval) -> (Vec<IPoint>, Vec<[usize; 3]>) {
    let g = t.centroid();
    let v: Vec<IPoint> = t.vertices().iter().map(|p| g.add(&p.sub(&g).scale(shrink))).collect();
    let prec = t.prec();
    let e1 = v[1].sub(&v[0]);
    let e2 = v[2].sub(&v[0]);
    let n = grid_n;
    let mut index = HashMap::new();
    let mut pts = Vec::new();
    for j in 0..=n {
        for i in 0..=n - j {
            let a = Interval::ratio(prec, i as i64, n as i64);
            let b = Interval::ratio(prec, j as i64, n as i64);
            index.insert((i, j), pts.len());
            pts.push(v[0].add(&e1.scale(&a)).add(&e2.scale(&b)));
        }
    }
    let mut cells = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n - j {
            cells.push([index[&(i, j)], index[&(i + 1, j)], index[&(i, j + 1)]]);
            if i + j + 2 <= n {
                cells.push([index[&(i + 1, j)], index[&(i + 1, j + 1)], index[&(i, j + 1)]]);
            }
        }
    }
    (pts, cells)
}

pub fn interior_norm_lower(cand: &MpsCandidate, t: &Triangle, grid_n: usize, shrink: f64) -> Result<Interval> {
    interior_norm_lower_with(cand, t, grid_n, shrink).map(|r| r.0)
}

/// Rigorous lower bound of `∫_T u²` from a minimum-principle argument on
/// each grid cell: `|u| ≥ b` on `∂τ` and `|τ| < π j₀²/λ` give `u² ≥ b²` on `τ`.
pub fn interior_norm_lower_with(cand: &MpsCandidate, t: &Triangle, grid_n: usize, shrink: f64) -> Result<(Interval, InteriorReport)> {
    if grid_n == 0 || !(shrink > 0.0 && shrink < 1.0) {
        return Err(Error::Precondition(format!("grid_n = {grid_n}, shrink = {shrink}")));
    }
    let prec = t.prec();
    let shrink_i = Interval::point(prec, shrink);
    let cell_area = &(&t.area() * &shrink_i.sqr()) / &Interval::from_int(prec, (grid_n * grid_n) as i64);
    // nodal domains of u have area at least π j₀² / λ
    let lambda = Interval::point(prec, cand.lambda);
    let fk = &(&Interval::pi(prec) * &j0_first_zero(prec).sqr()) / &lambda;
    if !cell_area.lt(&fk) {
        let (lo, hi) = cell_area.to_decimal(6);
        return Err(Error::FaberKrahn(format!("[{lo}, {hi}]")));
    }
    let f = RigorousEigenfunction::new(cand, prec);
    let (pts, cells) = interior_grid(t, grid_n, &shrink_i);
    let mut edge_bounds: HashMap<(usize, usize), Option<(Float, i8)>> = HashMap::new();
    let mut total = Interval::zero(prec);
    let mut report = InteriorReport { triangles: cells.len(), ..Default::default() };
    for cell in &cells {
        if float_sign_change(cand, &pts, cell) {
            report.sign_changes += 1;
            continue;
        }
        let mut b: Option<Float> = None;
        let mut sign = 0i8;
        for e in 0..3 {
            let (i, j) = (cell[e].min(cell[(e + 1) % 3]), cell[e].max(cell[(e + 1) % 3]));
            let bound = match edge_bounds.get(&(i, j)) {
                Some(v) => v.clone(),
                None => {
                    let v = edge_lower_bound(&f, &Segment::new(pts[i].clone(), pts[j].clone()))?;
                    edge_bounds.insert((i, j), v.clone());
                    v
                }
            };
            match bound {
                Some((m, s)) if sign == 0 || s == sign => {
                    sign = s;
                    b = Some(match b {
                        Some(prev) if prev < m => prev,
                        _ => m,
                    });
                }
                _ => {
                    b = None;
                    break;
                }
            }
        }
        if let Some(b) = b {
            let bi = Interval::zero(prec).add_float(&b);
            let contribution = (&bi.sqr() * &cell_area).lower_point();
            total = &total + &contribution;
            report.contributing += 1;
        }
    }
    if !total.is_positive() {
        return Err(Error::SignTestFailure);
    }
    Ok((total.lower_point(), report))
}

/// Whether floating-point samples on the cell boundary show both signs clearly.
fn float_sign_change(cand: &MpsCandidate, pts: &[IPoint], cell: &[usize; 3]) -> bool {
    let p: Vec<(f64, f64)> = cell.iter().map(|&i| pts[i].mid_f64()).collect();
    let mut pos = false;
    let mut neg = false;
    let scale: f64 = p.iter().map(|q| cand.basis.eval_abs_sum(&cand.coeffs, q.0, q.1, cand.k())).fold(0.0, f64::max);
    for e in 0..3 {
        let (a, b) = (p[e], p[(e + 1) % 3]);
        for s in 0..8 {
            let w = s as f64 / 8.0;
            let v = cand.eval(a.0 + w * (b.0 - a.0), a.1 + w * (b.1 - a.1));
            if v > 1e-10 * scale {
                pos = true;
            } else if v < -1e-10 * scale {
                neg = true;
            }
        }
    }
    pos && neg
}

/// Certified lower bound of `|u|` along a segment and the sign of `u` there,
/// or `None` if no positive bound is found.
fn edge_lower_bound(f: &RigorousEigenfunction, seg: &Segment) -> Result<Option<(Float, i8)>> {
    let model = f.u_model(seg, DEFAULT_MODEL_DEGREE)?;
    let prec = f.prec();
    Ok(piece_lower_bound(&model, &Interval::new(prec, -1.0, 1.0), 0))
}

fn piece_lower_bound(model: &TaylorModel, piece: &Interval, depth: u32) -> Option<(Float, i8)> {
    let enc = model.range_on(piece);
    if let Some(sign) = enc.sign().filter(|s| *s != 0) {
        let mig = enc.mig();
        if enc.width_f64() <= PIECE_REL_TOL * mig.to_f64() || depth >= PIECE_MAX_DEPTH {
            return Some((mig, sign));
        }
    } else if depth >= PIECE_MAX_DEPTH {
        return None;
    }
    let prec = piece.prec();
    let mid = Interval::zero(prec).add_float(&piece.mid());
    let left = Interval::from_floats(piece.lo().clone(), mid.hi().clone())?;
    let right = Interval::from_floats(mid.lo().clone(), piece.hi().clone())?;
    let (a, sa) = piece_lower_bound(model, &left, depth + 1)?;
    let (b, sb) = piece_lower_bound(model, &right, depth + 1)?;
    if sa != sb {
        return None;
    }
    Some((if a < b { a } else { b }, sa))
}
