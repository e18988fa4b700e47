//! Interval evaluation of the approximate eigenfunction and its Taylor
//! models along straight segments `p(t) = mid + t·half`, `t ∈ [−1, 1]`.
//!
//! Charge terms use the coupled recurrences for `Y₀(w)`, `Y₁(w)` with
//! `w = k·r(t)`; center terms use `J_j(kr)e^{ijθ} = (k/2)^j (z−z₀)^j F_j(k²r²/4)`
//! with the Bessel–Clifford derivative rule `F_l' = −F_{l+1}`.

use crate::bessel::{bessel_y01, clifford_family};
use crate::error::{Error, Result};
use crate::interval::{IPoint, Interval};
use crate::taylor::{Jet, TaylorModel};

use super::search::MpsCandidate;

pub const DEFAULT_MODEL_DEGREE: usize = 25;

/// Straight segment between two (possibly uncertain) points.
#[derive(Clone, Debug)]
pub struct Segment {
    pub a: IPoint,
    pub b: IPoint,
}

impl Segment {
    pub fn new(a: IPoint, b: IPoint) -> Self {
        Segment { a, b }
    }

    pub fn mid(&self) -> IPoint {
        let two = Interval::from_int(self.a.x.prec(), 2);
        IPoint::new(&(&self.a.x + &self.b.x) / &two, &(&self.a.y + &self.b.y) / &two)
    }

    pub fn half(&self) -> IPoint {
        let two = Interval::from_int(self.a.x.prec(), 2);
        IPoint::new(&(&self.b.x - &self.a.x) / &two, &(&self.b.y - &self.a.y) / &two)
    }

    pub fn length(&self) -> Interval {
        self.b.sub(&self.a).norm()
    }

    /// Point at parameter `t ∈ [−1, 1]`.
    pub fn at(&self, t: &Interval) -> IPoint {
        self.mid().add(&self.half().scale(t))
    }

    /// Sub-segment over `[t0, t1] ⊂ [−1, 1]`.
    pub fn sub(&self, t0: &Interval, t1: &Interval) -> Segment {
        Segment { a: self.at(t0), b: self.at(t1) }
    }

    pub fn split(&self) -> (Segment, Segment) {
        let m = self.mid();
        (Segment::new(self.a.clone(), m.clone()), Segment::new(m, self.b.clone()))
    }
}

/// The candidate's eigenfunction with every parameter lifted to intervals.
#[derive(Clone, Debug)]
pub struct RigorousEigenfunction {
    prec: u32,
    k: Interval,
    charges: Vec<IPoint>,
    center: IPoint,
    coeffs: Vec<Interval>,
    d: usize,
}

impl RigorousEigenfunction {
    pub fn new(cand: &MpsCandidate, prec: u32) -> Self {
        Self::with_coeffs(cand, &cand.coeffs, prec)
    }

    /// Same basis and wavenumber as `cand`, different coefficients.
    pub fn with_coeffs(cand: &MpsCandidate, coeffs: &[f64], prec: u32) -> Self {
        let b = &cand.basis;
        RigorousEigenfunction {
            prec,
            k: Interval::point(prec, cand.lambda).sqrt(),
            charges: b.charges.iter().map(|q| IPoint::from_f64(prec, q[0], q[1])).collect(),
            center: IPoint::from_f64(prec, b.center[0], b.center[1]),
            coeffs: coeffs.iter().map(|&c| Interval::point(prec, c)).collect(),
            d: b.spec.d,
        }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn k(&self) -> &Interval {
        &self.k
    }

    /// Direct enclosure of `u(p)` for every `p` in the box.
    pub fn eval_point(&self, p: &IPoint) -> Result<Interval> {
        let mut u = Interval::zero(self.prec);
        for (i, q) in self.charges.iter().enumerate() {
            let c = &self.coeffs[3 * i..3 * i + 3];
            if c.iter().all(|v| v.is_point() && v.mag_f64() == 0.0) {
                continue;
            }
            let dx = &p.x - &q.x;
            let dy = &p.y - &q.y;
            let r = (&dx.sqr() + &dy.sqr()).sqrt();
            if !r.is_positive() {
                return Err(Error::SegmentThroughCharge);
            }
            let (y0, y1) = bessel_y01(&(&self.k * &r))?;
            u.add_mul(&c[0], &y0);
            let ang = &(&(&c[1] * &dx) + &(&c[2] * &dy)) / &r;
            u.add_mul(&ang, &y1);
        }
        let base = 3 * self.charges.len();
        let dx = &p.x - &self.center.x;
        let dy = &p.y - &self.center.y;
        let s = &self.k.sqr().div_u32(4) * &(&dx.sqr() + &dy.sqr());
        let f = clifford_family(self.d as u32, &s.clamp_nonnegative())?;
        u.add_mul(&self.coeffs[base], &f[0]);
        let half_k = self.k.div_u32(2);
        let (mut re, mut im) = (Interval::one(self.prec), Interval::zero(self.prec));
        let mut scale = Interval::one(self.prec);
        for j in 1..=self.d {
            let nre = &(&re * &dx) - &(&im * &dy);
            let nim = &(&re * &dy) + &(&im * &dx);
            re = nre;
            im = nim;
            scale = &scale * &half_k;
            let t = &(&(&self.coeffs[base + 2 * j - 1] * &re) + &(&self.coeffs[base + 2 * j] * &im)) * &scale;
            u.add_mul(&t, &f[j]);
        }
        Ok(u)
    }

    /// Jet of `t ↦ u(mid + t·half)` at the base `t0` (a point or the whole range).
    pub fn jet(&self, seg: &Segment, t0: &Interval, len: usize) -> Result<Jet> {
        let mid = seg.mid();
        let half = seg.half();
        let px = &mid.x + &(&half.x * t0);
        let py = &mid.y + &(&half.y * t0);
        let mut u = Jet::constant(Interval::zero(self.prec), len);
        for (i, q) in self.charges.iter().enumerate() {
            let c = &self.coeffs[3 * i..3 * i + 3];
            if c.iter().all(|v| v.is_point() && v.mag_f64() == 0.0) {
                continue;
            }
            u.add_assign(&self.charge_jet(c, &(&px - &q.x), &(&py - &q.y), &half, len)?);
        }
        let dx = &px - &self.center.x;
        let dy = &py - &self.center.y;
        u.add_assign(&self.center_jet(&dx, &dy, &half, len)?);
        Ok(u)
    }

    fn charge_jet(&self, c: &[Interval], dx: &Interval, dy: &Interval, h: &IPoint, len: usize) -> Result<Jet> {
        let prec = self.prec;
        let q0 = &dx.sqr() + &dy.sqr();
        if !q0.is_positive() {
            return Err(Error::SegmentThroughCharge);
        }
        let mut qc = vec![Interval::zero(prec); len.max(3)];
        qc[0] = q0;
        qc[1] = (&(dx * &h.x) + &(dy * &h.y)).mul_u32(2);
        qc[2] = &h.x.sqr() + &h.y.sqr();
        qc.truncate(len);
        let r = Jet::from_coeffs(qc).sqrt();
        let invr = r.recip();
        let dr = r.derivative();
        let g = dr.mul(&invr);
        let w1 = dr.scale(&self.k);
        let (a0, b0) = bessel_y01(&(&self.k * r.value()))?;
        // A' = −B w',  B' = A w' − B r'/r
        let mut a = vec![a0];
        let mut b = vec![b0];
        for n in 0..len - 1 {
            let mut da = Interval::zero(prec);
            let mut db = Interval::zero(prec);
            for i in 0..=n {
                da.sub_assign_ref(&(&b[i] * &w1.coeffs()[n - i]));
                db.add_mul(&a[i], &w1.coeffs()[n - i]);
                db.sub_assign_ref(&(&b[i] * &g.coeffs()[n - i]));
            }
            a.push(da.div_u32(n as u32 + 1));
            b.push(db.div_u32(n as u32 + 1));
        }
        let a = Jet::from_coeffs(a);
        let b = Jet::from_coeffs(b);
        // (c1 dx + c2 dy)/r
        let lin = Jet::affine(&(&c[1] * dx) + &(&c[2] * dy), &(&c[1] * &h.x) + &(&c[2] * &h.y), len);
        let ang = lin.mul(&invr);
        let mut out = a.scale(&c[0]);
        out.add_assign(&b.mul(&ang));
        Ok(out)
    }

    fn center_jet(&self, dx: &Interval, dy: &Interval, h: &IPoint, len: usize) -> Result<Jet> {
        let prec = self.prec;
        let d = self.d;
        let k2_4 = self.k.sqr().div_u32(4);
        let s0 = &k2_4 * &(&dx.sqr() + &dy.sqr());
        let s1 = &k2_4 * &(&(dx * &h.x) + &(dy * &h.y)).mul_u32(2);
        let s2x2 = (&k2_4 * &(&h.x.sqr() + &h.y.sqr())).mul_u32(2);
        let top = d + len - 1;
        let f = clifford_family(top as u32, &s0.clamp_nonnegative())?;
        // G_l = F_l∘S, (n+1) G_l[n+1] = −(S'_0 G_{l+1}[n] + S'_1 G_{l+1}[n−1])
        let mut g: Vec<Vec<Interval>> = vec![Vec::new(); top + 1];
        g[top] = vec![f[top].clone()];
        for l in (0..top).rev() {
            let n_l = len.min(top - l + 1);
            let mut col = vec![f[l].clone()];
            for n in 0..n_l - 1 {
                let mut v = &s1 * &g[l + 1][n];
                if n >= 1 {
                    v.add_mul(&s2x2, &g[l + 1][n - 1]);
                }
                col.push((-v).div_u32(n as u32 + 1));
            }
            g[l] = col;
        }
        let base = 3 * self.charges.len();
        let mut out = Jet::from_coeffs(g[0].clone()).scale(&self.coeffs[base]);
        let half_k = self.k.div_u32(2);
        let mut scale = Interval::one(prec);
        let mut re = vec![Interval::zero(prec); len];
        let mut im = vec![Interval::zero(prec); len];
        re[0] = Interval::one(prec);
        for j in 1..=d {
            // multiply by (dx + hx s) + i (dy + hy s)
            let mut nre = vec![Interval::zero(prec); len];
            let mut nim = vec![Interval::zero(prec); len];
            for n in 0..len.min(j + 1) {
                nre[n] = &(&re[n] * dx) - &(&im[n] * dy);
                nim[n] = &(&re[n] * dy) + &(&im[n] * dx);
                if n >= 1 {
                    nre[n].add_mul(&re[n - 1], &h.x);
                    nre[n].sub_assign_ref(&(&im[n - 1] * &h.y));
                    nim[n].add_mul(&re[n - 1], &h.y);
                    nim[n].add_mul(&im[n - 1], &h.x);
                }
            }
            re = nre;
            im = nim;
            scale = &scale * &half_k;
            let (ca, cb) = (&self.coeffs[base + 2 * j - 1], &self.coeffs[base + 2 * j]);
            let poly: Vec<Interval> = (0..len).map(|n| &(&(ca * &re[n]) + &(cb * &im[n])) * &scale).collect();
            let gj = Jet::from_coeffs(g[j].clone());
            // poly has degree ≤ j
            let mut term = vec![Interval::zero(prec); len];
            for (a, pa) in poly.iter().enumerate().take(j + 1) {
                for n in a..len {
                    term[n].add_mul(pa, &gj.coeffs()[n - a]);
                }
            }
            out.add_assign(&Jet::from_coeffs(term));
        }
        Ok(out)
    }

    /// Taylor model of `t ↦ u(p(t))^power` (power 1 or 2) of the given degree.
    ///
    /// Coefficients come from the jet at the midpoint. The remainder is the
    /// smaller of a Cauchy estimate on a complex disk `|t| ≤ ρ` and, when no
    /// useful disk exists, the Lagrange form from a jet over the whole segment.
    fn model(&self, seg: &Segment, degree: usize, power: u32) -> Result<TaylorModel> {
        let zero = Interval::zero(self.prec);
        let mut at = self.jet(seg, &zero, degree + 1)?;
        if power == 2 {
            at = at.sqr();
        }
        let coeffs = at.into_coeffs();
        if let Some(r) = self.cauchy_remainder(seg, degree, power) {
            return TaylorModel::new(coeffs, Interval::point(self.prec, r));
        }
        let range = Interval::new(self.prec, -1.0, 1.0);
        let mut over = self.jet(seg, &range, degree + 2)?;
        if power == 2 {
            over = over.sqr();
        }
        TaylorModel::new(coeffs, over.coeffs()[degree + 1].clone())
    }

    /// Taylor model of `t ↦ u(p(t))`.
    pub fn u_model(&self, seg: &Segment, degree: usize) -> Result<TaylorModel> {
        self.model(seg, degree, 1)
    }

    /// Taylor model of `t ↦ u(p(t))²`.
    pub fn u_sq_model(&self, seg: &Segment, degree: usize) -> Result<TaylorModel> {
        self.model(seg, degree, 2)
    }

    /// `Σ_{n>m} M ρ^{−n} ≤ M ρ^{−(m+1)} / (1 − 1/ρ)` minimized over a few radii.
    fn cauchy_remainder(&self, seg: &Segment, degree: usize, power: u32) -> Option<f64> {
        let geo = MajorantGeometry::new(self, seg);
        let rho_max = 0.9 * geo.charge_ratio();
        let mut best: Option<f64> = None;
        let mut rho = 1.5f64;
        while rho <= rho_max.min(1e6) {
            if let Some(m) = geo.bound(rho) {
                let m = m.powi(power as i32);
                let r = up(up(m * up(rho.powi(-(degree as i32 + 1)))) / (1.0 - 1.0 / rho));
                if r.is_finite() && best.is_none_or(|b| r < b) {
                    best = Some(r);
                }
            }
            rho *= 1.5;
        }
        best
    }
}

fn up(x: f64) -> f64 {
    // one ulp of slack for a single rounded f64 operation
    if x.is_finite() && x != 0.0 { x.next_up() } else { x }
}

/// Real majorants of `|u|` on the complexified segment `mid + t·half`, `|t| ≤ ρ`.
///
/// With `q(t) = |p(t) − Q|²` continued analytically, `r = √q` has
/// `|r| ∈ [|D| − ρ|H|, |D| + ρ|H|]` and `|Im r|² ≤ 2|D||H|ρ + |H|²ρ²`.
/// First-kind terms use `|J_ν(z)| ≤ |z/2|^ν e^{|Im z|}/ν!`; second-kind
/// terms use `Y₀(z) = (4/π²)∫₀^{π/2} cos(z cos θ)(γ + ln(2z sin²θ)) dθ` and
/// its derivative, which give
/// `|Y₀(z)| ≤ (2/π) e^{|Im z|}(γ + |ln|2z|| + π/2 + 2 ln 2)` and
/// `|Y₁(z)| ≤ |Y₀| bound + 2e^{|Im z|}/(π|z|)`.
struct MajorantGeometry {
    k: f64,
    half: f64,
    /// `(|D| lower, |D| upper, |c₀|, ‖(c₁, c₂)‖)` per charge.
    charges: Vec<(f64, f64, f64, f64)>,
    center_dist: f64,
    center_coeffs: Vec<f64>,
}

impl MajorantGeometry {
    fn new(f: &RigorousEigenfunction, seg: &Segment) -> Self {
        let mid = seg.mid();
        let half = seg.half().norm().hi_f64();
        let charges = f
            .charges
            .iter()
            .enumerate()
            .map(|(i, q)| {
                let d = mid.sub(q).norm();
                let c = &f.coeffs[3 * i..3 * i + 3];
                let c0 = c[0].mag_f64();
                let c12 = (&c[1].sqr() + &c[2].sqr()).sqrt().hi_f64();
                (d.lo_f64(), d.hi_f64(), c0, c12)
            })
            .collect();
        let base = 3 * f.charges.len();
        let mut center_coeffs = vec![f.coeffs[base].mag_f64()];
        for j in 1..=f.d {
            center_coeffs.push(up(f.coeffs[base + 2 * j - 1].mag_f64() + f.coeffs[base + 2 * j].mag_f64()));
        }
        MajorantGeometry {
            k: f.k.hi_f64(),
            half,
            charges,
            center_dist: mid.sub(&f.center).norm().hi_f64(),
            center_coeffs,
        }
    }

    fn charge_ratio(&self) -> f64 {
        if self.half == 0.0 {
            return f64::INFINITY;
        }
        self.charges.iter().map(|c| c.0 / self.half).fold(f64::INFINITY, f64::min)
    }

    fn bound(&self, rho: f64) -> Option<f64> {
        let p = MAJORANT_PREC;
        let k = Interval::point(p, self.k);
        let reach = Interval::point(p, rho) * Interval::point(p, self.half);
        let pi = Interval::pi(p);
        let two = Interval::from_int(p, 2);
        // γ + π/2 + 2 ln 2
        let consts = &(&Interval::euler(p) + &(&pi / &two)) + &Interval::from_int(p, 4).ln()?;
        // |Im r| ≤ √(2|D|ρ|H| + ρ²|H|²), and also |D|(1 − √(1 − ε)) with
        // ε = (2|D|ρ|H| + ρ²|H|²)/|D|² when ε < 1, since r = |D|√(1 + ε')
        let im_growth = |d: &Interval| -> Interval {
            let spread = &(d.upper_point() * &reach).mul_u32(2) + &reach.sqr();
            let mut im_r = spread.sqrt();
            let eps = &spread / &d.lower_point().sqr();
            if eps.hi_f64() < 1.0 {
                let one = Interval::one(p);
                let alt = &d.upper_point() * &(&one - &(&one - &eps).sqrt());
                if alt.hi_f64() < im_r.hi_f64() {
                    im_r = alt;
                }
            }
            (&k * &im_r).exp().upper_point()
        };
        let mut total = Interval::zero(p);
        for &(dlo, dhi, c0, c12) in &self.charges {
            if c0 == 0.0 && c12 == 0.0 {
                continue;
            }
            let rlo = Interval::point(p, dlo) - reach.clone();
            if !rlo.is_positive() {
                return None;
            }
            let dh = Interval::point(p, dhi);
            let rhi = &dh + &reach;
            let grow = im_growth(&Interval::new(p, dlo, dhi));
            let zlo = (&k * &rlo).lower_point();
            let zhi = (&k * &rhi).upper_point();
            let log_2z = zlo.mul_u32(2).ln()?.abs().max(&zhi.mul_u32(2).ln()?.abs());
            let y0 = &(&(&two / &pi) * &grow) * &(&log_2z + &consts);
            let y1 = &y0 + &(&(&two * &grow) / &(&pi * &zlo));
            let ratio = &rhi / &rlo;
            let term = &(&Interval::point(p, c0) * &y0) + &(&(&Interval::point(p, c12) * &ratio) * &y1);
            total = &total + &term;
        }
        let dc = Interval::point(p, self.center_dist);
        let grow = im_growth(&dc.hull(&Interval::zero(p)));
        let kz2 = &(&k * &(&dc + &reach)) / &two;
        let mut pow = Interval::one(p);
        let mut acc = Interval::zero(p);
        for (j, c) in self.center_coeffs.iter().enumerate() {
            if j > 0 {
                pow = (&pow * &kz2).div_u32(j as u32);
            }
            if *c != 0.0 {
                acc = &acc + &(&Interval::point(p, *c) * &pow);
            }
        }
        total = &total + &(&acc * &grow);
        let b = total.hi_f64();
        b.is_finite().then_some(b)
    }
}

const MAJORANT_PREC: u32 = 64;

/// Taylor model of `u²` along a segment, degree [`DEFAULT_MODEL_DEGREE`].
pub fn eval_u_taylor(cand: &MpsCandidate, seg: &Segment) -> Result<TaylorModel> {
    RigorousEigenfunction::new(cand, seg.a.x.prec()).u_sq_model(seg, DEFAULT_MODEL_DEGREE)
}

/// Taylor model of `u` along a segment, degree [`DEFAULT_MODEL_DEGREE`].
pub fn eval_u_model(cand: &MpsCandidate, seg: &Segment) -> Result<TaylorModel> {
    RigorousEigenfunction::new(cand, seg.a.x.prec()).u_model(seg, DEFAULT_MODEL_DEGREE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::BesselKind;
    use crate::mps::{Basis, BasisSpec};
    use crate::taylor::bessel_taylor;

    const P: u32 = 128;

    fn candidate(coeffs: Vec<f64>, lambda: f64) -> MpsCandidate {
        let basis = Basis::from_apex([0.635, 0.275], BasisSpec { n_c: 2, sigma: 2.5, ell0: 1.0, d: 4 }).unwrap();
        MpsCandidate { lambda, coeffs, basis, smin: 0.0 }
    }

    fn seg(a: (f64, f64), b: (f64, f64)) -> Segment {
        Segment::new(IPoint::from_f64(P, a.0, a.1), IPoint::from_f64(P, b.0, b.1))
    }

    #[test]
    fn zero_coefficients_give_zero_model() {
        let c = candidate(vec![0.0; 27], 60.0);
        let m = RigorousEigenfunction::new(&c, P).u_sq_model(&seg((0.1, 0.0), (0.4, 0.0)), 9).unwrap();
        assert!(m.coeffs().iter().all(|v| v.mag_f64() == 0.0));
        assert_eq!(m.remainder().hi_f64(), 0.0);
    }

    #[test]
    fn model_encloses_f64_and_direct_values() {
        let coeffs: Vec<f64> = (0..27).map(|i| ((i * 7 % 5) as f64 - 2.0) * 0.3 + 0.05).collect();
        let c = candidate(coeffs.clone(), 60.0);
        let f = RigorousEigenfunction::new(&c, P);
        let s = seg((0.3, 0.05), (0.36, 0.07));
        let m = f.u_model(&s, 15).unwrap();
        for i in 0..=10 {
            let t = -1.0 + 0.2 * i as f64;
            let ti = Interval::point(P, t);
            let direct = f.eval_point(&s.at(&ti)).unwrap();
            let model = m.eval(&ti);
            assert!(model.overlaps(&direct));
            assert!(direct.width_f64() < 1e-25);
            let p = s.at(&ti).mid_f64();
            let float = c.basis.eval_sum(&coeffs, p.0, p.1, 60f64.sqrt());
            assert!((direct.mid_f64() - float).abs() < 1e-10, "{t}: {} vs {float}", direct.mid_f64());
        }
        assert!(m.remainder().hi_f64() < 1e-10, "{:?}", m.remainder());
    }

    #[test]
    fn single_j0_matches_bessel_taylor() {
        let mut coeffs = vec![0.0; 27];
        coeffs[18] = 1.0;
        let lambda = 49.0;
        let basis = Basis::from_apex([0.5, 0.75], BasisSpec { n_c: 2, sigma: 2.5, ell0: 1.0, d: 4 }).unwrap();
        let c = MpsCandidate { lambda, coeffs, basis, smin: 0.0 };
        let ctr = c.basis.center;
        assert_eq!(ctr, [0.5, 0.25]);
        // radial segment from the center outward
        let s = seg((ctr[0] + 0.125, ctr[1]), (ctr[0] + 0.375, ctr[1]));
        let m = RigorousEigenfunction::new(&c, P).u_sq_model(&s, 11).unwrap();
        // J0(7(0.25 + 0.125 t))
        let arg = TaylorModel::from_polynomial(&[Interval::ratio(P, 7, 4), Interval::ratio(P, 7, 8)], 11).unwrap();
        let j = bessel_taylor(BesselKind::First, 0, &arg).unwrap();
        let sq = j.mul(&j);
        for i in 0..=8 {
            let t = Interval::point(P, -1.0 + 0.25 * i as f64);
            assert!(m.eval(&t).overlaps(&sq.eval(&t)), "{:?} {:?} {:?}", m.eval(&t), sq.eval(&t), m.remainder());
        }
    }

    #[test]
    fn through_charge_is_rejected() {
        let c = candidate(vec![1.0; 27], 60.0);
        let q = c.basis.charges[1];
        let s = seg((q[0] - 0.1, q[1]), (q[0] + 0.1, q[1]));
        assert!(matches!(RigorousEigenfunction::new(&c, P).u_sq_model(&s, 5), Err(Error::SegmentThroughCharge)));
    }
}
