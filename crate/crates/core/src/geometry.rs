//! Normalized triangles, homothety containment and stability radii.
//!
//! A triangle has vertices `(0,0)`, `(1,0)` and an apex `(c_x, c_y)` with
//! `c_y > 0`. Eigenvalue quotients are scale invariant, so this covers the
//! whole moduli space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::{IPoint, Interval};

#[derive(Clone, Debug, PartialEq)]
pub struct Triangle {
    cx: Interval,
    cy: Interval,
}

impl Triangle {
    pub fn new(cx: Interval, cy: Interval) -> Result<Self> {
        if !cy.is_positive() {
            return Err(Error::DegenerateTriangle(format!("apex height {cy} is not positive")));
        }
        Ok(Triangle { cx, cy })
    }

    pub fn from_f64(prec: u32, cx: f64, cy: f64) -> Result<Self> {
        Self::new(Interval::point(prec, cx), Interval::point(prec, cy))
    }

    /// Apex given as decimal strings, enclosed outward.
    pub fn parse(prec: u32, cx: &str, cy: &str) -> Result<Self> {
        let p = |s: &str| Interval::parse(prec, s).ok_or_else(|| Error::Config(format!("cannot parse number {s:?}")));
        Self::new(p(cx)?, p(cy)?)
    }

    pub fn cx(&self) -> &Interval {
        &self.cx
    }

    pub fn cy(&self) -> &Interval {
        &self.cy
    }

    pub fn prec(&self) -> u32 {
        self.cx.prec().max(self.cy.prec())
    }

    pub fn apex(&self) -> IPoint {
        IPoint::new(self.cx.clone(), self.cy.clone())
    }

    pub fn apex_f64(&self) -> (f64, f64) {
        (self.cx.mid_f64(), self.cy.mid_f64())
    }

    /// Vertices `A = (0,0)`, `B = (1,0)`, `C` as midpoint floats.
    pub fn vertices_f64(&self) -> [(f64, f64); 3] {
        [(0.0, 0.0), (1.0, 0.0), self.apex_f64()]
    }

    pub fn vertices(&self) -> [IPoint; 3] {
        let p = self.prec();
        [IPoint::from_f64(p, 0.0, 0.0), IPoint::from_f64(p, 1.0, 0.0), self.apex()]
    }

    pub fn area(&self) -> Interval {
        self.cy.div_u32(2)
    }

    /// Side lengths `(|BC|, |CA|, |AB|)`, each opposite the vertex of the same index.
    pub fn side_lengths(&self) -> [Interval; 3] {
        let p = self.prec();
        let one = Interval::one(p);
        let bc = (&(&self.cx - &one).sqr() + &self.cy.sqr()).sqrt();
        let ca = (&self.cx.sqr() + &self.cy.sqr()).sqrt();
        [bc, ca, one]
    }

    pub fn perimeter(&self) -> Interval {
        let [a, b, c] = self.side_lengths();
        &(&a + &b) + &c
    }

    pub fn diameter(&self) -> Interval {
        let [a, b, c] = self.side_lengths();
        a.max(&b).max(&c)
    }

    pub fn centroid(&self) -> IPoint {
        let p = self.prec();
        let x = (&self.cx + &Interval::one(p)).div_u32(3);
        IPoint::new(x, self.cy.div_u32(3))
    }

    /// Incenter and inradius.
    pub fn incenter_inradius(&self) -> Result<(IPoint, Interval)> {
        if !self.cy.is_positive() {
            return Err(Error::DegenerateTriangle("apex height touches zero".into()));
        }
        let [a, b, c] = self.side_lengths();
        let perim = &(&a + &b) + &c;
        // weights a, b, c on A=(0,0), B=(1,0), C
        let x = &(&b + &(&c * &self.cx)) / &perim;
        let y = &(&c * &self.cy) / &perim;
        let rho = &self.area() / &perim.div_u32(2);
        Ok((IPoint::new(x, y), rho))
    }

    /// Whether the point lies in the closed triangle (midpoint geometry).
    pub fn contains_point_f64(&self, x: f64, y: f64) -> bool {
        let (cx, cy) = self.apex_f64();
        let e0 = y;
        let e1 = (cx - 1.0) * y - cy * (x - 1.0);
        let e2 = -cx * (y - cy) + cy * (x - cx);
        e0 >= 0.0 && e1 >= 0.0 && e2 >= 0.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HomothetyDirection {
    /// The first triangle lies inside a homothetic copy of the second.
    TInScaledTprime,
    /// The second triangle lies inside a homothetic copy of the first.
    TprimeInScaledT,
}

/// Certificate that `T ⊂ h(T′)` (or the reverse) for a homothety `h` with ratio `factor`.
///
/// The homothety maps `x ↦ to + factor·(x − from)`.
#[derive(Clone, Debug)]
pub struct HomothetyCertificate {
    pub factor: Interval,
    pub direction: HomothetyDirection,
    pub from: IPoint,
    pub to: IPoint,
}

fn certified_sign(name: &str, v: &Interval) -> Result<i8> {
    v.sign().ok_or_else(|| Error::SignAmbiguous(format!("{name} = {v}")))
}

/// Homothety of `tp` that contains `t`, selected by the signs of the cross products
/// `p = AC × AC′` and `q = BC × BC′`.
pub fn containment_homothety(t: &Triangle, tp: &Triangle) -> Result<HomothetyCertificate> {
    let prec = t.prec().max(tp.prec());
    let one = Interval::one(prec);
    let p = &(&t.cx * &tp.cy) - &(&t.cy * &tp.cx);
    let q = &(&(&t.cx - &one) * &tp.cy) - &(&t.cy * &(&tp.cx - &one));
    let sp = certified_sign("p", &p)?;
    let sq = certified_sign("q", &q)?;
    let a = IPoint::from_f64(prec, 0.0, 0.0);
    let b = IPoint::from_f64(prec, 1.0, 0.0);
    let (factor, from, to) = match (sp, sq) {
        (-1, -1) => (&one - &(&p / &tp.cy), b.clone(), b),
        (1, 1) => (&one + &(&q / &tp.cy), a.clone(), a),
        (1, -1) => (one, a.clone(), a),
        _ => (&t.cy / &tp.cy, tp.apex(), t.apex()),
    };
    Ok(HomothetyCertificate { factor, direction: HomothetyDirection::TInScaledTprime, from, to })
}

impl HomothetyCertificate {
    /// Applies the homothety to a point (midpoint arithmetic).
    pub fn map_f64(&self, x: f64, y: f64) -> (f64, f64) {
        let f = self.factor.mid_f64();
        let (fx, fy) = self.from.mid_f64();
        let (tx, ty) = self.to.mid_f64();
        (tx + f * (x - fx), ty + f * (y - fy))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StabilityMode {
    SameSign,
    MixedSign,
}

/// Apex perturbations `C + t·v` for `t ∈ [−ℓ, ℓ]`.
#[derive(Clone, Debug)]
pub struct SegmentPerturbation {
    pub base: Triangle,
    pub v: IPoint,
    pub ell: Interval,
}

impl SegmentPerturbation {
    pub fn new(base: Triangle, v: IPoint, ell: Interval) -> Result<Self> {
        if ell.is_negative() {
            return Err(Error::NonPositive("perturbation length".into()));
        }
        let s = SegmentPerturbation { base, v, ell };
        let d = s.min_height();
        if !d.is_positive() {
            return Err(Error::DegenerateTriangle(format!("c_y − ℓ|v_y| = {d} is not positive")));
        }
        Ok(s)
    }

    /// `c_y − ℓ|v_y|`, a lower bound on the apex height along the segment.
    pub fn min_height(&self) -> Interval {
        &self.base.cy - &(&self.ell * &self.v.y.abs())
    }

    /// `(p_v, q_v) = (AC × v, BC × v)`.
    pub fn cross_products(&self) -> (Interval, Interval) {
        let one = Interval::one(self.base.prec());
        let p = &(&self.base.cx * &self.v.y) - &(&self.base.cy * &self.v.x);
        let q = &(&(&self.base.cx - &one) * &self.v.y) - &(&self.base.cy * &self.v.x);
        (p, q)
    }

    /// The mode implied by the certified signs of `p_v` and `q_v`. A value that is
    /// exactly zero is compatible with both modes and resolves to same-sign.
    pub fn mode(&self) -> Result<StabilityMode> {
        let (p, q) = self.cross_products();
        let class = |name: &str, v: &Interval| -> Result<i8> {
            if v.is_point() && v.contains_zero() {
                Ok(0)
            } else {
                certified_sign(name, v)
            }
        };
        let (sp, sq) = (class("p_v", &p)?, class("q_v", &q)?);
        Ok(if sp * sq < 0 { StabilityMode::MixedSign } else { StabilityMode::SameSign })
    }

    fn check_mode(&self, mode: StabilityMode) -> Result<()> {
        let actual = self.mode()?;
        let (p, q) = self.cross_products();
        let has_zero = (p.is_point() && p.contains_zero()) || (q.is_point() && q.contains_zero());
        if actual != mode && !has_zero {
            return Err(Error::ModeMismatch(format!("p_v = {p}, q_v = {q} do not fit {mode:?}")));
        }
        Ok(())
    }

    /// `Φ ≥ 1` with `λ_n^{(t)}/λ_n ∈ [1/Φ, Φ]` for every `n` and `t ∈ [−ℓ, ℓ]`.
    pub fn eigenvalue_factor(&self) -> Result<Interval> {
        let d = self.min_height();
        let one = Interval::one(self.base.prec());
        match self.mode()? {
            StabilityMode::SameSign => {
                let (p, q) = self.cross_products();
                let m = p.abs().max(&q.abs());
                Ok((&one + &(&(&self.ell * &m) / &d)).sqr())
            }
            StabilityMode::MixedSign => Ok((&self.base.cy / &d).sqr()),
        }
    }

    /// Encloses `λ_n^{(t)}` for all `t` from an enclosure of `λ_n` at `t = 0`.
    pub fn propagate_eigenvalue(&self, lambda: &Interval) -> Result<Interval> {
        let phi = self.eigenvalue_factor()?;
        let lo = (&lambda.lower_point() / &phi).lower_point();
        let hi = (&lambda.upper_point() * &phi).upper_point();
        Ok(lo.hull(&hi))
    }

    /// Triangle at parameter `t`.
    pub fn at(&self, t: &Interval) -> Result<Triangle> {
        Triangle::new(&self.base.cx + &(&self.v.x * t), &self.base.cy + &(&self.v.y * t))
    }
}

/// Radius `r` with `|ξ^{(t)} − ξ| ≤ r` for all `t ∈ [−ℓ, ℓ]` given the quotient `ξ` at `t = 0`.
pub fn quotient_stability_radius(s: &SegmentPerturbation, xi: &Interval, mode: StabilityMode) -> Result<Interval> {
    let d = s.min_height();
    if !d.is_positive() {
        return Err(Error::DegenerateTriangle(format!("c_y − ℓ|v_y| = {d} is not positive")));
    }
    let prec = s.base.prec();
    if s.ell.is_point() && s.ell.contains_zero() {
        return Ok(Interval::zero(prec));
    }
    s.check_mode(mode)?;
    let one = Interval::one(prec);
    let factor = match mode {
        StabilityMode::SameSign => {
            let (p, q) = s.cross_products();
            let fp = &one + &(&(&s.ell * &p.abs()) / &d);
            let fq = &one + &(&(&s.ell * &q.abs()) / &d);
            &(&fp * &fq).sqr() - &one
        }
        StabilityMode::MixedSign => &(&s.base.cy / &d).sqr() - &one,
    };
    let r = &xi.abs() * &factor.clamp_nonnegative();
    Ok(Interval::zero(prec).hull(&r.upper_point()))
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    #[test]
    fn inradius_of_reference_triangles() {
        let eq = Triangle::new(Interval::point(P, 0.5), Interval::from_int(P, 3).sqrt().div_u32(2)).unwrap();
        let (_, rho) = eq.incenter_inradius().unwrap();
        let expect = Interval::from_int(P, 12).sqrt().recip();
        assert!(rho.overlaps(&expect) && rho.width_f64() < 1e-30);
        let right = Triangle::from_f64(P, 0.0, 1.0).unwrap();
        let (c, rho) = right.incenter_inradius().unwrap();
        assert!((rho.mid_f64() - (2.0 - 2f64.sqrt()) / 2.0).abs() < 1e-15);
        assert!((c.x.mid_f64() - rho.mid_f64()).abs() < 1e-15);
    }

    #[test]
    fn degenerate_triangles_rejected() {
        assert!(Triangle::from_f64(P, 0.5, 0.0).is_err());
        assert!(Triangle::new(Interval::point(P, 0.5), Interval::new(P, -0.1, 0.1)).is_err());
    }

    #[test]
    fn homothety_cases() {
        let t = Triangle::from_f64(P, 0.4, 0.5).unwrap();
        let tp = Triangle::from_f64(P, 0.5, 0.5).unwrap();
        // p = q = −0.05: homothety about B with ratio 1 − p/c_y′ = 1.1
        let c = containment_homothety(&t, &tp).unwrap();
        assert!(c.factor.contains_f64(1.1) || (c.factor.mid_f64() - 1.1).abs() < 1e-15);
        assert!(matches!(containment_homothety(&t, &t), Err(Error::SignAmbiguous(_))));
        let t = Triangle::from_f64(P, 0.5, 0.4).unwrap();
        let c = containment_homothety(&t, &tp).unwrap();
        assert!(c.factor.contains_f64(1.0) && c.factor.is_point());
    }

    #[test]
    fn stability_radius_zero_length() {
        let t = Triangle::from_f64(P, 0.635, 0.275).unwrap();
        let s = SegmentPerturbation::new(t, IPoint::from_f64(P, 0.0046, 0.0012), Interval::zero(P)).unwrap();
        let r = quotient_stability_radius(&s, &Interval::point(P, 1.67675), StabilityMode::MixedSign).unwrap();
        assert_eq!(r.hi_f64(), 0.0);
    }
}
