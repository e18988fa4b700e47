//! Truncated Taylor arithmetic.
//!
//! [`Jet`] holds Taylor coefficients `f^{(j)}(τ)/j!` at a base point `τ`.
//! When `τ` is an interval (typically all of `[−1, 1]`) every coefficient
//! encloses the corresponding value for all base points at once, which is
//! how remainder terms are bounded.
//!
//! [`TaylorModel`] is a polynomial on `t ∈ [−1, 1]` plus a remainder
//! `R·|t|^{m+1}`.

use crate::bessel::{self, BesselKind};
use crate::error::{Error, Result};
use crate::interval::Interval;

pub const DEFAULT_DEGREE: usize = 25;
pub const MAX_DEGREE: usize = 64;

#[derive(Clone, Debug)]
pub struct Jet {
    c: Vec<Interval>,
}

impl Jet {
    pub fn from_coeffs(c: Vec<Interval>) -> Self {
        assert!(!c.is_empty(), "empty jet");
        Jet { c }
    }

    pub fn constant(v: Interval, len: usize) -> Self {
        let prec = v.prec();
        let mut c = vec![Interval::zero(prec); len];
        c[0] = v;
        Jet { c }
    }

    /// The affine jet `value + slope·s`.
    pub fn affine(value: Interval, slope: Interval, len: usize) -> Self {
        let mut j = Self::constant(value, len);
        if len > 1 {
            j.c[1] = slope;
        }
        j
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeffs(&self) -> &[Interval] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<Interval> {
        self.c
    }

    pub fn value(&self) -> &Interval {
        &self.c[0]
    }

    fn prec(&self) -> u32 {
        self.c[0].prec()
    }

    pub fn add(&self, o: &Jet) -> Jet {
        Jet { c: self.c.iter().zip(&o.c).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Jet) -> Jet {
        Jet { c: self.c.iter().zip(&o.c).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Jet {
        Jet { c: self.c.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, s: &Interval) -> Jet {
        Jet { c: self.c.iter().map(|a| a * s).collect() }
    }

    pub fn add_assign(&mut self, o: &Jet) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            a.add_assign_ref(b);
        }
    }

    /// `self += s·o`.
    pub fn add_scaled(&mut self, s: &Interval, o: &Jet) {
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            a.add_mul(s, b);
        }
    }

    pub fn mul(&self, o: &Jet) -> Jet {
        let n = self.len().min(o.len());
        let prec = self.prec().max(o.prec());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            let mut s = Interval::zero(prec);
            for i in 0..=k {
                s.add_mul(&self.c[i], &o.c[k - i]);
            }
            c.push(s);
        }
        Jet { c }
    }

    pub fn sqr(&self) -> Jet {
        let n = self.len();
        let prec = self.prec();
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            let mut s = Interval::zero(prec);
            for i in 0..k.div_ceil(2) {
                s.add_mul(&self.c[i], &self.c[k - i]);
            }
            s = s.mul_u32(2);
            if k % 2 == 0 {
                s.add_assign_ref(&self.c[k / 2].sqr());
            }
            c.push(s);
        }
        Jet { c }
    }

    pub fn div(&self, o: &Jet) -> Jet {
        let n = self.len().min(o.len());
        let inv0 = o.c[0].recip();
        let mut q: Vec<Interval> = Vec::with_capacity(n);
        for k in 0..n {
            let mut s = self.c[k].clone();
            for i in 1..=k {
                s.sub_assign_ref(&(&o.c[i] * &q[k - i]));
            }
            q.push(&s * &inv0);
        }
        Jet { c: q }
    }

    pub fn recip(&self) -> Jet {
        Jet::constant(Interval::one(self.prec()), self.len()).div(self)
    }

    /// Square root; the base value must be positive.
    pub fn sqrt(&self) -> Jet {
        let n = self.len();
        let r0 = self.c[0].sqrt();
        let inv = r0.mul_u32(2).recip();
        let mut r = vec![r0];
        for k in 1..n {
            let mut s = self.c[k].clone();
            for i in 1..k {
                s.sub_assign_ref(&(&r[i] * &r[k - i]));
            }
            r.push(&s * &inv);
        }
        Jet { c: r }
    }

    /// `(sin g, cos g)`.
    pub fn sin_cos(&self) -> (Jet, Jet) {
        let n = self.len();
        let prec = self.prec();
        let mut s = vec![self.c[0].sin()];
        let mut c = vec![self.c[0].cos()];
        // (k+1) s_{k+1} = Σ (i+1) g_{i+1} c_{k−i},  (k+1) c_{k+1} = −Σ (i+1) g_{i+1} s_{k−i}
        for k in 0..n - 1 {
            let mut ds = Interval::zero(prec);
            let mut dc = Interval::zero(prec);
            for i in 0..=k {
                let gi = self.c[i + 1].mul_u32(i as u32 + 1);
                ds.add_mul(&gi, &c[k - i]);
                dc.sub_assign_ref(&(&gi * &s[k - i]));
            }
            s.push(ds.div_u32(k as u32 + 1));
            c.push(dc.div_u32(k as u32 + 1));
        }
        (Jet { c: s }, Jet { c })
    }

    /// Coefficients of the derivative jet (one shorter).
    pub fn derivative(&self) -> Jet {
        let c: Vec<Interval> = (1..self.len()).map(|k| self.c[k].mul_u32(k as u32)).collect();
        if c.is_empty() {
            return Jet::constant(Interval::zero(self.prec()), 1);
        }
        Jet { c }
    }

    /// Composition `f ∘ self` given `derivs[i] = f^{(i)}(self(τ))/i!`.
    pub fn compose(&self, derivs: &[Interval]) -> Jet {
        let n = self.len();
        let prec = self.prec();
        let mut h = self.clone();
        h.c[0] = Interval::zero(prec);
        // Horner in h: Σ d_i h^i
        let top = derivs.len().min(n);
        let mut acc = Jet::constant(derivs[top - 1].clone(), n);
        for i in (0..top - 1).rev() {
            acc = acc.mul(&h);
            acc.c[0].add_assign_ref(&derivs[i]);
        }
        acc
    }

    /// Horner evaluation at `s`.
    pub fn eval(&self, s: &Interval) -> Interval {
        let mut acc = self.c[self.len() - 1].clone();
        for k in (0..self.len() - 1).rev() {
            acc = &(&acc * s) + &self.c[k];
        }
        acc
    }
}

/// Polynomial on `t ∈ [−1,1]` with remainder `R·|t|^{m+1}`.
#[derive(Clone, Debug)]
pub struct TaylorModel {
    coeffs: Vec<Interval>,
    remainder: Interval,
}

impl TaylorModel {
    /// Builds a model from its coefficients and a remainder bound `R ≥ 0`.
    pub fn new(coeffs: Vec<Interval>, remainder: Interval) -> Result<Self> {
        let m = coeffs.len().checked_sub(1).ok_or(Error::Precondition("empty coefficient list".into()))?;
        if m > MAX_DEGREE {
            return Err(Error::OrderOverflow { order: m, max: MAX_DEGREE });
        }
        let prec = coeffs[0].prec();
        let remainder = Interval::new(prec, 0.0, 0.0).hull(&Interval::zero(prec).add_float(&remainder.mag()));
        Ok(TaylorModel { coeffs, remainder })
    }

    /// Model from a jet at `t = 0` (length ≥ m+1) and a jet over `t ∈ [−1,1]` (length ≥ m+2).
    pub fn from_jets(at_center: &Jet, over_range: &Jet, degree: usize) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::OrderOverflow { order: degree, max: MAX_DEGREE });
        }
        if at_center.len() < degree + 1 || over_range.len() < degree + 2 {
            return Err(Error::Precondition("jets are too short for the requested degree".into()));
        }
        let coeffs = at_center.coeffs()[..=degree].to_vec();
        Self::new(coeffs, over_range.coeffs()[degree + 1].clone())
    }

    pub fn constant(v: Interval, degree: usize) -> Result<Self> {
        let prec = v.prec();
        let mut c = vec![Interval::zero(prec); degree + 1];
        c[0] = v;
        Self::new(c, Interval::zero(prec))
    }

    /// Exact polynomial (remainder zero); coefficients beyond `degree` are folded into the remainder.
    pub fn from_polynomial(poly: &[Interval], degree: usize) -> Result<Self> {
        let prec = poly[0].prec();
        let mut c = vec![Interval::zero(prec); degree + 1];
        let mut rem = Interval::zero(prec);
        for (j, p) in poly.iter().enumerate() {
            if j <= degree {
                c[j] = p.clone();
            } else {
                rem = &rem + &p.abs();
            }
        }
        Self::new(c, rem)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Interval] {
        &self.coeffs
    }

    /// Upper bound `R`.
    pub fn remainder(&self) -> &Interval {
        &self.remainder
    }

    fn prec(&self) -> u32 {
        self.coeffs[0].prec()
    }

    /// Bound on `Σ |v_j|`, i.e. on the polynomial part over `[−1, 1]`.
    fn poly_bound(&self, from: usize) -> Interval {
        let mut b = Interval::zero(self.prec());
        for c in &self.coeffs[from..] {
            b.add_assign_ref(&Interval::zero(self.prec()).add_float(&c.mag()));
        }
        b
    }

    /// Pointwise enclosure at `t ∈ [−1, 1]`.
    pub fn eval(&self, t: &Interval) -> Interval {
        let mut acc = self.coeffs[self.degree()].clone();
        for k in (0..self.degree()).rev() {
            acc = &(&acc * t) + &self.coeffs[k];
        }
        let tm = t.abs().powi(self.degree() as u32 + 1);
        let r = &tm * &self.remainder;
        acc.inflate(r.hi())
    }

    /// Enclosure of the range over `t ∈ [−1, 1]`.
    pub fn range(&self) -> Interval {
        let rest = &self.poly_bound(1) + &self.remainder;
        self.coeffs[0].inflate(rest.hi())
    }

    /// Enclosure of the range over a sub-interval `piece ⊂ [−1, 1]`, using the
    /// polynomial re-expanded about the midpoint of the piece.
    pub fn range_on(&self, piece: &Interval) -> Interval {
        let prec = self.prec();
        let c = Interval::zero(prec).add_float(&piece.mid());
        let r = (piece - &c).abs();
        // shifted[j] = coefficient of s^j in p(c + s)
        let m = self.degree();
        let mut shifted = vec![Interval::zero(prec); m + 1];
        for a in self.coeffs.iter().rev() {
            for j in (1..=m).rev() {
                let carry = shifted[j - 1].clone();
                shifted[j] = &(&shifted[j] * &c) + &carry;
            }
            shifted[0] = &(&shifted[0] * &c) + a;
        }
        let mut spread = Interval::zero(prec);
        let mut rp = Interval::one(prec);
        for v in &shifted[1..] {
            rp = &rp * &r;
            spread.add_assign_ref(&(&Interval::zero(prec).add_float(&v.mag()) * &rp));
        }
        let tmax = piece.abs().upper_point().powi(m as u32 + 1);
        let rest = &spread + &(&tmax * &self.remainder);
        shifted[0].inflate(rest.hi())
    }

    pub fn add(&self, o: &TaylorModel) -> TaylorModel {
        let m = self.degree().min(o.degree());
        let coeffs = (0..=m).map(|j| &self.coeffs[j] + &o.coeffs[j]).collect();
        let mut remainder = &self.remainder + &o.remainder;
        for extra in [self, o] {
            if extra.degree() > m {
                remainder = &remainder + &extra.poly_bound(m + 1);
            }
        }
        TaylorModel { coeffs, remainder }
    }

    pub fn scale(&self, s: &Interval) -> TaylorModel {
        TaylorModel {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            remainder: &self.remainder * &s.abs(),
        }
    }

    pub fn mul(&self, o: &TaylorModel) -> TaylorModel {
        let m = self.degree().min(o.degree());
        let prec = self.prec().max(o.prec());
        let zero = Interval::zero(prec);
        let mut full = vec![zero.clone(); self.degree() + o.degree() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                full[i + j].add_mul(a, b);
            }
        }
        let mut remainder = zero.clone();
        for c in &full[m + 1..] {
            remainder.add_assign_ref(&zero.add_float(&c.mag()));
        }
        let b1 = self.poly_bound(0);
        let b2 = o.poly_bound(0);
        remainder = &remainder + &(&(&b1 * &o.remainder) + &(&b2 * &self.remainder));
        remainder = &remainder + &(&self.remainder * &o.remainder);
        full.truncate(m + 1);
        TaylorModel { coeffs: full, remainder }
    }

    /// Model with the constant term removed; its values are bounded by `|t|·(Σ_{j≥1}|v_j| + R)`.
    fn without_constant(&self) -> TaylorModel {
        let mut h = self.clone();
        h.coeffs[0] = Interval::zero(self.prec());
        h
    }
}

/// Encloses `f^{(i)}(x)` for the Bessel function `f = B_order` over `x`.
fn bessel_derivative(kind: BesselKind, order: u32, i: u32, x: &Interval) -> Result<Interval> {
    let prec = x.prec();
    let mut sum = Interval::zero(prec);
    let mut binom = Interval::one(prec);
    for j in 0..=i {
        let m = order as i64 - i as i64 + 2 * j as i64;
        let mut v = bessel::bessel(kind, m.unsigned_abs() as u32, x)?;
        if m < 0 && m % 2 != 0 {
            v = -v;
        }
        let term = &binom * &v;
        if j % 2 == 1 {
            sum.sub_assign_ref(&term);
        } else {
            sum.add_assign_ref(&term);
        }
        binom = binom.mul_u32(i - j).div_u32(j + 1);
    }
    let mut scale = Interval::one(prec);
    for _ in 0..i {
        scale = scale.div_u32(2);
    }
    Ok(&sum * &scale)
}

/// Taylor model of `B_order ∘ g` for the model `g` of the argument path.
pub fn bessel_taylor(kind: BesselKind, order: u32, g: &TaylorModel) -> Result<TaylorModel> {
    let m = g.degree();
    if m > MAX_DEGREE {
        return Err(Error::OrderOverflow { order: m, max: MAX_DEGREE });
    }
    let prec = g.prec();
    let c0 = &g.coeffs[0];
    let range = g.range();
    if kind == BesselKind::Second && !range.is_positive() {
        return Err(Error::Domain("second-kind Bessel argument path must stay positive".into()));
    }
    let h = g.without_constant();
    let mut fact = Interval::one(prec);
    let mut derivs = Vec::with_capacity(m + 1);
    for i in 0..=m {
        if i > 0 {
            fact = fact.mul_u32(i as u32);
        }
        derivs.push(&bessel_derivative(kind, order, i as u32, c0)? / &fact);
    }
    // Horner in h.
    let mut acc = TaylorModel::constant(derivs[m].clone(), m)?;
    for i in (0..m).rev() {
        acc = acc.mul(&h);
        acc.coeffs[0].add_assign_ref(&derivs[i]);
    }
    // Lagrange term f^{(m+1)}(ξ)/(m+1)! · h^{m+1}, with |h(t)| ≤ |t|·(Σ_{j≥1}|g_j| + R).
    fact = fact.mul_u32(m as u32 + 1);
    let top = match kind {
        BesselKind::First => Interval::one(prec),
        BesselKind::Second => Interval::zero(prec).add_float(&bessel_derivative(kind, order, m as u32 + 1, &range)?.mag()),
    };
    let hb = &h.poly_bound(1) + &g.remainder;
    let lagrange = &(&top * &hb.powi(m as u32 + 1)) / &fact;
    acc.remainder = &acc.remainder + &lagrange;
    Ok(acc)
}

/// Encloses `∫_σ v` for the model `v` of a function along a segment of length `|σ|`,
/// linearly parametrized by `t ∈ [−1, 1]`.
pub fn integrate_even_part(model: &TaylorModel, length: &Interval) -> Result<Interval> {
    let m = model.degree();
    if m.is_multiple_of(2) {
        return Err(Error::Parity(m));
    }
    if length.is_negative() {
        return Err(Error::NonPositive("segment length".into()));
    }
    let prec = model.prec();
    let mut sum = Interval::zero(prec);
    for i in 0..=m / 2 {
        sum.add_assign_ref(&model.coeffs[2 * i].div_u32(2 * i as u32 + 1));
    }
    let r = model.remainder.div_u32(m as u32 + 2);
    let total = sum.inflate(r.hi());
    Ok(&total * &length.clamp_nonnegative())
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 160;

    fn pt(x: f64) -> Interval {
        Interval::point(P, x)
    }

    #[test]
    fn range_on_piece_is_tight_and_sound() {
        // p(t) = 1 + 2t + 3t^2 on [0.5, 0.75]
        let m = TaylorModel::new(vec![pt(1.0), pt(2.0), pt(3.0)], pt(1e-6)).unwrap();
        let r = m.range_on(&Interval::new(P, 0.5, 0.75));
        for x in [0.5, 0.6, 0.75] {
            assert!(r.contains_f64(1.0 + 2.0 * x + 3.0 * x * x));
        }
        assert!(r.width_f64() < 3.0);
        assert!(r.lo_f64() > 2.6);
    }

    #[test]
    fn jet_arithmetic_matches_known_series() {
        // 1/(1−s) = Σ s^k
        let j = Jet::affine(pt(1.0), pt(-1.0), 8).recip();
        for c in j.coeffs() {
            assert!(c.contains_f64(1.0));
        }
        // sqrt(1+s): 1, 1/2, −1/8, 1/16
        let r = Jet::affine(pt(1.0), pt(1.0), 4).sqrt();
        let expect = [1.0, 0.5, -0.125, 0.0625];
        for (c, e) in r.coeffs().iter().zip(expect) {
            assert!(c.contains_f64(e), "{c:?} vs {e}");
        }
        let (s, c) = Jet::affine(pt(0.0), pt(1.0), 6).sin_cos();
        assert!(s.coeffs()[3].contains(&Interval::ratio(P, -1, 6)));
        assert!(c.coeffs()[2].contains(&Interval::ratio(P, -1, 2)));
    }

    #[test]
    fn constant_path_gives_constant_bessel_model() {
        let g = TaylorModel::constant(pt(0.0), 25).unwrap();
        let f = bessel_taylor(BesselKind::First, 0, &g).unwrap();
        assert!(f.coeffs()[0].contains_f64(1.0));
        for c in &f.coeffs()[1..] {
            assert!(c.contains_zero());
        }
        assert!(f.remainder().contains_zero());
    }

    #[test]
    fn linear_path_first_coefficient() {
        let g = TaylorModel::from_polynomial(&[pt(1.0), pt(0.1)], 25).unwrap();
        let f = bessel_taylor(BesselKind::First, 0, &g).unwrap();
        let j1 = bessel::bessel_j(1, &pt(1.0)).unwrap();
        let expect = &j1 * &pt(-0.1);
        assert!(f.coeffs()[1].overlaps(&expect));
        assert!(f.coeffs()[1].width_f64() < 1e-30);
        // finite difference oracle
        let h = 1e-6;
        let fd = (libm::j0(1.0 + 0.1 * h) - libm::j0(1.0 - 0.1 * h)) / (2.0 * h);
        assert!((f.coeffs()[1].mid_f64() - fd).abs() < 1e-9);
    }

    #[test]
    fn model_encloses_direct_evaluations() {
        // J0 along a path crossing its first zero.
        let g = TaylorModel::from_polynomial(&[pt(2.4), pt(0.3)], 25).unwrap();
        for kind in [BesselKind::First, BesselKind::Second] {
            let f = bessel_taylor(kind, 0, &g).unwrap();
            for i in 0..50 {
                let t = -1.0 + 2.0 * i as f64 / 49.0;
                let arg = &pt(2.4) + &(&pt(0.3) * &pt(t));
                let direct = bessel::bessel(kind, 0, &arg).unwrap();
                assert!(f.eval(&pt(t)).overlaps(&direct), "{kind:?} t={t}");
            }
            assert!(f.remainder().hi_f64() < 1e-20);
        }
    }

    #[test]
    fn even_integration() {
        let c = TaylorModel::constant(pt(3.0), 5).unwrap();
        let v = integrate_even_part(&c, &pt(2.0)).unwrap();
        assert!(v.contains_f64(6.0) && v.width_f64() < 1e-40);
        let sq = TaylorModel::from_polynomial(&[pt(0.0), pt(0.0), pt(1.0)], 5).unwrap();
        let v = integrate_even_part(&sq, &pt(2.0)).unwrap();
        assert!(v.contains(&Interval::ratio(P, 2, 3)));
        let even = TaylorModel::constant(pt(1.0), 4).unwrap();
        assert!(matches!(integrate_even_part(&even, &pt(1.0)), Err(Error::Parity(4))));
    }

    #[test]
    fn degree_limit() {
        let c = vec![pt(0.0); MAX_DEGREE + 2];
        assert!(matches!(TaylorModel::new(c, pt(0.0)), Err(Error::OrderOverflow { .. })));
    }
}
