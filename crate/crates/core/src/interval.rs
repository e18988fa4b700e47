//! Outward-rounded interval arithmetic on MPFR floats.
//!
//! Every operation returns an interval that contains the exact result for all
//! point inputs drawn from the operands. Endpoints are `rug::Float`s, so the
//! working precision is a runtime parameter carried by each value; binary
//! operations work at the larger of the two operand precisions.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::{Constant, Round, Special};
use rug::ops::{AddAssignRound, AssignRound, Pow, SubAssignRound};
use rug::Float;

/// Default significand precision in bits.
pub const DEFAULT_PRECISION: u32 = 256;

#[derive(Clone, PartialEq)]
pub struct Interval {
    lo: Float,
    hi: Float,
}

#[inline]
fn down<T>(prec: u32, v: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, v, Round::Down).0
}

#[inline]
fn up<T>(prec: u32, v: T) -> Float
where
    Float: AssignRound<T, Round = Round, Ordering = Ordering>,
{
    Float::with_val_round(prec, v, Round::Up).0
}

impl Interval {
    /// Builds an interval from endpoints already known to satisfy `lo <= hi`.
    fn raw(lo: Float, hi: Float) -> Self {
        if lo.is_nan() || hi.is_nan() {
            let prec = lo.prec().max(hi.prec());
            return Self::entire(prec);
        }
        debug_assert!(lo <= hi, "inverted interval {lo} > {hi}");
        Interval { lo, hi }
    }

    /// The exact point `x`.
    pub fn point(prec: u32, x: f64) -> Self {
        assert!(x.is_finite(), "non-finite point {x}");
        let prec = prec.max(53);
        Interval { lo: Float::with_val(prec, x), hi: Float::with_val(prec, x) }
    }

    pub fn from_int(prec: u32, n: i64) -> Self {
        Interval { lo: down(prec, n), hi: up(prec, n) }
    }

    /// The interval `[lo, hi]` with f64 endpoints (exact).
    pub fn new(prec: u32, lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "inverted interval [{lo}, {hi}]");
        let prec = prec.max(53);
        Interval { lo: Float::with_val(prec, lo), hi: Float::with_val(prec, hi) }
    }

    /// Encloses `num / den`.
    pub fn ratio(prec: u32, num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_int(prec, num) / &Self::from_int(prec, den)
    }

    /// Encloses the real number written in decimal (or any MPFR-parsable form).
    pub fn parse(prec: u32, text: &str) -> Option<Self> {
        let parsed = Float::parse(text.trim()).ok()?;
        let lo = Float::with_val_round(prec, parsed, Round::Down).0;
        let parsed = Float::parse(text.trim()).ok()?;
        let hi = Float::with_val_round(prec, parsed, Round::Up).0;
        if !lo.is_finite() || !hi.is_finite() {
            return None;
        }
        Some(Interval { lo, hi })
    }

    /// Encloses the union of two decimal endpoints `[lo_text, hi_text]`.
    pub fn parse_pair(prec: u32, lo_text: &str, hi_text: &str) -> Option<Self> {
        let lo = Self::parse(prec, lo_text)?;
        let hi = Self::parse(prec, hi_text)?;
        if lo.lo > hi.hi {
            return None;
        }
        Some(Interval { lo: lo.lo, hi: hi.hi })
    }

    pub fn from_floats(lo: Float, hi: Float) -> Option<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi {
            return None;
        }
        Some(Interval { lo, hi })
    }

    pub fn zero(prec: u32) -> Self {
        Self::point(prec, 0.0)
    }

    pub fn one(prec: u32) -> Self {
        Self::point(prec, 1.0)
    }

    pub fn entire(prec: u32) -> Self {
        Interval {
            lo: Float::with_val(prec, Special::NegInfinity),
            hi: Float::with_val(prec, Special::Infinity),
        }
    }

    /// `[-r, r]` for `r >= 0`.
    pub fn symmetric(prec: u32, r: &Float) -> Self {
        let r = up(prec, r.abs_ref());
        Interval { lo: -r.clone(), hi: r }
    }

    pub fn pi(prec: u32) -> Self {
        Interval { lo: down(prec, Constant::Pi), hi: up(prec, Constant::Pi) }
    }

    /// Euler–Mascheroni constant.
    pub fn euler(prec: u32) -> Self {
        Interval { lo: down(prec, Constant::Euler), hi: up(prec, Constant::Euler) }
    }

    pub fn lo(&self) -> &Float {
        &self.lo
    }

    pub fn hi(&self) -> &Float {
        &self.hi
    }

    pub fn prec(&self) -> u32 {
        self.lo.prec().max(self.hi.prec())
    }

    /// Re-rounds the endpoints outward to `prec` bits.
    pub fn with_prec(&self, prec: u32) -> Self {
        Interval { lo: down(prec, &self.lo), hi: up(prec, &self.hi) }
    }

    pub fn lo_f64(&self) -> f64 {
        self.lo.to_f64_round(Round::Down)
    }

    pub fn hi_f64(&self) -> f64 {
        self.hi.to_f64_round(Round::Up)
    }

    pub fn mid_f64(&self) -> f64 {
        self.mid().to_f64()
    }

    /// A representable point inside the interval.
    pub fn mid(&self) -> Float {
        let prec = self.prec() + 1;
        if !self.lo.is_finite() || !self.hi.is_finite() {
            if self.lo.is_finite() {
                return self.lo.clone();
            }
            if self.hi.is_finite() {
                return self.hi.clone();
            }
            return Float::new(prec);
        }
        let mut m = Float::with_val(prec, &self.lo + &self.hi);
        m /= 2u32;
        m
    }

    /// Upper bound of the radius about `mid()`.
    pub fn rad(&self) -> Float {
        let m = self.mid();
        let prec = self.prec();
        let a = up(prec, &self.hi - &m);
        let b = up(prec, &m - &self.lo);
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn rad_f64(&self) -> f64 {
        self.rad().to_f64_round(Round::Up)
    }

    /// Upper bound of `hi - lo`.
    pub fn width(&self) -> Float {
        up(self.prec(), &self.hi - &self.lo)
    }

    pub fn width_f64(&self) -> f64 {
        self.width().to_f64_round(Round::Up)
    }

    /// Upper bound of `max |x|`.
    pub fn mag(&self) -> Float {
        let a = Float::with_val(self.lo.prec(), self.lo.abs_ref());
        let b = Float::with_val(self.hi.prec(), self.hi.abs_ref());
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn mag_f64(&self) -> f64 {
        self.mag().to_f64_round(Round::Up)
    }

    /// Lower bound of `min |x|`.
    pub fn mig(&self) -> Float {
        if self.contains_zero() {
            return Float::new(self.prec());
        }
        let a = Float::with_val(self.lo.prec(), self.lo.abs_ref());
        let b = Float::with_val(self.hi.prec(), self.hi.abs_ref());
        if a < b {
            a
        } else {
            b
        }
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.lo <= 0 && self.hi >= 0
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        self.lo <= x && self.hi >= x
    }

    pub fn contains_float(&self, x: &Float) -> bool {
        &self.lo <= x && &self.hi >= x
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Interval) -> bool {
        self.lo <= other.lo && self.hi >= other.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo > 0
    }

    pub fn is_negative(&self) -> bool {
        self.hi < 0
    }

    pub fn is_nonnegative(&self) -> bool {
        self.lo >= 0
    }

    /// Certified sign: `Some(1)`, `Some(-1)` or `None` when the interval touches 0.
    pub fn sign(&self) -> Option<i8> {
        if self.is_positive() {
            Some(1)
        } else if self.is_negative() {
            Some(-1)
        } else {
            None
        }
    }

    /// Every point of `self` is strictly below every point of `other`.
    pub fn lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn gt(&self, other: &Interval) -> bool {
        self.lo > other.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        let lo = if self.lo < other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi > other.hi { self.hi.clone() } else { other.hi.clone() };
        Interval { lo, hi }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = if self.lo > other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi < other.hi { self.hi.clone() } else { other.hi.clone() };
        if lo > hi {
            None
        } else {
            Some(Interval { lo, hi })
        }
    }

    /// `self + [-r, r]`.
    pub fn inflate(&self, r: &Float) -> Interval {
        let prec = self.prec();
        let r = Float::with_val(prec, r.abs_ref());
        Interval { lo: down(prec, &self.lo - &r), hi: up(prec, &self.hi + &r) }
    }

    /// `[lo, lo]`-style degenerate hull at the lower endpoint.
    pub fn lower_point(&self) -> Interval {
        Interval { lo: self.lo.clone(), hi: self.lo.clone() }
    }

    pub fn upper_point(&self) -> Interval {
        Interval { lo: self.hi.clone(), hi: self.hi.clone() }
    }

    /// `[0, mag]`, the range of `|x|` rounded outward.
    pub fn abs(&self) -> Interval {
        if self.lo >= 0 {
            self.clone()
        } else if self.hi <= 0 {
            -self
        } else {
            Interval { lo: Float::new(self.prec()), hi: self.mag() }
        }
    }

    /// Keeps only the non-negative part; an interval entirely below zero maps to `[0, 0]`.
    pub fn clamp_nonnegative(&self) -> Interval {
        let prec = self.prec();
        if self.lo >= 0 {
            self.clone()
        } else if self.hi < 0 {
            Interval::zero(prec)
        } else {
            Interval { lo: Float::new(prec), hi: self.hi.clone() }
        }
    }

    pub fn sqr(&self) -> Interval {
        let prec = self.prec();
        if self.lo >= 0 {
            Interval { lo: down(prec, self.lo.square_ref()), hi: up(prec, self.hi.square_ref()) }
        } else if self.hi <= 0 {
            Interval { lo: down(prec, self.hi.square_ref()), hi: up(prec, self.lo.square_ref()) }
        } else {
            let m = self.mag();
            Interval { lo: Float::new(prec), hi: up(prec, m.square_ref()) }
        }
    }

    /// Square root over the non-negative part of the interval.
    pub fn sqrt(&self) -> Interval {
        let prec = self.prec();
        let c = self.clamp_nonnegative();
        Interval { lo: down(prec, c.lo.sqrt_ref()), hi: up(prec, c.hi.sqrt_ref()) }
    }

    pub fn recip(&self) -> Interval {
        Interval::one(self.prec()) / self
    }

    pub fn powi(&self, n: u32) -> Interval {
        let prec = self.prec();
        if n == 0 {
            return Interval::one(prec);
        }
        if n % 2 == 1 || self.lo >= 0 {
            return Interval { lo: down(prec, (&self.lo).pow(n)), hi: up(prec, (&self.hi).pow(n)) };
        }
        let a = self.abs();
        Interval { lo: down(prec, (&a.lo).pow(n)), hi: up(prec, (&a.hi).pow(n)) }
    }

    pub fn exp(&self) -> Interval {
        let prec = self.prec();
        Interval { lo: down(prec, self.lo.exp_ref()), hi: up(prec, self.hi.exp_ref()) }
    }

    /// Natural logarithm; requires a strictly positive interval.
    pub fn ln(&self) -> Option<Interval> {
        if !self.is_positive() {
            return None;
        }
        let prec = self.prec();
        Some(Interval { lo: down(prec, self.lo.ln_ref()), hi: up(prec, self.hi.ln_ref()) })
    }

    pub fn sin(&self) -> Interval {
        // sin(x) = cos(x - pi/2)
        let half_pi = Interval::pi(self.prec()).mul_f64(0.5);
        (self - &half_pi).cos()
    }

    pub fn cos(&self) -> Interval {
        let prec = self.prec();
        if !self.is_finite() {
            return Interval::new(prec, -1.0, 1.0);
        }
        let pi = Interval::pi(prec + 16);
        // Locate the interval relative to multiples of pi; cos has extrema at k*pi.
        let klo = (&self.with_prec(prec + 16) / &pi).lo.clone().floor();
        let khi = (&self.with_prec(prec + 16) / &pi).hi.clone().floor();
        let span = Float::with_val(prec + 16, &khi - &klo);
        if span >= 2 {
            return Interval::new(prec, -1.0, 1.0);
        }
        let clo = Interval { lo: down(prec, self.lo.cos_ref()), hi: up(prec, self.lo.cos_ref()) };
        let chi = Interval { lo: down(prec, self.hi.cos_ref()), hi: up(prec, self.hi.cos_ref()) };
        let mut r = clo.hull(&chi);
        // Candidate extrema k*pi inside the interval (at most two).
        let mut k = klo.clone();
        while k <= khi {
            let kpi = Interval::point(prec, 0.0).add_float(&k) * &pi;
            if kpi.overlaps(self) {
                let parity_odd = (k.to_f64() as i64).rem_euclid(2) == 1;
                let v = if parity_odd { -1.0 } else { 1.0 };
                r = r.hull(&Interval::point(prec, v));
            }
            k += 1u32;
        }
        let clip = Interval::new(prec, -1.0, 1.0);
        r.intersect(&clip).unwrap_or(clip)
    }

    pub fn add_float(&self, x: &Float) -> Interval {
        let prec = self.prec().max(x.prec());
        Interval { lo: down(prec, &self.lo + x), hi: up(prec, &self.hi + x) }
    }

    pub fn mul_f64(&self, x: f64) -> Interval {
        self * &Interval::point(self.prec(), x)
    }

    pub fn add_f64(&self, x: f64) -> Interval {
        self + &Interval::point(self.prec(), x)
    }

    pub fn div_u32(&self, n: u32) -> Interval {
        let prec = self.prec();
        Interval { lo: down(prec, &self.lo / n), hi: up(prec, &self.hi / n) }
    }

    pub fn mul_u32(&self, n: u32) -> Interval {
        let prec = self.prec();
        Interval { lo: down(prec, &self.lo * n), hi: up(prec, &self.hi * n) }
    }

    /// Elementwise maximum (encloses `max(x, y)` for `x ∈ self`, `y ∈ other`).
    pub fn max(&self, other: &Interval) -> Interval {
        let lo = if self.lo > other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi > other.hi { self.hi.clone() } else { other.hi.clone() };
        Interval { lo, hi }
    }

    pub fn min(&self, other: &Interval) -> Interval {
        let lo = if self.lo < other.lo { self.lo.clone() } else { other.lo.clone() };
        let hi = if self.hi < other.hi { self.hi.clone() } else { other.hi.clone() };
        Interval { lo, hi }
    }

    /// In-place `self += a * b`.
    pub fn add_mul(&mut self, a: &Interval, b: &Interval) {
        let p = a * b;
        self.add_assign_ref(&p);
    }

    pub fn add_assign_ref(&mut self, other: &Interval) {
        let prec = self.prec().max(other.prec());
        if self.lo.prec() < prec {
            self.lo.set_prec_round(prec, Round::Down);
            self.hi.set_prec_round(prec, Round::Up);
        }
        self.lo.add_assign_round(&other.lo, Round::Down);
        self.hi.add_assign_round(&other.hi, Round::Up);
    }

    pub fn sub_assign_ref(&mut self, other: &Interval) {
        let prec = self.prec().max(other.prec());
        if self.lo.prec() < prec {
            self.lo.set_prec_round(prec, Round::Down);
            self.hi.set_prec_round(prec, Round::Up);
        }
        self.lo.sub_assign_round(&other.hi, Round::Down);
        self.hi.sub_assign_round(&other.lo, Round::Up);
    }

    /// Decimal rendering `[lo, hi]` with `digits` significant digits, rounded outward.
    pub fn to_decimal(&self, digits: usize) -> (String, String) {
        (
            self.lo.to_string_radix_round(10, Some(digits), Round::Down),
            self.hi.to_string_radix_round(10, Some(digits), Round::Up),
        )
    }
}

fn mul_endpoints(prec: u32, a: &Interval, b: &Interval) -> Interval {
    let (al, ah, bl, bh) = (&a.lo, &a.hi, &b.lo, &b.hi);
    if al >= &0 {
        if bl >= &0 {
            Interval::raw(down(prec, al * bl), up(prec, ah * bh))
        } else if bh <= &0 {
            Interval::raw(down(prec, ah * bl), up(prec, al * bh))
        } else {
            Interval::raw(down(prec, ah * bl), up(prec, ah * bh))
        }
    } else if ah <= &0 {
        if bl >= &0 {
            Interval::raw(down(prec, al * bh), up(prec, ah * bl))
        } else if bh <= &0 {
            Interval::raw(down(prec, ah * bh), up(prec, al * bl))
        } else {
            Interval::raw(down(prec, al * bh), up(prec, al * bl))
        }
    } else if bl >= &0 {
        Interval::raw(down(prec, al * bh), up(prec, ah * bh))
    } else if bh <= &0 {
        Interval::raw(down(prec, ah * bl), up(prec, al * bl))
    } else {
        let l1 = down(prec, al * bh);
        let l2 = down(prec, ah * bl);
        let h1 = up(prec, al * bl);
        let h2 = up(prec, ah * bh);
        Interval::raw(if l1 < l2 { l1 } else { l2 }, if h1 > h2 { h1 } else { h2 })
    }
}

impl<'a> Add<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        let prec = self.prec().max(rhs.prec());
        Interval::raw(down(prec, &self.lo + &rhs.lo), up(prec, &self.hi + &rhs.hi))
    }
}

impl<'a> Sub<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        let prec = self.prec().max(rhs.prec());
        Interval::raw(down(prec, &self.lo - &rhs.hi), up(prec, &self.hi - &rhs.lo))
    }
}

impl<'a> Mul<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        mul_endpoints(self.prec().max(rhs.prec()), self, rhs)
    }
}

impl<'a> Div<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn div(self, rhs: &Interval) -> Interval {
        let prec = self.prec().max(rhs.prec());
        if rhs.contains_zero() {
            return Interval::entire(prec);
        }
        let inv = Interval::raw(down(prec, 1 / &rhs.hi), up(prec, 1 / &rhs.lo));
        if self.is_point() && self.lo == 1 {
            return inv;
        }
        // Direct quotient bounds are tighter than multiplying by the reciprocal.
        let (al, ah, bl, bh) = (&self.lo, &self.hi, &rhs.lo, &rhs.hi);
        if bl > &0 {
            let lo = if al >= &0 { down(prec, al / bh) } else { down(prec, al / bl) };
            let hi = if ah >= &0 { up(prec, ah / bl) } else { up(prec, ah / bh) };
            Interval::raw(lo, hi)
        } else {
            let lo = if ah >= &0 { down(prec, ah / bh) } else { down(prec, ah / bl) };
            let hi = if al >= &0 { up(prec, al / bl) } else { up(prec, al / bh) };
            Interval::raw(lo, hi)
        }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }
}

impl Neg for Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi, hi: -self.lo }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Interval> for Interval {
            type Output = Interval;
            fn $m(self, rhs: &Interval) -> Interval {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Interval> for &'a Interval {
            type Output = Interval;
            fn $m(self, rhs: Interval) -> Interval {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.to_decimal(20);
        write!(f, "[{lo}, {hi}]")
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(17);
        let (lo, hi) = self.to_decimal(digits);
        write!(f, "[{lo}, {hi}]")
    }
}

/// A 2-vector of intervals.
#[derive(Clone, Debug, PartialEq)]
pub struct IPoint {
    pub x: Interval,
    pub y: Interval,
}

impl IPoint {
    pub fn new(x: Interval, y: Interval) -> Self {
        IPoint { x, y }
    }

    pub fn from_f64(prec: u32, x: f64, y: f64) -> Self {
        IPoint { x: Interval::point(prec, x), y: Interval::point(prec, y) }
    }

    pub fn add(&self, o: &IPoint) -> IPoint {
        IPoint { x: &self.x + &o.x, y: &self.y + &o.y }
    }

    pub fn sub(&self, o: &IPoint) -> IPoint {
        IPoint { x: &self.x - &o.x, y: &self.y - &o.y }
    }

    pub fn scale(&self, s: &Interval) -> IPoint {
        IPoint { x: &self.x * s, y: &self.y * s }
    }

    pub fn dot(&self, o: &IPoint) -> Interval {
        &self.x * &o.x + &self.y * &o.y
    }

    /// z-component of the planar cross product `self × o`.
    pub fn cross(&self, o: &IPoint) -> Interval {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm(&self) -> Interval {
        (self.x.sqr() + self.y.sqr()).sqrt()
    }

    pub fn mid_f64(&self) -> (f64, f64) {
        (self.x.mid_f64(), self.y.mid_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 128;

    #[test]
    fn arithmetic_encloses_exact_results() {
        let third = Interval::ratio(P, 1, 3);
        let back = &third * &Interval::from_int(P, 3);
        assert!(back.contains_f64(1.0));
        assert!(back.width_f64() < 1e-35);
        let x = Interval::new(P, -2.0, 3.0);
        let y = Interval::new(P, -1.0, 5.0);
        let p = &x * &y;
        assert_eq!(p.lo_f64(), -10.0);
        assert_eq!(p.hi_f64(), 15.0);
        let q = &Interval::new(P, 1.0, 2.0) / &Interval::new(P, -4.0, -2.0);
        assert!(q.contains_f64(-1.0) && q.contains_f64(-0.25));
        assert!(q.lo_f64() >= -1.0 - 1e-30 && q.hi_f64() <= -0.25 + 1e-30);
    }

    #[test]
    fn division_by_zero_containing_interval_is_entire() {
        let q = &Interval::one(P) / &Interval::new(P, -1.0, 1.0);
        assert!(!q.is_finite());
    }

    #[test]
    fn parse_rounds_outward() {
        let a = Interval::parse(P, "0.1").unwrap();
        assert!(a.lo() < &0.1f64 || a.hi() > &0.1f64);
        assert!(a.width_f64() < 1e-37);
        let exact = Float::with_val(400, Float::parse("0.1").unwrap());
        assert!(a.contains_float(&exact));
    }

    #[test]
    fn sqr_of_straddling_interval_starts_at_zero() {
        let s = Interval::new(P, -3.0, 2.0).sqr();
        assert_eq!(s.lo_f64(), 0.0);
        assert_eq!(s.hi_f64(), 9.0);
    }

    #[test]
    fn cos_and_sin_hit_extrema() {
        let c = Interval::new(P, -0.5, 0.5).cos();
        assert_eq!(c.hi_f64(), 1.0);
        assert!((c.lo_f64() - 0.5f64.cos()).abs() < 1e-15);
        let s = Interval::new(P, 1.0, 2.0).sin();
        assert_eq!(s.hi_f64(), 1.0);
        let far = Interval::new(P, 100.0, 100.0).cos();
        assert!((far.mid_f64() - 100f64.cos()).abs() < 1e-15);
        assert!(far.width_f64() < 1e-30);
    }

    #[test]
    fn inclusion_monotone_square_root() {
        let a = Interval::new(P, 2.0, 2.0).sqrt();
        let b = Interval::new(P, 1.5, 3.0).sqrt();
        assert!(b.contains(&a));
        assert!(a.contains_f64(std::f64::consts::SQRT_2) || a.width_f64() < 1e-30);
    }

    #[test]
    fn decimal_rendering_is_outward() {
        let third = Interval::ratio(P, 1, 3);
        let (lo, hi) = third.to_decimal(10);
        let lo = Interval::parse(P, &lo).unwrap();
        let hi = Interval::parse(P, &hi).unwrap();
        assert!(lo.hi() <= third.lo());
        assert!(hi.lo() >= third.hi());
    }
}
