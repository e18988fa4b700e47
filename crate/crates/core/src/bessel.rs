//! Rigorous enclosures of integer-order Bessel functions.
//!
//! First-kind functions go through the Bessel–Clifford function
//! `F_l(s) = Σ (−s)^m / (m! (m+l)!)`, so that `J_l(x) = (x/2)^l F_l(x²/4)`.
//! Second-kind functions of orders 0 and 1 use the logarithmic ascending
//! series; higher orders follow by forward recurrence. All series carry an
//! explicit geometric tail bound and run with extra guard bits proportional
//! to the argument to absorb cancellation.
//!
//! Wide arguments are handled by a centered Taylor form around the midpoint,
//! which is far tighter than naive interval evaluation of the series.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::Float;

use crate::error::{Error, Result};
use crate::interval::Interval;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BesselKind {
    First,
    Second,
}

/// Arguments with magnitude above this need more guard bits than we allow.
const MAX_ARGUMENT: f64 = 2.0e4;
/// Maximum number of Taylor-form terms for wide arguments.
const MAX_FORM_TERMS: u32 = 48;

fn guard_bits(x_mag: f64) -> u32 {
    (1.45 * x_mag).ceil() as u32 + 24
}

fn check_argument(x_mag: f64) -> Result<()> {
    if !x_mag.is_finite() || x_mag > MAX_ARGUMENT {
        return Err(Error::PrecisionExhausted(format!(
            "argument magnitude {x_mag:e} exceeds {MAX_ARGUMENT:e}"
        )));
    }
    Ok(())
}

/// Whether an interval is narrow enough that direct series evaluation is tight.
fn is_thin(x: &Interval) -> bool {
    let w = x.width_f64();
    let scale = x.mag_f64().max(1.0);
    w <= scale * 2f64.powi(-(x.prec().min(900) as i32) + 8)
}

fn factorial(prec: u32, n: u32) -> Interval {
    let mut f = Interval::one(prec);
    for i in 2..=n {
        f = f.mul_u32(i);
    }
    f
}

/// `1/(n+1)`-weighted geometric tail bound: given the last included term
/// magnitude and a ratio bound `q ≤ 1/2` for all later terms.
fn tail_bound(last: &Float, q: f64) -> Float {
    let prec = last.prec();
    let mut t = Float::with_val(prec, last);
    t *= q / (1.0 - q) * (1.0 + 1e-12);
    t
}

/// Series for `F_l(s)` valid for any (possibly wide) interval `s ≥ 0`.
fn clifford_series(l: u32, s: &Interval, prec: u32) -> Interval {
    let s = s.clamp_nonnegative();
    let s_hi = s.hi_f64();
    let wp = prec + guard_bits(2.0 * s_hi.sqrt());
    let s = s.with_prec(wp);
    let mut term = factorial(wp, l).recip();
    let mut sum = term.clone();
    let tol = {
        let mut t = Float::with_val(wp, 1);
        t >>= prec + 8;
        t * term.hi()
    };
    let mut m: u32 = 0;
    loop {
        m += 1;
        term = (&term * &s).div_u32(m).div_u32(m + l);
        if m % 2 == 1 {
            sum.sub_assign_ref(&term);
        } else {
            sum.add_assign_ref(&term);
        }
        let q = s_hi / ((m + 1) as f64 * (m + 1 + l) as f64);
        if q <= 0.5 {
            let tail = tail_bound(&term.mag(), q);
            if tail <= tol || s_hi == 0.0 {
                return sum.inflate(&tail).with_prec(prec);
            }
        }
    }
}

/// Encloses the Bessel–Clifford function `F_l(s)` for `s ≥ 0`.
pub fn clifford(l: u32, s: &Interval) -> Result<Interval> {
    let prec = s.prec();
    if s.is_negative() {
        return Err(Error::Domain("Bessel–Clifford argument must be nonnegative".into()));
    }
    check_argument(2.0 * s.hi_f64().max(0.0).sqrt())?;
    if is_thin(s) {
        return Ok(clifford_series(l, s, prec));
    }
    // Centered form: F_l^{(p)} = (−1)^p F_{l+p}, |F_{l+p}| ≤ 1/(l+p)! on s ≥ 0.
    let s = s.clamp_nonnegative();
    let c = Interval::point(prec, 0.0).add_float(&s.mid());
    let delta = &s - &c;
    let rad = delta.mag_f64();
    let mut sum = Interval::zero(prec);
    let mut dp = Interval::one(prec);
    let mut pfact = Interval::one(prec);
    let mut p = 0u32;
    loop {
        let deriv = clifford_series(l + p, &c, prec);
        let term = &(&deriv * &dp) / &pfact;
        if p % 2 == 1 {
            sum.sub_assign_ref(&term);
        } else {
            sum.add_assign_ref(&term);
        }
        p += 1;
        dp = &dp * &delta;
        pfact = pfact.mul_u32(p);
        let rem = &(&factorial(prec, l + p) * &pfact).recip() * &Interval::point(prec, rad).powi(p);
        let rem_f = rem.hi_f64();
        if rem_f < 2f64.powi(-(prec.min(900) as i32)) || p >= MAX_FORM_TERMS {
            let exact = sum.inflate(rem.hi());
            // The naive evaluation is also valid; keep whichever is tighter.
            let naive = clifford_series(l, &s, prec);
            return Ok(exact.intersect(&naive).unwrap_or(exact));
        }
    }
}

/// `F_0(s), …, F_max(s)` for `s ≥ 0`. Wide arguments share one set of
/// center values across all orders.
pub fn clifford_family(max_l: u32, s: &Interval) -> Result<Vec<Interval>> {
    let prec = s.prec();
    if s.is_negative() {
        return Err(Error::Domain("Bessel–Clifford argument must be nonnegative".into()));
    }
    check_argument(2.0 * s.hi_f64().max(0.0).sqrt())?;
    if is_thin(s) {
        return Ok((0..=max_l).map(|l| clifford_series(l, s, prec)).collect());
    }
    let s = s.clamp_nonnegative();
    let c = Interval::point(prec, 0.0).add_float(&s.mid());
    let delta = &s - &c;
    let rad = delta.mag_f64();
    // rad^P / (P!)² below 2^{-prec} covers every order l ≥ 0
    let target = -(prec.min(900) as f64) * std::f64::consts::LN_2;
    let mut p_max = 1u32;
    let mut log_rem = 0.0;
    while p_max < MAX_FORM_TERMS {
        log_rem += rad.max(1e-300).ln() - 2.0 * (p_max as f64).ln();
        if log_rem < target {
            break;
        }
        p_max += 1;
    }
    let center: Vec<Interval> = (0..=max_l + p_max).map(|m| clifford_series(m, &c, prec)).collect();
    let mut powers = vec![Interval::one(prec)];
    for p in 1..=p_max {
        let next = (&powers[p as usize - 1] * &delta).div_u32(p);
        powers.push(next);
    }
    let rad_pow = Interval::point(prec, rad).powi(p_max);
    let mut out = Vec::with_capacity(max_l as usize + 1);
    for l in 0..=max_l {
        let mut sum = Interval::zero(prec);
        for p in 0..p_max {
            let term = &center[(l + p) as usize] * &powers[p as usize];
            if p % 2 == 1 {
                sum.sub_assign_ref(&term);
            } else {
                sum.add_assign_ref(&term);
            }
        }
        let rem = &rad_pow / &(&factorial(prec, p_max) * &factorial(prec, l + p_max));
        let form = sum.inflate(rem.hi());
        // |F_l(s)| ≤ 1/l! on s ≥ 0
        let bound = Interval::symmetric(prec, factorial(prec, l).recip().hi());
        out.push(form.intersect(&bound).unwrap_or(form));
    }
    Ok(out)
}

/// Encloses `J_n(x)` for every `x` in the interval.
pub fn bessel_j(n: u32, x: &Interval) -> Result<Interval> {
    check_argument(x.mag_f64())?;
    let prec = x.prec();
    if is_thin(x) {
        let s = x.sqr().div_u32(4);
        let f = clifford_series(n, &s, prec);
        return Ok(&x.div_u32(2).powi(n) * &f);
    }
    // Centered form with |J_m^{(p)}| ≤ 1.
    let c = Interval::point(prec, 0.0).add_float(&x.mid());
    let delta = x - &c;
    let rad = delta.mag_f64();
    let p_max = terms_for(rad, prec);
    let orders = thin_orders_j(n, p_max, &c)?;
    let mut sum = Interval::zero(prec);
    let mut dp = Interval::one(prec);
    let mut pfact = Interval::one(prec);
    for p in 0..p_max {
        let deriv = derivative_combination(n, p, |m| orders[&m].clone());
        sum.add_assign_ref(&(&(&deriv * &dp) / &pfact));
        dp = &dp * &delta;
        pfact = pfact.mul_u32(p + 1);
    }
    let rem = &Interval::point(prec, rad).powi(p_max) / &pfact;
    let form = sum.inflate(rem.hi());
    let bound = Interval::new(prec, -1.0, 1.0);
    Ok(form.intersect(&bound).unwrap_or(form))
}

fn terms_for(rad: f64, prec: u32) -> u32 {
    let target = -(prec.min(900) as f64) * std::f64::consts::LN_2;
    let mut log_rem = 0.0;
    for p in 1..MAX_FORM_TERMS {
        log_rem += rad.ln() - (p as f64).ln();
        if log_rem < target {
            return p;
        }
    }
    MAX_FORM_TERMS
}

/// `d^p/dx^p B_n = 2^{-p} Σ_j (−1)^j C(p,j) B_{n−p+2j}` with `B_{−m} = (−1)^m B_m`.
fn derivative_combination<F: Fn(i64) -> Interval>(n: u32, p: u32, value: F) -> Interval {
    let sample = value(n as i64);
    let prec = sample.prec();
    let mut sum = Interval::zero(prec);
    let mut binom = Interval::one(prec);
    for j in 0..=p {
        let m = n as i64 - p as i64 + 2 * j as i64;
        let mut v = value(m.abs());
        if m < 0 && m % 2 != 0 {
            v = -v;
        }
        let term = &binom * &v;
        if j % 2 == 1 {
            sum.sub_assign_ref(&term);
        } else {
            sum.add_assign_ref(&term);
        }
        binom = binom.mul_u32(p - j).div_u32(j + 1);
    }
    let mut scale = Float::with_val(prec, 1);
    scale >>= p;
    sum.mul_f64(scale.to_f64())
}

fn thin_orders_j(n: u32, p_max: u32, c: &Interval) -> Result<HashMap<i64, Interval>> {
    let top = n as i64 + p_max as i64;
    let mut out = HashMap::new();
    for m in 0..=top {
        out.insert(m, bessel_j(m as u32, c)?);
    }
    Ok(out)
}

/// Sum `Σ_{k≥1} w_k (−y)^k / (k! (k+shift)!)` where `w_k` is a harmonic-type weight,
/// returned with a rigorous tail bound.
fn harmonic_series(y: &Interval, shift: u32, weight: impl Fn(&[Interval], u32) -> Interval, prec: u32) -> Interval {
    let y_hi = y.hi_f64();
    let wp = y.prec();
    let mut harmonic = vec![Interval::zero(wp)];
    let mut term = factorial(wp, shift).recip();
    let mut sum = Interval::zero(wp);
    let tol = {
        let mut t = Float::with_val(wp, 1);
        t >>= prec + 8;
        t
    };
    let start = if shift == 0 { 1 } else { 0 };
    if start == 0 {
        harmonic.push(Interval::one(wp));
        let w = weight(&harmonic, 0);
        sum.add_assign_ref(&(&w * &term));
    }
    let mut k: u32 = 0;
    loop {
        k += 1;
        while harmonic.len() <= (k + 1) as usize {
            let j = harmonic.len() as i64;
            let next = &harmonic[harmonic.len() - 1] + &Interval::ratio(wp, 1, j);
            harmonic.push(next);
        }
        term = (&term * y).div_u32(k).div_u32(k + shift);
        let w = weight(&harmonic, k);
        let t = &w * &term;
        if k % 2 == 1 {
            sum.sub_assign_ref(&t);
        } else {
            sum.add_assign_ref(&t);
        }
        // Weight growth ratio w_{k+1}/w_k ≤ 1 + 2/(k+1) for the weights used here.
        let q = (1.0 + 2.0 / (k as f64 + 1.0)) * y_hi / ((k + 1) as f64 * (k + 1 + shift) as f64);
        if q <= 0.5 {
            let tail = tail_bound(&t.mag(), q);
            if tail <= tol || y_hi == 0.0 {
                return sum.inflate(&tail);
            }
        }
    }
}

/// Encloses `(Y_0(x), Y_1(x))` for `x > 0`, valid for wide arguments (naively).
fn y01_series(x: &Interval, prec: u32) -> (Interval, Interval) {
    let wp = prec + guard_bits(x.hi_f64());
    let x = x.with_prec(wp);
    let y = x.sqr().div_u32(4);
    let pi = Interval::pi(wp);
    let log_term = &x.div_u32(2).ln().expect("positive argument") + &Interval::euler(wp);
    let j0 = clifford_series(0, &y, wp);
    let j1 = &x.div_u32(2) * &clifford_series(1, &y, wp);
    // Y0
    let s0 = harmonic_series(&y, 0, |h, k| h[k as usize].clone(), prec);
    let two_over_pi = Interval::from_int(wp, 2) / &pi;
    let y0 = &(&two_over_pi * &(&log_term * &j0)) - &(&two_over_pi * &s0);
    // Y1
    let s1 = harmonic_series(&y, 1, |h, k| &h[k as usize] + &h[k as usize + 1], prec);
    let y1 = &(&(&Interval::from_int(wp, -2) / &(&pi * &x)) + &(&two_over_pi * &(&log_term * &j1)))
        - &(&(&x.div_u32(2) / &pi) * &s1);
    (y0.with_prec(prec), y1.with_prec(prec))
}

fn y_forward(n: u32, x: &Interval, y0: Interval, y1: Interval) -> Interval {
    if n == 0 {
        return y0;
    }
    let mut a = y0;
    let mut b = y1;
    let two_over_x = Interval::from_int(x.prec(), 2) / x;
    for m in 1..n {
        let next = &(&two_over_x.mul_u32(m) * &b) - &a;
        a = b;
        b = next;
    }
    b
}

fn y_orders_thin(max: u32, x: &Interval) -> Vec<Interval> {
    let prec = x.prec();
    let (y0, y1) = y01_series(x, prec);
    let mut out = vec![y0.clone(), y1.clone()];
    let two_over_x = Interval::from_int(prec + 32, 2) / &x.with_prec(prec + 32);
    let mut a = y0.with_prec(prec + 32);
    let mut b = y1.with_prec(prec + 32);
    for m in 1..max {
        let next = &(&two_over_x.mul_u32(m) * &b) - &a;
        a = b;
        b = next;
        out.push(b.with_prec(prec));
    }
    out.truncate(max as usize + 1);
    out
}

/// Encloses `(Y_0(x), Y_1(x))` for `x > 0`.
pub fn bessel_y01(x: &Interval) -> Result<(Interval, Interval)> {
    if !x.is_positive() {
        return Err(Error::Domain("second-kind Bessel argument must be positive".into()));
    }
    check_argument(x.hi_f64())?;
    if is_thin(x) {
        return Ok(y01_series(x, x.prec()));
    }
    Ok((bessel_y(0, x)?, bessel_y(1, x)?))
}

/// Encloses `Y_n(x)` for every `x > 0` in the interval.
pub fn bessel_y(n: u32, x: &Interval) -> Result<Interval> {
    if !x.is_positive() {
        return Err(Error::Domain("second-kind Bessel argument must be positive".into()));
    }
    check_argument(x.hi_f64())?;
    let prec = x.prec();
    if is_thin(x) {
        return Ok(y_orders_thin(n.max(1), x)[n as usize].clone());
    }
    let (w0, w1) = y01_series(x, prec);
    let naive = y_forward(n, x, w0.clone(), w1.clone());
    let c = Interval::point(prec, 0.0).add_float(&x.mid());
    let delta = x - &c;
    let rad = delta.mag_f64();
    // Derivative bounds over x are loose, so cap the form at a moderate order.
    let p_max = terms_for(rad, prec).clamp(2, 24);
    let thin = y_orders_thin(n + p_max, &c);
    let mut sum = Interval::zero(prec);
    let mut dp = Interval::one(prec);
    let mut pfact = Interval::one(prec);
    for p in 0..p_max {
        let deriv = derivative_combination(n, p, |m| thin[m as usize].clone());
        sum.add_assign_ref(&(&(&deriv * &dp) / &pfact));
        dp = &dp * &delta;
        pfact = pfact.mul_u32(p + 1);
    }
    let wide_orders: Vec<Interval> = {
        let mut v = vec![w0.clone(), w1.clone()];
        for m in 2..=(n + p_max) {
            v.push(y_forward(m, x, w0.clone(), w1.clone()));
        }
        v
    };
    let bound = derivative_combination(n, p_max, |m| wide_orders[m as usize].clone());
    let rem = &(&bound.abs() * &Interval::point(prec, rad).powi(p_max)) / &pfact;
    let form = sum.inflate(rem.hi());
    Ok(form.intersect(&naive).unwrap_or(form))
}

/// Encloses `J_order(x)` or `Y_order(x)` over the interval `x`.
pub fn bessel(kind: BesselKind, order: u32, x: &Interval) -> Result<Interval> {
    match kind {
        BesselKind::First => bessel_j(order, x),
        BesselKind::Second => bessel_y(order, x),
    }
}

/// Encloses the first positive zero of `J_0`, computed by validated bisection.
pub fn j0_first_zero(prec: u32) -> Interval {
    static CACHE: OnceLock<Mutex<HashMap<u32, Interval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().expect("cache lock").get(&prec) {
        return v.clone();
    }
    let j0 = |x: &Float| -> Interval {
        let xi = Interval::from_floats(x.clone(), x.clone()).expect("finite point");
        clifford_series(0, &xi.sqr().div_u32(4), prec)
    };
    let mut lo = Float::with_val(prec, 2.4);
    let mut hi = Float::with_val(prec, 2.41);
    assert!(j0(&lo).is_positive() && j0(&hi).is_negative());
    for _ in 0..(prec + 4) {
        let mut mid = Float::with_val(prec + 1, &lo + &hi);
        mid /= 2u32;
        let mid = Float::with_val(prec, mid);
        if mid == lo || mid == hi {
            break;
        }
        let v = j0(&mid);
        if v.is_positive() {
            lo = mid;
        } else if v.is_negative() {
            hi = mid;
        } else {
            break;
        }
    }
    let z = Interval::from_floats(lo, hi).expect("ordered bracket");
    cache.lock().expect("cache lock").insert(prec, z.clone());
    z
}
