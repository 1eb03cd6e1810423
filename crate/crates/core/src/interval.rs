//! Certified real intervals with rational endpoints rounded outward to a working precision.
//!
//! Transcendental functions return enclosures: `exp` by argument halving and a Taylor
//! sum with explicit remainder, `ln` through `atanh`, `π` by Machin's formula.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::qexact::rational::{int, Rational};

/// Closed interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

fn pow2(e: i64) -> Rational {
    if e >= 0 {
        Rational::from_integer(BigInt::one() << (e as usize))
    } else {
        Rational::new(BigInt::one(), BigInt::one() << ((-e) as usize))
    }
}

/// Approximate `log₂|r|` (within one).
fn log2_approx(r: &Rational) -> i64 {
    r.numer().bits() as i64 - r.denom().bits() as i64
}

/// Largest dyadic `≤ r` with about `bits` significant bits.
pub fn round_down(r: &Rational, bits: u32) -> Rational {
    if r.is_zero() {
        return Rational::zero();
    }
    let s = bits as i64 - log2_approx(r);
    let scaled = r * pow2(s);
    let f = scaled.numer().div_floor(scaled.denom());
    Rational::from_integer(f) * pow2(-s)
}

/// Smallest dyadic `≥ r` with about `bits` significant bits.
pub fn round_up(r: &Rational, bits: u32) -> Rational {
    -round_down(&-r, bits)
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(r: Rational) -> Self {
        Interval { lo: r.clone(), hi: r }
    }

    pub fn int(n: i64) -> Self {
        Self::point(int(n))
    }

    pub fn from_big(n: &BigInt) -> Self {
        Self::point(Rational::from_integer(n.clone()))
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, r: &Rational) -> bool {
        &self.lo <= r && r <= &self.hi
    }

    pub fn contains_interval(&self, o: &Interval) -> bool {
        self.lo <= o.lo && o.hi <= self.hi
    }

    pub fn overlaps(&self, o: &Interval) -> bool {
        self.lo <= o.hi && o.lo <= self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn hull(&self, o: &Interval) -> Interval {
        Interval { lo: self.lo.clone().min(o.lo.clone()), hi: self.hi.clone().max(o.hi.clone()) }
    }

    /// `Some(true)` if every point is below every point of `o`, `Some(false)` if every point
    /// is at or above, `None` when they overlap.
    pub fn lt(&self, o: &Interval) -> Option<bool> {
        if self.hi < o.lo {
            Some(true)
        } else if self.lo >= o.hi {
            Some(false)
        } else {
            None
        }
    }

    pub fn le(&self, o: &Interval) -> Option<bool> {
        if self.hi <= o.lo {
            Some(true)
        } else if self.lo > o.hi {
            Some(false)
        } else {
            None
        }
    }

    pub fn round(&self, bits: u32) -> Interval {
        Interval { lo: round_down(&self.lo, bits), hi: round_up(&self.hi, bits) }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, r: &Rational) -> Interval {
        self.mul(&Interval::point(r.clone()))
    }

    pub fn recip(&self) -> Result<Interval> {
        if self.contains(&Rational::zero()) {
            return Err(Error::DivisionByZero);
        }
        Ok(Interval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, o: &Interval) -> Result<Interval> {
        Ok(self.mul(&o.recip()?))
    }

    /// Integer power, exact on the endpoints.
    pub fn powi(&self, n: u32) -> Interval {
        if n == 0 {
            return Interval::int(1);
        }
        let (a, b) = (num_traits::pow(self.lo.clone(), n as usize), num_traits::pow(self.hi.clone(), n as usize));
        if n % 2 == 1 || self.lo >= Rational::zero() {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            Interval { lo, hi }
        } else if self.hi <= Rational::zero() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: Rational::zero(), hi: a.max(b) }
        }
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= Rational::zero() {
            self.clone()
        } else if self.hi <= Rational::zero() {
            self.neg()
        } else {
            Interval { lo: Rational::zero(), hi: (-&self.lo).max(self.hi.clone()) }
        }
    }

    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.mid())
    }

    /// Distance from the enclosed value to the nearest integer, when that integer is certain.
    pub fn dist_to_nearest_int(&self) -> Option<Interval> {
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        let n_lo = (&self.lo + &half).floor();
        let n_hi = (&self.hi + &half).floor();
        if n_lo != n_hi {
            return None;
        }
        Some(self.sub(&Interval::point(n_lo)).abs())
    }

    /// Endpoints as decimal strings rounded outward to `digits` significant digits.
    pub fn endpoints(&self, digits: usize) -> (String, String) {
        (decimal(&self.lo, digits, false), decimal(&self.hi, digits, true))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.endpoints(12);
        write!(f, "[{a}, {b}]")
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (a, b) = self.endpoints(17);
        [a, b].serialize(s)
    }
}

pub fn rat_to_f64(r: &Rational) -> f64 {
    let shift = log2_approx(r) - 60;
    let scaled = r * pow2(-shift);
    let m = scaled.to_integer().to_f64().unwrap_or(f64::NAN);
    m * 2f64.powi(shift.clamp(-1070, 1023) as i32)
}

/// Scientific notation with `digits` significant digits, rounded down or up.
pub fn decimal(r: &Rational, digits: usize, up: bool) -> String {
    if r.is_zero() {
        return "0".into();
    }
    let neg = r.is_negative();
    let a = r.abs();
    let mut e = ((a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let ten = |k: i64| {
        if k >= 0 {
            Rational::from_integer(BigInt::from(10).pow(k as u32))
        } else {
            Rational::new(BigInt::one(), BigInt::from(10).pow((-k) as u32))
        }
    };
    while a >= ten(e + 1) {
        e += 1;
    }
    while a < ten(e) {
        e -= 1;
    }
    let scaled = &a * ten(digits as i64 - 1 - e);
    let toward_up = up != neg;
    let mut m = if toward_up { scaled.ceil().to_integer() } else { scaled.floor().to_integer() };
    if m == BigInt::from(10).pow(digits as u32) {
        m /= 10;
        e += 1;
    }
    let s = m.to_string();
    let (head, tail) = s.split_at(1);
    let tail = tail.trim_end_matches('0');
    let body = if tail.is_empty() { head.to_string() } else { format!("{head}.{tail}") };
    format!("{}{}e{}", if neg { "-" } else { "" }, body, e)
}

/// Runs `f` at 128, 256, … bits until it decides, up to `max_bits`.
pub fn escalate<T>(max_bits: u32, mut f: impl FnMut(u32) -> Result<Option<T>>) -> Result<T> {
    let mut bits = 128;
    while bits <= max_bits {
        if let Some(v) = f(bits)? {
            return Ok(v);
        }
        bits *= 2;
    }
    Err(Error::PrecisionExhausted(format!("undecided at {max_bits} bits")))
}

/// `atanh(y)` bounds for rational `0 ≤ y ≤ 1/2`.
fn atanh_bounds(y: &Rational, wp: u32) -> (Rational, Rational) {
    if y.is_zero() {
        return (Rational::zero(), Rational::zero());
    }
    let y2 = y * y;
    let (y2l, y2h) = (round_down(&y2, wp), round_up(&y2, wp));
    let (mut pl, mut ph) = (round_down(y, wp), round_up(y, wp));
    let (mut sl, mut sh) = (Rational::zero(), Rational::zero());
    let eps = pow2(-(wp as i64) - 4);
    let mut j: i64 = 0;
    loop {
        let d = int(2 * j + 1);
        sl += round_down(&(&pl / &d), wp);
        sh += round_up(&(&ph / &d), wp);
        pl = round_down(&(&pl * &y2l), wp);
        ph = round_up(&(&ph * &y2h), wp);
        j += 1;
        // remainder ≤ next power / ((2j+1)(1 − y²)) ≤ 2·next power
        if ph < eps {
            sh += &ph * int(2);
            break;
        }
    }
    (sl, sh)
}

fn ln2_bounds(wp: u32) -> (Rational, Rational) {
    let (l, h) = atanh_bounds(&Rational::new(BigInt::one(), BigInt::from(3)), wp);
    (l * int(2), h * int(2))
}

/// Bounds on `ln r` for rational `r > 0`.
fn ln_bounds(r: &Rational, bits: u32) -> Result<(Rational, Rational)> {
    if !r.is_positive() {
        return Err(Error::InvalidArgument("logarithm of a nonpositive number".into()));
    }
    if r.is_one() {
        return Ok((Rational::zero(), Rational::zero()));
    }
    let wp = bits + 32;
    let mut k = log2_approx(r);
    let mut m = r * pow2(-k);
    while m >= int(2) {
        m /= int(2);
        k += 1;
    }
    while m < Rational::one() {
        m *= int(2);
        k -= 1;
    }
    let y = (&m - int(1)) / (&m + int(1));
    let (al, _) = atanh_bounds(&round_down(&y, wp + 8), wp);
    let (_, ah) = atanh_bounds(&round_up(&y, wp + 8), wp);
    let (l2l, l2h) = ln2_bounds(wp);
    let kr = int(k);
    let (kl, kh) = if k >= 0 { (&kr * &l2l, &kr * &l2h) } else { (&kr * &l2h, &kr * &l2l) };
    Ok((round_down(&(kl + al * int(2)), wp), round_up(&(kh + ah * int(2)), wp)))
}

/// Bounds on `exp r` for rational `r`.
fn exp_bounds(r: &Rational, bits: u32) -> (Rational, Rational) {
    if r.is_zero() {
        return (Rational::one(), Rational::one());
    }
    let m = (log2_approx(r) + 10).max(0);
    let wp = bits + m as u32 + 32;
    let s = r * pow2(-m);
    let (mut sl, mut sh) = (Rational::one(), Rational::one());
    let mut term = Rational::one();
    let eps = pow2(-(wp as i64) - 4);
    let mut n: i64 = 1;
    loop {
        term = round_down(&(&term * &s / int(n)), wp + 8);
        sl += &term;
        sh += &term;
        n += 1;
        if term.abs() < eps {
            break;
        }
    }
    // rounding of the terms plus the Taylor remainder, both ≤ n·2^{-wp}
    let slack = pow2(-(wp as i64)) * int(n + 2);
    let (mut lo, mut hi) = (round_down(&(sl - &slack), wp), round_up(&(sh + &slack), wp));
    for _ in 0..m {
        lo = round_down(&(&lo * &lo), wp);
        hi = round_up(&(&hi * &hi), wp);
    }
    (lo, hi)
}

pub fn exp(x: &Interval, bits: u32) -> Interval {
    let (lo, _) = exp_bounds(&x.lo, bits);
    let (_, hi) = exp_bounds(&x.hi, bits);
    Interval { lo, hi }.round(bits)
}

pub fn ln(x: &Interval, bits: u32) -> Result<Interval> {
    if !x.is_positive() {
        return Err(Error::InvalidArgument(format!("ln of {x} which is not positive")));
    }
    let (lo, _) = ln_bounds(&x.lo, bits)?;
    let (_, hi) = ln_bounds(&x.hi, bits)?;
    Ok(Interval { lo, hi }.round(bits))
}

fn sqrt_down(r: &Rational, bits: u32) -> Rational {
    if !r.is_positive() {
        return Rational::zero();
    }
    let s = bits as i64 - log2_approx(r) / 2 + 2;
    let scaled = r * pow2(2 * s);
    let n = scaled.floor().to_integer();
    Rational::from_integer(n.sqrt()) * pow2(-s)
}

fn sqrt_up(r: &Rational, bits: u32) -> Rational {
    if !r.is_positive() {
        return Rational::zero();
    }
    let s = bits as i64 - log2_approx(r) / 2 + 2;
    let scaled = r * pow2(2 * s);
    let n = scaled.ceil().to_integer();
    let q = n.sqrt();
    let q = if &q * &q == n { q } else { q + 1 };
    Rational::from_integer(q) * pow2(-s)
}

pub fn sqrt(x: &Interval, bits: u32) -> Result<Interval> {
    if x.lo.is_negative() {
        return Err(Error::InvalidArgument("sqrt of a negative number".into()));
    }
    Ok(Interval { lo: sqrt_down(&x.lo, bits), hi: sqrt_up(&x.hi, bits) })
}

/// `x^y` for `x > 0`.
pub fn pow(x: &Interval, y: &Interval, bits: u32) -> Result<Interval> {
    Ok(exp(&ln(x, bits)?.mul(y).round(bits + 16), bits))
}

/// `arctan(1/n)` bracketed by consecutive alternating partial sums.
fn arctan_inv(n: i64, wp: u32) -> (Rational, Rational) {
    let n2 = int(n * n);
    let mut p = Rational::new(BigInt::one(), BigInt::from(n));
    let mut sum = Rational::zero();
    let eps = pow2(-(wp as i64) - 8);
    let mut j: i64 = 0;
    loop {
        let term = &p / int(2 * j + 1);
        if j % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        p /= &n2;
        j += 1;
        let next = &p / int(2 * j + 1);
        if next < eps {
            let (a, b) = (&sum - &next, &sum + &next);
            return (round_down(&a, wp), round_up(&b, wp));
        }
    }
}

pub fn pi(bits: u32) -> Interval {
    let wp = bits + 16;
    let (a_lo, a_hi) = arctan_inv(5, wp);
    let (b_lo, b_hi) = arctan_inv(239, wp);
    Interval { lo: a_lo * int(16) - b_hi * int(4), hi: a_hi * int(16) - b_lo * int(4) }.round(bits)
}

pub fn e(bits: u32) -> Interval {
    exp(&Interval::int(1), bits)
}

/// `ln p / (p(p−1))` summed over primes `5 ≤ p ≤ n`, as `[lo, hi]`, in 128-bit fixed point.
pub fn prime_log_sum(n: u64) -> Interval {
    const P: usize = 128;
    let one = BigInt::one() << P;
    // 2·atanh(num/den) in fixed point, with the rounding count in ulps
    let atanh2 = |num: u64, den: u64| -> (BigInt, u64) {
        let den2 = BigInt::from(den) * den;
        let num2 = BigInt::from(num) * num;
        let mut pw = (&one * num) / den;
        let mut acc = BigInt::zero();
        let mut err = 0u64;
        let mut j = 0u64;
        while !pw.is_zero() {
            acc += &pw / (2 * j + 1);
            pw = pw * &num2 / &den2;
            j += 1;
            err += j + 2;
        }
        (acc * 2, 2 * (err + 2 * (j + 2)))
    };
    let (ln3, e3) = atanh2(1, 2); // ln 3 = 2 atanh(1/2)
    let sieve = primal_sieve(n as usize);
    let mut sum = BigInt::zero();
    let mut ln_prev = ln3;
    let mut err_prev = e3;
    let mut prev = 3u64;
    let mut total_err = 0u64;
    for p in sieve.into_iter().filter(|&p| p >= 5 && p as u64 <= n) {
        let p = p as u64;
        let (d, de) = atanh2(p - prev, p + prev);
        ln_prev += d;
        err_prev += de;
        prev = p;
        sum += &ln_prev / (BigInt::from(p) * (p - 1));
        total_err += err_prev / (p * (p - 1)) + 2;
    }
    let scale = Rational::from_integer(one);
    let e = Rational::from_integer(BigInt::from(total_err));
    let s = Rational::from_integer(sum);
    Interval::new((&s - &e) / &scale, (&s + &e) / &scale)
}

/// Primes up to `n` by the sieve of Eratosthenes.
pub fn primal_sieve(n: usize) -> Vec<usize> {
    if n < 2 {
        return Vec::new();
    }
    let mut is = vec![true; n + 1];
    is[0] = false;
    is[1] = false;
    let mut i = 2;
    while i * i <= n {
        if is[i] {
            let mut j = i * i;
            while j <= n {
                is[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    is.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
}

/// Integer part of a positive interval when certain.
pub fn certain_floor(x: &Interval) -> Option<BigInt> {
    let a = x.lo.floor().to_integer();
    let b = x.hi.floor().to_integer();
    (a == b).then_some(a)
}

pub fn sign_of(x: &Interval) -> Option<Sign> {
    if x.is_positive() {
        Some(Sign::Plus)
    } else if x.is_negative() {
        Some(Sign::Minus)
    } else if x.lo.is_zero() && x.hi.is_zero() {
        Some(Sign::NoSign)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::rational::rat;

    fn f(x: &Interval) -> f64 {
        x.to_f64()
    }

    #[test]
    fn rounding_is_outward() {
        let r = rat(1, 3);
        assert!(round_down(&r, 20) <= r && r <= round_up(&r, 20));
        assert!(round_up(&r, 20) - round_down(&r, 20) < rat(1, 1 << 18));
        let n = rat(-7, 3);
        assert!(round_down(&n, 10) <= n && n <= round_up(&n, 10));
    }

    #[test]
    fn constants() {
        let p = pi(128);
        assert!(p.width() < pow2(-120));
        assert!((f(&p) - std::f64::consts::PI).abs() < 1e-15);
        assert!((f(&e(128)) - std::f64::consts::E).abs() < 1e-15);
        assert!(pi(200).contains_interval(&pi(400)) || pi(200).overlaps(&pi(400)));
    }

    #[test]
    fn exp_ln_roundtrip() {
        for r in [rat(1, 7), rat(5, 1), rat(-3, 2), rat(1000, 3)] {
            let x = Interval::point(r.clone());
            let y = ln(&exp(&x, 160), 160).unwrap();
            assert!(y.contains(&r), "{r} {y}");
            assert!(y.width() < pow2(-100));
        }
        let l = ln(&Interval::int(10), 128).unwrap();
        assert!((f(&l) - 10f64.ln()).abs() < 1e-15);
        let s = ln(&Interval::point(rat(1, 1000)), 128).unwrap();
        assert!((f(&s) - 0.001f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn sqrt_and_pow() {
        let s = sqrt(&Interval::int(3), 128).unwrap();
        assert!(s.mul(&s).contains(&int(3)));
        let p = pow(&Interval::int(2), &Interval::point(rat(1, 2)), 128).unwrap();
        assert!((f(&p) - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn nearest_integer() {
        let x = Interval::new(rat(29, 10), rat(31, 10));
        let d = x.dist_to_nearest_int().unwrap();
        assert_eq!(d.lo(), &int(0));
        assert!(Interval::new(rat(24, 10), rat(26, 10)).dist_to_nearest_int().is_none());
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(decimal(&rat(1, 3), 4, false), "3.333e-1");
        assert_eq!(decimal(&rat(1, 3), 4, true), "3.334e-1");
        assert_eq!(decimal(&rat(-1, 3), 3, true), "-3.33e-1");
        assert_eq!(decimal(&int(1000), 3, false), "1e3");
    }

    #[test]
    fn prime_sum_partial() {
        let s = prime_log_sum(7);
        let exact = 5f64.ln() / 20.0 + 7f64.ln() / 42.0;
        assert!((f(&s) - exact).abs() < 1e-15);
        assert!(s.width() < pow2(-100));
    }
}
