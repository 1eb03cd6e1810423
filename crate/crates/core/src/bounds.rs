//! Effective lower bounds on `‖qx‖` for the largest root of `3x³ − 3tx² − 3ax + at`.
//!
//! Everything is computed at integer `(a, t)`: convergents of family 5, their block matrices,
//! denominator growth, the gcd minorant and the final constants as certified intervals.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::{self, Interval};
use crate::qexact::rational::{int, Rational};
use crate::qexact::IntPoly;
use crate::realcf::{self, RealAlgebraic};

/// Integer 2×2 matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2(pub [[BigInt; 2]; 2]);

impl Mat2 {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        Mat2([[a, b], [c, d]])
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let m = &self.0;
        let n = &o.0;
        Mat2([
            [&m[0][0] * &n[0][0] + &m[0][1] * &n[1][0], &m[0][0] * &n[0][1] + &m[0][1] * &n[1][1]],
            [&m[1][0] * &n[0][0] + &m[1][1] * &n[1][0], &m[1][0] * &n[0][1] + &m[1][1] * &n[1][1]],
        ])
    }

    pub fn det(&self) -> BigInt {
        &self.0[0][0] * &self.0[1][1] - &self.0[0][1] * &self.0[1][0]
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.0[r][c]
    }

    pub fn entries(&self) -> impl Iterator<Item = &BigInt> {
        self.0.iter().flatten()
    }

    pub fn content(&self) -> BigInt {
        self.entries().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// Smallest 2-adic valuation among the entries; `None` for the zero matrix.
    pub fn min_v2(&self) -> Option<u64> {
        self.entries().filter(|x| !x.is_zero()).map(v2).min()
    }
}

impl Serialize for Mat2 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self.0.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

/// 2-adic valuation of a nonzero integer.
pub fn v2(n: &BigInt) -> u64 {
    n.trailing_zeros().unwrap_or(0)
}

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

/// `(β_i, a_i)` of family 5 at integer `(a, t)`.
pub fn family5_term(a: &BigInt, t: &BigInt, i: usize) -> (BigInt, BigInt) {
    if i == 0 {
        return (BigInt::one(), t.clone());
    }
    let k = (i / 4) as i64;
    let ii = i as i64;
    match i % 4 {
        1 => (b(2 * (3 * k + 1)) * a, b(3 * ii) * t),
        2 => (b(6 * k + 1) * a, t.clone()),
        3 => (b(2 * (3 * k + 2)) * a * a, b(3 * ii) * t * (t * t + b(2) * a)),
        _ => (b(6 * k - 1) * a * a, t.clone()),
    }
}

/// `(p_i, q_i)` for `i = 0..=n`.
pub fn family5_convergents(a: &BigInt, t: &BigInt, n: usize) -> Vec<(BigInt, BigInt)> {
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let (mut p0, mut q0) = (t.clone(), BigInt::one());
    let mut out = vec![(p0.clone(), q0.clone())];
    for i in 1..=n {
        let (beta, ai) = family5_term(a, t, i);
        let p = &ai * &p0 + &beta * &p1;
        let q = &ai * &q0 + &beta * &q1;
        p1 = std::mem::replace(&mut p0, p.clone());
        q1 = std::mem::replace(&mut q0, q.clone());
        out.push((p, q));
    }
    out
}

/// `[[a_n, β_n], [1, 0]]`.
pub fn step_matrix(a: &BigInt, t: &BigInt, n: usize) -> Mat2 {
    let (beta, an) = family5_term(a, t, n);
    Mat2::new(an, beta, BigInt::one(), BigInt::zero())
}

/// Block `A_k` with `S_{k+1} = A_k S_k`: the product of the step matrices `4k+6, …, 4k+3`.
pub fn block_product(a: &BigInt, t: &BigInt, k: usize) -> Mat2 {
    (4 * k + 3..=4 * k + 6).rev().map(|n| step_matrix(a, t, n)).fold(Mat2::identity(), |acc, m| acc.mul(&m))
}

/// Convergent matrices around block `k`.
#[derive(Clone, Debug, Serialize)]
pub struct ConvMatrixState {
    pub k: usize,
    /// Rows `(p_{4k+2}, q_{4k+2})`, `(p_{4k+1}, q_{4k+1})`.
    pub s: Mat2,
    /// Rows `(p_{4k+2}, q_{4k+2})`, `(p_{4k−2}, q_{4k−2})`; needs `k ≥ 1`.
    pub t: Option<Mat2>,
    /// Rows `(p_{4k−1}, q_{4k−1})`, `(p_{4k−2}, q_{4k−2})`; needs `k ≥ 1`.
    pub u: Option<Mat2>,
    /// The block carrying `S_k` to `S_{k+1}`.
    pub block: Mat2,
}

fn row(c: &[(BigInt, BigInt)], i: usize) -> [BigInt; 2] {
    [c[i].0.clone(), c[i].1.clone()]
}

fn rows(c: &[(BigInt, BigInt)], i: usize, j: usize) -> Mat2 {
    Mat2([row(c, i), row(c, j)])
}

/// `a_{k11}`, `a_{k12}` of the block in expanded form.
pub fn block_entries_closed(a: &BigInt, t: &BigInt, k: usize) -> (BigInt, BigInt) {
    let k = k as i64;
    let t2 = t * t;
    let a11 = b(9 * (4 * k + 3) * (4 * k + 5)) * &t2 * (&t2 + a) * (&t2 + b(2) * a)
        + b(3 * (4 * k + 5) * (6 * k + 5)) * a * a * &t2
        + b((6 * k + 5) * (6 * k + 7)) * a * a * a;
    let a12 = b(6 * (4 * k + 5) * (3 * k + 2)) * t * a * a * (&t2 + a);
    (a11, a12)
}

/// `a_{k11}` rewritten around `(t² + a)³`.
pub fn block_a11_alt(a: &BigInt, t: &BigInt, k: usize) -> BigInt {
    let k = k as i64;
    let t2 = t * t;
    let s = &t2 + a;
    b(9 * (4 * k + 3) * (4 * k + 5)) * &s * &s * &s
        - b(6 * (4 * k + 5) * (3 * k + 2)) * &t2 * a * a
        - b(4 * (27 * k * k + 54 * k + 25)) * a * a * a
}

/// The three-step matrix with `U_k = d⁻¹ B_k S_k`.
pub fn b_matrix(a: &BigInt, t: &BigInt, k: usize) -> Mat2 {
    let k = k as i64;
    let m1 = Mat2::new(BigInt::zero(), -b(6 * k - 1) * a * a, b(-1), t.clone());
    let m2 = Mat2::new(BigInt::zero(), -b(6 * k + 2) * a, b(-1), b(3 * (4 * k + 1)) * t);
    let m3 = Mat2::new(BigInt::zero(), -b(6 * k + 1) * a, b(-1), t.clone());
    m1.mul(&m2).mul(&m3)
}

/// `d = −(6k−1)(6k+1)(6k+2)a⁴`.
pub fn b_scale(a: &BigInt, k: usize) -> BigInt {
    let k = k as i64;
    -b((6 * k - 1) * (6 * k + 1) * (6 * k + 2)) * a.pow(4)
}

/// Bottom row of `B_k` in closed form.
pub fn b_row_closed(a: &BigInt, t: &BigInt, k: usize) -> (BigInt, BigInt) {
    let k = k as i64;
    let t2 = t * t;
    (-b(12 * k + 3) * &t2 - b(6 * k + 2) * a, b(3 * (4 * k + 1)) * t * (&t2 + a))
}

/// `d·a_{k12}/b_{k22}` in closed form.
pub fn ratio_closed(a: &BigInt, k: usize) -> Rational {
    let k = k as i64;
    let num = -b((4 * k + 5) * (6 * k - 1) * (6 * k + 1) * (6 * k + 2) * (6 * k + 4)) * a.pow(6);
    Rational::new(num, b(4 * k + 1))
}

/// Builds the matrices for block `k` and checks every closed form against the exact products.
pub fn block_matrices(a: &BigInt, t: &BigInt, k: usize) -> Result<ConvMatrixState> {
    let c = family5_convergents(a, t, 4 * k + 6);
    let s = rows(&c, 4 * k + 2, 4 * k + 1);
    let block = block_product(a, t, k);
    let next = rows(&c, 4 * k + 6, 4 * k + 5);
    let fail = |what: &str| Err(Error::CheckFailed(format!("block {k} at a = {a}, t = {t}: {what}")));
    if block.mul(&s) != next {
        return fail("S_{k+1} = A_k S_k");
    }
    let (a11, a12) = block_entries_closed(a, t, k);
    if &a11 != block.at(0, 0) || &a12 != block.at(0, 1) {
        return fail("block entries");
    }
    if block_a11_alt(a, t, k) != a11 {
        return fail("alternate form of a_{k11}");
    }
    let (tm, um) = if k >= 1 {
        let tm = rows(&c, 4 * k + 2, 4 * k - 2);
        let um = rows(&c, 4 * k - 1, 4 * k - 2);
        let bm = b_matrix(a, t, k);
        let (b21, b22) = b_row_closed(a, t, k);
        if &b21 != bm.at(1, 0) || &b22 != bm.at(1, 1) {
            return fail("bottom row of B_k");
        }
        let d = b_scale(a, k);
        let bs = bm.mul(&s);
        if bs.entries().any(|x| !x.is_multiple_of(&d)) || bs.entries().zip(um.entries()).any(|(x, y)| &(x / &d) != y) {
            return fail("U_k = d⁻¹ B_k S_k");
        }
        let prev = block_product(a, t, k - 1);
        let (p11, p12) = (prev.at(0, 0), prev.at(0, 1));
        let lower = rows(&c, 4 * k - 2, 4 * k - 3);
        let t_from = Mat2::new(p11.clone(), p12.clone(), BigInt::one(), BigInt::zero()).mul(&lower);
        if t_from != tm {
            return fail("T_{k} from the previous block");
        }
        if Rational::new(&d * &a12, b22.clone()) != ratio_closed(a, k) {
            return fail("d·a_{k12}/b_{k22}");
        }
        (Some(tm), Some(um))
    } else {
        (None, None)
    };
    Ok(ConvMatrixState { k, s, t: tm, u: um, block })
}

/// Both forms of `a_{k11}` agree as polynomials in `(t, a)`: checked on a grid larger than the
/// bidegree `(6, 3)`, which proves the identity.
pub fn a11_identity(k: usize) -> bool {
    (1..=7).all(|t| (1..=4).all(|a| block_entries_closed(&b(a), &b(t), k).0 == block_a11_alt(&b(a), &b(t), k)))
}

/// `q_{4k+6}/q_{4k+2}` against the block growth bracket.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthBracket {
    pub k: usize,
    pub lower: String,
    pub ratio: String,
    pub upper: String,
    pub inside: bool,
}

pub fn growth_bracket(a: &BigInt, t: &BigInt, k: usize) -> GrowthBracket {
    let c = family5_convergents(a, t, 4 * k + 6);
    let kk = k as i64;
    let t2 = t * t;
    let f = b(9 * (4 * kk + 3) * (4 * kk + 5));
    let lo = &f * &t2 * (&t2 + a) * (&t2 + b(2) * a);
    let hi = &f * (&t2 + a).pow(3);
    let (q0, q1) = (&c[4 * k + 2].1, &c[4 * k + 6].1);
    let ratio = Rational::new(q1.clone(), q0.clone());
    let inside = &lo * q0 < *q1 && *q1 < &hi * q0;
    GrowthBracket { k, lower: lo.to_string(), ratio: crate::qexact::rational::to_wire(&ratio), upper: hi.to_string(), inside }
}

/// `n!!` for odd `n`.
pub fn double_factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    let mut i = n;
    while i > 1 {
        acc *= i;
        i -= 2;
    }
    acc
}

/// Certifies `2k(2k/e)^k < (2k+1)!! < 4k(2k/e)^k`.
pub fn double_factorial_envelope(k: u64, bits: u32) -> Result<bool> {
    interval::escalate(bits.max(128) * 8, |bits| {
        let e = interval::e(bits);
        let base = Interval::int(2 * k as i64).div(&e)?.powi(k as u32);
        let lo = base.scale(&int(2 * k as i64));
        let hi = base.scale(&int(4 * k as i64));
        let df = Interval::from_big(&double_factorial(2 * k + 1));
        match (lo.lt(&df), df.lt(&hi)) {
            (Some(x), Some(y)) => Ok(Some(x && y)),
            _ => Ok(None),
        }
    })
}

/// Growth bounds on `q_{4k+2}`.
#[derive(Clone, Debug, Serialize)]
pub struct DenominatorBounds {
    pub k: usize,
    pub q: String,
    pub lower_factorial: String,
    pub upper_factorial: String,
    pub lower_simple: Interval,
    pub upper_simple: Interval,
    /// Measured `q / lower_factorial` and `upper_factorial / q`.
    pub slack: (f64, f64),
}

pub fn c2_c3(a: &BigInt, t: &BigInt, bits: u32) -> (Interval, Interval) {
    let t2 = t * t;
    let e2 = interval::e(bits).powi(2);
    let c2 = Interval::from_big(&(b(144) * (&t2 + a).pow(3))).div(&e2).expect("e² > 0");
    let c3 = Interval::from_big(&(b(144) * &t2 * (&t2 + a) * (&t2 + b(2) * a))).div(&e2).expect("e² > 0");
    (c2, c3)
}

pub fn denominator_bounds(a: &BigInt, t: &BigInt, k: usize, bits: u32) -> Result<DenominatorBounds> {
    if k < 2 {
        return Err(Error::Hypothesis(format!("denominator bounds need k ≥ 2, got {k}")));
    }
    if !a.is_positive() || !t.is_positive() {
        return Err(Error::Hypothesis("a ≥ 1 and t ≥ 1".into()));
    }
    let c = family5_convergents(a, t, 4 * k + 2);
    let q = c[4 * k + 2].1.clone();
    let t2 = t * t;
    let head = (b(3) * &t2 + a) * double_factorial(4 * k as u64 + 1);
    let kk = k as u32;
    let lf = &head * (b(9) * &t2 * (&t2 + a) * (&t2 + b(2) * a)).pow(kk);
    let uf = &head * (b(9) * (&t2 + a).pow(3)).pow(kk);
    if !(lf < q && q < uf) {
        return Err(Error::CheckFailed(format!("q_{} outside the factorial bounds", 4 * k + 2)));
    }
    let (c2, c3) = c2_c3(a, t, bits);
    let kr = Interval::int(k as i64);
    let front = Interval::from_big(&(b(3) * &t2 + a)).mul(&kr);
    let k2k = kr.powi(2 * kk);
    let us = front.scale(&int(8)).mul(&c2.powi(kk)).mul(&k2k);
    let ls = front.scale(&int(4)).mul(&c3.powi(kk)).mul(&k2k);
    let (lfi, ufi) = (Interval::from_big(&lf), Interval::from_big(&uf));
    if ufi.lt(&us) != Some(true) || ls.lt(&lfi) != Some(true) {
        return Err(Error::CheckFailed(format!("simplified bounds around q_{} not certified", 4 * k + 2)));
    }
    let slack = (
        interval::rat_to_f64(&Rational::new(q.clone(), lf.clone())),
        interval::rat_to_f64(&Rational::new(uf.clone(), q.clone())),
    );
    Ok(DenominatorBounds {
        k,
        q: q.to_string(),
        lower_factorial: lf.to_string(),
        upper_factorial: uf.to_string(),
        lower_simple: ls,
        upper_simple: us,
        slack,
    })
}

/// Contraction factor between consecutive gaps; `k ≥ 1`.
pub fn contraction_factor(a: &BigInt, t: &BigInt, k: usize) -> Rational {
    let kk = k as i64;
    let t2 = t * t;
    let num = b((4 * kk + 5) * (6 * kk - 1) * (6 * kk + 1) * (6 * kk + 2) * (6 * kk + 4)) * a.pow(6);
    let w = &t2 * (&t2 + a) * (&t2 + b(2) * a);
    let den = b((4 * kk + 1) * 81 * (4 * kk - 1) * (4 * kk + 1) * (4 * kk + 3) * (4 * kk + 5)) * &w * &w;
    Rational::new(num, den)
}

#[derive(Clone, Debug, Serialize)]
pub struct TailGap {
    pub k: usize,
    /// `|p_{4k+2}/q_{4k+2} − p_{4k+6}/q_{4k+6}|`.
    #[serde(serialize_with = "crate::qexact::rational::ser_rational")]
    pub gap: Rational,
    /// `τ₁ c₄^k`.
    pub envelope: Interval,
}

pub fn tau1_c4(a: &BigInt, t: &BigInt, bits: u32) -> Result<(Interval, Interval)> {
    let t2 = t * t;
    let e2 = interval::e(bits).powi(2);
    let s3 = interval::sqrt(&Interval::int(3), bits)?;
    let num = s3.mul(&e2).scale(&Rational::from_integer(b(105) * a.pow(4)));
    let den = b(8) * t * (&t2 + b(2) * a) * (b(3) * &t2 + a).pow(2);
    let tau1 = num.div(&Interval::from_big(&den))?;
    let c4 = Rational::new(a.pow(6), b(16) * t.pow(4) * (&t2 + a).pow(2) * (&t2 + b(2) * a).pow(2));
    Ok((tau1, Interval::point(c4)))
}

fn check_gap_hypothesis(a: &BigInt, t: &BigInt) -> Result<()> {
    let t2 = t * t;
    if a.pow(3) >= &t2 * (&t2 + a) * (&t2 + b(2) * a) {
        return Err(Error::Hypothesis("a³ < t²(t²+a)(t²+2a) fails".into()));
    }
    Ok(())
}

pub fn tail_gap(a: &BigInt, t: &BigInt, k: usize, bits: u32) -> Result<TailGap> {
    check_gap_hypothesis(a, t)?;
    let c = family5_convergents(a, t, 4 * k + 6);
    let r = |i: usize| Rational::new(c[i].0.clone(), c[i].1.clone());
    let gap = (r(4 * k + 2) - r(4 * k + 6)).abs();
    let (tau1, c4) = tau1_c4(a, t, bits)?;
    let envelope = tau1.mul(&c4.powi(k as u32));
    if Interval::point(&gap * int(2)).lt(&envelope) != Some(true) {
        return Err(Error::CheckFailed(format!("twice the gap at block {k} is not below the envelope")));
    }
    Ok(TailGap { k, gap, envelope })
}

/// Product of `p^⌊2k/p⌋` over primes `5 ≤ p ≤ 2k`.
#[derive(Clone, Debug, Serialize)]
pub struct GcdBound {
    pub k: usize,
    pub g: String,
    /// `√(4πk)(c₁k)^{2k}`; absent below the range `k ≥ 2`.
    pub minorant: Option<Interval>,
    pub below_range: bool,
}

pub fn gcd_product(k: usize) -> BigInt {
    interval::primal_sieve(2 * k)
        .into_iter()
        .filter(|&p| p >= 5)
        .fold(BigInt::one(), |acc, p| acc * BigInt::from(p).pow((2 * k / p) as u32))
}

pub fn gcd_lower_bound(k: usize, bits: u32) -> Result<GcdBound> {
    if k < 2 {
        return Ok(GcdBound { k, g: "1".into(), minorant: None, below_range: true });
    }
    let g = gcd_product(k);
    let c1 = c1_constant(bits)?;
    let pi = interval::pi(bits);
    let root = interval::sqrt(&pi.scale(&int(4 * k as i64)), bits)?;
    let minorant = root.mul(&c1.scale(&int(k as i64)).powi(2 * k as u32));
    if minorant.le(&Interval::from_big(&g)) != Some(true) {
        return Err(Error::CheckFailed(format!("g({k}) below its analytic minorant")));
    }
    Ok(GcdBound { k, g: g.to_string(), minorant: Some(minorant), below_range: false })
}

/// Primes used for the explicit part of the sum defining `c₁`.
pub const C1_PRIME_LIMIT: u64 = 1 << 20;

/// Bound on `∑_{n>N} ln n/(n(n−1))`, which dominates the omitted primes.
pub fn c1_tail_bound(n: u64) -> Interval {
    let m = int(n as i64 - 1);
    let bits = 96;
    let l = interval::ln(&Interval::point(m.clone()), bits).expect("positive");
    let v = l.add(&Interval::int(1)).div(&Interval::point(m.clone())).expect("nonzero");
    let extra = Interval::point((&m * &m * int(2)).recip());
    let up = v.add(&extra);
    Interval::new(Rational::zero(), up.hi().clone())
}

fn prime_sum() -> &'static Interval {
    static SUM: OnceLock<Interval> = OnceLock::new();
    SUM.get_or_init(|| interval::prime_log_sum(C1_PRIME_LIMIT))
}

fn c1_from_sum(s: &Interval, bits: u32) -> Result<Interval> {
    let e = interval::e(bits);
    let s3 = interval::sqrt(&Interval::int(3), bits)?;
    interval::exp(&s.neg(), bits).div(&s3.mul(&e))
}

/// `c₁` with the prime sum truncated at `n` and no tail: an upper estimate that decreases in `n`.
pub fn c1_partial(n: u64, bits: u32) -> Result<Interval> {
    c1_from_sum(&interval::prime_log_sum(n), bits)
}

/// `c₁ = e^{−∑_{p≥5} ln p/(p(p−1))}/(√3 e)` enclosing the truncation error.
///
/// The width is limited by the tail bound, about `10⁻⁶` relative, whatever `bits` is.
pub fn c1_constant(bits: u32) -> Result<Interval> {
    let s = prime_sum().add(&c1_tail_bound(C1_PRIME_LIMIT));
    c1_from_sum(&s, bits)
}

/// Constants of the effective bound at `(a, t)`.
#[derive(Clone, Debug, Serialize)]
pub struct Th3Params {
    pub a: u64,
    pub t: u64,
    pub c1: Interval,
    pub tau3: Interval,
    pub tau4: Interval,
    pub c6: Interval,
    pub c7: Interval,
    /// `ln c₆ / ln c₇`.
    pub exponent: Interval,
    /// `c₇/(2τ₄)`.
    pub threshold: Interval,
    /// `(ln c₇)^{1/2}/(6τ₃c₆²(2τ₄)^μ)`.
    pub constant: Interval,
    /// `2τ₄`, the factor inside the logarithm.
    pub log_factor: Interval,
    pub c7_gt_e: Option<bool>,
    /// `c₆ < c₇²`, i.e. an improvement over Liouville.
    pub improves_liouville: Option<bool>,
    pub bits: u32,
}

impl Th3Params {
    pub fn new(a: u64, t: u64, bits: u32) -> Result<Self> {
        if a == 0 || t == 0 {
            return Err(Error::Hypothesis("a and t must be positive".into()));
        }
        if t * t < 9 * a {
            return Err(Error::Hypothesis(format!("t² ≥ 9a fails for a = {a}, t = {t}")));
        }
        let (ab, tb) = (b(a as i64), b(t as i64));
        let t2 = &tb * &tb;
        let c1 = c1_constant(bits)?;
        let e = interval::e(bits);
        let e2 = e.powi(2);
        let spi = interval::sqrt(&interval::pi(bits), bits)?;
        let s3 = interval::sqrt(&Interval::int(3), bits)?;
        let c1e2 = c1.powi(2).mul(&e2);
        let tau3 = Interval::from_big(&(b(4) * (b(3) * &t2 + &ab))).div(&spi)?;
        let tau4 = s3
            .mul(&e2)
            .scale(&Rational::from_integer(b(105) * ab.pow(4)))
            .div(&spi.scale(&Rational::from_integer(b(2) * &tb * (&t2 + b(2) * &ab) * (b(3) * &t2 + &ab))))?;
        let c6 = Interval::from_big(&(b(144) * (&t2 + &ab).pow(3))).div(&c1e2)?;
        let c7 = c1e2
            .scale(&Rational::new(t2.pow(2) * (&t2 + b(2) * &ab).pow(2), b(9) * ab.pow(6) * (&t2 + &ab)));
        let c7_gt_e = e.lt(&c7);
        let l6 = interval::ln(&c6, bits)?;
        let l7 = interval::ln(&c7, bits)?;
        let log_factor = tau4.scale(&int(2));
        let threshold = c7.div(&log_factor)?;
        let (exponent, constant) = if l7.is_positive() {
            let mu = l6.div(&l7)?;
            let num = interval::sqrt(&l7, bits)?;
            let den = tau3.mul(&c6.powi(2)).scale(&int(6)).mul(&interval::pow(&log_factor, &mu, bits)?);
            (mu, num.div(&den)?)
        } else {
            (Interval::new(Rational::zero(), Rational::zero()), Interval::int(0))
        };
        let improves_liouville = {
            let lhs = Interval::from_big(&(b(11664) * ab.pow(4) * (&t2 + &ab).pow(5)));
            let rhs = c1.powi(6).mul(&e.powi(6)).scale(&Rational::from_integer(t2.pow(4) * (&t2 + b(2) * &ab).pow(4)));
            lhs.lt(&rhs)
        };
        Ok(Th3Params {
            a,
            t,
            c1,
            tau3,
            tau4,
            c6,
            c7,
            exponent,
            threshold,
            constant,
            log_factor,
            c7_gt_e,
            improves_liouville,
            bits,
        })
    }

    /// `Q(k) = τ₃√k c₆^k` and `R(k) = τ₄√k c₇^{−k}`.
    pub fn rq(&self, k: u32) -> Result<(Interval, Interval)> {
        let sk = interval::sqrt(&Interval::int(k as i64), self.bits)?;
        let q = self.tau3.mul(&sk).mul(&self.c6.powi(k));
        let r = self.tau4.mul(&sk).div(&self.c7.powi(k))?;
        Ok((q, r))
    }
}

/// Right-hand side of the effective bound at `q`.
pub fn theorem3_bound(p: &Th3Params, q: &BigInt) -> Result<Interval> {
    if p.c7_gt_e != Some(true) {
        return Err(Error::Hypothesis(format!("c₇ > e not certified for a = {}, t = {}", p.a, p.t)));
    }
    let qi = Interval::from_big(q);
    if p.threshold.le(&qi) != Some(true) {
        return Err(Error::Hypothesis(format!("q ≥ c₇/(2τ₄) ≈ {} not certified", p.threshold)));
    }
    let bits = p.bits;
    let lq = interval::ln(&qi, bits)?;
    let ll = interval::ln(&interval::ln(&p.log_factor.mul(&qi), bits)?, bits)?;
    let half = Interval::point(Rational::new(BigInt::one(), b(2)));
    let expo = interval::ln(&p.constant, bits)?
        .sub(&p.exponent.mul(&lq))
        .sub(&p.exponent.add(&half).mul(&ll));
    Ok(interval::exp(&expo, bits))
}

/// The root `x > t/2` of `3x³ − 3tx² − 3ax + at`.
pub fn bound_family_root(a: i64, t: i64) -> Result<RealAlgebraic> {
    let p = IntPoly::from_i64(&[a * t, -3 * a, -3 * t, 3])?;
    let lo = Rational::new(b(t), b(2));
    let hi = int(t + a + 2);
    let roots = realcf::isolate_in(&p, &lo, &hi)?;
    roots
        .into_iter()
        .next_back()
        .ok_or_else(|| Error::NoPositiveRoot(format!("no root above t/2 for a = {a}, t = {t}")))
}

/// Reduced convergent `(p*_k, q*_k)` of index `4k+2`.
pub fn reduced_convergent(a: &BigInt, t: &BigInt, k: usize) -> (BigInt, BigInt) {
    let c = family5_convergents(a, t, 4 * k + 2);
    let (p, q) = &c[4 * k + 2];
    let g = p.gcd(q);
    (p / &g, q / &g)
}

#[derive(Clone, Debug, Serialize)]
pub struct RqCheck {
    pub k: u32,
    pub q_star: String,
    pub q_envelope: Interval,
    pub error: Interval,
    pub r_envelope: Interval,
    pub holds: bool,
}

/// `Q(k)`, `R(k)` against the exact reduced convergents.
pub fn rq_envelopes(p: &Th3Params, k: u32, root_bits: u32) -> Result<RqCheck> {
    let (q_env, r_env) = p.rq(k)?;
    let (ab, tb) = (b(p.a as i64), b(p.t as i64));
    let (ps, qs) = reduced_convergent(&ab, &tb, k as usize);
    let x = bound_family_root(p.a as i64, p.t as i64)?;
    let xi = x.enclose(root_bits + qs.bits() as u32);
    let err = xi.mul(&Interval::from_big(&qs)).sub(&Interval::from_big(&ps)).abs();
    let holds = Interval::from_big(&qs).le(&q_env) == Some(true) && err.le(&r_env) == Some(true);
    Ok(RqCheck { k, q_star: qs.to_string(), q_envelope: q_env, error: err, r_envelope: r_env, holds })
}

/// Number of complex roots of modulus above `√a`.
pub fn large_root_count(a: i64, t: i64) -> Result<usize> {
    let p = IntPoly::from_i64(&[a * t, -3 * a, -3 * t, 3])?;
    let roots = realcf::isolate_real_roots(&p)?;
    let ar = int(a);
    let bits = 256;
    let mut count = 0;
    let mut decide = |x: Interval, r: &Rational| -> Result<()> {
        match x.le(&Interval::point(r.clone())) {
            Some(false) => count += 1,
            Some(true) => {}
            None => return Err(Error::PrecisionExhausted("root modulus too close to √a".into())),
        }
        Ok(())
    };
    if roots.len() == 3 {
        for r in &roots {
            decide(r.enclose(bits).powi(2), &ar)?;
        }
    } else {
        let r = roots[0].enclose(bits);
        decide(r.powi(2), &ar)?;
        // the conjugate pair has |z|² = (product of roots)/r = −at/(3r)
        let m2 = Interval::point(Rational::new(b(-a * t), b(3))).div(&r)?;
        decide(m2.clone(), &ar)?;
        decide(m2, &ar)?;
    }
    Ok(count)
}

/// Largest `−ln‖q_n x‖ / ln q_n` over simple-CF convergents with `10 ≤ n < depth`.
///
/// Heuristic, used for the evidence column only.
pub fn numeric_evidence(a: i64, t: i64, depth: usize) -> Result<f64> {
    let x = bound_family_root(a, t)?;
    let cf = realcf::expand_real_cf(&x, depth + 1);
    let conv = cf.convergents();
    let mut best = f64::NEG_INFINITY;
    let end = depth.min(conv.len().saturating_sub(1));
    for (n, (_, q)) in conv.iter().enumerate().take(end).skip(10) {
        // ‖q_n x‖ lies between 1/((a_{n+1}+2) q_n) and 1/(a_{n+1} q_n)
        let an1 = cf.quotients[n + 1].to_f64().unwrap_or(f64::INFINITY);
        let lq = ln_big(q);
        let e = (lq + (an1 + 1.0).ln()) / lq;
        best = best.max(e);
    }
    Ok(best)
}

fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    (n >> shift as usize).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// One row of the bound table.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub a: u64,
    pub t: u64,
    pub equation: String,
    pub threshold_lo: String,
    pub threshold_hi: String,
    pub constant_lo: String,
    pub constant_hi: String,
    pub log_factor_lo: String,
    pub log_factor_hi: String,
    pub exponent_lo: String,
    pub exponent_hi: String,
    pub log_exponent_lo: String,
    pub log_exponent_hi: String,
    pub c7_gt_e: Option<bool>,
    pub improves_liouville: Option<bool>,
    /// Heuristic best-fit exponent over computed convergents.
    pub numeric_evidence: Option<String>,
}

pub fn equation_string(a: i64, t: i64) -> String {
    let p = IntPoly::from_i64(&[a * t, -3 * a, -3 * t, 3]).expect("nonzero");
    format!("{p} = 0")
}

pub fn table_row(a: u64, t: u64, bits: u32, evidence_depth: usize) -> Result<TableRow> {
    let p = Th3Params::new(a, t, bits)?;
    let d = 8;
    let (tl, th) = p.threshold.endpoints(d);
    let (kl, kh) = p.constant.endpoints(d);
    let (fl, fh) = p.log_factor.endpoints(d);
    let (el, eh) = p.exponent.endpoints(d);
    let le = p.exponent.add(&Interval::point(Rational::new(BigInt::one(), b(2))));
    let (ll, lh) = le.endpoints(d);
    let numeric_evidence = if evidence_depth > 10 {
        Some(format!("{:.3}", numeric_evidence(a as i64, t as i64, evidence_depth)?))
    } else {
        None
    };
    Ok(TableRow {
        a,
        t,
        equation: equation_string(a as i64, t as i64),
        threshold_lo: tl,
        threshold_hi: th,
        constant_lo: kl,
        constant_hi: kh,
        log_factor_lo: fl,
        log_factor_hi: fh,
        exponent_lo: el,
        exponent_hi: eh,
        log_exponent_lo: ll,
        log_exponent_hi: lh,
        c7_gt_e: p.c7_gt_e,
        improves_liouville: p.improves_liouville,
        numeric_evidence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn first_block_at_small_parameters() {
        let c = family5_convergents(&bi(1), &bi(4), 2);
        assert_eq!(c[1], (bi(50), bi(12)));
        assert_eq!(c[2], (bi(204), bi(49)));
        let s = block_matrices(&bi(1), &bi(4), 0).unwrap().s;
        assert_eq!(s.det(), bi(-2));
        for a in 1..=3 {
            let s = block_matrices(&bi(a), &bi(7), 0).unwrap().s;
            assert_eq!(s.det(), bi(-2 * a * a));
        }
    }

    #[test]
    fn block_identities() {
        for k in 0..=5 {
            assert!(a11_identity(k));
        }
        for a in 1..=3 {
            for k in 1..=5 {
                block_matrices(&bi(a), &bi(11), k).unwrap();
            }
        }
    }

    #[test]
    fn growth_bracket_holds_on_grid() {
        for (a, t) in [(1, 11), (2, 42), (3, 94)] {
            for k in 0..=10 {
                assert!(growth_bracket(&bi(a), &bi(t), k).inside, "({a},{t}) k={k}");
            }
        }
    }

    #[test]
    fn factorial_envelopes() {
        for k in 2..=10 {
            assert!(double_factorial_envelope(k, 128).unwrap());
        }
        let d = denominator_bounds(&bi(1), &bi(11), 3, 128).unwrap();
        assert!(d.lower_simple.lt(&d.upper_simple) == Some(true));
        assert!(denominator_bounds(&bi(1), &bi(11), 1, 128).is_err());
    }

    #[test]
    fn gaps_contract() {
        for k in 1..=10 {
            assert!(contraction_factor(&bi(1), &bi(11), k) < Rational::new(bi(1), bi(2)));
        }
        let g = tail_gap(&bi(1), &bi(11), 2, 128).unwrap();
        assert!(g.gap.is_positive());
        assert!(tail_gap(&bi(4), &bi(1), 1, 128).is_err());
    }

    #[test]
    fn gcd_products() {
        assert_eq!(gcd_product(2), bi(1));
        let g = gcd_lower_bound(1, 128).unwrap();
        assert!(g.below_range);
        let expect = bi(5).pow(5) * bi(7).pow(3) * bi(11).pow(2) * bi(13).pow(2) * bi(17) * bi(19) * bi(23);
        assert_eq!(gcd_product(13), expect);
        let (p, q) = family5_convergents(&bi(1), &bi(11), 26)[26].clone();
        assert!(p.gcd(&q).is_multiple_of(&gcd_product(6)));
    }

    #[test]
    fn c1_value() {
        let c1 = c1_constant(128).unwrap();
        assert!(c1.lo() >= &Rational::new(bi(16947), bi(100000)));
        assert!(c1.hi() <= &Rational::new(bi(16949), bi(100000)));
        let a = c1_partial(1000, 128).unwrap();
        let b2 = c1_partial(2000, 128).unwrap();
        assert!(b2.lt(&a) == Some(true));
        let r = interval::rat_to_f64(c1_tail_bound(1 << 12).hi()) / interval::rat_to_f64(c1_tail_bound(1 << 13).hi());
        assert!(r > 1.8 && r < 2.2);
    }

    #[test]
    fn large_root_counts() {
        assert_eq!(large_root_count(1, 3).unwrap(), 1);
        assert_eq!(large_root_count(2, 5).unwrap(), 1);
    }

    #[test]
    fn hypotheses_refused() {
        assert!(matches!(Th3Params::new(1, 2, 128), Err(Error::Hypothesis(_))));
        let p = Th3Params::new(1, 11, 128).unwrap();
        assert!(theorem3_bound(&p, &bi(1000)).is_err());
    }
}
