//! Very good rational approximations from family 5 at `a = 1`, `t = t_k`, and the constants of
//! the large-quotient conjectures.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::bounds::{block_product, family5_term, v2, Mat2};
use crate::cfrac::{self, Gcf};
use crate::error::{Error, Result};
use crate::interval::{self, Interval};
use crate::qexact::rational::{int, to_wire, Rational};
use crate::qexact::{IntPoly, Poly};
use crate::realcf::{self, RealAlgebraic};

/// Largest odd divisor.
pub fn d2(n: &BigInt) -> Result<BigInt> {
    if !n.is_positive() {
        return Err(Error::InvalidArgument(format!("d2 needs a positive integer, got {n}")));
    }
    Ok(n >> v2(n) as usize)
}

fn d2i(n: i64) -> BigInt {
    d2(&BigInt::from(n)).expect("positive")
}

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

/// `lcm{1 ≤ m ≤ 6k+1 : m ≡ ±1 (mod 6)}`.
pub fn t_k(k: u64) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::InvalidArgument("t_k needs k ≥ 1".into()));
    }
    let n = 6 * k + 1;
    Ok((1..=n).filter(|m| m % 6 == 1 || m % 6 == 5).fold(BigInt::one(), |acc, m| acc.lcm(&BigInt::from(m))))
}

pub fn lcm_upto(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, m| acc.lcm(&BigInt::from(m)))
}

/// `t_k · 2^{⌊log₂ n⌋} · 3^{⌊log₃ n⌋} = lcm(1..n)` for `n = 6k+1`.
pub fn t_k_prime_power_identity(k: u64) -> Result<bool> {
    let n = 6 * k + 1;
    let e2 = 63 - n.leading_zeros();
    let mut e3 = 0;
    while 3u64.pow(e3 + 1) <= n {
        e3 += 1;
    }
    Ok(t_k(k)? * b(2).pow(e2) * b(3).pow(e3) == lcm_upto(n))
}

/// Certifies `e^{0.96 n}/n² < t_k < 6e^{1.04 n}/n²` with `n = 6k+1`.
pub fn t_k_envelope(k: u64, bits: u32) -> Result<(bool, bool)> {
    let t = Interval::from_big(&t_k(k)?);
    let n = (6 * k + 1) as i64;
    let n2 = Interval::int(n * n);
    let lo = interval::exp(&Interval::point(Rational::new(b(96 * n), b(100))), bits).div(&n2)?;
    let hi = interval::exp(&Interval::point(Rational::new(b(104 * n), b(100))), bits).scale(&int(6)).div(&n2)?;
    Ok((lo.lt(&t) == Some(true), t.lt(&hi) == Some(true)))
}

/// Family 5 at `a = 1`, `t = t_value`, after the odd-part reductions.
#[derive(Clone, Debug, Serialize)]
pub struct StarCF {
    pub k: u64,
    pub t_value: String,
    #[serde(skip)]
    pub base_a: Vec<BigInt>,
    #[serde(skip)]
    pub base_beta: Vec<BigInt>,
    #[serde(serialize_with = "ser_rats")]
    pub a_star: Vec<Rational>,
    #[serde(serialize_with = "ser_rats")]
    pub beta_star: Vec<Rational>,
}

fn ser_rats<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(to_wire))
}

impl StarCF {
    pub fn len(&self) -> usize {
        self.a_star.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a_star.is_empty()
    }

    /// Numeric generalized continued fraction with the reduced terms.
    pub fn gcf(&self) -> Gcf {
        Gcf::new(self.beta_star.clone(), self.a_star.iter().map(|x| Poly::constant(x.clone())).collect())
            .expect("aligned lengths")
    }

    pub fn base_gcf(&self) -> Gcf {
        Gcf::new(
            self.base_beta.iter().cloned().map(Rational::from_integer).collect(),
            self.base_a.iter().cloned().map(|x| Poly::constant(Rational::from_integer(x))).collect(),
        )
        .expect("aligned lengths")
    }

    /// Exact `(p_i, q_i)` of the reduced fraction.
    pub fn convergents(&self) -> Vec<(Rational, Rational)> {
        numeric_convergents(&self.beta_star, &self.a_star)
    }
}

pub fn numeric_convergents(beta: &[Rational], a: &[Rational]) -> Vec<(Rational, Rational)> {
    let (mut p1, mut q1) = (Rational::one(), Rational::zero());
    let (mut p0, mut q0) = (a[0].clone(), Rational::one());
    let mut out = vec![(p0.clone(), q0.clone())];
    for i in 1..a.len() {
        let p = &a[i] * &p0 + &beta[i] * &p1;
        let q = &a[i] * &q0 + &beta[i] * &q1;
        p1 = std::mem::replace(&mut p0, p.clone());
        q1 = std::mem::replace(&mut q0, q.clone());
        out.push((p, q));
    }
    out
}

/// Applies the reductions at `t` to `n + 1` terms.
pub fn star_transform_at(t: &BigInt, k: u64, n: usize) -> StarCF {
    let one = BigInt::one();
    let (base_beta, base_a): (Vec<BigInt>, Vec<BigInt>) = (0..=n).map(|i| family5_term(&one, t, i)).unzip();
    let mut beta: Vec<Rational> = base_beta.iter().cloned().map(Rational::from_integer).collect();
    let mut a: Vec<Rational> = base_a.iter().cloned().map(Rational::from_integer).collect();
    for i in 1..=n {
        let d = Rational::from_integer(d2(&beta[i].to_integer()).expect("positive β"));
        a[i] /= &d;
        beta[i] /= &d;
        if i < n {
            a[i + 1] *= &d;
        }
        if i + 1 < n {
            beta[i + 2] *= &d;
        }
    }
    StarCF { k, t_value: t.to_string(), base_a, base_beta, a_star: a, beta_star: beta }
}

/// Closed forms of the reduced partial quotients.
pub fn star_closed_form(base_a: &[BigInt], i: usize) -> Rational {
    let k = (i.saturating_sub(1) / 4) as i64;
    let p = |m: i64| (0..m).fold(BigInt::one(), |acc, j| acc * b((6 * j + 1) * (6 * j + 5)));
    let d = |m: i64| (0..m).fold(BigInt::one(), |acc, j| acc * d2i(3 * j + 1) * d2i(3 * j + 2));
    let a = Rational::from_integer(base_a[i].clone());
    match i % 4 {
        1 => a / Rational::from_integer(d2i(3 * k + 1)) * Rational::new(p(k), d(k)),
        2 => a * Rational::from_integer(d2i(3 * k + 1)) / int(6 * k + 1) * Rational::new(d(k), p(k)),
        3 => a * int(6 * k + 1) * Rational::new(p(k), d(k + 1)),
        _ => a * Rational::new(d(k + 1), p(k + 1)),
    }
}

/// The reduced fraction at `t = t_k`, checked against the closed forms, for integrality up to
/// index `4k+3` and for unchanged convergents.
pub fn star_transform(k: u64) -> Result<StarCF> {
    let t = t_k(k)?;
    let n = 4 * k as usize + 4;
    let s = star_transform_at(&t, k, n);
    for i in 1..=n {
        if s.a_star[i] != star_closed_form(&s.base_a, i) {
            return Err(Error::CheckFailed(format!("reduced a_{i} differs from its closed form")));
        }
        let two_part = Rational::new(s.base_beta[i].clone(), d2(&s.base_beta[i])?);
        if s.beta_star[i] != two_part {
            return Err(Error::CheckFailed(format!("reduced β_{i} is not the 2-part")));
        }
    }
    if let Some(i) = (1..=4 * k as usize + 3).find(|&i| !s.a_star[i].is_integer()) {
        return Err(Error::CheckFailed(format!("reduced a_{i} = {} is not integral", to_wire(&s.a_star[i]))));
    }
    let m = cfrac::first_convergent_mismatch(&s.gcf(), &s.base_gcf(), 8.min(n))?;
    if let Some(i) = m {
        return Err(Error::CheckFailed(format!("convergent {i} changed by the reductions")));
    }
    Ok(s)
}

/// `∏_{j=0}^{m} 4(3j+1)(3j+2)/(d₂(3j+1)d₂(3j+2))`.
pub fn p_m_product(m: u64) -> Rational {
    (0..=m as i64).fold(Rational::one(), |acc, j| {
        acc * Rational::new(b(4 * (3 * j + 1) * (3 * j + 2)), d2i(3 * j + 1) * d2i(3 * j + 2))
    })
}

/// `4^m ≤ P_m ≤ (3m+2)·2^{4m+4}`.
pub fn p_m_bounds_hold(m: u64) -> bool {
    let p = p_m_product(m);
    let lo = Rational::from_integer(b(4).pow(m as u32));
    let hi = Rational::from_integer(b(3 * m as i64 + 2) * b(2).pow(4 * m as u32 + 4));
    lo <= p && p <= hi
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoAdicRow {
    pub n: usize,
    pub four_block: u64,
    pub eight_block: u64,
    /// `min(v₂(p_{32n+2}), v₂(q_{32n+2}))`.
    pub convergent: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoAdicReport {
    pub t: String,
    pub rows: Vec<TwoAdicRow>,
    /// Measured `v₂` of the convergents over `n`, for comparison with `16n`.
    pub measured_per_n: Vec<f64>,
}

/// 2-adic valuations of block products at odd `t` and `a = 1`.
pub fn two_adic_audit(t: &BigInt, k0: usize) -> Result<TwoAdicReport> {
    if t.is_even() || !t.is_positive() {
        return Err(Error::Hypothesis(format!("t must be odd and positive, got {t}")));
    }
    let one = BigInt::one();
    let nblocks = 4 * k0 + 8;
    let blocks: Vec<Mat2> = crate::par::map((0..nblocks).collect(), |k| block_product(&one, t, k));
    let prod = |from: usize, len: usize| -> Mat2 {
        (from..from + len).fold(Mat2::identity(), |acc, k| blocks[k].mul(&acc))
    };
    let c = crate::bounds::family5_convergents(&one, t, 32 * k0 + 2);
    let mut rows = Vec::new();
    let mut measured = Vec::new();
    for n in 0..=k0 {
        let four = prod(4 * n, 4).min_v2().unwrap_or(u64::MAX);
        let eight = prod(4 * n, 8).min_v2().unwrap_or(u64::MAX);
        let (p, q) = &c[32 * n + 2];
        let conv = v2(p).min(v2(q));
        if four < 7 || eight < 15 || conv < 15 * n as u64 {
            return Err(Error::CheckFailed(format!(
                "2-adic valuations at n = {n}: four-block {four}, eight-block {eight}, convergent {conv}"
            )));
        }
        if n > 0 {
            measured.push(conv as f64 / n as f64);
        }
        rows.push(TwoAdicRow { n, four_block: four, eight_block: eight, convergent: conv });
    }
    Ok(TwoAdicReport { t: t.to_string(), rows, measured_per_n: measured })
}

/// The tail constant `τ = 3 + 2ln2/2.88` and `c = ln²φ / C`.
pub fn conjecture_constants(big_c: &Rational, bits: u32) -> Result<(Interval, Interval)> {
    if !big_c.is_positive() {
        return Err(Error::InvalidArgument("C must be positive".into()));
    }
    let ln2 = interval::ln(&Interval::int(2), bits)?;
    let tau = ln2.scale(&Rational::new(b(25), b(36))).add(&Interval::int(3));
    let s5 = interval::sqrt(&Interval::int(5), bits)?;
    let phi = s5.add(&Interval::int(1)).scale(&Rational::new(b(1), b(2)));
    let lphi = interval::ln(&phi, bits)?;
    let c = lphi.powi(2).div(&Interval::point(big_c.clone()))?;
    Ok((tau, c))
}

/// The exponents `3 + 2ln2/2.88` (numerical evidence) and `3 + 17ln2/23.04` (proved).
pub fn tau_exponents(bits: u32) -> Result<(Interval, Interval)> {
    let ln2 = interval::ln(&Interval::int(2), bits)?;
    let heuristic = ln2.scale(&Rational::new(b(200), b(288))).add(&Interval::int(3));
    let rigorous = ln2.scale(&Rational::new(b(1700), b(2304))).add(&Interval::int(3));
    Ok((heuristic, rigorous))
}

/// Cap `3 + 15 ln 2/24` on the exponent of the witnesses.
pub fn tau_cap(bits: u32) -> Result<Interval> {
    Ok(interval::ln(&Interval::int(2), bits)?.scale(&Rational::new(b(15), b(24))).add(&Interval::int(3)))
}

/// `x(t, 1)`, the root above `t/2` of `3x³ − 3tx² − 3x + t`.
pub fn witness_root(t: &BigInt) -> Result<RealAlgebraic> {
    let p = IntPoly::new(vec![t.clone(), b(-3), -b(3) * t, b(3)])?;
    let lo = Rational::new(t.clone(), b(2));
    let hi = Rational::from_integer(t + b(3));
    realcf::isolate_in(&p, &lo, &hi)?
        .into_iter()
        .next_back()
        .ok_or_else(|| Error::NoPositiveRoot(format!("no root above t/2 at t = {t}")))
}

/// `‖qx‖`, refined until it is separated from `bound`.
fn norm_of(x: &RealAlgebraic, q: &BigInt, bound: &Interval) -> Result<Interval> {
    interval::escalate(1 << 17, |bits| {
        let xi = x.enclose(bits + q.bits() as u32);
        Ok(xi.mul(&Interval::from_big(q)).dist_to_nearest_int().filter(|d| d.lt(bound).is_some()))
    })
}

/// One instance of the approximation `‖q*x‖ < 32/(4^{15m} t_k³ q*)`.
#[derive(Clone, Debug, Serialize)]
pub struct ApproxCheck {
    pub m: u64,
    pub index: usize,
    pub q_star: String,
    pub two_power: u64,
    pub distance: Interval,
    pub bound: Interval,
    pub holds: bool,
}

fn half_power_reduced(k: u64, m: u64) -> Result<(BigInt, BigInt, u64, StarCF)> {
    let t = t_k(k)?;
    let idx = 32 * m as usize + 2;
    let s = star_transform_at(&t, k, idx);
    let conv = s.convergents();
    let q = &conv[idx].1;
    if !q.is_integer() || !conv[idx].0.is_integer() {
        return Err(Error::CheckFailed(format!("q_{idx} of the reduced fraction is not integral")));
    }
    let q = q.to_integer();
    let shift = 15 * m;
    if v2(&q) < shift || v2(&conv[idx].0.to_integer()) < shift {
        return Err(Error::CheckFailed(format!("2^{shift} does not divide p_{idx}, q_{idx}")));
    }
    Ok((t, q >> shift as usize, shift, s))
}

/// Checks the approximation inequality at `k = 8k0` and block `m`.
pub fn approx_instance_check(k0: u64, m: u64) -> Result<ApproxCheck> {
    if m >= k0 {
        return Err(Error::Hypothesis(format!("need m < k0, got m = {m}, k0 = {k0}")));
    }
    let k = 8 * k0;
    let (t, qs, shift, _) = half_power_reduced(k, m)?;
    let x = witness_root(&t)?;
    let den = b(4).pow(15 * m as u32) * t.pow(3) * &qs;
    let bound = Interval::point(Rational::new(b(32), den));
    let dist = norm_of(&x, &qs, &bound)?;
    let holds = dist.lt(&bound) == Some(true);
    Ok(ApproxCheck { m, index: 32 * m as usize + 2, q_star: qs.to_string(), two_power: shift, distance: dist, bound, holds })
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessRecord {
    pub m: u64,
    pub q_star: String,
    pub approx_error: Interval,
    pub tau_achieved: f64,
    pub c_achieved: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub k0: u64,
    pub k: u64,
    pub t_k: String,
    pub height: String,
    pub tau: f64,
    pub epsilon: f64,
    pub c: f64,
    /// Both constraints on `ε` hold at this `k0`.
    pub constraints_met: bool,
    pub records: Vec<WitnessRecord>,
    pub enough: bool,
    pub note: String,
}

/// `4^{ε(1−ε)k0} > 32·3⁴` and `τ < 3 + 15 ln2 (1−ε)²/(24(1+ε))`.
fn epsilon_ok(eps: f64, k0: u64, tau: f64) -> bool {
    let a = eps * (1.0 - eps) * k0 as f64 * 4f64.ln() > (32.0 * 81.0f64).ln();
    let b = tau < 3.0 + 15.0 * 2f64.ln() * (1.0 - eps).powi(2) / (24.0 * (1.0 + eps));
    a && b
}

/// Witnesses `q*_{32m+2}` of `‖qx‖ < 1/(H^τ q e^{c√ln q})` for `x = x(t_k, 1)`, `k = 8k0`.
pub fn theorem4_witnesses(k0: u64, tau: f64, n0: usize) -> Result<WitnessReport> {
    let cap = tau_cap(128)?;
    if !(Interval::point(float_rational(tau)).lt(&cap) == Some(true)) {
        return Err(Error::Hypothesis(format!("τ = {tau} is not below 3 + 15 ln2/24")));
    }
    if k0 == 0 {
        return Err(Error::InvalidArgument("k0 must be positive".into()));
    }
    let grid: Vec<f64> = (1..100).map(|i| i as f64 / 100.0).collect();
    let chosen = grid.iter().rev().copied().find(|&e| epsilon_ok(e, k0, tau));
    let constraints_met = chosen.is_some();
    let eps = chosen.unwrap_or(0.5);
    let c = 7.0 * eps / 24.0 * ((1.0 - eps) / (1.0 + 2.0 * eps)).sqrt();
    let k = 8 * k0;
    let t = t_k(k)?;
    let h = b(3) * &t;
    let x = witness_root(&t)?;
    let lo = ((1.0 - eps) * k0 as f64).floor() as u64 + 1;
    let ms: Vec<u64> = (lo..k0).collect();
    let evaluated: Vec<Result<Option<WitnessRecord>>> = crate::par::map(ms, |m| {
        let (_, qs, _, _) = half_power_reduced(k, m)?;
        let lnq = ln_big(&qs);
        let lnh = ln_big(&h);
        let rhs = interval::exp(
            &Interval::point(float_rational(-(tau * lnh + lnq + c * lnq.sqrt()))),
            128,
        );
        let dist = norm_of(&x, &qs, &rhs)?;
        let ld = -ln_interval_f64(&dist);
        let tau_achieved = (ld - lnq - c * lnq.sqrt()) / lnh;
        let c_achieved = (ld - lnq - tau * lnh) / lnq.sqrt();
        Ok((dist.lt(&rhs) == Some(true)).then(|| WitnessRecord {
            m,
            q_star: qs.to_string(),
            approx_error: dist,
            tau_achieved,
            c_achieved,
        }))
    });
    let mut records = Vec::new();
    for r in evaluated {
        if let Some(w) = r? {
            records.push(w);
        }
    }
    let enough = records.len() >= n0;
    let note = if constraints_met && enough {
        "witnesses found".to_string()
    } else {
        "scale insufficient: t_k grows like e^{6k}, the asymptotic regime is out of reach".to_string()
    };
    Ok(WitnessReport {
        k0,
        k,
        t_k: t.to_string(),
        height: h.to_string(),
        tau,
        epsilon: eps,
        c,
        constraints_met,
        records,
        enough,
        note,
    })
}

/// Exact rational value of a finite float.
pub fn float_rational(x: f64) -> Rational {
    Rational::from_float(x).unwrap_or_else(Rational::zero)
}

fn ln_big(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits < 1000 {
        return n.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    (n >> shift as usize).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

fn ln_interval_f64(x: &Interval) -> f64 {
    let m = x.mid();
    ln_big(m.numer()) - ln_big(m.denom())
}

/// `P_m t_k³ q_{4m+2} < q_{4m+3} < 8 P_m t_k³ q_{4m+2}` in the reduced fraction.
pub fn sandwich_holds(k: u64, m: u64) -> Result<bool> {
    let t = t_k(k)?;
    let s = star_transform_at(&t, k, 4 * m as usize + 3);
    let c = s.convergents();
    let (q2, q3) = (&c[4 * m as usize + 2].1, &c[4 * m as usize + 3].1);
    let f = p_m_product(m) * Rational::from_integer(t.pow(3));
    Ok(&f * q2 < *q3 && *q3 < &f * q2 * int(8))
}

/// `q_i > q_{i−1}` and `q_i < 2a*_i q_{i−1}` for `1 ≤ i ≤ 4k+3`.
pub fn q_growth_holds(s: &StarCF, k: u64) -> bool {
    let c = s.convergents();
    (1..=(4 * k as usize + 3).min(s.len() - 1)).all(|i| {
        let (q0, q1) = (&c[i - 1].1, &c[i].1);
        q1 > q0 && *q1 < &s.a_star[i] * q0 * int(2)
    })
}

/// `‖q_{4k+2}x‖ ≥ 1/(32 t_k³ q_{4k+2})` for the reduced fraction.
pub fn lower_chain_holds(k: u64) -> Result<bool> {
    let t = t_k(k)?;
    let idx = 4 * k as usize + 2;
    let s = star_transform_at(&t, k, idx);
    let q = s.convergents()[idx].1.clone();
    if !q.is_integer() {
        return Err(Error::CheckFailed(format!("q_{idx} is not integral")));
    }
    let q = q.to_integer();
    let x = witness_root(&t)?;
    let bound = Interval::point(Rational::new(BigInt::one(), b(32) * t.pow(3) * &q));
    let d = norm_of(&x, &q, &bound)?;
    Ok(bound.le(&d) == Some(true))
}

/// `v₂ gcd(p_{4k+2}, q_{4k+2})` for the reduced fraction at `t_k`, compared with `2k`.
pub fn gcd_two_power(k: u64) -> Result<u64> {
    let t = t_k(k)?;
    let idx = 4 * k as usize + 2;
    let s = star_transform_at(&t, k, idx);
    let (p, q) = s.convergents()[idx].clone();
    if !p.is_integer() || !q.is_integer() {
        return Err(Error::CheckFailed(format!("convergent {idx} is not integral")));
    }
    Ok(v2(&p.to_integer().gcd(&q.to_integer())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_parts() {
        assert_eq!(d2(&b(12)).unwrap(), b(3));
        assert_eq!(d2(&b(7)).unwrap(), b(7));
        assert_eq!(d2(&b(1)).unwrap(), b(1));
        assert!(d2(&b(0)).is_err());
    }

    #[test]
    fn lcm_parameters() {
        assert_eq!(t_k(1).unwrap(), b(35));
        assert_eq!(t_k(2).unwrap(), b(5005));
        for k in 1..=20 {
            assert!(t_k_prime_power_identity(k).unwrap());
        }
        for k in 2..=6 {
            assert_eq!(t_k_envelope(k, 128).unwrap(), (true, true));
        }
    }

    #[test]
    fn reductions_integral() {
        for k in 1..=3 {
            let s = star_transform(k).unwrap();
            assert!(q_growth_holds(&s, k));
        }
        let s = star_transform_at(&b(35), 1, 8);
        assert_eq!(s.beta_star[2], int(1));
        assert_eq!(s.beta_star[6], int(1));
    }

    #[test]
    fn products() {
        assert_eq!(p_m_product(0), int(8));
        for m in 0..=30 {
            assert!(p_m_bounds_hold(m));
        }
    }

    #[test]
    fn two_adic_small() {
        let r = two_adic_audit(&b(35), 1).unwrap();
        assert!(r.rows[0].eight_block >= 15);
        let r = two_adic_audit(&b(3), 1).unwrap();
        assert!(r.rows[1].four_block >= 7);
        assert!(two_adic_audit(&b(4), 1).is_err());
    }

    #[test]
    fn constants() {
        let (tau, c) = conjecture_constants(&int(1), 128).unwrap();
        assert!(tau.lo() >= &Rational::new(b(34813), b(10000)) && tau.hi() <= &Rational::new(b(34815), b(10000)));
        assert!((c.to_f64() - 0.2316).abs() < 1e-4);
        let (_, c2) = conjecture_constants(&int(2), 128).unwrap();
        assert!((c2.to_f64() * 2.0 - c.to_f64()).abs() < 1e-15);
        assert!((tau_cap(128).unwrap().to_f64() - 3.4332).abs() < 1e-4);
        assert!(theorem4_witnesses(1, 3.5, 1).is_err());
    }
}
