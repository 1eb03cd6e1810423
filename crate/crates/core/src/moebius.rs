//! Reduction of a real cubic irrational to the shape `y³ − ty² − a` by an integral Möbius map,
//! and the resulting continued fractions.
//!
//! With `x = (u·y₀ + v)/(s·y₀ + w)` and `u`, `s` chosen to kill the linear term, `y₀` satisfies
//! `Q_h y₀³ + 3R_h y₀² + 1 = 0`, where `R_h`, `Q_h` are the binary forms below evaluated at
//! `(v, w)`. Then `y = −Q_h y₀` is a root of `y³ − 3R_h y² − Q_h²`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::bounds::Mat2;
use crate::cfrac::{self, Gcf};
use crate::error::{Error, Result};
use crate::interval::{self, Interval};
use crate::qexact::rational::{int, Rational};
use crate::qexact::{IntPoly, Poly};
use crate::realcf::{self, RealAlgebraic};

fn b(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Binary forms `R(v, w)` (quadratic) and `Q(v, w)` (cubic), coefficients from `v^deg` down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionForms {
    pub r: [BigInt; 3],
    pub q: [BigInt; 4],
}

impl ReductionForms {
    pub fn r_at(&self, v: &BigInt, w: &BigInt) -> BigInt {
        &self.r[0] * v * v + &self.r[1] * v * w + &self.r[2] * w * w
    }

    pub fn q_at(&self, v: &BigInt, w: &BigInt) -> BigInt {
        &self.q[0] * v * v * v + &self.q[1] * v * v * w + &self.q[2] * v * w * w + &self.q[3] * w * w * w
    }

    /// `R(z)` as a polynomial in `z = v/w`, ascending.
    pub fn r_poly(&self) -> Poly {
        Poly::from_bigints(&[self.r[2].clone(), self.r[1].clone(), self.r[0].clone()])
    }

    /// `Q(z)` as an integer polynomial in `z = v/w`.
    pub fn q_poly(&self) -> Result<IntPoly> {
        IntPoly::new(vec![self.q[3].clone(), self.q[2].clone(), self.q[1].clone(), self.q[0].clone()])
    }
}

fn coeffs(p: &IntPoly) -> Result<[BigInt; 4]> {
    if p.degree() != 3 {
        return Err(Error::InvalidArgument(format!("expected a cubic, got degree {}", p.degree())));
    }
    let c = p.coeffs();
    Ok([c[0].clone(), c[1].clone(), c[2].clone(), c[3].clone()])
}

/// The forms `R`, `Q` of a cubic; errors when `R` vanishes identically.
pub fn rq_polynomials(p: &IntPoly) -> Result<ReductionForms> {
    let [b0, b1, b2, b3] = coeffs(p)?;
    let r = [&b(3) * &b3 * &b1 - &b2 * &b2, &b(9) * &b3 * &b0 - &b2 * &b1, &b(3) * &b2 * &b0 - &b1 * &b1];
    if r.iter().all(Zero::is_zero) {
        return Err(Error::Degenerate("R vanishes identically, so the cubic has a rational root".into()));
    }
    let q = [
        -b(9) * &b3 * &b2 * &b1 + b(2) * b2.pow(3) + b(27) * &b3 * &b3 * &b0,
        b(3) * &b2 * &b2 * &b1 - b(18) * &b3 * &b1 * &b1 + b(27) * &b3 * &b2 * &b0,
        b(18) * &b2 * &b2 * &b0 - b(3) * &b2 * &b1 * &b1 - b(27) * &b3 * &b1 * &b0,
        b(9) * &b2 * &b1 * &b0 - b(2) * b1.pow(3) - b(27) * &b3 * &b0 * &b0,
    ];
    Ok(ReductionForms { r, q })
}

/// `(u, s)` that annihilate the linear term for given `(v, w)`.
pub fn us_for(p: &IntPoly, v: &BigInt, w: &BigInt) -> Result<(BigInt, BigInt)> {
    let [b0, b1, b2, b3] = coeffs(p)?;
    let s = b(3) * &b3 * v * v + b(2) * &b2 * v * w + &b1 * w * w;
    let u = -(b(3) * &b0 * w * w + b(2) * &b1 * v * w + &b2 * v * v);
    Ok((u, s))
}

/// Coefficients (ascending in `y`) of `P((u y + v)/(s y + w))·(s y + w)³`.
pub fn transformed_cubic(p: &IntPoly, u: &BigInt, v: &BigInt, s: &BigInt, w: &BigInt) -> Result<Vec<BigInt>> {
    let [b0, b1, b2, b3] = coeffs(p)?;
    let num = Poly::from_bigints(&[v.clone(), u.clone()]);
    let den = Poly::from_bigints(&[w.clone(), s.clone()]);
    let mut acc = Poly::zero();
    for (j, c) in [b0, b1, b2, b3].into_iter().enumerate() {
        let term = &num.pow(j as u32) * &den.pow(3 - j as u32);
        acc = &acc + &term.scale(&Rational::from_integer(c));
    }
    Ok((0..4).map(|i| acc.coeff(i).to_integer()).collect())
}

/// `P_h(v, w) = w³P(v/w)`.
pub fn homogeneous_at(p: &IntPoly, v: &BigInt, w: &BigInt) -> BigInt {
    let n = p.degree();
    p.coeffs().iter().enumerate().map(|(j, c)| c * v.pow(j as u32) * w.pow((n - j) as u32)).sum()
}

/// `z = −2(b₂x + b₁)/(3b₃x + b₂) − x` as an exact root of `Q`.
pub fn z_of_root(p: &IntPoly, x: &RealAlgebraic) -> Result<RealAlgebraic> {
    let forms = rq_polynomials(p)?;
    let qp = forms.q_poly()?;
    if qp.has_rational_root() {
        return Err(Error::Degenerate("Q has a rational root".into()));
    }
    let [_, b1, b2, b3] = coeffs(p)?;
    let roots = realcf::isolate_real_roots(&qp)?;
    interval::escalate(1 << 14, |bits| {
        let xi = x.enclose(bits);
        let den = xi.scale(&Rational::from_integer(b(3) * &b3)).add(&Interval::from_big(&b2));
        if den.lo() <= &Rational::zero() && den.hi() >= &Rational::zero() {
            return Ok(None);
        }
        let num = xi.scale(&Rational::from_integer(b2.clone())).add(&Interval::from_big(&b1)).scale(&int(-2));
        let z = num.div(&den)?.sub(&xi);
        let hits: Vec<&RealAlgebraic> = roots
            .iter()
            .filter(|r| z.overlaps(&Interval::new(r.lo().clone(), r.hi().clone())))
            .collect();
        Ok(match hits.as_slice() {
            [one] => {
                let zr = RealAlgebraic::new(qp.clone(), one.lo().clone(), one.hi().clone())?;
                if zr.enclose(bits).overlaps(&xi) && bits > 2048 {
                    return Err(Error::CheckFailed("z coincides with x".into()));
                }
                Some(zr)
            }
            _ => None,
        })
    })
}

/// Outcome of each applicability check for one `(v, w)`.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ReductionChecks {
    /// `3|R(v/w)| > 2|Q(v/w)|^{2/3}`, i.e. `|t|³ > 8a`.
    pub separation: bool,
    /// `|v/w − z| < |z − x|/2`.
    pub near_z: bool,
    /// `|z − x|/(2|sx − u|) > |w|·|Q(v/w)|^{2/3}`.
    pub tail: bool,
    /// `0 < 12a ≤ |t|³`.
    pub convergence: bool,
    /// `|y|³ > a` for the mapped root.
    pub large_root: bool,
}

impl ReductionChecks {
    pub fn all(&self) -> bool {
        self.separation && self.near_z && self.tail && self.convergence && self.large_root
    }

    fn first_failure(&self) -> &'static str {
        [
            (self.separation, "separation"),
            (self.near_z, "near_z"),
            (self.tail, "tail"),
            (self.convergence, "convergence"),
            (self.large_root, "large_root"),
        ]
        .into_iter()
        .find(|(ok, _)| !ok)
        .map(|(_, n)| n)
        .unwrap_or("none")
    }
}

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionCertificate {
    pub source: RealAlgebraic,
    #[serde(serialize_with = "ser_big")]
    pub v: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub w: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub u: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub s: BigInt,
    /// `Q_h(v, w)`; the reduced root is `y = −Q_h (v − wx)/(sx − u)`.
    #[serde(serialize_with = "ser_big")]
    pub q_value: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub t_out: BigInt,
    #[serde(serialize_with = "ser_big")]
    pub a_out: BigInt,
    pub z: Interval,
    pub y: Interval,
    pub checks: ReductionChecks,
    /// Convergents of `z` examined before this one passed.
    pub tried: usize,
}

fn cube_gt(lhs: &Interval, rhs: &Interval) -> Option<bool> {
    rhs.lt(&lhs.powi(3))
}

/// `y = −Q_h (v − wx)/(sx − u)`.
fn y_enclosure(xi: &Interval, q: &BigInt, u: &BigInt, v: &BigInt, s: &BigInt, w: &BigInt) -> Result<Interval> {
    let num = Interval::from_big(v).sub(&xi.scale(&Rational::from_integer(w.clone())));
    let den = xi.scale(&Rational::from_integer(s.clone())).sub(&Interval::from_big(u));
    Ok(num.div(&den)?.scale(&Rational::from_integer(-q)))
}

fn evaluate_checks(
    p: &IntPoly,
    forms: &ReductionForms,
    x: &RealAlgebraic,
    z: &RealAlgebraic,
    v: &BigInt,
    w: &BigInt,
) -> Result<(ReductionChecks, BigInt, BigInt, BigInt, BigInt, Interval)> {
    let rh = forms.r_at(v, w);
    let qh = forms.q_at(v, w);
    let (u, s) = us_for(p, v, w)?;
    let t = b(3) * &rh;
    let a = &qh * &qh;
    let t3 = t.abs().pow(3);
    let mut checks = ReductionChecks {
        separation: t3 > b(8) * &a,
        convergence: a.is_positive() && b(12) * &a <= t3,
        ..Default::default()
    };
    let z_rat = Interval::point(Rational::new(v.clone(), w.clone()));
    let q23 = Interval::from_big(&(&qh * &qh));
    let decided = interval::escalate(1 << 14, |bits| {
        let xi = x.enclose(bits + 2 * w.bits() as u32);
        let zi = z.enclose(bits + 2 * w.bits() as u32);
        let d = zi.sub(&xi).abs();
        let half = d.scale(&Rational::new(b(1), b(2)));
        let near = z_rat.sub(&zi).abs().lt(&half);
        let sxu = xi.scale(&Rational::from_integer(s.clone())).sub(&Interval::from_big(&u)).abs();
        if !sxu.is_positive() {
            return Ok(None);
        }
        // (d·|w|/(2|sx − u|))³ > Q_h² is the tail condition cleared of the 2/3 power
        let lhs = half.scale(&Rational::from_integer(w.abs())).div(&sxu)?;
        let tail = cube_gt(&lhs, &q23);
        let y = y_enclosure(&xi, &qh, &u, v, &s, w)?;
        let large = cube_gt(&y.abs(), &Interval::from_big(&a));
        Ok(match (near, tail, large) {
            (Some(n), Some(t), Some(l)) => Some((n, t, l, y)),
            _ => None,
        })
    })?;
    checks.near_z = decided.0;
    checks.tail = decided.1;
    checks.large_root = decided.2;
    Ok((checks, u, s, t, a, decided.3))
}

/// First convergent `v/w` of `z` passing every check, within `budget` convergents.
pub fn choose_vw(p: &IntPoly, x: &RealAlgebraic, budget: usize) -> Result<ReductionCertificate> {
    choose_vw_from(p, x, budget, 0)
}

/// As [`choose_vw`], skipping convergents with `|w|` below `min_w`.
pub fn choose_vw_from(p: &IntPoly, x: &RealAlgebraic, budget: usize, min_w: u64) -> Result<ReductionCertificate> {
    let forms = rq_polynomials(p)?;
    let z = z_of_root(p, x)?;
    let cf = realcf::expand_real_cf(&z, budget);
    let conv = cf.convergents();
    let mut last = ("none", BigInt::zero());
    for (tried, (v, w)) in conv.iter().enumerate() {
        if w.abs() < b(min_w as i64) {
            continue;
        }
        let (checks, u, s, t, a, y) = evaluate_checks(p, &forms, x, &z, v, w)?;
        if checks.all() {
            return Ok(ReductionCertificate {
                source: x.clone(),
                v: v.clone(),
                w: w.clone(),
                u,
                s,
                q_value: forms.q_at(v, w),
                t_out: t,
                a_out: a,
                z: z.enclose(128),
                y,
                checks,
                tried,
            });
        }
        last = (checks.first_failure(), w.clone());
    }
    Err(Error::Budget(format!(
        "no convergent of z passed within {} tries; largest w = {}, failing check: {}",
        conv.len(),
        last.1,
        last.0
    )))
}

/// `(β_i, a_i)` of the shape `y³ − ty² − a` at integer `(a, t)`.
pub fn family4_term(a: &BigInt, t: &BigInt, i: usize) -> (BigInt, BigInt) {
    if i == 0 {
        return (BigInt::one(), t.clone());
    }
    let k = (i / 4) as i64;
    let m = 2 * i as i64 + 1;
    let t2 = t * t;
    match i % 4 {
        1 => (b(3 * (12 * k + 1) * (3 * k + 1)) * a, b(m) * &t2),
        2 => (b(3 * (12 * k + 5) * (3 * k + 2)) * a, b(m) * t),
        3 => (b(3 * (12 * k + 7) * (6 * k + 5)) * a, b(2 * m) * &t2),
        _ => (b(3 * (12 * k - 1) * (6 * k + 1)) * a, b(m) * t),
    }
}

pub fn family4_convergents(a: &BigInt, t: &BigInt, n: usize) -> Vec<(BigInt, BigInt)> {
    let (mut p1, mut q1) = (BigInt::one(), BigInt::zero());
    let (mut p0, mut q0) = (t.clone(), BigInt::one());
    let mut out = vec![(p0.clone(), q0.clone())];
    for i in 1..=n {
        let (beta, ai) = family4_term(a, t, i);
        let p = &ai * &p0 + &beta * &p1;
        let q = &ai * &q0 + &beta * &q1;
        p1 = std::mem::replace(&mut p0, p.clone());
        q1 = std::mem::replace(&mut q0, q.clone());
        out.push((p, q));
    }
    out
}

/// Numeric GCF for `y³ − ty² − a` with terms `0..=n`.
pub fn family4_gcf(a: &BigInt, t: &BigInt, n: usize) -> Gcf {
    let (beta, av): (Vec<Rational>, Vec<Poly>) = (0..=n)
        .map(|i| {
            let (bt, ai) = family4_term(a, t, i);
            (Rational::from_integer(bt), Poly::constant(Rational::from_integer(ai)))
        })
        .unzip();
    Gcf::new(beta, av).expect("nonzero β")
}

/// `p(k) = (8k−3)(8k+1)t³ + 6(36k²−9k−2)a`.
fn pk(a: &BigInt, t: &BigInt, k: i64) -> BigInt {
    b((8 * k - 3) * (8 * k + 1)) * t.pow(3) + b(6 * (36 * k * k - 9 * k - 2)) * a
}

/// Checks the block closed forms of the reduced shape at block `k ≥ 1`.
pub fn family4_block_identities(a: &BigInt, t: &BigInt, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("block identities need k ≥ 1".into()));
    }
    let kk = k as i64;
    let c = family4_convergents(a, t, 4 * k + 4);
    let row = |i: usize| [c[i].0.clone(), c[i].1.clone()];
    let step = |n: usize| {
        let (bt, ai) = family4_term(a, t, n);
        Mat2::new(ai, bt, BigInt::one(), BigInt::zero())
    };
    let s = Mat2([row(4 * k), row(4 * k - 1)]);
    let block = (4 * k + 1..=4 * k + 4).rev().map(step).fold(Mat2::identity(), |m, x| m.mul(&x));
    let fail = |what: &str| Err(Error::CheckFailed(format!("reduced shape, block {k}: {what}")));
    if block.mul(&s) != Mat2([row(4 * k + 4), row(4 * k + 3)]) {
        return fail("S_{k+1} = A_k S_k");
    }
    let t2 = t * t;
    let t3 = t.pow(3);
    let a11 = b(2 * (8 * kk + 3) * (8 * kk + 5) * (8 * kk + 7) * (8 * kk + 9)) * t3.pow(2)
        + b(18 * (8 * kk + 5) * (8 * kk + 7) * (36 * kk * kk + 55 * kk + 16)) * a * &t3
        + b(9 * (12 * kk + 5) * (12 * kk + 11) * (3 * kk + 2) * (6 * kk + 7)) * a * a;
    let a12 = b(6 * (12 * kk + 1) * (3 * kk + 1) * (8 * kk + 7)) * a * t
        * (b((8 * kk + 5) * (8 * kk + 9)) * &t3 + b(6 * (36 * kk * kk + 63 * kk + 25)) * a);
    if &a11 != block.at(0, 0) || &a12 != block.at(0, 1) {
        return fail("block entries");
    }
    let inv = |n: usize| {
        let (bt, ai) = family4_term(a, t, n);
        Mat2::new(BigInt::zero(), -bt, b(-1), ai)
    };
    let bm = inv(4 * k - 2).mul(&inv(4 * k - 1)).mul(&inv(4 * k));
    let d = -b(27 * (12 * kk - 7) * (12 * kk - 5) * (12 * kk - 1) * (3 * kk - 1) * (6 * kk - 1) * (6 * kk + 1)) * a.pow(3);
    let b21 = -b(3 * (12 * kk - 5) * (6 * kk - 1)) * a - b(2 * (8 * kk - 3) * (8 * kk - 1)) * &t3;
    let b22 = b(2 * (8 * kk - 1)) * t * pk(a, t, kk);
    if bm.at(1, 0) != &b21 || bm.at(1, 1) != &b22 {
        return fail("bottom row of B_k");
    }
    let u = Mat2([row(4 * k - 3), row(4 * k - 4)]);
    let bs = bm.mul(&s);
    if bs.entries().zip(u.entries()).any(|(x, y)| x != &(y * &d)) {
        return fail("U_k = d⁻¹ B_k S_k");
    }
    let lhs = Rational::new(&d * &a12, b22.clone());
    let num = -b(81
        * (12 * kk + 1)
        * (12 * kk - 1)
        * (12 * kk - 5)
        * (12 * kk - 7)
        * (3 * kk - 1)
        * (3 * kk + 1)
        * (6 * kk - 1)
        * (6 * kk + 1)
        * (8 * kk + 7))
        * a.pow(4)
        * pk(a, t, kk + 1);
    if lhs != Rational::new(num, b(8 * kk - 1) * pk(a, t, kk)) {
        return fail("d·a_{k12}/b_{k22}");
    }
    let _ = t2;
    Ok(())
}

/// `q_{4k+4} > (8k+3)(8k+5)(8k+7)(8k+9)(t³+2a)² q_{4k}`.
pub fn block_growth_holds(a: &BigInt, t: &BigInt, k: usize) -> bool {
    let c = family4_convergents(a, t, 4 * k + 4);
    let kk = k as i64;
    let f = b((8 * kk + 3) * (8 * kk + 5) * (8 * kk + 7) * (8 * kk + 9)) * (t.pow(3) + b(2) * a).pow(2);
    c[4 * k + 4].1 > f * &c[4 * k].1
}

#[derive(Clone, Debug, Serialize)]
pub struct ReducedReport {
    pub blocks: usize,
    pub growth: Vec<bool>,
    pub identities_checked: usize,
    /// `gap_k < |y − p_{4k}/q_{4k}| < 2 gap_k` per block.
    pub bracket: Vec<bool>,
    /// Smallest `k₀` with the bracket holding for every computed `k > k₀`.
    pub empirical_k0: Option<usize>,
    pub final_error: Interval,
}

/// The GCF of the reduced root at `(t_out, a_out)` with `4k+4` terms and its convergence report.
pub fn reduced_cf(cert: &ReductionCertificate, k: usize) -> Result<(Gcf, ReducedReport)> {
    if !cert.checks.all() {
        return Err(Error::Hypothesis("certificate checks did not all pass".into()));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("need at least one block".into()));
    }
    let (a, t) = (&cert.a_out, &cert.t_out);
    let n = 4 * k + 4;
    let gcf = family4_gcf(a, t, n);
    let growth: Vec<bool> = (1..=k).map(|j| block_growth_holds(a, t, j)).collect();
    let ids = k.min(4);
    for j in 1..=ids {
        family4_block_identities(a, t, j)?;
    }
    let c = family4_convergents(a, t, n);
    let r = |i: usize| Rational::new(c[i].0.clone(), c[i].1.clone());
    let x = &cert.source;
    let (bracket, final_error) = interval::escalate(1 << 16, |bits| {
        let xi = x.enclose(bits);
        let y = y_enclosure(&xi, &cert.q_value, &cert.u, &cert.v, &cert.s, &cert.w)?;
        let mut out = Vec::new();
        for j in 0..k {
            let gap = Interval::point((r(4 * j) - r(4 * j + 4)).abs());
            let err = y.sub(&Interval::point(r(4 * j))).abs();
            match (gap.lt(&err), err.lt(&gap.scale(&int(2)))) {
                (Some(l), Some(h)) => out.push(l && h),
                _ => return Ok(None),
            }
        }
        let fin = y.sub(&Interval::point(r(n))).abs();
        if fin.lo().is_zero() && fin.hi() > &Rational::zero() && bits < 1 << 15 {
            return Ok(None);
        }
        Ok(Some((out, fin)))
    })?;
    let empirical_k0 = (0..=k).find(|&k0| bracket.iter().skip(k0).all(|&b| b));
    if growth.iter().any(|g| !g) {
        return Err(Error::CheckFailed("block growth inequality fails".into()));
    }
    Ok((
        gcf,
        ReducedReport { blocks: k, growth, identities_checked: ids, bracket, empirical_k0, final_error },
    ))
}

/// GCF for the original root: `x = (−u·y + vQ_h)/(−s·y + wQ_h)` applied to the reduced CF.
pub fn original_cf(cert: &ReductionCertificate, gcf_y: &Gcf) -> Result<Gcf> {
    let q = &cert.q_value;
    let r = |x: BigInt| Rational::from_integer(x);
    cfrac::mobius_front(gcf_y, &r(-&cert.u), &r(&cert.v * q), &r(-&cert.s), &r(&cert.w * q))
}

#[derive(Clone, Debug, Serialize)]
pub struct RoundTrip {
    pub convergents: usize,
    /// `|value_n − x|` per convergent index.
    pub errors: Vec<Interval>,
    pub final_below: bool,
    /// Errors decrease strictly from index `burn_in` on.
    pub monotone_after: Option<usize>,
}

/// Compares the values of `cf` with the certified root `x`; `tol` bounds the last error.
pub fn round_trip(cf: &Gcf, x: &RealAlgebraic, n: usize, tol: &Rational) -> Result<RoundTrip> {
    let vals = cfrac::evaluate_at(cf, &Rational::zero(), n)?;
    let floor = 2 * tol.denom().bits() as u32 + 64;
    let errors = interval::escalate(1 << 16, |bits| {
        let xi = x.enclose(bits.max(floor));
        let errs: Vec<Interval> = vals.iter().map(|v| xi.sub(&Interval::point(v.clone())).abs()).collect();
        Ok(errs.iter().all(Interval::is_positive).then_some(errs))
    })?;
    let final_below = errors[n].lt(&Interval::point(tol.clone())) == Some(true);
    let decreasing = |i: usize| errors[i + 1].lt(&errors[i]) == Some(true);
    let monotone_after = (0..n).find(|&s| (s..n).all(decreasing));
    Ok(RoundTrip { convergents: n, errors, final_below, monotone_after })
}

/// Default tolerance `10⁻³⁰`.
pub fn default_tolerance() -> Rational {
    Rational::new(BigInt::one(), b(10).pow(30))
}

/// First `n` simple-CF quotients of the reduced root and of the original root.
pub fn quotient_prefixes(cert: &ReductionCertificate, n: usize) -> Result<(Vec<String>, Vec<String>)> {
    let x = &cert.source;
    let orig = realcf::expand_real_cf(x, n);
    let poly = IntPoly::new(vec![-&cert.a_out, BigInt::zero(), -&cert.t_out, BigInt::one()])?;
    let y_root = {
        let roots = realcf::isolate_real_roots(&poly)?;
        let y = &cert.y;
        roots
            .into_iter()
            .find(|r| y.overlaps(&Interval::new(r.lo().clone(), r.hi().clone())))
            .ok_or_else(|| Error::CheckFailed("reduced root not isolated".into()))?
    };
    let red = realcf::expand_real_cf(&y_root, n);
    let s = |v: &[BigInt]| v.iter().map(|q| q.to_string()).collect();
    Ok((s(&red.quotients), s(&orig.quotients)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(desc: &str) -> IntPoly {
        IntPoly::parse_desc(desc).unwrap()
    }

    #[test]
    fn forms_and_annihilation() {
        let p = poly("1,1,1,-1");
        let f = rq_polynomials(&p).unwrap();
        assert_eq!(f.r, [b(2), b(-10), b(-4)]);
        for (v, w) in [(1, 2), (3, 7), (-5, 11)] {
            let (v, w) = (b(v), b(w));
            let (u, s) = us_for(&p, &v, &w).unwrap();
            let c = transformed_cubic(&p, &u, &v, &s, &w).unwrap();
            let ph = homogeneous_at(&p, &v, &w);
            assert!(c[1].is_zero());
            assert_eq!(c[0], ph);
            assert_eq!(c[2], b(3) * &ph * f.r_at(&v, &w));
            assert_eq!(c[3], &ph * f.q_at(&v, &w));
        }
        let g = b(2);
        let deg = IntPoly::new(vec![b(27), b(27) * &g, b(9) * &g * &g, g.pow(3)]).unwrap();
        assert!(rq_polynomials(&deg).is_err());
    }

    #[test]
    fn q_shares_real_root_count() {
        for d in ["1,1,1,-1", "1,0,-3,1", "2,0,2,-1"] {
            let p = poly(d);
            let q = rq_polynomials(&p).unwrap().q_poly().unwrap();
            assert_eq!(
                realcf::isolate_real_roots(&p).unwrap().len(),
                realcf::isolate_real_roots(&q).unwrap().len(),
                "{d}"
            );
        }
        let p = poly("1,0,-3,1");
        let zs: Vec<_> = realcf::isolate_real_roots(&p)
            .unwrap()
            .iter()
            .map(|x| z_of_root(&p, x).unwrap().enclose(64))
            .collect();
        assert!(!zs[0].overlaps(&zs[1]) && !zs[1].overlaps(&zs[2]) && !zs[0].overlaps(&zs[2]));
    }

    #[test]
    fn reduction_round_trip() {
        let p = poly("1,1,1,-1");
        let x = realcf::isolate_in(&p, &int(0), &int(1)).unwrap().remove(0);
        let cert = choose_vw(&p, &x, 40).unwrap();
        assert!(cert.a_out.is_positive());
        let (gcf, rep) = reduced_cf(&cert, 4).unwrap();
        assert!(rep.growth.iter().all(|&g| g));
        let orig = original_cf(&cert, &gcf).unwrap();
        let rt = round_trip(&orig, &x, 12, &Rational::new(b(1), b(10).pow(10))).unwrap();
        assert!(rt.errors[12].lt(&rt.errors[4]) == Some(true));
    }
}
