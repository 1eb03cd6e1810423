//! Real algebraic numbers given by an integer polynomial and an isolating interval, their
//! exact simple continued fractions, and the large-partial-quotient scanner.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::approx::conjecture_constants;
use crate::error::{Error, Result};
use crate::interval::{self, escalate, Interval};
use crate::par;
use crate::qexact::rational::{self, int, Rational};
use crate::qexact::{IntPoly, Poly};

/// A real root of `minpoly`, the only one in the open interval `(lo, hi)`.
///
/// `lo == hi` marks an exactly known rational root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealAlgebraic {
    #[serde(serialize_with = "ser_poly")]
    minpoly: IntPoly,
    #[serde(serialize_with = "rational::ser_rational")]
    lo: Rational,
    #[serde(serialize_with = "rational::ser_rational")]
    hi: Rational,
}

fn ser_poly<S: serde::Serializer>(p: &IntPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_desc_string())
}

/// Sturm chain of a squarefree polynomial.
pub fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let (_, r) = seq[n - 2].divmod(&seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        seq.push(-r);
    }
    seq
}

fn sign(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn variations_at(seq: &[Poly], x: &Rational) -> usize {
    variations(seq.iter().map(|q| sign(&q.eval(x))))
}

/// Number of distinct real roots in `(lo, hi]`.
pub fn count_roots(seq: &[Poly], lo: &Rational, hi: &Rational) -> usize {
    variations_at(seq, lo) - variations_at(seq, hi)
}

fn is_squarefree(p: &Poly) -> bool {
    Poly::gcd(p, &p.derivative()).deg() == 0
}

/// Upper bound on the modulus of every root (Cauchy).
fn root_bound(p: &IntPoly) -> Rational {
    let lead = Rational::from_integer(p.leading().abs());
    let m = p.coeffs()[..p.degree()].iter().map(|c| Rational::from_integer(c.abs())).max().unwrap_or_default();
    int(1) + m / lead
}

/// Isolating intervals for every real root, sorted increasingly.
pub fn isolate_real_roots(p: &IntPoly) -> Result<Vec<RealAlgebraic>> {
    let b = root_bound(p);
    isolate_in(p, &-&b, &b)
}

/// Isolating intervals for the real roots in `(lo, hi)`; `lo` and `hi` must not be roots.
pub fn isolate_in(p: &IntPoly, lo: &Rational, hi: &Rational) -> Result<Vec<RealAlgebraic>> {
    let poly = p.to_poly();
    if p.degree() == 0 {
        return Ok(Vec::new());
    }
    if !is_squarefree(&poly) {
        return Err(Error::InvalidArgument(format!("{p} is not squarefree")));
    }
    if p.sign_at(lo) == 0 || p.sign_at(hi) == 0 {
        return Err(Error::InvalidArgument("interval endpoint is a root".into()));
    }
    let seq = sturm_sequence(&poly);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let n = count_roots(&seq, &a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(RealAlgebraic { minpoly: p.clone(), lo: a, hi: b });
            continue;
        }
        let m = (&a + &b) / int(2);
        if p.sign_at(&m) == 0 {
            out.push(RealAlgebraic { minpoly: p.clone(), lo: m.clone(), hi: m.clone() });
            // step off the rational root on both sides
            let w = (&b - &a) / int(1 << 10);
            let mut d = w;
            while p.sign_at(&(&m - &d)) == 0 || p.sign_at(&(&m + &d)) == 0 || count_roots(&seq, &(&m - &d), &(&m + &d)) != 1 {
                d /= int(2);
            }
            stack.push((a, &m - &d));
            stack.push((&m + &d, b));
            continue;
        }
        stack.push((m.clone(), b));
        stack.push((a, m));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

impl RealAlgebraic {
    /// Validates that `(lo, hi)` isolates exactly one root of `p`.
    pub fn new(p: IntPoly, lo: Rational, hi: Rational) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidArgument("empty isolating interval".into()));
        }
        let poly = p.to_poly();
        if !is_squarefree(&poly) {
            return Err(Error::InvalidArgument(format!("{p} is not squarefree")));
        }
        if p.sign_at(&lo) == 0 || p.sign_at(&hi) == 0 {
            return Err(Error::InvalidArgument("interval endpoint is a root".into()));
        }
        let seq = sturm_sequence(&poly);
        let n = count_roots(&seq, &lo, &hi);
        if n != 1 {
            return Err(Error::InvalidArgument(format!("interval holds {n} roots")));
        }
        Ok(RealAlgebraic { minpoly: p, lo, hi })
    }

    /// The `index`-th real root in increasing order.
    pub fn root(p: &IntPoly, index: usize) -> Result<Self> {
        let roots = isolate_real_roots(p)?;
        let n = roots.len();
        roots
            .into_iter()
            .nth(index)
            .ok_or_else(|| Error::InvalidArgument(format!("root index {index} out of range ({n} real roots)")))
    }

    pub fn minpoly(&self) -> &IntPoly {
        &self.minpoly
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Irreducible over Q, checked for degree at most three.
    pub fn is_irreducible(&self) -> bool {
        self.minpoly.degree() <= 3 && (self.minpoly.degree() == 1 || !self.minpoly.has_rational_root())
    }

    /// Enclosure of width at most `2^-bits`, by exact bisection.
    pub fn enclose(&self, bits: u32) -> Interval {
        if self.is_exact() {
            return Interval::point(self.lo.clone());
        }
        let eps = Rational::new(BigInt::one(), BigInt::one() << bits as usize);
        let s_lo = self.minpoly.sign_at(&self.lo);
        let (mut a, mut b) = (self.lo.clone(), self.hi.clone());
        // snap to dyadic endpoints first so the bisection stays cheap
        while &b - &a > eps {
            let m = interval::round_down(&((&a + &b) / int(2)), bits + 8);
            let m = if m <= a || m >= b { (&a + &b) / int(2) } else { m };
            match self.minpoly.sign_at(&m) {
                0 => return Interval::point(m),
                s if s == s_lo => a = m,
                _ => b = m,
            }
        }
        Interval::new(a, b)
    }

    /// Exact sign of `self − r`.
    pub fn cmp_rational(&self, r: &Rational) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        if self.is_exact() {
            return self.lo.cmp(r);
        }
        if r <= &self.lo {
            return Greater;
        }
        if r >= &self.hi {
            return Less;
        }
        let s = self.minpoly.sign_at(r);
        if s == 0 {
            Equal
        } else if s == self.minpoly.sign_at(&self.lo) {
            Greater
        } else {
            Less
        }
    }
}

/// Exact simple continued fraction `[a₀; a₁, …]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CFExpansion {
    #[serde(serialize_with = "ser_ints")]
    pub quotients: Vec<BigInt>,
    pub source: RealAlgebraic,
    /// The number turned out rational and the expansion stopped.
    pub terminated: bool,
}

fn ser_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

impl CFExpansion {
    /// Convergents `(p_n, q_n)` for every computed quotient.
    pub fn convergents(&self) -> Vec<(BigInt, BigInt)> {
        simple_convergents(&self.quotients)
    }

    pub fn len(&self) -> usize {
        self.quotients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.quotients.is_empty()
    }
}

pub fn simple_convergents(a: &[BigInt]) -> Vec<(BigInt, BigInt)> {
    let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
    let (mut p1, mut q1) = (BigInt::zero(), BigInt::one());
    let mut out = Vec::with_capacity(a.len());
    for ai in a {
        let p = ai * &p0 + &p1;
        let q = ai * &q0 + &q1;
        p1 = std::mem::replace(&mut p0, p.clone());
        q1 = std::mem::replace(&mut q0, q.clone());
        out.push((p, q));
    }
    out
}

/// `P(z + a)` for integer `a`.
fn taylor_shift(c: &[BigInt], a: &BigInt) -> Vec<BigInt> {
    let mut c = c.to_vec();
    let n = c.len();
    for i in 0..n {
        for j in (i..n - 1).rev() {
            let t = &c[j + 1] * a;
            c[j] += t;
        }
    }
    c
}

fn sign_big(c: &[BigInt], x: &Rational) -> i32 {
    let (n, d) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut dpow = BigInt::one();
    for ci in c.iter().rev() {
        acc = acc * n + ci * &dpow;
        dpow *= d;
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

fn sign_int(c: &[BigInt], x: &BigInt) -> i32 {
    let v = c.iter().rev().fold(BigInt::zero(), |acc, ci| acc * x + ci);
    match v.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// First `n` partial quotients, each certified by exact sign tests of the transformed polynomial.
pub fn expand_real_cf(x: &RealAlgebraic, n: usize) -> CFExpansion {
    let mut out = Vec::with_capacity(n);
    if x.is_exact() {
        return rational_cf(x, n);
    }
    let mut p: Vec<BigInt> = x.minpoly.coeffs().to_vec();
    let mut lo = x.lo.clone();
    let mut hi: Option<Rational> = Some(x.hi.clone());
    let mut terminated = false;
    while out.len() < n {
        let s_lo = sign_big(&p, &lo);
        // true when the root exceeds m (or equals it, reported separately)
        let above = |m: &BigInt| -> (bool, bool) {
            let mr = Rational::from_integer(m.clone());
            if mr <= lo {
                return (true, false);
            }
            if hi.as_ref().is_some_and(|h| &mr >= h) {
                return (false, false);
            }
            let s = sign_int(&p, m);
            (s == s_lo || s == 0, s == 0)
        };
        let mut base = lo.floor().to_integer();
        let top = match &hi {
            Some(h) => h.ceil().to_integer(),
            None => {
                let mut step = BigInt::one();
                loop {
                    let m = &base + &step;
                    if above(&m).0 {
                        base = m;
                        step *= 2;
                    } else {
                        break m;
                    }
                }
            }
        };
        // invariant: above(base), !above(top)
        let mut top = top;
        while &top - &base > BigInt::one() {
            let m: BigInt = (&base + &top).div_floor(&BigInt::from(2));
            if above(&m).0 {
                base = m;
            } else {
                top = m;
            }
        }
        let a = base;
        let exact = above(&a).1;
        out.push(a.clone());
        if exact {
            terminated = true;
            break;
        }
        let ar = Rational::from_integer(a.clone());
        let a1 = &ar + int(1);
        let new_lo_x = lo.clone().max(ar.clone());
        let new_hi_x = match &hi {
            Some(h) => h.clone().min(a1),
            None => a1,
        };
        let shifted = taylor_shift(&p, &a);
        let mut q: Vec<BigInt> = shifted.into_iter().rev().collect();
        let g = q.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_one() && !g.is_zero() {
            for c in &mut q {
                *c /= &g;
            }
        }
        while q.last().is_some_and(Zero::is_zero) {
            q.pop();
        }
        p = q;
        lo = (&new_hi_x - &ar).recip();
        let d = &new_lo_x - &ar;
        hi = if d.is_zero() { None } else { Some(d.recip()) };
    }
    CFExpansion { quotients: out, source: x.clone(), terminated }
}

fn rational_cf(x: &RealAlgebraic, n: usize) -> CFExpansion {
    let mut r = x.lo.clone();
    let mut out = Vec::new();
    let mut terminated = false;
    while out.len() < n {
        let a = r.floor();
        out.push(a.to_integer());
        let f = &r - &a;
        if f.is_zero() {
            terminated = true;
            break;
        }
        r = f.recip();
    }
    CFExpansion { quotients: out, source: x.clone(), terminated }
}

/// Naive height: the largest absolute coefficient.
pub fn height(p: &IntPoly) -> BigInt {
    p.height()
}

/// One large partial quotient.
#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub poly: String,
    pub height: u32,
    pub root_interval: Interval,
    pub n: usize,
    pub a_n: String,
    /// `a_n / (n² H^τ)`.
    pub c: Interval,
    pub tau: Interval,
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    /// Height bound to depth; a polynomial of height `h` uses the first entry with key `≥ h`.
    pub schedule: BTreeMap<u32, usize>,
    pub c_threshold: Rational,
    /// Quotients compared when filtering equivalent numbers; `0` disables the filter.
    pub tail_window: usize,
}

impl ScanConfig {
    pub fn new(hmax: u32, depth: usize, c_threshold: Rational) -> Self {
        ScanConfig { schedule: BTreeMap::from([(hmax, depth)]), c_threshold, tail_window: 30 }
    }

    pub fn hmax(&self) -> u32 {
        self.schedule.keys().next_back().copied().unwrap_or(0)
    }

    fn depth_for(&self, h: u32) -> Option<usize> {
        self.schedule.range(h..).next().map(|(_, &d)| d)
    }
}

/// Integer cubics of height `≤ hmax` with positive leading coefficient, content one, no rational
/// root and opposite signs at 0 and 1.
pub fn scan_candidates(hmax: u32) -> Vec<IntPoly> {
    let h = hmax as i64;
    let mut out = Vec::new();
    for b3 in 1..=h {
        for b2 in -h..=h {
            for b1 in -h..=h {
                for b0 in -h..=h {
                    let c = [b0, b1, b2, b3];
                    let g = c.iter().fold(0i64, |acc, &x| acc.gcd(&x));
                    if g != 1 {
                        continue;
                    }
                    let v1: i64 = c.iter().sum();
                    if b0 == 0 || v1 == 0 || (b0 > 0) == (v1 > 0) {
                        continue;
                    }
                    let p = IntPoly::from_i64(&c).expect("nonzero");
                    if p.has_rational_root() {
                        continue;
                    }
                    out.push(p);
                }
            }
        }
    }
    out.sort_by_key(|p| (height_u32(p), p.to_desc_string()));
    out
}

fn height_u32(p: &IntPoly) -> u32 {
    p.height().to_u32().unwrap_or(u32::MAX)
}

/// Largest root in `(0, 1)`.
pub fn largest_root_in_unit(p: &IntPoly) -> Result<Option<RealAlgebraic>> {
    Ok(isolate_in(p, &int(0), &int(1))?.into_iter().next_back())
}

struct Scanned {
    poly: IntPoly,
    h: u32,
    quotients: Vec<BigInt>,
    findings: Vec<Finding>,
}

/// `a / (n² H^τ)` as an interval.
pub fn quotient_constant(a: &BigInt, n: usize, h: u32, bits: u32) -> Result<Interval> {
    let (tau, _) = conjecture_constants(&int(1), bits)?;
    let hp = if h == 1 {
        Interval::int(1)
    } else {
        interval::pow(&Interval::int(h as i64), &tau, bits)?
    };
    let den = hp.scale(&int((n * n) as i64));
    Interval::from_big(a).div(&den)
}

fn scan_one(p: IntPoly, cfg: &ScanConfig) -> Result<Option<Scanned>> {
    let h = height_u32(&p);
    let Some(depth) = cfg.depth_for(h) else { return Ok(None) };
    let Some(x) = largest_root_in_unit(&p)? else { return Ok(None) };
    let cf = expand_real_cf(&x, depth + 1);
    let (tau, _) = conjecture_constants(&int(1), 128)?;
    let hf = (h as f64).powf(tau.to_f64());
    let thr = interval::rat_to_f64(&cfg.c_threshold);
    let root = x.enclose(64);
    let mut findings = Vec::new();
    for (n, a) in cf.quotients.iter().enumerate().skip(1) {
        let af = a.to_f64().unwrap_or(f64::INFINITY);
        // prefilter with a wide margin; the decision below is certified
        if af < 0.5 * thr * (n * n) as f64 * hf {
            continue;
        }
        let c = escalate(4096, |bits| {
            let c = quotient_constant(a, n, h, bits)?;
            Ok((c.lo() >= &cfg.c_threshold || c.hi() < &cfg.c_threshold).then_some(c))
        })?;
        if c.lo() >= &cfg.c_threshold {
            findings.push(Finding {
                poly: p.to_desc_string(),
                height: h,
                root_interval: root.clone(),
                n,
                a_n: a.to_string(),
                c,
                tau: tau.clone(),
            });
        }
    }
    Ok(Some(Scanned { poly: p, h, quotients: cf.quotients, findings }))
}

fn contains_window(hay: &[BigInt], needle: &[BigInt]) -> bool {
    !needle.is_empty() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Expands the largest root in `(0, 1)` of every candidate and reports the large quotients.
///
/// Numbers whose expansions share a tail window are treated as equivalent and only the one with
/// the largest constant is kept; the filter is heuristic.
pub fn conjecture_a_scan(cfg: &ScanConfig) -> Result<Vec<Finding>> {
    let cands = scan_candidates(cfg.hmax());
    let scanned: Vec<Result<Option<Scanned>>> = par::map(cands, |p| scan_one(p, cfg));
    let mut hits = Vec::new();
    for s in scanned {
        if let Some(s) = s? {
            if !s.findings.is_empty() {
                hits.push(s);
            }
        }
    }
    if cfg.tail_window > 0 {
        hits = filter_equivalent(hits, cfg.tail_window);
    }
    let mut out: Vec<Finding> = hits.into_iter().flat_map(|s| s.findings).collect();
    out.sort_by(|a, b| (a.height, &a.poly, a.n).cmp(&(b.height, &b.poly, b.n)));
    Ok(out)
}

fn best_c(s: &Scanned) -> Rational {
    s.findings.iter().map(|f| f.c.lo().clone()).max().unwrap_or_default()
}

fn filter_equivalent(hits: Vec<Scanned>, window: usize) -> Vec<Scanned> {
    let n = hits.len();
    let mut group: Vec<usize> = (0..n).collect();
    fn root(g: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while g[i] != i {
            g[i] = g[g[i]];
            i = g[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            let w = window.min(hits[i].quotients.len() / 2).min(hits[j].quotients.len() / 2);
            if w == 0 {
                continue;
            }
            let ti = &hits[i].quotients[hits[i].quotients.len() - w..];
            let tj = &hits[j].quotients[hits[j].quotients.len() - w..];
            if contains_window(&hits[j].quotients, ti) || contains_window(&hits[i].quotients, tj) {
                let (a, b) = (root(&mut group, i), root(&mut group, j));
                group[b] = a;
            }
        }
    }
    let mut best: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..n {
        let r = root(&mut group, i);
        match best.get(&r) {
            Some(&k) => {
                let key_i = (best_c(&hits[i]), std::cmp::Reverse((hits[i].h, hits[i].poly.to_desc_string())));
                let key_k = (best_c(&hits[k]), std::cmp::Reverse((hits[k].h, hits[k].poly.to_desc_string())));
                if key_i > key_k {
                    best.insert(r, i);
                }
            }
            None => {
                best.insert(r, i);
            }
        }
    }
    let keep: std::collections::BTreeSet<usize> = best.into_values().collect();
    hits.into_iter().enumerate().filter(|(i, _)| keep.contains(i)).map(|(_, s)| s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::rational::rat;

    fn ip(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn isolation_counts() {
        let r = isolate_real_roots(&ip(&[-1, 1, 1, 1])).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].lo() >= &int(-4));
        assert_eq!(r[0].cmp_rational(&int(0)), std::cmp::Ordering::Greater);
        assert_eq!(r[0].cmp_rational(&int(1)), std::cmp::Ordering::Less);
        assert_eq!(isolate_real_roots(&ip(&[1, -3, -2, 1])).unwrap().len(), 3);
        let sq = isolate_real_roots(&ip(&[-1, 0, 1])).unwrap();
        assert_eq!(sq.len(), 2);
        assert_eq!(sq[0].cmp_rational(&int(-1)), std::cmp::Ordering::Equal);
        assert!(isolate_real_roots(&ip(&[1, 2, 1])).is_err());
    }

    #[test]
    fn small_height_prefixes() {
        let x = largest_root_in_unit(&ip(&[-1, 1, 1, 1])).unwrap().unwrap();
        let cf = expand_real_cf(&x, 7);
        assert_eq!(cf.quotients, ints(&[0, 1, 1, 5, 4, 2, 305]));
        let y = largest_root_in_unit(&ip(&[-1, 2, 0, 2])).unwrap().unwrap();
        let cf = expand_real_cf(&y, 19);
        assert_eq!(cf.quotients[12], BigInt::from(456));
        assert_eq!(cf.quotients[18], BigInt::from(29866));
        let z = largest_root_in_unit(&ip(&[-1, 2, 2, 2])).unwrap().unwrap();
        assert_eq!(expand_real_cf(&z, 22).quotients[21], BigInt::from(87431));
    }

    #[test]
    fn quadratic_and_rational() {
        let s = RealAlgebraic::new(ip(&[-2, 0, 1]), int(1), int(2)).unwrap();
        let cf = expand_real_cf(&s, 6);
        assert_eq!(cf.quotients, ints(&[1, 2, 2, 2, 2, 2]));
        let r = RealAlgebraic::new(ip(&[-7, 3]), int(2), int(3)).unwrap();
        let cf = expand_real_cf(&r, 10);
        assert!(cf.terminated);
        assert_eq!(cf.quotients, ints(&[2, 3]));
    }

    #[test]
    fn enclosure_and_reconstruction() {
        let x = largest_root_in_unit(&ip(&[-1, 1, 1, 1])).unwrap().unwrap();
        let e = x.enclose(200);
        assert!(e.width() <= Rational::new(BigInt::one(), BigInt::one() << 200));
        let cf = expand_real_cf(&x, 51);
        for (n, (p, q)) in cf.convergents().into_iter().enumerate() {
            if n == 10 || n == 50 {
                let err = e.sub(&Interval::point(Rational::new(p, q.clone()))).abs();
                let bound = Rational::new(BigInt::one(), &q * &q);
                assert!(err.hi() < &bound);
            }
        }
        assert_eq!(expand_real_cf(&x, 40).quotients, cf.quotients[..40].to_vec());
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let c = ints(&[-1, 1, 1, 1]);
        let s = taylor_shift(&c, &BigInt::from(3));
        let p = ip(&[-1, 1, 1, 1]);
        let q = IntPoly::new(s).unwrap();
        for z in -3..3 {
            assert_eq!(q.eval(&int(z)), p.eval(&int(z + 3)));
        }
        let _ = rat(1, 2);
    }

    #[test]
    fn heights() {
        assert_eq!(height(&ip(&[-1, 1, 1, 1])), BigInt::from(1));
        assert_eq!(height(&ip(&[-1, 2, 2, 2])), BigInt::from(2));
        assert_eq!(height(&ip(&[-15, 24, 42, 44])), BigInt::from(44));
    }
}
