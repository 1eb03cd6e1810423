//! Generalized continued fractions `(1/β₀)(a₀ + β₁/(a₁ + β₂/(a₂ + …)))` over Q[t].

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qexact::rational::{self, Rational};
use crate::qexact::{LaurentTrunc, Poly};

/// Paired sequences `β_i ∈ Q` and `a_i ∈ Q[t]`, index 0 included.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gcf {
    #[serde(serialize_with = "rational::ser_rationals", deserialize_with = "rational::de_rationals")]
    pub beta: Vec<Rational>,
    pub a: Vec<Poly>,
    /// Every `a_i` with `i ≥ 1` has degree at least one.
    pub canonical: bool,
}

/// On-demand producer of `(β_i, a_i)`.
pub trait TermSource {
    fn term(&self, i: usize) -> (Rational, Poly);
}

impl<F: Fn(usize) -> (Rational, Poly)> TermSource for F {
    fn term(&self, i: usize) -> (Rational, Poly) {
        self(i)
    }
}

/// `p_n`, `q_n` of the three-term recurrences; the value of the convergent is `p/(β₀ q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConvergentPair {
    pub p: Poly,
    pub q: Poly,
    pub index: usize,
}

impl Gcf {
    pub fn new(beta: Vec<Rational>, a: Vec<Poly>) -> Result<Self> {
        if beta.len() != a.len() {
            return Err(Error::InvalidArgument("beta and a differ in length".into()));
        }
        if beta.is_empty() {
            return Err(Error::InvalidArgument("empty continued fraction".into()));
        }
        if beta.iter().any(Zero::is_zero) {
            return Err(Error::InvalidArgument("zero beta".into()));
        }
        let canonical = a.iter().skip(1).all(|p| p.deg() >= 1);
        Ok(Gcf { beta, a, canonical })
    }

    /// Materializes indices `0..=n` of a term source.
    pub fn from_source(src: &impl TermSource, n: usize) -> Result<Self> {
        let (beta, a) = (0..=n).map(|i| src.term(i)).unzip();
        Self::new(beta, a)
    }

    /// Number of stored terms (`a₀` included).
    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn prefix(&self, n: usize) -> Gcf {
        let n = n.min(self.len());
        let mut g = Gcf { beta: self.beta[..n].to_vec(), a: self.a[..n].to_vec(), canonical: true };
        g.canonical = g.a.iter().skip(1).all(|p| p.deg() >= 1);
        g
    }

    /// Specializes `t = t0`, keeping the same recurrences over Q.
    pub fn at(&self, t0: &Rational) -> Gcf {
        Gcf {
            beta: self.beta.clone(),
            a: self.a.iter().map(|p| Poly::constant(p.eval(t0))).collect(),
            canonical: false,
        }
    }
}

/// Streams convergents of any term sequence.
pub struct Convergents<I> {
    terms: I,
    prev: Option<(Poly, Poly)>,
    cur: Option<(Poly, Poly)>,
    index: usize,
}

impl<I: Iterator<Item = (Rational, Poly)>> Convergents<I> {
    pub fn new(terms: I) -> Self {
        Convergents { terms, prev: None, cur: None, index: 0 }
    }
}

impl<I: Iterator<Item = (Rational, Poly)>> Iterator for Convergents<I> {
    type Item = ConvergentPair;
    fn next(&mut self) -> Option<ConvergentPair> {
        let (b, a) = self.terms.next()?;
        let next = match (&self.prev, &self.cur) {
            (_, None) => (a, Poly::one()),
            (None, Some((p0, _))) => (&(&a * p0) + &Poly::constant(b), a),
            (Some((pp, qp)), Some((pc, qc))) => (
                &(&a * pc) + &pp.scale(&b),
                &(&a * qc) + &qp.scale(&b),
            ),
        };
        self.prev = self.cur.take();
        self.cur = Some(next.clone());
        let out = ConvergentPair { p: next.0, q: next.1, index: self.index };
        self.index += 1;
        Some(out)
    }
}

/// `p₀/q₀ … p_k/q_k`.
pub fn convergents(cf: &Gcf, k: usize) -> Result<Vec<ConvergentPair>> {
    if k >= cf.len() {
        return Err(Error::InvalidArgument(format!("need {} terms, have {}", k + 1, cf.len())));
    }
    Ok(Convergents::new(cf.beta.iter().cloned().zip(cf.a.iter().cloned())).take(k + 1).collect())
}

/// Numerator and denominator of the convergent value `p/(β₀ q)`.
pub fn value_parts(c: &ConvergentPair, beta0: &Rational) -> (Poly, Poly) {
    (c.p.clone(), c.q.scale(beta0))
}

/// Reduced form `(num, den)` with monic-normalized denominator.
pub fn reduced(num: &Poly, den: &Poly) -> (Poly, Poly) {
    let g = Poly::gcd(num, den);
    let (n, d) = if g.is_zero() || g.deg() == 0 {
        (num.clone(), den.clone())
    } else {
        (num.div_exact(&g).unwrap().unwrap(), den.div_exact(&g).unwrap().unwrap())
    };
    let s = d.leading().recip();
    (n.scale(&s), d.scale(&s))
}

/// Equality of two rational functions given as numerator/denominator pairs.
pub fn same_ratio(n1: &Poly, d1: &Poly, n2: &Poly, d2: &Poly) -> bool {
    (n1 * d2) == (n2 * d1)
}

/// First index `j ≤ k` where the two fractions' convergent values differ.
pub fn first_convergent_mismatch(x: &Gcf, y: &Gcf, k: usize) -> Result<Option<usize>> {
    let cx = convergents(x, k)?;
    let cy = convergents(y, k)?;
    for (a, b) in cx.iter().zip(&cy) {
        let (n1, d1) = value_parts(a, &x.beta[0]);
        let (n2, d2) = value_parts(b, &y.beta[0]);
        if !same_ratio(&n1, &d1, &n2, &d2) {
            return Ok(Some(a.index));
        }
    }
    Ok(None)
}

/// Result of a Euclid-style expansion; `valid` counts the trustworthy terms.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub gcf: Option<Gcf>,
    pub valid: usize,
    /// The remainder was exactly zero: the series is a rational function.
    pub terminated: bool,
    /// Precision ran out before the requested length.
    pub exhausted: bool,
}

/// Canonical `β` for a raw partial quotient: clears denominators, leading coefficient positive.
pub fn canonical_beta(raw: &Poly) -> Rational {
    if raw.is_zero() {
        return Rational::one();
    }
    let l = Rational::from_integer(rational::lcm_denominators(raw.coeffs()));
    if raw.leading().is_negative() {
        -l
    } else {
        l
    }
}

/// Expands `f` into at most `n + 1` terms `(β_i, a_i)`, `i = 0..=n`.
pub fn expand_laurent(f: &LaurentTrunc, n: usize) -> Expansion {
    let mut beta = Vec::new();
    let mut a = Vec::new();
    let mut cur = f.clone();
    let mut terminated = false;
    let mut exhausted = false;
    for k in 0..=n {
        let raw = match cur.poly_part() {
            Ok(p) => p,
            Err(_) => {
                exhausted = true;
                break;
            }
        };
        if k > 0 && raw.deg() < 1 {
            exhausted = true;
            break;
        }
        let b = canonical_beta(&raw);
        let ak = raw.scale(&b);
        let rem = cur.scale(&b).sub(&LaurentTrunc::from_poly(&ak));
        beta.push(b);
        a.push(ak);
        if k == n {
            break;
        }
        if rem.is_exact_zero() {
            terminated = true;
            break;
        }
        match rem.invert() {
            Ok(next) => cur = next,
            Err(_) => {
                exhausted = true;
                break;
            }
        }
    }
    let valid = a.len();
    let gcf = (valid > 0).then(|| Gcf::new(beta, a).expect("nonzero betas"));
    Expansion { gcf, valid, terminated, exhausted }
}

/// `φ_{a,β}(f) = 1/(β f − a)`.
pub fn phi(f: &LaurentTrunc, a: &Poly, beta: &Rational) -> Result<LaurentTrunc> {
    f.scale(beta).sub(&LaurentTrunc::from_poly(a)).invert()
}

/// The full quotient `f_k` obtained by iterating `φ` with the terms of `cf`.
pub fn full_quotient(cf: &Gcf, k: usize, f: &LaurentTrunc) -> Result<LaurentTrunc> {
    if k > cf.len() {
        return Err(Error::InvalidArgument(format!("full quotient {k} needs {k} terms")));
    }
    let mut cur = f.clone();
    for j in 0..k {
        cur = phi(&cur, &cf.a[j], &cf.beta[j]).map_err(|e| match e {
            Error::ZeroSeries(o) => Error::PrecisionExhausted(format!("full quotient {j} vanishes to order {o}")),
            e => e,
        })?;
        if cur.trunc_order() > 0 {
            return Err(Error::PrecisionExhausted(format!("full quotient {} lost its polynomial part", j + 1)));
        }
    }
    Ok(cur)
}

/// Degree data of the Lagrange test `deg(f − p/q) < −2 deg q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LagrangeReport {
    /// Degree of `f − p/q`; an upper bound when `lhs_exact` is false.
    pub lhs_deg: i64,
    pub lhs_exact: bool,
    pub rhs_bound: i64,
    pub pass: bool,
}

/// Full report; `p/q` is reduced first.
pub fn lagrange_report(f: &LaurentTrunc, p: &Poly, q: &Poly) -> Result<LagrangeReport> {
    if q.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let (p, q) = reduced(p, q);
    let dq = q.deg();
    let e = f.mul_poly(&q).sub(&LaurentTrunc::from_poly(&p));
    let rhs = -2 * dq;
    match e.degree() {
        Some(d) if d >= -dq => Ok(LagrangeReport { lhs_deg: d - dq, lhs_exact: true, rhs_bound: rhs, pass: false }),
        Some(d) if e.trunc_order() <= -dq => {
            Ok(LagrangeReport { lhs_deg: d - dq, lhs_exact: true, rhs_bound: rhs, pass: true })
        }
        None if e.is_exact() => {
            Ok(LagrangeReport { lhs_deg: crate::qexact::NEG_INF, lhs_exact: true, rhs_bound: rhs, pass: true })
        }
        None if e.trunc_order() <= -dq => Ok(LagrangeReport {
            lhs_deg: e.trunc_order() - 1 - dq,
            lhs_exact: false,
            rhs_bound: rhs,
            pass: true,
        }),
        _ => Err(Error::PrecisionExhausted(format!(
            "series known to t^{} cannot decide deg(f − p/q) < {rhs}",
            f.trunc_order()
        ))),
    }
}

/// `true` iff `deg(f − p/q) < −2 deg q`.
pub fn lagrange_check(f: &LaurentTrunc, p: &Poly, q: &Poly) -> Result<bool> {
    lagrange_report(f, p, q).map(|r| r.pass)
}

/// Limit-preserving rescaling at position `i`.
///
/// Variant 1 divides `β_{i−1}`, `a_{i−1}`, `β_i` by `A`; variant 2 divides `β_{i−1}`, `a_{i−1}`
/// by `A` and multiplies `a_i`, `β_{i+1}` by `A`.
pub fn lemma8_transform(cf: &Gcf, i: usize, factor: &Rational, variant: u8) -> Result<Gcf> {
    if factor.is_zero() {
        return Err(Error::InvalidArgument("factor must be nonzero".into()));
    }
    if i == 0 || i >= cf.len() {
        return Err(Error::InvalidArgument(format!("index {i} outside 1..{}", cf.len())));
    }
    let inv = factor.recip();
    let mut out = cf.clone();
    out.beta[i - 1] = &out.beta[i - 1] * &inv;
    out.a[i - 1] = out.a[i - 1].scale(&inv);
    match variant {
        1 => out.beta[i] = &out.beta[i] * &inv,
        2 => {
            out.a[i] = out.a[i].scale(factor);
            if i + 1 < out.len() {
                out.beta[i + 1] = &out.beta[i + 1] * factor;
            }
        }
        _ => return Err(Error::InvalidArgument(format!("unknown variant {variant}"))),
    }
    out.canonical = out.a.iter().skip(1).all(|p| p.deg() >= 1);
    Ok(out)
}

/// Exact `p_j(t0)`, `q_j(t0)` for `j ≤ k` (recurrences run over Q).
pub fn convergents_at(cf: &Gcf, t0: &Rational, k: usize) -> Result<Vec<(Rational, Rational)>> {
    if k >= cf.len() {
        return Err(Error::InvalidArgument(format!("need {} terms, have {}", k + 1, cf.len())));
    }
    let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let a = cf.a[j].eval(t0);
        let b = &cf.beta[j];
        let next = match j {
            0 => (a, Rational::one()),
            1 => (&a * &out[0].0 + b, a),
            _ => {
                let (p1, q1) = &out[j - 1];
                let (p2, q2) = &out[j - 2];
                (&a * p1 + b * p2, &a * q1 + b * q2)
            }
        };
        out.push(next);
    }
    Ok(out)
}

/// Values `p_j(t0)/(β₀ q_j(t0))`, `j ≤ k`.
pub fn evaluate_at(cf: &Gcf, t0: &Rational, k: usize) -> Result<Vec<Rational>> {
    convergents_at(cf, t0, k)?
        .into_iter()
        .enumerate()
        .map(|(j, (p, q))| {
            if q.is_zero() {
                Err(Error::VanishingDenominator(j))
            } else {
                Ok(p / (q * &cf.beta[0]))
            }
        })
        .collect()
}

/// Continued fraction of `(u·y + v)/(w·y + z)` from one for `y`.
pub fn mobius_front(cf: &Gcf, u: &Rational, v: &Rational, w: &Rational, z: &Rational) -> Result<Gcf> {
    if w.is_zero() {
        return Err(Error::Degenerate("w = 0".into()));
    }
    let det = v * w - u * z;
    if det.is_zero() {
        return Err(Error::Degenerate("uz − vw = 0".into()));
    }
    let b0 = &cf.beta[0];
    let mut beta = vec![w.clone(), w * &det * b0];
    let mut a = vec![Poly::constant(u.clone()), &cf.a[0].scale(&(w * w)) + &Poly::constant(w * z * b0)];
    for i in 1..cf.len() {
        beta.push(if i == 1 { &cf.beta[1] * w * w } else { cf.beta[i].clone() });
        a.push(cf.a[i].clone());
    }
    let mut g = Gcf::new(beta, a)?;
    g.canonical = false;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::rational::{int, rat};
    use crate::qexact::{cubic_from_ints, series_root};

    fn family1(n: usize) -> Gcf {
        Gcf::from_source(
            &|i: usize| {
                if i == 0 {
                    (int(1), Poly::t())
                } else {
                    let i = i as i64;
                    (int((3 * i - 1) * (3 * i + 1)), Poly::from_ints(&[0, 2 * i + 1]))
                }
            },
            n,
        )
        .unwrap()
    }

    fn family5(n: usize) -> Gcf {
        Gcf::from_source(
            &|i: usize| {
                let k = (i / 4) as i64;
                let ii = i as i64;
                match i % 4 {
                    _ if i == 0 => (int(1), Poly::t()),
                    1 => (int(6 * k + 2), Poly::from_ints(&[0, 3 * ii])),
                    2 => (int(6 * k + 1), Poly::t()),
                    3 => (int(6 * k + 4), Poly::from_ints(&[0, 6 * ii, 0, 3 * ii])),
                    _ => (int(6 * k - 1), Poly::t()),
                }
            },
            n,
        )
        .unwrap()
    }

    #[test]
    fn family5_first_convergents() {
        let c = convergents(&family5(2), 2).unwrap();
        assert_eq!(c[1].p, Poly::from_ints(&[2, 0, 3]));
        assert_eq!(c[1].q, Poly::from_ints(&[0, 3]));
        assert_eq!(c[2].p, Poly::from_ints(&[0, 3, 0, 3]));
        assert_eq!(c[2].q, Poly::from_ints(&[1, 0, 3]));
        let det = &(&c[2].p * &c[1].q) - &(&c[1].p * &c[2].q);
        assert_eq!(det, Poly::from_ints(&[-2]));
    }

    #[test]
    fn seed_only() {
        let g = Gcf::new(vec![int(1)], vec![Poly::t()]).unwrap();
        let c = convergents(&g, 0).unwrap();
        assert_eq!((c[0].p.clone(), c[0].q.clone()), (Poly::t(), Poly::one()));
    }

    #[test]
    fn expand_exact_polynomial() {
        let e = expand_laurent(&LaurentTrunc::from_poly(&Poly::t()), 5);
        assert!(e.terminated);
        assert_eq!(e.valid, 1);
        assert_eq!(e.gcf.unwrap().a, vec![Poly::t()]);
    }

    #[test]
    fn expand_t_plus_reciprocal() {
        let f = LaurentTrunc::from_desc(1, vec![int(1), int(0), int(1)], crate::qexact::NEG_INF);
        let e = expand_laurent(&f, 3);
        let g = e.gcf.unwrap();
        assert_eq!(g.a, vec![Poly::t(), Poly::t()]);
        assert!(e.terminated);
    }

    #[test]
    fn expand_family1_matches_closed_form() {
        let c = cubic_from_ints(&[0, 1], &[-9], &[0, -3], &[3]);
        let f = series_root(&c, Some(1), -60).unwrap();
        let e = expand_laurent(&f, 5);
        assert_eq!(e.valid, 6);
        assert_eq!(first_convergent_mismatch(&e.gcf.unwrap(), &family1(5), 5).unwrap(), None);
    }

    #[test]
    fn full_quotient_family1() {
        let c = cubic_from_ints(&[0, 1], &[-9], &[0, -3], &[3]);
        let f = series_root(&c, Some(1), -30).unwrap();
        let f1 = full_quotient(&family1(3), 1, &f).unwrap();
        assert_eq!(f1.poly_part().unwrap(), Poly::from_ints(&[0, 3]).scale(&rat(1, 8)));
        assert_eq!(full_quotient(&family1(3), 0, &f).unwrap(), f);
    }

    #[test]
    fn lagrange_examples() {
        let f = LaurentTrunc::from_desc(1, vec![int(1), int(0), int(1)], crate::qexact::NEG_INF);
        assert!(lagrange_check(&f, &Poly::t(), &Poly::one()).unwrap());
        assert!(!lagrange_check(&f, &Poly::from_ints(&[1, 1]), &Poly::one()).unwrap());
        let shallow = f.truncate(1);
        assert!(lagrange_check(&shallow, &Poly::t(), &Poly::one()).is_err());
    }

    #[test]
    fn rescaling_variants_preserve_values() {
        let g = family1(4);
        assert_eq!(lemma8_transform(&g, 2, &int(1), 1).unwrap(), g);
        for v in [1, 2] {
            for i in 1..4 {
                let h = lemma8_transform(&g, i, &rat(-3, 7), v).unwrap();
                assert_eq!(first_convergent_mismatch(&g, &h, 4).unwrap(), None, "variant {v} at {i}");
            }
        }
        assert!(lemma8_transform(&g, 1, &int(0), 1).is_err());
    }

    #[test]
    fn family5_division_by_k() {
        let g = family5(12);
        let k = 2usize;
        let kk = int(k as i64);
        let mut h = g.clone();
        let i1 = 4 * k + 1;
        h.beta[i1] = &h.beta[i1] / &kk;
        h.beta[i1 + 1] = &h.beta[i1 + 1] / &kk;
        h.a[i1] = h.a[i1].scale(&kk.recip());
        assert_eq!(first_convergent_mismatch(&g, &h, 12).unwrap(), None);
    }

    #[test]
    fn evaluation_and_mobius() {
        let g = family1(10);
        let v = evaluate_at(&g, &int(3), 0).unwrap();
        assert_eq!(v[0], int(3));
        let m = mobius_front(&g, &int(2), &int(1), &int(1), &int(3)).unwrap();
        let t5 = int(5);
        let ys = evaluate_at(&g, &t5, 10).unwrap();
        let xs = evaluate_at(&m, &t5, 11).unwrap();
        for j in 0..=10 {
            let y = &ys[j];
            let want = (int(2) * y + int(1)) / (y + int(3));
            assert_eq!(xs[j + 1], want);
        }
        assert!(mobius_front(&g, &int(1), &int(0), &int(0), &int(1)).is_err());
        assert!(mobius_front(&g, &int(1), &int(2), &int(1), &int(2)).is_err());
    }

    #[test]
    fn reciprocal_shifts_quotients() {
        let g = family1(4);
        let r = mobius_front(&g, &int(0), &int(1), &int(1), &int(0)).unwrap();
        assert_eq!(r.a[0], Poly::zero());
        assert_eq!(r.a[1], g.a[0]);
        assert_eq!(r.a[2..], g.a[1..]);
    }

    #[test]
    fn determinant_identity() {
        let g = family1(8);
        let c = convergents(&g, 8).unwrap();
        let mut prod = Rational::one();
        for n in 1..=8 {
            prod *= &g.beta[n];
            let det = &(&c[n].p * &c[n - 1].q) - &(&c[n - 1].p * &c[n].q);
            let sign = if n % 2 == 1 { int(1) } else { int(-1) };
            assert_eq!(det, Poly::constant(&sign * &prod));
        }
    }
}
