//! Riccati equations `D·x′ = A + B·x + C·x²` of cubic Laurent series and their
//! propagation through `φ_{a,β}`, used to derive continued fractions term by term.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cfrac::{self, canonical_beta, Gcf};
use crate::error::{Error, Result};
use crate::qexact::rational::{self, int, Rational};
use crate::qexact::{series_root, LaurentTrunc, Poly, NEG_INF};

pub use crate::qexact::CubicEq;

/// `D·x′ = A + B·x + C·x²`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RiccatiEq {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
}

impl RiccatiEq {
    pub fn new(a: Poly, b: Poly, c: Poly, d: Poly) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::InvalidArgument("D must be nonzero".into()));
        }
        Ok(RiccatiEq { a, b, c, d })
    }

    pub fn from_ints(a: &[i64], b: &[i64], c: &[i64], d: &[i64]) -> Self {
        Self::new(Poly::from_ints(a), Poly::from_ints(b), Poly::from_ints(c), Poly::from_ints(d))
            .expect("nonzero D")
    }

    /// Divides out the common polynomial factor and rational content; `D` gets a positive lead.
    pub fn normalize(&self) -> RiccatiEq {
        let mut g = Poly::gcd(&Poly::gcd(&self.a, &self.b), &Poly::gcd(&self.c, &self.d));
        if g.is_zero() {
            g = Poly::one();
        }
        let div = |p: &Poly| p.div_exact(&g).expect("nonzero gcd").expect("gcd divides");
        let (a, b, c, d) = (div(&self.a), div(&self.b), div(&self.c), div(&self.d));
        let all: Vec<Rational> =
            [&a, &b, &c, &d].iter().flat_map(|p| p.coeffs().iter().cloned()).collect();
        let mut content = Rational::new(rational::gcd_numerators(&all), rational::lcm_denominators(&all));
        if d.leading().is_negative() {
            content = -content;
        }
        let s = content.recip();
        RiccatiEq { a: a.scale(&s), b: b.scale(&s), c: c.scale(&s), d: d.scale(&s) }
    }

    /// `D·x′ − A − B·x − C·x²` on a series.
    pub fn residual(&self, x: &LaurentTrunc) -> LaurentTrunc {
        let dx = x.derivative().mul_poly(&self.d);
        let bx = x.mul_poly(&self.b);
        let cxx = x.mul(x).mul_poly(&self.c);
        dx.sub(&LaurentTrunc::from_poly(&self.a)).sub(&bx).sub(&cxx)
    }

    /// Same residual on a polynomial, exactly.
    pub fn residual_poly(&self, x: &Poly) -> Poly {
        &(&(&(&self.d * &x.derivative()) - &self.a) - &(&self.b * x)) - &(&(&self.c * x) * x)
    }

    /// The series solves the equation at every known power.
    pub fn annihilates(&self, x: &LaurentTrunc) -> bool {
        self.residual(x).is_zero_to_precision()
    }

    /// Same equation up to a nonzero rational multiple (compares normal forms).
    pub fn equivalent(&self, other: &RiccatiEq) -> bool {
        self.normalize() == other.normalize()
    }
}

/// `4b₃b₁³ + 4b₂³b₀ + 27b₃²b₀² − b₂²b₁² − 18b₃b₂b₁b₀`; its negative is the discriminant.
pub fn d_polynomial(c: &CubicEq) -> Poly {
    let [b0, b1, b2, b3] = c.coeffs();
    let k = |n: i64| Poly::constant(int(n));
    let t1 = &(&k(4) * b3) * &(&(b1 * b1) * b1);
    let t2 = &(&k(4) * &(&(b2 * b2) * b2)) * b0;
    let t3 = &(&k(27) * &(b3 * b3)) * &(b0 * b0);
    let t4 = &(b2 * b2) * &(b1 * b1);
    let t5 = &(&(&k(18) * b3) * &(b2 * b1)) * b0;
    &(&(&(&t1 + &t2) + &t3) - &t4) - &t5
}

fn det3(m: [[&Poly; 3]; 3]) -> Poly {
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| &(m[r1][c1] * m[r2][c2]) - &(m[r1][c2] * m[r2][c1]);
    let x = m[0][0] * &minor(1, 2, 1, 2);
    let y = m[0][1] * &minor(1, 2, 0, 2);
    let z = m[0][2] * &minor(1, 2, 0, 1);
    &(&x - &y) + &z
}

/// The Riccati equation satisfied by every root of the cubic, before normalization.
pub fn riccati_raw(c: &CubicEq) -> Result<RiccatiEq> {
    let [b0, b1, b2, b3] = c.coeffs();
    let d = d_polynomial(c);
    if d.is_zero() {
        return Err(Error::RepeatedRoot);
    }
    let k = |n: i64| Poly::constant(int(n));
    let d3 = b3.derivative();
    let r = [
        &(b0 * &d3) - &(b3 * &b0.derivative()),
        &(b1 * &d3) - &(b3 * &b1.derivative()),
        &(b2 * &d3) - &(b3 * &b2.derivative()),
    ];
    let col1 = [b1.clone(), &k(2) * b2, &k(3) * b3];
    let col2 = [&k(-3) * b0, &k(-2) * b1, -b2];
    let col3 = [b2 * b0, &(b2 * b1) - &(&k(3) * &(b3 * b0)), &(b2 * b2) - &(&k(2) * &(b3 * b1))];
    let build = |c1: &[Poly; 3], c2: &[Poly; 3], c3: &[Poly; 3]| {
        det3([[&c1[0], &c2[0], &c3[0]], [&c1[1], &c2[1], &c3[1]], [&c1[2], &c2[2], &c3[2]]])
    };
    let exact = |p: Poly| -> Poly {
        p.div_exact(b3)
            .expect("b3 nonzero")
            .expect("b3 divides the determinant exactly")
    };
    let a = exact(build(&r, &col2, &col3));
    let b = exact(build(&col1, &r, &col3));
    let cc = build(&col1, &col2, &r);
    RiccatiEq::new(a, b, cc, d)
}

pub fn riccati_from_cubic(c: &CubicEq) -> Result<RiccatiEq> {
    Ok(riccati_raw(c)?.normalize())
}

/// Equation satisfied by `y = 1/(β·x − a)` when `x` satisfies `r`, normalized.
pub fn phi_push(r: &RiccatiEq, a: &Poly, beta: &Rational) -> Result<RiccatiEq> {
    if beta.is_zero() {
        return Err(Error::InvalidArgument("beta must be nonzero".into()));
    }
    let b = Poly::constant(beta.clone());
    let na = -&r.c;
    let nb = -&(&(&b * &r.b) + &(&(&Poly::constant(int(2)) * a) * &r.c));
    let nc = &(&(&(-&(&(&b * &b) * &r.a)) - &(&(&b * a) * &r.b)) - &(&(a * a) * &r.c))
        + &(&(&b * &a.derivative()) * &r.d);
    let nd = &b * &r.d;
    Ok(RiccatiEq::new(na, nb, nc, nd)?.normalize())
}

/// Which degree lemma fixed the leading term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DegreeLemma {
    /// `deg D = deg B + 1`.
    One,
    /// `deg D > deg B + 1`.
    Two,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    pub degree: i64,
    #[serde(serialize_with = "rational::ser_rational", deserialize_with = "rational::de_rational")]
    pub leading: Rational,
    pub lemma: DegreeLemma,
}

/// Degree and leading coefficient of the positive-degree solution from degree data alone.
pub fn positive_degree_profile(r: &RiccatiEq) -> Result<Profile> {
    let (sa, sb, sc, sd) = (r.a.deg(), r.b.deg(), r.c.deg(), r.d.deg());
    if r.c.is_zero() {
        return Err(Error::ProfileUndetermined("C = 0".into()));
    }
    let (rb, rc, rd) = (r.b.leading(), r.c.leading(), r.d.leading());
    let out = if sb != NEG_INF && sd == sb + 1 && sb > sc && sb >= sa {
        let s = sb - sc;
        for d in 1..2 * s {
            if &rd * int(d) == rb {
                return Err(Error::ProfileUndetermined(format!("d·r_D = r_B at d = {d}")));
            }
        }
        Profile { degree: s, leading: (&rd * int(s) - &rb) / &rc, lemma: DegreeLemma::One }
    } else if sd > sb + 1 && sd > sc + 1 && sd > sa {
        let s = sd - sc - 1;
        Profile { degree: s, leading: &rd * int(s) / &rc, lemma: DegreeLemma::Two }
    } else {
        return Err(Error::ProfileUndetermined(format!(
            "degrees (A,B,C,D) = ({},{},{},{}) fit neither lemma",
            show(sa),
            show(sb),
            show(sc),
            show(sd)
        )));
    };
    if out.degree < 1 {
        return Err(Error::ProfileUndetermined(format!("degree {} is not positive", out.degree)));
    }
    Ok(out)
}

fn show(d: i64) -> String {
    if d == NEG_INF {
        "-inf".into()
    } else {
        d.to_string()
    }
}

/// Polynomial part of the positive-degree solution by descending coefficient matching.
pub fn poly_part_from_riccati(r: &RiccatiEq, profile: &Profile) -> Result<Poly> {
    let s = profile.degree;
    let offset = r.c.deg() + s;
    let mut x = Poly::monomial(profile.leading.clone(), s as usize);
    for k in (0..s).rev() {
        let pow = (offset + k) as usize;
        let base = r.residual_poly(&x);
        let probe = &x + &Poly::monomial(Rational::one(), k as usize);
        let lin = &r.residual_poly(&probe).coeff(pow) - &base.coeff(pow);
        if lin.is_zero() {
            return Err(Error::SingularMatch(offset + k));
        }
        let c = -base.coeff(pow) / lin;
        if !c.is_zero() {
            x = &x + &Poly::monomial(c, k as usize);
        }
    }
    Ok(x)
}

/// One derived partial quotient together with the equation of the next full quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientStep {
    pub index: usize,
    pub a: Poly,
    #[serde(serialize_with = "rational::ser_rational", deserialize_with = "rational::de_rational")]
    pub beta: Rational,
    pub riccati_after: RiccatiEq,
    pub oracle_assisted: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeriveMode {
    Riccati,
    Oracle,
    Crosscheck,
}

impl std::str::FromStr for DeriveMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "riccati" => Ok(DeriveMode::Riccati),
            "oracle" => Ok(DeriveMode::Oracle),
            "crosscheck" => Ok(DeriveMode::Crosscheck),
            _ => Err(Error::Parse(format!("unknown mode {s:?}"))),
        }
    }
}

/// Outcome of [`derive_cf`].
#[derive(Clone, Debug, Serialize)]
pub struct Derivation {
    pub gcf: Gcf,
    pub steps: Vec<QuotientStep>,
    /// Oracle terms available (crosscheck and oracle modes).
    pub oracle_terms: Option<usize>,
    /// First convergent where Riccati and oracle disagree.
    pub first_mismatch: Option<usize>,
    /// Steps whose equation fails to annihilate the oracle full quotient.
    pub annihilation_failures: Vec<usize>,
    /// Convergents failing the Lagrange test against the oracle.
    pub lagrange_failures: Vec<usize>,
    pub exhausted: bool,
}

impl Derivation {
    pub fn consistent(&self) -> bool {
        self.first_mismatch.is_none()
            && self.annihilation_failures.is_empty()
            && self.lagrange_failures.is_empty()
            && !self.exhausted
    }
}

/// Oracle series with enough precision for `n` quotients, plus its canonical expansion.
pub fn oracle_expansion(c: &CubicEq, n: usize) -> Result<(LaurentTrunc, cfrac::Expansion)> {
    let mut order = -(8 * n as i64 + 16);
    for _ in 0..8 {
        let f = series_root(c, None, order)?;
        let e = cfrac::expand_laurent(&f, n);
        if e.valid > n || e.terminated {
            return Ok((f, e));
        }
        order *= 2;
    }
    let f = series_root(c, None, order)?;
    let e = cfrac::expand_laurent(&f, n);
    Ok((f, e))
}

/// Precision needed to run Lagrange tests up to the `n`-th convergent of `cf`.
fn lagrange_order(cf: &Gcf, n: usize) -> Result<i64> {
    let conv = cfrac::convergents(cf, n)?;
    let dq = conv.last().map(|c| c.q.deg()).unwrap_or(0);
    Ok(-(2 * dq + 10))
}

/// Derives `n` partial quotients after `a₀` of the positive-degree root of `c`.
pub fn derive_cf(c: &CubicEq, n: usize, mode: DeriveMode) -> Result<Derivation> {
    let oracle = match mode {
        DeriveMode::Riccati => None,
        _ => Some(oracle_expansion(c, n)?),
    };
    let base = riccati_from_cubic(c)?;
    let mut r = base;
    let mut steps = Vec::with_capacity(n + 1);
    let mut beta = Vec::new();
    let mut a = Vec::new();
    let oracle_gcf = oracle.as_ref().and_then(|(_, e)| e.gcf.clone());
    let oracle_len = oracle_gcf.as_ref().map_or(0, |g| g.len());
    let upto = match mode {
        DeriveMode::Oracle => (n + 1).min(oracle_len),
        _ => n + 1,
    };
    for i in 0..upto {
        let (ai, bi, assisted) = match mode {
            DeriveMode::Oracle => {
                let g = oracle_gcf.as_ref().expect("oracle present");
                (g.a[i].clone(), g.beta[i].clone(), true)
            }
            _ => {
                let derived = positive_degree_profile(&r).and_then(|p| poly_part_from_riccati(&r, &p));
                match (derived, mode) {
                    (Ok(pp), _) => {
                        let b = canonical_beta(&pp);
                        (pp.scale(&b), b, false)
                    }
                    (Err(e), DeriveMode::Riccati) => return Err(e),
                    (Err(e), _) => {
                        let g = oracle_gcf.as_ref().filter(|g| i < g.len()).ok_or(e)?;
                        (g.a[i].clone(), g.beta[i].clone(), true)
                    }
                }
            }
        };
        let next = phi_push(&r, &ai, &bi)?;
        steps.push(QuotientStep {
            index: i,
            a: ai.clone(),
            beta: bi.clone(),
            riccati_after: next.clone(),
            oracle_assisted: assisted,
        });
        a.push(ai);
        beta.push(bi);
        r = next;
    }
    let gcf = Gcf::new(beta, a)?;
    let mut out = Derivation {
        gcf,
        steps,
        oracle_terms: oracle_gcf.as_ref().map(|g| g.len()),
        first_mismatch: None,
        annihilation_failures: Vec::new(),
        lagrange_failures: Vec::new(),
        exhausted: upto < n + 1,
    };
    if mode == DeriveMode::Crosscheck {
        let og = oracle_gcf.as_ref().ok_or_else(|| Error::PrecisionExhausted("empty oracle".into()))?;
        let k = n.min(og.len().saturating_sub(1));
        out.exhausted = og.len() < n + 1;
        out.first_mismatch = cfrac::first_convergent_mismatch(&out.gcf, og, k)?;
        let order = lagrange_order(&out.gcf, n)?.min(oracle.as_ref().unwrap().0.trunc_order());
        let f = series_root(c, None, order - 4 * n as i64 - 8)?;
        for (j, cv) in cfrac::convergents(&out.gcf, n)?.iter().enumerate() {
            let (num, den) = cfrac::value_parts(cv, &out.gcf.beta[0]);
            if !cfrac::lagrange_check(&f, &num, &den)? {
                out.lagrange_failures.push(j);
            }
        }
        let before = std::iter::once(riccati_from_cubic(c)?).chain(out.steps.iter().map(|s| s.riccati_after.clone()));
        for (j, eq) in before.enumerate().take(n + 1) {
            match cfrac::full_quotient(&out.gcf, j, &f) {
                Ok(fj) if fj.trunc_order() <= 0 => {
                    if !eq.annihilates(&fj) {
                        out.annihilation_failures.push(j);
                    }
                }
                _ => break,
            }
        }
    }
    Ok(out)
}

/// Closed-form expansion of the solution of `(v₁t² + v₂)x′ = u₁ + u₂t·x + u₃x²`.
pub fn prop3_closed_form(
    u1: &Rational,
    u2: &Rational,
    u3: &Rational,
    v1: &Rational,
    v2: &Rational,
    len: usize,
) -> Result<Gcf> {
    if u2.is_zero() || u3.is_zero() || v1.is_zero() {
        return Err(Error::InvalidArgument("u2, u3 and v1 must be nonzero".into()));
    }
    let ratio = u2 / v1;
    if ratio.is_integer() && ratio.is_positive() {
        return Err(Error::InvalidArgument(format!("i·v1 = u2 at i = {}", ratio.to_integer())));
    }
    if let Some(i) = smallest_positive_integer_root(&(v1 * v2), &-(u2 * v2), &-(u1 * u3)) {
        return Err(Error::InvalidArgument(format!("beta vanishes at i = {i}")));
    }
    let mut beta = vec![u3.clone()];
    let mut a = vec![Poly::monomial(v1 - u2, 1)];
    for i in 1..=len {
        let ii = int(i as i64);
        let alpha = &int(2 * i as i64 + 1) * v1 - u2;
        beta.push((&ii * &ii * v1 - &ii * u2) * v2 - u1 * u3);
        a.push(Poly::monomial(alpha, 1));
    }
    Gcf::new(beta, a)
}

/// Smallest `i ≥ 1` with `p·i² + q·i + r = 0`, if any.
fn smallest_positive_integer_root(p: &Rational, q: &Rational, r: &Rational) -> Option<u64> {
    let is_pos_int = |x: &Rational| x.is_integer() && x.is_positive();
    if p.is_zero() {
        if q.is_zero() {
            return r.is_zero().then_some(1);
        }
        let x = -r / q;
        return is_pos_int(&x).then(|| x.to_integer().try_into().ok()).flatten();
    }
    let disc = q * q - int(4) * p * r;
    if disc.is_negative() {
        return None;
    }
    let root = rational_sqrt(&disc)?;
    let mut roots: Vec<Rational> = [(-q - &root) / (int(2) * p), (-q + &root) / (int(2) * p)]
        .into_iter()
        .filter(is_pos_int)
        .collect();
    roots.sort();
    roots.first().and_then(|x| x.to_integer().try_into().ok())
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    let isqrt = |n: &BigInt| {
        let s = n.sqrt();
        (&s * &s == *n).then_some(s)
    };
    Some(Rational::new(isqrt(x.numer())?, isqrt(x.denom())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::cubic_from_ints;

    fn fam1() -> CubicEq {
        cubic_from_ints(&[0, 1], &[-9], &[0, -3], &[3])
    }

    #[test]
    fn family1_raw_and_normalized() {
        let raw = riccati_raw(&fam1()).unwrap();
        let t2p9 = Poly::from_ints(&[9, 0, 1]);
        assert_eq!(raw.d, (&t2p9 * &t2p9).scale(&int(-108)));
        assert_eq!(raw.a, t2p9.scale(&int(-108)));
        assert!(raw.b.is_zero());
        assert_eq!(raw.c, t2p9.scale(&int(-108)));
        assert_eq!(raw.normalize(), RiccatiEq::from_ints(&[1], &[], &[1], &[9, 0, 1]));
    }

    #[test]
    fn family5_normalized() {
        let c = cubic_from_ints(&[0, 1], &[-3], &[0, -3], &[3]);
        let r = riccati_from_cubic(&c).unwrap();
        assert_eq!(r, RiccatiEq::from_ints(&[1], &[0, 1], &[0, 0, 1], &[3, 0, 3, 0, 1]));
    }

    #[test]
    fn repeated_root_rejected() {
        let c = cubic_from_ints(&[1], &[-1], &[-1], &[1]);
        assert_eq!(riccati_from_cubic(&c), Err(Error::RepeatedRoot));
    }

    #[test]
    fn push_examples() {
        let r = RiccatiEq::from_ints(&[1], &[], &[1], &[9, 0, 1]);
        assert_eq!(phi_push(&r, &Poly::t(), &int(1)).unwrap(), RiccatiEq::from_ints(&[-1], &[0, -2], &[8], &[9, 0, 1]));
        let r5 = RiccatiEq::from_ints(&[1], &[0, 1], &[0, 0, 1], &[3, 0, 3, 0, 1]);
        assert_eq!(
            phi_push(&r5, &Poly::t(), &int(1)).unwrap(),
            RiccatiEq::from_ints(&[0, 0, -1], &[0, -1, 0, -2], &[2, 0, 2], &[3, 0, 3, 0, 1])
        );
        let g = RiccatiEq::from_ints(&[2, 1], &[3], &[5, 0, 1], &[1, 1]);
        let swapped = RiccatiEq::from_ints(&[-5, 0, -1], &[-3], &[-2, -1], &[1, 1]);
        assert_eq!(phi_push(&g, &Poly::zero(), &int(1)).unwrap(), swapped.normalize());
    }

    #[test]
    fn profiles() {
        let p = positive_degree_profile(&RiccatiEq::from_ints(&[1], &[], &[1], &[9, 0, 1])).unwrap();
        assert_eq!((p.degree, p.leading.clone(), p.lemma), (1, int(1), DegreeLemma::Two));
        let p = positive_degree_profile(&RiccatiEq::from_ints(&[-1], &[0, -2], &[8], &[9, 0, 1])).unwrap();
        assert_eq!((p.degree, p.leading.clone(), p.lemma), (1, rational::rat(3, 8), DegreeLemma::One));
        let bad = RiccatiEq::from_ints(&[0], &[0, 1], &[1], &[0, 0, 1]);
        assert!(matches!(positive_degree_profile(&bad), Err(Error::ProfileUndetermined(_))));
    }

    #[test]
    fn poly_parts() {
        let r = RiccatiEq::from_ints(&[1], &[], &[1], &[9, 0, 1]);
        let p = positive_degree_profile(&r).unwrap();
        assert_eq!(poly_part_from_riccati(&r, &p).unwrap(), Poly::t());
        let r1 = RiccatiEq::from_ints(&[-1], &[0, -2], &[8], &[9, 0, 1]);
        let p1 = positive_degree_profile(&r1).unwrap();
        assert_eq!(poly_part_from_riccati(&r1, &p1).unwrap(), Poly::monomial(rational::rat(3, 8), 1));
    }

    #[test]
    fn family5_step_three_poly_part() {
        let c = cubic_from_ints(&[0, 1], &[-3], &[0, -3], &[3]);
        let d = derive_cf(&c, 3, DeriveMode::Riccati).unwrap();
        let s = &d.steps[3];
        assert_eq!(s.a.scale(&s.beta.recip()), Poly::from_ints(&[0, 2, 0, 1]).scale(&rational::rat(9, 4)));
    }

    #[test]
    fn derive_family1_crosscheck() {
        let d = derive_cf(&fam1(), 6, DeriveMode::Crosscheck).unwrap();
        assert!(d.consistent(), "{d:?}");
        assert!(d.steps.iter().all(|s| !s.oracle_assisted));
    }

    #[test]
    fn closed_form_regenerates_family1() {
        let g = prop3_closed_form(&int(-1), &int(-2), &int(8), &int(1), &int(9), 30).unwrap();
        for i in 0..=30usize {
            let k = (i + 1) as i64;
            assert_eq!(g.beta[i], int(9 * k * k - 1));
            assert_eq!(g.a[i], Poly::monomial(int(2 * k + 1), 1));
        }
        let err = prop3_closed_form(&int(1), &int(1), &int(1), &int(1), &int(1), 3).unwrap_err();
        assert!(err.to_string().contains("i = 1"), "{err}");
    }

    #[test]
    fn closed_form_beta_root_detected() {
        // i² + 2i − 15 = 0 at i = 3
        let err = prop3_closed_form(&int(15), &int(-2), &int(1), &int(1), &int(1), 3).unwrap_err();
        assert!(err.to_string().contains("i = 3"), "{err}");
    }
}
