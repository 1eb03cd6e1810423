//! Closed-form continued fractions of six cubic Laurent series and a harness that checks
//! them against the series oracle.
//!
//! Index conventions: term `0` is `(1, a₀)`. Families 3–5 have period 4 with
//! `k = ⌊i/4⌋`, so the fourth column sits at `i = 4k` (`k ≥ 1`); family 6 has period 3
//! with `k = ⌊i/3⌋` and its third column at `i = 3k`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cfrac::{self, Gcf, TermSource};
use crate::error::{Error, Result};
use crate::par;
use crate::qexact::rational::{int, to_wire, Rational};
use crate::qexact::{series_root, CubicEq, LaurentTrunc, Poly};
use crate::riccati::{self, RiccatiEq};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    id: u8,
    a: Option<Rational>,
}

fn p(c: &[i64]) -> Poly {
    Poly::from_ints(c)
}

impl FamilySpec {
    /// Families 3, 4 and 5 need a nonzero parameter; the others take none.
    pub fn new(id: u8, a: Option<Rational>) -> Result<Self> {
        match (id, &a) {
            (1 | 2 | 6, None) => Ok(FamilySpec { id, a }),
            (1 | 2 | 6, Some(_)) => Err(Error::InvalidArgument(format!("family {id} takes no parameter"))),
            (3..=5, Some(x)) if !x.is_zero() => Ok(FamilySpec { id, a }),
            (3..=5, _) => Err(Error::InvalidArgument(format!("family {id} needs a nonzero parameter a"))),
            _ => Err(Error::InvalidArgument(format!("unknown family {id}"))),
        }
    }

    pub fn id(&self) -> u8 {
        self.id
    }

    pub fn parameter(&self) -> Option<&Rational> {
        self.a.as_ref()
    }

    fn param(&self) -> Rational {
        self.a.clone().unwrap_or_else(Rational::one)
    }

    pub fn cubic(&self) -> CubicEq {
        let a = self.param();
        let at = Poly::monomial(a.clone(), 1);
        let (b0, b1, b2, b3) = match self.id {
            1 => (p(&[0, 1]), p(&[-9]), p(&[0, -3]), p(&[3])),
            2 => (p(&[0, -1]), p(&[9]), p(&[0, -3]), p(&[3])),
            3 => (-&at, Poly::zero(), p(&[0, -1]), p(&[1])),
            4 => (Poly::constant(-a), Poly::zero(), p(&[0, -1]), p(&[1])),
            5 => (at, Poly::constant(-a * int(3)), p(&[0, -3]), p(&[3])),
            6 => (p(&[-4, 2]), p(&[4, -2]), p(&[-2, 1]), p(&[1])),
            _ => unreachable!("validated in new"),
        };
        CubicEq::new(b0, b1, b2, b3).expect("monic or constant leading coefficient")
    }

    /// `(β_i, a_i)` of the closed form.
    pub fn term(&self, i: usize) -> (Rational, Poly) {
        let t = Poly::t();
        if i == 0 {
            return (Rational::one(), if self.id == 6 { -&t } else { t });
        }
        let a = self.param();
        let ii = i as i64;
        let lin = |c: i64| Poly::monomial(int(c), 1);
        let sign = |e: i64| if e % 2 == 0 { 1 } else { -1 };
        match self.id {
            1 => (int((3 * ii - 1) * (3 * ii + 1)), lin(2 * ii + 1)),
            2 => (int((3 * ii - 1) * (3 * ii + 1)), lin(sign(ii) * (2 * ii + 1))),
            3 | 4 => {
                let k = ii / 4;
                let (b, mult, quad) = match i % 4 {
                    1 => (3 * (12 * k + 1) * (3 * k + 1), 1, true),
                    2 => (3 * (12 * k + 5) * (3 * k + 2), 1, false),
                    3 => (3 * (12 * k + 7) * (6 * k + 5), 2, true),
                    _ => (3 * (12 * k - 1) * (6 * k + 1), 1, false),
                };
                let power = if self.id == 4 && quad { 2 } else { 1 };
                (int(b) * a, Poly::monomial(int(mult * (2 * ii + 1)), power))
            }
            5 => {
                let k = ii / 4;
                let a2 = &a * &a;
                match i % 4 {
                    1 => (int(2 * (3 * k + 1)) * a, lin(3 * ii)),
                    2 => (int(6 * k + 1) * a, t),
                    3 => {
                        let cubic = Poly::from_coeffs(vec![Rational::zero(), int(2) * a, Rational::zero(), Rational::one()]);
                        (int(2 * (3 * k + 2)) * a2, cubic.scale(&int(3 * ii)))
                    }
                    _ => (int(6 * k - 1) * a2, t),
                }
            }
            6 => {
                let k = ii / 3;
                let s = int(sign(ii + 1));
                match i % 3 {
                    1 => (int(2 * (6 * k + 1) * (3 * k + 1)), p(&[2 * k, 4 * k + 1]).scale(&s)),
                    2 => (int(6 * (4 * k + 1) * (3 * k + 2)), p(&[-1, 3, 1]).scale(&(s * int(4 * k + 3)))),
                    _ => (int(3 * (4 * k + 1) * (6 * k - 1)), p(&[2 * k + 1, 4 * k + 1]).scale(&s)),
                }
            }
            _ => unreachable!("validated in new"),
        }
    }

    pub fn label(&self) -> String {
        match &self.a {
            Some(a) => format!("family {} (a = {})", self.id, to_wire(a)),
            None => format!("family {}", self.id),
        }
    }
}

impl TermSource for FamilySpec {
    fn term(&self, i: usize) -> (Rational, Poly) {
        FamilySpec::term(self, i)
    }
}

/// Terms `0..=n` of the closed form.
pub fn family_terms(spec: &FamilySpec, n: usize) -> Result<Gcf> {
    Gcf::from_source(spec, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    pub k: usize,
    /// `deg(f − p_k/q_k)`; `None` when the difference vanishes or was undecidable.
    pub lhs_deg: Option<i64>,
    pub rhs_bound: i64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyReport {
    pub family: u8,
    pub a: Option<String>,
    pub checks: Vec<FamilyCheck>,
}

impl FamilyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<usize> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.k).collect()
    }
}

/// Lagrange test of convergents `0..=n` at each parameter value (`[None]` for 1, 2, 6).
pub fn verify_family(id: u8, n: usize, a_values: &[Option<Rational>]) -> Result<Vec<FamilyReport>> {
    let specs = a_values
        .iter()
        .map(|a| FamilySpec::new(id, a.clone()))
        .collect::<Result<Vec<_>>>()?;
    specs.iter().map(|s| verify_spec(s, n)).collect()
}

pub fn verify_spec(spec: &FamilySpec, n: usize) -> Result<FamilyReport> {
    let cf = family_terms(spec, n)?;
    let conv = cfrac::convergents(&cf, n)?;
    let dq = conv.last().map_or(0, |c| c.q.deg());
    let f = series_root(&spec.cubic(), None, -(2 * dq + 10))?;
    let beta0 = cf.beta[0].clone();
    let checks = par::map(conv, |c| {
        let (num, den) = cfrac::value_parts(&c, &beta0);
        match cfrac::lagrange_report(&f, &num, &den) {
            Ok(r) => FamilyCheck {
                k: c.index,
                lhs_deg: (r.lhs_deg != crate::qexact::NEG_INF).then_some(r.lhs_deg),
                rhs_bound: r.rhs_bound,
                pass: r.pass,
            },
            Err(_) => FamilyCheck { k: c.index, lhs_deg: None, rhs_bound: -2 * den.deg(), pass: false },
        }
    });
    Ok(FamilyReport { family: spec.id, a: spec.a.as_ref().map(to_wire), checks })
}

/// Convergent numerators and denominators for polynomial `β_i`.
fn poly_convergents(terms: &[(Poly, Poly)]) -> Vec<(Poly, Poly)> {
    let (mut p0, mut q0) = (Poly::one(), Poly::zero());
    let (mut p1, mut q1) = (terms[0].1.clone(), Poly::one());
    let mut out = vec![(p1.clone(), q1.clone())];
    for (b, a) in &terms[1..] {
        let p2 = &(a * &p1) + &(b * &p0);
        let q2 = &(a * &q1) + &(b * &q0);
        (p0, q0, p1, q1) = (p1, q1, p2.clone(), q2.clone());
        out.push((p2, q2));
    }
    out
}

/// Family 4 with its parameter replaced by `a·t` has the convergents of family 3.
pub fn scaled_family_check(a: &Rational, kmax: usize) -> Result<bool> {
    let f3 = family_terms(&FamilySpec::new(3, Some(a.clone()))?, kmax)?;
    let spec4 = FamilySpec::new(4, Some(Rational::one()))?;
    let at = Poly::monomial(a.clone(), 1);
    let terms: Vec<(Poly, Poly)> = (0..=kmax)
        .map(|i| {
            let (b, ai) = spec4.term(i);
            let b = if i == 0 { Poly::one() } else { at.scale(&b) };
            (b, ai)
        })
        .collect();
    let c4 = poly_convergents(&terms);
    let c3 = cfrac::convergents(&f3, kmax)?;
    Ok(c3.iter().zip(&c4).all(|(x, (p, q))| cfrac::same_ratio(&x.p, &x.q, p, q)))
}

/// Coefficients of `((t − 3)/(t + 3))^{1/3}` at powers `0, −1, …, −(n−1)`.
fn cube_root_series(n: usize) -> Result<LaurentTrunc> {
    let target = -(n as i64);
    let u = LaurentTrunc::from_poly(&p(&[3, 1])).invert_to(target)?.scale(&int(-6));
    let third = Rational::new(BigInt::one(), BigInt::from(3));
    let mut acc = LaurentTrunc::constant(Rational::one()).truncate(target);
    let mut term = LaurentTrunc::constant(Rational::one());
    let mut binom = Rational::one();
    for j in 0..n {
        binom = binom * (&third - int(j as i64)) / int(j as i64 + 1);
        term = term.mul(&u).truncate(target);
        acc = acc.add(&term.scale(&binom));
    }
    Ok(acc.truncate(target))
}

/// Whether `(m₀x + m₁)/(m₂x + m₃)` of family 2's series matches `(1 + 1/s)^{1/3}`,
/// `s = (−t − 3)/6`, in its first `n` coefficients.
pub fn family2_cube_root_match(m: [i64; 4], n: usize) -> Result<bool> {
    let x = series_root(&FamilySpec::new(2, None)?.cubic(), None, -(n as i64) - 8)?;
    let lin = |a: i64, b: i64| x.scale(&int(a)).add(&LaurentTrunc::constant(int(b)));
    let den = lin(m[2], m[3]);
    if den.is_zero_to_precision() {
        return Err(Error::DivisionByZero);
    }
    let lhs = lin(m[0], m[1]).mul(&den.invert()?);
    let rhs = cube_root_series(n)?;
    let lo = 1 - n as i64;
    Ok((lo..=2).all(|pw| match (lhs.coeff(pw), rhs.coeff(pw)) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }) && lhs.trunc_order() <= lo)
}

fn block_eq(a: Poly, b: Poly, c: Poly, d: Poly) -> RiccatiEq {
    RiccatiEq::new(a, b, c, d).expect("nonzero D")
}

/// Which version of the tabulated Riccati data to produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Listing {
    AsPrinted,
    /// Family 3 with `B_{4k+2}` quadratic, `C_{4k+3}` linear and `C_{4k+4}` carrying `a`.
    Corrected,
}

/// Tabulated Riccati data `(i, A_i, B_i, C_i, D_i)` for the `k`-th block of family 3 or 6.
pub fn riccati_data_printed(family: u8, a: Option<&Rational>, k: usize) -> Result<Vec<(usize, RiccatiEq)>> {
    riccati_data_listing(family, a, k, Listing::AsPrinted)
}

pub fn riccati_data_listing(
    family: u8,
    a: Option<&Rational>,
    k: usize,
    listing: Listing,
) -> Result<Vec<(usize, RiccatiEq)>> {
    let fix = listing == Listing::Corrected;
    let k = k as i64;
    let ku = k as usize;
    match family {
        3 => {
            let a = a.ok_or_else(|| Error::InvalidArgument("family 3 needs a".into()))?.clone();
            let d = Poly::from_coeffs(vec![Rational::zero(), int(27) * &a, Rational::zero(), int(4)]);
            let c = |x: i64, lin_a: bool, lin_t: bool| {
                let v = if lin_a { int(x) * &a } else { int(x) };
                Poly::monomial(v, lin_t as usize)
            };
            let b = |x: i64, pw: usize, nine: i64| &Poly::monomial(int(-x), pw) + &Poly::constant(int(nine) * &a);
            Ok(vec![
                (4 * ku + 1, block_eq(p(&[0, -4]), b(32 * k + 8, 2, -9), c(12 * (12 * k + 1) * (3 * k + 1), true, true), d.clone())),
                (4 * ku + 2, block_eq(p(&[0, -4]), b(32 * k + 16, if fix { 2 } else { 3 }, 9), c(12 * (12 * k + 5) * (3 * k + 2), true, true), d.clone())),
                (4 * ku + 3, block_eq(p(&[0, -4]), b(32 * k + 24, 2, -9), c(6 * (12 * k + 7) * (6 * k + 5), true, fix), d.clone())),
                (4 * ku + 4, block_eq(p(&[0, -2]), b(32 * k + 32, 2, 9), c(12 * (12 * k + 11) * (6 * k + 7), fix, true), d)),
            ])
        }
        6 => {
            let d = p(&[-22, -1, 4, 1]);
            let s = if k % 2 == 0 { 1 } else { -1 };
            let dk = d.scale(&int(4 * k + 1));
            Ok(vec![
                (
                    3 * ku + 1,
                    block_eq(
                        p(&[s * (20 * k + 1), s * (8 * k + 1)]),
                        p(&[-(112 * k * k + 56 * k + 3), -(96 * k * k + 48 * k + 5), -2 * (4 * k + 1) * (4 * k + 1)]),
                        p(&[20 * k + 9, 8 * k + 3]).scale(&int(s * 2 * (6 * k + 1) * (3 * k + 1))),
                        dk.clone(),
                    ),
                ),
                (
                    3 * ku + 2,
                    block_eq(
                        p(&[-s * (20 * k + 9), -s * (8 * k + 3)]),
                        p(&[-(8 * k + 3), 24 * k + 13, 8 * k + 4]).scale(&int(-(4 * k + 1))),
                        p(&[-s * 12 * (4 * k + 1) * (4 * k + 1) * (3 * k + 2)]),
                        dk,
                    ),
                ),
                (
                    3 * ku + 3,
                    block_eq(
                        p(&[2 * s]),
                        p(&[8 * k + 9, -(24 * k + 23), -(8 * k + 8)]),
                        p(&[20 * k + 21, 8 * k + 9]).scale(&int(s * (18 * k + 15))),
                        d,
                    ),
                ),
            ])
        }
        _ => Err(Error::InvalidArgument(format!("no listed Riccati data for family {family}"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ListingCheck {
    pub index: usize,
    /// The listed equation annihilates the oracle full quotient `x_index`.
    pub annihilates: bool,
    /// The listed equation agrees with the one propagated from the cubic.
    pub matches_propagated: bool,
}

/// Checks the tabulated data for indices `1..=max_index`.
pub fn riccati_listing_report(
    family: u8,
    a: Option<&Rational>,
    max_index: usize,
    listing: Listing,
) -> Result<Vec<ListingCheck>> {
    let spec = FamilySpec::new(family, if family == 6 { None } else { a.cloned() })?;
    let cf = family_terms(&spec, max_index + 1)?;
    let dq = cfrac::convergents(&cf, max_index + 1)?.last().map_or(0, |c| c.q.deg());
    let f = series_root(&spec.cubic(), None, -(2 * dq + 40))?;
    let mut propagated = vec![riccati::riccati_from_cubic(&spec.cubic())?];
    for i in 0..max_index {
        let next = riccati::phi_push(&propagated[i], &cf.a[i], &cf.beta[i])?;
        propagated.push(next);
    }
    let period = if family == 3 { 4 } else { 3 };
    let mut out = Vec::new();
    for k in 0..=(max_index.saturating_sub(1) / period) {
        for (i, eq) in riccati_data_listing(family, a, k, listing)? {
            if i > max_index {
                continue;
            }
            let xi = cfrac::full_quotient(&cf, i, &f)?;
            let res = eq.residual(&xi);
            if res.trunc_order() > -10 {
                return Err(Error::PrecisionExhausted(format!("full quotient {i} too short to test")));
            }
            out.push(ListingCheck {
                index: i,
                annihilates: res.is_zero_to_precision(),
                matches_propagated: eq.equivalent(&propagated[i]),
            });
        }
    }
    Ok(out)
}

/// Errors naming every index whose listed equation fails to annihilate the full quotient.
pub fn verify_riccati_listing(family: u8, a: Option<&Rational>, max_index: usize) -> Result<()> {
    let bad: Vec<usize> = riccati_listing_report(family, a, max_index, Listing::AsPrinted)?
        .into_iter()
        .filter(|c| !c.annihilates)
        .map(|c| c.index)
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::CheckFailed(format!("listed Riccati data fails at indices {bad:?}")))
    }
}

/// Leading coefficient signs and degrees of `q_0..q_n`.
pub fn denominator_profile(spec: &FamilySpec, n: usize) -> Result<Vec<(i64, bool)>> {
    let cf = family_terms(spec, n)?;
    Ok(cfrac::convergents(&cf, n)?
        .into_iter()
        .map(|c| (c.q.deg(), c.q.leading().is_positive()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::rational::rat;
    use crate::riccati::{derive_cf, DeriveMode};

    fn spec(id: u8, a: Option<i64>) -> FamilySpec {
        FamilySpec::new(id, a.map(int)).unwrap()
    }

    #[test]
    fn family1_first_terms() {
        let s = spec(1, None);
        let got: Vec<_> = (1..=3).map(|i| s.term(i)).collect();
        assert_eq!(
            got,
            vec![(int(8), p(&[0, 3])), (int(35), p(&[0, 5])), (int(80), p(&[0, 7]))]
        );
    }

    #[test]
    fn family5_first_terms() {
        let s = spec(5, Some(1));
        assert_eq!(s.term(1), (int(2), p(&[0, 3])));
        assert_eq!(s.term(2), (int(1), p(&[0, 1])));
        assert_eq!(s.term(3), (int(4), p(&[0, 18, 0, 9])));
        assert_eq!(s.term(4), (int(5), p(&[0, 1])));
    }

    #[test]
    fn family2_sign() {
        assert_eq!(spec(2, None).term(2), (int(35), p(&[0, 5])));
        assert_eq!(spec(2, None).term(1), (int(8), p(&[0, -3])));
    }

    #[test]
    fn family6_sign_and_period() {
        let s = spec(6, None);
        assert_eq!(s.term(0), (int(1), p(&[0, -1])));
        assert_eq!(s.term(1), (int(2), p(&[0, 1])));
        assert_eq!(s.term(3), (int(75), p(&[3, 5])));
    }

    #[test]
    fn parameter_validation() {
        assert!(FamilySpec::new(3, None).is_err());
        assert!(FamilySpec::new(5, Some(int(0))).is_err());
        assert!(FamilySpec::new(1, Some(int(1))).is_err());
        assert!(FamilySpec::new(7, None).is_err());
    }

    #[test]
    fn closed_forms_match_derivation() {
        for (id, a, n) in [(1, None, 6), (5, Some(1), 9), (4, Some(1), 8), (6, None, 7)] {
            let s = spec(id, a);
            let d = derive_cf(&s.cubic(), n, DeriveMode::Crosscheck).unwrap();
            assert!(d.consistent(), "{}", s.label());
            let closed = family_terms(&s, n).unwrap();
            assert_eq!(cfrac::first_convergent_mismatch(&closed, &d.gcf, n).unwrap(), None, "{}", s.label());
        }
    }

    #[test]
    fn verify_small() {
        let r = verify_family(4, 10, &[Some(int(1))]).unwrap();
        assert!(r[0].all_pass(), "{:?}", r[0].failures());
        assert_eq!(r[0].checks.len(), 11);
    }

    #[test]
    fn family4_scaled_matches_family3() {
        assert!(scaled_family_check(&int(1), 8).unwrap());
        assert!(scaled_family_check(&rat(1, 2), 6).unwrap());
    }

    #[test]
    fn printed_family3_data_fails_where_transcription_differs() {
        let bad = |a: i64| -> Vec<usize> {
            riccati_listing_report(3, Some(&int(a)), 8, Listing::AsPrinted)
                .unwrap()
                .into_iter()
                .filter(|c| !c.annihilates)
                .map(|c| c.index)
                .collect()
        };
        assert_eq!(bad(1), vec![2, 3, 6, 7]);
        assert_eq!(bad(2), vec![2, 3, 4, 6, 7, 8]);
        assert!(verify_riccati_listing(3, Some(&int(1)), 4).is_err());
    }

    #[test]
    fn corrected_family3_and_printed_family6_annihilate() {
        for a in [1, 2] {
            let r = riccati_listing_report(3, Some(&int(a)), 12, Listing::Corrected).unwrap();
            assert!(r.iter().all(|c| c.annihilates && c.matches_propagated), "{r:?}");
        }
        assert!(verify_riccati_listing(6, None, 12).is_ok());
    }

    #[test]
    fn family2_maps_to_cube_root() {
        assert!(family2_cube_root_match([1, -1, 1, 1], 15).unwrap());
        assert!(!family2_cube_root_match([2, 1, -1, 1], 15).unwrap());
        assert!(!family2_cube_root_match([1, -1, 1, 2], 15).unwrap());
    }

    #[test]
    fn listing_blocks_share_d() {
        let d = p(&[-22, -1, 4, 1]);
        for k in 0..3 {
            for (_, eq) in riccati_data_printed(6, None, k).unwrap() {
                assert!(eq.d.div_exact(&d).unwrap().is_some());
            }
        }
        let b0 = riccati_data_printed(3, Some(&int(1)), 0).unwrap();
        assert_eq!(b0[0].1, RiccatiEq::from_ints(&[0, -4], &[-9, 0, -8], &[0, 12], &[0, 27, 0, 4]));
    }
}
