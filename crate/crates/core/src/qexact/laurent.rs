use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::{Poly, NEG_INF};
use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Laurent series in `t⁻¹` known exactly at every power `≥ trunc`.
///
/// Stored coefficients run from `top` downwards; powers between the last stored
/// coefficient and `trunc` are zero.  `trunc == NEG_INF` marks an exact finite series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTrunc {
    top: i64,
    coeffs: Vec<Rational>,
    trunc: i64,
}

/// Integer numerators over the least common denominator.
fn scaled(c: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let l = c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let v = c.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    (v, l)
}

/// First `n` coefficients of the product of two coefficient sequences.
fn convolve(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let (ia, la) = scaled(a);
    let (ib, lb) = scaled(b);
    let den = la * lb;
    let mut acc = vec![BigInt::zero(); n.min((a.len() + b.len()).saturating_sub(1))];
    for (i, x) in ia.iter().enumerate().take(acc.len()) {
        if x.is_zero() {
            continue;
        }
        for (y, slot) in ib.iter().zip(acc[i..].iter_mut()) {
            *slot += x * y;
        }
    }
    let mut out: Vec<Rational> = acc.into_iter().map(|s| Rational::new(s, den.clone())).collect();
    out.resize(n, Rational::zero());
    out
}

/// First `n` coefficients of `1/c` for a sequence with `c[0] ≠ 0`, by Newton doubling.
fn inverse_coeffs(c: &[Rational], n: usize) -> Vec<Rational> {
    let mut g = vec![c[0].recip()];
    while g.len() < n {
        let m = (2 * g.len()).min(n);
        let mut e = convolve(&c[..c.len().min(m)], &g, m);
        for x in e.iter_mut() {
            *x = -&*x;
        }
        e[0] += Rational::from_integer(BigInt::from(2));
        g = convolve(&g, &e, m);
    }
    g.truncate(n);
    g
}

fn clamp(x: i64) -> i64 {
    x.max(NEG_INF)
}

/// `order + d`, keeping the exact sentinel absorbing.
fn offset(order: i64, d: i64) -> i64 {
    if order == NEG_INF || d == NEG_INF {
        NEG_INF
    } else {
        clamp(order + d)
    }
}

impl LaurentTrunc {
    /// Builds from descending coefficients starting at power `top`, dropping unknowns.
    pub fn from_desc(top: i64, coeffs: Vec<Rational>, trunc: i64) -> Self {
        let trunc = clamp(trunc);
        let mut coeffs = coeffs;
        let keep = (top - trunc + 1).max(0);
        if (coeffs.len() as i64) > keep {
            coeffs.truncate(keep as usize);
        }
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => LaurentTrunc { top: trunc - 1, coeffs: Vec::new(), trunc },
            Some(i) => {
                coeffs.drain(..i);
                while coeffs.last().is_some_and(Zero::is_zero) {
                    coeffs.pop();
                }
                LaurentTrunc { top: top - i as i64, coeffs, trunc }
            }
        }
    }

    pub fn exact_zero() -> Self {
        LaurentTrunc { top: NEG_INF, coeffs: Vec::new(), trunc: NEG_INF }
    }

    pub fn from_poly(p: &Poly) -> Self {
        Self::from_poly_trunc(p, NEG_INF)
    }

    pub fn from_poly_trunc(p: &Poly, trunc: i64) -> Self {
        match p.degree() {
            None => LaurentTrunc { top: trunc - 1, coeffs: Vec::new(), trunc: clamp(trunc) },
            Some(d) => {
                Self::from_desc(d as i64, p.coeffs().iter().rev().cloned().collect(), trunc)
            }
        }
    }

    pub fn monomial(c: Rational, k: i64) -> Self {
        Self::from_desc(k, vec![c], NEG_INF)
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// Lowest power whose coefficient is known (`NEG_INF` when exact).
    pub fn trunc_order(&self) -> i64 {
        self.trunc
    }

    pub fn is_exact(&self) -> bool {
        self.trunc == NEG_INF
    }

    /// Degree of the series, `None` when it vanishes to the known precision.
    pub fn degree(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.top)
    }

    /// Degree when nonzero, otherwise the largest degree the unknown tail could have.
    fn degree_bound(&self) -> i64 {
        if self.coeffs.is_empty() {
            clamp(self.trunc - 1)
        } else {
            self.top
        }
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.is_exact()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.first()
    }

    fn bottom(&self) -> i64 {
        self.top - self.coeffs.len() as i64 + 1
    }

    /// Coefficient of `t^pow`, or `None` if it is below the known precision.
    pub fn coeff(&self, pow: i64) -> Option<Rational> {
        if pow < self.trunc {
            return None;
        }
        if self.coeffs.is_empty() || pow > self.top || pow < self.bottom() {
            return Some(Rational::zero());
        }
        Some(self.coeffs[(self.top - pow) as usize].clone())
    }

    /// Stored coefficient or zero; only valid for `pow >= trunc`.
    fn known(&self, pow: i64) -> &Rational {
        static ZERO: std::sync::OnceLock<Rational> = std::sync::OnceLock::new();
        if self.coeffs.is_empty() || pow > self.top || pow < self.bottom() {
            return ZERO.get_or_init(Rational::zero);
        }
        &self.coeffs[(self.top - pow) as usize]
    }

    /// Descending coefficients from the top power down to `max(trunc, bottom)`.
    pub fn stored(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn top_degree(&self) -> i64 {
        self.top
    }

    /// Forgets every coefficient below `order`.
    pub fn truncate(&self, order: i64) -> Self {
        if order <= self.trunc {
            return self.clone();
        }
        Self::from_desc(self.top, self.coeffs.clone(), order)
    }

    /// Reinterprets the stored coefficients as an exact finite series.
    pub fn to_exact(&self) -> Self {
        if self.coeffs.is_empty() {
            return Self::exact_zero();
        }
        LaurentTrunc { top: self.top, coeffs: self.coeffs.clone(), trunc: NEG_INF }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::exact_zero();
        }
        LaurentTrunc {
            top: self.top,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            trunc: self.trunc,
        }
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        let trunc = if self.is_exact() { NEG_INF } else { self.trunc + k };
        LaurentTrunc { top: self.top + k, coeffs: self.coeffs.clone(), trunc }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn add(&self, o: &Self) -> Self {
        let trunc = self.trunc.max(o.trunc);
        let hi = self.degree_bound().max(o.degree_bound());
        let lo = if trunc == NEG_INF {
            let b = |s: &Self| if s.coeffs.is_empty() { i64::MAX } else { s.bottom() };
            b(self).min(b(o))
        } else {
            trunc
        };
        if hi < lo {
            return Self::from_desc(hi, Vec::new(), trunc);
        }
        let v = (lo..=hi).rev().map(|p| self.known(p) + o.known(p)).collect();
        Self::from_desc(hi, v, trunc)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_exact_zero() || o.is_exact_zero() {
            return Self::exact_zero();
        }
        let trunc = offset(self.trunc, o.degree_bound()).max(offset(o.trunc, self.degree_bound()));
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::from_desc(trunc - 1, Vec::new(), trunc);
        }
        let top = self.top + o.top;
        let lo = if trunc == NEG_INF { self.bottom() + o.bottom() } else { trunc };
        if top < lo {
            return Self::from_desc(top, Vec::new(), trunc);
        }
        let n = (top - lo + 1) as usize;
        Self::from_desc(top, convolve(&self.coeffs, &o.coeffs, n), trunc)
    }

    /// Multiplicative inverse at the natural precision.
    pub fn invert(&self) -> Result<Self> {
        self.invert_to(NEG_INF)
    }

    /// Multiplicative inverse, computed no further down than power `target`.
    pub fn invert_to(&self, target: i64) -> Result<Self> {
        let Some(c0) = self.coeffs.first() else {
            return Err(Error::ZeroSeries(self.trunc));
        };
        let d = self.top;
        if self.coeffs.len() == 1 && self.is_exact() {
            return Ok(Self::monomial(c0.recip(), -d).truncate(target));
        }
        let natural = if self.is_exact() { NEG_INF } else { self.trunc - 2 * d };
        let trunc = natural.max(clamp(target));
        if trunc == NEG_INF {
            return Err(Error::PrecisionExhausted(
                "inverse of an exact non-monomial series needs a target order".into(),
            ));
        }
        let n = -d - trunc + 1;
        if n <= 0 {
            return Ok(Self::from_desc(-d, Vec::new(), trunc));
        }
        let g = inverse_coeffs(&self.coeffs, n as usize);
        Ok(Self::from_desc(-d, g, trunc))
    }

    pub fn derivative(&self) -> Self {
        let trunc = if self.is_exact() { NEG_INF } else { self.trunc - 1 };
        if self.coeffs.is_empty() {
            return Self::from_desc(trunc - 1, Vec::new(), trunc);
        }
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c * rational::int(self.top - j as i64))
            .collect();
        Self::from_desc(self.top - 1, v, trunc)
    }

    /// The nonnegative-power part.
    pub fn poly_part(&self) -> Result<Poly> {
        if self.trunc > 0 {
            return Err(Error::PolyPartUnknown(self.trunc));
        }
        if self.coeffs.is_empty() || self.top < 0 {
            return Ok(Poly::zero());
        }
        Ok(Poly::from_coeffs((0..=self.top).map(|p| self.known(p).clone()).collect()))
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        self.mul(&Self::from_poly(p))
    }

    pub fn add_poly(&self, p: &Poly) -> Self {
        self.add(&Self::from_poly(p))
    }

    /// `self(u·s + v)` as a series in the new variable `s`, known down to `max(trunc, target)`.
    pub fn substitute_affine(&self, u: &Rational, v: &Rational, target: i64) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::InvalidArgument("affine substitution needs u != 0".into()));
        }
        let out_trunc = self.trunc.max(clamp(target));
        let mut acc = Self::from_desc(out_trunc - 1, Vec::new(), out_trunc);
        if self.coeffs.is_empty() {
            return Ok(acc);
        }
        let lo = self.bottom();
        if lo < 0 && out_trunc == NEG_INF {
            return Err(Error::PrecisionExhausted("substitution of negative powers needs a target".into()));
        }
        let lin = Self::from_poly(&Poly::from_coeffs(vec![v.clone(), u.clone()]));
        let mut pos = Self::constant(Rational::one());
        for p in 0..=self.top {
            if p >= lo {
                acc = acc.add(&pos.scale(self.known(p)));
            }
            pos = pos.mul(&lin);
        }
        if lo < 0 {
            let inv = lin.invert_to(out_trunc)?;
            let mut neg = inv.clone();
            for p in (lo..=-1).rev() {
                if p <= self.top {
                    acc = acc.add(&neg.scale(self.known(p)));
                }
                neg = neg.mul(&inv).truncate(out_trunc);
            }
        }
        Ok(acc.truncate(out_trunc))
    }

    pub fn pretty(&self) -> String {
        let mut s = String::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = self.top - j as i64;
            if !s.is_empty() {
                s.push_str(if c.is_negative() { " - " } else { " + " });
            } else if c.is_negative() {
                s.push('-');
            }
            s.push_str(&rational::to_pretty(&c.abs()));
            if p != 0 {
                s.push_str(&format!("*t^{p}"));
            }
        }
        if s.is_empty() {
            s.push('0');
        }
        if !self.is_exact() {
            s.push_str(&format!(" + O(t^{})", self.trunc - 1));
        }
        s
    }
}

impl fmt::Display for LaurentTrunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    top_degree: i64,
    #[serde(serialize_with = "rational::ser_rationals", deserialize_with = "rational::de_rationals")]
    coeffs: Vec<Rational>,
    trunc_order: Option<i64>,
}

impl Serialize for LaurentTrunc {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let (top, coeffs) = if self.is_exact() {
            (self.top, self.coeffs.clone())
        } else {
            let hi = self.degree_bound();
            let v = (self.trunc..=hi).rev().map(|p| self.known(p).clone()).collect();
            (hi, v)
        };
        Wire { top_degree: top, coeffs, trunc_order: (!self.is_exact()).then_some(self.trunc) }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentTrunc {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        Ok(LaurentTrunc::from_desc(w.top_degree, w.coeffs, w.trunc_order.unwrap_or(NEG_INF)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::rational::{int, rat};

    fn series(top: i64, c: &[i64], trunc: i64) -> LaurentTrunc {
        LaurentTrunc::from_desc(top, c.iter().map(|&x| int(x)).collect(), trunc)
    }

    #[test]
    fn invert_negates_degree() {
        let f = series(1, &[1, 0, 0, 0], -2);
        let g = f.invert().unwrap();
        assert_eq!(g.degree(), Some(-1));
        assert_eq!(g.trunc_order(), -4);
        let one = f.mul(&g);
        assert_eq!(one.coeff(0), Some(int(1)));
        for p in one.trunc_order()..0 {
            assert_eq!(one.coeff(p), Some(int(0)));
        }
    }

    #[test]
    fn derivative_of_t_plus_inverse() {
        let f = series(1, &[1, 0, 1], NEG_INF);
        assert_eq!(f.derivative(), series(0, &[1, 0, -1], NEG_INF));
    }

    #[test]
    fn product_as_laurent() {
        let a = LaurentTrunc::from_poly(&Poly::from_ints(&[1, 1]));
        let b = LaurentTrunc::from_poly(&Poly::from_ints(&[-1, 1]));
        assert_eq!(a.mul(&b), LaurentTrunc::from_poly(&Poly::from_ints(&[-1, 0, 1])));
    }

    #[test]
    fn poly_part_cases() {
        assert_eq!(series(1, &[1, 2, 3], -5).poly_part().unwrap(), Poly::from_ints(&[2, 1]));
        assert!(series(-1, &[1, 4], -5).poly_part().unwrap().is_zero());
        assert_eq!(series(2, &[1, 0], 1).poly_part(), Err(Error::PolyPartUnknown(1)));
    }

    #[test]
    fn truncation_is_pessimistic() {
        let f = series(2, &[1, 1, 1], 0);
        let g = series(1, &[2, 3], 0);
        let h = f.mul(&g);
        assert_eq!(h.trunc_order(), 2);
        assert_eq!(h.coeff(3), Some(int(2)));
        assert_eq!(h.coeff(2), Some(int(5)));
        assert_eq!(h.coeff(1), None);
    }

    #[test]
    fn inverting_zero_fails() {
        assert!(matches!(series(0, &[0, 0], -3).invert(), Err(Error::ZeroSeries(-3))));
        assert!(series(1, &[1, 1], NEG_INF).invert().is_err());
        assert_eq!(series(1, &[2], NEG_INF).invert().unwrap(), LaurentTrunc::monomial(rat(1, 2), -1));
    }

    #[test]
    fn affine_substitution_of_reciprocal() {
        let f = LaurentTrunc::monomial(int(1), -1);
        let g = f.substitute_affine(&int(1), &int(1), -4).unwrap();
        assert_eq!(g.stored(), &[int(1), int(-1), int(1), int(-1)][..]);
        assert_eq!(g.trunc_order(), -4);
        assert_eq!(g.coeff(-4), Some(int(-1)));
    }

    #[test]
    fn json_wire_format() {
        let f = series(1, &[1, 0, 2], -2);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"top_degree":1,"coeffs":["1/1","0/1","2/1","0/1"],"trunc_order":-2}"#);
        let back: LaurentTrunc = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
