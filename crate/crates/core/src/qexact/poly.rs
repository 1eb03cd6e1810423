use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{self, Rational};
use crate::error::{Error, Result};

/// Degree of the zero polynomial and of series that vanish identically.
pub const NEG_INF: i64 = i64::MIN / 4;

/// Dense univariate polynomial over Q in the variable `t`, ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| rational::int(x)).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Self::from_coeffs(c.iter().cloned().map(Rational::from_integer).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree, with `NEG_INF` for the zero polynomial.
    pub fn deg(&self) -> i64 {
        if self.coeffs.is_empty() {
            NEG_INF
        } else {
            self.coeffs.len() as i64 - 1
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn derivative(&self) -> Poly {
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * rational::int(k as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `self(inner(t))`.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * inner) + &Poly::constant(c.clone()))
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Euclidean division: `self = q·d + r` with `deg r < deg d`.
    pub fn divmod(&self, d: &Poly) -> Result<(Poly, Poly)> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = d.coeffs.len() - 1;
        let lead_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Quotient of an exact division; `None` when the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Result<Option<Poly>> {
        let (q, r) = self.divmod(d)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Rational content: positive `c` with `self / c` having coprime integer coefficients.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let num = rational::gcd_numerators(&self.coeffs);
        let den = rational::lcm_denominators(&self.coeffs);
        Rational::new(num, den)
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn content_normalize(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.divmod(&y).expect("nonzero divisor").1;
            x = y;
            y = r.content_normalize();
        }
        x.monic()
    }

    /// Integer coefficients when every coefficient is integral.
    pub fn to_bigints(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    pub fn pretty(&self) -> String {
        self.pretty_in("t")
    }

    pub fn pretty_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag.is_one() && k > 0;
            if !unit {
                s.push_str(&rational::to_pretty(&mag));
            }
            match k {
                0 => {}
                1 => s.push_str(var),
                _ => s.push_str(&format!("{var}^{k}")),
            }
        }
        s
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl From<Rational> for Poly {
    fn from(c: Rational) -> Self {
        Poly::constant(c)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Poly::from_coeffs(v)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational::ser_rationals(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        rational::de_rationals(d).map(Poly::from_coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::rational::{int, rat};

    #[test]
    fn derivative_power_rule() {
        assert_eq!(Poly::from_ints(&[9, 0, 1]).derivative(), Poly::from_ints(&[0, 2]));
    }

    #[test]
    fn divmod_factor() {
        let (q, r) = Poly::from_ints(&[-1, 0, 0, 1]).divmod(&Poly::from_ints(&[-1, 1])).unwrap();
        assert_eq!(q, Poly::from_ints(&[1, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(Poly::one().divmod(&Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn mul_small() {
        let p = &Poly::from_ints(&[0, 3]) * &Poly::from_ints(&[3, 0, 1]);
        assert_eq!(p, Poly::from_ints(&[0, 9, 0, 3]));
    }

    #[test]
    fn zero_degree_sentinel() {
        assert_eq!(Poly::zero().deg(), NEG_INF);
        assert_eq!(Poly::from_ints(&[0, 0, 0]).deg(), NEG_INF);
        assert_eq!(Poly::from_ints(&[5]).deg(), 0);
    }

    #[test]
    fn content_and_gcd() {
        let p = Poly::from_coeffs(vec![rat(-3, 2), rat(9, 4)]);
        assert_eq!(p.content(), rat(3, 4));
        assert_eq!(p.content_normalize(), Poly::from_ints(&[-2, 3]));
        let a = &Poly::from_ints(&[9, 0, 1]) * &Poly::from_ints(&[1, 1]);
        let b = &Poly::from_ints(&[9, 0, 1]) * &Poly::from_ints(&[-2, 1]);
        assert_eq!(Poly::gcd(&a, &b), Poly::from_ints(&[9, 0, 1]));
        assert_eq!(Poly::gcd(&Poly::zero(), &b), b.monic());
    }

    #[test]
    fn compose_and_eval() {
        let p = Poly::from_ints(&[1, 0, 1]);
        let q = p.compose(&Poly::from_ints(&[1, 1]));
        assert_eq!(q, Poly::from_ints(&[2, 2, 1]));
        assert_eq!(q.eval(&int(2)), int(10));
    }

    #[test]
    fn pretty_form() {
        assert_eq!(Poly::from_ints(&[9, 0, 3]).pretty(), "3t^2 + 9");
        assert_eq!(Poly::from_ints(&[0, -1]).pretty(), "-t");
        assert_eq!(Poly::zero().pretty(), "0");
    }

    #[test]
    fn json_wire_format() {
        let p = Poly::from_coeffs(vec![rat(1, 2), int(0), int(-3)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"["1/2","0/1","-3/1"]"#);
        let back: Poly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }
}
