use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// Integer polynomial in `x` with coprime coefficients, ascending by degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    /// Divides out the content; the sign of the leading coefficient is kept.
    pub fn new(mut coeffs: Vec<BigInt>) -> Result<Self> {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("zero polynomial".into()));
        }
        let g = coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_one() {
            for c in &mut coeffs {
                *c /= &g;
            }
        }
        Ok(IntPoly { coeffs })
    }

    pub fn from_i64(c: &[i64]) -> Result<Self> {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Parses `"b_n,...,b_0"` (descending, the CLI convention).
    pub fn parse_desc(s: &str) -> Result<Self> {
        let mut v: Vec<BigInt> = s
            .split(',')
            .map(|x| x.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient {x:?}"))))
            .collect::<Result<_>>()?;
        v.reverse();
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("nonzero")
    }

    /// Naive height: the largest absolute coefficient.
    pub fn height(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_bigints(&self.coeffs)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + Rational::from_integer(c.clone()))
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sign of the value at `x`, computed without building the rational value.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        let (n, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        // `acc = d^deg · p(x)` up to the extra factor `d` in `dpow`, which is positive.
        match acc.sign() {
            num_bigint::Sign::Minus => -1,
            num_bigint::Sign::NoSign => 0,
            num_bigint::Sign::Plus => 1,
        }
    }

    pub fn derivative(&self) -> Vec<BigInt> {
        self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect()
    }

    /// Descending comma list, inverse of [`IntPoly::parse_desc`].
    pub fn to_desc_string(&self) -> String {
        self.coeffs.iter().rev().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
    }

    /// Has a rational root (checked by the rational root theorem).
    pub fn has_rational_root(&self) -> bool {
        if self.coeffs[0].is_zero() {
            return true;
        }
        let divisors = |n: &BigInt| -> Vec<BigInt> {
            let n = n.abs();
            let mut out = Vec::new();
            let mut i = BigInt::one();
            while &i * &i <= n {
                if (&n % &i).is_zero() {
                    out.push(i.clone());
                    out.push(&n / &i);
                }
                i += 1;
            }
            out
        };
        let ps = divisors(&self.coeffs[0]);
        let qs = divisors(self.leading());
        for p in &ps {
            for q in &qs {
                for s in [1i64, -1] {
                    let r = Rational::new(p * s, q.clone());
                    if self.sign_at(&r) == 0 {
                        return true;
                    }
                }
            }
        }
        false
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.to_poly();
        f.write_str(&p.pretty_in("x"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::rational::rat;

    #[test]
    fn heights() {
        assert_eq!(IntPoly::from_i64(&[-1, 1, 1, 1]).unwrap().height(), BigInt::from(1));
        assert_eq!(IntPoly::from_i64(&[-1, 2, 2, 2]).unwrap().height(), BigInt::from(2));
        assert_eq!(IntPoly::from_i64(&[-15, 24, 42, 44]).unwrap().height(), BigInt::from(44));
    }

    #[test]
    fn content_removed() {
        let p = IntPoly::from_i64(&[3, -6, 9]).unwrap();
        assert_eq!(p.coeffs(), &[BigInt::from(1), BigInt::from(-2), BigInt::from(3)]);
    }

    #[test]
    fn signs_and_rational_roots() {
        let p = IntPoly::from_i64(&[-1, 1, 1, 1]).unwrap();
        assert_eq!(p.sign_at(&rat(0, 1)), -1);
        assert_eq!(p.sign_at(&rat(1, 1)), 1);
        assert!(!p.has_rational_root());
        assert!(IntPoly::from_i64(&[1, -1, -1, 1]).unwrap().has_rational_root());
        assert!(IntPoly::from_i64(&[-1, 0, 2]).unwrap().sign_at(&rat(1, 2)) < 0);
    }

    #[test]
    fn desc_round_trip() {
        let p = IntPoly::parse_desc("1,1,1,-1").unwrap();
        assert_eq!(p.to_desc_string(), "1,1,1,-1");
        assert_eq!(p.to_string(), "x^3 + x^2 + x - 1");
    }
}
