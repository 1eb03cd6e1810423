use serde::{Deserialize, Serialize};

use super::laurent::LaurentTrunc;
use super::poly::Poly;
use super::rational::Rational;
use crate::error::{Error, Result};

/// `b3·x³ + b2·x² + b1·x + b0 = 0` with coefficients in Q[t].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicEq {
    pub b0: Poly,
    pub b1: Poly,
    pub b2: Poly,
    pub b3: Poly,
}

impl CubicEq {
    pub fn new(b0: Poly, b1: Poly, b2: Poly, b3: Poly) -> Result<Self> {
        if b3.is_zero() {
            return Err(Error::InvalidArgument("leading coefficient b3 is zero".into()));
        }
        Ok(CubicEq { b0, b1, b2, b3 })
    }

    /// Coefficients `[b0, b1, b2, b3]`.
    pub fn coeffs(&self) -> [&Poly; 4] {
        [&self.b0, &self.b1, &self.b2, &self.b3]
    }

    pub fn eval_series(&self, x: &LaurentTrunc) -> LaurentTrunc {
        let mut acc = LaurentTrunc::from_poly(&self.b3);
        for b in [&self.b2, &self.b1, &self.b0] {
            acc = acc.mul(x).add_poly(b);
        }
        acc
    }

    pub fn eval_derivative_series(&self, x: &LaurentTrunc) -> LaurentTrunc {
        let three = Poly::constant(Rational::from_integer(3.into()));
        let two = Poly::constant(Rational::from_integer(2.into()));
        let mut acc = LaurentTrunc::from_poly(&(&three * &self.b3));
        acc = acc.mul(x).add_poly(&(&two * &self.b2));
        acc.mul(x).add_poly(&self.b1)
    }

    /// Substitutes a rational value for `t`.
    pub fn at(&self, t0: &Rational) -> [Rational; 4] {
        [self.b0.eval(t0), self.b1.eval(t0), self.b2.eval(t0), self.b3.eval(t0)]
    }

    pub fn pretty(&self) -> String {
        let mut parts = Vec::new();
        for (k, b) in self.coeffs().iter().enumerate().rev() {
            if b.is_zero() {
                continue;
            }
            let xs = match k {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{k}"),
            };
            parts.push(format!("({}){}", b.pretty(), xs));
        }
        parts.join(" + ")
    }
}

/// Root degrees read off the upper Newton polygon of `(j, deg b_j)`.
/// Each entry is `(numerator, denominator, multiplicity, j_left)` of the degree `num/den`.
fn newton_polygon(c: &CubicEq) -> Vec<(i64, i64, i64, usize)> {
    let pts: Vec<(i64, i64)> = c
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, b)| !b.is_zero())
        .map(|(j, b)| (j as i64, b.deg()))
        .collect();
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0);
            if cross >= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull.windows(2)
        .map(|w| {
            let (dj, de) = (w[1].0 - w[0].0, w[1].1 - w[0].1);
            (-de, dj, dj, w[0].0 as usize)
        })
        .collect()
}

/// Degree and leading coefficient of the unique positive-degree root.
pub fn positive_root_seed(c: &CubicEq) -> Result<(i64, Rational)> {
    if c.b0.is_zero() {
        return Err(Error::NoPositiveRoot("b0 = 0: x = 0 is a root, the cubic is reducible".into()));
    }
    let edges = newton_polygon(c);
    let positive: Vec<_> = edges.iter().filter(|e| e.0 > 0).collect();
    let count: i64 = positive.iter().map(|e| e.2).sum();
    if count != 1 {
        return Err(Error::NoPositiveRoot(format!("{count} roots of positive degree (need exactly 1)")));
    }
    let (num, den, _, j) = *positive[0];
    debug_assert_eq!(den, 1);
    let lo = c.coeffs()[j].leading();
    let hi = c.coeffs()[j + 1].leading();
    Ok((num / den, -lo / hi))
}

/// Positive-degree root of `cubic` known exactly at every power `≥ order`.
///
/// Newton iteration from the leading term; each step is certified afterwards: when the
/// current approximant has the right leading term, `deg(x − root) = deg cubic(x) − deg cubic'(x)`.
pub fn series_root(cubic: &CubicEq, degree_hint: Option<i64>, order: i64) -> Result<LaurentTrunc> {
    let (s, c) = positive_root_seed(cubic)?;
    if let Some(h) = degree_hint {
        if h != s {
            return Err(Error::NoPositiveRoot(format!("degree hint {h} but the root has degree {s}")));
        }
    }
    if order > s {
        return Ok(LaurentTrunc::monomial(c, s).truncate(order));
    }
    let mut x = LaurentTrunc::monomial(c, s);
    let mut last_gain = i64::MAX;
    for _ in 0..64 {
        let r = cubic.eval_series(&x);
        let Some(rho) = r.degree() else {
            return Ok(x.truncate(order));
        };
        let dp = cubic.eval_derivative_series(&x);
        let e = dp
            .degree()
            .ok_or_else(|| Error::NoPositiveRoot("derivative vanishes at the root".into()))?;
        let err = rho - e;
        if err >= s {
            return Err(Error::NoPositiveRoot("Newton seed lost its leading term".into()));
        }
        if err < order {
            return Ok(x.truncate(order));
        }
        if err >= last_gain {
            return Err(Error::NoPositiveRoot("Newton iteration does not converge".into()));
        }
        last_gain = err;
        let work = order - 2;
        let inv = dp.invert_to(work - rho)?;
        let delta = r.mul(&inv).truncate(work);
        x = x.sub(&delta).truncate(work).to_exact();
    }
    Err(Error::NoPositiveRoot("Newton iteration budget exhausted".into()))
}

/// Convenience: `x³ + ...` from integer coefficient lists per power of x (ascending in t).
pub fn cubic_from_ints(b0: &[i64], b1: &[i64], b2: &[i64], b3: &[i64]) -> CubicEq {
    CubicEq::new(Poly::from_ints(b0), Poly::from_ints(b1), Poly::from_ints(b2), Poly::from_ints(b3))
        .expect("nonzero leading coefficient")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qexact::rational::int;

    #[test]
    fn family_one_root_starts_at_t() {
        let c = cubic_from_ints(&[0, 1], &[-9], &[0, -3], &[3]);
        let x = series_root(&c, Some(1), -20).unwrap();
        assert_eq!(x.poly_part().unwrap(), Poly::t());
        let r = c.eval_series(&x);
        assert!(r.degree().map_or(true, |d| d < -20 + 2));
    }

    #[test]
    fn two_newton_steps_example() {
        let c = cubic_from_ints(&[-1], &[], &[0, -1], &[1]);
        let x = series_root(&c, None, -2).unwrap();
        assert_eq!(x.coeff(1), Some(int(1)));
        assert_eq!(x.coeff(0), Some(int(0)));
        assert_eq!(x.coeff(-1), Some(int(0)));
        assert_eq!(x.coeff(-2), Some(int(1)));
        assert_eq!(x.coeff(-3), None);
    }

    #[test]
    fn no_positive_root() {
        let c = cubic_from_ints(&[1], &[-1], &[-1], &[1]);
        assert!(matches!(series_root(&c, None, -5), Err(Error::NoPositiveRoot(_))));
    }

    #[test]
    fn deeper_order_extends_shallower() {
        let c = cubic_from_ints(&[0, -2], &[], &[0, -1], &[1]);
        let a = series_root(&c, None, -10).unwrap();
        let b = series_root(&c, None, -30).unwrap();
        for p in -10..=1 {
            assert_eq!(a.coeff(p), b.coeff(p));
        }
    }
}
