use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use cubic_cf::bounds;
use cubic_cf::cfrac::{self, Gcf};
use cubic_cf::moebius;
use cubic_cf::qexact::rational::{int, rat};
use cubic_cf::qexact::{IntPoly, LaurentTrunc, Poly};

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

/// Coefficients of `Σ bⱼ (v + u y)ʲ (w + s y)³⁻ʲ` by direct binomial expansion.
fn expand_reference(b: &[BigInt], u: &BigInt, v: &BigInt, s: &BigInt, w: &BigInt) -> [BigInt; 4] {
    let binom = |n: u32, k: u32| -> BigInt { (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1)) };
    let mut out: [BigInt; 4] = Default::default();
    for (j, bj) in b.iter().enumerate() {
        let j = j as u32;
        for i in 0..=j {
            for l in 0..=(3 - j) {
                let c = bj.clone()
                    * binom(j, i)
                    * u.pow(i)
                    * v.pow(j - i)
                    * binom(3 - j, l)
                    * s.pow(l)
                    * w.pow(3 - j - l);
                out[(i + l) as usize] += c;
            }
        }
    }
    out
}

fn coeff() -> impl Strategy<Value = i64> {
    -6i64..=6
}

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec((-9i64..=9, 1i64..=5), 1..6)
        .prop_map(|cs| Poly::from_coeffs(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
}

fn gcf_strategy() -> impl Strategy<Value = Gcf> {
    (1usize..10).prop_flat_map(|n| {
        (
            prop::collection::vec((1i64..=9, any::<bool>()), n + 1),
            prop::collection::vec(prop::collection::vec(-5i64..=5, 1..3), n + 1),
        )
            .prop_map(|(beta, a)| {
                let beta = beta.into_iter().map(|(m, neg)| int(if neg { -m } else { m })).collect();
                let a = a
                    .into_iter()
                    .map(|c| {
                        let p = Poly::from_ints(&c);
                        if p.is_zero() {
                            Poly::t()
                        } else {
                            p
                        }
                    })
                    .collect();
                Gcf::new(beta, a).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn moebius_kills_linear_term(b0 in coeff(), b1 in coeff(), b2 in coeff(), b3 in 1i64..=6, v in -20i64..=20, w in 1i64..=20) {
        let p = IntPoly::new(vec![big(b0), big(b1), big(b2), big(b3)]).unwrap();
        let (v, w) = (big(v), big(w));
        let (u, s) = moebius::us_for(&p, &v, &w).unwrap();
        let got = moebius::transformed_cubic(&p, &u, &v, &s, &w).unwrap();
        // constructor removes content, so expand what it kept
        let reference = expand_reference(p.coeffs(), &u, &v, &s, &w);
        prop_assert_eq!(&got[..], &reference[..]);
        prop_assert!(got[1].is_zero());
        let ph = moebius::homogeneous_at(&p, &v, &w);
        let forms = moebius::rq_polynomials(&p).unwrap();
        prop_assert_eq!(&got[0], &ph);
        prop_assert_eq!(&got[2], &(BigInt::from(3) * &ph * forms.r_at(&v, &w)));
        prop_assert_eq!(&got[3], &(&ph * forms.q_at(&v, &w)));
    }

    #[test]
    fn convergent_determinant(g in gcf_strategy()) {
        let n = g.len() - 1;
        let c = cfrac::convergents(&g, n).unwrap();
        let mut prod = int(1);
        for k in 1..=n {
            prod *= &g.beta[k];
            let det = &(&c[k].p * &c[k - 1].q) - &(&c[k - 1].p * &c[k].q);
            let sign = if k % 2 == 1 { int(1) } else { int(-1) };
            prop_assert_eq!(det, Poly::constant(&sign * &prod));
        }
    }

    #[test]
    fn gcf_json_round_trip(g in gcf_strategy()) {
        let s = serde_json::to_string(&g).unwrap();
        let back: Gcf = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn poly_json_round_trip(p in poly_strategy()) {
        let s = serde_json::to_string(&p).unwrap();
        let back: Poly = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn laurent_inverse(p in poly_strategy(), order in 4i64..40) {
        prop_assume!(!p.is_zero());
        let f = LaurentTrunc::from_poly_trunc(&p, -order);
        let g = f.invert().unwrap();
        let one = f.mul(&g);
        prop_assert!(one.sub(&LaurentTrunc::constant(int(1))).is_zero_to_precision());
        let s = serde_json::to_string(&g).unwrap();
        let back: LaurentTrunc = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn family5_blocks_chain(t in 2i64..60, a in 1i64..4, k in 0usize..6) {
        let (a, t) = (big(a), big(t));
        let conv = bounds::family5_convergents(&a, &t, 4 * k + 7);
        let blk = bounds::block_product(&a, &t, k);
        let (p0, q0) = &conv[4 * k + 2];
        let (p1, q1) = &conv[4 * k + 6];
        let (pm, qm) = &conv[4 * k + 1];
        
        prop_assert_eq!(p1, &(blk.at(0, 0) * p0 + blk.at(0, 1) * pm));
        prop_assert_eq!(q1, &(blk.at(0, 0) * q0 + blk.at(0, 1) * qm));
    }
}
