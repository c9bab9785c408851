use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rumin::expr::{from_sexpr, integrate_ball, to_sexpr, Coeff, Context, Mono, Scalar, Var};
use std::collections::HashMap;

fn arb_scalar(max_terms: usize, with_u: bool, with_sigma: bool) -> impl Strategy<Value = Scalar> {
    let term = (0u32..3, 0u32..3, 0u32..3, 0u32..3, 0u32..3, 0u32..3, -2i32..3, -4i64..5, -4i64..5);
    prop::collection::vec(term, 0..max_terms).prop_map(move |ts| {
        let mut s = Scalar::zero();
        for (a, b, c, d, e, f, g, re, im) in ts {
            let mut m = Mono::ONE;
            for (v, k) in [(Var::T, a), (Var::Z1, b), (Var::Z2, c), (Var::Zb1, d), (Var::Zb2, e)] {
                for _ in 0..k {
                    m = m.mul(Mono::var(v));
                }
            }
            if with_sigma {
                for _ in 0..f {
                    m = m.mul(Mono::sigma());
                }
            }
            if with_u {
                m = m.mul(Mono::u_pow(g));
            }
            s += Scalar::term(m, Coeff::gauss(re, im));
        }
        s
    })
}

fn real_factor() -> Scalar {
    Scalar::x(1).pow(2) + Scalar::y(2) * Scalar::var(Var::T) + Scalar::x(2)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms(a in arb_scalar(5, true, true), b in arb_scalar(5, true, true), c in arb_scalar(5, true, true)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn derivations_commute(a in arb_scalar(6, true, true), i in 0usize..5, j in 0usize..5) {
        let ctx = Context::with_upsilon(real_factor()).unwrap();
        let (vi, vj) = (Var::from_index(i), Var::from_index(j));
        let l = ctx.derive(&ctx.derive(&a, vi).unwrap(), vj).unwrap();
        let r = ctx.derive(&ctx.derive(&a, vj).unwrap(), vi).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn leibniz(a in arb_scalar(4, true, true), b in arb_scalar(4, true, true), i in 0usize..5) {
        let ctx = Context::with_upsilon(real_factor()).unwrap();
        let v = Var::from_index(i);
        let lhs = ctx.derive(&(&a * &b), v).unwrap();
        let rhs = ctx.derive(&a, v).unwrap() * &b + &a * ctx.derive(&b, v).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sexpr_roundtrip(a in arb_scalar(6, true, true)) {
        let s = to_sexpr(&a);
        let b = from_sexpr(&s).unwrap();
        prop_assert_eq!(b.terms(), a.terms());
        prop_assert_eq!(to_sexpr(&b), s);
    }

    #[test]
    fn conj_is_an_involutive_ring_map(a in arb_scalar(5, true, true), b in arb_scalar(5, true, true)) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), a.conj() * b.conj());
    }

    #[test]
    fn exact_stokes(p in arb_scalar(5, false, false), m in 2u32..5, i in 0usize..5) {
        let ctx = Context::plain();
        let f = p * Scalar::sigma().pow(m);
        let df = ctx.derive(&f, Var::from_index(i)).unwrap();
        prop_assert!(integrate_ball(&df).unwrap().is_zero());
    }

    #[test]
    fn integral_matches_real_coordinate_oracle(p in arb_scalar(4, false, true)) {
        prop_assert_eq!(integrate_ball(&p).unwrap().coefficient().clone(), oracle_integral(&p));
    }

    #[test]
    fn integral_is_linear(a in arb_scalar(4, false, true), b in arb_scalar(4, false, true)) {
        let lhs = integrate_ball(&(&a + &b.scale(&Coeff::gauss(2, -1)))).unwrap();
        let rhs = integrate_ball(&a).unwrap().add(&integrate_ball(&b).unwrap().scale(&Coeff::gauss(2, -1)));
        prop_assert_eq!(lhs, rhs);
    }
}

type RealPoly = HashMap<[u32; 5], (BigRational, BigRational)>;

fn cmul(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> (BigRational, BigRational) {
    (&a.0 * &b.0 - &a.1 * &b.1, &a.0 * &b.1 + &a.1 * &b.0)
}

fn poly_mul(a: &RealPoly, b: &RealPoly) -> RealPoly {
    let mut out = RealPoly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3], ea[4] + eb[4]];
            let c = cmul(ca, cb);
            let slot = out.entry(e).or_insert((BigRational::zero(), BigRational::zero()));
            slot.0 += c.0;
            slot.1 += c.1;
        }
    }
    out
}

fn unit_exp(k: usize) -> [u32; 5] {
    let mut e = [0; 5];
    e[k] = 1;
    e
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Real coordinates ordered `(x1, y1, x2, y2, t)`.
fn real_of_var(v: Var) -> RealPoly {
    let mut p = RealPoly::new();
    let (x, y, s) = match v {
        Var::T => {
            p.insert(unit_exp(4), (rat(1), rat(0)));
            return p;
        }
        Var::Z1 => (0, 1, 1),
        Var::Zb1 => (0, 1, -1),
        Var::Z2 => (2, 3, 1),
        Var::Zb2 => (2, 3, -1),
    };
    p.insert(unit_exp(x), (rat(1), rat(0)));
    p.insert(unit_exp(y), (rat(0), rat(s)));
    p
}

fn to_real(a: &Scalar) -> RealPoly {
    let mut total = RealPoly::new();
    for (m, c) in a.expand_sigma().terms() {
        let mut p = RealPoly::new();
        p.insert([0; 5], (c.re(), c.im()));
        for v in Var::ALL {
            for _ in 0..m.exp(v) {
                p = poly_mul(&p, &real_of_var(v));
            }
        }
        for (e, c) in p {
            let slot = total.entry(e).or_insert((BigRational::zero(), BigRational::zero()));
            slot.0 += c.0;
            slot.1 += c.1;
        }
    }
    total
}

/// `Gamma(k + 1/2) / sqrt(pi)`.
fn half_gamma(k: u32) -> BigRational {
    let mut g = BigRational::one();
    for j in 0..k {
        g *= BigRational::new((2 * j + 1).into(), 2.into());
    }
    g
}

/// `∫_{B^5} x^{2g} dx = prod Gamma(g_i + 1/2) / Gamma(|g| + 7/2)`, divided by pi^2.
fn oracle_monomial(e: &[u32; 5]) -> BigRational {
    if e.iter().any(|k| k % 2 == 1) {
        return BigRational::zero();
    }
    let g: Vec<u32> = e.iter().map(|k| k / 2).collect();
    let num = g.iter().fold(BigRational::one(), |acc, &k| acc * half_gamma(k));
    num / half_gamma(g.iter().sum::<u32>() + 3)
}

fn oracle_integral(a: &Scalar) -> Coeff {
    let (mut re, mut im) = (BigRational::zero(), BigRational::zero());
    for (e, c) in to_real(a) {
        let q = oracle_monomial(&e);
        re += &c.0 * &q;
        im += &c.1 * &q;
    }
    Coeff::from_rationals(&re, &im)
}

#[test]
fn ball_volume_by_slices() {
    // V_n = V_{n-2} * 2 pi / n, starting from V_1 = 2 and V_3 = 4 pi / 3.
    let v5_over_pi2 = BigRational::new(4.into(), 3.into()) * BigRational::new(2.into(), 5.into());
    assert_eq!(integrate_ball(&Scalar::one()).unwrap().coefficient(), &Coeff::ratio(8, 15));
    assert_eq!(Coeff::from_rationals(&v5_over_pi2, &BigRational::zero()), Coeff::ratio(8, 15));
}

#[test]
fn second_moment_is_a_seventh_of_the_volume() {
    let got = integrate_ball(&Scalar::x(1).pow(2)).unwrap();
    assert_eq!(got.coefficient(), &Coeff::ratio(8, 15).mul(&Coeff::ratio(1, 7)));
    assert_eq!(got.coefficient(), &Coeff::ratio(8, 105));
}

#[test]
fn high_cutoff_powers_stay_exact() {
    let a = Scalar::sigma().pow(16);
    let direct = integrate_ball(&a).unwrap();
    let expanded = oracle_integral(&a);
    assert_eq!(direct.coefficient(), &expanded);
    assert!(direct.coefficient().re() > BigRational::zero());
}
