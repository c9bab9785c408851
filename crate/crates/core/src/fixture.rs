//! Seeded random test data: polynomials, conformal factors, cutoff
//! functions. Forms are generated in [`crate::rumin::random_form`].

use crate::expr::{Coeff, Mono, Scalar, Var};
use rand::{Rng, SeedableRng};
pub use rand_chacha::ChaCha8Rng;

/// Deterministic generator for one `(seed, label, case)` triple, so that
/// every identity draws independent but reproducible data.
pub fn rng_for(seed: u64, label: &str, case: u64) -> ChaCha8Rng {
    // FNV-1a over the label mixes it into the stream selection.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ h.rotate_left(17));
    rng.set_stream(case);
    rng
}

#[derive(Clone, Copy, Debug)]
pub struct PolyShape {
    pub degree: u32,
    pub terms: usize,
    pub coeff_bound: i64,
}

impl Default for PolyShape {
    fn default() -> Self {
        PolyShape { degree: 3, terms: 3, coeff_bound: 3 }
    }
}

fn random_mono(rng: &mut ChaCha8Rng, degree: u32) -> Mono {
    let d = rng.gen_range(0..=degree);
    let mut m = Mono::ONE;
    for _ in 0..d {
        m = m.mul(Mono::var(Var::from_index(rng.gen_range(0..5))));
    }
    m
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    let k = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        k
    } else {
        -k
    }
}

/// Complex polynomial in `t, z, z̄` with Gaussian-integer coefficients.
pub fn random_poly(rng: &mut ChaCha8Rng, shape: PolyShape) -> Scalar {
    let mut out = Scalar::zero();
    for _ in 0..shape.terms {
        let m = random_mono(rng, shape.degree);
        let re = nonzero(rng, shape.coeff_bound);
        let im = if rng.gen_bool(0.5) { nonzero(rng, shape.coeff_bound) } else { 0 };
        out += Scalar::term(m, Coeff::gauss(re, im));
    }
    out
}

/// Real polynomial, never zero and never constant.
pub fn random_real_poly(rng: &mut ChaCha8Rng, shape: PolyShape) -> Scalar {
    loop {
        let p = random_poly(rng, shape);
        let r = (&p + &p.conj()) * Scalar::ratio(1, 2);
        if r.degree() > 0 {
            return r;
        }
    }
}

/// A conformal factor: real, nonconstant, degree at most `shape.degree`.
pub fn random_conformal_factor(rng: &mut ChaCha8Rng, shape: PolyShape) -> Scalar {
    random_real_poly(rng, shape)
}

/// `p σ^m` for a random nonzero complex polynomial `p`.
pub fn random_cutoff(rng: &mut ChaCha8Rng, shape: PolyShape, m: u32) -> Scalar {
    loop {
        let p = random_poly(rng, shape);
        if !p.is_zero() {
            return p * Scalar::sigma().pow(m);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_label_sensitive() {
        let s = PolyShape::default();
        let a = random_poly(&mut rng_for(7, "x", 0), s);
        let b = random_poly(&mut rng_for(7, "x", 0), s);
        assert_eq!(a.terms(), b.terms());
        let c = random_poly(&mut rng_for(7, "y", 0), s);
        let d = random_poly(&mut rng_for(7, "x", 1), s);
        assert!(a != c || a != d);
    }

    #[test]
    fn conformal_factors_are_real() {
        for case in 0..10 {
            let u = random_conformal_factor(&mut rng_for(1, "cf", case), PolyShape::default());
            assert!((&u - &u.conj()).is_zero());
            assert!(u.degree() <= 3);
        }
    }

    #[test]
    fn cutoff_carries_sigma() {
        let f = random_cutoff(&mut rng_for(1, "cut", 0), PolyShape::default(), 8);
        assert!(f.terms().iter().all(|(m, _)| m.sigma_exp() >= 8));
    }
}
