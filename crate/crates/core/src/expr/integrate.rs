//! Exact integration over the unit ball of R^5.

use super::coeff::Coeff;
use super::mono::Var;
use super::scalar::Scalar;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};
use std::fmt;

/// The exact value `q * pi^2` of a ball integral, `q` Gaussian rational.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BallIntegral(pub Coeff);

impl BallIntegral {
    pub fn zero() -> BallIntegral {
        BallIntegral(Coeff::ZERO)
    }

    /// Coefficient of `pi^2`.
    pub fn coefficient(&self) -> &Coeff {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, o: &BallIntegral) -> BallIntegral {
        BallIntegral(self.0.add(&o.0))
    }

    pub fn sub(&self, o: &BallIntegral) -> BallIntegral {
        BallIntegral(self.0.sub(&o.0))
    }

    pub fn scale(&self, c: &Coeff) -> BallIntegral {
        BallIntegral(self.0.mul(c))
    }

    pub fn conj(&self) -> BallIntegral {
        BallIntegral(self.0.conj())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        let (re, im) = self.0.to_f64_pair();
        let p2 = std::f64::consts::PI * std::f64::consts::PI;
        (re * p2, im * p2)
    }
}

impl fmt::Display for BallIntegral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*pi^2", self.0)
    }
}

impl Serialize for BallIntegral {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `∫_{B^5} |z1|^{2a} |z2|^{2b} t^{2c} sigma^m dV / pi^2`, via the Dirichlet
/// integral over the simplex in `(|z1|^2, |z2|^2, t^2)`.
fn monomial_integral(a: u32, b: u32, c: u32, m: u32) -> BigRational {
    let n = a + b + c + m + 3;
    let mut q = BigRational::from_integer(factorial(a) * factorial(b) * factorial(m));
    for j in c..n {
        q *= BigRational::new(2.into(), (2 * j + 1).into());
    }
    q
}

/// Integrate against `dx1 dy1 dx2 dy2 dt` over the closed unit ball.
pub fn integrate_ball(a: &Scalar) -> Result<BallIntegral> {
    if a.has_u() {
        return Err(Error::UBearingIntegrand);
    }
    let mut re = BigRational::zero();
    let mut im = BigRational::zero();
    for (mono, coeff) in a.terms() {
        let (e1, e2, f1, f2, t) =
            (mono.exp(Var::Z1), mono.exp(Var::Z2), mono.exp(Var::Zb1), mono.exp(Var::Zb2), mono.exp(Var::T));
        if e1 != f1 || e2 != f2 || t % 2 == 1 {
            continue;
        }
        let q = monomial_integral(e1, e2, t / 2, mono.sigma_exp());
        re += coeff.re() * &q;
        im += coeff.im() * q;
    }
    Ok(BallIntegral(Coeff::from_rationals(&re, &im)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_terms_vanish() {
        assert!(integrate_ball(&Scalar::x(1)).unwrap().is_zero());
        assert!(integrate_ball(&(Scalar::var(Var::T) * Scalar::sigma().pow(3))).unwrap().is_zero());
    }

    #[test]
    fn rejects_u() {
        assert!(integrate_ball(&Scalar::u_pow(1)).is_err());
    }

    #[test]
    fn sigma_symbol_agrees_with_expansion() {
        let a = Scalar::var(Var::Z1) * Scalar::var(Var::Zb1) * Scalar::sigma().pow(4);
        assert_eq!(integrate_ball(&a).unwrap(), integrate_ball(&a.expand_sigma()).unwrap());
    }
}
