//! Gaussian rational coefficients `(re + im·i) / den`.
//!
//! Small values live inline as `i64` triples; anything that overflows moves
//! to big integers and comes back once it fits again.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Coeff {
    Small { re: i64, im: i64, den: i64 },
    Big(Box<BigCoeff>),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BigCoeff {
    re: BigInt,
    im: BigInt,
    den: BigInt,
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

impl Coeff {
    pub const ZERO: Coeff = Coeff::Small { re: 0, im: 0, den: 1 };
    pub const ONE: Coeff = Coeff::Small { re: 1, im: 0, den: 1 };
    pub const I: Coeff = Coeff::Small { re: 0, im: 1, den: 1 };

    pub fn int(n: i64) -> Coeff {
        Coeff::Small { re: n, im: 0, den: 1 }
    }

    pub fn gauss(re: i64, im: i64) -> Coeff {
        Coeff::Small { re, im, den: 1 }
    }

    /// `num/den`; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Coeff {
        assert!(den != 0, "zero denominator");
        Coeff::from_i128(num as i128, 0, den as i128)
    }

    /// `(re + im i) / den` from arbitrary integers.
    pub fn from_big(re: BigInt, im: BigInt, den: BigInt) -> Coeff {
        assert!(!den.is_zero(), "zero denominator");
        normalize_big(re, im, den)
    }

    pub fn from_rationals(re: &BigRational, im: &BigRational) -> Coeff {
        let den = re.denom().lcm(im.denom());
        let r = re.numer() * (&den / re.denom());
        let i = im.numer() * (&den / im.denom());
        normalize_big(r, i, den)
    }

    fn from_i128(re: i128, im: i128, den: i128) -> Coeff {
        let (mut re, mut im, mut den) = (re, im, den);
        if den < 0 {
            match (re.checked_neg(), im.checked_neg(), den.checked_neg()) {
                (Some(a), Some(b), Some(c)) => {
                    re = a;
                    im = b;
                    den = c;
                }
                _ => return normalize_big(re.into(), im.into(), den.into()),
            }
        }
        if re == 0 && im == 0 {
            return Coeff::ZERO;
        }
        if den != 1 {
            let g = gcd_u128(gcd_u128(re.unsigned_abs(), im.unsigned_abs()), den as u128);
            if g > 1 {
                let g = g as i128;
                re /= g;
                im /= g;
                den /= g;
            }
        }
        match (i64::try_from(re), i64::try_from(im), i64::try_from(den)) {
            (Ok(re), Ok(im), Ok(den)) => Coeff::Small { re, im, den },
            _ => Coeff::Big(Box::new(BigCoeff { re: re.into(), im: im.into(), den: den.into() })),
        }
    }

    fn parts_big(&self) -> (BigInt, BigInt, BigInt) {
        match self {
            Coeff::Small { re, im, den } => ((*re).into(), (*im).into(), (*den).into()),
            Coeff::Big(b) => (b.re.clone(), b.im.clone(), b.den.clone()),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coeff::Small { re: 0, im: 0, .. })
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coeff::Small { re: 1, im: 0, den: 1 })
    }

    pub fn is_real(&self) -> bool {
        match self {
            Coeff::Small { im, .. } => *im == 0,
            Coeff::Big(b) => b.im.is_zero(),
        }
    }

    pub fn add(&self, o: &Coeff) -> Coeff {
        if let (Coeff::Small { re: a, im: b, den: d }, Coeff::Small { re: c, im: e, den: f }) = (self, o) {
            let (a, b, d, c, e, f) = (*a as i128, *b as i128, *d as i128, *c as i128, *e as i128, *f as i128);
            if d == f {
                return Coeff::from_i128(a + c, b + e, d);
            }
            let re = (a * f).checked_add(c * d);
            let im = (b * f).checked_add(e * d);
            if let (Some(re), Some(im)) = (re, im) {
                return Coeff::from_i128(re, im, d * f);
            }
        }
        let (a, b, d) = self.parts_big();
        let (c, e, f) = o.parts_big();
        normalize_big(&a * &f + &c * &d, &b * &f + &e * &d, d * f)
    }

    pub fn neg(&self) -> Coeff {
        match self {
            Coeff::Small { re, im, den } => Coeff::from_i128(-(*re as i128), -(*im as i128), *den as i128),
            Coeff::Big(b) => normalize_big(-b.re.clone(), -b.im.clone(), b.den.clone()),
        }
    }

    pub fn sub(&self, o: &Coeff) -> Coeff {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Coeff) -> Coeff {
        if let (Coeff::Small { re: a, im: b, den: d }, Coeff::Small { re: c, im: e, den: f }) = (self, o) {
            let (a, b, d, c, e, f) = (*a as i128, *b as i128, *d as i128, *c as i128, *e as i128, *f as i128);
            let re = (a * c).checked_sub(b * e);
            let im = (a * e).checked_add(b * c);
            if let (Some(re), Some(im)) = (re, im) {
                return Coeff::from_i128(re, im, d * f);
            }
        }
        let (a, b, d) = self.parts_big();
        let (c, e, f) = o.parts_big();
        normalize_big(&a * &c - &b * &e, &a * &e + &b * &c, d * f)
    }

    pub fn mul_int(&self, k: i64) -> Coeff {
        self.mul(&Coeff::int(k))
    }

    pub fn conj(&self) -> Coeff {
        match self {
            Coeff::Small { re, im, den } => Coeff::from_i128(*re as i128, -(*im as i128), *den as i128),
            Coeff::Big(b) => normalize_big(b.re.clone(), -b.im.clone(), b.den.clone()),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Coeff> {
        if self.is_zero() {
            return None;
        }
        let (a, b, d) = self.parts_big();
        let n = &a * &a + &b * &b;
        Some(normalize_big(&a * &d, -(&b * &d), n))
    }

    pub fn re(&self) -> BigRational {
        let (a, _, d) = self.parts_big();
        BigRational::new(a, d)
    }

    pub fn im(&self) -> BigRational {
        let (_, b, d) = self.parts_big();
        BigRational::new(b, d)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        let (a, b, d) = self.parts_big();
        let d = d.to_f64().unwrap_or(f64::NAN);
        (a.to_f64().unwrap_or(f64::NAN) / d, b.to_f64().unwrap_or(f64::NAN) / d)
    }
}

fn normalize_big(mut re: BigInt, mut im: BigInt, mut den: BigInt) -> Coeff {
    if den.is_negative() {
        re = -re;
        im = -im;
        den = -den;
    }
    if re.is_zero() && im.is_zero() {
        return Coeff::ZERO;
    }
    let g = re.gcd(&im).gcd(&den);
    if !g.is_one() {
        re /= &g;
        im /= &g;
        den /= &g;
    }
    match (re.to_i64(), im.to_i64(), den.to_i64()) {
        (Some(re), Some(im), Some(den)) => Coeff::Small { re, im, den },
        _ => Coeff::Big(Box::new(BigCoeff { re, im, den })),
    }
}

fn fmt_rat(f: &mut fmt::Formatter<'_>, n: &BigInt, d: &BigInt) -> fmt::Result {
    if d.is_one() {
        write!(f, "{n}")
    } else {
        write!(f, "{n}/{d}")
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, d) = self.parts_big();
        match (a.is_zero(), b.is_zero()) {
            (_, true) => fmt_rat(f, &a, &d),
            (true, false) => {
                fmt_rat(f, &b, &d)?;
                write!(f, "i")
            }
            (false, false) => {
                write!(f, "(")?;
                fmt_rat(f, &a, &d)?;
                write!(f, "{}", if b.is_negative() { "-" } else { "+" })?;
                fmt_rat(f, &b.abs(), &d)?;
                write!(f, "i)")
            }
        }
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_unit() {
        assert_eq!(Coeff::I.mul(&Coeff::I), Coeff::int(-1));
    }

    #[test]
    fn reduction_and_sign() {
        assert_eq!(Coeff::ratio(2, -4), Coeff::ratio(-1, 2));
        assert_eq!(Coeff::ratio(1, 2).add(&Coeff::ratio(1, 2)), Coeff::ONE);
        assert_eq!(Coeff::gauss(3, 4).inv().unwrap(), Coeff::from_big(3.into(), (-4).into(), 25.into()));
    }

    #[test]
    fn overflow_goes_big_and_returns() {
        let big = Coeff::int(i64::MAX);
        let sq = big.mul(&big);
        assert!(matches!(sq, Coeff::Big(_)));
        let back = sq.mul(&big.inv().unwrap());
        assert_eq!(back, big);
        let s = big.add(&big).sub(&big);
        assert_eq!(s, big);
        assert!(matches!(Coeff::int(i64::MIN).neg(), Coeff::Big(_)));
    }

    #[test]
    fn conj_involution() {
        let c = Coeff::from_big(5.into(), (-7).into(), 3.into());
        assert_eq!(c.conj().conj(), c);
        assert_eq!(c.mul(&c.conj()).im(), BigRational::zero());
    }
}
