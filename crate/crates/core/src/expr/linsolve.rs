//! Fractions over the scalar ring and Gauss-Jordan elimination.

use super::scalar::Scalar;
use crate::error::{Error, Result};

/// `num / den` with a scalar denominator, reduced whenever division is exact.
#[derive(Clone, Debug)]
pub struct Fraction {
    num: Scalar,
    den: Scalar,
}

impl Fraction {
    pub fn new(num: Scalar, den: Scalar) -> Result<Fraction> {
        if den.is_zero() {
            return Err(Error::SingularSystem);
        }
        Ok(Fraction::reduce(num, den))
    }

    fn reduce(num: Scalar, den: Scalar) -> Fraction {
        if num.is_empty() {
            return Fraction::from(Scalar::zero());
        }
        if den == Scalar::one() {
            return Fraction { num, den };
        }
        match num.div_exact(&den) {
            Some(q) => Fraction { num: q, den: Scalar::one() },
            None => Fraction { num, den },
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn is_unit(&self) -> bool {
        self.num.is_unit() && self.den.is_unit()
    }

    fn weight(&self) -> usize {
        self.num.len() + self.den.len()
    }

    pub fn add(&self, o: &Fraction) -> Fraction {
        if self.den == o.den {
            return Fraction::reduce(&self.num + &o.num, self.den.clone());
        }
        Fraction::reduce(&self.num * &o.den + &o.num * &self.den, &self.den * &o.den)
    }

    pub fn sub(&self, o: &Fraction) -> Fraction {
        self.add(&Fraction { num: -&o.num, den: o.den.clone() })
    }

    pub fn mul(&self, o: &Fraction) -> Fraction {
        Fraction::reduce(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn div(&self, o: &Fraction) -> Result<Fraction> {
        if o.is_zero() {
            return Err(Error::SingularSystem);
        }
        Ok(Fraction::reduce(&self.num * &o.den, &self.den * &o.num))
    }

    /// The ring element this fraction equals, if it is one.
    pub fn into_scalar(self) -> Result<Scalar> {
        if self.den == Scalar::one() {
            return Ok(self.num);
        }
        self.num.div_exact(&self.den).ok_or(Error::NotInRing)
    }
}

impl From<Scalar> for Fraction {
    fn from(s: Scalar) -> Fraction {
        Fraction { num: s, den: Scalar::one() }
    }
}

/// Solve `A X = B` for possibly overdetermined `A` (rows x n) with full
/// column rank. Every solution entry must lie in the Laurent ring; leftover
/// rows must be consistent.
pub fn solve(a: Vec<Vec<Scalar>>, b: Vec<Vec<Scalar>>) -> Result<Vec<Vec<Scalar>>> {
    let rows = a.len();
    assert_eq!(rows, b.len(), "row count mismatch");
    let n = a.first().map_or(0, Vec::len);
    let k = b.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Fraction>> = a
        .into_iter()
        .zip(b)
        .map(|(ra, rb)| ra.into_iter().chain(rb).map(Fraction::from).collect())
        .collect();
    let mut pivot_row_of = vec![usize::MAX; n];
    let mut next = 0;
    for col in 0..n {
        let pick = (next..rows)
            .filter(|&r| !m[r][col].is_zero())
            .min_by_key(|&r| (!m[r][col].is_unit(), m[r][col].weight()));
        let Some(p) = pick else { return Err(Error::SingularSystem) };
        m.swap(next, p);
        let piv = m[next][col].clone();
        for j in col..n + k {
            m[next][j] = m[next][j].div(&piv)?;
        }
        for r in 0..rows {
            if r == next || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in col..n + k {
                if m[next][j].is_zero() {
                    continue;
                }
                let t = f.mul(&m[next][j]);
                m[r][j] = m[r][j].sub(&t);
            }
        }
        pivot_row_of[col] = next;
        next += 1;
    }
    for row in m.iter().skip(next) {
        if row.iter().any(|e| !e.is_zero()) {
            return Err(Error::InconsistentSystem);
        }
    }
    (0..n)
        .map(|col| {
            let r = pivot_row_of[col];
            (0..k).map(|j| m[r][n + j].clone().into_scalar()).collect()
        })
        .collect()
}
