//! Sparse Laurent polynomials over the Gaussian rationals.

use super::coeff::Coeff;
use super::mono::{Mono, Var};
use rustc_hash::FxHashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// An element of `Q(i)[z, zb, t, sigma][u, 1/u]`.
///
/// Terms are kept sorted by monomial with nonzero coefficients. The cutoff
/// symbol `sigma` stands for `1 - |z1|^2 - |z2|^2 - t^2`; equality and
/// [`Scalar::is_zero`] substitute it before comparing.
#[derive(Clone, Default)]
pub struct Scalar {
    terms: Vec<(Mono, Coeff)>,
}

const HASH_THRESHOLD: usize = 2048;

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Scalar {
        Scalar::constant(Coeff::ONE)
    }

    pub fn i() -> Scalar {
        Scalar::constant(Coeff::I)
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::constant(Coeff::int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Scalar {
        Scalar::constant(Coeff::ratio(n, d))
    }

    pub fn constant(c: Coeff) -> Scalar {
        Scalar::term(Mono::ONE, c)
    }

    pub fn term(m: Mono, c: Coeff) -> Scalar {
        if c.is_zero() {
            Scalar::zero()
        } else {
            Scalar { terms: vec![(m, c)] }
        }
    }

    pub fn var(v: Var) -> Scalar {
        Scalar::term(Mono::var(v), Coeff::ONE)
    }

    /// Real coordinate `x_k = (z_k + zb_k)/2`, `k` in `{1, 2}`.
    pub fn x(k: usize) -> Scalar {
        let (z, zb) = holo_pair(k);
        (Scalar::var(z) + Scalar::var(zb)).scale(&Coeff::ratio(1, 2))
    }

    /// Real coordinate `y_k = (z_k - zb_k)/(2i)`.
    pub fn y(k: usize) -> Scalar {
        let (z, zb) = holo_pair(k);
        (Scalar::var(z) - Scalar::var(zb)).scale(&Coeff::from_big(0.into(), (-1).into(), 2.into()))
    }

    pub fn u_pow(k: i32) -> Scalar {
        Scalar::term(Mono::u_pow(k), Coeff::ONE)
    }

    pub fn sigma() -> Scalar {
        Scalar::term(Mono::sigma(), Coeff::ONE)
    }

    /// The polynomial that `sigma` abbreviates.
    pub fn sigma_polynomial() -> Scalar {
        let mut s = Scalar::one();
        for (z, zb) in [(Var::Z1, Var::Zb1), (Var::Z2, Var::Zb2)] {
            s -= Scalar::var(z) * Scalar::var(zb);
        }
        s - Scalar::var(Var::T) * Scalar::var(Var::T)
    }

    /// Build from unsorted terms with possible repeats.
    pub fn from_terms(mut terms: Vec<(Mono, Coeff)>) -> Scalar {
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(Mono, Coeff)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = last.1.add(&c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|t| !t.1.is_zero());
        Scalar { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, Coeff)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Structurally empty. Use [`Scalar::is_zero`] when `sigma` may occur.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_u(&self) -> bool {
        self.terms.iter().any(|(m, _)| m.u_exp() != 0)
    }

    pub fn has_sigma(&self) -> bool {
        self.terms.iter().any(|(m, _)| m.sigma_exp() != 0)
    }

    /// Zero test; exact because `u = e^Y` is transcendental over the
    /// polynomial ring for nonconstant `Y`.
    pub fn is_zero(&self) -> bool {
        if self.terms.is_empty() {
            return true;
        }
        if !self.has_sigma() {
            return false;
        }
        self.expand_sigma().terms.is_empty()
    }

    /// A single term whose monomial is a pure power of `u`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.without_u() == Mono::ONE
    }

    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(Coeff::ZERO),
            [(m, c)] if *m == Mono::ONE => Some(c.clone()),
            _ => None,
        }
    }

    /// Replace every `sigma^m` by the expanded polynomial power.
    pub fn expand_sigma(&self) -> Scalar {
        if !self.has_sigma() {
            return self.clone();
        }
        let mut groups: Vec<(u32, Vec<(Mono, Coeff)>)> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.sigma_exp();
            let stripped = (m.without_sigma(), c.clone());
            match groups.iter_mut().find(|g| g.0 == e) {
                Some(g) => g.1.push(stripped),
                None => groups.push((e, vec![stripped])),
            }
        }
        let base = Scalar::sigma_polynomial();
        let mut out = Scalar::zero();
        for (e, ts) in groups {
            out += Scalar::from_terms(ts) * base.pow(e);
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Scalar { terms: self.terms.iter().map(|(m, d)| (*m, d.mul(c))).collect() }
    }

    pub fn scale_int(&self, k: i64) -> Scalar {
        self.scale(&Coeff::int(k))
    }

    pub fn mul_term(&self, m: Mono, c: &Coeff) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(n, d)| (n.mul(m), d.mul(c))).collect() }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn conj(&self) -> Scalar {
        Scalar::from_terms(self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect())
    }

    pub fn is_real(&self) -> bool {
        (self - &self.conj()).is_zero()
    }

    pub fn max_u_exp(&self) -> Option<i32> {
        self.terms.iter().map(|t| t.0.u_exp()).max()
    }

    pub fn min_u_exp(&self) -> Option<i32> {
        self.terms.iter().map(|t| t.0.u_exp()).min()
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.coord_degree()).max().unwrap_or(0)
    }

    /// Split into coefficients of powers of `u`.
    pub fn u_parts(&self) -> Vec<(i32, Scalar)> {
        let mut parts: Vec<(i32, Vec<(Mono, Coeff)>)> = Vec::new();
        for (m, c) in &self.terms {
            let k = m.u_exp();
            let t = (m.without_u(), c.clone());
            match parts.iter_mut().find(|p| p.0 == k) {
                Some(p) => p.1.push(t),
                None => parts.push((k, vec![t])),
            }
        }
        parts.sort_by_key(|p| p.0);
        parts.into_iter().map(|(k, ts)| (k, Scalar::from_terms(ts))).collect()
    }

    fn merge(&self, o: &Scalar, negate: bool) -> Scalar {
        let (a, b) = (&self.terms, &o.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (ma, ca) = &a[i];
            let (mb, cb) = &b[j];
            if ma < mb {
                out.push((*ma, ca.clone()));
                i += 1;
            } else if mb < ma {
                out.push((*mb, if negate { cb.neg() } else { cb.clone() }));
                j += 1;
            } else {
                let c = if negate { ca.sub(cb) } else { ca.add(cb) };
                if !c.is_zero() {
                    out.push((*ma, c));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, if negate { c.neg() } else { c.clone() })));
        Scalar { terms: out }
    }

    fn product(&self, o: &Scalar) -> Scalar {
        let (a, b) = if self.terms.len() <= o.terms.len() { (self, o) } else { (o, self) };
        match a.terms.len() {
            0 => return Scalar::zero(),
            1 => {
                let (m, c) = &a.terms[0];
                return b.mul_term(*m, c);
            }
            _ => {}
        }
        let n = a.terms.len() * b.terms.len();
        if n <= HASH_THRESHOLD {
            let mut out = Vec::with_capacity(n);
            for (ma, ca) in &a.terms {
                for (mb, cb) in &b.terms {
                    out.push((ma.mul(*mb), ca.mul(cb)));
                }
            }
            return Scalar::from_terms(out);
        }
        let mut acc: FxHashMap<Mono, Coeff> = FxHashMap::default();
        acc.reserve(n / 2);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let c = ca.mul(cb);
                acc.entry(ma.mul(*mb)).and_modify(|e| *e = e.add(&c)).or_insert(c);
            }
        }
        let mut terms: Vec<(Mono, Coeff)> = acc.into_iter().filter(|t| !t.1.is_zero()).collect();
        terms.sort_unstable_by_key(|t| t.0);
        Scalar { terms }
    }

    /// Sum of many scalars in one pass.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
        let mut all = Vec::new();
        for s in items {
            all.extend(s.terms.iter().cloned());
        }
        Scalar::from_terms(all)
    }

    /// Exact quotient in the Laurent ring, or `None` if `d` does not divide.
    ///
    /// Both sides are `sigma`-expanded and shifted to nonnegative `u` degree,
    /// then divided by leading terms in degree-lexicographic order.
    pub fn div_exact(&self, d: &Scalar) -> Option<Scalar> {
        if d.is_zero() {
            return None;
        }
        if d.is_unit() {
            let (m, c) = &d.terms[0];
            let inv = Mono::u_pow(-m.u_exp());
            return Some(self.mul_term(inv, &c.inv()?));
        }
        let mut rem = self.expand_sigma();
        if rem.is_empty() {
            return Some(Scalar::zero());
        }
        let d = d.expand_sigma();
        let dshift = -d.min_u_exp()?;
        let rshift = -rem.min_u_exp()?;
        let d = d.mul_term(Mono::u_pow(dshift), &Coeff::ONE);
        rem = rem.mul_term(Mono::u_pow(rshift), &Coeff::ONE);
        let key = |m: &Mono| (m.coord_degree() + m.sigma_exp() + m.u_exp().max(0) as u32, *m);
        let lead = |s: &Scalar| s.terms.iter().max_by_key(|t| key(&t.0)).cloned();
        let (dm, dc) = lead(&d)?;
        let dinv = dc.inv()?;
        let mut quot = Vec::new();
        while let Some((rm, rc)) = lead(&rem) {
            if !dm.divides_mod_u(rm) || rm.u_exp() < dm.u_exp() {
                return None;
            }
            let qm = dm.quotient(rm);
            let qc = rc.mul(&dinv);
            rem -= d.mul_term(qm, &qc);
            quot.push((qm, qc));
        }
        let q = Scalar::from_terms(quot);
        Some(q.mul_term(Mono::u_pow(dshift - rshift), &Coeff::ONE))
    }
}

fn holo_pair(k: usize) -> (Var, Var) {
    match k {
        1 => (Var::Z1, Var::Zb1),
        2 => (Var::Z2, Var::Zb2),
        _ => panic!("coordinate index must be 1 or 2"),
    }
}

impl PartialEq for Scalar {
    fn eq(&self, o: &Scalar) -> bool {
        if !self.has_sigma() && !o.has_sigma() {
            return self.terms == o.terms;
        }
        (self - o).is_zero()
    }
}

impl Eq for Scalar {}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*{m:?}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::sexpr::to_sexpr(self))
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                $body(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                $body(&self, &o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                $body(&self, o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                $body(self, &o)
            }
        }
    };
}

binop!(Add, add, |a: &Scalar, b: &Scalar| a.merge(b, false));
binop!(Sub, sub, |a: &Scalar, b: &Scalar| a.merge(b, true));
binop!(Mul, mul, |a: &Scalar, b: &Scalar| a.product(b));

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self = if self.terms.is_empty() { o } else { self.merge(&o, false) };
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = self.merge(o, false);
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, o: Scalar) {
        *self = self.merge(&o, true);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = self.merge(o, true);
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.scale(&Coeff::int(-1))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.scale(&Coeff::int(-1))
    }
}

impl From<Coeff> for Scalar {
    fn from(c: Coeff) -> Scalar {
        Scalar::constant(c)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}
