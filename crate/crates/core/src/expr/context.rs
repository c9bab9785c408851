//! The derivation on scalars: coordinate partials with the chain rule for
//! the cutoff symbol and for `u = e^Y`.

use super::coeff::Coeff;
use super::mono::{Mono, Var};
use super::scalar::Scalar;
use crate::error::{Error, Result};
use std::sync::Arc;

/// Immutable differentiation context: at most one conformal factor `Y`.
#[derive(Debug)]
pub struct Context {
    upsilon: Option<Scalar>,
    grad: [Scalar; 5],
}

impl Context {
    pub fn plain() -> Arc<Context> {
        Arc::new(Context { upsilon: None, grad: Default::default() })
    }

    /// Register `Y`; it must be a real polynomial free of `u` and `sigma`.
    pub fn with_upsilon(upsilon: Scalar) -> Result<Arc<Context>> {
        if upsilon.has_u() || upsilon.has_sigma() || !upsilon.is_real() {
            return Err(Error::InvalidConformalFactor);
        }
        let plain = Context { upsilon: None, grad: Default::default() };
        let mut grad: [Scalar; 5] = Default::default();
        for v in Var::ALL {
            grad[v.index()] = plain.derive(&upsilon, v)?;
        }
        Ok(Arc::new(Context { upsilon: Some(upsilon), grad }))
    }

    pub fn upsilon(&self) -> Option<&Scalar> {
        self.upsilon.as_ref()
    }

    pub fn derive(&self, a: &Scalar, v: Var) -> Result<Scalar> {
        let mut plain = Vec::new();
        let mut via_sigma = Vec::new();
        let mut via_u = Vec::new();
        for (m, c) in a.terms() {
            let e = m.exp(v);
            if e > 0 {
                plain.push((m.lower(v), c.mul_int(e as i64)));
            }
            let s = m.sigma_exp();
            if s > 0 {
                via_sigma.push((m.lower_sigma(), c.mul_int(s as i64)));
            }
            let k = m.u_exp();
            if k != 0 {
                via_u.push((*m, c.mul_int(k as i64)));
            }
        }
        let mut out = Scalar::from_terms(plain);
        if !via_sigma.is_empty() {
            let (mono, coeff) = sigma_partial(v);
            out += Scalar::from_terms(via_sigma).mul_term(mono, &coeff);
        }
        if !via_u.is_empty() {
            if self.upsilon.is_none() {
                return Err(Error::MissingConformalFactor(v));
            }
            out += Scalar::from_terms(via_u) * &self.grad[v.index()];
        }
        Ok(out)
    }

    /// `d/dx_k = d/dz_k + d/dzb_k`.
    pub fn derive_x(&self, a: &Scalar, k: usize) -> Result<Scalar> {
        let (z, zb) = pair(k);
        Ok(self.derive(a, z)? + self.derive(a, zb)?)
    }

    /// `d/dy_k = i (d/dz_k - d/dzb_k)`.
    pub fn derive_y(&self, a: &Scalar, k: usize) -> Result<Scalar> {
        let (z, zb) = pair(k);
        Ok((self.derive(a, z)? - self.derive(a, zb)?).scale(&Coeff::I))
    }
}

fn pair(k: usize) -> (Var, Var) {
    match k {
        1 => (Var::Z1, Var::Zb1),
        2 => (Var::Z2, Var::Zb2),
        _ => panic!("coordinate index must be 1 or 2"),
    }
}

/// `d sigma / d v` as a single term.
fn sigma_partial(v: Var) -> (Mono, Coeff) {
    match v {
        Var::T => (Mono::var(Var::T), Coeff::int(-2)),
        other => (Mono::var(other.conj()), Coeff::int(-1)),
    }
}
