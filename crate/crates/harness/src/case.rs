//! One randomized case of one identity: seeded data, recorded fixtures and
//! the first failing check.

use crate::config::SuiteConfig;
use crate::report::{FixtureRecord, Status};
use rumin::expr::{to_sexpr, Scalar, Var};
use rumin::fixture::{random_conformal_factor, random_cutoff, random_real_poly, rng_for, ChaCha8Rng, PolyShape};
use rumin::forms::FrameForm;
use rumin::geometry::{FrameTensor, PHStructure};
use rumin::pairing::PairingValue;
use rumin::rumin::{dbar, random_cutoff_form, random_form, Graded, PqForm};

/// Something whose difference can be tested for exact vanishing.
pub trait Residual {
    fn minus(&self, o: &Self) -> Self;
    /// First nonzero component, with a label for where it sits.
    fn witness(&self) -> Option<(String, Scalar)>;
}

fn first_entry(t: &FrameTensor, prefix: &str) -> Option<(String, Scalar)> {
    t.entries().find(|(_, v)| !v.is_zero()).map(|(i, v)| (format!("{prefix}{i:?}"), v.clone()))
}

impl Residual for Scalar {
    fn minus(&self, o: &Scalar) -> Scalar {
        self - o
    }
    fn witness(&self) -> Option<(String, Scalar)> {
        (!self.is_zero()).then(|| ("value".to_string(), self.clone()))
    }
}

impl Residual for FrameTensor {
    fn minus(&self, o: &FrameTensor) -> FrameTensor {
        self.sub(o)
    }
    fn witness(&self) -> Option<(String, Scalar)> {
        first_entry(self, "")
    }
}

impl Residual for PqForm {
    fn minus(&self, o: &PqForm) -> PqForm {
        self.sub(o)
    }
    fn witness(&self) -> Option<(String, Scalar)> {
        let (p, q) = self.bidegree();
        first_entry(self.primary(), &format!("({p},{q})"))
    }
}

impl Residual for Graded {
    fn minus(&self, o: &Graded) -> Graded {
        self.sub(o)
    }
    fn witness(&self) -> Option<(String, Scalar)> {
        self.parts().iter().find_map(Residual::witness)
    }
}

impl Residual for FrameForm {
    fn minus(&self, o: &FrameForm) -> FrameForm {
        self - o
    }
    fn witness(&self) -> Option<(String, Scalar)> {
        self.components().find(|(_, v)| !v.is_zero()).map(|(m, v)| (format!("mask {m:05b}"), v.clone()))
    }
}

impl Residual for PairingValue {
    fn minus(&self, o: &PairingValue) -> PairingValue {
        self.sub(o)
    }
    fn witness(&self) -> Option<(String, Scalar)> {
        (!self.is_zero()).then(|| ("coefficient of pi^2".to_string(), Scalar::constant(self.coefficient().clone())))
    }
}

pub struct Case<'a> {
    pub cfg: &'a SuiteConfig,
    pub index: u64,
    rng: ChaCha8Rng,
    pub fixtures: Vec<FixtureRecord>,
    pub status: Status,
}

impl<'a> Case<'a> {
    pub fn new(cfg: &'a SuiteConfig, id: &str, index: u64) -> Case<'a> {
        Case { cfg, index, rng: rng_for(cfg.seed, id, index), fixtures: Vec::new(), status: Status::ExactZero }
    }

    pub fn shape(&self) -> PolyShape {
        self.cfg.shape()
    }

    pub fn failed(&self) -> bool {
        !matches!(self.status, Status::ExactZero | Status::Advisory { .. })
    }

    fn record(&mut self, name: &str, kind: &str, values: Vec<String>) {
        self.fixtures.push(FixtureRecord { name: name.to_string(), kind: kind.to_string(), components: values });
    }

    fn record_scalar(&mut self, name: &str, kind: &str, a: &Scalar) {
        self.record(name, kind, vec![to_sexpr(a)]);
    }

    fn record_form(&mut self, name: &str, w: &PqForm) {
        let (p, q) = w.bidegree();
        self.record(name, &format!("pq-form({p},{q})"), w.primary().components().iter().map(to_sexpr).collect());
    }

    /// A conformal factor of degree at most the configured degree, or the
    /// fixture-file factor for this case.
    pub fn factor(&mut self, name: &str) -> Scalar {
        let u = if self.cfg.factors.is_empty() {
            random_conformal_factor(&mut self.rng, self.cfg.shape())
        } else {
            self.cfg.factors[(self.index as usize) % self.cfg.factors.len()].clone()
        };
        self.record_scalar(name, "conformal-factor", &u);
        u
    }

    /// A factor plus a Heisenberg weight-six term, so that sixth-order
    /// operators do not annihilate it.
    pub fn weighted_factor(&mut self, name: &str) -> Scalar {
        let base = if self.cfg.factors.is_empty() {
            random_conformal_factor(&mut self.rng, self.cfg.shape())
        } else {
            self.cfg.factors[(self.index as usize) % self.cfg.factors.len()].clone()
        };
        let (z, zb, t) = (Scalar::var(Var::Z1), Scalar::var(Var::Zb1), Scalar::var(Var::T));
        let u = base + (&(&z * &zb) * &(&t * &t)).scale_int(self.index as i64 + 1);
        self.record_scalar(name, "conformal-factor", &u);
        u
    }

    pub fn flat(&self) -> PHStructure {
        self.mutate(PHStructure::flat())
    }

    fn mutate(&self, s: PHStructure) -> PHStructure {
        if self.cfg.mutation.is_some() {
            s.with_mutation(self.cfg.mutation).expect("mutation rebuilds a valid structure")
        } else {
            s
        }
    }

    /// `e^{nΥ₀}θ₀` on the shared ring of `Υ₀`.
    pub fn power(&self, u: &Scalar, n: i32) -> rumin::Result<PHStructure> {
        Ok(self.mutate(PHStructure::power(u, n)?))
    }

    pub fn rescaled(&self, u: &Scalar) -> rumin::Result<PHStructure> {
        PHStructure::rescale(&self.flat(), u)
    }

    /// `θ = e^{aΥ}θ₀` and `θ̂ = e^Υθ` with `a` alternating between cases.
    pub fn pair(&self, u: &Scalar) -> rumin::Result<(PHStructure, PHStructure)> {
        let a = (self.index % 2) as i32;
        Ok((self.power(u, a)?, self.power(u, a + 1)?))
    }

    pub fn form(&mut self, name: &str, s: &PHStructure, p: u8, q: u8) -> rumin::Result<PqForm> {
        let w = random_form(&mut self.rng, s, p, q, self.cfg.shape())?;
        self.record_form(name, &w);
        Ok(w)
    }

    pub fn function(&mut self, name: &str) -> PqForm {
        let f = random_real_poly(&mut self.rng, self.cfg.shape());
        self.record_scalar(name, "function", &f);
        PqForm::function(f)
    }

    pub fn cutoff_function(&mut self, name: &str) -> PqForm {
        let f = random_cutoff(&mut self.rng, self.cfg.shape(), self.cfg.cutoff);
        self.record_scalar(name, "cutoff-function", &f);
        PqForm::function(f)
    }

    pub fn cutoff_form(&mut self, name: &str, s: &PHStructure, p: u8, q: u8) -> rumin::Result<PqForm> {
        let w = random_cutoff_form(&mut self.rng, s, p, q, self.cfg.shape(), self.cfg.cutoff)?;
        self.record_form(name, &w);
        Ok(w)
    }

    /// `∂̄_b` of a cutoff function.
    pub fn closed_cutoff(&mut self, name: &str, s: &PHStructure) -> rumin::Result<PqForm> {
        let f = self.cutoff_function(name);
        dbar(s, &f)
    }

    pub fn real_poly(&mut self, name: &str) -> Scalar {
        let f = random_real_poly(&mut self.rng, self.cfg.shape());
        self.record_scalar(name, "function", &f);
        f
    }

    fn fail(&mut self, status: Status) {
        if !self.failed() {
            self.status = status;
        }
    }

    pub fn zero<T: Residual>(&mut self, check: &str, r: &T) {
        if let Some((component, w)) = r.witness() {
            self.fail(Status::Nonzero { check: check.to_string(), component, witness: to_sexpr(&w), lhs: None, rhs: None });
        }
    }

    pub fn equal<T: Residual>(&mut self, check: &str, lhs: &T, rhs: &T) {
        self.zero(check, &lhs.minus(rhs));
    }

    /// Equality that reports both sides when it fails.
    pub fn equal_sides(&mut self, check: &str, lhs: &Scalar, rhs: &Scalar) {
        let r = lhs - rhs;
        if !r.is_zero() {
            self.fail(Status::Nonzero {
                check: check.to_string(),
                component: "value".into(),
                witness: to_sexpr(&r),
                lhs: Some(to_sexpr(lhs)),
                rhs: Some(to_sexpr(rhs)),
            });
        }
    }

    /// A condition that is not an equation, such as positivity or a
    /// nontriviality guard; `value` is what was observed.
    pub fn holds(&mut self, check: &str, ok: bool, value: &Scalar) {
        if !ok {
            self.fail(Status::Violated { check: check.to_string(), witness: to_sexpr(value) });
        }
    }

    pub fn advisory(&mut self, check: &str, agree: bool, detail: String) {
        if !self.failed() {
            self.status = Status::Advisory { check: check.to_string(), agree, detail };
        }
    }
}
