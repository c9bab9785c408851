//! Standalone fixtures: generation, JSON files with s-expression
//! components, and loading back.

use crate::error::HarnessError;
use rumin::expr::{from_sexpr, to_sexpr, Scalar};
use rumin::fixture::{random_conformal_factor, random_cutoff, random_real_poly, rng_for, PolyShape};
use rumin::geometry::PHStructure;
use rumin::rumin::{random_form, PqForm};
use serde::{Deserialize, Serialize};
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum FixtureKind {
    Function,
    PqForm { p: u8, q: u8 },
    ConformalFactor,
    CutoffFunction,
}

impl FromStr for FixtureKind {
    type Err = HarnessError;
    /// `function`, `conformal-factor`, `cutoff-function` or `pq-form(p,q)`.
    fn from_str(s: &str) -> Result<FixtureKind, HarnessError> {
        let bad = || HarnessError::InvalidConfig(format!("unknown fixture kind {s}"));
        match s {
            "function" => Ok(FixtureKind::Function),
            "conformal-factor" => Ok(FixtureKind::ConformalFactor),
            "cutoff-function" => Ok(FixtureKind::CutoffFunction),
            _ => {
                let inner = s.strip_prefix("pq-form(").and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
                let (p, q) = inner.split_once(',').ok_or_else(bad)?;
                let p = p.trim().parse().map_err(|_| bad())?;
                let q = q.trim().parse().map_err(|_| bad())?;
                Ok(FixtureKind::PqForm { p, q })
            }
        }
    }
}

/// A generated datum. Forms are stored by primary components, in
/// the engine's index order, at the flat structure.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub seed: u64,
    #[serde(flatten)]
    pub kind: FixtureKind,
    pub components: Vec<String>,
}

pub fn gen_fixture(seed: u64, kind: FixtureKind) -> Fixture {
    gen_fixture_with(seed, kind, PolyShape::default(), 8)
}

pub fn gen_fixture_with(seed: u64, kind: FixtureKind, shape: PolyShape, cutoff: u32) -> Fixture {
    let mut rng = rng_for(seed, "gen-fixture", 0);
    let components = match kind {
        FixtureKind::Function => vec![to_sexpr(&random_real_poly(&mut rng, shape))],
        FixtureKind::ConformalFactor => vec![to_sexpr(&random_conformal_factor(&mut rng, shape))],
        FixtureKind::CutoffFunction => vec![to_sexpr(&random_cutoff(&mut rng, shape, cutoff))],
        FixtureKind::PqForm { p, q } => match random_form(&mut rng, &PHStructure::flat(), p, q, shape) {
            Ok(w) => w.primary().components().iter().map(to_sexpr).collect(),
            Err(_) => Vec::new(),
        },
    };
    Fixture { seed, kind, components }
}

impl Fixture {
    fn malformed(&self, why: impl Into<String>) -> HarnessError {
        HarnessError::MalformedFixture(why.into())
    }

    pub fn scalars(&self) -> Result<Vec<Scalar>, HarnessError> {
        self.components.iter().map(|c| from_sexpr(c).map_err(|e| self.malformed(e.to_string()))).collect()
    }

    pub fn scalar(&self) -> Result<Scalar, HarnessError> {
        match self.scalars()?.as_slice() {
            [a] => Ok(a.clone()),
            _ => Err(self.malformed("expected exactly one component")),
        }
    }

    /// A conformal factor: real, without `u` or `σ`.
    pub fn conformal_factor(&self) -> Result<Scalar, HarnessError> {
        if self.kind != FixtureKind::ConformalFactor {
            return Err(self.malformed("not a conformal factor"));
        }
        let u = self.scalar()?;
        rumin::expr::Context::with_upsilon(u.clone()).map_err(|e| self.malformed(e.to_string()))?;
        Ok(u)
    }

    /// The form at the flat structure, trace condition checked.
    pub fn form(&self) -> Result<PqForm, HarnessError> {
        let FixtureKind::PqForm { p, q } = self.kind else {
            return Err(self.malformed("not a form"));
        };
        let comps = self.scalars()?;
        let zero = PqForm::zero(p, q).map_err(|e| self.malformed(e.to_string()))?;
        if zero.primary().components().len() != comps.len() {
            return Err(self.malformed("wrong number of components"));
        }
        let primary = rumin::geometry::FrameTensor::from_fn(zero.primary().slots(), |idx| comps[zero.primary().offset(idx)].clone());
        let w = PqForm::new(p, q, primary).map_err(|e| self.malformed(e.to_string()))?;
        w.validate(&PHStructure::flat()).map_err(|e| self.malformed(e.to_string()))?;
        Ok(w)
    }
}

/// A JSON array of fixtures, or a single fixture.
pub fn parse_fixtures(text: &str) -> Result<Vec<Fixture>, HarnessError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| HarnessError::MalformedFixture(e.to_string()))?;
    let list = if value.is_array() { value } else { serde_json::Value::Array(vec![value]) };
    let out: Vec<Fixture> = serde_json::from_value(list).map_err(|e| HarnessError::MalformedFixture(e.to_string()))?;
    for f in &out {
        f.scalars()?;
    }
    Ok(out)
}

/// Conformal factors from a fixture file.
pub fn load_factors(text: &str) -> Result<Vec<Scalar>, HarnessError> {
    let list = parse_fixtures(text)?;
    if list.is_empty() {
        return Err(HarnessError::MalformedFixture("no fixtures".into()));
    }
    list.iter().map(Fixture::conformal_factor).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conformal_factors_are_real() {
        for seed in 0..5 {
            let u = gen_fixture(seed, FixtureKind::ConformalFactor).conformal_factor().unwrap();
            assert!((&u - &u.conj()).is_zero());
        }
    }

    #[test]
    fn forms_pass_trace_validation() {
        for seed in 0..5 {
            let f = gen_fixture(seed, FixtureKind::PqForm { p: 1, q: 1 });
            assert!(!f.form().unwrap().is_zero());
        }
    }

    #[test]
    fn cutoffs_carry_the_sigma_factor() {
        let a = gen_fixture(3, FixtureKind::CutoffFunction).scalar().unwrap();
        assert!(a.terms().iter().all(|(m, _)| m.sigma_exp() >= 8));
    }

    #[test]
    fn round_trip_through_json() {
        let f = gen_fixture(9, FixtureKind::PqForm { p: 0, q: 2 });
        let text = serde_json::to_string(&vec![f.clone()]).unwrap();
        assert_eq!(parse_fixtures(&text).unwrap(), vec![f]);
        assert_eq!("pq-form(2, 1)".parse::<FixtureKind>().unwrap(), FixtureKind::PqForm { p: 2, q: 1 });
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(parse_fixtures("{").is_err());
        assert!(parse_fixtures(r#"{"seed":1,"kind":"function","components":["(add"]}"#).is_err());
        let complex = r#"{"seed":1,"kind":"conformal-factor","components":["i"]}"#;
        assert!(load_factors(complex).is_err());
    }
}
