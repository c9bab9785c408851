use crate::error::HarnessError;
use rumin::expr::Scalar;
use rumin::fixture::PolyShape;
use rumin::mutation::Mutation;
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    ComplexProperty,
    StructureEquations,
    ConformalLaws,
    QOperators,
    ScalarQ,
    IntegralIdentities,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::ComplexProperty,
        Suite::StructureEquations,
        Suite::ConformalLaws,
        Suite::QOperators,
        Suite::ScalarQ,
        Suite::IntegralIdentities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ComplexProperty => "complex_property",
            Suite::StructureEquations => "structure_equations",
            Suite::ConformalLaws => "conformal_laws",
            Suite::QOperators => "q_operators",
            Suite::ScalarQ => "scalar_q",
            Suite::IntegralIdentities => "integral_identities",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Suite, HarnessError> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| HarnessError::UnknownSuite(s.to_string()))
    }
}

/// Everything a run depends on. Reports are a function of this value.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub degree: u32,
    pub cutoff: u32,
    pub suites: Vec<Suite>,
    pub cases: u64,
    pub numeric: bool,
    /// Restrict to these identity ids; empty means all.
    pub identities: Vec<String>,
    /// Conformal factors from a fixture file, used in place of random ones.
    pub factors: Vec<Scalar>,
    /// Record wall times. Off by default so reports are byte-stable.
    pub timings: bool,
    /// Stop scheduling work after the first failing case.
    pub fail_fast: bool,
    /// Test-only corruption of the engine.
    pub mutation: Option<Mutation>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            degree: 3,
            cutoff: 8,
            suites: Suite::ALL.to_vec(),
            cases: 5,
            numeric: false,
            identities: Vec::new(),
            factors: Vec::new(),
            timings: false,
            fail_fast: false,
            mutation: None,
        }
    }
}

impl SuiteConfig {
    pub fn shape(&self) -> PolyShape {
        PolyShape { degree: self.degree, terms: 3, coeff_bound: 3 }
    }

    pub fn only(mut self, ids: &[&str]) -> SuiteConfig {
        self.identities = ids.iter().map(|s| s.to_string()).collect();
        self
    }

    pub fn with_suites(mut self, suites: &[Suite]) -> SuiteConfig {
        self.suites = suites.to_vec();
        self
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.cases == 0 {
            return Err(HarnessError::InvalidConfig("case count must be positive".into()));
        }
        if self.degree == 0 {
            return Err(HarnessError::InvalidConfig("degree must be positive".into()));
        }
        if self.cutoff < 3 {
            return Err(HarnessError::InvalidConfig("cutoff exponent must be at least 3 for boundary terms to vanish".into()));
        }
        for id in &self.identities {
            if !crate::suites::registry().iter().any(|i| i.id == id) {
                return Err(HarnessError::UnknownIdentity(id.clone()));
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
pub struct ConfigEcho {
    pub seed: u64,
    pub degree: u32,
    pub cutoff: u32,
    pub suites: Vec<Suite>,
    pub cases: u64,
    pub numeric: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub identities: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub factors: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mutation: Option<String>,
}

impl From<&SuiteConfig> for ConfigEcho {
    fn from(c: &SuiteConfig) -> Self {
        ConfigEcho {
            seed: c.seed,
            degree: c.degree,
            cutoff: c.cutoff,
            suites: c.suites.clone(),
            cases: c.cases,
            numeric: c.numeric,
            identities: c.identities.clone(),
            factors: c.factors.iter().map(rumin::expr::to_sexpr).collect(),
            mutation: c.mutation.map(|m| m.name().to_string()),
        }
    }
}
