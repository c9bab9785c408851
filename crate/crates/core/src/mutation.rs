//! Deliberate single-term corruptions, used only to check that the suites
//! are sensitive. A structure built with a mutation propagates it to every
//! operator evaluated against it.

use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Mutation {
    /// Sign of the trace correction in the low-degree `∂_b` frame formula.
    DbLowTrace,
    /// Sign of the trace correction in the low-degree `∂̄_b` frame formula.
    DbarLowTrace,
    /// Sign of the `∇_α ∇^μ` term in the middle-degree `∂₀`.
    MidD0Term,
    /// Sign of the torsion term in the middle-degree `∂_b`.
    MidTorsion,
    /// Overall sign of the high-degree `∂̄_b`.
    HighDbar,
    /// Sign of the Hodge star on the low regime.
    StarSign,
    /// Sign of the Lee form.
    LeeSign,
    /// Sign of the `2ℓ ⋏ ω` term in the fourth-order operator.
    LeeCoupling,
    /// Sign of the scalar-curvature term in the Schouten tensor.
    SchoutenTrace,
    /// Sign of the first θ-correction in the low-degree realization.
    RealizeCorrection,
    /// Sign of the closed-form (1,1)×(1,1) product.
    WedgeClosedForm,
    /// Sign of the divergence term in the frame `∂_b^*`.
    AdjointFrame,
}

impl Mutation {
    pub const ALL: [Mutation; 12] = [
        Mutation::DbLowTrace,
        Mutation::DbarLowTrace,
        Mutation::MidD0Term,
        Mutation::MidTorsion,
        Mutation::HighDbar,
        Mutation::StarSign,
        Mutation::LeeSign,
        Mutation::LeeCoupling,
        Mutation::SchoutenTrace,
        Mutation::RealizeCorrection,
        Mutation::WedgeClosedForm,
        Mutation::AdjointFrame,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutation::DbLowTrace => "db-low-trace",
            Mutation::DbarLowTrace => "dbbar-low-trace",
            Mutation::MidD0Term => "mid-d0-term",
            Mutation::MidTorsion => "mid-torsion",
            Mutation::HighDbar => "high-dbbar",
            Mutation::StarSign => "star-sign",
            Mutation::LeeSign => "lee-sign",
            Mutation::LeeCoupling => "lee-coupling",
            Mutation::SchoutenTrace => "schouten-trace",
            Mutation::RealizeCorrection => "realize-correction",
            Mutation::WedgeClosedForm => "wedge-closed-form",
            Mutation::AdjointFrame => "adjoint-frame",
        }
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mutation {
    type Err = String;
    fn from_str(s: &str) -> Result<Mutation, String> {
        Mutation::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| format!("unknown mutation {s}"))
    }
}

/// `-1` when `m` is active, else `1`.
pub(crate) fn sign(active: Option<Mutation>, m: Mutation) -> i64 {
    if active == Some(m) {
        -1
    } else {
        1
    }
}
