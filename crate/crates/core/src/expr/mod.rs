//! Exact scalar arithmetic: the differential ring every computation lives in.

mod coeff;
mod context;
mod integrate;
mod linsolve;
mod mono;
mod scalar;
mod sexpr;

pub use coeff::Coeff;
pub use context::Context;
pub use integrate::{integrate_ball, BallIntegral};
pub use linsolve::{solve, Fraction};
pub use mono::{Mono, Var};
pub use scalar::Scalar;
pub use sexpr::{from_sexpr, to_sexpr};
