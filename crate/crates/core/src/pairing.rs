//! Pointwise and integrated pairings: `⟨·,·⟩`, the L² product, the Serre
//! pairing and the Hermitian forms built from `L_{0,1}`, `Q_{0,1}` and the
//! scalar `L_{0,0}`.
//!
//! Exact integrals need a `u`-free integrand, which in practice means the
//! flat structure. The [`numeric`] submodule integrates anything in floating
//! point; its results are advisory.

use crate::error::{Error, Result};
use crate::expr::{integrate_ball, BallIntegral, Coeff, Scalar};
use crate::forms::{FrameForm, TOP};
use crate::geometry::PHStructure;
use crate::qops::{l00scal, l01, q01};
use crate::rumin::project::dtheta_pow;
use crate::rumin::{conj, dbar, rwedge, Graded, PqForm};

pub use crate::rumin::hermitian_inner;

/// An exact value `c·π²`, `c` Gaussian rational.
pub type PairingValue = BallIntegral;

/// Rows `dt, dz1, dz2, dzb1, dzb2` in the real coframe `dx1, dy1, dx2, dy2, dt`.
fn coordinate_rows() -> [[Coeff; 5]; 5] {
    let (o, l, i) = (Coeff::ZERO, Coeff::ONE, Coeff::I);
    let mi = i.neg();
    [
        [o.clone(), o.clone(), o.clone(), o.clone(), l.clone()],
        [l.clone(), i.clone(), o.clone(), o.clone(), o.clone()],
        [o.clone(), o.clone(), l.clone(), i.clone(), o.clone()],
        [l.clone(), mi.clone(), o.clone(), o.clone(), o.clone()],
        [o.clone(), o.clone(), l, mi, o],
    ]
}

fn determinant(m: &[[Coeff; 5]; 5]) -> Coeff {
    fn go(m: &[[Coeff; 5]; 5], row: usize, used: u8, sign: i64) -> Coeff {
        if row == 5 {
            return Coeff::int(sign);
        }
        let mut acc = Coeff::ZERO;
        let mut s = sign;
        for col in 0..5 {
            if used & (1 << col) != 0 {
                continue;
            }
            if !m[row][col].is_zero() {
                acc = acc.add(&m[row][col].mul(&go(m, row + 1, used | (1 << col), s)));
            }
            s = -s;
        }
        acc
    }
    go(m, 0, 0, 1)
}

/// `dt ∧ dz1 ∧ dz2 ∧ dzb1 ∧ dzb2 = c · dx1 ∧ dy1 ∧ dx2 ∧ dy2 ∧ dt`.
pub fn lebesgue_factor() -> Coeff {
    determinant(&coordinate_rows())
}

/// The density of an honest top form against `dx1 dy1 dx2 dy2 dt`.
pub fn lebesgue_density(s: &PHStructure, w: &FrameForm) -> Scalar {
    s.to_coord(w).get(TOP).scale(&lebesgue_factor())
}

/// `∫` of an honest top form over the ball.
pub fn integrate_frame_top(s: &PHStructure, w: &FrameForm) -> Result<PairingValue> {
    integrate_ball(&lebesgue_density(s, w))
}

/// `∫` of a Rumin 5-form.
pub fn integrate_top(s: &PHStructure, w: &PqForm) -> Result<PairingValue> {
    if w.degree() != 5 {
        let (p, q) = w.bidegree();
        return Err(Error::WrongBidegree { op: "integrate", p, q });
    }
    integrate_frame_top(s, &crate::rumin::realize(s, w)?)
}

fn integrate_graded(s: &PHStructure, g: &Graded) -> Result<PairingValue> {
    if g.degree() != 5 {
        return Err(Error::NotRumin(g.degree() as usize));
    }
    let mut out = PairingValue::zero();
    for part in g.parts().iter().filter(|x| !x.is_zero()) {
        out = out.add(&integrate_top(s, part)?);
    }
    Ok(out)
}

/// `θ ∧ dθ²` as an honest form.
pub fn volume_form(s: &PHStructure) -> FrameForm {
    FrameForm::wedge_of(&[0]).wedge(&dtheta_pow(s, 2))
}

/// `⟪ω, τ⟫ = ½∫⟨ω, τ⟩ θ ∧ dθ²`.
pub fn l2_inner(s: &PHStructure, w: &PqForm, t: &PqForm) -> Result<PairingValue> {
    let f = hermitian_inner(s, w, t)? * Scalar::ratio(1, 2);
    integrate_frame_top(s, &volume_form(s).scale(&f))
}

/// `∫ ω ⋏ τ̄` for complementary degrees.
pub fn serre_pair(s: &PHStructure, w: &PqForm, t: &PqForm) -> Result<PairingValue> {
    integrate_graded(s, &rwedge(s, w, &conj(t))?)
}

/// `𝔏_{0,1}(ω, τ) = ∫ ω ⋏ conj(L_{0,1}τ)`.
pub fn form_l01(s: &PHStructure, w: &PqForm, t: &PqForm) -> Result<PairingValue> {
    serre_pair(s, w, &l01(s, t)?)
}

fn require_dbar_closed(s: &PHStructure, w: &PqForm) -> Result<()> {
    if dbar(s, w)?.is_zero() {
        Ok(())
    } else {
        Err(Error::NotClosed("dbar_b"))
    }
}

/// `𝔔_{0,1}(ω, τ) = ∫ ω ⋏ conj(Q_{0,1}τ)` on `∂̄_b`-closed forms.
pub fn form_q01(s: &PHStructure, w: &PqForm, t: &PqForm) -> Result<PairingValue> {
    require_dbar_closed(s, w)?;
    require_dbar_closed(s, t)?;
    serre_pair(s, w, &q01(s, t)?)
}

/// `𝔏_{0,0}(φ, ψ) = ∫ φ ⋏ conj(L_{0,0}ψ)`.
pub fn form_l00(s: &PHStructure, f: &PqForm, g: &PqForm) -> Result<PairingValue> {
    serre_pair(s, f, &l00scal(s, g)?)
}

/// Floating-point quadrature over the unit ball. Advisory only.
pub mod numeric {
    use super::*;
    use crate::expr::Var;
    use gauss_quad::GaussLegendre;
    use num_complex::Complex64;
    use std::num::NonZeroUsize;

    pub const DEFAULT_NODES: usize = 16;

    /// Agreement at relative tolerance `1e-6`.
    pub fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= 1e-6 * a.norm().max(b.norm()).max(1e-12)
    }

    fn coeff(c: &Coeff) -> Complex64 {
        let (re, im) = c.to_f64_pair();
        Complex64::new(re, im)
    }

    /// Point `(t, z1, z2)`.
    pub fn evaluate(a: &Scalar, upsilon: Option<&Scalar>, t: f64, z: [Complex64; 2]) -> Result<Complex64> {
        let vals = [Complex64::new(t, 0.0), z[0], z[1], z[0].conj(), z[1].conj()];
        let sigma = 1.0 - z[0].norm_sqr() - z[1].norm_sqr() - t * t;
        let u = match upsilon {
            Some(y) => evaluate(y, None, t, z)?.re.exp(),
            None if a.has_u() => return Err(Error::UBearingIntegrand),
            None => 1.0,
        };
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in a.terms() {
            let mut v = coeff(c) * sigma.powi(m.sigma_exp() as i32) * u.powi(m.u_exp());
            for var in Var::ALL {
                v *= vals[var.index()].powu(m.exp(var));
            }
            acc += v;
        }
        Ok(acc)
    }

    /// One term `c t^e σ^m z1^a z̄1^b z2^c z̄2^d u^k`.
    struct Term {
        coeff: Complex64,
        t: i32,
        sigma: i32,
        radial: [i32; 2],
        freq: [i32; 2],
        u: i32,
    }

    fn compile(a: &Scalar) -> Vec<Term> {
        a.terms()
            .iter()
            .map(|(m, c)| {
                let e = |v: Var| m.exp(v) as i32;
                Term {
                    coeff: coeff(c),
                    t: e(Var::T),
                    sigma: m.sigma_exp() as i32,
                    radial: [e(Var::Z1) + e(Var::Zb1), e(Var::Z2) + e(Var::Zb2)],
                    freq: [e(Var::Z1) - e(Var::Zb1), e(Var::Z2) - e(Var::Zb2)],
                    u: m.u_exp(),
                }
            })
            .collect()
    }

    /// `∫_{B^5} a dx1 dy1 dx2 dy2 dt`, with `|z_k|² = s_k` on the simplex
    /// `s1 + s2 ≤ 1 − t²` and the trapezoid rule in the angles. Terms are
    /// collapsed per radial node by `u`-power and angular frequency.
    pub fn integrate(a: &Scalar, upsilon: Option<&Scalar>, nodes: usize) -> Result<Complex64> {
        if upsilon.is_none() && a.has_u() {
            return Err(Error::UBearingIntegrand);
        }
        let terms = compile(a);
        let n = NonZeroUsize::new(nodes.max(2)).expect("nonzero");
        let rule = GaussLegendre::new(n);
        let pairs = rule.as_node_weight_pairs();
        let angles = 2 * nodes;
        let dphi = std::f64::consts::TAU / angles as f64;
        let top = terms.iter().flat_map(|t| t.freq).map(i32::abs).max().unwrap_or(0);
        let phase = |m: i32, j: usize| Complex64::from_polar(1.0, (m * j as i32) as f64 * dphi);
        let table: Vec<Vec<Complex64>> = (-top..=top).map(|m| (0..angles).map(|j| phase(m, j)).collect()).collect();
        let mut acc = Complex64::new(0.0, 0.0);
        for &(t, wt) in pairs {
            let r2 = 1.0 - t * t;
            for &(xa, wa) in pairs {
                let a1 = 0.5 * (xa + 1.0);
                for &(xb, wb) in pairs {
                    let b1 = 0.5 * (xb + 1.0);
                    let s1 = r2 * a1;
                    let s2 = r2 * (1.0 - a1) * b1;
                    let sigma = 1.0 - s1 - s2 - t * t;
                    let w = wt * wa * wb * (r2 * r2 * (1.0 - a1) / 16.0) * dphi * dphi;
                    let r = [s1.sqrt(), s2.sqrt()];
                    let mut keyed: Vec<((i32, i32, i32), Complex64)> = terms
                        .iter()
                        .map(|x| {
                            let v = x.coeff * t.powi(x.t) * sigma.powi(x.sigma) * r[0].powi(x.radial[0]) * r[1].powi(x.radial[1]);
                            ((x.u, x.freq[0], x.freq[1]), v)
                        })
                        .collect();
                    keyed.sort_by_key(|k| k.0);
                    let mut grouped: Vec<((i32, i32, i32), Complex64)> = Vec::new();
                    for (k, v) in keyed {
                        match grouped.last_mut() {
                            Some(last) if last.0 == k => last.1 += v,
                            _ => grouped.push((k, v)),
                        }
                    }
                    for j in 0..angles {
                        let z1 = Complex64::from_polar(r[0], j as f64 * dphi);
                        for k in 0..angles {
                            let u = match upsilon {
                                Some(y) => {
                                    let z2 = Complex64::from_polar(r[1], k as f64 * dphi);
                                    evaluate(y, None, t, [z1, z2])?.re.exp()
                                }
                                None => 1.0,
                            };
                            let mut here = Complex64::new(0.0, 0.0);
                            for &((ku, m1, m2), v) in &grouped {
                                here += v * u.powi(ku) * table[(m1 + top) as usize][j] * table[(m2 + top) as usize][k];
                            }
                            acc += here * w;
                        }
                    }
                }
            }
        }
        Ok(acc)
    }

    /// Numeric `∫` of a Rumin 5-form in any structure.
    pub fn integrate_top(s: &PHStructure, w: &PqForm, nodes: usize) -> Result<Complex64> {
        let honest = crate::rumin::realize(s, w)?;
        integrate(&lebesgue_density(s, &honest), s.context().upsilon(), nodes)
    }

    /// Numeric `∫ ω ⋏ τ̄`.
    pub fn serre_pair(s: &PHStructure, w: &PqForm, t: &PqForm, nodes: usize) -> Result<Complex64> {
        let g = rwedge(s, w, &conj(t))?;
        let mut acc = Complex64::new(0.0, 0.0);
        for part in g.parts().iter().filter(|x| !x.is_zero()) {
            acc += integrate_top(s, part, nodes)?;
        }
        Ok(acc)
    }

    /// Numeric `𝔔_{0,1}`.
    pub fn form_q01(s: &PHStructure, w: &PqForm, t: &PqForm, nodes: usize) -> Result<Complex64> {
        require_dbar_closed(s, w)?;
        require_dbar_closed(s, t)?;
        serre_pair(s, w, &q01(s, t)?, nodes)
    }

    /// The exact value as a complex number.
    pub fn exact(v: &PairingValue) -> Complex64 {
        let (re, im) = v.to_f64();
        Complex64::new(re, im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobian_of_complex_coordinates() {
        assert_eq!(lebesgue_factor(), Coeff::int(4));
    }

    #[test]
    fn quadrature_matches_exact_moments() {
        let a = Scalar::var(crate::expr::Var::Z1) * Scalar::var(crate::expr::Var::Zb1) * Scalar::sigma().pow(3);
        let exact = numeric::exact(&integrate_ball(&a).unwrap());
        let approx = numeric::integrate(&a, None, 12).unwrap();
        assert!(numeric::close(exact, approx), "{exact} vs {approx}");
    }
}
