//! The fourth-order operator `𝒟`, the Q-curvature operators built from it,
//! and the scalar invariants, each with a second path where one exists.

use crate::error::{Error, Result};
use crate::expr::Scalar;
use crate::geometry::{FrameTensor, PHStructure, Slot};
use crate::mutation::Mutation;
use crate::rumin::{
    conj, d, d0, db, db_adjoint, dbar, dbar_adjoint, hodge_star, krwedge, lee_form, Graded, PqForm,
};
use serde::Serialize;

/// Which computation produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Path {
    Definition,
    Frame,
}

fn expect(w: &PqForm, op: &'static str, p: u8, q: u8) -> Result<()> {
    if w.bidegree() == (p, q) {
        Ok(())
    } else {
        Err(Error::WrongBidegree { op, p: w.p(), q: w.q() })
    }
}

/// `(∂_b∂_b^* + ∂̄_b∂̄_b^* + c)ω` on `𝒭^{1,1}`.
fn laplace_part(s: &PHStructure, w: &PqForm, c: &Scalar) -> Result<PqForm> {
    let a = db(s, &db_adjoint(s, w)?)?;
    let b = dbar(s, &dbar_adjoint(s, w)?)?;
    Ok(a.add(&b).add(&w.scale(c)))
}

/// `2ℓ ⋏ ω`, the term the Lee form contributes to `𝒟`.
fn lee_term(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    Ok(krwedge(s, &lee_form(s), w)?.scale_int(2 * s.sign(Mutation::LeeCoupling)))
}

/// `D = ⋆(∂_b∂_b^* + ∂̄_b∂̄_b^* + P) : 𝒭^{1,1} → 𝒭^{2,1}`.
pub fn d_second_order(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    expect(w, "D", 1, 1)?;
    hodge_star(s, &laplace_part(s, w, s.schouten_trace())?)
}

/// `∇_α∇^μω_{μβ̄} + ∇_β̄∇^ν̄ω_{αν̄} − h_{αβ̄}∇^μ∇^ν̄ω_{μν̄} − Pω_{αβ̄}`.
fn second_order_tensor(s: &PHStructure, w: &FrameTensor) -> Result<FrameTensor> {
    let a = s.nabla(&s.div_hol(w, 0)?, Slot::Hol)?.permute(&[1, 0]);
    let b = s.nabla(&s.div_antihol(w, 1)?, Slot::AntiHol)?;
    let c = s.div_hol(&s.div_antihol(w, 1)?, 0)?;
    Ok(a.add(&b).sub(&s.levi_tensor().scale(c.get(&[]))).sub(&w.scale(s.schouten_trace())))
}

/// `D` by its frame expression; the `(2,1)` primary part is the coefficient
/// of `θ ∧ θ^α ∧ θ^β̄`.
pub fn d_second_order_frame(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    expect(w, "D", 1, 1)?;
    PqForm::new(2, 1, second_order_tensor(s, w.primary())?)
}

/// `𝒟ω = ⋆∂_b^*(∂_b∂_b^* + ∂̄_b∂̄_b^* + P)ω + 2ℓ ⋏ ω`.
pub fn m_d(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    expect(w, "mD", 1, 1)?;
    let inner = laplace_part(s, w, s.schouten_trace())?;
    Ok(hodge_star(s, &db_adjoint(s, &inner)?)?.add(&lee_term(s, w)?))
}

/// `𝒟ω = ∂̄_b Dω + 2ℓ ⋏ ω`.
pub fn m_d_via_d(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    Ok(dbar(s, &d_second_order(s, w)?)?.add(&lee_term(s, w)?))
}

/// `ω_{μν̄} τ^{ν̄μ}`.
fn pair(s: &PHStructure, w: &FrameTensor, t: &FrameTensor) -> Scalar {
    s.trace2(&s.contract(w, 1, t, 0))
}

/// `𝒟` by its frame expression, as the coefficient of `θ ∧ θ^β̄ ∧ dθ`.
pub fn m_d_frame(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    expect(w, "mD", 1, 1)?;
    let om = w.primary();
    let e = s.einstein();
    let y = s.div_hol(&second_order_tensor(s, om)?, 0)?;
    let ee = s.nabla(&FrameTensor::scalar(pair(s, e, om)), Slot::AntiHol)?;
    let x = s.contract(&s.div_hol(om, 0)?, 0, e, 0);
    let z = s.contract(&s.div_hol(e, 0)?, 0, om, 0);
    let total = y.add(&ee).add(&x.scale_int(2)).add(&z.scale_int(2));
    PqForm::new(2, 2, total.scale(&-Scalar::i()))
}

/// `𝒟̄ω = conj(𝒟 conj ω)`, in `𝒭^{3,1}`.
pub fn m_d_bar(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    Ok(conj(&m_d(s, &conj(w))?))
}

fn degree_four(a: PqForm, b: PqForm) -> Graded {
    let mut g = Graded::from_form(a);
    g.insert(b);
    g
}

/// `Q_{1,1}^d = −i𝒟̄ + i𝒟`.
pub fn q11d(s: &PHStructure, w: &PqForm) -> Result<Graded> {
    let i = Scalar::i();
    Ok(degree_four(m_d_bar(s, w)?.scale(&-i.clone()), m_d(s, w)?.scale(&i)))
}

/// `R_{1,1}^d = 𝒟̄ + 𝒟`.
pub fn r11d(s: &PHStructure, w: &PqForm) -> Result<Graded> {
    Ok(degree_four(m_d_bar(s, w)?, m_d(s, w)?))
}

/// `R_{1,1}^d = d⋆(∂_b∂_b^* + ∂̄_b∂̄_b^* + P)ω + 2ℓ ⋏ ω`, with the full
/// product.
pub fn r11d_expanded(s: &PHStructure, w: &PqForm) -> Result<Graded> {
    let lee = crate::rumin::rwedge(s, &lee_form(s), w)?.scale(&Scalar::int(2));
    Ok(d(s, &d_second_order(s, w)?)?.add(&lee))
}

/// `L_{1,1}^{BC} = d∂₀`.
pub fn l11bc(s: &PHStructure, w: &PqForm) -> Result<Graded> {
    expect(w, "L11BC", 1, 1)?;
    d(s, &d0(s, w)?)
}

/// `Q_{0,1} ω = 𝒟∂_bω − ∂_b(ω ⋏ ℓ)`.
pub fn q01(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    expect(w, "Q01", 0, 1)?;
    let tail = db(s, &krwedge(s, w, &lee_form(s))?)?;
    Ok(m_d(s, &db(s, w)?)?.sub(&tail))
}

/// The expanded form with the curvature term written through `R/6`:
/// `⋆∂_b^*(∂_b∂_b^* + ∂̄_b∂̄_b^* + R/6)∂_bω + 2ℓ ⋏ ∂_bω − ∂_b(ω ⋏ ℓ)`.
pub fn q01_expanded(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    expect(w, "Q01", 0, 1)?;
    let dw = db(s, w)?;
    let r6 = s.scalar_curvature() * &Scalar::ratio(1, 6);
    let main = hodge_star(s, &db_adjoint(s, &laplace_part(s, &dw, &r6)?)?)?;
    let lee = krwedge(s, &lee_form(s), &dw)?.scale_int(2);
    let tail = db(s, &krwedge(s, w, &lee_form(s))?)?;
    Ok(main.add(&lee).sub(&tail))
}

/// `L_{0,1} = i∂_b∂̄_b∂_b`.
pub fn l01(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    expect(w, "L01", 0, 1)?;
    Ok(db(s, &dbar(s, &db(s, w)?)?)?.scale(&Scalar::i()))
}

/// `i∂_b∂̄_b f`, the basic d-closed `(1,1)`-form.
pub fn ddbar(s: &PHStructure, f: &PqForm) -> Result<PqForm> {
    expect(f, "ddbar", 0, 0)?;
    Ok(db(s, &dbar(s, f)?)?.scale(&Scalar::i()))
}

/// `d` on degree four lands in `𝒭^{3,2}`.
fn top_d(s: &PHStructure, g: &Graded) -> Result<PqForm> {
    d(s, g.part(3, 1)?)?.add(&d(s, g.part(2, 2)?)?).only("d", 3, 2)
}

/// `L_{0,0}^{scal} f = i d Q_{1,1}^d ∂_b∂̄_b f`.
pub fn l00scal(s: &PHStructure, f: &PqForm) -> Result<PqForm> {
    expect(f, "L00scal", 0, 0)?;
    let dd = db(s, &dbar(s, f)?)?;
    Ok(top_d(s, &q11d(s, &dd)?)?.scale(&Scalar::i()))
}

/// `L_{0,0}^{scal} f = −2∂_b Q_{0,1} ∂̄_b f`.
pub fn l00scal_via_q01(s: &PHStructure, f: &PqForm) -> Result<PqForm> {
    expect(f, "L00scal", 0, 0)?;
    Ok(db(s, &q01(s, &dbar(s, f)?)?)?.scale_int(-2))
}

/// `Q_{0,0}^{scal} = d Q_{1,1}^d ℓ`.
pub fn q00scal(s: &PHStructure) -> Result<PqForm> {
    top_d(s, &q11d(s, &lee_form(s))?)
}

fn real_part(f: &Scalar) -> Scalar {
    (f + &f.conj()) * Scalar::ratio(1, 2)
}

/// The frame expression of the Fefferman-Hirachi Q-curvature:
/// `Q_FH/8 = 2Re ∇^μ∇^ν̄(∇_μ∇^γE_{γν̄} + ∇_ν̄∇^σ̄E_{μσ̄} − h_{μν̄}∇^γ∇^σ̄E_{γσ̄} − PE_{μν̄})
/// + 2Re ∇^γ(∇_γ(E_{μν̄}E^{ν̄μ}) + 4E_γ^μ∇^ν̄E_{μν̄})`.
pub fn qfh_frame(s: &PHStructure) -> Result<Scalar> {
    let e = s.einstein();
    let y = second_order_tensor(s, e)?;
    let a = s.div_hol(&s.div_antihol(&y, 1)?, 0)?;
    let b = s.div_hol(&quadratic_vector(s)?, 0)?;
    Ok(real_part(&(a.get(&[]) + b.get(&[]))).scale_int(16))
}

/// `∇_γ(E_{μν̄}E^{ν̄μ}) + 4E_γ^μ∇^ν̄E_{μν̄}`.
fn quadratic_vector(s: &PHStructure) -> Result<FrameTensor> {
    let e = s.einstein();
    let grad = s.nabla(&FrameTensor::scalar(pair(s, e, e)), Slot::Hol)?;
    Ok(grad.add(&s.contract(e, 1, &s.div_antihol(e, 1)?, 0).scale_int(4)))
}

/// The same quantity before the commutator identities are applied:
/// `Q_FH/8 = 2Re ∇^γ(∇_γ(E_{μν̄}E^{ν̄μ}) + 4E_γ^μ∇^ν̄E_{μν̄} + ∇_γ∇^μ∇^ν̄E_{μν̄}
/// + 2iA_γ^ν̄∇^μE_{μν̄} − ∇_μ(PE_γ^μ))`.
pub fn qfh_frame_unreduced(s: &PHStructure) -> Result<Scalar> {
    let e = s.einstein();
    let third = s.nabla(&s.div_hol(&s.div_antihol(e, 1)?, 0)?, Slot::Hol)?;
    let tors = s.contract(&s.div_hol(e, 0)?, 0, s.torsion(), 1).scale(&Scalar::i().scale_int(2));
    let pe = s.div_antihol(&e.scale(s.schouten_trace()), 1)?;
    let v = quadratic_vector(s)?.add(&third).add(&tors).sub(&pe);
    Ok(real_part(s.div_hol(&v, 0)?.get(&[])).scale_int(16))
}

/// `8⋆Q_{0,0}^{scal}`, the function to compare with [`qfh_frame`].
pub fn qfh_from_scalar(s: &PHStructure) -> Result<Scalar> {
    Ok(hodge_star(s, &q00scal(s)?)?.value().scale_int(8))
}

/// Rescaling of `Q_FH` along `e^{nΥ₀}θ`, `n = 1, 2`. With
/// `A_n = e^{3nΥ₀} Q_FH^{(n)} − Q_FH` the linear part is `2A_1 − A_2/2` and
/// the quadratic remainder `(A_2 − 2A_1)/2`.
#[derive(Clone, Debug)]
pub struct Linearization {
    pub linear: Scalar,
    pub remainder: Scalar,
}

/// Two-point linearization of `Q_FH` at `power(Υ₀, base)`.
pub fn qfh_linearization(factor: &Scalar, base: i32) -> Result<Linearization> {
    let at = |n: i32| PHStructure::power(factor, base + n).and_then(|s| qfh_frame(&s));
    let q0 = at(0)?;
    let a1 = &(&Scalar::u_pow(3) * &at(1)?) - &q0;
    let a2 = &(&Scalar::u_pow(6) * &at(2)?) - &q0;
    let linear = &a1.scale_int(2) - &(&a2 * &Scalar::ratio(1, 2));
    let remainder = (&a2 - &a1.scale_int(2)) * Scalar::ratio(1, 2);
    Ok(Linearization { linear, remainder })
}
