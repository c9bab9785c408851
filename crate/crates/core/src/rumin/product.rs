//! Conjugation, transport between structures, and the products `⋏`, `⋏_k`.

use super::project::{assemble, decompose, pi_project, realize};
use super::{bidegrees, conj_bidegree, Graded, PqForm};
use crate::error::{Error, Result};
use crate::expr::Scalar;
use crate::geometry::{FrameTensor, PHStructure, Slot};
use crate::mutation::Mutation;

/// Complex conjugate. The honest form `ω_{AB̄} θ^A ∧ θ^B̄` becomes
/// `(−1)^{|A||B|} conj(ω_{AB̄}) θ^B ∧ θ^Ā`, with any `θ` and `dθ` factors
/// left alone.
pub fn conj(w: &PqForm) -> PqForm {
    let (a, b) = w.index_counts();
    let order: Vec<usize> = (a..a + b).chain(0..a).collect();
    let sign = if (a * b) % 2 == 0 { 1 } else { -1 };
    let (p, q) = conj_bidegree(w.p, w.q);
    PqForm { p, q, primary: w.primary().conj().permute(&order).scale_int(sign) }
}

/// The same honest form read in another structure on the shared ring.
pub fn transport(from: &PHStructure, to: &PHStructure, w: &PqForm) -> Result<PqForm> {
    if !from.shares_ring(to) {
        return Err(Error::StructureInvariant("structures do not share a ring"));
    }
    let honest = to.to_frame(&from.to_coord(&realize(from, w)?));
    decompose(to, &honest, w.degree())?.only("transport", w.p, w.q)
}

/// `ℓ = −i E_{αβ̄} θ^α ∧ θ^β̄` in `𝒭^{1,1}`.
pub fn lee_form(s: &PHStructure) -> PqForm {
    PqForm { p: 1, q: 1, primary: s.lee_primary() }
}

/// `π(ω ∧ τ)`, decomposed.
pub fn rwedge_general(s: &PHStructure, w: &PqForm, t: &PqForm) -> Result<Graded> {
    let k = w.degree() + t.degree();
    if k > 5 {
        return Ok(Graded::zero(k));
    }
    let prod = realize(s, w)?.wedge(&realize(s, t)?);
    decompose(s, &pi_project(s, &prod)?, k)
}

/// `ω_{μν̄} τ^{ν̄μ}`.
fn pair(s: &PHStructure, w: &FrameTensor, t: &FrameTensor) -> Scalar {
    let mut parts = Vec::new();
    for mu in 0..2 {
        for nu in 0..2 {
            for al in 0..2 {
                for be in 0..2 {
                    let m = w.get(&[mu, nu]) * t.get(&[al, be]);
                    if !m.is_zero() {
                        parts.push(&(&m * s.hinv(al, nu)) * s.hinv(mu, be));
                    }
                }
            }
        }
    }
    Scalar::sum(parts.iter())
}

fn gradient(s: &PHStructure, f: &Scalar, dir: Slot) -> Result<FrameTensor> {
    s.nabla(&FrameTensor::scalar(f.clone()), dir)
}

/// Closed form of `ω ⋏ τ` for `ω, τ ∈ 𝒭^{1,1}`.
pub fn rwedge_11_11(s: &PHStructure, w: &PqForm, t: &PqForm) -> Result<Graded> {
    if w.bidegree() != (1, 1) || t.bidegree() != (1, 1) {
        return Err(Error::WrongBidegree { op: "rwedge_11_11", p: t.p, q: t.q });
    }
    let (om, ta) = (w.primary(), t.primary());
    let half = pair(s, om, ta) * Scalar::ratio(1, 2);
    let sign = s.sign(Mutation::WedgeClosedForm);
    let hol = gradient(s, &half, Slot::Hol)?
        .add(&s.contract(om, 1, &s.div_antihol(ta, 1)?, 0))
        .add(&s.contract(ta, 1, &s.div_antihol(om, 1)?, 0))
        .scale_int(sign);
    let anti = gradient(s, &half, Slot::AntiHol)?
        .add(&s.contract(&s.div_hol(ta, 0)?, 0, om, 0))
        .add(&s.contract(&s.div_hol(om, 0)?, 0, ta, 0))
        .scale_int(sign);
    let mut g = Graded::zero(4);
    g.insert(PqForm { p: 3, q: 1, primary: hol });
    g.insert(PqForm { p: 2, q: 2, primary: anti });
    Ok(g)
}

/// Closed form of `ω ⋏ ρ` for `ω ∈ 𝒭^{1,1}`, `ρ ∈ 𝒭^{0,1}`.
pub fn rwedge_11_01(s: &PHStructure, w: &PqForm, r: &PqForm) -> Result<Graded> {
    if w.bidegree() != (1, 1) || r.bidegree() != (0, 1) {
        return Err(Error::WrongBidegree { op: "rwedge_11_01", p: r.p, q: r.q });
    }
    let (om, rho) = (w.primary(), r.primary());
    let i = Scalar::i();
    let x12 = rho
        .outer(&s.div_hol(om, 0)?)
        .scale_int(2)
        .add(&s.contract(&s.nabla(rho, Slot::AntiHol)?, 0, om, 0))
        .scale(&i);
    let grad_rho = s.nabla(rho, Slot::Hol)?.permute(&[1, 0]);
    let x21 = om
        .scale(&(s.div_antihol(rho, 0)?.get(&[]) * &Scalar::ratio(1, 2)))
        .add(&s.nabla(&s.contract(rho, 0, om, 0), Slot::Hol)?.permute(&[1, 0]))
        .sub(&s.div_antihol(om, 1)?.outer(rho))
        .sub(&s.levi_tensor().scale(&(pair(s, om, &grad_rho) * Scalar::ratio(1, 2))))
        .scale(&i);
    let honest = &assemble(&x12, true) + &assemble(&x21, true);
    decompose(s, &honest, 3)
}

/// `ω ⋏ τ`, through a closed form where one exists.
pub fn rwedge(s: &PHStructure, w: &PqForm, t: &PqForm) -> Result<Graded> {
    let k = w.degree() + t.degree();
    if k > 5 {
        return Ok(Graded::zero(k));
    }
    match (w.bidegree(), t.bidegree()) {
        ((0, 0), _) => Ok(Graded::from_form(t.scale(w.value()))),
        (_, (0, 0)) => Ok(Graded::from_form(w.scale(t.value()))),
        ((1, 1), (1, 1)) => rwedge_11_11(s, w, t),
        ((1, 1), (0, 1)) => rwedge_11_01(s, w, t),
        ((0, 1), (1, 1)) => rwedge_11_01(s, t, w),
        _ => rwedge_general(s, w, t),
    }
}

/// `π^{p+r,q+s}(ω ⋏ τ)`.
pub fn krwedge(s: &PHStructure, w: &PqForm, t: &PqForm) -> Result<PqForm> {
    let (p, q) = (w.p + t.p, w.q + t.q);
    if !bidegrees(p + q).contains(&(p, q)) {
        return Err(Error::InvalidBidegree(p, q));
    }
    rwedge(s, w, t)?.part(p, q).cloned()
}

/// `ω ⋏ τ` for mixed-bidegree forms.
pub fn rwedge_graded(s: &PHStructure, w: &Graded, t: &Graded) -> Result<Graded> {
    let mut out = Graded::zero(w.degree() + t.degree());
    for x in w.parts().iter().filter(|x| !x.is_zero()) {
        for y in t.parts().iter().filter(|y| !y.is_zero()) {
            out = out.add(&rwedge(s, x, y)?);
        }
    }
    Ok(out)
}
