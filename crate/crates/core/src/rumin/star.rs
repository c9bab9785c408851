//! Hodge star, the pointwise Hermitian product, the adjoints and `□_b`.

use super::ops::{db, dbar, i_pow};
use super::product::conj;
use super::project::{decompose, dtheta_pow, realize};
use super::{factorial, inv_factorial, PqForm};
use crate::error::{Error, Result};
use crate::expr::Scalar;
use crate::forms::FrameForm;
use crate::geometry::{multi_indices, PHStructure};
use crate::mutation::Mutation;

/// `(−1)^{k(k+1)/2} i^{q−p}`: the star on primary parts in the low regime.
fn low_factor(p: u8, q: u8) -> Scalar {
    let k = (p + q) as i64;
    let sign = if (k * (k + 1) / 2) % 2 == 0 { 1 } else { -1 };
    i_pow(q as i64 - p as i64).scale_int(sign)
}

/// `⋆ω`; a low form goes to `(3 − q, 2 − p)`, a high form back.
pub fn hodge_star(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    let (p, q) = w.bidegree();
    if w.is_low() {
        Ok(PqForm { p: 3 - q, q: 2 - p, primary: w.primary().scale(&low_factor(p, q).scale_int(s.sign(Mutation::StarSign))) })
    } else {
        let (lp, lq) = (2 - q, 3 - p);
        Ok(PqForm { p: lp, q: lq, primary: w.primary().scale(&low_factor(lp, lq).conj()) })
    }
}

/// `⋆ω = (−1)^{k(k+1)/2} / (2 − k)! · θ ∧ Jω ∧ dθ^{2−k}` on honest forms.
pub fn hodge_star_formula(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    if !w.is_low() {
        return Err(Error::WrongBidegree { op: "hodge_star_formula", p: w.p, q: w.q });
    }
    let k = (w.p + w.q) as usize;
    let sign = if (k * (k + 1) / 2) % 2 == 0 { 1 } else { -1 };
    let c = i_pow(w.q as i64 - w.p as i64) * Scalar::ratio(sign, factorial(2 - k));
    let honest = FrameForm::wedge_of(&[0]).wedge(&realize(s, w)?).wedge(&dtheta_pow(s, 2 - k)).scale(&c);
    decompose(s, &honest, (5 - k) as u8)?.only("hodge_star", 3 - w.q, 2 - w.p)
}

/// `⟨ω, τ⟩ = (1/|A|!|B|!) ω_{AB̄} τ̄^{B̄A}`.
pub fn hermitian_inner(s: &PHStructure, w: &PqForm, t: &PqForm) -> Result<Scalar> {
    if w.bidegree() != t.bidegree() {
        return Err(Error::ShapeMismatch(t.p, t.q));
    }
    let (a, b) = w.index_counts();
    let slots = w.primary().slots();
    let all = multi_indices(slots);
    let mut parts = Vec::new();
    for i in &all {
        let wi = w.primary().get(i);
        if wi.is_zero() {
            continue;
        }
        for j in &all {
            let tj = t.primary().get(j);
            if tj.is_zero() {
                continue;
            }
            let mut m = wi * &tj.conj();
            for k in 0..a {
                m = &m * s.hinv(i[k], j[k]);
            }
            for k in a..a + b {
                m = &m * s.hinv(j[k], i[k]);
            }
            if !m.is_zero() {
                parts.push(m);
            }
        }
    }
    Ok(Scalar::sum(parts.iter()) * inv_factorial(a) * inv_factorial(b))
}

fn sign_of_degree(w: &PqForm) -> i64 {
    if w.degree() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `−∇^μ ω_{μA′B̄}` in `(p − 1, q)`.
pub fn db_adjoint_frame(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    if !w.is_low() || w.p == 0 {
        return Err(Error::WrongBidegree { op: "db_adjoint", p: w.p, q: w.q });
    }
    let div = s.div_hol(w.primary(), 0)?;
    let out = PqForm { p: w.p - 1, q: w.q, primary: div.scale_int(-s.sign(Mutation::AdjointFrame)) };
    out.validate(s)?;
    Ok(out)
}

/// `−(−1)^p ∇^ν̄ ω_{Aν̄B̄′}` in `(p, q − 1)`.
pub fn dbar_adjoint_frame(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    if !w.is_low() || w.q == 0 {
        return Err(Error::WrongBidegree { op: "dbar_adjoint", p: w.p, q: w.q });
    }
    let div = s.div_antihol(w.primary(), w.p as usize)?;
    let sign = if w.p % 2 == 0 { -1 } else { 1 };
    let out = PqForm { p: w.p, q: w.q - 1, primary: div.scale_int(sign) };
    out.validate(s)?;
    Ok(out)
}

/// `(−1)^{p+q} ⋆ ∂̄_b ⋆`.
pub fn db_adjoint_star(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    let inner = dbar(s, &hodge_star(s, w)?).map_err(|_| Error::WrongBidegree { op: "db_adjoint", p: w.p, q: w.q })?;
    Ok(hodge_star(s, &inner)?.scale_int(sign_of_degree(w)))
}

/// `(−1)^{p+q} ⋆ ∂_b ⋆`.
pub fn dbar_adjoint_star(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    let inner = db(s, &hodge_star(s, w)?).map_err(|_| Error::WrongBidegree { op: "dbar_adjoint", p: w.p, q: w.q })?;
    Ok(hodge_star(s, &inner)?.scale_int(sign_of_degree(w)))
}

/// `∂_b^*`: frame formula in the low regime, star conjugation above it.
pub fn db_adjoint(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    if w.is_low() {
        db_adjoint_frame(s, w)
    } else {
        db_adjoint_star(s, w)
    }
}

pub fn dbar_adjoint(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    if w.is_low() {
        dbar_adjoint_frame(s, w)
    } else {
        dbar_adjoint_star(s, w)
    }
}

/// `□_b`. In the high regime it is transported by `⋆` and conjugation,
/// which is what `□_b ⋆ ω̄ = ⋆ conj(□_b ω)` forces.
pub fn kohn_laplacian(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    let (p, q) = w.bidegree();
    let k = p + q;
    if !w.is_low() {
        let low = conj(&hodge_star(s, w)?);
        return hodge_star(s, &conj(&kohn_laplacian(s, &low)?));
    }
    let mut out = PqForm::zero(p, q)?;
    if k <= 1 {
        if q >= 1 {
            let c = Scalar::ratio((2 - k) as i64, (3 - k) as i64);
            out = out.add(&dbar(s, &dbar_adjoint(s, w)?)?.scale(&c));
        }
        return Ok(out.add(&dbar_adjoint(s, &dbar(s, w)?)?));
    }
    if q <= 1 {
        out = out.add(&dbar_adjoint(s, &dbar(s, w)?)?);
    }
    if q >= 1 {
        let a = dbar_adjoint(s, w)?;
        let both = kohn_laplacian(s, &a)?.add(&conj(&kohn_laplacian(s, &conj(&a))?));
        out = out.add(&dbar(s, &both)?);
    }
    Ok(out)
}
