//! Honest forms and back: realization, bigraded decomposition, Γ and π.

use super::{bidegrees, frame_entries, inv_factorial, Graded, PqForm};
use crate::error::{Error, Result};
use crate::expr::{solve, Scalar};
use crate::forms::{ordered_mask, FrameForm, TOP};
use crate::geometry::{FrameTensor, PHStructure};
use crate::mutation::Mutation;

/// `Σ_I t_I (θ ∧) θ^{I}` over every multi-index of `t`, in slot order.
pub fn assemble(t: &FrameTensor, theta: bool) -> FrameForm {
    let mut buckets: Vec<Vec<Scalar>> = vec![Vec::new(); 32];
    for (idx, fr) in frame_entries(t.slots()) {
        let v = t.get(&idx);
        if v.is_empty() {
            continue;
        }
        let mut list = if theta { vec![0] } else { Vec::new() };
        list.extend(fr);
        let (mask, sign) = ordered_mask(&list);
        if sign != 0 {
            buckets[mask as usize].push(v.scale_int(sign));
        }
    }
    let mut out = FrameForm::zero();
    for (m, parts) in buckets.iter().enumerate() {
        if !parts.is_empty() {
            out.set(m as u8, Scalar::sum(parts.iter()));
        }
    }
    out
}

pub(crate) fn dtheta_pow(s: &PHStructure, n: usize) -> FrameForm {
    let mut out = FrameForm::scalar(Scalar::one());
    for _ in 0..n {
        out = out.wedge(s.dtheta());
    }
    out
}

/// Top coefficient of `θ ∧ dθ²`.
pub(crate) fn volume_coefficient(s: &PHStructure) -> Scalar {
    FrameForm::wedge_of(&[0]).wedge(&dtheta_pow(s, 2)).get(TOP).clone()
}

/// `i n / d`.
pub(crate) fn i_ratio(n: i64, d: i64) -> Scalar {
    Scalar::i() * Scalar::ratio(n, d)
}

/// The honest form of `ω`, in the coframe of `s`.
pub fn realize(s: &PHStructure, w: &PqForm) -> Result<FrameForm> {
    w.validate(s)?;
    let (p, q) = (w.p as usize, w.q as usize);
    let k = p + q;
    let prim = w.primary();
    if w.is_low() {
        let mut out = assemble(prim, false).scale(&(inv_factorial(p) * inv_factorial(q)));
        let norm = ((3 - k) as i64) * super::factorial(p) * super::factorial(q);
        if p > 0 {
            let x = s.div_hol(prim, 0)?;
            let c = i_ratio(-(p as i64) * s.sign(Mutation::RealizeCorrection), norm);
            out = &out + &assemble(&x, true).scale(&c);
        }
        if q > 0 {
            let x = s.div_antihol(prim, p)?;
            let sp = if p % 2 == 0 { 1 } else { -1 };
            let c = i_ratio(sp * q as i64, norm);
            out = &out + &assemble(&x, true).scale(&c);
        }
        Ok(out)
    } else {
        let c = inv_factorial(k - 3) * inv_factorial(3 - p) * inv_factorial(2 - q);
        Ok(assemble(prim, true).wedge(&dtheta_pow(s, k - 3)).scale(&c))
    }
}

/// Primary part read from the components `(θ ∧) θ^I` of `w`.
fn read_primary(w: &FrameForm, p: u8, q: u8, theta: bool) -> Result<PqForm> {
    let slots = super::primary_slots(p, q)?;
    let mut entries = frame_entries(&slots).into_iter();
    let primary = FrameTensor::from_fn(&slots, |_| {
        let (_, fr) = entries.next().expect("same enumeration order");
        let mut list = if theta { vec![0] } else { Vec::new() };
        list.extend(fr);
        let (mask, sign) = ordered_mask(&list);
        if sign == 0 {
            Scalar::zero()
        } else {
            w.get(mask).scale_int(sign)
        }
    });
    Ok(PqForm { p, q, primary })
}

/// Horizontal components of a low-degree form, without any membership
/// check. Frame formulas produce exactly this data.
pub fn read_horizontal(w: &FrameForm, k: u8) -> Result<Graded> {
    if k > 2 {
        return Err(Error::NotRumin(k as usize));
    }
    let mut g = Graded::zero(k);
    for (p, q) in bidegrees(k) {
        g.insert(read_primary(w, p, q, false)?);
    }
    Ok(g)
}

/// Horizontal `ξ` with `θ ∧ ξ ∧ dθ = w` for a 4-form `w` (only the
/// θ-components of `w` enter).
fn lefschetz(s: &PHStructure, w: &FrameForm) -> Result<[Scalar; 4]> {
    let masks: Vec<u8> = (0..32u8).filter(|m| m.count_ones() == 4 && m & 1 == 1).collect();
    let basis: Vec<FrameForm> = (1..5).map(|j| FrameForm::wedge_of(&[0, j]).wedge(s.dtheta())).collect();
    let a = masks.iter().map(|&m| basis.iter().map(|b| b.get(m).clone()).collect()).collect();
    let b = masks.iter().map(|&m| vec![w.get(m).clone()]).collect();
    let x = solve(a, b)?;
    Ok(std::array::from_fn(|j| x[j][0].clone()))
}

fn divide(a: &Scalar, b: &Scalar) -> Result<Scalar> {
    a.div_exact(b).ok_or(Error::NotInRing)
}

/// Bigraded components of a Rumin form of degree `k`.
pub fn decompose(s: &PHStructure, w: &FrameForm, k: u8) -> Result<Graded> {
    if w.components().any(|(m, c)| m.count_ones() != k as u32 && !c.is_zero()) {
        return Err(Error::NotRumin(k as usize));
    }
    let mut g = Graded::zero(k);
    match k {
        0..=2 => {
            for (p, q) in bidegrees(k) {
                g.insert(read_primary(w, p, q, false)?);
            }
        }
        3 => {
            for (p, q) in bidegrees(k) {
                g.insert(read_primary(w, p, q, true)?);
            }
        }
        4 => {
            let xi = lefschetz(s, w)?;
            let hol = FrameTensor::from_fn(&super::primary_slots(3, 1)?, |i| xi[i[0]].clone());
            let anti = FrameTensor::from_fn(&super::primary_slots(2, 2)?, |i| xi[2 + i[0]].clone());
            g.insert(PqForm { p: 3, q: 1, primary: hol });
            g.insert(PqForm { p: 2, q: 2, primary: anti });
        }
        5 => {
            let f = divide(&w.get(TOP).scale_int(2), &volume_coefficient(s))?;
            g.insert(PqForm { p: 3, q: 2, primary: FrameTensor::scalar(f) });
        }
        _ => return Err(Error::NotRumin(k as usize)),
    }
    let mut back = FrameForm::zero();
    for part in g.parts() {
        match realize(s, part) {
            Ok(r) => back = &back + &r,
            Err(Error::TraceCondition(..)) => return Err(Error::NotRumin(k as usize)),
            Err(e) => return Err(e),
        }
    }
    if back != *w {
        return Err(Error::NotRumin(k as usize));
    }
    Ok(g)
}

fn gamma_homogeneous(s: &PHStructure, w: &FrameForm, k: u32) -> Result<FrameForm> {
    let theta = FrameForm::wedge_of(&[0]);
    match k {
        2 => {
            let top = theta.wedge(w).wedge(s.dtheta());
            let xi = divide(top.get(TOP), &volume_coefficient(s))?;
            Ok(theta.scale(&xi))
        }
        3 => {
            let xi = lefschetz(s, &theta.wedge(w))?;
            let mut out = FrameForm::zero();
            for (j, c) in xi.iter().enumerate() {
                out = &out + &FrameForm::wedge_of(&[0, j + 1]).scale(c);
            }
            Ok(out)
        }
        4 => {
            let xi = divide(theta.wedge(w).get(TOP), &volume_coefficient(s))?;
            Ok(theta.wedge(s.dtheta()).scale(&xi))
        }
        _ => Ok(FrameForm::zero()),
    }
}

/// `Γω`, degree by degree.
pub fn gamma(s: &PHStructure, w: &FrameForm) -> Result<FrameForm> {
    let mut out = FrameForm::zero();
    for k in w.degrees() {
        out = &out + &gamma_homogeneous(s, &w.part(k), k)?;
    }
    Ok(out)
}

/// `πω = ω − dΓω − Γdω`.
pub fn pi_project(s: &PHStructure, w: &FrameForm) -> Result<FrameForm> {
    let dg = s.d(&gamma(s, w)?)?;
    let gd = gamma(s, &s.d(w)?)?;
    Ok(&(w - &dg) - &gd)
}
