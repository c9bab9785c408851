//! `∂_b`, `∂₀`, `∂̄_b` by their frame formulas, and by `decompose ∘ d ∘ realize`.

use super::project::{assemble, decompose, dtheta_pow, i_ratio, read_horizontal, realize};
use super::{factorial, inv_factorial, shape, Graded, PqForm};
use crate::error::{Error, Result};
use crate::expr::Scalar;
use crate::forms::FrameForm;
use crate::geometry::{FrameTensor, PHStructure, Slot};
use crate::mutation::Mutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Db,
    D0,
    Dbar,
}

impl Op {
    pub const ALL: [Op; 3] = [Op::Db, Op::D0, Op::Dbar];

    pub fn name(self) -> &'static str {
        match self {
            Op::Db => "db",
            Op::D0 => "d0",
            Op::Dbar => "dbar",
        }
    }

    /// Bidegree of the image of `(p, q)`, if the arrow exists.
    pub fn target(self, p: u8, q: u8) -> Option<(u8, u8)> {
        let k = p + q;
        let t = match (self, k) {
            (Op::Db, 2) if q >= 1 => (p + 2, q - 1),
            (Op::Db, 2) => return None,
            (Op::Db, _) => (p + 1, q),
            (Op::D0, 2) => (p + 1, q),
            (Op::D0, _) => return None,
            (Op::Dbar, _) => (p, q + 1),
        };
        shape(t.0, t.1).ok().map(|_| t)
    }

    pub fn apply(self, s: &PHStructure, w: &PqForm) -> Result<PqForm> {
        match self {
            Op::Db => db(s, w),
            Op::D0 => d0(s, w),
            Op::Dbar => dbar(s, w),
        }
    }

    pub fn apply_def(self, s: &PHStructure, w: &PqForm) -> Result<PqForm> {
        let (p, q) = self.target(w.p, w.q).ok_or(Error::WrongBidegree { op: self.name(), p: w.p, q: w.q })?;
        d_def(s, w)?.part(p, q).cloned()
    }
}

fn sign_pow(n: usize) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Move slot `from` to position `to`.
fn move_slot(t: &FrameTensor, from: usize, to: usize) -> FrameTensor {
    let mut order: Vec<usize> = (0..t.rank()).filter(|&k| k != from).collect();
    order.insert(to, from);
    t.permute(&order)
}

/// `h_{αβ̄} X_{A'B̄'}` with `α` first and `β̄` at position `anti_at`.
fn levi_times(s: &PHStructure, x: &FrameTensor, anti_at: usize) -> FrameTensor {
    move_slot(&s.levi_tensor().outer(x), 1, anti_at)
}

/// `A_α^ν̄`, indexed `[α][ν]`.
fn torsion_up(s: &PHStructure) -> [[Scalar; 2]; 2] {
    let a = s.torsion();
    std::array::from_fn(|al| std::array::from_fn(|nu| Scalar::sum([s.hinv(0, nu) * a.get(&[al, 0]), s.hinv(1, nu) * a.get(&[al, 1])].iter())))
}

/// `A_β̄^μ`, indexed `[β][μ]`.
fn torsion_bar_up(s: &PHStructure) -> [[Scalar; 2]; 2] {
    let a = s.torsion();
    std::array::from_fn(|be| {
        std::array::from_fn(|mu| Scalar::sum([s.hinv(mu, 0) * a.get(&[be, 0]).conj(), s.hinv(mu, 1) * a.get(&[be, 1]).conj()].iter()))
    })
}

fn wrong(op: &'static str, w: &PqForm) -> Error {
    Error::WrongBidegree { op, p: w.p, q: w.q }
}

/// Turn the honest output of a frame formula into a form of bidegree `(p, q)`.
fn finish(s: &PHStructure, op: &'static str, form: &FrameForm, p: u8, q: u8) -> Result<PqForm> {
    let k = p + q;
    let g = if k <= 2 { read_horizontal(form, k)? } else { decompose(s, form, k)? };
    let out = g.only(op, p, q)?;
    out.validate(s)?;
    Ok(out)
}

pub fn db(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    let (tp, tq) = Op::Db.target(w.p, w.q).ok_or_else(|| wrong("db", w))?;
    let (p, q) = (w.p as usize, w.q as usize);
    let k = p + q;
    let (a, _) = w.index_counts();
    let prim = w.primary();
    let form = if k <= 1 {
        let mut x = move_slot(&s.nabla(prim, Slot::Hol)?, prim.rank(), 0);
        if q > 0 {
            let div = s.div_antihol(prim, p)?;
            let c = Scalar::ratio(q as i64 * s.sign(Mutation::DbLowTrace), (3 - k) as i64);
            x = x.sub(&levi_times(s, &div, p + 1).scale(&c));
        }
        assemble(&x, false).scale(&(inv_factorial(p) * inv_factorial(q)))
    } else if k == 2 {
        let div = s.div_antihol(prim, p)?;
        let nab = s.nabla(&div, Slot::Hol)?;
        let up = torsion_up(s);
        let last = nab.rank() - 1;
        let tors = FrameTensor::from_fn(nab.slots(), |idx| {
            let al = idx[last];
            let mut probe: Vec<usize> = idx[..p].to_vec();
            probe.push(0);
            probe.extend_from_slice(&idx[p..last]);
            let parts: Vec<Scalar> = (0..2)
                .map(|nu| {
                    probe[p] = nu;
                    &up[al][nu] * prim.get(&probe)
                })
                .collect();
            Scalar::sum(parts.iter())
        });
        let c = Scalar::i().scale_int(s.sign(Mutation::MidTorsion));
        let y = move_slot(&nab.add(&tors.scale(&c)), last, 0);
        let norm = factorial(p) * factorial(q - 1);
        assemble(&y, true).scale(&i_ratio(sign_pow(p + 1), norm))
    } else {
        let div = s.div_antihol(prim, a)?;
        let c = i_ratio(sign_pow(q), factorial(k - 2) * factorial(2 - p) * factorial(2 - q));
        assemble(&div, true).wedge(&dtheta_pow(s, k - 2)).scale(&c)
    };
    finish(s, "db", &form, tp, tq)
}

pub fn d0(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    let (tp, tq) = Op::D0.target(w.p, w.q).ok_or_else(|| wrong("d0", w))?;
    let (p, q) = (w.p as usize, w.q as usize);
    let prim = w.primary();
    let reeb = s.nabla(prim, Slot::Reeb)?;
    let mut x = FrameTensor::from_fn(prim.slots(), |idx| {
        let mut full = idx.to_vec();
        full.push(0);
        reeb.get(&full).clone()
    });
    if p > 0 {
        let z = s.nabla(&s.div_hol(prim, 0)?, Slot::Hol)?;
        let z = move_slot(&z, z.rank() - 1, 0);
        x = x.add(&z.scale(&i_ratio(p as i64 * s.sign(Mutation::MidD0Term), 1)));
    }
    if q > 0 {
        let z = s.nabla(&s.div_antihol(prim, p)?, Slot::AntiHol)?;
        let z = move_slot(&z, z.rank() - 1, p);
        x = x.add(&z.scale(&i_ratio(-(q as i64), 1)));
    }
    let form = assemble(&x, true).scale(&(inv_factorial(p) * inv_factorial(q)));
    finish(s, "d0", &form, tp, tq)
}

pub fn dbar(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    let (tp, tq) = Op::Dbar.target(w.p, w.q).ok_or_else(|| wrong("dbar", w))?;
    let (p, q) = (w.p as usize, w.q as usize);
    let k = p + q;
    let prim = w.primary();
    let form = if k <= 1 {
        let mut x = move_slot(&s.nabla(prim, Slot::AntiHol)?, prim.rank(), p);
        if p > 0 {
            let div = s.div_hol(prim, 0)?;
            let c = Scalar::ratio(p as i64 * s.sign(Mutation::DbarLowTrace), (3 - k) as i64);
            x = x.sub(&levi_times(s, &div, p).scale(&c));
        }
        assemble(&x, false).scale(&(inv_factorial(p) * inv_factorial(q)).scale_int(sign_pow(p)))
    } else if k == 2 {
        let div = s.div_hol(prim, 0)?;
        let nab = s.nabla(&div, Slot::AntiHol)?;
        let up = torsion_bar_up(s);
        let last = nab.rank() - 1;
        let tors = FrameTensor::from_fn(nab.slots(), |idx| {
            let be = idx[last];
            let mut probe = vec![0];
            probe.extend_from_slice(&idx[..last]);
            let parts: Vec<Scalar> = (0..2)
                .map(|mu| {
                    probe[0] = mu;
                    &up[be][mu] * prim.get(&probe)
                })
                .collect();
            Scalar::sum(parts.iter())
        });
        let y = move_slot(&nab.sub(&tors.scale(&Scalar::i())), last, p - 1);
        let norm = factorial(p - 1) * factorial(q);
        assemble(&y, true).scale(&i_ratio(sign_pow(p + 1), norm))
    } else {
        let div = s.div_hol(prim, 0)?;
        let c = i_ratio(-s.sign(Mutation::HighDbar), factorial(k - 2) * factorial(3 - p) * factorial(1 - q));
        assemble(&div, true).wedge(&dtheta_pow(s, k - 2)).scale(&c)
    };
    finish(s, "dbar", &form, tp, tq)
}

/// `d = ∂_b + ∂₀ + ∂̄_b` through the frame formulas.
pub fn d(s: &PHStructure, w: &PqForm) -> Result<Graded> {
    let mut out = Graded::zero(w.degree() + 1);
    for op in Op::ALL {
        if op.target(w.p, w.q).is_some() {
            out.insert(op.apply(s, w)?);
        }
    }
    Ok(out)
}

/// Exterior derivative of the honest form, decomposed.
pub fn d_def(s: &PHStructure, w: &PqForm) -> Result<Graded> {
    if w.degree() == 5 {
        return Err(wrong("d", w));
    }
    decompose(s, &s.d(&realize(s, w)?)?, w.degree() + 1)
}

pub fn db_def(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    Op::Db.apply_def(s, w)
}

pub fn d0_def(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    Op::D0.apply_def(s, w)
}

pub fn dbar_def(s: &PHStructure, w: &PqForm) -> Result<PqForm> {
    Op::Dbar.apply_def(s, w)
}

pub(crate) fn i_pow(n: i64) -> Scalar {
    match n.rem_euclid(4) {
        0 => Scalar::one(),
        1 => Scalar::i(),
        2 => Scalar::int(-1),
        _ => -Scalar::i(),
    }
}

fn j_exponent(w: &PqForm) -> i64 {
    let e = w.q as i64 - w.p as i64;
    if w.is_low() {
        e
    } else {
        e + 1
    }
}

pub fn j_op(w: &PqForm) -> PqForm {
    w.scale(&i_pow(j_exponent(w)))
}

pub fn j_inv(w: &PqForm) -> PqForm {
    w.scale(&i_pow(-j_exponent(w)))
}

/// `d_b^c`: `i∂̄_b − i∂_b`, or `−∂̄_b + ∂₀ − ∂_b` in degree two.
pub fn dbc(s: &PHStructure, w: &PqForm) -> Result<Graded> {
    let (cb, c0, cbar) = if w.degree() == 2 {
        (Scalar::int(-1), Scalar::one(), Scalar::int(-1))
    } else {
        (-Scalar::i(), Scalar::zero(), Scalar::i())
    };
    let mut out = Graded::zero(w.degree() + 1);
    for (op, c) in [(Op::Db, cb), (Op::D0, c0), (Op::Dbar, cbar)] {
        if op.target(w.p, w.q).is_some() && !c.is_zero() {
            out.insert(op.apply(s, w)?.scale(&c));
        }
    }
    Ok(out)
}

/// `d` on a form of mixed bidegree.
pub fn d_graded(s: &PHStructure, g: &Graded) -> Result<Graded> {
    let mut out = Graded::zero(g.degree() + 1);
    for part in g.parts().iter().filter(|x| !x.is_zero()) {
        out = out.add(&d(s, part)?);
    }
    Ok(out)
}
