//! The bigraded Rumin complex on a pseudohermitian structure.
//!
//! A [`PqForm`] stores only its primary part. In the low regime
//! (`p + q <= 2`) that is `ω_{AB̄}` with `|A| = p`, `|B| = q`, and the honest
//! form carries θ-corrections rebuilt by [`realize`]. In the high regime the
//! honest form is `θ ∧ θ^A ∧ θ^B̄ ∧ dθ^{p+q-3}` with `|A| = 2 - q`,
//! `|B| = 3 - p`.

mod ops;
mod product;
pub(crate) mod project;
mod star;

pub use ops::{d, d0, d_def, d_graded, db, db_def, dbar, dbar_def, d0_def, dbc, j_inv, j_op, Op};
pub use product::{conj, lee_form, rwedge, rwedge_graded, rwedge_11_01, rwedge_11_11, rwedge_general, krwedge, transport};
pub use project::{assemble, decompose, gamma, pi_project, read_horizontal, realize};
pub use star::{
    db_adjoint, db_adjoint_frame, db_adjoint_star, dbar_adjoint, dbar_adjoint_frame, dbar_adjoint_star, hermitian_inner,
    hodge_star, hodge_star_formula, kohn_laplacian,
};

use crate::error::{Error, Result};
use crate::expr::Scalar;
use crate::fixture::{random_cutoff, random_poly, ChaCha8Rng, PolyShape};
use crate::forms::ordered_mask;
use crate::geometry::{multi_indices, FrameTensor, PHStructure, Slot};
use std::fmt;

/// Every valid bidegree of total degree `k`, by increasing `p`.
pub fn bidegrees(k: u8) -> Vec<(u8, u8)> {
    (0..=3u8).filter(|&p| p <= k && k - p <= 2).map(|p| (p, k - p)).collect()
}

pub fn is_low(p: u8, q: u8) -> bool {
    p + q <= 2
}

/// Number of holomorphic and antiholomorphic primary indices.
pub fn shape(p: u8, q: u8) -> Result<(usize, usize)> {
    if p > 3 || q > 2 {
        return Err(Error::InvalidBidegree(p, q));
    }
    Ok(if is_low(p, q) { (p as usize, q as usize) } else { (2 - q as usize, 3 - p as usize) })
}

pub fn primary_slots(p: u8, q: u8) -> Result<Vec<Slot>> {
    let (a, b) = shape(p, q)?;
    let mut s = vec![Slot::Hol; a];
    s.extend(std::iter::repeat(Slot::AntiHol).take(b));
    Ok(s)
}

/// Bidegree of the conjugate form.
pub fn conj_bidegree(p: u8, q: u8) -> (u8, u8) {
    if is_low(p, q) {
        (q, p)
    } else {
        (q + 1, p - 1)
    }
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

#[derive(Clone)]
pub struct PqForm {
    p: u8,
    q: u8,
    primary: FrameTensor,
}

impl PqForm {
    /// Checks the index signature and the antisymmetry of both groups. The
    /// trace condition needs the Levi form; see [`PqForm::validate`].
    pub fn new(p: u8, q: u8, primary: FrameTensor) -> Result<PqForm> {
        let slots = primary_slots(p, q)?;
        if primary.slots() != slots.as_slice() {
            return Err(Error::ShapeMismatch(p, q));
        }
        let (a, _) = shape(p, q)?;
        let hol: Vec<usize> = (0..a).collect();
        let anti: Vec<usize> = (a..slots.len()).collect();
        if !primary.is_antisymmetric(&hol) || !primary.is_antisymmetric(&anti) {
            return Err(Error::ShapeMismatch(p, q));
        }
        Ok(PqForm { p, q, primary })
    }

    pub fn zero(p: u8, q: u8) -> Result<PqForm> {
        Ok(PqForm { p, q, primary: FrameTensor::zeros(&primary_slots(p, q)?) })
    }

    pub fn function(f: Scalar) -> PqForm {
        PqForm { p: 0, q: 0, primary: FrameTensor::scalar(f) }
    }

    /// Primary part from its values on increasing index tuples within each
    /// group; the rest is filled in by antisymmetry.
    pub fn from_sorted_fn(p: u8, q: u8, mut f: impl FnMut(&[usize]) -> Scalar) -> Result<PqForm> {
        let slots = primary_slots(p, q)?;
        let mut seen: Vec<Option<Scalar>> = vec![None; 32];
        let primary = FrameTensor::from_fn(&slots, |idx| {
            let frame: Vec<usize> = slots.iter().zip(idx).map(|(s, &a)| s.frame_index(a)).collect();
            let (mask, sign) = ordered_mask(&frame);
            if sign == 0 {
                return Scalar::zero();
            }
            let v = seen[mask as usize].get_or_insert_with(|| {
                let sorted: Vec<usize> = (1..5).filter(|j| mask & (1 << j) != 0).map(|j| (j - 1) % 2).collect();
                f(&sorted)
            });
            v.scale_int(sign)
        });
        Ok(PqForm { p, q, primary })
    }

    pub fn bidegree(&self) -> (u8, u8) {
        (self.p, self.q)
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn degree(&self) -> u8 {
        self.p + self.q
    }

    pub fn is_low(&self) -> bool {
        is_low(self.p, self.q)
    }

    /// `(|A|, |B|)`.
    pub fn index_counts(&self) -> (usize, usize) {
        shape(self.p, self.q).expect("valid bidegree")
    }

    pub fn primary(&self) -> &FrameTensor {
        &self.primary
    }

    /// The scalar of a function or of a top form.
    pub fn value(&self) -> &Scalar {
        assert_eq!(self.primary.rank(), 0, "not a scalar-valued bidegree");
        self.primary.get(&[])
    }

    pub fn is_zero(&self) -> bool {
        self.primary.is_zero()
    }

    /// `h^{μν̄} ω_{μ..ν̄..}` over the first index of each group, when both are
    /// present.
    pub fn trace(&self, s: &PHStructure) -> Option<FrameTensor> {
        let (a, b) = self.index_counts();
        (a > 0 && b > 0).then(|| s.trace(&self.primary, 0, a))
    }

    pub fn validate(&self, s: &PHStructure) -> Result<()> {
        match self.trace(s) {
            Some(t) if !t.is_zero() => Err(Error::TraceCondition(self.p, self.q)),
            _ => Ok(()),
        }
    }

    fn map(&self, f: impl Fn(&FrameTensor) -> FrameTensor) -> PqForm {
        PqForm { p: self.p, q: self.q, primary: f(&self.primary) }
    }

    pub fn scale(&self, f: &Scalar) -> PqForm {
        self.map(|t| t.scale(f))
    }

    pub fn scale_int(&self, k: i64) -> PqForm {
        self.scale(&Scalar::int(k))
    }

    pub fn neg(&self) -> PqForm {
        self.scale_int(-1)
    }

    pub fn add(&self, o: &PqForm) -> PqForm {
        assert_eq!(self.bidegree(), o.bidegree(), "bidegree mismatch");
        self.map(|t| t.add(&o.primary))
    }

    pub fn sub(&self, o: &PqForm) -> PqForm {
        assert_eq!(self.bidegree(), o.bidegree(), "bidegree mismatch");
        self.map(|t| t.sub(&o.primary))
    }

    /// Apply a map to every component, e.g. a substitution.
    pub fn map_components(&self, f: impl Fn(&Scalar) -> Scalar) -> PqForm {
        self.map(|t| t.map(&f))
    }
}

impl PartialEq for PqForm {
    fn eq(&self, o: &PqForm) -> bool {
        self.bidegree() == o.bidegree() && self.primary.sub(&o.primary).is_zero()
    }
}

impl fmt::Debug for PqForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PqForm({},{}) {:?}", self.p, self.q, self.primary)
    }
}

/// A form of fixed total degree split into its bidegree components.
#[derive(Clone, PartialEq)]
pub struct Graded {
    k: u8,
    parts: Vec<PqForm>,
}

impl Graded {
    pub fn zero(k: u8) -> Graded {
        Graded { k, parts: bidegrees(k).into_iter().map(|(p, q)| PqForm::zero(p, q).expect("valid")).collect() }
    }

    pub fn from_form(w: PqForm) -> Graded {
        let mut g = Graded::zero(w.degree());
        g.insert(w);
        g
    }

    pub fn degree(&self) -> u8 {
        self.k
    }

    /// Add `w` into its bidegree slot.
    pub fn insert(&mut self, w: PqForm) {
        assert_eq!(w.degree(), self.k, "degree mismatch");
        let slot = self.parts.iter_mut().find(|x| x.bidegree() == w.bidegree()).expect("bidegree of this degree");
        *slot = slot.add(&w);
    }

    pub fn part(&self, p: u8, q: u8) -> Result<&PqForm> {
        self.parts.iter().find(|x| x.bidegree() == (p, q)).ok_or(Error::InvalidBidegree(p, q))
    }

    pub fn parts(&self) -> &[PqForm] {
        &self.parts
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(PqForm::is_zero)
    }

    pub fn add(&self, o: &Graded) -> Graded {
        assert_eq!(self.k, o.k, "degree mismatch");
        Graded { k: self.k, parts: self.parts.iter().zip(&o.parts).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &Graded) -> Graded {
        assert_eq!(self.k, o.k, "degree mismatch");
        Graded { k: self.k, parts: self.parts.iter().zip(&o.parts).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, f: &Scalar) -> Graded {
        Graded { k: self.k, parts: self.parts.iter().map(|a| a.scale(f)).collect() }
    }

    /// The `(p, q)` component, requiring every other one to vanish.
    pub fn only(&self, op: &'static str, p: u8, q: u8) -> Result<PqForm> {
        for x in &self.parts {
            if x.bidegree() != (p, q) && !x.is_zero() {
                return Err(Error::WrongBidegree { op, p: x.p, q: x.q });
            }
        }
        self.part(p, q).cloned()
    }

    pub fn validate(&self, s: &PHStructure) -> Result<()> {
        self.parts.iter().try_for_each(|x| x.validate(s))
    }
}

impl fmt::Debug for Graded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.parts.iter().filter(|x| !x.is_zero())).finish()
    }
}

/// Subtract `½ (tr ω) h` from the traced pair so the trace condition holds.
fn trace_project(s: &PHStructure, w: PqForm) -> PqForm {
    let Some(tr) = w.trace(s) else { return w };
    debug_assert_eq!(w.primary.rank(), 2);
    let half = tr.get(&[]) * &Scalar::ratio(1, 2);
    w.sub(&PqForm { p: w.p, q: w.q, primary: s.levi_tensor().scale(&half) })
}

/// Random polynomial form, trace-projected.
pub fn random_form(rng: &mut ChaCha8Rng, s: &PHStructure, p: u8, q: u8, shape: PolyShape) -> Result<PqForm> {
    let w = PqForm::from_sorted_fn(p, q, |_| random_poly(rng, shape))?;
    Ok(trace_project(s, w))
}

/// Random form with every component carrying `σ^m`.
pub fn random_cutoff_form(rng: &mut ChaCha8Rng, s: &PHStructure, p: u8, q: u8, shape: PolyShape, m: u32) -> Result<PqForm> {
    let w = PqForm::from_sorted_fn(p, q, |_| random_cutoff(rng, shape, m))?;
    Ok(trace_project(s, w))
}

/// Every multi-index of the primary part together with its frame indices.
pub(crate) fn frame_entries(slots: &[Slot]) -> Vec<(Vec<usize>, Vec<usize>)> {
    multi_indices(slots)
        .into_iter()
        .map(|idx| {
            let fr = slots.iter().zip(&idx).map(|(s, &a)| s.frame_index(a)).collect();
            (idx, fr)
        })
        .collect()
}

pub(crate) fn inv_factorial(n: usize) -> Scalar {
    Scalar::ratio(1, factorial(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_cover_the_diagram() {
        let all: Vec<(u8, u8)> = (0..=5).flat_map(bidegrees).collect();
        assert_eq!(all.len(), 12);
        assert_eq!(shape(3, 2).unwrap(), (0, 0));
        assert_eq!(shape(2, 1).unwrap(), (1, 1));
        assert_eq!(shape(1, 2).unwrap(), (0, 2));
        assert!(shape(0, 3).is_err());
        for (p, q) in all {
            let (cp, cq) = conj_bidegree(p, q);
            assert_eq!(conj_bidegree(cp, cq), (p, q));
            let (a, b) = shape(p, q).unwrap();
            assert_eq!(shape(cp, cq).unwrap(), (b, a));
        }
    }

    #[test]
    fn sorted_builder_is_antisymmetric() {
        let w = PqForm::from_sorted_fn(2, 0, |_| Scalar::int(3)).unwrap();
        assert_eq!(w.primary().get(&[1, 0]), &Scalar::int(-3));
        assert!(w.primary().get(&[0, 0]).is_zero());
        assert!(PqForm::new(2, 0, w.primary().clone()).is_ok());
    }

    #[test]
    fn random_forms_are_trace_free() {
        let s = PHStructure::flat();
        for (p, q) in [(1, 1), (2, 1)] {
            let w = random_form(&mut crate::fixture::rng_for(1, "t", 0), &s, p, q, PolyShape::default()).unwrap();
            assert!(w.validate(&s).is_ok());
        }
    }
}
