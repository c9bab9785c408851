//! Dense frame tensors with typed lower indices.

use crate::expr::Scalar;
use serde::Serialize;
use std::fmt;

/// Index type. Upper indices are never stored: they are produced on the fly
/// by contracting with the inverse Levi form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Slot {
    Hol,
    AntiHol,
    Reeb,
}

impl Slot {
    pub fn dim(self) -> usize {
        match self {
            Slot::Reeb => 1,
            _ => 2,
        }
    }

    /// Coframe index of the value `a` of this slot.
    pub fn frame_index(self, a: usize) -> usize {
        match self {
            Slot::Reeb => 0,
            Slot::Hol => 1 + a,
            Slot::AntiHol => 3 + a,
        }
    }

    pub fn conj(self) -> Slot {
        match self {
            Slot::Hol => Slot::AntiHol,
            Slot::AntiHol => Slot::Hol,
            Slot::Reeb => Slot::Reeb,
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct FrameTensor {
    slots: Vec<Slot>,
    comps: Vec<Scalar>,
}

fn size(slots: &[Slot]) -> usize {
    slots.iter().map(|s| s.dim()).product()
}

/// All multi-indices for the given slots, last index fastest.
pub fn multi_indices(slots: &[Slot]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for s in slots {
        out = out
            .into_iter()
            .flat_map(|base| {
                (0..s.dim()).map(move |a| {
                    let mut v = base.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

impl FrameTensor {
    pub fn zeros(slots: &[Slot]) -> FrameTensor {
        FrameTensor { slots: slots.to_vec(), comps: vec![Scalar::zero(); size(slots)] }
    }

    pub fn scalar(f: Scalar) -> FrameTensor {
        FrameTensor { slots: Vec::new(), comps: vec![f] }
    }

    pub fn from_fn(slots: &[Slot], mut f: impl FnMut(&[usize]) -> Scalar) -> FrameTensor {
        let comps = multi_indices(slots).iter().map(|i| f(i)).collect();
        FrameTensor { slots: slots.to_vec(), comps }
    }

    pub fn try_from_fn<E>(slots: &[Slot], mut f: impl FnMut(&[usize]) -> Result<Scalar, E>) -> Result<FrameTensor, E> {
        let comps = multi_indices(slots).iter().map(|i| f(i)).collect::<Result<Vec<_>, E>>()?;
        Ok(FrameTensor { slots: slots.to_vec(), comps })
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.slots.len());
        let mut off = 0;
        for (s, &a) in self.slots.iter().zip(idx) {
            debug_assert!(a < s.dim());
            off = off * s.dim() + a;
        }
        off
    }

    pub fn get(&self, idx: &[usize]) -> &Scalar {
        &self.comps[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], f: Scalar) {
        let o = self.offset(idx);
        self.comps[o] = f;
    }

    pub fn components(&self) -> &[Scalar] {
        &self.comps
    }

    pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, &Scalar)> {
        multi_indices(&self.slots).into_iter().zip(self.comps.iter())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Scalar::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> FrameTensor {
        FrameTensor { slots: self.slots.clone(), comps: self.comps.iter().map(f).collect() }
    }

    pub fn scale(&self, f: &Scalar) -> FrameTensor {
        self.map(|c| c * f)
    }

    pub fn scale_int(&self, k: i64) -> FrameTensor {
        self.map(|c| c.scale_int(k))
    }

    fn zip(&self, o: &FrameTensor, f: impl Fn(&Scalar, &Scalar) -> Scalar) -> FrameTensor {
        assert_eq!(self.slots, o.slots, "index signature mismatch");
        FrameTensor { slots: self.slots.clone(), comps: self.comps.iter().zip(&o.comps).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn add(&self, o: &FrameTensor) -> FrameTensor {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &FrameTensor) -> FrameTensor {
        self.zip(o, |a, b| a - b)
    }

    /// Componentwise conjugate; index types swap.
    pub fn conj(&self) -> FrameTensor {
        FrameTensor { slots: self.slots.iter().map(|s| s.conj()).collect(), comps: self.comps.iter().map(Scalar::conj).collect() }
    }

    /// Tensor product, indices of `self` first.
    pub fn outer(&self, o: &FrameTensor) -> FrameTensor {
        let mut slots = self.slots.clone();
        slots.extend_from_slice(&o.slots);
        let mut comps = Vec::with_capacity(self.comps.len() * o.comps.len());
        for a in &self.comps {
            for b in &o.comps {
                comps.push(a * b);
            }
        }
        FrameTensor { slots, comps }
    }

    /// Reorder indices: new slot `k` is old slot `order[k]`.
    pub fn permute(&self, order: &[usize]) -> FrameTensor {
        assert_eq!(order.len(), self.slots.len());
        let slots: Vec<Slot> = order.iter().map(|&k| self.slots[k]).collect();
        FrameTensor::from_fn(&slots, |idx| {
            let mut old = vec![0; idx.len()];
            for (k, &o) in order.iter().enumerate() {
                old[o] = idx[k];
            }
            self.get(&old).clone()
        })
    }

    /// Symmetric in slots `i`, `j`.
    pub fn is_symmetric(&self, i: usize, j: usize) -> bool {
        self.entries().all(|(mut idx, v)| {
            idx.swap(i, j);
            *self.get(&idx) == *v
        })
    }

    /// Antisymmetric in every pair of slots of the listed group.
    pub fn is_antisymmetric(&self, group: &[usize]) -> bool {
        for (a, &i) in group.iter().enumerate() {
            for &j in &group[a + 1..] {
                let ok = self.entries().all(|(mut idx, v)| {
                    idx.swap(i, j);
                    (self.get(&idx) + v).is_zero()
                });
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// `conj(T_{a b}) = T_{b a}` for a rank-two (Hol, AntiHol) tensor.
    pub fn is_hermitian(&self) -> bool {
        assert_eq!(self.slots, [Slot::Hol, Slot::AntiHol]);
        (0..2).all(|a| (0..2).all(|b| self.get(&[a, b]).conj() == *self.get(&[b, a])))
    }
}

impl fmt::Debug for FrameTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FrameTensor{:?}", self.slots)?;
        for (idx, v) in self.entries() {
            writeln!(f, "  {idx:?}: {v:?}")?;
        }
        Ok(())
    }
}
