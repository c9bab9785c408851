//! Exterior algebra on five generators.
//!
//! A form is stored densely by basis mask: bit `j` set means the `j`-th
//! generator occurs, generators ordered increasingly. The same storage
//! serves the coordinate basis `{dt, dz1, dz2, dzb1, dzb2}` and the coframe
//! basis `{theta, theta^1, theta^2, theta^1bar, theta^2bar}`; these share
//! index order (Reeb, holomorphic, antiholomorphic).

use crate::error::Result;
use crate::expr::{Context, Scalar, Var};
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Sub};

pub trait Basis: Clone + Copy + fmt::Debug + Default + Send + Sync + 'static {
    const NAMES: [&'static str; 5];
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Coord;

#[derive(Clone, Copy, Debug, Default)]
pub struct Frame;

impl Basis for Coord {
    const NAMES: [&'static str; 5] = ["dt", "dz1", "dz2", "dzb1", "dzb2"];
}

impl Basis for Frame {
    const NAMES: [&'static str; 5] = ["th", "th1", "th2", "th1b", "th2b"];
}

pub const TOP: u8 = 0b11111;

#[derive(Clone)]
pub struct Form<B: Basis> {
    comps: [Scalar; 32],
    _basis: PhantomData<B>,
}

/// Honest form in the coordinate basis.
pub type CoordForm = Form<Coord>;
/// Honest form in the coframe basis of some structure.
pub type FrameForm = Form<Frame>;

/// Sign of `e_A ∧ e_B` relative to `e_{A ∪ B}`; zero when they overlap.
pub fn wedge_sign(a: u8, b: u8) -> i64 {
    if a & b != 0 {
        return 0;
    }
    let mut inversions = 0;
    for j in 0..5 {
        if b & (1 << j) != 0 {
            inversions += (a >> (j + 1)).count_ones();
        }
    }
    if inversions % 2 == 0 { 1 } else { -1 }
}

/// Conjugation of generators: 0 fixed, 1<->3, 2<->4.
pub fn conj_index(i: usize) -> usize {
    match i {
        0 => 0,
        1 => 3,
        2 => 4,
        3 => 1,
        4 => 2,
        _ => unreachable!(),
    }
}

/// Mask and sign of the conjugated basis element.
pub fn conj_mask(mask: u8) -> (u8, i64) {
    let idx: Vec<usize> = (0..5).filter(|j| mask & (1 << j) != 0).map(conj_index).collect();
    let mut sign = 1;
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if idx[a] > idx[b] {
                sign = -sign;
            }
        }
    }
    (idx.iter().fold(0u8, |m, &j| m | (1 << j)), sign)
}

/// Mask of the wedge of generators in the given order, with its sign.
pub fn ordered_mask(indices: &[usize]) -> (u8, i64) {
    let mut mask = 0u8;
    let mut sign = 1;
    for &j in indices {
        let s = wedge_sign(mask, 1 << j);
        if s == 0 {
            return (0, 0);
        }
        sign *= s;
        mask |= 1 << j;
    }
    (mask, sign)
}

impl<B: Basis> Default for Form<B> {
    fn default() -> Self {
        Form { comps: std::array::from_fn(|_| Scalar::zero()), _basis: PhantomData }
    }
}

impl<B: Basis> Form<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(f: Scalar) -> Self {
        Self::component(0, f)
    }

    pub fn component(mask: u8, f: Scalar) -> Self {
        let mut out = Self::zero();
        out.comps[mask as usize] = f;
        out
    }

    /// The basis element `e_{i1} ∧ ... ∧ e_{ik}` in the given order.
    pub fn wedge_of(indices: &[usize]) -> Self {
        let (mask, sign) = ordered_mask(indices);
        if sign == 0 {
            return Self::zero();
        }
        Self::component(mask, Scalar::int(sign))
    }

    pub fn one_form(coeffs: [Scalar; 5]) -> Self {
        let mut out = Self::zero();
        for (j, c) in coeffs.into_iter().enumerate() {
            out.comps[1 << j] = c;
        }
        out
    }

    pub fn get(&self, mask: u8) -> &Scalar {
        &self.comps[mask as usize]
    }

    pub fn set(&mut self, mask: u8, f: Scalar) {
        self.comps[mask as usize] = f;
    }

    pub fn add_to(&mut self, mask: u8, f: &Scalar) {
        self.comps[mask as usize] += f;
    }

    pub fn components(&self) -> impl Iterator<Item = (u8, &Scalar)> {
        self.comps.iter().enumerate().filter(|(_, s)| !s.is_empty()).map(|(m, s)| (m as u8, s))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Scalar::is_zero)
    }

    /// Degrees present (structurally nonzero components).
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.components().map(|(m, _)| m.count_ones()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn part(&self, degree: u32) -> Self {
        let mut out = Self::zero();
        for (m, s) in self.components() {
            if m.count_ones() == degree {
                out.comps[m as usize] = s.clone();
            }
        }
        out
    }

    pub fn scale(&self, f: &Scalar) -> Self {
        let mut out = Self::zero();
        for (m, s) in self.components() {
            out.comps[m as usize] = s * f;
        }
        out
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&Scalar::int(k))
    }

    pub fn neg(&self) -> Self {
        self.scale_int(-1)
    }

    pub fn wedge(&self, o: &Self) -> Self {
        let mut buckets: Vec<Vec<Scalar>> = vec![Vec::new(); 32];
        for (a, fa) in self.components() {
            for (b, fb) in o.components() {
                let s = wedge_sign(a, b);
                if s == 0 {
                    continue;
                }
                let p = fa * fb;
                buckets[(a | b) as usize].push(if s > 0 { p } else { -p });
            }
        }
        let mut out = Self::zero();
        for (m, parts) in buckets.iter().enumerate() {
            if !parts.is_empty() {
                out.comps[m] = Scalar::sum(parts.iter());
            }
        }
        out
    }

    pub fn map(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut out = Self::zero();
        for (m, s) in self.components() {
            out.comps[m as usize] = f(s);
        }
        out
    }

    /// Complex conjugate, assuming the basis is closed under conjugation by
    /// [`conj_index`] (true for both bases used here).
    pub fn conj(&self) -> Self {
        let mut out = Self::zero();
        for (m, s) in self.components() {
            let (cm, sign) = conj_mask(m);
            out.comps[cm as usize] = s.conj().scale_int(sign);
        }
        out
    }

    /// Interior product with the `j`-th dual basis vector.
    pub fn contract(&self, j: usize) -> Self {
        let mut out = Self::zero();
        for (m, s) in self.components() {
            if m & (1 << j) == 0 {
                continue;
            }
            let rest = m & !(1 << j);
            let below = (m & ((1 << j) - 1)).count_ones();
            out.comps[rest as usize] = if below % 2 == 0 { s.clone() } else { -s };
        }
        out
    }
}

impl CoordForm {
    /// Exterior derivative in coordinates.
    pub fn d(&self, ctx: &Context) -> Result<CoordForm> {
        let mut out = CoordForm::zero();
        for (m, f) in self.components() {
            for v in Var::ALL {
                let j = v.index();
                let s = wedge_sign(1 << j, m);
                if s == 0 {
                    continue;
                }
                let df = ctx.derive(f, v)?;
                out.comps[(m | (1 << j)) as usize] += df.scale_int(s);
            }
        }
        Ok(out)
    }
}

impl<B: Basis> Add for &Form<B> {
    type Output = Form<B>;
    fn add(self, o: &Form<B>) -> Form<B> {
        let mut out = self.clone();
        for (m, s) in o.components() {
            out.comps[m as usize] += s;
        }
        out
    }
}

impl<B: Basis> Sub for &Form<B> {
    type Output = Form<B>;
    fn sub(self, o: &Form<B>) -> Form<B> {
        let mut out = self.clone();
        for (m, s) in o.components() {
            out.comps[m as usize] -= s;
        }
        out
    }
}

impl<B: Basis> Add for Form<B> {
    type Output = Form<B>;
    fn add(self, o: Form<B>) -> Form<B> {
        &self + &o
    }
}

impl<B: Basis> Sub for Form<B> {
    type Output = Form<B>;
    fn sub(self, o: Form<B>) -> Form<B> {
        &self - &o
    }
}

impl<B: Basis> PartialEq for Form<B> {
    fn eq(&self, o: &Self) -> bool {
        (self - o).is_zero()
    }
}

impl<B: Basis> fmt::Debug for Form<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, s) in self.components() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let names: Vec<&str> = (0..5).filter(|j| m & (1 << j) != 0).map(|j| B::NAMES[j]).collect();
            write!(f, "({s:?}) {}", if names.is_empty() { "1".to_string() } else { names.join("^") })?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
