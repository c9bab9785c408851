//! Packed monomials: one byte per exponent.
//!
//! Bytes 0..=4 hold the coordinate exponents in [`Var`] order, byte 5 the
//! cutoff exponent and byte 6 the Laurent exponent of `u`, offset by 128.

use std::fmt;

/// Coordinates of the Heisenberg model. The order doubles as the frame
/// direction order: Reeb, holomorphic, antiholomorphic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T = 0,
    Z1 = 1,
    Z2 = 2,
    Zb1 = 3,
    Zb2 = 4,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::T, Var::Z1, Var::Z2, Var::Zb1, Var::Zb2];

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::Z1 => "z1",
            Var::Z2 => "z2",
            Var::Zb1 => "zb1",
            Var::Zb2 => "zb2",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }

    /// Complex conjugate coordinate.
    pub fn conj(self) -> Var {
        match self {
            Var::T => Var::T,
            Var::Z1 => Var::Zb1,
            Var::Z2 => Var::Zb2,
            Var::Zb1 => Var::Z1,
            Var::Zb2 => Var::Z2,
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub(crate) const SIGMA_BYTE: u32 = 5;
pub(crate) const U_BYTE: u32 = 6;
pub(crate) const U_OFFSET: u64 = 128 << (8 * U_BYTE);
const OVERFLOW_MASK: u64 = 0xFF00_0000_0000_0000 | 0x0000_8080_8080_8080;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mono(pub(crate) u64);

impl Mono {
    pub const ONE: Mono = Mono(U_OFFSET);

    pub fn var(v: Var) -> Mono {
        Mono(U_OFFSET + (1 << (8 * v as u32)))
    }

    pub fn sigma() -> Mono {
        Mono(U_OFFSET + (1 << (8 * SIGMA_BYTE)))
    }

    pub fn u_pow(k: i32) -> Mono {
        assert!((-128..=127).contains(&k), "u exponent out of range");
        Mono(((k + 128) as u64) << (8 * U_BYTE))
    }

    pub fn exp(self, v: Var) -> u32 {
        ((self.0 >> (8 * v as u32)) & 0xFF) as u32
    }

    pub fn sigma_exp(self) -> u32 {
        ((self.0 >> (8 * SIGMA_BYTE)) & 0xFF) as u32
    }

    pub fn u_exp(self) -> i32 {
        ((self.0 >> (8 * U_BYTE)) & 0xFF) as i32 - 128
    }

    pub fn coord_degree(self) -> u32 {
        Var::ALL.iter().map(|&v| self.exp(v)).sum()
    }

    /// Product of monomials; panics past the exponent range.
    #[inline]
    pub fn mul(self, o: Mono) -> Mono {
        let r = self.0.wrapping_add(o.0).wrapping_sub(U_OFFSET);
        assert!(r & OVERFLOW_MASK == 0, "monomial exponent overflow");
        Mono(r)
    }

    pub fn without_u(self) -> Mono {
        Mono((self.0 & !(0xFF << (8 * U_BYTE))) | U_OFFSET)
    }

    pub fn without_sigma(self) -> Mono {
        Mono(self.0 & !(0xFF << (8 * SIGMA_BYTE)))
    }

    /// Lower the exponent of `v` by one; caller checks it is positive.
    #[inline]
    pub(crate) fn lower(self, v: Var) -> Mono {
        Mono(self.0 - (1 << (8 * v as u32)))
    }

    #[inline]
    pub(crate) fn lower_sigma(self) -> Mono {
        Mono(self.0 - (1 << (8 * SIGMA_BYTE)))
    }

    pub fn conj(self) -> Mono {
        let mut r = self.0 & !0xFF_FFFF_FF00;
        for v in [Var::Z1, Var::Z2, Var::Zb1, Var::Zb2] {
            r |= (self.exp(v) as u64) << (8 * v.conj() as u32);
        }
        Mono(r)
    }

    /// Divisibility ignoring `u` (which is always invertible).
    pub fn divides_mod_u(self, o: Mono) -> bool {
        Var::ALL.iter().all(|&v| self.exp(v) <= o.exp(v)) && self.sigma_exp() <= o.sigma_exp()
    }

    /// `o / self`, assuming [`Mono::divides_mod_u`].
    pub fn quotient(self, o: Mono) -> Mono {
        Mono(o.0.wrapping_sub(self.0).wrapping_add(U_OFFSET))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut put = |f: &mut fmt::Formatter<'_>, s: &str, e: i64| -> fmt::Result {
            if e == 0 {
                return Ok(());
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 { write!(f, "{s}") } else { write!(f, "{s}^{e}") }
        };
        for v in Var::ALL {
            put(f, v.name(), self.exp(v) as i64)?;
        }
        put(f, "sigma", self.sigma_exp() as i64)?;
        put(f, "u", self.u_exp() as i64)?;
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}
