//! Pseudohermitian structures `e^Υ θ₀` on the Heisenberg model and their
//! Tanaka-Webster data, obtained by solving the structure equations.

use super::tensor::{FrameTensor, Slot};
use crate::error::{Error, Result};
use crate::expr::{solve, to_sexpr, Context, Scalar, Var};
use crate::forms::{conj_index, wedge_sign, Basis, CoordForm, Form, FrameForm};
use crate::mutation::{self, Mutation};
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

type Mat5 = [[Scalar; 5]; 5];
type Mat2 = [[Scalar; 2]; 2];
/// `[α][μ][c]`: the component of a connection form along `θ^c`.
type Symbols = [[[Scalar; 5]; 2]; 2];

fn mat5() -> Mat5 {
    std::array::from_fn(|_| std::array::from_fn(|_| Scalar::zero()))
}

fn symbols() -> Symbols {
    std::array::from_fn(|_| std::array::from_fn(|_| std::array::from_fn(|_| Scalar::zero())))
}

#[derive(Clone, Debug)]
pub struct PHStructure {
    ctx: Arc<Context>,
    upsilon: Scalar,
    /// `Υ₀` with `u = e^{Υ₀}`; `upsilon = power · factor`.
    factor: Scalar,
    power: i32,
    mutation: Option<Mutation>,
    /// Rows `θ, θ¹, θ², θ¹̄, θ²̄` in coordinates.
    coframe: [CoordForm; 5],
    /// `coframe_matrix[i][j] = θ^i(∂_j)`.
    coframe_matrix: Mat5,
    /// `frame_matrix[a][j] = dx^j(e_a)`, so `e_a = Σ_j frame_matrix[a][j] ∂_j`.
    frame_matrix: Mat5,
    coord_to_frame: Vec<FrameForm>,
    frame_to_coord: Vec<CoordForm>,
    dtheta: Vec<FrameForm>,
    h: Mat2,
    /// `hinv[α][β] = h^{αβ̄}`.
    hinv: Mat2,
    gamma: Symbols,
    gamma_bar: Symbols,
    torsion: FrameTensor,
    curvature: FrameTensor,
    ricci: FrameTensor,
    scalar_curvature: Scalar,
    schouten: FrameTensor,
    schouten_trace: Scalar,
    einstein: FrameTensor,
}

fn sym(a: usize, b: usize) -> usize {
    a + b
}

impl PHStructure {
    /// The standard structure `θ₀ = dt + (i/2) Σ (z dz̄ − z̄ dz)`.
    pub fn flat() -> PHStructure {
        PHStructure::build(Scalar::zero(), None).expect("flat structure is valid")
    }

    /// `e^Υ θ` with the admissible coframe `θ^α + iΥ^α θ`. Rescales compose
    /// with the factor already carried by `base`.
    pub fn rescale(base: &PHStructure, upsilon: &Scalar) -> Result<PHStructure> {
        if let Some(c) = base.factor_multiple(upsilon) {
            return PHStructure::build_power(base.factor.clone(), base.power + c, base.mutation);
        }
        let total = &base.upsilon + upsilon;
        PHStructure::build(total, base.mutation)
    }

    /// `e^{nΥ₀} θ₀` with the exponential symbol standing for `e^{Υ₀}`.
    /// Structures built from the same `Υ₀` share one differential ring, so
    /// their forms can be compared directly; `n = 0` is the flat structure
    /// in that ring.
    pub fn power(factor: &Scalar, n: i32) -> Result<PHStructure> {
        PHStructure::build_power(factor.clone(), n, None)
    }

    /// True when forms of both structures live in the same ring.
    pub fn shares_ring(&self, o: &PHStructure) -> bool {
        self.factor == o.factor || self.factor.is_zero() && o.ctx.upsilon().is_none() || o.factor.is_zero() && self.ctx.upsilon().is_none()
    }

    /// `c` with `Υ = c Υ₀` for the factor `Υ₀` of this structure.
    fn factor_multiple(&self, upsilon: &Scalar) -> Option<i32> {
        if self.factor.is_zero() {
            return None;
        }
        (-8..=8).find(|&c| (upsilon - &self.factor.scale_int(c as i64)).is_zero())
    }

    /// Same structure with a corruption switched on (harness sensitivity).
    pub fn with_mutation(&self, m: Option<Mutation>) -> Result<PHStructure> {
        PHStructure::build_power(self.factor.clone(), self.power, m)
    }

    pub fn mutation(&self) -> Option<Mutation> {
        self.mutation
    }

    pub(crate) fn sign(&self, m: Mutation) -> i64 {
        mutation::sign(self.mutation, m)
    }

    fn build(upsilon: Scalar, mutation: Option<Mutation>) -> Result<PHStructure> {
        PHStructure::build_power(upsilon, 1, mutation)
    }

    fn build_power(factor: Scalar, power: i32, mutation: Option<Mutation>) -> Result<PHStructure> {
        if factor.has_u() || factor.has_sigma() || !factor.is_real() {
            return Err(Error::InvalidConformalFactor);
        }
        let upsilon = factor.scale_int(power as i64);
        let flat_ctx = Context::plain();
        let half_i = Scalar::constant(crate::expr::Coeff::gauss(0, 1)) * Scalar::ratio(1, 2);
        let z = |k: usize| Scalar::var(Var::from_index(k));
        let theta0 = CoordForm::one_form([Scalar::one(), -(&half_i * &z(3)), -(&half_i * &z(4)), &half_i * &z(1), &half_i * &z(2)]);
        let ctx = if factor.is_zero() { flat_ctx.clone() } else { Context::with_upsilon(factor.clone())? };
        let coframe = if upsilon.is_zero() {
            let hol = |a: usize| CoordForm::wedge_of(&[1 + a]);
            [theta0, hol(0), hol(1), hol(0).conj(), hol(1).conj()]
        } else {
            // Υ^α = Z_ᾱ Υ for the flat frame, where h = δ.
            let zbar = |a: usize| -> Result<Scalar> {
                let d = flat_ctx.derive(&upsilon, Var::from_index(3 + a))?;
                let dt = flat_ctx.derive(&upsilon, Var::T)?;
                Ok(d - &half_i * &z(1 + a) * dt)
            };
            let mut hol = Vec::new();
            for a in 0..2 {
                let up = zbar(a)?;
                let f = &CoordForm::wedge_of(&[1 + a]) + &theta0.scale(&(Scalar::i() * up));
                hol.push(f);
            }
            let theta = theta0.scale(&Scalar::u_pow(power));
            let (h0, h1) = (hol[0].clone(), hol[1].clone());
            [theta, h0.clone(), h1.clone(), h0.conj(), h1.conj()]
        };
        let mut s = PHStructure::from_coframe(ctx, upsilon, mutation, coframe)?;
        s.factor = factor;
        s.power = power;
        Ok(s)
    }

    fn from_coframe(ctx: Arc<Context>, upsilon: Scalar, mutation: Option<Mutation>, coframe: [CoordForm; 5]) -> Result<PHStructure> {
        let mut m = mat5();
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = coframe[i].get(1 << j).clone();
            }
        }
        let ident: Vec<Vec<Scalar>> = (0..5).map(|i| (0..5).map(|j| Scalar::int((i == j) as i64)).collect()).collect();
        let inv = solve(m.iter().map(|r| r.to_vec()).collect(), ident)?;
        let mut n = mat5();
        for (a, row) in n.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = inv[j][a].clone();
            }
        }
        let dx_in_frame: Vec<FrameForm> = (0..5).map(|j| FrameForm::one_form(std::array::from_fn(|i| n[i][j].clone()))).collect();
        let coord_to_frame = basis_images(&dx_in_frame);
        let theta_in_coord: Vec<CoordForm> = coframe.to_vec();
        let frame_to_coord = basis_images(&theta_in_coord);

        let mut s = PHStructure {
            ctx,
            factor: upsilon.clone(),
            power: 1,
            upsilon,
            mutation,
            coframe,
            coframe_matrix: m,
            frame_matrix: n,
            coord_to_frame,
            frame_to_coord,
            dtheta: Vec::new(),
            h: Default::default(),
            hinv: Default::default(),
            gamma: symbols(),
            gamma_bar: symbols(),
            torsion: FrameTensor::zeros(&[Slot::Hol, Slot::Hol]),
            curvature: FrameTensor::zeros(&[Slot::Hol, Slot::AntiHol, Slot::Hol, Slot::AntiHol]),
            ricci: FrameTensor::zeros(&[Slot::Hol, Slot::AntiHol]),
            scalar_curvature: Scalar::zero(),
            schouten: FrameTensor::zeros(&[Slot::Hol, Slot::AntiHol]),
            schouten_trace: Scalar::zero(),
            einstein: FrameTensor::zeros(&[Slot::Hol, Slot::AntiHol]),
        };
        let mut dtheta = Vec::with_capacity(32);
        for mask in 0..32usize {
            let c = s.frame_to_coord[mask].d(&s.ctx)?;
            dtheta.push(s.to_frame(&c));
        }
        s.dtheta = dtheta;
        s.levi_form()?;
        s.solve_connection()?;
        s.curvature_package()?;
        Ok(s)
    }

    fn levi_form(&mut self) -> Result<()> {
        let dt = &self.dtheta[1];
        let mut h: Mat2 = Default::default();
        for (a, row) in h.iter_mut().enumerate() {
            for (b, e) in row.iter_mut().enumerate() {
                *e = -(Scalar::i() * dt.get((1 << (1 + a)) | (1 << (3 + b))));
            }
        }
        let hform = self.levi_two_form(&h);
        if hform != *dt {
            return Err(Error::StructureInvariant("dθ is not i h θ^α∧θ^β̄"));
        }
        // hinv with Σ_γ hinv[α][γ] h[β][γ] = δ_{αβ}, i.e. the inverse of hᵀ.
        let ht: Vec<Vec<Scalar>> = (0..2).map(|i| (0..2).map(|j| h[j][i].clone()).collect()).collect();
        let ident: Vec<Vec<Scalar>> = (0..2).map(|i| (0..2).map(|j| Scalar::int((i == j) as i64)).collect()).collect();
        let inv = solve(ht, ident)?;
        self.hinv = std::array::from_fn(|a| std::array::from_fn(|b| inv[a][b].clone()));
        self.h = h;
        Ok(())
    }

    fn levi_two_form(&self, h: &Mat2) -> FrameForm {
        let mut out = FrameForm::zero();
        for (a, row) in h.iter().enumerate() {
            for (b, e) in row.iter().enumerate() {
                out.add_to((1 << (1 + a)) | (1 << (3 + b)), &(Scalar::i() * e));
            }
        }
        out
    }

    fn solve_connection(&mut self) -> Result<()> {
        const NU: usize = 46;
        let gi = |al: usize, mu: usize, c: usize| al * 10 + mu * 5 + c;
        let gbi = |al: usize, mu: usize, c: usize| 20 + al * 10 + mu * 5 + c;
        let ai = |a: usize, b: usize| 40 + sym(a, b);
        let abi = |a: usize, b: usize| 43 + sym(a, b);
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        let mut rhs: Vec<Vec<Scalar>> = Vec::new();
        let two_masks: Vec<u8> = (0u8..32).filter(|m| m.count_ones() == 2).collect();
        for bar in [false, true] {
            for al in 0..2 {
                let target = if bar { 3 + al } else { 1 + al };
                let lhs = &self.dtheta[1 << target];
                for &mask in &two_masks {
                    let mut row = vec![Scalar::zero(); NU];
                    for mu in 0..2 {
                        let first = if bar { 3 + mu } else { 1 + mu };
                        for c in 0..5 {
                            let s = wedge_sign(1 << first, 1 << c);
                            if s == 0 || ((1u8 << first) | (1u8 << c)) != mask {
                                continue;
                            }
                            let idx = if bar { gbi(mu, al, c) } else { gi(mu, al, c) };
                            row[idx] += Scalar::int(s);
                        }
                    }
                    for b in 0..2 {
                        let second = if bar { 1 + b } else { 3 + b };
                        if (1u8 | (1u8 << second)) != mask {
                            continue;
                        }
                        for g in 0..2 {
                            let k = if bar { self.hinv[al][g].conj() } else { self.hinv[al][g].clone() };
                            let idx = if bar { ai(g, b) } else { abi(g, b) };
                            row[idx] += k;
                        }
                    }
                    rows.push(row);
                    rhs.push(vec![lhs.get(mask).clone()]);
                }
            }
        }
        for al in 0..2 {
            for be in 0..2 {
                for c in 0..5 {
                    let mut row = vec![Scalar::zero(); NU];
                    for g in 0..2 {
                        row[gi(al, g, c)] += &self.h[g][be];
                        row[gbi(be, g, c)] += &self.h[al][g];
                    }
                    rows.push(row);
                    rhs.push(vec![self.e(c, &self.h[al][be])?]);
                }
            }
        }
        let x = solve(rows, rhs)?;
        let x: Vec<Scalar> = x.into_iter().map(|mut r| r.remove(0)).collect();
        for al in 0..2 {
            for mu in 0..2 {
                for c in 0..5 {
                    self.gamma[al][mu][c] = x[gi(al, mu, c)].clone();
                    self.gamma_bar[al][mu][c] = x[gbi(al, mu, c)].clone();
                }
            }
        }
        for al in 0..2 {
            for mu in 0..2 {
                for c in 0..5 {
                    if self.gamma_bar[al][mu][c] != self.gamma[al][mu][conj_index(c)].conj() {
                        return Err(Error::StructureInvariant("conjugate connection is not the conjugate"));
                    }
                }
            }
        }
        self.torsion = FrameTensor::from_fn(&[Slot::Hol, Slot::Hol], |i| x[ai(i[0], i[1])].clone());
        let abar = FrameTensor::from_fn(&[Slot::AntiHol, Slot::AntiHol], |i| x[abi(i[0], i[1])].clone());
        if abar != self.torsion.conj() {
            return Err(Error::StructureInvariant("torsion is not conjugate-symmetric"));
        }
        Ok(())
    }

    /// `ω_α^μ` as a frame one-form.
    pub fn connection_form(&self, al: usize, mu: usize) -> FrameForm {
        FrameForm::one_form(self.gamma[al][mu].clone())
    }

    fn curvature_package(&mut self) -> Result<()> {
        let mut rup: [[Mat2; 2]; 2] = Default::default();
        for (al, ra) in rup.iter_mut().enumerate() {
            for (ga, rg) in ra.iter_mut().enumerate() {
                let mut om = self.d(&self.connection_form(al, ga))?;
                for mu in 0..2 {
                    om = &om - &self.connection_form(al, mu).wedge(&self.connection_form(mu, ga));
                }
                for (rho, rr) in rg.iter_mut().enumerate() {
                    for (sg, e) in rr.iter_mut().enumerate() {
                        *e = om.get((1 << (1 + rho)) | (1 << (3 + sg))).clone();
                    }
                }
            }
        }
        let h = self.h.clone();
        self.curvature = FrameTensor::from_fn(&[Slot::Hol, Slot::AntiHol, Slot::Hol, Slot::AntiHol], |i| {
            let (al, be, rho, sg) = (i[0], i[1], i[2], i[3]);
            Scalar::sum([&rup[al][0][rho][sg] * &h[0][be], &rup[al][1][rho][sg] * &h[1][be]].iter())
        });
        self.ricci = FrameTensor::from_fn(&[Slot::Hol, Slot::AntiHol], |i| {
            Scalar::sum((0..2).map(|a| rup[a][a][i[0]][i[1]].clone()).collect::<Vec<_>>().iter())
        });
        self.scalar_curvature = self.trace2(&self.ricci);
        let r6 = self.scalar_curvature.scale_int(self.sign(Mutation::SchoutenTrace)) * Scalar::ratio(1, 6);
        let hform = self.levi_tensor();
        self.schouten = self.ricci.sub(&hform.scale(&r6)).scale(&Scalar::ratio(1, 4));
        self.schouten_trace = self.trace2(&self.schouten);
        let half_p = &self.schouten_trace * &Scalar::ratio(1, 2);
        self.einstein = self.schouten.sub(&hform.scale(&half_p));
        Ok(())
    }

    /// `h^{αβ̄} T_{αβ̄}`.
    pub fn trace2(&self, t: &FrameTensor) -> Scalar {
        assert_eq!(t.slots(), [Slot::Hol, Slot::AntiHol]);
        let mut terms = Vec::new();
        for a in 0..2 {
            for b in 0..2 {
                terms.push(&self.hinv[a][b] * t.get(&[a, b]));
            }
        }
        Scalar::sum(terms.iter())
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn upsilon(&self) -> &Scalar {
        &self.upsilon
    }

    pub fn is_flat_model(&self) -> bool {
        self.upsilon.is_zero()
    }

    pub fn coframe(&self) -> &[CoordForm; 5] {
        &self.coframe
    }

    /// `e_a = Σ_j frame_vector(a)[j] ∂_j`.
    pub fn frame_vector(&self, a: usize) -> &[Scalar; 5] {
        &self.frame_matrix[a]
    }

    pub fn h(&self, a: usize, b: usize) -> &Scalar {
        &self.h[a][b]
    }

    pub fn hinv(&self, a: usize, b: usize) -> &Scalar {
        &self.hinv[a][b]
    }

    pub fn levi_tensor(&self) -> FrameTensor {
        FrameTensor::from_fn(&[Slot::Hol, Slot::AntiHol], |i| self.h[i[0]][i[1]].clone())
    }

    /// Component of `ω_α^μ` along `θ^c`.
    pub fn christoffel(&self, al: usize, mu: usize, c: usize) -> &Scalar {
        &self.gamma[al][mu][c]
    }

    /// Component of `ω_ᾱ^μ̄` along `θ^c`.
    pub fn christoffel_bar(&self, al: usize, mu: usize, c: usize) -> &Scalar {
        &self.gamma_bar[al][mu][c]
    }

    pub fn torsion(&self) -> &FrameTensor {
        &self.torsion
    }

    /// `R_{αβ̄ρσ̄}`.
    pub fn curvature(&self) -> &FrameTensor {
        &self.curvature
    }

    pub fn ricci(&self) -> &FrameTensor {
        &self.ricci
    }

    pub fn scalar_curvature(&self) -> &Scalar {
        &self.scalar_curvature
    }

    pub fn schouten(&self) -> &FrameTensor {
        &self.schouten
    }

    pub fn schouten_trace(&self) -> &Scalar {
        &self.schouten_trace
    }

    pub fn einstein(&self) -> &FrameTensor {
        &self.einstein
    }

    /// Primary part `−i E_{αβ̄}` of the Lee form.
    pub fn lee_primary(&self) -> FrameTensor {
        self.einstein.scale(&Scalar::i().scale_int(-self.sign(Mutation::LeeSign)))
    }

    /// Frame derivative `e_c f`.
    pub fn e(&self, c: usize, f: &Scalar) -> Result<Scalar> {
        let mut parts = Vec::new();
        for (j, coef) in self.frame_matrix[c].iter().enumerate() {
            if coef.is_empty() {
                continue;
            }
            let df = self.ctx.derive(f, Var::from_index(j))?;
            if !df.is_empty() {
                parts.push(coef * &df);
            }
        }
        Ok(Scalar::sum(parts.iter()))
    }

    pub fn to_frame(&self, w: &CoordForm) -> FrameForm {
        convert(w, &self.coord_to_frame)
    }

    pub fn to_coord(&self, w: &FrameForm) -> CoordForm {
        convert(w, &self.frame_to_coord)
    }

    /// `dθ^I` for a frame basis element.
    pub fn d_basis(&self, mask: u8) -> &FrameForm {
        &self.dtheta[mask as usize]
    }

    /// Exterior derivative of a frame form.
    pub fn d(&self, w: &FrameForm) -> Result<FrameForm> {
        let mut buckets: Vec<Vec<Scalar>> = vec![Vec::new(); 32];
        for (m, f) in w.components() {
            for c in 0..5 {
                let s = wedge_sign(1 << c, m);
                if s == 0 {
                    continue;
                }
                let ef = self.e(c, f)?;
                if !ef.is_empty() {
                    buckets[(m | (1 << c)) as usize].push(ef.scale_int(s));
                }
            }
            for (dm, dc) in self.dtheta[m as usize].components() {
                buckets[dm as usize].push(f * dc);
            }
        }
        let mut out = FrameForm::zero();
        for (m, parts) in buckets.iter().enumerate() {
            if !parts.is_empty() {
                out.set(m as u8, Scalar::sum(parts.iter()));
            }
        }
        Ok(out)
    }

    /// `dθ` in the frame.
    pub fn dtheta(&self) -> &FrameForm {
        &self.dtheta[1]
    }

    /// Covariant derivative with the new index of type `dir` appended.
    pub fn nabla(&self, t: &FrameTensor, dir: Slot) -> Result<FrameTensor> {
        let mut slots = t.slots().to_vec();
        slots.push(dir);
        let rank = t.rank();
        FrameTensor::try_from_fn(&slots, |idx| {
            let c = dir.frame_index(idx[rank]);
            let base = &idx[..rank];
            let mut parts = vec![self.e(c, t.get(base))?];
            let mut probe = base.to_vec();
            for (k, slot) in t.slots().iter().enumerate() {
                let table = match slot {
                    Slot::Hol => &self.gamma,
                    Slot::AntiHol => &self.gamma_bar,
                    Slot::Reeb => continue,
                };
                for m in 0..2 {
                    let g = &table[base[k]][m][c];
                    if g.is_empty() {
                        continue;
                    }
                    probe[k] = m;
                    parts.push(-(g * t.get(&probe)));
                }
                probe[k] = base[k];
            }
            Ok(Scalar::sum(parts.iter()))
        })
    }

    /// Contract a Hol slot against an AntiHol slot with `h^{-1}`.
    pub fn trace(&self, t: &FrameTensor, hol: usize, anti: usize) -> FrameTensor {
        assert_eq!(t.slots()[hol], Slot::Hol);
        assert_eq!(t.slots()[anti], Slot::AntiHol);
        let keep: Vec<usize> = (0..t.rank()).filter(|&k| k != hol && k != anti).collect();
        let slots: Vec<Slot> = keep.iter().map(|&k| t.slots()[k]).collect();
        FrameTensor::from_fn(&slots, |idx| {
            let mut full = vec![0; t.rank()];
            for (n, &k) in keep.iter().enumerate() {
                full[k] = idx[n];
            }
            let mut parts = Vec::new();
            for a in 0..2 {
                for b in 0..2 {
                    let k = &self.hinv[a][b];
                    if k.is_empty() {
                        continue;
                    }
                    full[hol] = a;
                    full[anti] = b;
                    let v = t.get(&full);
                    if !v.is_empty() {
                        parts.push(k * v);
                    }
                }
            }
            Scalar::sum(parts.iter())
        })
    }

    /// `∇^μ T_{..μ..}` contracting the Hol slot `slot`.
    pub fn div_hol(&self, t: &FrameTensor, slot: usize) -> Result<FrameTensor> {
        let n = self.nabla(t, Slot::AntiHol)?;
        Ok(self.trace(&n, slot, t.rank()))
    }

    /// `∇^ν̄ T_{..ν̄..}` contracting the AntiHol slot `slot`.
    pub fn div_antihol(&self, t: &FrameTensor, slot: usize) -> Result<FrameTensor> {
        let n = self.nabla(t, Slot::Hol)?;
        Ok(self.trace(&n, t.rank(), slot))
    }

    /// Raise the AntiHol slot `slot` of `t` and contract it with the Hol slot
    /// `with` of `o`: `Σ t_{..ν̄..} h^{μν̄} o_{..μ..}`. Result slots: remaining
    /// slots of `t`, then remaining slots of `o`.
    pub fn contract(&self, t: &FrameTensor, slot: usize, o: &FrameTensor, with: usize) -> FrameTensor {
        let full = t.outer(o);
        self.trace(&full, t.rank() + with, slot)
    }

    /// Residuals of every structure identity; all must be exact zeros.
    pub fn invariant_residuals(&self) -> Result<Vec<(&'static str, Scalar)>> {
        let mut out = Vec::new();
        let reeb = &self.frame_matrix[0];
        let mut th_t = Vec::new();
        for j in 0..5 {
            th_t.push(&self.coframe_matrix[0][j] * &reeb[j]);
        }
        out.push(("theta(T) - 1", Scalar::sum(th_t.iter()) - Scalar::one()));
        let dth = self.coframe[0].d(&self.ctx)?;
        let mut it = CoordForm::zero();
        for (j, v) in reeb.iter().enumerate() {
            it = &it + &dth.contract(j).scale(v);
        }
        for (_, f) in it.components() {
            out.push(("dtheta(T, .)", f.clone()));
        }
        let lf = &self.to_frame(&dth) - &self.levi_two_form(&self.h);
        for (_, f) in lf.components() {
            out.push(("dtheta - i h theta^a theta^bbar", f.clone()));
        }
        for al in 0..2 {
            let mut rhs = FrameForm::zero();
            for mu in 0..2 {
                rhs = &rhs + &FrameForm::wedge_of(&[1 + mu]).wedge(&self.connection_form(mu, al));
            }
            for b in 0..2 {
                let mut a_up = Vec::new();
                for g in 0..2 {
                    a_up.push(&self.hinv[al][g] * &self.torsion.get(&[g, b]).conj());
                }
                rhs = &rhs + &FrameForm::wedge_of(&[0, 3 + b]).scale(&Scalar::sum(a_up.iter()));
            }
            let res = &self.to_frame(&self.coframe[1 + al].d(&self.ctx)?) - &rhs;
            for (_, f) in res.components() {
                out.push(("structure equation for dtheta^a", f.clone()));
            }
        }
        for al in 0..2 {
            for be in 0..2 {
                for c in 0..5 {
                    let mut r = self.e(c, &self.h[al][be])?;
                    for g in 0..2 {
                        r -= &self.gamma[al][g][c] * &self.h[g][be];
                        r -= &self.gamma_bar[be][g][c] * &self.h[al][g];
                    }
                    out.push(("dh = omega + omega-bar", r));
                }
            }
        }
        out.push(("trace of E", self.trace2(&self.einstein)));
        Ok(out)
    }

    /// Named component s-expressions for golden files.
    pub fn dump(&self) -> StructureDump {
        let mut fields = BTreeMap::new();
        let names = ["theta", "theta1", "theta2"];
        for (k, name) in names.iter().enumerate() {
            for (m, f) in self.coframe[k].components() {
                fields.insert(format!("{name}[{m:05b}]"), to_sexpr(f));
            }
        }
        for (k, name) in ["T", "Z1", "Z2"].iter().enumerate() {
            for j in 0..5 {
                fields.insert(format!("{name}.{}", Var::from_index(j).name()), to_sexpr(&self.frame_matrix[k][j]));
            }
        }
        for a in 0..2 {
            for b in 0..2 {
                fields.insert(format!("h[{a}{b}]"), to_sexpr(&self.h[a][b]));
                for c in 0..5 {
                    fields.insert(format!("Gamma[{a}][{b}][{c}]"), to_sexpr(&self.gamma[a][b][c]));
                }
            }
        }
        let tensors = [("A", &self.torsion), ("R", &self.curvature), ("Ric", &self.ricci), ("P", &self.schouten), ("E", &self.einstein)];
        for (name, t) in tensors {
            for (idx, v) in t.entries() {
                let key: String = idx.iter().map(|i| i.to_string()).collect();
                fields.insert(format!("{name}[{key}]"), to_sexpr(v));
            }
        }
        let lee = self.lee_primary();
        for (idx, v) in lee.entries() {
            fields.insert(format!("lee[{}{}]", idx[0], idx[1]), to_sexpr(v));
        }
        fields.insert("Rscal".into(), to_sexpr(&self.scalar_curvature));
        fields.insert("Ptrace".into(), to_sexpr(&self.schouten_trace));
        StructureDump { upsilon: to_sexpr(&self.upsilon), fields }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StructureDump {
    pub upsilon: String,
    pub fields: BTreeMap<String, String>,
}

/// Images of all 32 basis elements under the map sending generator `j` to
/// `gens[j]`.
fn basis_images<B: Basis>(gens: &[Form<B>]) -> Vec<Form<B>> {
    let mut out: Vec<Form<B>> = Vec::with_capacity(32);
    out.push(Form::<B>::scalar(Scalar::one()));
    for mask in 1..32u8 {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << low);
        let img = gens[low].wedge(&out[rest as usize]);
        out.push(img);
    }
    out
}

fn convert<A: Basis, B: Basis>(w: &Form<A>, images: &[Form<B>]) -> Form<B> {
    let mut buckets: Vec<Vec<Scalar>> = vec![Vec::new(); 32];
    for (m, f) in w.components() {
        for (im, c) in images[m as usize].components() {
            buckets[im as usize].push(f * c);
        }
    }
    let mut out = Form::<B>::zero();
    for (m, parts) in buckets.iter().enumerate() {
        if !parts.is_empty() {
            out.set(m as u8, Scalar::sum(parts.iter()));
        }
    }
    out
}
