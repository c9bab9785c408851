//! The identity registry. Each identity draws its data from its own seeded
//! stream, so cases are independent and can run in any order.

use crate::case::Case;
use crate::config::Suite;
use rumin::expr::Scalar;
use rumin::geometry::{FrameTensor, PHStructure, Slot};
use rumin::pairing::{self, numeric, PairingValue};
use rumin::qops::*;
use rumin::rumin::*;

type Body = fn(&mut Case) -> rumin::Result<()>;

pub struct Identity {
    pub id: &'static str,
    pub reference: &'static str,
    pub suite: Suite,
    /// Floating-point cross-check, run only with `numeric` on.
    pub numeric: bool,
    pub body: Body,
}

const fn exact(suite: Suite, id: &'static str, reference: &'static str, body: Body) -> Identity {
    Identity { id, reference, suite, numeric: false, body }
}

pub fn registry() -> &'static [Identity] {
    use Suite::*;
    const ALL: &[Identity] = &[
        exact(ComplexProperty, "complex.two-step-compositions", "bigraded Rumin complex: all two-step compositions into each bidegree sum to zero", two_step),
        exact(ComplexProperty, "complex.frame-formulas", "frame formulas for the differentials against pi-projected exterior derivative", frame_formulas),
        exact(ComplexProperty, "complex.rwedge-11-11", "closed form of the (1,1)x(1,1) product against pi of the wedge", rwedge_11_11_paths),
        exact(ComplexProperty, "complex.rwedge-11-01", "closed form of the (1,1)x(0,1) product against pi of the wedge", rwedge_11_01_paths),
        exact(ComplexProperty, "complex.adjoint-frames", "divergence formulas for the adjoints against star conjugation", adjoint_frames),
        exact(ComplexProperty, "complex.hodge-formula", "Hodge star on primary parts against the theta-J-dtheta formula", hodge_formula),
        exact(ComplexProperty, "complex.hodge-defining-relation", "omega rwedge star(conj tau) equals half the Hermitian product times theta dtheta^2", hodge_relation),
        exact(StructureEquations, "structure.invariants", "structure equations and curvature symmetries after a conformal rescaling", invariants),
        exact(StructureEquations, "structure.transformation", "transformation of torsion, Schouten tensor and the connection on (1,0)-forms", transformation),
        exact(ConformalLaws, "conformal.lee-form", "Lee form changes by i ddbar of the conformal factor", lee_law),
        exact(ConformalLaws, "conformal.second-order", "second-order operator changes by the (2,1) part of d_b^c(factor) rwedge omega", second_order_law),
        exact(ConformalLaws, "conformal.fourth-order-closed", "fourth-order operator law on i ddbar f", fourth_order_closed),
        exact(ConformalLaws, "conformal.fourth-order-general", "fourth-order operator law on arbitrary (1,1)-forms", fourth_order_general),
        exact(ConformalLaws, "conformal.q11-closed", "Q-curvature operator on closed (1,1)-forms changes by L_BC of factor times omega", q11_closed),
        exact(ConformalLaws, "conformal.r11-closed", "R operator on closed (1,1)-forms changes by i ddbar minus i dbar d of factor times omega", r11_closed),
        exact(QOperators, "q.second-order-two-paths", "second-order operator: star-Laplacian definition against frame formula", second_order_paths),
        exact(QOperators, "q.fourth-order-three-paths", "fourth-order operator: definition, dbar of the second-order operator, frame formula", fourth_order_paths),
        exact(QOperators, "q.r11-two-paths", "R operator expanded, and Q + iR = 2i times the fourth-order operator", r11_paths),
        exact(QOperators, "q.q01-two-paths", "Q01 definition against its expanded form", q01_paths),
        exact(QOperators, "q.q01-law-dbar-closed", "Q01 changes by L01 of factor times omega on dbar-closed forms", q01_law_closed),
        exact(QOperators, "q.q01-law-general", "Q01 transformation law on arbitrary (0,1)-forms", q01_law_general),
        exact(QOperators, "q.l01-kills-closed", "L01 annihilates dbar-closed forms", l01_kernel),
        exact(ScalarQ, "scalar.gjms-two-paths", "scalar GJMS operator via d Q11 ddbar against -2 d_b Q01 dbar_b", gjms_paths),
        exact(ScalarQ, "scalar.q-law", "scalar Q changes by the GJMS operator of the factor; GJMS is CR invariant", scalar_q_law),
        exact(ScalarQ, "scalar.flat-q", "scalar Q and the frame Q-curvature vanish at the flat structure", flat_q),
        exact(ScalarQ, "scalar.fefferman-hirachi", "frame formula for the Q-curvature equals 8 star scalar Q", fefferman_hirachi),
        exact(ScalarQ, "scalar.fefferman-hirachi-linearization", "linearization of the Q-curvature along the factor is 8 star L00", fh_linearization),
        exact(ScalarQ, "scalar.q-functional-integrands", "integrands of the Q functional agree up to exact forms", q_functional_integrands),
        exact(IntegralIdentities, "integral.adjointness", "L2 adjointness of d_b and dbar_b for compactly supported forms", adjointness),
        exact(IntegralIdentities, "integral.l01-hermitian", "the L01 form is Hermitian", l01_hermitian),
        exact(IntegralIdentities, "integral.l00-hermitian", "the L00 form is Hermitian", l00_hermitian),
        exact(IntegralIdentities, "integral.q01-heisenberg", "Q01 form at the flat structure is the L2 product of d_b omega with the Laplacian part", q01_heisenberg),
        exact(IntegralIdentities, "integral.q01-nonnegative", "Q01 form is nonnegative, with zero integrand for d-closed omega", q01_nonnegative),
        exact(IntegralIdentities, "integral.l00-via-q01", "L00 form equals twice the Q01 form on dbar_b of the arguments", l00_via_q01),
        exact(IntegralIdentities, "integral.invariance-defect", "omega rwedge conj L01(factor tau) integrates to zero", invariance_defect),
        exact(IntegralIdentities, "integral.stokes", "Serre pairing of dbar_b f with a d_b-exact form vanishes", stokes),
        exact(IntegralIdentities, "integral.q-functional-flat", "both sides of the Q functional vanish at the flat structure", q_functional_flat),
        Identity {
            id: "integral.q01-invariance-numeric",
            reference: "Q01 form is conformally invariant (floating-point quadrature, advisory)",
            suite: IntegralIdentities,
            numeric: true,
            body: q01_invariance_numeric,
        },
    ];
    ALL
}

fn all_bidegrees() -> Vec<(u8, u8)> {
    (0..=5).flat_map(bidegrees).collect()
}

const LOW: [(u8, u8); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];

fn curved(c: &mut Case) -> rumin::Result<PHStructure> {
    let u = c.factor("upsilon");
    c.rescaled(&u)
}

/// Evaluate `op` in `hat` on `w` carried over from `s`, and read back.
fn at_hat(s: &PHStructure, hat: &PHStructure, w: &PqForm, op: fn(&PHStructure, &PqForm) -> rumin::Result<PqForm>) -> rumin::Result<PqForm> {
    transport(hat, s, &op(hat, &transport(s, hat, w)?)?)
}

fn graded_at_hat(s: &PHStructure, hat: &PHStructure, w: &PqForm, op: fn(&PHStructure, &PqForm) -> rumin::Result<Graded>) -> rumin::Result<Graded> {
    let g = op(hat, &transport(s, hat, w)?)?;
    let mut out = Graded::zero(g.degree());
    for part in g.parts() {
        out.insert(transport(hat, s, part)?);
    }
    Ok(out)
}

fn two_step(c: &mut Case) -> rumin::Result<()> {
    let s = curved(c)?;
    for (p, q) in all_bidegrees().into_iter().filter(|(p, q)| p + q <= 3) {
        let w = c.form(&format!("omega{p}{q}"), &s, p, q)?;
        let total = d_graded(&s, &d(&s, &w)?)?;
        for part in total.parts() {
            let (r, t) = part.bidegree();
            c.zero(&format!("({p},{q}) -> ({r},{t})"), part);
        }
    }
    Ok(())
}

fn frame_formulas(c: &mut Case) -> rumin::Result<()> {
    let s = curved(c)?;
    for (p, q) in all_bidegrees() {
        let w = c.form(&format!("omega{p}{q}"), &s, p, q)?;
        for op in Op::ALL {
            if op.target(p, q).is_some() {
                c.equal(&format!("{} on ({p},{q})", op.name()), &op.apply(&s, &w)?, &op.apply_def(&s, &w)?);
            }
        }
        if p + q < 5 {
            c.equal(&format!("d on ({p},{q})"), &d(&s, &w)?, &d_def(&s, &w)?);
        }
    }
    Ok(())
}

fn rwedge_11_11_paths(c: &mut Case) -> rumin::Result<()> {
    let s = curved(c)?;
    let (w, t) = (c.form("omega", &s, 1, 1)?, c.form("tau", &s, 1, 1)?);
    c.equal("closed form", &rwedge_11_11(&s, &w, &t)?, &rwedge_general(&s, &w, &t)?);
    Ok(())
}

fn rwedge_11_01_paths(c: &mut Case) -> rumin::Result<()> {
    let s = curved(c)?;
    let (w, r) = (c.form("omega", &s, 1, 1)?, c.form("rho", &s, 0, 1)?);
    c.equal("closed form", &rwedge_11_01(&s, &w, &r)?, &rwedge_general(&s, &w, &r)?);
    c.equal("swapped", &rwedge(&s, &r, &w)?, &rwedge_general(&s, &r, &w)?);
    Ok(())
}

fn adjoint_frames(c: &mut Case) -> rumin::Result<()> {
    let s = curved(c)?;
    for (p, q) in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)] {
        let w = c.form(&format!("omega{p}{q}"), &s, p, q)?;
        if p > 0 {
            c.equal(&format!("db* on ({p},{q})"), &db_adjoint_frame(&s, &w)?, &db_adjoint_star(&s, &w)?);
        }
        if q > 0 {
            c.equal(&format!("dbar* on ({p},{q})"), &dbar_adjoint_frame(&s, &w)?, &dbar_adjoint_star(&s, &w)?);
        }
    }
    Ok(())
}

fn hodge_formula(c: &mut Case) -> rumin::Result<()> {
    let s = curved(c)?;
    for (p, q) in LOW {
        let w = c.form(&format!("omega{p}{q}"), &s, p, q)?;
        let st = hodge_star(&s, &w)?;
        c.equal(&format!("formula on ({p},{q})"), &st, &hodge_star_formula(&s, &w)?);
        c.equal(&format!("involution on ({p},{q})"), &hodge_star(&s, &st)?, &w);
    }
    Ok(())
}

fn hodge_relation(c: &mut Case) -> rumin::Result<()> {
    let s = curved(c)?;
    for (p, q) in LOW {
        let (w, t) = (c.form(&format!("omega{p}{q}"), &s, p, q)?, c.form(&format!("tau{p}{q}"), &s, p, q)?);
        let lhs = realize(&s, &rwedge_general(&s, &w, &hodge_star(&s, &conj(&t))?)?.only("wedge", 3, 2)?)?;
        let rhs = pairing::volume_form(&s).scale(&(hermitian_inner(&s, &w, &t)? * Scalar::ratio(1, 2)));
        c.equal(&format!("({p},{q})"), &lhs, &rhs);
        let n = hermitian_inner(&s, &w, &w)?;
        c.holds(&format!("<w,w> real on ({p},{q})"), n.is_real(), &n);
        c.equal(&format!("Hermitian on ({p},{q})"), &hermitian_inner(&s, &w, &t)?.conj(), &hermitian_inner(&s, &t, &w)?);
    }
    Ok(())
}

fn invariants(c: &mut Case) -> rumin::Result<()> {
    let s = curved(c)?;
    for (name, r) in s.invariant_residuals()? {
        c.zero(name, &r);
    }
    c.holds("torsion symmetric", s.torsion().is_symmetric(0, 1), &Scalar::zero());
    c.holds("Levi form Hermitian", s.levi_tensor().is_hermitian(), &Scalar::zero());
    c.equal("Schouten trace", &s.trace2(s.schouten()), &(s.scalar_curvature() * &Scalar::ratio(1, 6)));
    for dir in [Slot::Hol, Slot::AntiHol, Slot::Reeb] {
        c.zero(&format!("metric connection along {dir:?}"), &s.nabla(&s.levi_tensor(), dir)?);
    }
    let r = s.curvature();
    c.equal("curvature symmetry", &r.permute(&[2, 1, 0, 3]), r);
    c.equal("second Ricci trace", &s.trace(r, 2, 3), s.ricci());
    Ok(())
}

fn transformation(c: &mut Case) -> rumin::Result<()> {
    let u = c.factor("upsilon");
    let flat = c.flat();
    let s = c.rescaled(&u)?;
    let z = |f: &Scalar, a: usize| flat.e(1 + a, f);
    let zb = |f: &Scalar, a: usize| flat.e(3 + a, f);
    let mut grad2 = Scalar::zero();
    for m in 0..2 {
        grad2 += z(&u, m)? * zb(&u, m)?;
    }
    let w = FrameTensor::try_from_fn(&[Slot::Hol], |_| Ok::<_, rumin::Error>(c.real_poly("covector")))?;
    let hat = s.nabla(&w, Slot::Hol)?;
    let base = flat.nabla(&w, Slot::Hol)?;
    for a in 0..2 {
        for g in 0..2 {
            let torsion = Scalar::i() * (z(&z(&u, a)?, g)? - z(&u, a)? * z(&u, g)?);
            c.equal(&format!("A[{a}{g}]"), s.torsion().get(&[a, g]), &torsion);
            let mut schouten = -(zb(&z(&u, a)?, g)? + z(&zb(&u, g)?, a)?) * Scalar::ratio(1, 2);
            if a == g {
                schouten -= &grad2 * &Scalar::ratio(1, 2);
            }
            c.equal(&format!("P[{a}{g}]"), s.schouten().get(&[a, g]), &schouten);
            let nabla = base.get(&[a, g]) - &(z(&u, g)? * w.get(&[a])) - z(&u, a)? * w.get(&[g]);
            c.equal(&format!("nabla w[{a}{g}]"), hat.get(&[a, g]), &nabla);
        }
    }
    Ok(())
}

fn lee_law(c: &mut Case) -> rumin::Result<()> {
    let u = c.factor("upsilon");
    let (s, hat) = c.pair(&u)?;
    let back = transport(&hat, &s, &lee_form(&hat))?;
    c.equal("law", &back, &lee_form(&s).add(&ddbar(&s, &PqForm::function(u))?));
    Ok(())
}

fn second_order_law(c: &mut Case) -> rumin::Result<()> {
    let u = c.factor("upsilon");
    let (s, hat) = c.pair(&u)?;
    let w = c.form("omega", &s, 1, 1)?;
    let corr = rwedge_graded(&s, &dbc(&s, &PqForm::function(u))?, &Graded::from_form(w.clone()))?;
    let rhs = d_second_order(&s, &w)?.sub(corr.part(2, 1)?);
    c.equal("law", &at_hat(&s, &hat, &w, d_second_order)?, &rhs);
    Ok(())
}

/// `𝒟^θ̂ω − 𝒟^θω` as predicted.
fn fourth_order_correction(s: &PHStructure, u: &Scalar, w: &PqForm) -> rumin::Result<PqForm> {
    let f = PqForm::function(u.clone());
    let dbw = dbar(s, w)?;
    let a = db(s, &dbar(s, &w.scale(u))?)?;
    let b = db(s, &dbw.scale(u))?;
    let e = krwedge(s, &dbar(s, &f)?, &d0(s, w)?)?;
    let g = krwedge(s, &db(s, &f)?, &dbw)?;
    Ok(a.sub(&b).add(&e).sub(&g).scale(&Scalar::i()))
}

fn fourth_order_closed(c: &mut Case) -> rumin::Result<()> {
    let u = c.factor("upsilon");
    let (s, hat) = c.pair(&u)?;
    let f = c.function("f");
    let w = ddbar(&s, &f)?;
    c.zero("omega closed", &d(&s, &w)?);
    let rhs = m_d(&s, &w)?.add(&fourth_order_correction(&s, &u, &w)?);
    c.equal("law", &at_hat(&s, &hat, &w, m_d)?, &rhs);
    Ok(())
}

fn fourth_order_general(c: &mut Case) -> rumin::Result<()> {
    let u = c.factor("upsilon");
    let (s, hat) = c.pair(&u)?;
    let w = c.form("omega", &s, 1, 1)?;
    let rhs = m_d(&s, &w)?.add(&fourth_order_correction(&s, &u, &w)?);
    c.equal("law", &at_hat(&s, &hat, &w, m_d)?, &rhs);
    Ok(())
}

fn q11_closed(c: &mut Case) -> rumin::Result<()> {
    let u = c.factor("upsilon");
    let (s, hat) = c.pair(&u)?;
    let f = c.function("f");
    let w = ddbar(&s, &f)?;
    let rhs = q11d(&s, &w)?.add(&l11bc(&s, &w.scale(&u))?);
    c.equal("law", &graded_at_hat(&s, &hat, &w, q11d)?, &rhs);
    Ok(())
}

fn r11_closed(c: &mut Case) -> rumin::Result<()> {
    let u = c.factor("upsilon");
    let (s, hat) = c.pair(&u)?;
    let f = c.function("f");
    let w = ddbar(&s, &f)?;
    let uw = w.scale(&u);
    let i = Scalar::i();
    let mut corr = Graded::from_form(db(&s, &dbar(&s, &uw)?)?.scale(&i));
    corr.insert(dbar(&s, &db(&s, &uw)?)?.scale(&-i.clone()));
    c.equal("law", &graded_at_hat(&s, &hat, &w, r11d)?, &r11d(&s, &w)?.add(&corr));
    Ok(())
}

fn second_order_paths(c: &mut Case) -> rumin::Result<()> {
    let s = curved(c)?;
    let w = c.form("omega", &s, 1, 1)?;
    c.equal("frame", &d_second_order(&s, &w)?, &d_second_order_frame(&s, &w)?);
    Ok(())
}

fn fourth_order_paths(c: &mut Case) -> rumin::Result<()> {
    let s = curved(c)?;
    let w = c.form("omega", &s, 1, 1)?;
    let def = m_d(&s, &w)?;
    c.equal("via second-order operator", &def, &m_d_via_d(&s, &w)?);
    c.equal("frame", &def, &m_d_frame(&s, &w)?);
    Ok(())
}

fn r11_paths(c: &mut Case) -> rumin::Result<()> {
    let s = curved(c)?;
    let w = c.form("omega", &s, 1, 1)?;
    let r = r11d(&s, &w)?;
    c.equal("expanded", &r, &r11d_expanded(&s, &w)?);
    let two_i_d = Graded::from_form(m_d(&s, &w)?.scale(&Scalar::i().scale_int(2)));
    c.equal("Q + iR", &q11d(&s, &w)?.add(&r.scale(&Scalar::i())), &two_i_d);
    Ok(())
}

fn q01_paths(c: &mut Case) -> rumin::Result<()> {
    let s = curved(c)?;
    let w = c.form("omega", &s, 0, 1)?;
    c.equal("expanded", &q01(&s, &w)?, &q01_expanded(&s, &w)?);
    let witness = krwedge(&s, &w, &lee_form(&s))?.neg();
    c.equal("modulo image of d_b", &q01(&s, &w)?.sub(&m_d(&s, &db(&s, &w)?)?), &db(&s, &witness)?);
    Ok(())
}

fn q01_law_closed(c: &mut Case) -> rumin::Result<()> {
    let u = c.factor("upsilon");
    let (s, hat) = c.pair(&u)?;
    let f = c.function("f");
    let w = dbar(&s, &f)?;
    let rhs = q01(&s, &w)?.add(&l01(&s, &w.scale(&u))?);
    c.equal("law", &at_hat(&s, &hat, &w, q01)?, &rhs);
    Ok(())
}

fn q01_law_general(c: &mut Case) -> rumin::Result<()> {
    let u = c.factor("upsilon");
    let (s, hat) = c.pair(&u)?;
    let w = c.form("omega", &s, 0, 1)?;
    let f = PqForm::function(u.clone());
    let (dbu, dbaru) = (db(&s, &f)?, dbar(&s, &f)?);
    let dbw = dbar(&s, &w)?;
    let d0dbw = d0(&s, &dbw)?;
    let terms = [
        db(&s, &dbar(&s, &db(&s, &w.scale(&u))?)?)?,
        db(&s, &krwedge(&s, &dbu, &dbw)?)?,
        db(&s, &d0dbw.scale(&u))?,
        krwedge(&s, &dbaru, &db(&s, &dbw)?)?.neg(),
        krwedge(&s, &dbu, &d0dbw)?,
    ];
    let mut rhs = q01(&s, &w)?;
    for t in &terms {
        rhs = rhs.add(&t.scale(&Scalar::i()));
    }
    c.equal("law", &at_hat(&s, &hat, &w, q01)?, &rhs);
    Ok(())
}

fn l01_kernel(c: &mut Case) -> rumin::Result<()> {
    let s = curved(c)?;
    let f = c.function("f");
    c.zero("L01 dbar f", &l01(&s, &dbar(&s, &f)?)?);
    Ok(())
}

fn gjms_paths(c: &mut Case) -> rumin::Result<()> {
    let s = curved(c)?;
    let f = c.function("f");
    c.equal("two paths", &l00scal(&s, &f)?, &l00scal_via_q01(&s, &f)?);
    let x = PqForm::function(Scalar::x(1));
    c.zero("pluriharmonic kernel", &l00scal(&s, &x)?);
    Ok(())
}

fn scalar_q_law(c: &mut Case) -> rumin::Result<()> {
    for (label, u) in [("plain", c.factor("upsilon")), ("weight six", c.weighted_factor("upsilon6"))] {
        let (s, hat) = c.pair(&u)?;
        let lhs = transport(&hat, &s, &q00scal(&hat)?)?;
        let l = l00scal(&s, &PqForm::function(u.clone()))?;
        c.equal(&format!("Q law, {label}"), &lhs, &q00scal(&s)?.add(&l));
        let f = c.function("f");
        c.equal(&format!("GJMS invariance, {label}"), &at_hat(&s, &hat, &f, l00scal)?, &l00scal(&s, &f)?);
    }
    Ok(())
}

fn flat_q(c: &mut Case) -> rumin::Result<()> {
    let s = c.flat();
    c.zero("Lee form", &lee_form(&s));
    c.zero("scalar Q", &q00scal(&s)?);
    c.zero("frame Q-curvature", &qfh_frame(&s)?);
    Ok(())
}

fn fefferman_hirachi(c: &mut Case) -> rumin::Result<()> {
    let n = 1 + (c.index % 2) as i32;
    for (label, u) in [("plain", c.factor("upsilon")), ("weight six", c.weighted_factor("upsilon6"))] {
        let s = c.power(&u, n)?;
        let frame = qfh_frame(&s)?;
        c.equal_sides(&format!("frame = 8 star Q, {label}"), &frame, &qfh_from_scalar(&s)?);
        c.equal_sides(&format!("unreduced display, {label}"), &frame, &qfh_frame_unreduced(&s)?);
        if label == "weight six" {
            c.holds("nontrivial", !frame.is_zero(), &frame);
        }
    }
    Ok(())
}

fn fh_linearization(c: &mut Case) -> rumin::Result<()> {
    let u = c.weighted_factor("upsilon6");
    let a = (c.index % 2) as i32;
    let lin = qfh_linearization(&u, a)?;
    c.zero("remainder", &lin.remainder);
    let base = c.power(&u, a)?;
    let l = hodge_star(&base, &l00scal(&base, &PqForm::function(u.clone()))?)?;
    c.equal_sides("linear part", &lin.linear, &l.value().scale_int(8));
    Ok(())
}

fn q_functional_integrands(c: &mut Case) -> rumin::Result<()> {
    let u = c.weighted_factor("upsilon6");
    let s = c.power(&u, 1 + (c.index % 2) as i32)?;
    let f = c.function("f");
    let fg = Graded::from_form(f.clone());
    let ell = lee_form(&s);
    let q_ell = q11d(&s, &ell)?;
    let d_ell = Graded::from_form(d_second_order(&s, &ell)?);
    let ll = rwedge(&s, &ell, &ell)?;
    let dcf = dbc(&s, &f)?;
    let lhs = rwedge_graded(&s, &fg, &Graded::from_form(q00scal(&s)?))?;
    let right = rwedge_graded(&s, &d_graded(&s, &dcf)?, &d_ell)?.add(&rwedge_graded(&s, &dcf, &ll)?.scale(&Scalar::int(2)));
    let exact = d_graded(&s, &rwedge_graded(&s, &fg, &q_ell)?)?.sub(&d_graded(&s, &rwedge_graded(&s, &dcf, &d_ell)?)?);
    c.equal("up to exact forms", &lhs.sub(&right), &exact);
    let a = rwedge_graded(&s, &d_graded(&s, &fg)?, &q_ell)?.scale(&Scalar::int(-1));
    c.equal("-df Q = d_b^c f R", &a, &rwedge_graded(&s, &dcf, &r11d(&s, &ell)?)?);
    Ok(())
}

fn value_scalar(v: &PairingValue) -> Scalar {
    Scalar::constant(v.coefficient().clone())
}

fn hermitian_pair(c: &mut Case, check: &str, a: &PairingValue, b: &PairingValue) {
    c.equal(check, a, &b.conj());
}

fn adjointness(c: &mut Case) -> rumin::Result<()> {
    let s = c.flat();
    for (p, q) in [(0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (2, 0)] {
        let w = c.cutoff_form(&format!("omega{p}{q}"), &s, p, q)?;
        if let Ok(dw) = db(&s, &w) {
            let t = c.cutoff_form(&format!("tau{}{}", dw.p(), dw.q()), &s, dw.p(), dw.q())?;
            let lhs = pairing::l2_inner(&s, &dw, &t)?;
            c.equal(&format!("d_b on ({p},{q})"), &lhs, &pairing::l2_inner(&s, &w, &db_adjoint(&s, &t)?)?);
        }
        if let Ok(dw) = dbar(&s, &w) {
            let t = c.cutoff_form(&format!("tau{}{}", dw.p(), dw.q()), &s, dw.p(), dw.q())?;
            let lhs = pairing::l2_inner(&s, &dw, &t)?;
            c.equal(&format!("dbar_b on ({p},{q})"), &lhs, &pairing::l2_inner(&s, &w, &dbar_adjoint(&s, &t)?)?);
        }
    }
    let w = c.cutoff_form("omega", &s, 0, 1)?;
    let n = pairing::l2_inner(&s, &w, &w)?;
    c.holds("positivity", n.coefficient().is_real() && n.to_f64().0 > 0.0, &value_scalar(&n));
    Ok(())
}

fn l01_hermitian(c: &mut Case) -> rumin::Result<()> {
    let s = c.flat();
    let (w, t) = (c.cutoff_form("omega", &s, 0, 1)?, c.cutoff_form("tau", &s, 0, 1)?);
    let (a, b) = (pairing::form_l01(&s, &w, &t)?, pairing::form_l01(&s, &t, &w)?);
    hermitian_pair(c, "conjugate symmetry", &a, &b);
    Ok(())
}

fn l00_hermitian(c: &mut Case) -> rumin::Result<()> {
    let s = c.flat();
    let (f, g) = (c.cutoff_function("phi"), c.cutoff_function("psi"));
    let (a, b) = (pairing::form_l00(&s, &f, &g)?, pairing::form_l00(&s, &g, &f)?);
    hermitian_pair(c, "conjugate symmetry", &a, &b);
    Ok(())
}

fn q01_heisenberg(c: &mut Case) -> rumin::Result<()> {
    let s = c.flat();
    let (w, t) = (c.closed_cutoff("f", &s)?, c.closed_cutoff("g", &s)?);
    let lhs = pairing::form_q01(&s, &w, &t)?;
    let dt = db(&s, &t)?;
    let lap = db(&s, &db_adjoint(&s, &dt)?)?.add(&dbar(&s, &dbar_adjoint(&s, &dt)?)?);
    c.equal("reduction", &lhs, &pairing::l2_inner(&s, &db(&s, &w)?, &lap)?);
    let other = pairing::form_q01(&s, &t, &w)?;
    hermitian_pair(c, "conjugate symmetry", &lhs, &other);
    Ok(())
}

fn q01_nonnegative(c: &mut Case) -> rumin::Result<()> {
    let s = c.flat();
    let w = c.closed_cutoff("f", &s)?;
    let v = pairing::form_q01(&s, &w, &w)?;
    c.holds("positive for omega with d omega != 0", v.coefficient().is_real() && v.to_f64().0 > 0.0, &value_scalar(&v));
    let pluri = dbar(&s, &PqForm::function(Scalar::x(1 + (c.index % 2) as usize)))?;
    c.zero("d-closed omega", &d(&s, &pluri)?);
    c.zero("integrand for d-closed omega", &rwedge(&s, &pluri, &conj(&q01(&s, &pluri)?))?);
    Ok(())
}

fn l00_via_q01(c: &mut Case) -> rumin::Result<()> {
    let s = c.flat();
    let (f, g) = (c.cutoff_function("phi"), c.cutoff_function("psi"));
    let rhs = pairing::form_q01(&s, &dbar(&s, &f)?, &dbar(&s, &g)?)?;
    c.equal("factorization", &pairing::form_l00(&s, &f, &g)?, &rhs.scale(&rumin::expr::Coeff::int(2)));
    Ok(())
}

fn invariance_defect(c: &mut Case) -> rumin::Result<()> {
    let s = c.flat();
    let u = c.factor("upsilon");
    let (w, t) = (c.closed_cutoff("f", &s)?, c.closed_cutoff("g", &s)?);
    let defect = l01(&s, &t.scale(&u))?;
    c.zero("integral", &pairing::serre_pair(&s, &w, &defect)?);
    Ok(())
}

fn stokes(c: &mut Case) -> rumin::Result<()> {
    let s = c.flat();
    let w = c.closed_cutoff("f", &s)?;
    let rho = c.cutoff_form("rho", &s, 1, 2)?;
    let t = db(&s, &rho)?;
    c.zero("dbar f against d_b rho", &pairing::serre_pair(&s, &w, &t)?);
    Ok(())
}

fn q_functional_flat(c: &mut Case) -> rumin::Result<()> {
    let s = c.flat();
    let f = c.cutoff_function("f");
    let ell = lee_form(&s);
    c.zero("left side", &pairing::serre_pair(&s, &f, &q00scal(&s)?)?);
    let dcf = dbc(&s, &f)?;
    let d_ell = Graded::from_form(d_second_order(&s, &ell)?);
    let right = rwedge_graded(&s, &d_graded(&s, &dcf)?, &d_ell)?.add(&rwedge_graded(&s, &dcf, &rwedge(&s, &ell, &ell)?)?.scale(&Scalar::int(2)));
    c.zero("right side integrand", &right);
    Ok(())
}

fn q01_invariance_numeric(c: &mut Case) -> rumin::Result<()> {
    let u = c.factor("upsilon").scale(&rumin::expr::Coeff::ratio(1, 4));
    let (s, hat) = (c.power(&u, 0)?, c.power(&u, 1)?);
    // The diagonal value is strictly positive, so relative agreement means something.
    let w = c.closed_cutoff("f", &s)?;
    let exact = numeric::exact(&pairing::form_q01(&s, &w, &w)?);
    let wh = transport(&s, &hat, &w)?;
    let approx = numeric::form_q01(&hat, &wh, &wh, numeric::DEFAULT_NODES)?;
    let agree = numeric::close(exact, approx);
    c.advisory("rescaled against flat", agree, format!("exact {exact:.9}, quadrature {approx:.9}"));
    Ok(())
}
