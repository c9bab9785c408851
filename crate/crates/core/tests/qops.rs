use rumin::expr::{Scalar, Var};
use rumin::fixture::{random_conformal_factor, random_real_poly, rng_for, ChaCha8Rng, PolyShape};
use rumin::geometry::PHStructure;
use rumin::qops::*;
use rumin::rumin::*;

const FORM: PolyShape = PolyShape { degree: 2, terms: 2, coeff_bound: 2 };
const FACTOR: PolyShape = PolyShape { degree: 3, terms: 3, coeff_bound: 2 };
const CASES: u64 = 3;

/// A random conformal factor plus a term of Heisenberg weight six, so that
/// the scalar GJMS operator does not annihilate it.
fn factor(case: u64) -> Scalar {
    let mut rng = rng_for(11, "qops-factor", case);
    let base = random_conformal_factor(&mut rng, FACTOR);
    let (z, zb, t) = (Scalar::var(Var::Z1), Scalar::var(Var::Zb1), Scalar::var(Var::T));
    base + (&(&z * &zb) * &(&t * &t)).scale_int(case as i64 + 1)
}

/// `θ = e^{aΥ₀}θ₀` and `θ̂ = e^Υ₀ θ`, for `a = case % 2`.
fn pair(case: u64) -> (Scalar, PHStructure, PHStructure) {
    let u = factor(case);
    let a = (case % 2) as i32;
    let s = PHStructure::power(&u, a).unwrap();
    let hat = PHStructure::power(&u, a + 1).unwrap();
    (u, s, hat)
}

fn form(rng: &mut ChaCha8Rng, s: &PHStructure, p: u8, q: u8) -> PqForm {
    random_form(rng, s, p, q, FORM).unwrap()
}

fn function(rng: &mut ChaCha8Rng) -> PqForm {
    PqForm::function(random_real_poly(rng, FORM))
}

/// Evaluate `op` in `θ̂` on the form transported from `θ`, and read the
/// result back in `θ`.
fn at_hat(s: &PHStructure, hat: &PHStructure, w: &PqForm, op: impl Fn(&PHStructure, &PqForm) -> rumin::Result<PqForm>) -> PqForm {
    let there = transport(s, hat, w).unwrap();
    transport(hat, s, &op(hat, &there).unwrap()).unwrap()
}

fn graded_at_hat(s: &PHStructure, hat: &PHStructure, w: &PqForm, op: impl Fn(&PHStructure, &PqForm) -> rumin::Result<Graded>) -> Graded {
    let there = transport(s, hat, w).unwrap();
    let g = op(hat, &there).unwrap();
    let mut out = Graded::zero(g.degree());
    for part in g.parts() {
        out.insert(transport(hat, s, part).unwrap());
    }
    out
}

fn times(f: &Scalar, w: &PqForm) -> PqForm {
    w.scale(f)
}

fn structures() -> Vec<PHStructure> {
    vec![PHStructure::flat(), PHStructure::power(&factor(0), 1).unwrap()]
}

#[test]
fn constant_forms_are_killed_at_the_flat_structure() {
    let s = PHStructure::flat();
    let w = PqForm::from_sorted_fn(1, 1, |idx| if idx == [0, 1] { Scalar::int(3) } else { Scalar::zero() }).unwrap();
    assert!(d_second_order(&s, &w).unwrap().is_zero());
    assert!(m_d(&s, &w).unwrap().is_zero());
    assert!(m_d(&s, &PqForm::zero(1, 1).unwrap()).unwrap().is_zero());
}

#[test]
fn second_order_operator_on_quadratic_forms() {
    // At the flat structure Dω for ω = f θ¹ ∧ θ²̄ has entries
    // Z_α Z̄_1 f (β = 2) + Z̄_β Z_2 f (α = 1) − δ_{αβ} Z̄_1 Z_2 f.
    let s = PHStructure::flat();
    let (z1, z2, zb1) = (Scalar::var(Var::Z1), Scalar::var(Var::Z2), Scalar::var(Var::Zb1));
    let build = |f: Scalar| PqForm::from_sorted_fn(1, 1, |idx| if idx == [0, 1] { f.clone() } else { Scalar::zero() }).unwrap();
    assert!(d_second_order_frame(&s, &build(&zb1 * &z2)).unwrap().is_zero());
    assert!(d_second_order(&s, &build(&(&zb1 * &zb1) * &z2)).unwrap().is_zero());
    let d = d_second_order(&s, &build(&z1 * &zb1)).unwrap();
    assert_eq!(d.bidegree(), (2, 1));
    let p = d.primary();
    assert_eq!(p.get(&[0, 1]), &Scalar::one());
    assert!(p.get(&[0, 0]).is_zero() && p.get(&[1, 0]).is_zero() && p.get(&[1, 1]).is_zero());
}

#[test]
fn second_order_operator_two_paths() {
    for s in structures() {
        let mut rng = rng_for(1, "qops-D", 0);
        for _ in 0..CASES {
            let w = form(&mut rng, &s, 1, 1);
            assert_eq!(d_second_order(&s, &w).unwrap(), d_second_order_frame(&s, &w).unwrap());
        }
    }
}

#[test]
fn fourth_order_operator_three_paths() {
    for s in structures() {
        let mut rng = rng_for(1, "qops-mD", 0);
        for _ in 0..CASES {
            let w = form(&mut rng, &s, 1, 1);
            let def = m_d(&s, &w).unwrap();
            assert_eq!(def.bidegree(), (2, 2));
            assert_eq!(def, m_d_via_d(&s, &w).unwrap());
            assert_eq!(def, m_d_frame(&s, &w).unwrap());
        }
    }
}

#[test]
fn wrong_bidegrees_are_rejected() {
    let s = PHStructure::flat();
    let w = PqForm::zero(0, 1).unwrap();
    assert!(m_d(&s, &w).is_err());
    assert!(d_second_order(&s, &w).is_err());
    assert!(l01(&s, &PqForm::zero(1, 1).unwrap()).is_err());
}

#[test]
fn lee_form_law() {
    for case in 0..CASES {
        let (u, s, hat) = pair(case);
        let back = transport(&hat, &s, &lee_form(&hat)).unwrap();
        let expected = lee_form(&s).add(&ddbar(&s, &PqForm::function(u)).unwrap());
        assert_eq!(back, expected, "case {case}");
    }
}

#[test]
fn second_order_law() {
    for case in 0..CASES {
        let (u, s, hat) = pair(case);
        let mut rng = rng_for(2, "qops-D-law", case);
        let w = form(&mut rng, &s, 1, 1);
        let lhs = at_hat(&s, &hat, &w, d_second_order);
        let mut corr = Graded::zero(3);
        for part in dbc(&s, &PqForm::function(u.clone())).unwrap().parts() {
            corr = corr.add(&rwedge(&s, part, &w).unwrap());
        }
        let rhs = d_second_order(&s, &w).unwrap().sub(corr.part(2, 1).unwrap());
        assert_eq!(lhs, rhs, "case {case}");
    }
}

/// `𝒟^θ̂ω − 𝒟^θω` as predicted.
fn fourth_order_correction(s: &PHStructure, u: &Scalar, w: &PqForm) -> PqForm {
    let i = Scalar::i();
    let f = PqForm::function(u.clone());
    let dbw = dbar(s, w).unwrap();
    let a = db(s, &dbar(s, &times(u, w)).unwrap()).unwrap();
    let b = db(s, &times(u, &dbw)).unwrap();
    let c = krwedge(s, &dbar(s, &f).unwrap(), &d0(s, w).unwrap()).unwrap();
    let e = krwedge(s, &db(s, &f).unwrap(), &dbw).unwrap();
    a.sub(&b).add(&c).sub(&e).scale(&i)
}

#[test]
fn fourth_order_law_general() {
    for case in 0..CASES {
        let (u, s, hat) = pair(case);
        let w = form(&mut rng_for(3, "qops-mD-law", case), &s, 1, 1);
        let lhs = at_hat(&s, &hat, &w, m_d);
        assert_eq!(lhs, m_d(&s, &w).unwrap().add(&fourth_order_correction(&s, &u, &w)), "case {case}");
    }
}

#[test]
fn fourth_order_law_closed() {
    for case in 0..CASES {
        let (u, s, hat) = pair(case);
        let w = ddbar(&s, &function(&mut rng_for(4, "qops-mD-closed", case))).unwrap();
        assert!(d(&s, &w).unwrap().is_zero());
        let lhs = at_hat(&s, &hat, &w, m_d);
        assert_eq!(lhs, m_d(&s, &w).unwrap().add(&fourth_order_correction(&s, &u, &w)), "case {case}");
    }
}

#[test]
fn q11d_law_on_closed_forms() {
    for case in 0..CASES {
        let (u, s, hat) = pair(case);
        let w = ddbar(&s, &function(&mut rng_for(5, "qops-Q11", case))).unwrap();
        let lhs = graded_at_hat(&s, &hat, &w, q11d);
        let rhs = q11d(&s, &w).unwrap().add(&l11bc(&s, &times(&u, &w)).unwrap());
        assert_eq!(lhs, rhs, "case {case}");
    }
}

#[test]
fn q11d_law_on_the_lee_form() {
    let (u, s, hat) = pair(1);
    let w = lee_form(&s);
    let lhs = graded_at_hat(&s, &hat, &w, q11d);
    assert_eq!(lhs, q11d(&s, &w).unwrap().add(&l11bc(&s, &times(&u, &w)).unwrap()));
}

#[test]
fn r11d_law_on_closed_forms() {
    for case in 0..CASES {
        let (u, s, hat) = pair(case);
        let w = ddbar(&s, &function(&mut rng_for(6, "qops-R11", case))).unwrap();
        let uw = times(&u, &w);
        let i = Scalar::i();
        let mut corr = Graded::from_form(db(&s, &dbar(&s, &uw).unwrap()).unwrap().scale(&i));
        corr.insert(dbar(&s, &db(&s, &uw).unwrap()).unwrap().scale(&-i.clone()));
        let lhs = graded_at_hat(&s, &hat, &w, r11d);
        assert_eq!(lhs, r11d(&s, &w).unwrap().add(&corr), "case {case}");
    }
}

#[test]
fn r11d_two_paths_and_the_q_r_relation() {
    for s in structures() {
        let mut rng = rng_for(7, "qops-R-two", 0);
        for _ in 0..CASES {
            let w = form(&mut rng, &s, 1, 1);
            let r = r11d(&s, &w).unwrap();
            assert_eq!(r, r11d_expanded(&s, &w).unwrap());
            let lhs = q11d(&s, &w).unwrap().add(&r.scale(&Scalar::i()));
            let two_i_d = Graded::from_form(m_d(&s, &w).unwrap().scale(&Scalar::i().scale_int(2)));
            assert_eq!(lhs, two_i_d);
        }
    }
}

#[test]
fn q01_two_paths() {
    for s in structures() {
        let mut rng = rng_for(8, "qops-Q01-two", 0);
        for _ in 0..CASES {
            let w = form(&mut rng, &s, 0, 1);
            assert_eq!(q01(&s, &w).unwrap(), q01_expanded(&s, &w).unwrap());
        }
    }
}

#[test]
fn q01_at_the_flat_structure_on_dbar_exact_forms() {
    let s = PHStructure::flat();
    let mut rng = rng_for(9, "qops-Q01-flat", 0);
    for _ in 0..CASES {
        let w = dbar(&s, &function(&mut rng)).unwrap();
        let dw = db(&s, &w).unwrap();
        let lap = db(&s, &db_adjoint(&s, &dw).unwrap()).unwrap().add(&dbar(&s, &dbar_adjoint(&s, &dw).unwrap()).unwrap());
        let expected = hodge_star(&s, &db_adjoint(&s, &lap).unwrap()).unwrap();
        assert_eq!(q01(&s, &w).unwrap(), expected);
    }
}

#[test]
fn q01_is_d_composed_with_db_modulo_image() {
    for s in structures() {
        let w = form(&mut rng_for(10, "qops-Q01-mod", 0), &s, 0, 1);
        let diff = q01(&s, &w).unwrap().sub(&m_d(&s, &db(&s, &w).unwrap()).unwrap());
        let witness = krwedge(&s, &w, &lee_form(&s)).unwrap().neg();
        assert_eq!(witness.bidegree(), (1, 2));
        assert_eq!(diff, db(&s, &witness).unwrap());
    }
}

#[test]
fn q01_law_on_dbar_closed_forms() {
    for case in 0..CASES {
        let (u, s, hat) = pair(case);
        let w = dbar(&s, &function(&mut rng_for(11, "qops-Q01-law", case))).unwrap();
        assert!(dbar(&s, &w).unwrap().is_zero());
        let lhs = at_hat(&s, &hat, &w, q01);
        assert_eq!(lhs, q01(&s, &w).unwrap().add(&l01(&s, &times(&u, &w)).unwrap()), "case {case}");
    }
}

#[test]
fn q01_law_general() {
    for case in 0..CASES {
        let (u, s, hat) = pair(case);
        let w = form(&mut rng_for(12, "qops-Q01-general", case), &s, 0, 1);
        let f = PqForm::function(u.clone());
        let (dbu, dbaru) = (db(&s, &f).unwrap(), dbar(&s, &f).unwrap());
        let dbw = dbar(&s, &w).unwrap();
        let d0dbw = d0(&s, &dbw).unwrap();
        let terms = [
            db(&s, &dbar(&s, &db(&s, &times(&u, &w)).unwrap()).unwrap()).unwrap(),
            db(&s, &krwedge(&s, &dbu, &dbw).unwrap()).unwrap(),
            db(&s, &times(&u, &d0dbw)).unwrap(),
            krwedge(&s, &dbaru, &db(&s, &dbw).unwrap()).unwrap().neg(),
            krwedge(&s, &dbu, &d0dbw).unwrap(),
        ];
        let mut rhs = q01(&s, &w).unwrap();
        for t in &terms {
            rhs = rhs.add(&t.scale(&Scalar::i()));
        }
        assert_eq!(at_hat(&s, &hat, &w, q01), rhs, "case {case}");
    }
}

#[test]
fn l01_kills_dbar_closed_forms() {
    for s in structures() {
        let w = dbar(&s, &function(&mut rng_for(13, "qops-L01", 0))).unwrap();
        assert!(l01(&s, &w).unwrap().is_zero());
    }
}

#[test]
fn scalar_gjms_two_paths() {
    for s in structures() {
        let mut rng = rng_for(14, "qops-L00", 0);
        for _ in 0..CASES {
            let f = function(&mut rng);
            let a = l00scal(&s, &f).unwrap();
            assert_eq!(a.bidegree(), (3, 2));
            assert_eq!(a, l00scal_via_q01(&s, &f).unwrap());
        }
    }
}

#[test]
fn scalar_gjms_kills_pluriharmonic_functions() {
    for s in structures() {
        let f = PqForm::function(Scalar::x(1));
        assert!(ddbar(&s, &f).unwrap().is_zero());
        assert!(l00scal(&s, &f).unwrap().is_zero());
    }
}

#[test]
fn scalar_q_vanishes_at_the_flat_structure() {
    let s = PHStructure::flat();
    assert!(lee_form(&s).is_zero());
    assert!(q00scal(&s).unwrap().is_zero());
    assert!(qfh_frame(&s).unwrap().is_zero());
}

#[test]
fn scalar_q_law_and_invariance() {
    for case in 0..CASES {
        let (u, s, hat) = pair(case);
        let lhs = transport(&hat, &s, &q00scal(&hat).unwrap()).unwrap();
        assert_eq!(lhs, q00scal(&s).unwrap().add(&l00scal(&s, &PqForm::function(u.clone())).unwrap()), "case {case}");
        let f = function(&mut rng_for(15, "qops-L00-inv", case));
        assert_eq!(at_hat(&s, &hat, &f, l00scal), l00scal(&s, &f).unwrap(), "case {case}");
    }
}

#[test]
fn fefferman_hirachi_q_curvature() {
    for case in 0..CASES {
        let s = PHStructure::power(&factor(case), 1 + (case % 2) as i32).unwrap();
        let frame = qfh_frame(&s).unwrap();
        assert!(!frame.is_zero());
        assert_eq!(frame, qfh_from_scalar(&s).unwrap(), "case {case}");
        assert_eq!(frame, qfh_frame_unreduced(&s).unwrap(), "case {case}");
    }
}

#[test]
fn fefferman_hirachi_q_curvature_of_weight_six_factors() {
    // The GJMS operator lowers the Heisenberg weight by six, so for these
    // factors e^{3Υ}Q_FH is a constant; t³ lies in its kernel.
    let (z, zb, t) = (Scalar::var(Var::Z1), Scalar::var(Var::Zb1), Scalar::var(Var::T));
    let r = &z * &zb;
    for (u, c) in [(&(&t * &t) * &t, 0), (&(&r * &t) * &t, -48), (&(&r * &r) * &r, -288)] {
        let s = PHStructure::power(&u, 1).unwrap();
        assert_eq!(&Scalar::u_pow(3) * &qfh_frame(&s).unwrap(), Scalar::int(c));
    }
}

#[test]
fn fefferman_hirachi_linearization() {
    for case in 0..CASES {
        let u = factor(case);
        let a = (case % 2) as i32;
        let lin = qfh_linearization(&u, a).unwrap();
        assert!(lin.remainder.is_zero(), "case {case}");
        let base = PHStructure::power(&u, a).unwrap();
        let l = hodge_star(&base, &l00scal(&base, &PqForm::function(u.clone())).unwrap()).unwrap();
        assert!(!l.is_zero());
        assert_eq!(lin.linear, l.value().scale_int(8), "case {case}");
    }
}
