use rumin::expr::{Scalar, Var};
use rumin::fixture::{random_conformal_factor, random_poly, rng_for, ChaCha8Rng, PolyShape};
use rumin::forms::FrameForm;
use rumin::geometry::PHStructure;
use rumin::rumin::*;
use std::sync::OnceLock;

const SMALL: PolyShape = PolyShape { degree: 2, terms: 2, coeff_bound: 2 };

fn curved() -> &'static PHStructure {
    static S: OnceLock<PHStructure> = OnceLock::new();
    S.get_or_init(|| {
        let u = random_conformal_factor(&mut rng_for(5, "rumin-factor", 0), PolyShape { degree: 2, terms: 2, coeff_bound: 2 });
        PHStructure::power(&u, 1).unwrap()
    })
}

fn structures() -> Vec<PHStructure> {
    vec![PHStructure::flat(), curved().clone()]
}

fn all_bidegrees() -> Vec<(u8, u8)> {
    (0..=5).flat_map(bidegrees).collect()
}

fn form(rng: &mut ChaCha8Rng, s: &PHStructure, p: u8, q: u8) -> PqForm {
    random_form(rng, s, p, q, SMALL).unwrap()
}

#[test]
fn dbar_of_z1_zb1_is_z1() {
    let s = PHStructure::flat();
    let f = PqForm::function(Scalar::var(Var::Z1) * Scalar::var(Var::Zb1));
    let w = dbar(&s, &f).unwrap();
    assert_eq!(w.bidegree(), (0, 1));
    assert_eq!(w.primary().get(&[0]), &Scalar::var(Var::Z1));
    assert!(w.primary().get(&[1]).is_zero());
    assert_eq!(db(&s, &f).unwrap().primary().get(&[0]), &Scalar::var(Var::Zb1));
}

#[test]
fn realize_then_decompose_is_identity() {
    for s in structures() {
        let mut rng = rng_for(1, "round-trip", 0);
        for (p, q) in all_bidegrees() {
            let w = form(&mut rng, &s, p, q);
            let g = decompose(&s, &realize(&s, &w).unwrap(), p + q).unwrap();
            assert_eq!(g.only("rt", p, q).unwrap(), w, "({p},{q})");
        }
    }
}

#[test]
fn trace_condition_is_enforced() {
    let s = PHStructure::flat();
    let w = PqForm::new(1, 1, s.levi_tensor()).unwrap();
    assert!(matches!(realize(&s, &w), Err(rumin::Error::TraceCondition(1, 1))));
}

#[test]
fn pi_fixes_rumin_forms_and_kills_dtheta() {
    for s in structures() {
        let mut rng = rng_for(1, "pi", 0);
        for (p, q) in all_bidegrees() {
            let r = realize(&s, &form(&mut rng, &s, p, q)).unwrap();
            assert_eq!(pi_project(&s, &r).unwrap(), r, "({p},{q})");
        }
        assert!(pi_project(&s, s.dtheta()).unwrap().is_zero());
        let f = random_poly(&mut rng, SMALL);
        assert!(gamma(&s, &FrameForm::scalar(f)).unwrap().is_zero());
    }
}

#[test]
fn pi_is_idempotent() {
    let s = curved();
    let mut rng = rng_for(1, "pi-idem", 0);
    for mask in [0b00110u8, 0b10011, 0b01101, 0b11110] {
        let w = FrameForm::component(mask, random_poly(&mut rng, SMALL));
        let once = pi_project(s, &w).unwrap();
        assert_eq!(pi_project(s, &once).unwrap(), once);
    }
}

#[test]
fn frame_formulas_match_definitions() {
    for s in structures() {
        let mut rng = rng_for(2, "frame-vs-def", 0);
        for (p, q) in all_bidegrees() {
            let w = form(&mut rng, &s, p, q);
            for op in Op::ALL {
                if op.target(p, q).is_some() {
                    assert_eq!(op.apply(&s, &w).unwrap(), op.apply_def(&s, &w).unwrap(), "{} on ({p},{q})", op.name());
                }
            }
            if p + q < 5 {
                assert_eq!(d(&s, &w).unwrap(), d_def(&s, &w).unwrap(), "d on ({p},{q})");
            }
        }
    }
}

#[test]
fn two_step_compositions_cancel() {
    for s in structures() {
        let mut rng = rng_for(3, "complex", 0);
        for (p, q) in all_bidegrees() {
            if p + q >= 4 {
                continue;
            }
            let w = form(&mut rng, &s, p, q);
            let mut total = Graded::zero(p + q + 2);
            for part in d(&s, &w).unwrap().parts() {
                total = total.add(&d(&s, part).unwrap());
            }
            assert!(total.is_zero(), "({p},{q}): {total:?}");
        }
    }
}

#[test]
fn star_is_an_involution_and_matches_formula() {
    for s in structures() {
        let mut rng = rng_for(4, "star", 0);
        for (p, q) in all_bidegrees() {
            let w = form(&mut rng, &s, p, q);
            let st = hodge_star(&s, &w).unwrap();
            assert_eq!(hodge_star(&s, &st).unwrap(), w, "({p},{q})");
            if w.is_low() {
                assert_eq!(st.bidegree(), (3 - q, 2 - p));
                assert_eq!(hodge_star_formula(&s, &w).unwrap(), st, "({p},{q})");
            }
        }
    }
    let one = hodge_star(&PHStructure::flat(), &PqForm::function(Scalar::one())).unwrap();
    assert_eq!(one.bidegree(), (3, 2));
    assert_eq!(one.value(), &Scalar::one());
}

#[test]
fn star_defining_relation() {
    for s in structures() {
        let mut rng = rng_for(5, "star-def", 0);
        let vol = FrameForm::wedge_of(&[0]).wedge(&s.dtheta().wedge(s.dtheta()));
        for (p, q) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)] {
            let (w, t) = (form(&mut rng, &s, p, q), form(&mut rng, &s, p, q));
            let lhs = realize(&s, &rwedge_general(&s, &w, &hodge_star(&s, &conj(&t)).unwrap()).unwrap().part(3, 2).unwrap().clone()).unwrap();
            let rhs = vol.scale(&(hermitian_inner(&s, &w, &t).unwrap() * Scalar::ratio(1, 2)));
            assert_eq!(lhs, rhs, "({p},{q})");
        }
    }
}

#[test]
fn hermitian_inner_is_hermitian() {
    let s = curved();
    let mut rng = rng_for(6, "inner", 0);
    for (p, q) in all_bidegrees() {
        let (w, t) = (form(&mut rng, s, p, q), form(&mut rng, s, p, q));
        assert_eq!(hermitian_inner(s, &w, &t).unwrap().conj(), hermitian_inner(s, &t, &w).unwrap());
        let n = hermitian_inner(s, &w, &w).unwrap();
        assert!(n.is_real());
    }
}

#[test]
fn adjoint_frame_matches_star_path() {
    for s in structures() {
        let mut rng = rng_for(7, "adjoint", 0);
        for (p, q) in [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)] {
            let w = form(&mut rng, &s, p, q);
            if p > 0 {
                assert_eq!(db_adjoint_frame(&s, &w).unwrap(), db_adjoint_star(&s, &w).unwrap(), "db* ({p},{q})");
            }
            if q > 0 {
                assert_eq!(dbar_adjoint_frame(&s, &w).unwrap(), dbar_adjoint_star(&s, &w).unwrap(), "dbar* ({p},{q})");
            }
        }
    }
}

#[test]
fn db_adjoint_on_one_forms_is_minus_divergence() {
    let s = PHStructure::flat();
    let w = PqForm::from_sorted_fn(1, 0, |i| if i[0] == 0 { Scalar::var(Var::Zb1).pow(2) } else { Scalar::var(Var::Zb2) * Scalar::var(Var::Z1) })
        .unwrap();
    // flat: ∇^μ ω_μ = Z_1̄ ω_1 + Z_2̄ ω_2
    let expect = Scalar::var(Var::Zb1).scale_int(-2) - Scalar::var(Var::Z1);
    assert_eq!(db_adjoint(&s, &w).unwrap().value(), &expect);
}

#[test]
fn conjugation_matches_honest_forms() {
    for s in structures() {
        let mut rng = rng_for(8, "conj", 0);
        for (p, q) in all_bidegrees() {
            let w = form(&mut rng, &s, p, q);
            let c = conj(&w);
            assert_eq!(realize(&s, &c).unwrap(), realize(&s, &w).unwrap().conj(), "({p},{q})");
            assert_eq!(conj(&c), w);
        }
    }
}

#[test]
fn dbc_is_conjugated_d() {
    for s in structures() {
        let mut rng = rng_for(9, "dbc", 0);
        for (p, q) in all_bidegrees() {
            if p + q == 5 {
                continue;
            }
            let w = form(&mut rng, &s, p, q);
            let mut jdj = Graded::zero(p + q + 1);
            for part in d(&s, &j_inv(&w)).unwrap().parts() {
                jdj.insert(j_op(part));
            }
            assert_eq!(dbc(&s, &w).unwrap(), jdj, "({p},{q})");
        }
    }
}

#[test]
fn closed_form_products_match_projection() {
    for s in structures() {
        let mut rng = rng_for(10, "products", 0);
        for _ in 0..2 {
            let (w, t) = (form(&mut rng, &s, 1, 1), form(&mut rng, &s, 1, 1));
            assert_eq!(rwedge_11_11(&s, &w, &t).unwrap(), rwedge_general(&s, &w, &t).unwrap());
            let r = form(&mut rng, &s, 0, 1);
            assert_eq!(rwedge_11_01(&s, &w, &r).unwrap(), rwedge_general(&s, &w, &r).unwrap());
            assert_eq!(rwedge(&s, &r, &w).unwrap(), rwedge_general(&s, &r, &w).unwrap());
        }
    }
}

#[test]
fn function_products_are_scalings() {
    for s in structures() {
        let mut rng = rng_for(11, "unit", 0);
        for (p, q) in all_bidegrees() {
            let w = form(&mut rng, &s, p, q);
            let f = PqForm::function(random_poly(&mut rng, SMALL));
            assert_eq!(rwedge(&s, &f, &w).unwrap(), rwedge_general(&s, &f, &w).unwrap(), "({p},{q})");
            assert_eq!(rwedge(&s, &PqForm::function(Scalar::one()), &w).unwrap(), Graded::from_form(w.clone()));
        }
    }
}

#[test]
fn leibniz_rule() {
    let s = curved();
    let mut rng = rng_for(12, "leibniz", 0);
    for ((p, q), (r, t)) in [((0, 1), (1, 0)), ((1, 0), (1, 1)), ((0, 0), (0, 2)), ((1, 1), (1, 1))] {
        let (w, x) = (form(&mut rng, s, p, q), form(&mut rng, s, r, t));
        let k = p + q + r + t;
        let sign = if (p + q) % 2 == 0 { 1 } else { -1 };
        let mut lhs = Graded::zero(k + 1);
        for part in rwedge(s, &w, &x).unwrap().parts() {
            lhs = lhs.add(&d(s, part).unwrap());
        }
        let mut rhs = Graded::zero(k + 1);
        for part in d(s, &w).unwrap().parts() {
            rhs = rhs.add(&rwedge(s, part, &x).unwrap());
        }
        for part in d(s, &x).unwrap().parts() {
            rhs = rhs.add(&rwedge(s, &w, part).unwrap().scale(&Scalar::int(sign)));
        }
        assert_eq!(lhs, rhs, "({p},{q})x({r},{t})");
    }
}

#[test]
fn lee_form_is_closed() {
    let s = curved();
    let lee = lee_form(s);
    assert!(!lee.is_zero());
    assert!(s.d(&realize(s, &lee).unwrap()).unwrap().is_zero());
    assert_eq!(conj(&lee), lee);
}

#[test]
fn kohn_laplacian_properties() {
    for s in structures() {
        assert!(kohn_laplacian(&s, &PqForm::function(Scalar::int(3))).unwrap().is_zero());
        let mut rng = rng_for(13, "kohn", 0);
        for (p, q) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2)] {
            let w = form(&mut rng, &s, p, q);
            let lhs = kohn_laplacian(&s, &hodge_star(&s, &conj(&w)).unwrap()).unwrap();
            let rhs = hodge_star(&s, &conj(&kohn_laplacian(&s, &w).unwrap())).unwrap();
            assert_eq!(lhs, rhs, "({p},{q})");
        }
    }
}

#[test]
fn transport_between_power_structures() {
    let u = random_conformal_factor(&mut rng_for(5, "rumin-factor", 0), SMALL);
    let a = PHStructure::power(&u, 0).unwrap();
    let b = PHStructure::power(&u, 1).unwrap();
    let mut rng = rng_for(14, "transport", 0);
    for (p, q) in all_bidegrees() {
        let w = form(&mut rng, &a, p, q);
        let there = transport(&a, &b, &w).unwrap();
        assert_eq!(transport(&b, &a, &there).unwrap(), w, "({p},{q})");
    }
}
