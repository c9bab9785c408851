use rumin::expr::{Scalar, Var};
use rumin::fixture::{random_conformal_factor, random_poly, rng_for, PolyShape};
use rumin::geometry::{FrameTensor, PHStructure, Slot};

fn flat() -> PHStructure {
    PHStructure::flat()
}

/// `Z_α f` and `Z_ᾱ f` for the flat frame.
fn z(f: &Scalar, a: usize) -> Scalar {
    flat().e(1 + a, f).unwrap()
}

fn zb(f: &Scalar, a: usize) -> Scalar {
    flat().e(3 + a, f).unwrap()
}

fn factors() -> Vec<Scalar> {
    (0..5).map(|c| random_conformal_factor(&mut rng_for(11, "geometry", c), PolyShape::default())).collect()
}

#[test]
fn flat_model_is_flat() {
    let s = flat();
    assert!(s.torsion().is_zero());
    assert!(s.curvature().is_zero());
    assert!(s.einstein().is_zero());
    assert!(s.lee_primary().is_zero());
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(*s.h(a, b), Scalar::int((a == b) as i64));
        }
    }
    // Z_1 = ∂_z1 + (i/2) z̄1 ∂_t
    let t = Scalar::var(Var::T);
    assert_eq!(s.e(1, &t).unwrap(), Scalar::i() * Scalar::var(Var::Zb1) * Scalar::ratio(1, 2));
    assert_eq!(s.e(0, &t).unwrap(), Scalar::one());
}

#[test]
fn zero_factor_is_identity() {
    let s = PHStructure::rescale(&flat(), &Scalar::zero()).unwrap();
    assert_eq!(s.h(0, 0), &Scalar::one());
    assert!(s.torsion().is_zero() && s.schouten().is_zero());
}

#[test]
fn torsion_for_linear_factor() {
    let s = PHStructure::rescale(&flat(), &Scalar::x(1)).unwrap();
    // hand value: i Υ_11 − i Υ_1 Υ_1 with Υ_1 = 1/2, Υ_11 = 0
    assert_eq!(*s.torsion().get(&[0, 0]), Scalar::i() * Scalar::ratio(-1, 4));
    assert!(s.torsion().get(&[0, 1]).is_zero());
    assert!(s.torsion().get(&[1, 1]).is_zero());
}

#[test]
fn invariants_hold_after_rescale() {
    for u in factors() {
        let s = PHStructure::rescale(&flat(), &u).unwrap();
        for (name, r) in s.invariant_residuals().unwrap() {
            assert!(r.is_zero(), "{name}: {r}");
        }
        assert!(s.torsion().is_symmetric(0, 1));
        assert!(s.levi_tensor().is_hermitian());
        assert!(s.einstein().is_hermitian());
        assert_eq!(s.trace2(s.schouten()), s.scalar_curvature() * &Scalar::ratio(1, 6));
    }
}

#[test]
fn torsion_and_schouten_transformation() {
    for u in factors() {
        let s = PHStructure::rescale(&flat(), &u).unwrap();
        for a in 0..2 {
            for g in 0..2 {
                let expect = Scalar::i() * (z(&z(&u, a), g) - z(&u, a) * z(&u, g));
                assert_eq!(*s.torsion().get(&[a, g]), expect, "A[{a}{g}]");
            }
        }
        let grad2: Scalar = Scalar::sum((0..2).map(|m| z(&u, m) * zb(&u, m)).collect::<Vec<_>>().iter());
        for a in 0..2 {
            for b in 0..2 {
                let mut expect = -(zb(&z(&u, a), b) + z(&zb(&u, b), a)) * Scalar::ratio(1, 2);
                if a == b {
                    expect -= &grad2 * &Scalar::ratio(1, 2);
                }
                assert_eq!(*s.schouten().get(&[a, b]), expect, "P[{a}{b}]");
            }
        }
    }
}

#[test]
fn connection_is_metric_and_five_dim_symmetries() {
    for u in factors().into_iter().take(2) {
        let s = PHStructure::rescale(&flat(), &u).unwrap();
        for dir in [Slot::Hol, Slot::AntiHol, Slot::Reeb] {
            assert!(s.nabla(&s.levi_tensor(), dir).unwrap().is_zero());
        }
        let r = s.curvature();
        // R_{αβ̄ρσ̄} = R_{ρβ̄ασ̄}
        assert_eq!(r.permute(&[2, 1, 0, 3]), *r);
        let other = s.trace(r, 2, 3);
        assert_eq!(&other, s.ricci());
    }
}

#[test]
fn holomorphic_covector_transformation() {
    let mut rng = rng_for(11, "covector", 0);
    for u in factors().into_iter().take(3) {
        let s = PHStructure::rescale(&flat(), &u).unwrap();
        let w = FrameTensor::from_fn(&[Slot::Hol], |_| random_poly(&mut rng, PolyShape::default()));
        let hat = s.nabla(&w, Slot::Hol).unwrap();
        let base = flat().nabla(&w, Slot::Hol).unwrap();
        for a in 0..2 {
            for g in 0..2 {
                let expect = base.get(&[a, g]) - &(z(&u, g) * w.get(&[a])) - z(&u, a) * w.get(&[g]);
                assert_eq!(*hat.get(&[a, g]), expect);
            }
        }
    }
}

#[test]
fn chained_rescale_composes() {
    let (a, b) = (Scalar::x(1) * Scalar::var(Var::T), Scalar::y(2).pow(2));
    let one = PHStructure::rescale(&PHStructure::rescale(&flat(), &a).unwrap(), &b).unwrap();
    let two = PHStructure::rescale(&flat(), &(&a + &b)).unwrap();
    assert_eq!(one.schouten(), two.schouten());
    assert_eq!(one.coframe()[1], two.coframe()[1]);
}

#[test]
fn dump_is_stable() {
    let s = PHStructure::rescale(&flat(), &Scalar::x(1)).unwrap();
    let d = s.dump();
    assert_eq!(d.fields["A[00]"], "(mul (rat -1 4) i)");
    assert_eq!(d.upsilon, rumin::expr::to_sexpr(&Scalar::x(1)));
}
