//! All pairwise values of the sesquilinear forms on a small fixture set,
//! each as an exact Gaussian rational times pi^2.

use crate::case::Case;
use crate::config::SuiteConfig;
use crate::report::FixtureRecord;
use num_rational::BigRational;
use rumin::pairing::{self, PairingValue};
use rumin::rumin::{dbar, PqForm};
use serde::Serialize;

#[derive(Serialize)]
pub struct Rational {
    pub num: String,
    pub den: String,
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Rational {
        Rational { num: q.numer().to_string(), den: q.denom().to_string() }
    }
}

#[derive(Serialize)]
pub struct Entry {
    pub form: &'static str,
    pub left: String,
    pub right: String,
    /// Value divided by pi^2.
    pub re: Rational,
    pub im: Rational,
    /// Whether `B(left, right) = conj B(right, left)` holds exactly.
    pub hermitian: bool,
}

#[derive(Serialize)]
pub struct PairingMatrix {
    pub seed: u64,
    pub cutoff: u32,
    pub fixtures: Vec<FixtureRecord>,
    pub entries: Vec<Entry>,
}

type Named = (String, PqForm);
type Form = fn(&rumin::geometry::PHStructure, &PqForm, &PqForm) -> rumin::Result<PairingValue>;

pub fn pairing_matrix(cfg: &SuiteConfig, size: usize) -> rumin::Result<PairingMatrix> {
    let mut c = Case::new(cfg, "pairing-matrix", 0);
    let s = c.flat();
    let mut funcs = Vec::new();
    let mut forms = Vec::new();
    for k in 0..size {
        funcs.push((format!("f{k}"), c.cutoff_function(&format!("f{k}"))));
    }
    for k in 0..size {
        forms.push((format!("w{k}"), c.cutoff_form(&format!("w{k}"), &s, 0, 1)?));
    }
    let mut closed = Vec::new();
    for (name, f) in &funcs {
        closed.push((format!("dbar_b {name}"), dbar(&s, f)?));
    }
    let table: [(&'static str, Form, &[Named]); 4] = [
        ("l2", pairing::l2_inner, &forms),
        ("l01", pairing::form_l01, &forms),
        ("q01", pairing::form_q01, &closed),
        ("l00", pairing::form_l00, &funcs),
    ];
    let mut entries = Vec::new();
    for (form, b, args) in table {
        for (ln, l) in args {
            for (rn, r) in args {
                let v = b(&s, l, r)?;
                let hermitian = v == b(&s, r, l)?.conj();
                let q = v.coefficient();
                entries.push(Entry { form, left: ln.clone(), right: rn.clone(), re: q.re().into(), im: q.im().into(), hermitian });
            }
        }
    }
    Ok(PairingMatrix { seed: cfg.seed, cutoff: cfg.cutoff, fixtures: c.fixtures, entries })
}
