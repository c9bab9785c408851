//! Textual s-expressions for scalars.
//!
//! Grammar: `(add e...)`, `(mul e...)`, `(pow e k)`, `(var name)`,
//! `(rat n d)` and the atoms `i`, `u`, `sigma`. Printing emits one fixed
//! canonical shape, so `parse(print(a))` reproduces `a` exactly and printing
//! again gives the same bytes.

use super::coeff::Coeff;
use super::mono::{Mono, Var};
use super::scalar::Scalar;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt::Write;

fn write_rat(out: &mut String, n: &BigInt, d: &BigInt) {
    let _ = write!(out, "(rat {n} {d})");
}

fn write_coeff(out: &mut String, c: &Coeff) {
    let (re, im) = (c.re(), c.im());
    match (re.is_zero(), im.is_zero()) {
        (_, true) => write_rat(out, re.numer(), re.denom()),
        (true, false) => {
            out.push_str("(mul ");
            write_rat(out, im.numer(), im.denom());
            out.push_str(" i)");
        }
        (false, false) => {
            out.push_str("(add ");
            write_rat(out, re.numer(), re.denom());
            out.push_str(" (mul ");
            write_rat(out, im.numer(), im.denom());
            out.push_str(" i))");
        }
    }
}

fn write_factor(out: &mut String, atom: &str, e: i64) {
    if e == 1 {
        out.push_str(atom);
    } else {
        let _ = write!(out, "(pow {atom} {e})");
    }
}

fn write_term(out: &mut String, m: Mono, c: &Coeff) {
    if m == Mono::ONE {
        write_coeff(out, c);
        return;
    }
    out.push_str("(mul ");
    write_coeff(out, c);
    for v in Var::ALL {
        let e = m.exp(v);
        if e > 0 {
            out.push(' ');
            write_factor(out, &format!("(var {})", v.name()), e as i64);
        }
    }
    if m.sigma_exp() > 0 {
        out.push(' ');
        write_factor(out, "sigma", m.sigma_exp() as i64);
    }
    if m.u_exp() != 0 {
        out.push(' ');
        write_factor(out, "u", m.u_exp() as i64);
    }
    out.push(')');
}

pub fn to_sexpr(a: &Scalar) -> String {
    let mut out = String::new();
    match a.terms() {
        [] => out.push_str("(rat 0 1)"),
        [(m, c)] => write_term(&mut out, *m, c),
        terms => {
            out.push_str("(add");
            for (m, c) in terms {
                out.push(' ');
                write_term(&mut out, *m, c);
            }
            out.push(')');
        }
    }
    out
}

#[derive(Debug)]
enum Node {
    Atom(String),
    List(Vec<Node>),
}

fn tokenize(s: &str) -> Vec<String> {
    let mut toks = Vec::new();
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' | ')' => {
                if !cur.is_empty() {
                    toks.push(std::mem::take(&mut cur));
                }
                toks.push(ch.to_string());
            }
            c if c.is_whitespace() => {
                if !cur.is_empty() {
                    toks.push(std::mem::take(&mut cur));
                }
            }
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        toks.push(cur);
    }
    toks
}

fn parse_node(toks: &[String], pos: &mut usize) -> Result<Node> {
    let tok = toks.get(*pos).ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
    *pos += 1;
    match tok.as_str() {
        "(" => {
            let mut items = Vec::new();
            loop {
                match toks.get(*pos).map(String::as_str) {
                    Some(")") => {
                        *pos += 1;
                        return Ok(Node::List(items));
                    }
                    Some(_) => items.push(parse_node(toks, pos)?),
                    None => return Err(Error::Parse("unbalanced parenthesis".into())),
                }
            }
        }
        ")" => Err(Error::Parse("unexpected ')'".into())),
        atom => Ok(Node::Atom(atom.to_string())),
    }
}

fn int_atom(n: &Node) -> Result<BigInt> {
    match n {
        Node::Atom(s) => s.parse::<BigInt>().map_err(|_| Error::Parse(format!("bad integer {s}"))),
        _ => Err(Error::Parse("expected an integer".into())),
    }
}

fn eval(n: &Node) -> Result<Scalar> {
    match n {
        Node::Atom(a) => match a.as_str() {
            "i" => Ok(Scalar::i()),
            "u" => Ok(Scalar::u_pow(1)),
            "sigma" => Ok(Scalar::sigma()),
            other => Err(Error::Parse(format!("unknown atom {other}"))),
        },
        Node::List(items) => {
            let (head, args) = match items.split_first() {
                Some((Node::Atom(h), rest)) => (h.as_str(), rest),
                _ => return Err(Error::Parse("expected an operator".into())),
            };
            match head {
                "add" => {
                    let parts = args.iter().map(eval).collect::<Result<Vec<_>>>()?;
                    Ok(Scalar::sum(parts.iter()))
                }
                "mul" => args.iter().try_fold(Scalar::one(), |acc, a| Ok(acc * eval(a)?)),
                "pow" => {
                    let [base, e] = args else { return Err(Error::Parse("pow takes two arguments".into())) };
                    let base = eval(base)?;
                    let e = int_atom(e)?;
                    let e: i64 = e.try_into().map_err(|_| Error::Parse("exponent too large".into()))?;
                    if e >= 0 {
                        Ok(base.pow(e as u32))
                    } else if base.is_unit() {
                        Scalar::one().div_exact(&base.pow((-e) as u32)).ok_or(Error::NotInRing)
                    } else {
                        Err(Error::Parse("negative power of a non-unit".into()))
                    }
                }
                "var" => match args {
                    [Node::Atom(name)] => var_by_name(name),
                    _ => Err(Error::Parse("var takes a name".into())),
                },
                "rat" => {
                    let [n, d] = args else { return Err(Error::Parse("rat takes two integers".into())) };
                    let (n, d) = (int_atom(n)?, int_atom(d)?);
                    if d.is_zero() {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    Ok(Scalar::constant(Coeff::from_big(n, BigInt::zero(), d)))
                }
                "i" if args.is_empty() => Ok(Scalar::i()),
                "u" if args.is_empty() => Ok(Scalar::u_pow(1)),
                "sigma" if args.is_empty() => Ok(Scalar::sigma()),
                other => Err(Error::Parse(format!("unknown operator {other}"))),
            }
        }
    }
}

fn var_by_name(name: &str) -> Result<Scalar> {
    if let Some(v) = Var::from_name(name) {
        return Ok(Scalar::var(v));
    }
    match name {
        "x1" => Ok(Scalar::x(1)),
        "x2" => Ok(Scalar::x(2)),
        "y1" => Ok(Scalar::y(1)),
        "y2" => Ok(Scalar::y(2)),
        other => Err(Error::Parse(format!("unknown variable {other}"))),
    }
}

pub fn from_sexpr(s: &str) -> Result<Scalar> {
    let toks = tokenize(s);
    let mut pos = 0;
    let node = parse_node(&toks, &mut pos)?;
    if pos != toks.len() {
        return Err(Error::Parse("trailing input".into()));
    }
    eval(&node)
}
