//! Text formats. Max-plus polynomials read `Y^5 + 4 Y^3 + Y + 1` with
//! `+` as the semiring sum and a leading rational as coefficient; signed
//! polynomials additionally use `-` for the semiring negation and a `*`
//! suffix to mark a balanced coefficient, with parentheses around
//! negative magnitudes (`-(-1)` is the negation of minus one). Puiseux
//! series read `-1*t^5 + 3*t^(1/2) - 2*t^(-2)`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero as _};

use crate::spoly::SPolynomial;
use crate::sturm::RatPolynomial;
use crate::system::{s_add, El, SValue, Sign};
use crate::tmax::{t_add, Bot, Fin};
use crate::tpoly::TPolynomial;
use crate::puiseux::{FPolynomial, PuiseuxSeries};
use crate::{Error, FPoly, GVal, PSeries, Rat, Result, SPoly, SVal, TPoly};

pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    Rat::from_str(t).map_err(|_| Error::parse(format!("not a rational: {t:?}")))
}

pub fn fmt_rat(q: &Rat) -> String {
    q.to_string()
}

pub fn parse_gval(s: &str) -> Result<GVal> {
    let t = s.trim();
    if t == "-inf" {
        Ok(Bot)
    } else {
        parse_rat(t).map(Fin)
    }
}

pub fn fmt_gval(v: &GVal) -> String {
    match v {
        Bot => "-inf".to_string(),
        Fin(q) => q.to_string(),
    }
}

/// Parenthesize a magnitude whose own sign would collide with the
/// semiring negation sign.
fn fmt_mag(m: &Rat) -> String {
    if m.is_negative() {
        format!("({m})")
    } else {
        m.to_string()
    }
}

fn parse_mag(s: &str) -> Result<Rat> {
    let t = s.trim();
    if let Some(inner) = t.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        parse_rat(inner)
    } else {
        parse_rat(t)
    }
}

pub fn parse_sval(s: &str) -> Result<SVal> {
    let t = s.trim();
    if t == "_" {
        return Ok(SValue::Zero);
    }
    let mut neg = false;
    let mut rest = t;
    while let Some(r) = rest.strip_prefix('-') {
        neg = !neg;
        rest = r.trim_start();
    }
    let mut bal = false;
    if let Some(r) = rest.strip_suffix('*') {
        bal = true;
        rest = r.trim_end();
    }
    if rest.is_empty() {
        return Err(Error::parse(format!("not a signed value: {t:?}")));
    }
    let mag = parse_mag(rest)?;
    let sign = if bal {
        Sign::Bal
    } else if neg {
        Sign::Neg
    } else {
        Sign::Pos
    };
    Ok(El(sign, mag))
}

pub fn fmt_sval(v: &SVal) -> String {
    match v {
        SValue::Zero => "_".to_string(),
        El(Sign::Pos, m) => fmt_mag(m),
        El(Sign::Neg, m) => format!("-{}", fmt_mag(m)),
        El(Sign::Bal, m) => format!("{}*", fmt_mag(m)),
    }
}

/// Splits a sum into (sign, term) pairs at top-level `+` and `-`,
/// respecting parentheses; stacked signs before a term compose.
fn split_terms(s: &str) -> Result<Vec<(i8, String)>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut sign: i8 = 1;
    let mut depth = 0usize;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                if depth == 0 {
                    return Err(Error::parse("unbalanced parentheses"));
                }
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if cur.trim().is_empty() {
                    if ch == '-' {
                        sign = -sign;
                    }
                } else {
                    out.push((sign, cur.trim().to_string()));
                    cur.clear();
                    sign = if ch == '-' { -1 } else { 1 };
                }
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(Error::parse("unbalanced parentheses"));
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    } else if !out.is_empty() || sign == -1 {
        return Err(Error::parse("dangling operator at the end of a sum"));
    }
    if out.is_empty() {
        return Err(Error::parse("empty polynomial text"));
    }
    Ok(out)
}

/// Splits one term into a coefficient part and a degree in `Y`.
fn split_y(term: &str) -> Result<(String, usize)> {
    match term.find('Y') {
        None => Ok((term.trim().to_string(), 0)),
        Some(i) => {
            let coeff = term[..i].trim().to_string();
            let rest = term[i + 1..].trim();
            let k = if rest.is_empty() {
                1
            } else if let Some(exp) = rest.strip_prefix('^') {
                let exp = exp.trim();
                exp.parse::<usize>()
                    .map_err(|_| Error::parse(format!("not a degree: {exp:?}")))?
            } else {
                return Err(Error::parse(format!("unexpected text after Y: {rest:?}")));
            };
            Ok((coeff, k))
        }
    }
}

fn ypart(k: usize) -> String {
    match k {
        0 => String::new(),
        1 => "Y".to_string(),
        _ => format!("Y^{k}"),
    }
}

fn join_signed(parts: Vec<(bool, String)>) -> String {
    let mut out = String::new();
    for (i, (neg, txt)) in parts.into_iter().enumerate() {
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&txt);
    }
    out
}

pub fn parse_tpoly(s: &str) -> Result<TPoly> {
    if s.trim() == "-inf" {
        return Ok(TPolynomial::zero());
    }
    let mut p = TPolynomial::zero();
    for (sign, term) in split_terms(s)? {
        let (coeff, k) = split_y(&term)?;
        if coeff == "inf" {
            return Err(Error::parse(
                "a -inf coefficient denotes an absent term; omit it",
            ));
        }
        let mut c = if coeff.is_empty() {
            Rat::zero()
        } else {
            parse_mag(&coeff)?
        };
        if sign < 0 {
            c = -c;
        }
        let cur = p.coeff(k);
        p.set(k, t_add(&cur, &Fin(c)));
    }
    Ok(p)
}

pub fn fmt_tpoly(p: &TPoly) -> String {
    let terms: Vec<(usize, &Rat)> = p.terms().collect();
    if terms.is_empty() {
        return "-inf".to_string();
    }
    let mut parts = Vec::with_capacity(terms.len());
    for (k, c) in terms.into_iter().rev() {
        let neg = c.is_negative();
        let a = c.abs();
        let y = ypart(k);
        let txt = if k == 0 {
            a.to_string()
        } else if a.is_zero() {
            y
        } else {
            format!("{a} {y}")
        };
        parts.push((neg, txt));
    }
    join_signed(parts)
}

pub fn parse_spoly(s: &str) -> Result<SPoly> {
    if s.trim() == "_" {
        return Ok(SPolynomial::zero());
    }
    let mut p = SPolynomial::zero();
    for (sign, term) in split_terms(s)? {
        let (mut coeff, k) = split_y(&term)?;
        if coeff == "_" {
            return Err(Error::parse(
                "a zero coefficient denotes an absent term; omit it",
            ));
        }
        let mut bal = false;
        if let Some(r) = coeff.strip_suffix('*') {
            bal = true;
            coeff = r.trim_end().to_string();
        }
        let mag = if coeff.is_empty() {
            if bal {
                return Err(Error::parse("a balanced marker needs a magnitude"));
            }
            Rat::zero()
        } else {
            parse_mag(&coeff)?
        };
        let mut sg = if bal { Sign::Bal } else { Sign::Pos };
        if sign < 0 {
            sg = sg.neg();
        }
        let cur = p.coeff(k);
        p.set(k, s_add(&cur, &El(sg, mag)));
    }
    Ok(p)
}

pub fn fmt_spoly(p: &SPoly) -> String {
    let terms: Vec<(usize, &SVal)> = p.terms().collect();
    if terms.is_empty() {
        return "_".to_string();
    }
    let mut parts = Vec::with_capacity(terms.len());
    for (k, c) in terms.into_iter().rev() {
        let El(sg, m) = c else { unreachable!("stored coefficients are nonzero") };
        let y = ypart(k);
        let (neg, coeff_txt) = match sg {
            Sign::Pos => (false, fmt_mag(m)),
            Sign::Neg => (true, fmt_mag(m)),
            Sign::Bal => (false, format!("{}*", fmt_mag(m))),
        };
        let txt = if k == 0 {
            coeff_txt
        } else if m.is_zero() && matches!(sg, Sign::Pos | Sign::Neg) {
            y
        } else {
            format!("{coeff_txt} {y}")
        };
        parts.push((neg, txt));
    }
    join_signed(parts)
}

pub fn parse_pseries(s: &str) -> Result<PSeries> {
    if s.trim() == "0" {
        return Ok(PuiseuxSeries::zero());
    }
    let mut terms = Vec::new();
    for (sign, term) in split_terms(s)? {
        let (coeff, exp) = match term.find('t') {
            None => (term.trim().to_string(), Rat::zero()),
            Some(i) => {
                let mut coeff = term[..i].trim().to_string();
                if let Some(r) = coeff.strip_suffix('*') {
                    coeff = r.trim_end().to_string();
                }
                let rest = term[i + 1..].trim();
                let e = if rest.is_empty() {
                    Rat::one()
                } else if let Some(exp) = rest.strip_prefix('^') {
                    parse_mag(exp)?
                } else {
                    return Err(Error::parse(format!("unexpected text after t: {rest:?}")));
                };
                (coeff, e)
            }
        };
        let mut c = if coeff.is_empty() {
            Rat::one()
        } else {
            parse_mag(&coeff)?
        };
        if sign < 0 {
            c = -c;
        }
        terms.push((c, exp));
    }
    Ok(PuiseuxSeries::from_terms(terms))
}

pub fn fmt_pseries(f: &PSeries) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::with_capacity(f.terms().len());
    for (c, e) in f.terms() {
        let neg = c.is_negative();
        let a = c.abs();
        let txt = if e.is_zero() {
            a.to_string()
        } else {
            let tpart = if e.is_one() {
                "t".to_string()
            } else if e.is_integer() && !e.is_negative() {
                format!("t^{e}")
            } else {
                format!("t^({e})")
            };
            format!("{a}*{tpart}")
        };
        parts.push((neg, txt));
    }
    join_signed(parts)
}

pub fn parse_fpoly(s: &str) -> Result<FPoly> {
    if s.trim() == "0" {
        return Ok(FPolynomial::zero());
    }
    let mut coeffs: Vec<PSeries> = Vec::new();
    for (sign, term) in split_terms(s)? {
        if sign < 0 {
            return Err(Error::parse(
                "series-coefficient terms join with + and carry their sign inside",
            ));
        }
        let Some(inner_end) = term.rfind(')') else {
            return Err(Error::parse(
                "each coefficient series must be parenthesized",
            ));
        };
        let Some(body) = term[..inner_end].strip_prefix('(') else {
            return Err(Error::parse(
                "each coefficient series must be parenthesized",
            ));
        };
        let series = parse_pseries(body)?;
        let (tail, k) = split_y(term[inner_end + 1..].trim())?;
        if !tail.is_empty() {
            return Err(Error::parse(format!("unexpected text in term: {tail:?}")));
        }
        if coeffs.len() <= k {
            coeffs.resize(k + 1, PuiseuxSeries::zero());
        }
        coeffs[k] = crate::puiseux::ps_add(&coeffs[k], &series);
    }
    Ok(FPolynomial::new(coeffs))
}

pub fn fmt_fpoly(p: &FPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let y = ypart(k);
        let txt = if k == 0 {
            format!("({})", fmt_pseries(c))
        } else {
            format!("({}) {y}", fmt_pseries(c))
        };
        parts.push((false, txt));
    }
    join_signed(parts)
}

/// Parses a list of Puiseux series separated by semicolons or newlines.
pub fn parse_pseries_list(s: &str) -> Result<Vec<PSeries>> {
    let mut out = Vec::new();
    for chunk in s.split(|c| c == ';' || c == '\n') {
        let t = chunk.trim();
        if !t.is_empty() {
            out.push(parse_pseries(t)?);
        }
    }
    if out.is_empty() {
        return Err(Error::parse("empty series list"));
    }
    Ok(out)
}

pub fn fmt_ratpoly(p: &RatPolynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for k in (0..=p.deg().unwrap()).rev() {
        let c = p.coeff(k);
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        let y = ypart(k);
        let txt = if k == 0 {
            a.to_string()
        } else if a.is_one() {
            y
        } else {
            format!("{a} {y}")
        };
        parts.push((neg, txt));
    }
    join_signed(parts)
}

macro_rules! display_via {
    ($ty:ty, $fmt:path) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&$fmt(self))
            }
        }
    };
}

display_via!(GVal, fmt_gval);
display_via!(SVal, fmt_sval);
display_via!(TPoly, fmt_tpoly);
display_via!(SPoly, fmt_spoly);
display_via!(PSeries, fmt_pseries);
display_via!(FPoly, fmt_fpoly);
display_via!(RatPolynomial, fmt_ratpoly);

macro_rules! from_str_via {
    ($ty:ty, $parse:path) => {
        impl FromStr for $ty {
            type Err = Error;
            fn from_str(s: &str) -> Result<Self> {
                $parse(s)
            }
        }
    };
}

from_str_via!(GVal, parse_gval);
from_str_via!(SVal, parse_sval);
from_str_via!(TPoly, parse_tpoly);
from_str_via!(SPoly, parse_spoly);
from_str_via!(PSeries, parse_pseries);
from_str_via!(FPoly, parse_fpoly);
