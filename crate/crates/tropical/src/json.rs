//! JSON forms. Polynomials carry a ring tag and a degree map with
//! descending keys, e.g. `{"ring":"tmax","coeffs":{"5":"0","0":"1"}}`;
//! signed values are `{"sign":"+","mag":"3"}` with `o` for balanced, or
//! `{"zero":true}`; Puiseux series are arrays of [coefficient, exponent]
//! string pairs and series polynomials list one series per degree.

use serde_json::{Map, Value};

use crate::puiseux::{FPolynomial, PuiseuxSeries};
use crate::spoly::SPolynomial;
use crate::system::{El, SValue, Sign};
use crate::text::parse_rat;
use crate::tmax::{Bot, Fin};
use crate::tpoly::TPolynomial;
use crate::{Error, FPoly, GVal, PSeries, Rat, Result, SPoly, SVal, TPoly};

pub fn rat_to_json(q: &Rat) -> Value {
    Value::String(q.to_string())
}

pub fn rat_from_json(v: &Value) -> Result<Rat> {
    match v {
        Value::String(s) => parse_rat(s),
        Value::Number(n) => parse_rat(&n.to_string()),
        _ => Err(Error::parse(format!("not a rational: {v}"))),
    }
}

pub fn gval_to_json(v: &GVal) -> Value {
    match v {
        Bot => Value::String("-inf".to_string()),
        Fin(q) => rat_to_json(q),
    }
}

pub fn gval_from_json(v: &Value) -> Result<GVal> {
    match v {
        Value::String(s) if s.trim() == "-inf" => Ok(Bot),
        _ => rat_from_json(v).map(Fin),
    }
}

pub fn sval_to_json(v: &SVal) -> Value {
    match v {
        SValue::Zero => {
            let mut m = Map::new();
            m.insert("zero".to_string(), Value::Bool(true));
            Value::Object(m)
        }
        El(s, mag) => {
            let tag = match s {
                Sign::Pos => "+",
                Sign::Neg => "-",
                Sign::Bal => "o",
            };
            let mut m = Map::new();
            m.insert("sign".to_string(), Value::String(tag.to_string()));
            m.insert("mag".to_string(), rat_to_json(mag));
            Value::Object(m)
        }
    }
}

pub fn sval_from_json(v: &Value) -> Result<SVal> {
    let Value::Object(m) = v else {
        return Err(Error::parse(format!("not a signed value: {v}")));
    };
    if let Some(z) = m.get("zero") {
        return match z {
            Value::Bool(true) => Ok(SValue::Zero),
            _ => Err(Error::parse("the zero marker must be true")),
        };
    }
    let sign = match m.get("sign") {
        Some(Value::String(s)) => match s.as_str() {
            "+" => Sign::Pos,
            "-" => Sign::Neg,
            "o" => Sign::Bal,
            other => return Err(Error::parse(format!("unknown sign tag: {other:?}"))),
        },
        _ => return Err(Error::parse("a signed value needs a sign tag")),
    };
    let mag = m
        .get("mag")
        .ok_or_else(|| Error::parse("a signed value needs a magnitude"))
        .and_then(rat_from_json)?;
    Ok(El(sign, mag))
}

fn check_ring(m: &Map<String, Value>, expected: &str) -> Result<()> {
    match m.get("ring") {
        None => Ok(()),
        Some(Value::String(s)) if s == expected => Ok(()),
        Some(other) => Err(Error::parse(format!(
            "expected ring tag {expected:?}, found {other}"
        ))),
    }
}

fn degree_map(m: &Map<String, Value>) -> Result<&Map<String, Value>> {
    match m.get("coeffs") {
        Some(Value::Object(c)) => Ok(c),
        _ => Err(Error::parse("a polynomial needs a coeffs map")),
    }
}

fn parse_degree(key: &str) -> Result<usize> {
    key.trim()
        .parse::<usize>()
        .map_err(|_| Error::parse(format!("not a degree: {key:?}")))
}

pub fn tpoly_to_json(p: &TPoly) -> Value {
    let mut coeffs = Map::new();
    for (k, c) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        coeffs.insert(k.to_string(), rat_to_json(c));
    }
    let mut m = Map::new();
    m.insert("ring".to_string(), Value::String("tmax".to_string()));
    m.insert("coeffs".to_string(), Value::Object(coeffs));
    Value::Object(m)
}

pub fn tpoly_from_json(v: &Value) -> Result<TPoly> {
    let Value::Object(m) = v else {
        return Err(Error::parse(format!("not a polynomial: {v}")));
    };
    check_ring(m, "tmax")?;
    let mut p = TPolynomial::zero();
    for (key, cv) in degree_map(m)? {
        let k = parse_degree(key)?;
        match gval_from_json(cv)? {
            Bot => {}
            c => {
                let cur = p.coeff(k);
                p.set(k, crate::tmax::t_add(&cur, &c));
            }
        }
    }
    Ok(p)
}

pub fn spoly_to_json(p: &SPoly) -> Value {
    let mut coeffs = Map::new();
    for (k, c) in p.terms().collect::<Vec<_>>().into_iter().rev() {
        coeffs.insert(k.to_string(), sval_to_json(c));
    }
    let mut m = Map::new();
    m.insert("ring".to_string(), Value::String("smax".to_string()));
    m.insert("coeffs".to_string(), Value::Object(coeffs));
    Value::Object(m)
}

pub fn spoly_from_json(v: &Value) -> Result<SPoly> {
    let Value::Object(m) = v else {
        return Err(Error::parse(format!("not a polynomial: {v}")));
    };
    check_ring(m, "smax")?;
    let mut p = SPolynomial::zero();
    for (key, cv) in degree_map(m)? {
        let k = parse_degree(key)?;
        match sval_from_json(cv)? {
            SValue::Zero => {}
            c => {
                let cur = p.coeff(k);
                p.set(k, crate::system::s_add(&cur, &c));
            }
        }
    }
    Ok(p)
}

pub fn pseries_to_json(f: &PSeries) -> Value {
    Value::Array(
        f.terms()
            .iter()
            .map(|(c, e)| Value::Array(vec![rat_to_json(c), rat_to_json(e)]))
            .collect(),
    )
}

pub fn pseries_from_json(v: &Value) -> Result<PSeries> {
    let Value::Array(items) = v else {
        return Err(Error::parse(format!("not a series: {v}")));
    };
    let mut terms = Vec::with_capacity(items.len());
    for item in items {
        let Value::Array(pair) = item else {
            return Err(Error::parse("each series term is a [coeff, exp] pair"));
        };
        let [c, e] = pair.as_slice() else {
            return Err(Error::parse("each series term is a [coeff, exp] pair"));
        };
        terms.push((rat_from_json(c)?, rat_from_json(e)?));
    }
    Ok(PuiseuxSeries::from_terms(terms))
}

pub fn fpoly_to_json(p: &FPoly) -> Value {
    let mut m = Map::new();
    m.insert("ring".to_string(), Value::String("puiseux".to_string()));
    m.insert(
        "coeffs".to_string(),
        Value::Array(p.coeffs().iter().map(pseries_to_json).collect()),
    );
    Value::Object(m)
}

pub fn fpoly_from_json(v: &Value) -> Result<FPoly> {
    let Value::Object(m) = v else {
        return Err(Error::parse(format!("not a polynomial: {v}")));
    };
    check_ring(m, "puiseux")?;
    let Some(Value::Array(items)) = m.get("coeffs") else {
        return Err(Error::parse("a series polynomial needs a coeffs array"));
    };
    let mut coeffs = Vec::with_capacity(items.len());
    for item in items {
        coeffs.push(pseries_from_json(item)?);
    }
    Ok(FPolynomial::new(coeffs))
}

pub fn pseries_list_to_json(roots: &[PSeries]) -> Value {
    Value::Array(roots.iter().map(pseries_to_json).collect())
}

pub fn pseries_list_from_json(v: &Value) -> Result<Vec<PSeries>> {
    let Value::Array(items) = v else {
        return Err(Error::parse(format!("not a series list: {v}")));
    };
    items.iter().map(pseries_from_json).collect()
}
