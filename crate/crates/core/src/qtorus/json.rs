use std::collections::BTreeMap;
use std::sync::Arc;

use num::Zero;
use serde_json::{json, Map, Value};

use super::coeff::{fmt_coeff, fmt_rat, parse_coeff, parse_rat, QPowerPoly};
use super::element::{Monomial, Torus, TorusElement};
use crate::error::{Error, Result};

/// `[{ "coeff": [{"qexp": "p/r", "c": "p/r"}], "monomial": {vertex: "p/r"} }, …]`
pub fn element_to_json(x: &TorusElement) -> Value {
    let q = x.torus().quiver();
    let terms: Vec<Value> = x
        .terms()
        .iter()
        .map(|(m, c)| {
            let coeff: Vec<Value> =
                c.iter().map(|(r, k)| json!({"qexp": fmt_rat(r), "c": fmt_coeff(k)})).collect();
            let mut mono = Map::new();
            for (i, e) in m.0.iter().enumerate() {
                if !e.is_zero() {
                    mono.insert(q.name(i).to_string(), Value::String(fmt_rat(e)));
                }
            }
            json!({"coeff": coeff, "monomial": Value::Object(mono)})
        })
        .collect();
    Value::Array(terms)
}

pub fn element_from_json(torus: &Arc<Torus>, v: &Value) -> Result<TorusElement> {
    let bad = |m: String| Error::Parse(format!("element json: {m}"));
    let arr = v.as_array().ok_or_else(|| bad("expected a list of terms".into()))?;
    let mut acc: BTreeMap<Monomial, QPowerPoly> = BTreeMap::new();
    for t in arr {
        let mut c = QPowerPoly::zero();
        for x in t.get("coeff").and_then(Value::as_array).ok_or_else(|| bad("missing coeff".into()))? {
            let r = x.get("qexp").and_then(Value::as_str).and_then(parse_rat).ok_or_else(|| bad("bad qexp".into()))?;
            let k = x.get("c").and_then(Value::as_str).and_then(parse_coeff).ok_or_else(|| bad("bad c".into()))?;
            c.add_term(r, &k);
        }
        let mut m = Monomial::one(torus.len());
        let mono = t.get("monomial").and_then(Value::as_object).ok_or_else(|| bad("missing monomial".into()))?;
        for (name, e) in mono {
            let i = torus.index(name).map_err(|e| bad(e.to_string()))?;
            m.0[i] = e.as_str().and_then(parse_rat).ok_or_else(|| bad(format!("bad exponent for {name}")))?;
        }
        if !torus.admits(&m) {
            return Err(bad(format!("exponent outside (1/{})Z", torus.root_order())));
        }
        acc.entry(m).or_default().add_assign(&c);
    }
    Ok(TorusElement::from_terms(torus, acc))
}
