//! Versioned JSON export and import of triples and transformations.
//!
//! Numbers are exact rationals written as strings. A field element is
//! {"re": a, "im": b} for a + b i and {"re": a, "w": b} for a + b w.
//! Polynomials list coefficients from the constant term up.

use serde_json::{json, Map, Value};

use crate::arith::{format_rat, parse_rat, BigRat, FieldElement, Ring, RingElement};
use crate::error::{Error, Result};
use crate::poly::{Poly, RationalMap};
use crate::triple::{DegreeClass, Family, HpgCase, RadicalFactor, Transformation, Triple};

pub const SCHEMA: &str = "hpgforge-1";

fn bad(what: &'static str, v: &Value) -> Error {
    Error::Parse { what, input: v.to_string() }
}

fn imag_key(ring: Ring) -> &'static str {
    match ring {
        Ring::Gauss => "im",
        Ring::Eisenstein => "w",
    }
}

pub fn field_to_json(c: &FieldElement) -> Value {
    let mut m = Map::new();
    m.insert("re".into(), Value::String(format_rat(c.a())));
    m.insert(imag_key(c.ring()).into(), Value::String(format_rat(c.b())));
    Value::Object(m)
}

fn rat_field(v: &Value, key: &str) -> Result<BigRat> {
    match v.get(key) {
        Some(Value::String(s)) => parse_rat(s),
        Some(Value::Number(n)) => parse_rat(&n.to_string()),
        _ => Err(bad("field element", v)),
    }
}

pub fn field_from_json(v: &Value, ring: Ring) -> Result<FieldElement> {
    Ok(FieldElement::new(ring, rat_field(v, "re")?, rat_field(v, imag_key(ring))?))
}

fn element_to_json(u: &RingElement) -> Value {
    let mut v = field_to_json(&u.to_field());
    v["text"] = Value::String(u.to_string());
    v
}

fn element_from_json(v: &Value, ring: Ring) -> Result<RingElement> {
    field_from_json(v, ring)?.to_ring().ok_or_else(|| bad("ring element", v))
}

pub fn poly_to_json(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(field_to_json).collect())
}

pub fn poly_from_json(v: &Value, ring: Ring) -> Result<Poly> {
    let arr = v.as_array().ok_or_else(|| bad("polynomial", v))?;
    Ok(Poly::new(ring, arr.iter().map(|c| field_from_json(c, ring)).collect::<Result<_>>()?))
}

fn map_to_json(m: &RationalMap) -> Value {
    json!({ "num": poly_to_json(m.num()), "den": poly_to_json(m.den()), "text": m.to_string() })
}

fn map_from_json(v: &Value, ring: Ring) -> Result<RationalMap> {
    RationalMap::new(poly_from_json(&v["num"], ring)?, poly_from_json(&v["den"], ring)?)
}

fn str_of<'a>(v: &'a Value, key: &str) -> Result<&'a str> {
    v.get(key).and_then(Value::as_str).ok_or_else(|| bad("string field", v))
}

fn case_named(s: &str) -> Result<HpgCase> {
    [HpgCase::E1, HpgCase::E2, HpgCase::E3, HpgCase::Hyper]
        .into_iter()
        .find(|c| c.name() == s)
        .ok_or_else(|| Error::Parse { what: "equation", input: s.to_string() })
}

pub fn triple_to_json(t: &Triple) -> Value {
    json!({
        "family": t.family.name(),
        "class": t.class.name(),
        "ring": t.family.ring().name(),
        "u": element_to_json(&t.u),
        "degree": t.degree(),
        "P": poly_to_json(&t.p),
        "Q": poly_to_json(&t.q),
        "R": poly_to_json(&t.r),
    })
}

pub fn triple_from_json(v: &Value) -> Result<Triple> {
    let family: Family = str_of(v, "family")?.parse()?;
    let ring = family.ring();
    let class = DegreeClass::parse(str_of(v, "class")?)?;
    let u = element_from_json(&v["u"], ring)?;
    let p = poly_from_json(&v["P"], ring)?;
    let q = poly_from_json(&v["Q"], ring)?;
    let r = poly_from_json(&v["R"], ring)?;
    Ok(Triple::new(family, class, u, p, q, r))
}

pub fn transformation_to_json(t: &Transformation) -> Value {
    let theta: Vec<Value> = t
        .theta
        .factors()
        .iter()
        .map(|(m, e)| json!({ "base": map_to_json(m), "exp": format_rat(e) }))
        .collect();
    json!({
        "source": t.source.name(),
        "target": t.target.name(),
        "ring": t.ring().name(),
        "degree": t.degree(),
        "phi": map_to_json(&t.phi),
        "theta": theta,
        "u": t.u.as_ref().map(element_to_json),
        "family": t.family.map(|f| f.name()),
        "text": t.to_string(),
    })
}

pub fn transformation_from_json(v: &Value) -> Result<Transformation> {
    let ring: Ring = str_of(v, "ring")?.parse()?;
    let source = case_named(str_of(v, "source")?)?;
    let target = case_named(str_of(v, "target")?)?;
    let phi = map_from_json(&v["phi"], ring)?;
    let factors = v["theta"]
        .as_array()
        .ok_or_else(|| bad("theta", v))?
        .iter()
        .map(|f| Ok((map_from_json(&f["base"], ring)?, parse_rat(str_of(f, "exp")?)?)))
        .collect::<Result<Vec<_>>>()?;
    let theta = RadicalFactor::new(factors)?;
    let u = match &v["u"] {
        Value::Null => None,
        e => Some(element_from_json(e, ring)?),
    };
    let family = match &v["family"] {
        Value::Null => None,
        f => Some(f.as_str().ok_or_else(|| bad("family", f))?.parse()?),
    };
    Ok(Transformation { source, target, phi, theta, u, family })
}

/// The document `gen --format json` prints.
pub fn generation_document(t: &Triple, tr: &Transformation) -> Value {
    json!({
        "schema": SCHEMA,
        "triple": triple_to_json(t),
        "transformation": transformation_to_json(tr),
    })
}

/// Any other report, wrapped with the schema tag.
pub fn document(kind: &str, body: Value) -> Value {
    json!({ "schema": SCHEMA, "kind": kind, "result": body })
}

pub fn check_schema(v: &Value) -> Result<()> {
    match v.get("schema").and_then(Value::as_str) {
        Some(SCHEMA) => Ok(()),
        _ => Err(bad("schema tag", &v["schema"])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triple::{generate, quadratic_cross, to_transformation, CrossKind};

    #[test]
    fn round_trips() {
        for (f, s) in [(Family::E1, "2+1i"), (Family::E2, "2-1w"), (Family::E3, "3+0w")] {
            let u = RingElement::parse(s, Some(f.ring())).unwrap();
            let t = generate(f, &u).unwrap();
            let tr = to_transformation(&t).unwrap();
            let doc = generation_document(&t, &tr);
            let text = serde_json::to_string(&doc).unwrap();
            let back: Value = serde_json::from_str(&text).unwrap();
            check_schema(&back).unwrap();
            assert_eq!(triple_from_json(&back["triple"]).unwrap(), t);
            assert_eq!(transformation_from_json(&back["transformation"]).unwrap(), tr);
        }
        let q = quadratic_cross(CrossKind::HyperToE2);
        assert_eq!(transformation_from_json(&transformation_to_json(&q)).unwrap(), q);
    }

    #[test]
    fn keys_follow_the_ring() {
        let g = field_to_json(&FieldElement::parse("1/2+3i", Some(Ring::Gauss)).unwrap());
        assert_eq!(g, json!({"re": "1/2", "im": "3"}));
        let e = field_to_json(&FieldElement::gen(Ring::Eisenstein));
        assert_eq!(e, json!({"re": "0", "w": "1"}));
        assert!(check_schema(&json!({"schema": "other"})).is_err());
        assert!(triple_from_json(&json!({"family": "e9"})).is_err());
    }
}
