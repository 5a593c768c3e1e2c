//! Canonical JSON and text encodings.

use bsforge_core::arith::{Exps, MPoly, Mat, Rat};
use bsforge_core::numfield::{FieldElem, NormCertificate};
use serde_json::{json, Value};

pub fn rat(r: &Rat) -> Value {
    Value::String(r.to_wire())
}

pub fn elem(x: &FieldElem) -> Value {
    json!(x.to_wire())
}

pub fn exps(e: &Exps) -> Value {
    json!(e)
}

/// `{terms: [{exps, coeff}]}` in descending lexicographic order.
pub fn poly(p: &MPoly<Rat>) -> Value {
    let terms: Vec<Value> = p.terms().map(|(e, c)| json!({"exps": exps(e), "coeff": rat(c)})).collect();
    json!({ "terms": terms })
}

pub fn polys(ps: &[MPoly<Rat>]) -> Value {
    Value::Array(ps.iter().map(poly).collect())
}

pub fn matrix(m: &Mat<Rat>) -> Value {
    Value::Array(m.to_rows().iter().map(|r| Value::Array(r.iter().map(rat).collect())).collect())
}

/// `[[a,b],[c,d]]` with rationals printed as `p` or `p/q`.
pub fn matrix_literal(m: &Mat<Rat>) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(Rat::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

/// Rebuilds a polynomial from its JSON encoding.
pub fn poly_from_json(v: &Value, nvars: usize) -> Option<MPoly<Rat>> {
    let terms = v.get("terms")?.as_array()?;
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        let e: Exps = serde_json::from_value(t.get("exps")?.clone()).ok()?;
        let c: Rat = t.get("coeff")?.as_str()?.parse().ok()?;
        out.push((e, c));
    }
    Some(MPoly::from_terms(nvars, out))
}

/// The certificate section: `nontrivial` is `true` with an inert-prime
/// certificate, `false` with a preimage, `null` when inconclusive.
pub fn certificate(cert: Option<&NormCertificate>) -> Value {
    match cert {
        Some(NormCertificate { prime: Some(p), valuation: Some(v), .. }) => json!({
            "nontrivial": true,
            "certificate": {"p": p, "v": v},
            "preimage": null,
        }),
        Some(NormCertificate { preimage: Some(x), .. }) => json!({
            "nontrivial": false,
            "certificate": null,
            "preimage": elem(x),
        }),
        _ => json!({"nontrivial": null, "certificate": null, "preimage": null}),
    }
}

/// Pretty JSON with a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use bsforge_core::arith::parse_mpoly;

    #[test]
    fn poly_round_trip() {
        let p = parse_mpoly("w0*w2 - 1/2*w1^2 + 3", "w", 3).unwrap();
        let v = poly(&p);
        assert_eq!(v["terms"][0]["coeff"], "1/1");
        assert_eq!(v["terms"][0]["exps"], json!([1, 0, 1]));
        assert_eq!(poly_from_json(&v, 3).unwrap(), p);
    }

    #[test]
    fn literal_format() {
        let m = Mat::from_rows(vec![vec![Rat::from(0), Rat::new(1, 2).unwrap()], vec![Rat::from(-4), Rat::from(1)]]);
        assert_eq!(matrix_literal(&m), "[[0,1/2],[-4,1]]");
    }
}
