//! Interchange encoding shared by every module:
//! `{"vars": [...], "terms": [{"c": "num/den", "e": [...]}]}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use super::order::{MonomialOrder, OrderKind};
use super::polynomial::{Polynomial, Ring};
use super::{format_rational, parse_rational, PolyError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub c: String,
    pub e: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<OrderKind>,
    pub terms: Vec<TermJson>,
}

impl PolyJson {
    pub fn from_poly(p: &Polynomial) -> Self {
        PolyJson {
            vars: p.ring().vars().to_vec(),
            order: Some(p.order().kind()),
            terms: terms_json(p),
        }
    }

    /// Decode into `ring`, whose variable list must equal `vars`.
    pub fn to_poly_in(&self, ring: &Arc<Ring>) -> Result<Polynomial, PolyError> {
        if self.vars.as_slice() != ring.vars() {
            for v in &self.vars {
                if ring.var_index(v).is_none() {
                    return Err(PolyError::UnknownVariable(v.clone()));
                }
            }
            return Err(PolyError::Parse("variable lists differ in order".into()));
        }
        decode_terms(&self.terms, ring)
    }

    /// Decode into a fresh ring; `default_order` is used when the document
    /// carries none.
    pub fn to_poly(&self, default_order: OrderKind) -> Result<Polynomial, PolyError> {
        let kind = self.order.unwrap_or(default_order);
        let ring = Ring::with_order(self.vars.clone(), MonomialOrder::new(kind, self.vars.len()))?;
        decode_terms(&self.terms, &ring)
    }
}

pub fn terms_json(p: &Polynomial) -> Vec<TermJson> {
    p.terms()
        .iter()
        .map(|(m, c)| TermJson {
            c: format_rational(c),
            e: m.exponents().to_vec(),
        })
        .collect()
}

pub fn decode_terms(terms: &[TermJson], ring: &Arc<Ring>) -> Result<Polynomial, PolyError> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        if t.e.len() != ring.nvars() {
            return Err(PolyError::DimensionMismatch {
                expected: ring.nvars(),
                found: t.e.len(),
            });
        }
        out.push((Monomial::from_exponents(t.e.iter().copied()), parse_rational(&t.c)?));
    }
    Polynomial::from_terms(ring, out)
}

pub fn to_json_string(p: &Polynomial) -> String {
    serde_json::to_string(&PolyJson::from_poly(p)).expect("polynomial json")
}

pub fn from_json_str(s: &str, default_order: OrderKind) -> Result<Polynomial, PolyError> {
    let doc: PolyJson = serde_json::from_str(s).map_err(|e| PolyError::Parse(e.to_string()))?;
    doc.to_poly(default_order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ratio;

    #[test]
    fn encodes_the_documented_shape() {
        let r = Ring::new(["s1", "p1"], OrderKind::Lex);
        let s = Polynomial::var(&r, 0);
        let p = &(&s * &s).scale(&ratio(-1, 2)) + &Polynomial::var(&r, 1);
        let v: serde_json::Value = serde_json::from_str(&to_json_string(&p)).unwrap();
        assert_eq!(v["vars"][0], "s1");
        assert_eq!(v["terms"][0]["c"], "-1/2");
        assert_eq!(v["terms"][0]["e"], serde_json::json!([2, 0]));
        assert_eq!(from_json_str(&to_json_string(&p), OrderKind::Lex).unwrap(), p);
    }

    #[test]
    fn rejects_bad_exponent_length() {
        let doc = r#"{"vars":["x"],"terms":[{"c":"1","e":[1,2]}]}"#;
        assert!(matches!(
            from_json_str(doc, OrderKind::Lex),
            Err(PolyError::DimensionMismatch { .. })
        ));
    }
}
