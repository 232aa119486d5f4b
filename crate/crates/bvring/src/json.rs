//! Stable JSON forms for elements, tau-vectors, matrices, and parameters.
//!
//! Conventions: rational scalars embedded in reports and matrices serialize
//! as bare JSON numbers when they are integers (arbitrary precision, never
//! floats) and as `"p/q"` strings otherwise. Term coefficients of ring
//! elements and tau-vectors are always `"p/q"`-style strings so the schema
//! is uniform. Field order is fixed by the struct definitions; no map-based
//! serialization is used anywhere on the output path.

use std::str::FromStr;

use num_traits::Signed;
use serde::ser::Serializer;
use serde::Serialize;

use crate::linalg::QMatrix;
use crate::ring::{Monomial, RingElement, RingParams};
use crate::spectral::TauVector;
use crate::Rational;

/// Serializes a rational as a JSON number when integral, else `"p/q"`.
pub fn serialize_rational<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    if q.is_integer() {
        match serde_json::Number::from_str(&q.numer().to_string()) {
            Ok(n) => n.serialize(s),
            Err(_) => s.serialize_str(&q.to_string()),
        }
    } else {
        s.serialize_str(&q.to_string())
    }
}

/// Serializes a slice of rationals with [`serialize_rational`] per entry.
pub fn serialize_rationals<S: Serializer>(qs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(qs.iter().map(|q| JsonRational(q.clone())))
}

/// Serializes an optional rational, `null` when absent.
pub fn serialize_opt_rational<S: Serializer>(
    q: &Option<Rational>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match q {
        Some(v) => serialize_rational(v, s),
        None => s.serialize_none(),
    }
}

/// A rational wrapped for value-position serialization (matrix entries,
/// vector coordinates).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsonRational(pub Rational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serialize_rational(&self.0, s)
    }
}

pub fn vector_json(v: &[Rational]) -> Vec<JsonRational> {
    v.iter().cloned().map(JsonRational).collect()
}

pub fn matrix_json(m: &QMatrix) -> Vec<Vec<JsonRational>> {
    m.row_vecs().iter().map(|r| vector_json(r)).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct ParamsJson {
    pub n: u32,
    pub rho: u32,
    #[serde(serialize_with = "serialize_rationals")]
    pub degrees: Vec<Rational>,
    #[serde(serialize_with = "serialize_rational")]
    pub x: Rational,
}

pub fn params_json(p: &RingParams) -> ParamsJson {
    ParamsJson {
        n: p.n(),
        rho: p.rho(),
        degrees: p.degrees().to_vec(),
        x: p.x().clone(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TermJson {
    pub coef: String,
    pub tau_pairs: Vec<(u32, u32)>,
    pub l_factors: Vec<(u32, u32)>,
    pub o_indices: Vec<u32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ElementJson {
    pub n: u32,
    pub terms: Vec<TermJson>,
}

pub fn element_json(e: &RingElement) -> ElementJson {
    let terms = e
        .terms()
        .map(|(mon, coef)| TermJson {
            coef: coef.to_string(),
            tau_pairs: mon.pairs().to_vec(),
            l_factors: mon.l_factors().to_vec(),
            o_indices: mon.o_indices().to_vec(),
        })
        .collect();
    ElementJson {
        n: e.params().n(),
        terms,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TauTermJson {
    pub coef: String,
    pub pairs: Vec<(u32, u32)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TauVectorJson {
    pub d: u32,
    pub terms: Vec<TauTermJson>,
}

pub fn tau_vector_json(v: &TauVector) -> TauVectorJson {
    let terms = v
        .iter()
        .map(|(m, coef)| TauTermJson {
            coef: coef.to_string(),
            pairs: m.pairs().to_vec(),
        })
        .collect();
    TauVectorJson { d: v.d(), terms }
}

/// Renders a monomial in the written notation: `τ_{1,2}·l^1_3·o_4`.
pub fn pretty_monomial(m: &Monomial) -> String {
    if m.is_one() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    for (i, j) in m.pairs() {
        parts.push(format!("τ_{{{i},{j}}}"));
    }
    for (s, i) in m.l_factors() {
        parts.push(format!("l^{s}_{i}"));
    }
    for i in m.o_indices() {
        parts.push(format!("o_{i}"));
    }
    parts.join("·")
}

/// Renders an element in the same notation, with explicit coefficients.
pub fn pretty_element(e: &RingElement) -> String {
    let mut out = String::new();
    for (idx, (mon, coef)) in e.terms().enumerate() {
        let mag = coef.abs();
        if idx == 0 {
            if coef.is_negative() {
                out.push('-');
            }
        } else if coef.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let body = pretty_monomial(mon);
        if mag == crate::rat(1) && !mon.is_one() {
            out.push_str(&body);
        } else if mon.is_one() {
            out.push_str(&mag.to_string());
        } else {
            out.push_str(&format!("{mag}·{body}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
