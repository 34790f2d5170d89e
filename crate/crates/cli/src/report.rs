//! JSON report documents.
//!
//! Every document carries `"schema": "momangle/1"` and the fields `check`,
//! `input`, `params`, `verdict`, `witnesses`, `groups` and
//! `signs_convention`. `groups` maps each nonzero degree of `H^*(Z_K)` to
//! `{"rank": r, "torsion": [d₁, …]}` with `d₁ | d₂ | …`. Commands may add
//! further fields.

use momangle::duality::{DualityReport, PdCertificate, Witness};
use momangle::homology::{AbelianGroup, GradedGroups};
use momangle::products::SIGN_CONVENTION;
use momangle::VertexSet;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "momangle/1";

pub fn integer(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

pub fn group(g: &AbelianGroup) -> Value {
    json!({ "rank": g.rank(), "torsion": g.torsion().iter().map(integer).collect::<Vec<_>>() })
}

pub fn graded(groups: &GradedGroups) -> Value {
    let map: Map<String, Value> = groups
        .iter()
        .map(|(d, g)| (d.to_string(), group(g)))
        .collect();
    Value::Object(map)
}

pub fn vertex_set(s: VertexSet) -> Value {
    Value::from(s.to_vec())
}

pub fn witness(w: &Witness) -> Value {
    match w {
        Witness::Subset {
            subset,
            degree,
            lhs,
            rhs,
        } => json!({
            "kind": "subset",
            "subset": vertex_set(*subset),
            "degree": degree,
            "cohomology": group(lhs),
            "dual_homology": group(rhs),
        }),
        Witness::Face {
            face,
            homology,
            expected,
        } => json!({
            "kind": "link",
            "face": vertex_set(*face),
            "expected_sphere": expected,
            "homology": graded(homology),
        }),
        Witness::Degree {
            degree,
            cohomology,
            homology,
        } => json!({
            "kind": "cap",
            "degree": degree,
            "cohomology": group(cohomology),
            "homology": group(homology),
        }),
    }
}

/// A report under construction.
#[derive(Debug, Clone)]
pub struct Report {
    pub check: String,
    pub input: String,
    pub params: Map<String, Value>,
    pub verdict: String,
    pub witnesses: Vec<Value>,
    pub groups: GradedGroups,
    pub extra: Map<String, Value>,
}

impl Report {
    pub fn new(check: &str, input: &str) -> Self {
        Report {
            check: check.into(),
            input: input.into(),
            params: Map::new(),
            verdict: "pass".into(),
            witnesses: Vec::new(),
            groups: GradedGroups::new(),
            extra: Map::new(),
        }
    }

    pub fn error(check: &str, input: &str, message: &str) -> Self {
        let mut r = Report::new(check, input);
        r.verdict = "error".into();
        r.extra.insert("error".into(), Value::from(message));
        r
    }

    pub fn to_json(&self) -> Value {
        let mut doc = Map::new();
        doc.insert("schema".into(), Value::from(SCHEMA));
        doc.insert("check".into(), Value::from(self.check.clone()));
        doc.insert("input".into(), Value::from(self.input.clone()));
        doc.insert("params".into(), Value::Object(self.params.clone()));
        doc.insert("verdict".into(), Value::from(self.verdict.clone()));
        doc.insert("witnesses".into(), Value::Array(self.witnesses.clone()));
        doc.insert("groups".into(), graded(&self.groups));
        doc.insert("signs_convention".into(), Value::from(SIGN_CONVENTION));
        for (k, v) in &self.extra {
            doc.insert(k.clone(), v.clone());
        }
        Value::Object(doc)
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

/// The check-specific part of a duality report, without the envelope.
pub fn duality_body(r: &DualityReport) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert("check".into(), Value::from(r.check.as_str()));
    out.insert("verdict".into(), Value::from(r.verdict.as_str()));
    out.insert(
        "params".into(),
        r.params
            .iter()
            .map(|(k, v)| (k.to_string(), Value::from(*v)))
            .collect(),
    );
    out.insert(
        "witnesses".into(),
        r.witnesses.iter().map(witness).collect(),
    );
    if let Some(core) = &r.core {
        out.insert(
            "core_facets".into(),
            core.facets().into_iter().map(vertex_set).collect(),
        );
    }
    if let Some(mnf) = &r.minimal_non_faces {
        out.insert(
            "minimal_non_faces".into(),
            mnf.iter().map(|s| vertex_set(*s)).collect(),
        );
    }
    if !r.notes.is_empty() {
        out.insert(
            "notes".into(),
            r.notes.iter().map(|n| Value::from(n.as_str())).collect(),
        );
    }
    out
}

pub fn pd_body(c: &PdCertificate) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert("check".into(), Value::from("pd"));
    out.insert("verdict".into(), Value::from(c.verdict.as_str()));
    out.insert(
        "params".into(),
        json!({ "top_degree": c.top_degree, "inferred_dimension": c.inferred_dimension }),
    );
    out.insert(
        "witnesses".into(),
        c.witnesses().iter().map(witness).collect(),
    );
    if let Some(mu) = &c.fundamental_class {
        let terms: Vec<Value> = mu
            .representative
            .terms()
            .map(|(cell, x)| json!({ "cell": cell.to_string(), "coefficient": integer(x) }))
            .collect();
        out.insert(
            "fundamental_class".into(),
            json!({ "degree": mu.degree, "terms": terms }),
        );
    }
    out.insert(
        "failing_degrees".into(),
        Value::from(c.failing_degrees.clone()),
    );
    out.insert(
        "degrees".into(),
        c.degrees
            .iter()
            .map(|d| {
                json!({
                    "degree": d.degree,
                    "cohomology": group(&d.cohomology),
                    "homology": group(&d.homology),
                    "isomorphism": d.isomorphism,
                })
            })
            .collect(),
    );
    if !c.notes.is_empty() {
        out.insert(
            "notes".into(),
            c.notes.iter().map(|n| Value::from(n.as_str())).collect(),
        );
    }
    out
}
