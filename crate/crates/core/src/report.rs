//! Machine-readable and human-readable reports for problem runs.
//!
//! The machine block has a stable schema and exact rationals rendered as
//! strings, so byte-identical inputs give byte-identical reports apart from
//! the timing field; the human block is derived from the same data.

use serde::Serialize;
use serde_json::{json, Value};

use crate::arveson::DegreeReport;
use crate::cycles::{Cycle, PrimeCandidate, PushforwardReport, SpectralPicture, WeylReport};
use crate::fpmodule::{FPModule, HsRecord, SerreRecord};
use crate::poly::format_point;
use crate::scalar::Scalar;
use crate::spectral::{OperatorModel, SpectrumDescription};

/// Indexing note attached to every report.
pub const CONVENTION_NOTE: &str = "homological indexing: H_0 is the cokernel stage and H_n the \
     joint kernel of an n-tuple; the cochain labelling used elsewhere writes H^k for H_{n-k}, \
     so alternating sums differ by the factor (-1)^n between the labellings; reported values \
     use the homological anchoring";

/// Result of one executed query.
#[derive(Clone, Debug, Serialize)]
pub struct QueryReport {
    pub name: String,
    pub inputs: String,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
}

/// A full run: model description, convention note, per-query results, and
/// wall-clock time (the only field allowed to vary between identical runs).
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub model: String,
    pub convention: String,
    pub queries: Vec<QueryReport>,
    pub timing_ms: u128,
}

impl Report {
    /// Serializes the machine block as pretty-printed JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// True when some verify verdict failed.
    pub fn has_failure(&self) -> bool {
        self.queries
            .iter()
            .any(|q| q.verdict.as_deref() == Some("fail"))
    }

    /// True when some query could not be executed.
    pub fn has_error(&self) -> bool {
        self.queries.iter().any(|q| q.result.get("error").is_some())
    }
}

/// One-line structural description of a model.
pub fn describe_model(model: &OperatorModel) -> String {
    let ring = format!("Q[{}]", model.ring().vars().join(", "));
    match model {
        OperatorModel::ModuleTuple { module } => {
            format!("module {} over {}", describe_module(module), ring)
        }
        OperatorModel::MatrixTuple { ops, .. } => {
            let d = ops.first().map(|m| m.rows()).unwrap_or(0);
            format!("{} commuting operators on Q^{}", ops.len(), d)
        }
        OperatorModel::ExplicitHomology { homology, .. } => {
            let stages: Vec<String> = homology.iter().map(describe_module).collect();
            format!("declared homology [{}] over {}", stages.join(", "), ring)
        }
    }
}

fn describe_module(m: &FPModule) -> String {
    if m.gens() == 0 {
        return "0".into();
    }
    if m.gens() == 1 {
        if m.relations().is_empty() {
            return "R".into();
        }
        let gens: Vec<String> = m
            .relations()
            .iter()
            .map(|rel| rel.comp(0).to_string())
            .collect();
        return format!("R/({})", gens.join(", "));
    }
    format!(
        "module with {} generators and {} relations",
        m.gens(),
        m.relations().len()
    )
}

/// A rational as an exact string: `p` or `p/q`.
pub fn scalar_value(s: &Scalar) -> Value {
    Value::String(s.to_string())
}

/// A point as a list of exact coordinate strings.
pub fn point_value(p: &[Scalar]) -> Value {
    Value::Array(p.iter().map(scalar_value).collect())
}

fn prime_value(p: &PrimeCandidate) -> Value {
    Value::Array(
        p.generators()
            .iter()
            .map(|g| Value::String(g.to_string()))
            .collect(),
    )
}

/// A cycle as a list of `{prime_generators, coefficient, dimension}` terms.
pub fn cycle_value(c: &Cycle) -> Value {
    Value::Array(
        c.terms
            .iter()
            .map(|t| {
                json!({
                    "prime_generators": prime_value(&t.prime),
                    "coefficient": t.coefficient,
                    "dimension": t.prime.dimension(),
                })
            })
            .collect(),
    )
}

/// A spectral picture: cycle terms with their certification and samples.
pub fn picture_value(p: &SpectralPicture) -> Value {
    Value::Array(
        p.terms
            .iter()
            .map(|t| {
                json!({
                    "prime_generators": prime_value(&t.prime),
                    "coefficient": t.coefficient,
                    "dimension": t.prime.dimension(),
                    "certified": t.prime.kind().to_string(),
                    "samples": t.samples.iter().map(|s| point_value(s)).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

/// A spectrum description: finite point list or support variety.
pub fn spectrum_value(s: &SpectrumDescription) -> Value {
    match s {
        SpectrumDescription::FinitePoints(points) => json!({
            "kind": "finite",
            "points": points
                .iter()
                .map(|(p, d)| json!({"point": point_value(p), "root_dim": d}))
                .collect::<Vec<_>>(),
        }),
        SpectrumDescription::Variety {
            annihilator,
            dimension,
            monomial_components,
        } => json!({
            "kind": "variety",
            "annihilator": annihilator.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            "dimension": dimension,
            "components": monomial_components.as_ref().map(|comps| {
                comps
                    .iter()
                    .map(|c| c.iter().map(|p| p.to_string()).collect::<Vec<_>>())
                    .collect::<Vec<_>>()
            }),
        }),
    }
}

/// A Hilbert–Samuel record with exact coefficients.
pub fn hs_value(r: &HsRecord) -> Value {
    json!({
        "values": r.values,
        "start": r.start,
        "degree": r.degree,
        "coefficients": r.coeffs.iter().map(scalar_value).collect::<Vec<_>>(),
        "normalized_leading": scalar_value(&r.normalized_leading),
    })
}

/// A Serre multiplicity record.
pub fn serre_value(r: &SerreRecord) -> Value {
    json!({
        "multiplicity": r.multiplicity,
        "homology_dims": r.homology_dims,
    })
}

/// A Weyl verdict with its witnesses.
pub fn weyl_value(w: &WeylReport) -> Value {
    json!({
        "on_spectrum": w.on_spectrum,
        "isolated": w.isolated,
        "is_weyl_point": w.is_weyl_point,
        "in_weyl_spectrum": w.in_weyl_spectrum,
        "witnesses": w
            .witnesses
            .iter()
            .map(|(p, l)| json!({"prime_generators": prime_value(p), "local_index": l}))
            .collect::<Vec<_>>(),
    })
}

/// A push-forward report: target cycle plus per-component provenance.
pub fn pushforward_value(r: &PushforwardReport) -> Value {
    json!({
        "target_ring": r.target.vars(),
        "cycle": cycle_value(&r.cycle),
        "terms": r
            .terms
            .iter()
            .map(|t| {
                json!({
                    "source": prime_value(&t.source),
                    "image": prime_value(&t.image),
                    "degree": t.degree,
                    "samples": t.samples.iter().map(|s| point_value(s)).collect::<Vec<_>>(),
                })
            })
            .collect::<Vec<_>>(),
    })
}

/// A graded degree report comparing rank growth with ideal-power growth.
pub fn degree_report_value(r: &DegreeReport) -> Value {
    json!({
        "rank_record": hs_value(&r.rank_record),
        "hs_record": hs_value(&r.hs_record),
        "degree": r.degree,
        "leading_terms_match": r.leading_terms_match,
        "degree_dominates_dimension": r.degree_dominates_dimension,
    })
}

/// Renders the human block from the machine data.
pub fn render_human(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!("model: {}\n", report.model));
    out.push_str(&format!("convention: {}\n", report.convention));
    for q in &report.queries {
        let head = if q.inputs.is_empty() {
            q.name.clone()
        } else {
            format!("{} {}", q.name, q.inputs)
        };
        match &q.verdict {
            Some(v) => out.push_str(&format!("{} -> {}\n", head, v.to_uppercase())),
            None => out.push_str(&format!("{}\n", head)),
        }
        let body = serde_json::to_string_pretty(&q.result).expect("value serialization");
        for line in body.lines() {
            out.push_str("  ");
            out.push_str(line);
            out.push('\n');
        }
    }
    out.push_str(&format!("timing_ms: {}\n", report.timing_ms));
    out
}

/// Echoes query inputs in the canonical file syntax (used for `inputs`).
pub fn inputs_for_point(p: &[Scalar]) -> String {
    format_point(p)
}
