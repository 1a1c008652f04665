//! Deterministic JSON views of the analysis results.
//!
//! All maps are built through `serde_json::Value`, whose object type keeps
//! keys sorted, so reports are byte-stable across runs. Rationals print in
//! lowest terms.

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::classify::{ClassifyResult, ESet, EquivClass, Signature};
use crate::cone::ToricData;
use crate::prim::{
    pattern_labels, AnnReport, C1Verdict, C2Verdict, PrimResult, SignPattern,
    SimplicityReason, SimplicityVerdict,
};
use crate::rat::{format_int_vec, format_rat, format_rat_vec, Rat};
use crate::semigroup::{
    HoleComponent, MembershipCertificate, ObstructionKind, S2Verdict, Scoredness,
    VarietyComponent,
};

pub const CERT_EXACT: &str = "exact";
pub const CERT_WINDOW: &str = "window";

pub fn int_vec(v: &[BigInt]) -> Value {
    json!(format_int_vec(v))
}

pub fn rat_vec(v: &[Rat]) -> Value {
    json!(format_rat_vec(v))
}

pub fn facet_json(t: &ToricData, fid: usize) -> Value {
    let f = &t.facets[fid];
    let normal: Vec<String> = f.normal.iter().map(|x| x.to_string()).collect();
    let columns: Vec<usize> = f.column_set.iter().map(|j| j + 1).collect();
    json!({
        "label": t.faces[f.face_id].label,
        "normal": normal,
        "support_function": support_function_string(&f.normal),
        "columns": columns,
    })
}

/// Render a normal vector as a linear form in s_1..s_d.
pub fn support_function_string(normal: &[BigInt]) -> String {
    use num_traits::{Signed, Zero};
    let mut parts = String::new();
    for (i, c) in normal.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let var = format!("s{}", i + 1);
        if parts.is_empty() {
            if *c == BigInt::from(1) {
                parts = var;
            } else if *c == BigInt::from(-1) {
                parts = format!("-{var}");
            } else {
                parts = format!("{c}{var}");
            }
        } else if c.is_positive() {
            if *c == BigInt::from(1) {
                parts = format!("{parts}+{var}");
            } else {
                parts = format!("{parts}+{c}{var}");
            }
        } else if *c == BigInt::from(-1) {
            parts = format!("{parts}-{var}");
        } else {
            parts = format!("{parts}{c}{var}");
        }
    }
    if parts.is_empty() {
        parts = "0".to_string();
    }
    parts
}

pub fn face_json(t: &ToricData, face_id: usize) -> Value {
    let f = &t.faces[face_id];
    let columns: Vec<usize> = f.columns.iter().map(|j| j + 1).collect();
    let facets: Vec<String> = f
        .containing_facets
        .iter()
        .map(|&s| t.faces[t.facets[s].face_id].label.clone())
        .collect();
    json!({
        "label": f.label,
        "columns": columns,
        "dim": f.dim,
        "containing_facets": facets,
    })
}

pub fn toric_json(t: &ToricData) -> Value {
    let facets: Vec<Value> = t.facets.iter().map(|f| facet_json(t, f.id)).collect();
    let faces: Vec<Value> = t.faces.iter().map(|f| face_json(t, f.id)).collect();
    let relations: Vec<Vec<String>> = t
        .linear_relations()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect();
    json!({
        "dim": t.dim(),
        "ncols": t.ncols(),
        "pointed": t.pointed,
        "simplicial": t.simplicial,
        "facets": facets,
        "faces": faces,
        "facet_relations": relations,
    })
}

pub fn membership_json(t: &ToricData, b: &[BigInt], cert: &MembershipCertificate) -> Value {
    let obstruction = match &cert.obstruction {
        None => {
            if cert.verdict {
                Value::Null
            } else {
                json!("no representation")
            }
        }
        Some(ob) => {
            let kind = match ob.kind {
                ObstructionKind::NegativeValue => "negative value",
                ObstructionKind::GapValue => "gap value",
            };
            json!({
                "facet": t.faces[t.facets[ob.facet].face_id].label,
                "value": ob.value.to_string(),
                "kind": kind,
            })
        }
    };
    json!({
        "point": format_int_vec(b),
        "member": cert.verdict,
        "witness": cert.witness.as_ref().map(|u| {
            u.iter().map(|x| x.to_string()).collect::<Vec<_>>()
        }),
        "obstruction": obstruction,
        "certification": CERT_EXACT,
    })
}

pub fn eset_json(t: &ToricData, e: &ESet) -> Value {
    let members: Vec<String> = e.members.iter().map(|m| format_rat_vec(m)).collect();
    json!({
        "face": t.faces[e.face].label,
        "defined": e.defined,
        "capacity": e.capacity.to_string(),
        "members": members,
        "full": e.is_full(),
        "certification": CERT_EXACT,
    })
}

pub fn signature_json(t: &ToricData, sig: &Signature) -> Value {
    let entries: Vec<Value> = sig.esets.iter().map(|e| eset_json(t, e)).collect();
    json!(entries)
}

pub fn class_json(t: &ToricData, c: &EquivClass) -> Value {
    let members: Vec<String> = c
        .members_in_window
        .iter()
        .map(|m| format_rat_vec(m))
        .collect();
    let observed: Vec<Value> = c
        .observed
        .iter()
        .map(|(fid, min, max)| {
            json!({
                "facet": t.faces[t.facets[*fid].face_id].label,
                "min": format_rat(min),
                "max": format_rat(max),
            })
        })
        .collect();
    json!({
        "representative": format_rat_vec(&c.representative),
        "extreme": c.extreme,
        "members_in_window": members,
        "signature": signature_json(t, &c.signature),
        "observed_facet_values": observed,
    })
}

pub fn classify_json(t: &ToricData, r: &ClassifyResult) -> Value {
    let classes: Vec<Value> = r.classes.iter().map(|c| class_json(t, c)).collect();
    json!({
        "classes": classes,
        "count": r.classes.len(),
        "window": r.window_bound.to_string(),
        "stabilized": r.stabilized,
        "certification": CERT_WINDOW,
    })
}

pub fn component_json(t: &ToricData, c: &VarietyComponent) -> Value {
    match c {
        VarietyComponent::Slab { facet, value } => json!({
            "kind": "slab",
            "facet": t.faces[t.facets[*facet].face_id].label,
            "value": value.to_string(),
            "dim": t.dim() - 1,
        }),
        VarietyComponent::Translate {
            base,
            directions,
            dim,
        } => {
            let dirs: Vec<String> = directions.iter().map(|d| format_int_vec(d)).collect();
            json!({
                "kind": "translate",
                "base": format_rat_vec(base),
                "directions": dirs,
                "dim": dim,
            })
        }
    }
}

pub fn hole_component_json(t: &ToricData, c: &HoleComponent) -> Value {
    let periods: Vec<String> = c.certified_periods.iter().map(|p| format_int_vec(p)).collect();
    let members: Vec<String> = c.members_in_window.iter().map(|m| format_int_vec(m)).collect();
    json!({
        "base": format_int_vec(&c.base),
        "face": t.faces[c.face].label,
        "certified_periods": periods,
        "members_in_window": members,
        "window": c.window_bound.to_string(),
    })
}

pub fn scored_json(s: &Scoredness) -> Value {
    match s {
        Scoredness::NotScored { witness } => json!({
            "scored": false,
            "witness": format_int_vec(witness),
            "certification": CERT_EXACT,
        }),
        Scoredness::ScoredOnWindow { bound } => json!({
            "scored": "window",
            "window": bound.to_string(),
            "certification": CERT_WINDOW,
        }),
    }
}

pub fn s2_json(t: &ToricData, s: &S2Verdict) -> Value {
    match s {
        S2Verdict::FailsS2 { witness } => json!({
            "s2": false,
            "witness_component": hole_component_json(t, witness),
            "certification": CERT_EXACT,
        }),
        S2Verdict::S2OnWindow { bound } => json!({
            "s2": "window",
            "window": bound.to_string(),
            "certification": CERT_WINDOW,
        }),
    }
}

pub fn ann_json(t: &ToricData, r: &AnnReport) -> Value {
    let comps: Vec<Value> = r.components.iter().map(|c| component_json(t, c)).collect();
    json!({
        "degree": format_int_vec(&r.degree),
        "zero": r.zero,
        "components": comps,
        "window": r.window_bound.to_string(),
        "certification": if r.zero { CERT_EXACT } else { CERT_WINDOW },
    })
}

pub fn pattern_json(t: &ToricData, p: &SignPattern) -> Value {
    let (plus, minus) = pattern_labels(t, p);
    json!({ "plus": plus, "minus": minus })
}

pub fn c2_json(t: &ToricData, v: &C2Verdict) -> Value {
    match v {
        C2Verdict::Holds { unrealized } => {
            let ur: Vec<Value> = unrealized.iter().map(|p| pattern_json(t, p)).collect();
            json!({
                "c2": "holds",
                "unrealized_within_bound": ur,
                "certification": if unrealized.is_empty() { CERT_EXACT } else { CERT_WINDOW },
            })
        }
        C2Verdict::Fails { pattern, witness } => json!({
            "c2": "fails",
            "pattern": pattern_json(t, pattern),
            "witness": format_rat_vec(witness),
            "certification": CERT_EXACT,
        }),
    }
}

pub fn c1_json(v: &C1Verdict) -> Value {
    match v {
        C1Verdict::AllExtremeOnWindow { bound } => json!({
            "c1": "all extreme on window",
            "window": bound.to_string(),
            "certification": CERT_WINDOW,
        }),
        C1Verdict::Counterexample { alpha } => json!({
            "c1": "fails",
            "counterexample": format_rat_vec(alpha),
            "certification": CERT_EXACT,
        }),
    }
}

pub fn prim_json(t: &ToricData, r: &PrimResult) -> Value {
    let entries: Vec<Value> = r
        .entries
        .iter()
        .map(|e| {
            let stratum: Vec<String> = e
                .stratum
                .iter()
                .map(|&fid| t.faces[t.facets[fid].face_id].label.clone())
                .collect();
            json!({
                "representative": format_rat_vec(&e.representative),
                "stratum": stratum,
                "extreme": e.extreme,
                "zero_ideal": e.ann_zero,
                "window_merged": e.window_merged,
                "class_count": e.class_count,
            })
        })
        .collect();
    json!({
        "entries": entries,
        "count": r.entries.len(),
        "window": r.window_bound.to_string(),
        "stabilized": r.stabilized,
        "certification": CERT_WINDOW,
    })
}

pub fn simple_json(t: &ToricData, v: &SimplicityVerdict) -> Value {
    match v {
        SimplicityVerdict::SimpleOnWindow {
            bound,
            c2_unrealized,
        } => {
            let ur: Vec<Value> = c2_unrealized.iter().map(|p| pattern_json(t, p)).collect();
            json!({
                "simple": "window",
                "window": bound.to_string(),
                "c2_unrealized": ur,
                "certification": CERT_WINDOW,
            })
        }
        SimplicityVerdict::NotSimple { reason } => match reason {
            SimplicityReason::NotScored { witness } => json!({
                "simple": false,
                "reason": "not scored",
                "witness": format_int_vec(witness),
                "certification": CERT_EXACT,
            }),
            SimplicityReason::C2Fails { pattern, witness } => json!({
                "simple": false,
                "reason": "c2 fails",
                "pattern": pattern_json(t, pattern),
                "witness": format_rat_vec(witness),
                "certification": CERT_EXACT,
            }),
        },
    }
}

/// Whether any verdict in the report tree is only window-certified.
pub fn has_window_certification(v: &Value) -> bool {
    match v {
        Value::Object(map) => {
            if map.get("certification").and_then(|c| c.as_str()) == Some(CERT_WINDOW) {
                return true;
            }
            map.values().any(has_window_certification)
        }
        Value::Array(items) => items.iter().any(has_window_certification),
        _ => false,
    }
}

/// Plain-text rendering: stable indented key/value lines.
pub fn render_text(v: &Value) -> String {
    let mut out = String::new();
    render_rec(v, 0, &mut out);
    out
}

fn render_rec(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_rec(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(val))),
                }
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(&format!("{pad}(none)\n"));
            }
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_rec(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar(item))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "null".to_string(),
        other => other.to_string(),
    }
}
