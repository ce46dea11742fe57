//! JSON encodings of algebra elements and oracle reports.

use heckext::ext_iwahori::{CenterLabel, ExtElt};
use heckext::ext_spherical::SphericalExtElt;
use heckext::hecke::{HeckeElt, Level};
use heckext_oracle::frattini::OracleReport;
use serde_json::{json, Value};

pub fn hecke_tag(level: Level) -> &'static str {
    match level {
        Level::I => "H",
        Level::J => "H_J",
        Level::K => "H_K",
    }
}

/// {"algebra", "terms": [{"w", "c"}]}; the pro-p algebra keys carry their torus part.
pub fn hecke_json(a: &HeckeElt) -> Value {
    let f = a.field();
    let terms: Vec<Value> = a
        .terms()
        .map(|(k, c)| {
            let w = if a.level() == Level::I { k.to_string() } else { k.base().to_string() };
            json!({ "w": w, "c": f.signed(c) })
        })
        .collect();
    json!({ "algebra": hecke_tag(a.level()), "terms": terms })
}

/// The hecke schema extended by "deg" and the basis kind.
pub fn ext_json(a: &ExtElt) -> Value {
    let f = a.field();
    let terms: Vec<Value> = a
        .terms()
        .map(|(k, c)| json!({ "kind": k.kind.name(), "w": k.w.to_string(), "deg": k.degree(), "c": f.signed(c) }))
        .collect();
    json!({ "algebra": "E_J", "terms": terms })
}

/// Kind and index of an E_K* basis label.
pub fn ek_kind(l: CenterLabel) -> (&'static str, u64) {
    match l {
        CenterLabel::Zeta(m) => ("T", m as u64),
        CenterLabel::Odd(m) => ("uT", m as u64),
        CenterLabel::BetaPair(n) => ("B", n),
        CenterLabel::Phi1 => ("Phi1", 0),
        CenterLabel::PsiPair(n) => ("Psi", n),
        CenterLabel::PsiS0 => ("ker_psi_s0", 0),
        CenterLabel::BetaS0 => ("ker_beta_s0", 0),
    }
}

pub fn spherical_json(a: &SphericalExtElt) -> Value {
    let f = a.field();
    let terms: Vec<Value> = a
        .coords()
        .iter()
        .map(|(&l, &c)| {
            let (kind, n) = ek_kind(l);
            json!({ "kind": kind, "w": n, "deg": l.degree(), "c": f.signed(c) })
        })
        .collect();
    json!({ "algebra": "spherical_ext", "terms": terms })
}

pub fn oracle_json(r: &OracleReport) -> Value {
    json!({
        "group": r.group,
        "p": r.p,
        "f": r.f,
        "m": r.m,
        "order": r.order,
        "frattini_invariants": r.frattini_invariants,
        "compared_m": r.compared_m,
        "stable": r.stable,
    })
}

/// Quotes a CSV field when needed.
pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
