//! JSON rendering of results.
//!
//! Interval endpoints are written as hexadecimal floats so that they parse
//! back bit-exactly; a compact decimal rendering is added for reading.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::interval::{compact_decimal, format_hex, parse_hex, HexParseError};
use crate::maps::MapDescriptor;
use crate::rotation::{width_diagnostic, RationalProof, RotationResult};
use crate::shooting::PeriodicCertificate;
use crate::Interval;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalJson {
    pub lo: String,
    pub hi: String,
    pub decimal: String,
}

impl From<Interval> for IntervalJson {
    fn from(x: Interval) -> Self {
        IntervalJson {
            lo: format_hex(x.lo()),
            hi: format_hex(x.hi()),
            decimal: compact_decimal(x),
        }
    }
}

impl IntervalJson {
    pub fn to_interval(&self) -> Result<Interval, HexParseError> {
        let lo = parse_hex(&self.lo)?;
        let hi = parse_hex(&self.hi)?;
        Interval::new(lo, hi).map_err(|_| HexParseError::Malformed(format!("[{}, {}]", self.lo, self.hi)))
    }
}

fn interval(x: Interval) -> Value {
    serde_json::to_value(IntervalJson::from(x)).expect("plain struct")
}

pub fn map_json(m: &MapDescriptor) -> Value {
    let params: serde_json::Map<String, Value> = m
        .params()
        .into_iter()
        .map(|(k, v)| (k.to_string(), interval(v)))
        .collect();
    json!({
        "kind": m.kind(),
        "dimension": m.dimension(),
        "params": params,
    })
}

pub fn certificate_json(cert: &PeriodicCertificate<1>) -> Value {
    let widest = cert.orbit.iter().map(|b| b[0].width()).fold(0.0, f64::max);
    let smallest = cert
        .orbit
        .iter()
        .map(|b| b[0])
        .min_by(|a, b| a.lo().total_cmp(&b.lo()))
        .expect("non-empty orbit");
    json!({
        "q": cert.q,
        "p": cert.p,
        "orbit_point": interval(smallest),
        "max_width": widest,
        "orbit": cert.orbit.iter().map(|b| interval(b[0])).collect::<Vec<_>>(),
    })
}

pub fn result_json(r: &RotationResult) -> Value {
    let rational = r.rational.as_ref().map(|rat| {
        let (kind, cert) = match &rat.proof {
            RationalProof::PeriodicOrbit(c) => ("periodic_orbit", Some(certificate_json(c))),
            RationalProof::ExactReturn { .. } => ("exact_return", None),
        };
        json!({ "p": rat.p, "q": rat.q, "proof": kind, "certificate": cert })
    });
    let cf = r.cf.as_ref().map(|cf| {
        let stages = cf.stages().unwrap_or_default();
        let widths = width_diagnostic(cf).unwrap_or_default();
        json!({
            "shift": cf.shift,
            "a": cf.a,
            "p": cf.p,
            "q": cf.q,
            "n": cf.n,
            "terminal": cf.terminal,
            "stages": stages.iter().map(|s| json!({
                "i": s.i,
                "a": s.a,
                "p": s.p,
                "q": s.q,
                "n": s.n,
                "b": interval(s.b),
                "enclosure": interval(s.enclosure),
            })).collect::<Vec<_>>(),
            "width_check": widths,
        })
    });
    json!({
        "map": map_json(&r.map),
        "method": r.method,
        "status": r.status,
        "conditional": r.conditional,
        "enclosure": interval(r.enclosure),
        "radius": r.radius(),
        "iterates": r.iterates,
        "rational": rational,
        "cf": cf,
        "note": r.note,
        "seconds": r.seconds,
    })
}
