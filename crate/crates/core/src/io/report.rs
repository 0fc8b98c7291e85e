use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "tops-kit/1";

/// What the toolkit does not decide. Every JSON report carries this list.
pub const LIMITATIONS: [&str; 6] = [
    "smoothness of the resolved ambient space is certified only from a unimodular triangulation of the whole top boundary; otherwise it is unknown",
    "nondegeneracy of the generic hypersurface is not checked",
    "semistability of the degeneration is assumed, not verified",
    "support topology is recognised from combinatorial certificates (connectivity, pseudomanifold checks, Euler characteristic), which do not prove homeomorphism type",
    "the rank-5 three-face case applies the two-face edge rules to the three-face",
    "the case-3(a) search tests a sufficient condition (star triangulation over an origin segment) and may miss other valid triangulations",
];

/// Wraps `data` in the versioned report envelope.
pub fn json_report<T: Serialize>(kind: &str, data: &T) -> serde_json::Result<Value> {
    Ok(json!({
        "schema": SCHEMA,
        "kind": kind,
        "limitations": LIMITATIONS,
        "data": serde_json::to_value(data)?,
    }))
}
