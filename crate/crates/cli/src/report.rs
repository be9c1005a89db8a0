//! Run reports: one JSON document per invocation on standard output,
//! carrying the echoed command, input digests, and the payload. Reports are
//! byte-reproducible unless wall-clock timing is explicitly requested.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use schreier::Error;

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Value,
    pub seed: u64,
    pub input_digests: BTreeMap<String, String>,
    pub payload: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
    pub version: &'static str,
}

impl RunReport {
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization is total");
        s.push('\n');
        s
    }
}

pub fn file_digest(path: &Path) -> std::io::Result<String> {
    let bytes = std::fs::read(path)?;
    let digest = Sha256::digest(&bytes);
    Ok(format!("sha256:{}", hex_string(&digest)))
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Maps error kinds onto the documented exit codes: validation problems 2,
/// exhausted budgets 3, boundary truncation 4.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. }
        | Error::CensusBudgetExceeded { .. }
        | Error::ResampleCapExceeded { .. }
        | Error::CapExceeded(_) => 3,
        Error::BoundaryTruncation { .. } => 4,
        _ => 2,
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::InvalidGraph(_) => "invalid_graph",
        Error::InvalidInput(_) => "invalid_input",
        Error::IncomparableSpaces(_) => "incomparable_spaces",
        Error::MalformedDocument(_) => "malformed_document",
        Error::UnsupportedFamily(_) => "unsupported_family",
        Error::BudgetExceeded { .. } => "budget_exceeded",
        Error::CensusBudgetExceeded { .. } => "census_budget_exceeded",
        Error::ResampleCapExceeded { .. } => "resample_cap_exceeded",
        Error::CapExceeded(_) => "cap_exceeded",
        Error::BoundaryTruncation { .. } => "boundary_truncation",
        Error::IncompleteOrDisconnected(_) => "incomplete_or_disconnected",
        Error::TrivialAutomorphism => "trivial_automorphism",
        Error::NotAnAutomorphism(_) => "not_an_automorphism",
        Error::RadiusMismatch(_, _) => "radius_mismatch",
        Error::Io { .. } => "io",
    }
}

pub fn error_payload(err: &Error) -> Value {
    let mut detail = serde_json::Map::new();
    detail.insert("kind".into(), error_kind(err).into());
    detail.insert("message".into(), err.to_string().into());
    match err {
        Error::InvalidGraph(violations) => {
            let list: Vec<Value> = violations.iter().map(|v| v.to_string().into()).collect();
            detail.insert("violations".into(), list.into());
        }
        Error::ResampleCapExceeded {
            resamples,
            alphabet_size,
            last_witness,
        } => {
            detail.insert("resamples".into(), (*resamples).into());
            detail.insert("alphabet_size".into(), (*alphabet_size).into());
            detail.insert(
                "last_witness".into(),
                last_witness.vertices().to_vec().into(),
            );
        }
        Error::BudgetExceeded {
            expansions,
            completed_half,
        } => {
            detail.insert("expansions".into(), (*expansions).into());
            detail.insert("completed_half".into(), (*completed_half).into());
        }
        Error::CensusBudgetExceeded { unresolved_roots } => {
            detail.insert("unresolved_roots".into(), unresolved_roots.clone().into());
        }
        _ => {}
    }
    Value::Object(serde_json::Map::from_iter([(
        "error".to_string(),
        Value::Object(detail),
    )]))
}
