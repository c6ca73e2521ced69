//! Machine-readable command reports and the exit-code contract.

use serde::Serialize;

use crate::search::Budget;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Verified,
    Refuted,
    Unknown,
}

impl Verdict {
    /// 0 verified, 1 refuted, 2 unknown.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Verified => 0,
            Verdict::Refuted => 1,
            Verdict::Unknown => 2,
        }
    }
}

/// Exit code for malformed arguments and I/O failures.
pub const USAGE_EXIT_CODE: i32 = 3;

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    /// Library operation that produced the verdict.
    pub operation: String,
    pub inputs: Vec<InputDigest>,
    pub verdict: Verdict,
    pub budget: Option<Budget>,
    pub details: serde_json::Value,
    /// Wall-clock time; the only field that varies between identical runs.
    pub elapsed_ms: u128,
}
