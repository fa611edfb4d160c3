use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const TOOL: &str = "schinzel";

/// Every report the tool writes has this shape.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope {
    pub tool: String,
    pub version: String,
    /// The command and the flags that affect the result.
    pub command: Value,
    pub ring: String,
    /// Canonical text of the inputs.
    pub inputs: Value,
    pub result: Value,
    pub verification: Verification,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub status: String,
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn from_checks(checks: Vec<Check>) -> Self {
        let ok = checks.iter().all(|c| c.pass);
        Verification {
            status: if ok { "pass" } else { "fail" }.into(),
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

impl Check {
    pub fn new(name: &str, pass: bool) -> Self {
        Check {
            name: name.into(),
            pass,
        }
    }
}

impl ReportEnvelope {
    pub fn new(command: Value, ring: String, inputs: Value, result: Value) -> Self {
        ReportEnvelope {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command,
            ring,
            inputs,
            result,
            verification: Verification {
                status: "pending".into(),
                checks: vec![],
            },
            timing_ms: None,
        }
    }

    pub fn command_name(&self) -> Option<&str> {
        self.command.get("name")?.as_str()
    }
}
