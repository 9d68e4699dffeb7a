use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

/// Everything one invocation produced. The JSON form echoes the parsed
/// inputs so a report can be re-run; `text` is the human rendering.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub command: &'static str,
    pub seed: u64,
    pub inputs: Value,
    pub outputs: Value,
    pub checks: Vec<CheckLine>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    pub fn new(command: &'static str, seed: u64, inputs: Value, outputs: Value, text: String) -> Self {
        Report { command, seed, inputs, outputs, checks: Vec::new(), passed: true, timing_ms: None, text }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.checks.push(CheckLine { name: name.into(), passed, detail: detail.into() });
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
