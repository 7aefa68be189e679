use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    Infeasible,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
            Status::Infeasible => "infeasible",
        }
    }
}

/// Result of one check on one instance. `Fail` always carries a witness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub detail: BTreeMap<String, Value>,
}

impl Outcome {
    pub fn pass() -> Self {
        Self { status: Status::Pass, witness: None, detail: BTreeMap::new() }
    }

    pub fn fail(witness: Value) -> Self {
        Self { status: Status::Fail, witness: Some(witness), detail: BTreeMap::new() }
    }

    pub fn not_applicable(reason: &str) -> Self {
        Self::pass().with_status(Status::NotApplicable).with("reason", reason)
    }

    pub fn infeasible(reason: &str) -> Self {
        Self::pass().with_status(Status::Infeasible).with("reason", reason)
    }

    /// Pass if `ok`, otherwise fail with the lazily built witness.
    pub fn check(ok: bool, witness: impl FnOnce() -> Value) -> Self {
        if ok {
            Self::pass()
        } else {
            Self::fail(witness())
        }
    }

    pub fn with_status(mut self, status: Status) -> Self {
        self.status = status;
        self
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.detail.insert(key.to_string(), value.into());
        self
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}
