use std::fmt;

use serde::{Deserialize, Serialize};

use crate::structures::Instance;

/// A recorded theorem violation together with the instance that triggers it.
///
/// `instance` is in the canonical text format, so feeding it back to the
/// parser reproduces the failing input exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub check: String,
    pub detail: String,
    pub instance: String,
}

impl Finding {
    pub fn new(check: impl Into<String>, detail: impl Into<String>, instance: &Instance) -> Self {
        Finding { check: check.into(), detail: detail.into(), instance: instance.to_text() }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.check, self.detail)
    }
}
