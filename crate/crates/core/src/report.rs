use serde::{Deserialize, Serialize};

/// Outcome of a dual-pipeline comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    /// Number of scalar comparisons performed.
    pub checked: usize,
    pub mismatch: Option<Mismatch>,
}

/// First disagreement found; values are exact `p/q` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub n: usize,
    pub m: Option<usize>,
    pub x: Option<String>,
    pub expected: String,
    pub actual: String,
}

impl CheckReport {
    pub(crate) fn new(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            passed: true,
            checked: 0,
            mismatch: None,
        }
    }

    /// Counts one comparison; records it as the mismatch if it is the first
    /// failure. Returns whether the values agreed.
    pub(crate) fn compare<T: PartialEq + ToString>(
        &mut self,
        n: usize,
        m: Option<usize>,
        x: Option<&dyn ToString>,
        expected: &T,
        actual: &T,
    ) -> bool {
        self.checked += 1;
        if expected == actual {
            return true;
        }
        if self.passed {
            self.passed = false;
            self.mismatch = Some(Mismatch {
                n,
                m,
                x: x.map(|x| x.to_string()),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
        false
    }
}
