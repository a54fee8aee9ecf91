//! Pass/fail reports with a witness for the first mismatching exponent.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum VerifyStatus {
    Pass,
    Fail { exponent: usize, lhs: String, rhs: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub id: String,
    pub bound: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub modulus: Option<u64>,
    pub status: VerifyStatus,
}

impl VerifyReport {
    pub fn pass(id: impl Into<String>, bound: usize, modulus: Option<u64>) -> Self {
        VerifyReport { id: id.into(), bound, modulus, status: VerifyStatus::Pass }
    }

    pub fn fail(
        id: impl Into<String>,
        bound: usize,
        modulus: Option<u64>,
        exponent: usize,
        lhs: impl ToString,
        rhs: impl ToString,
    ) -> Self {
        VerifyReport {
            id: id.into(),
            bound,
            modulus,
            status: VerifyStatus::Fail {
                exponent,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.status == VerifyStatus::Pass
    }

    /// One human-readable line: id, bound, and outcome.
    pub fn line(&self) -> String {
        match &self.status {
            VerifyStatus::Pass => format!("PASS {} (N={})", self.id, self.bound),
            VerifyStatus::Fail { exponent, lhs, rhs } => format!(
                "FAIL {} (N={}) at q^{}: lhs={} rhs={}",
                self.id, self.bound, exponent, lhs, rhs
            ),
        }
    }
}
