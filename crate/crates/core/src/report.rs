//! Verdicts shared by the comparison routines and the command-line report.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Match,
    Mismatch,
    Skipped,
    #[serde(rename = "within-CI")]
    WithinCi,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Match
        } else {
            Verdict::Mismatch
        }
    }

    pub fn is_failure(self) -> bool {
        self == Verdict::Mismatch
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Match => "match",
            Verdict::Mismatch => "mismatch",
            Verdict::Skipped => "skipped",
            Verdict::WithinCi => "within-CI",
        })
    }
}
