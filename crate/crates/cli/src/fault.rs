//! CLI error type: one machine-parsable line on stderr, one exit code.
//!
//! Every failure prints exactly `error[<code>]: <message>` (single line) so
//! scripts can dispatch on the bracketed code. Exit codes follow the usual
//! convention: 2 for usage/configuration problems, 1 for checks that ran
//! and failed (threshold exceeded, suite failure, blow-up).

use std::fmt;

use geoflow_core::Error as CoreError;

/// A diagnosed failure carrying its exit code and stable error code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fault {
    /// Stable kebab-case code, e.g. `unknown-equation`.
    pub code: &'static str,
    /// Process exit status: 2 = usage, 1 = failed check.
    pub exit: i32,
    pub message: String,
}

impl Fault {
    /// Usage or configuration problem (exit 2).
    pub fn usage(code: &'static str, message: impl Into<String>) -> Self {
        Fault {
            code,
            exit: 2,
            message: message.into(),
        }
    }

    /// A check that ran and failed (exit 1).
    pub fn failure(code: &'static str, message: impl Into<String>) -> Self {
        Fault {
            code,
            exit: 1,
            message: message.into(),
        }
    }

    /// The single stderr line: `error[<code>]: <message>`.
    pub fn stderr_line(&self) -> String {
        // Guarantee the single-line contract even if a message embeds
        // newlines (e.g. multi-line parser context).
        let flat = self.message.replace('\n', " ");
        format!("error[{}]: {}", self.code, flat)
    }
}

impl fmt::Display for Fault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.stderr_line())
    }
}

impl std::error::Error for Fault {}

impl From<CoreError> for Fault {
    fn from(e: CoreError) -> Self {
        let code = match &e {
            CoreError::InvalidGrid { .. } => "invalid-grid",
            CoreError::GridMismatch { .. } | CoreError::ValueCount { .. } => "grid-mismatch",
            CoreError::DegenerateMetric | CoreError::NotSolvable { .. } => "metric",
            CoreError::NonMonotoneLift { .. }
            | CoreError::InvalidLift
            | CoreError::NearSingularJacobian { .. } => "diffeo",
            CoreError::InvalidOptions(_) => "invalid-option",
            CoreError::TimeNotStored { .. } | CoreError::ResidualStencil { .. } => "trajectory",
            CoreError::BlowUp { .. } => "blow-up",
            CoreError::HopfNotSupported => "hopf-excluded",
            CoreError::GridIncompatible { .. } => "grid-incompatible",
            CoreError::UnknownEquation(_) => "unknown-equation",
            CoreError::UnknownGenerator { .. } => "unknown-generator",
            CoreError::NegativeSourceTime => "negative-source-time",
            CoreError::NotAPointField { .. }
            | CoreError::NotSolvableForLeading { .. }
            | CoreError::NoLeadingCandidate => "pde-form",
            CoreError::DependentGenerators { .. } => "dependent-generators",
            CoreError::Parse { .. } => "parse-error",
        };
        // Blow-up means a run was attempted and failed; everything else a
        // request the tool could not act on.
        match &e {
            CoreError::BlowUp { .. } => Fault::failure(code, e.to_string()),
            _ => Fault::usage(code, e.to_string()),
        }
    }
}

impl From<std::io::Error> for Fault {
    fn from(e: std::io::Error) -> Self {
        Fault::failure("io", e.to_string())
    }
}

impl From<csv::Error> for Fault {
    fn from(e: csv::Error) -> Self {
        Fault::failure("io", e.to_string())
    }
}

impl From<serde_json::Error> for Fault {
    fn from(e: serde_json::Error) -> Self {
        Fault::failure("io", e.to_string())
    }
}
