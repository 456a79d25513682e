//! File formats, reports and subcommands for the `crislat` binary.

pub mod commands;
pub mod report;
pub mod spec_file;

use serde::Serialize;

/// Exit status for a run whose checks failed or whose computation hit an
/// invariant violation.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit status for unusable input.
pub const EXIT_BAD_INPUT: i32 = 2;

/// What goes to stderr when a run does not succeed.
#[derive(Debug, Serialize)]
pub struct Diagnostic {
    pub status: &'static str,
    pub kind: String,
    pub violated: Vec<String>,
    pub message: String,
}

/// Classifies an error: failures of the mathematics exit with
/// [`EXIT_CHECK_FAILED`], everything else with [`EXIT_BAD_INPUT`].
pub fn diagnose(e: &anyhow::Error) -> (i32, Diagnostic) {
    use crislat_core::Error as E;
    let core = e.chain().find_map(|c| c.downcast_ref::<E>());
    let kind = match core {
        Some(c) => {
            let dbg = format!("{c:?}");
            dbg.split(|ch: char| !ch.is_alphanumeric()).next().unwrap_or("Error").to_string()
        }
        None => "InvalidInput".to_string(),
    };
    let invariant = matches!(
        core,
        Some(
            E::RankMismatch { .. }
                | E::PrecisionExhausted { .. }
                | E::NonIntegralCoefficient { .. }
                | E::InexactDivision
        )
    );
    let code = if invariant { EXIT_CHECK_FAILED } else { EXIT_BAD_INPUT };
    let message = e.chain().map(|c| c.to_string()).collect::<Vec<_>>().join(": ");
    let violated = if invariant { vec![kind.clone()] } else { Vec::new() };
    (code, Diagnostic { status: "error", kind, violated, message })
}
