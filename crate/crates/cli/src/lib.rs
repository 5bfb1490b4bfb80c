//! Command-line front end: JSON codecs for the core types, report
//! rendering and the subcommand implementations.

pub mod codec;
pub mod commands;
pub mod render;

pub use commands::{run, Cli};
pub use render::{render, Format, Report};

/// Exit code for a failed run: 3 for violated invariants, 2 otherwise.
pub fn exit_code(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<weilmono_core::Error>() {
        Some(e) if e.is_invariant() => 3,
        _ => 2,
    }
}

pub fn error_value(err: &anyhow::Error) -> serde_json::Value {
    let kind = if exit_code(err) == 3 { "invariant" } else { "validation" };
    serde_json::json!({"error": {"kind": kind, "message": format!("{err:#}")}})
}

/// `WEILMONO_VERBOSE`: unset or 0 prints the result alone, 1 or more the
/// full report.
pub fn verbosity() -> u8 {
    std::env::var("WEILMONO_VERBOSE").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(0)
}
