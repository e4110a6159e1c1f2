//! Subcommand implementations. Each `run` returns the process exit
//! code; errors are printed to stderr.

pub mod bounds;
pub mod estimate;
pub mod norms;
pub mod sweep;
pub mod verify;

use bohr_core::Error;

/// Exit code for a library error: numeric failures map to 3,
/// everything else is a validation failure (2).
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::NonFinite(_) | Error::Bracketing(_) => 3,
        _ => 2,
    }
}

/// Prints the error and converts it to an exit code.
pub fn fail(err: &Error) -> i32 {
    eprintln!("error: {err}");
    exit_code_for(err)
}

/// Validation failure with a bespoke message.
pub fn usage(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    2
}

/// I/O failures while emitting output.
pub fn emit_failed(e: &std::io::Error) -> i32 {
    eprintln!("error: cannot write output: {e}");
    3
}
