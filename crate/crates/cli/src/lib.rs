//! Command-line front end for `cover-growth`.

pub mod args;
pub mod commands;
pub mod report;

pub use args::{Cli, Format};
pub use commands::run;
pub use report::Report;

/// Exit status when the formula and the cover oracle disagree.
pub const EXIT_MISMATCH: u8 = 3;
/// Exit status for every other failure.
pub const EXIT_ERROR: u8 = 1;

pub fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<cover_growth::Error>() {
        Some(cover_growth::Error::OracleMismatch { .. }) => EXIT_MISMATCH,
        _ => EXIT_ERROR,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatch_has_its_own_exit_status() {
        let mismatch = cover_growth::Error::OracleMismatch {
            n: 2,
            formula: 3,
            oracle: 2,
            details: String::new(),
        };
        assert_eq!(exit_code(&mismatch.into()), EXIT_MISMATCH);
        assert_eq!(exit_code(&cover_growth::Error::ZeroMap.into()), EXIT_ERROR);
        assert_eq!(exit_code(&anyhow::anyhow!("io")), EXIT_ERROR);
    }
}
