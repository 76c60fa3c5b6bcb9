//! Command-line front end for `scx-core`: manifold specs, reports, the
//! comparison table and the verification suites.

pub mod compute;
pub mod oracle;
pub mod spec;
pub mod suites;
pub mod table;

use thiserror::Error;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const PARSE: i32 = 2;
    pub const NUMERICAL: i32 = 3;
    pub const VERIFICATION: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] spec::SpecError),
    #[error("line {line}: {source}")]
    SpecFile { line: usize, source: spec::SpecError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] scx_core::Error),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(scx_core::Error::NumericalFailure { .. }) => exit::NUMERICAL,
            CliError::Csv(_) | CliError::Json(_) => 1,
            _ => exit::PARSE,
        }
    }
}

/// Six significant digits, switching to exponent form outside `[1e-4, 1e6)`.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    // round first so 9.9999999 counts as two integer digits
    let x: f64 = format!("{x:.5e}").parse().expect("formatted float parses");
    let mag = x.abs().log10().floor() as i32;
    if !(-4..6).contains(&mag) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(39.47841760435743), "39.4784");
        assert_eq!(sig6(162.82586), "162.826");
        assert_eq!(sig6(0.001234567), "0.00123457");
        assert_eq!(sig6(-2.0), "-2.00000");
        assert_eq!(sig6(1.5e-7), "1.50000e-7");
        assert_eq!(sig6(0.0), "0");
        assert_eq!(sig6(9.999999925), "10.0000");
    }
}
