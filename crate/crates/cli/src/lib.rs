//! Front end of the normal-form engine: runs the analysis pipeline on
//! field descriptions, sweeps parameter grids, and renders reports as JSON
//! or text.

pub mod analyze;
pub mod error;
pub mod grid;
pub mod render;
pub mod report;

pub use analyze::{run_analysis, AnalyzeOptions, Task};
pub use error::CliError;
pub use report::AnalysisReport;

use pdnf_core::matalg::RatMatrix;
use pdnf_core::scalar::{parse_rational, Rational};

/// Parses a `NAME=VALUE` parameter assignment.
pub fn parse_assignment(s: &str) -> Result<(String, Rational), CliError> {
    let (name, value) = s
        .split_once('=')
        .ok_or_else(|| CliError::Usage(format!("expected NAME=VALUE, got '{s}'")))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(CliError::Usage(format!("missing parameter name in '{s}'")));
    }
    let q = parse_rational(value)
        .ok_or_else(|| CliError::Usage(format!("'{}' is not a rational number", value.trim())))?;
    Ok((name.to_string(), q))
}

/// Parses a square matrix written row by row: `1,0;0,-2`.
pub fn parse_matrix(s: &str) -> Result<RatMatrix, CliError> {
    let rows: Vec<Vec<Rational>> = s
        .split(';')
        .map(|row| {
            row.split(',')
                .map(|v| {
                    parse_rational(v).ok_or_else(|| CliError::Usage(format!("bad matrix entry '{}'", v.trim())))
                })
                .collect()
        })
        .collect::<Result<_, _>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Usage(format!("matrix '{s}' is not square")));
    }
    Ok(RatMatrix::from_rows(&rows))
}
