//! Parameter grids.
//!
//! A grid file is comma-separated: a header line naming parameters, then
//! one line of values per grid point. Values are integers or fractions
//! `p/q`; `#` starts a comment line.
//!
//! ```text
//! alpha, beta
//! 1/2, 2
//! 1, -1
//! ```

use crate::analyze::{run_analysis, AnalyzeOptions, Task};
use crate::error::CliError;
use crate::report::AnalysisReport;
use pdnf_core::dsl::{Bindings, FieldSpec};
use pdnf_core::scalar::parse_rational;
use rayon::prelude::*;

/// Grid points in file order.
pub fn parse_grid(text: &str) -> Result<Vec<Bindings>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| CliError::Grid { line: 1, message: e.to_string() })?
        .iter()
        .map(str::to_string)
        .collect();
    if header.is_empty() || header.iter().any(String::is_empty) {
        return Err(CliError::Grid {
            line: 1,
            message: "the header must name every column".into(),
        });
    }
    let mut points = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Grid {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let mut point = Bindings::new();
        for (name, value) in header.iter().zip(record.iter()) {
            let q = parse_rational(value).ok_or_else(|| CliError::Grid {
                line,
                message: format!("'{value}' is not a rational number"),
            })?;
            point.insert(name.clone(), q);
        }
        points.push(point);
    }
    if points.is_empty() {
        return Err(CliError::Grid {
            line: 1,
            message: "no grid points".into(),
        });
    }
    Ok(points)
}

/// Runs `task` at every grid point in parallel. Reports come back in file
/// order; each point's bindings are layered over `base.overrides`.
pub fn run_grid(
    spec: &FieldSpec,
    task: Task,
    base: &AnalyzeOptions,
    points: &[Bindings],
) -> Result<Vec<AnalysisReport>, CliError> {
    points
        .par_iter()
        .map(|point| {
            let mut opts = base.clone();
            opts.overrides.extend(point.iter().map(|(k, v)| (k.clone(), v.clone())));
            run_analysis(spec, task, &opts)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use pdnf_core::scalar::{int, rat};

    #[test]
    fn parses_points_in_order() {
        let g = parse_grid("# sweep\nalpha, beta\n1/2, 2\n1,-1\n\n0, 3\n").unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g[0]["alpha"], rat(1, 2));
        assert_eq!(g[1]["beta"], int(-1));
        assert_eq!(g[2]["alpha"], int(0));
    }

    #[test]
    fn rejects_bad_values_with_line() {
        match parse_grid("a\n1\nx\n") {
            Err(CliError::Grid { line, .. }) => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_grid("a, b\n1\n").is_err());
        assert!(parse_grid("a\n").is_err());
    }
}
