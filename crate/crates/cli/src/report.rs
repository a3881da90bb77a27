//! The machine-readable analysis report.
//!
//! Exact quantities (coefficients, matrix entries, exact eigenvalues) are
//! strings of the form `p` or `p/q`; floating-point diagnostics are JSON
//! numbers. Sections that were not computed are omitted. Components and
//! variable positions are 1-based here, unlike the library.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Bumped on any incompatible change of the layout below.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: u32,
    pub input: InputEcho,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eigen: Option<EigenSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resonances: Option<ResonanceSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<SymmetrySection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commutators: Option<CommutatorSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal_form: Option<NormalFormSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega: Option<OmegaSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub convergence: Option<ConvergenceSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flow: Option<FlowSection>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl AnalysisReport {
    pub fn new(input: InputEcho) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            input,
            eigen: None,
            resonances: None,
            symmetry: None,
            commutators: None,
            normal_form: None,
            omega: None,
            convergence: None,
            flow: None,
            notes: Vec::new(),
        }
    }

    /// Description of the first obstruction met, if any: a symmetry search
    /// that failed, a declared symmetry that does not commute, or a flow
    /// check that did not pass.
    pub fn obstruction(&self) -> Option<String> {
        if let Some(s) = &self.symmetry {
            if let Some(d) = s.obstruction {
                return Some(match s.source.as_str() {
                    "declared" => format!("declared symmetry does not commute at degree {d}"),
                    _ => format!("symmetry search obstructed at degree {d}"),
                });
            }
        }
        if let Some(f) = &self.flow {
            if !f.passed {
                return Some(format!(
                    "flow check deviation {:e} exceeds tolerance {:e}",
                    f.max_deviation, f.tol
                ));
            }
        }
        None
    }
}

/// What was analyzed: the instantiated field and the parameter values used.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputEcho {
    pub vars: Vec<String>,
    pub params: BTreeMap<String, String>,
    /// Components of the field, truncated at `degree`.
    pub field: Vec<String>,
    pub degree: usize,
    pub declared_symmetries: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenvalueEntry {
    pub re: String,
    pub im: String,
    pub exact: bool,
    /// Error bound of a numeric eigenvalue.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenSection {
    /// Linear part `A`, row by row.
    pub matrix: Vec<Vec<String>>,
    pub char_poly: String,
    pub exact: bool,
    pub eigenvalues: Vec<EigenvalueEntry>,
    pub semisimple: bool,
    pub poincare_domain: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResonanceEntry {
    pub degree: usize,
    pub component: usize,
    pub multi_index: Vec<u32>,
    pub monomial: String,
    pub exact: bool,
    /// `|Σ mᵢλᵢ − λ_r|` for numerically detected resonances.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResonanceSection {
    pub max_degree: usize,
    pub entries: Vec<ResonanceEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetryDegree {
    pub degree: usize,
    pub solution_dim: usize,
    /// `unique`, `parametrized` or `obstructed`.
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SymmetrySection {
    /// `found` (searched with the target linear part) or `declared`.
    pub source: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub target: Vec<Vec<String>>,
    /// The symmetry through the last solved degree.
    pub field: Vec<String>,
    pub degrees: Vec<SymmetryDegree>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstruction: Option<usize>,
    /// Certificate of infeasibility at the obstructed degree: a functional
    /// vanishing on the operator's image but not on the right-hand side.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub left: String,
    pub right: String,
    pub vanishes: bool,
    pub linear_part_ok: bool,
    pub bracket: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub in_span: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommutatorSection {
    pub fields: Vec<String>,
    pub pairs: Vec<BracketEntry>,
    pub closes: bool,
    pub all_commute: bool,
}

/// One element of the resonant basis at some degree, with its coefficient
/// in the normalized field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResonantElement {
    /// Set when the element is a single monomial in a single component.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub monomial: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub component: Option<usize>,
    pub field: Vec<String>,
    pub coefficient: String,
    /// `retained` (nonzero coefficient) or `cancelled`.
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalFormDegree {
    pub degree: usize,
    /// Dimension of the solution set of the degree's homological equation.
    pub solution_dim: usize,
    pub resonant: Vec<ResonantElement>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormalFormSection {
    /// `direct`, `symmetry` (through a symmetry with identity linear part)
    /// or `joint` (together with a commuting symmetry).
    pub method: String,
    pub degree: usize,
    pub normalized: Vec<String>,
    /// Change of coordinates from the original to the normalized variables.
    pub transformation: Vec<String>,
    pub inverse: Vec<String>,
    pub linear: bool,
    /// `linear_through_K`, `obstructed_at_D` or `nonlinear_from_D`.
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry_linearized: Option<bool>,
    pub degrees: Vec<NormalFormDegree>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaEntry {
    pub k: usize,
    pub omega: Option<f64>,
    pub partial_sum: f64,
    pub capped: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OmegaSection {
    /// `A` (the field's linear part) or `B` (the symmetry's).
    pub matrix: String,
    pub eigenvalues: Vec<EigenvalueEntry>,
    pub exact: bool,
    pub q_sum_cap: usize,
    pub bounded: bool,
    pub entries: Vec<OmegaEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceSection {
    pub classification: String,
    pub rule: String,
    pub diagnostic_conditional: bool,
    pub poincare_a: bool,
    pub poincare_b: Option<bool>,
    pub resonance_degree_bound: Option<f64>,
    pub symmetry_commutes: Option<bool>,
    pub b_is_identity: Option<bool>,
    pub b_semisimple: Option<bool>,
    pub y_linear: Option<bool>,
    pub ker_b_trivial: Option<bool>,
    pub joint_kernel_trivial: Option<bool>,
    pub tested_degrees: [usize; 2],
    pub omega: OmegaSection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowSection {
    pub radius: f64,
    pub t_end: f64,
    pub step: f64,
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
    pub steps: usize,
    pub max_deviation: f64,
    pub deviations: Vec<f64>,
    pub passed: bool,
}
