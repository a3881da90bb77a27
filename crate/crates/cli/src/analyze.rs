//! The analysis pipeline: spectrum, resonances, symmetry, normal form,
//! convergence classification and the optional numerical flow check.

use crate::error::CliError;
use crate::report::*;
use pdnf_core::algebra::{Monomial, VectorField};
use pdnf_core::convergence::{bruno_omega, classify_convergence, poincare_domain, ClassifyInput, OmegaDiagnostic};
use pdnf_core::dsl::{Bindings, FieldSpec};
use pdnf_core::homological::{enumerate_resonances, resonant_subspace, Residual};
use pdnf_core::matalg::{eigenvalues, sn_decompose, EigenData, Eigenvalue, RatMatrix};
use pdnf_core::normalizer::{
    first_noncommuting_degree, flow_consistency_check, joint_normal_form, linearize_via_symmetry, normal_form,
    FlowOptions, NormalFormResult, NormalizerError, Verdict,
};
use pdnf_core::scalar::format_rational;
use pdnf_core::symmetry::{commutator_report, find_symmetry, DegreeStatus, SymmetryError};
use num_traits::Zero;

/// What a run computes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    /// Parse and instantiate only.
    Parse,
    /// The full pipeline.
    Analyze,
    /// Direct normal form.
    Normalize,
    /// Symmetry search plus the commutator table of the declared fields.
    Symmetry,
    /// The small-divisor diagnostic.
    Bruno,
    /// Symmetry plus convergence classification.
    Classify,
    /// Normal form plus the numerical flow check.
    Flowcheck,
}

#[derive(Clone, Debug)]
pub struct AnalyzeOptions {
    pub degree: usize,
    pub overrides: Bindings,
    /// Use this declared symmetry instead of searching for one.
    pub declared_symmetry: Option<String>,
    /// Linear part of the symmetry to search for (identity by default).
    pub target: Option<RatMatrix>,
    pub k_max: usize,
    pub q_sum_cap: usize,
    pub eigen_tol: f64,
    /// Run the flow check (always on for [`Task::Flowcheck`]).
    pub flow: Option<FlowOptions>,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            degree: pdnf_core::normalizer::DEFAULT_DEGREE,
            overrides: Bindings::new(),
            declared_symmetry: None,
            target: None,
            k_max: pdnf_core::convergence::DEFAULT_KMAX,
            q_sum_cap: pdnf_core::convergence::DEFAULT_QCAP,
            eigen_tol: pdnf_core::matalg::DEFAULT_EIGEN_TOL,
            flow: None,
        }
    }
}

struct Stages {
    eigen: bool,
    resonances: bool,
    symmetry: bool,
    commutators: bool,
    normal_form: Option<NfMode>,
    omega: bool,
    convergence: bool,
    flow: bool,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum NfMode {
    Auto,
    Direct,
}

impl Stages {
    fn of(task: Task, flow_requested: bool) -> Self {
        let none = Stages {
            eigen: false,
            resonances: false,
            symmetry: false,
            commutators: false,
            normal_form: None,
            omega: false,
            convergence: false,
            flow: false,
        };
        match task {
            Task::Parse => none,
            Task::Analyze => Stages {
                eigen: true,
                resonances: true,
                symmetry: true,
                normal_form: Some(NfMode::Auto),
                convergence: true,
                flow: flow_requested,
                ..none
            },
            Task::Normalize => Stages {
                eigen: true,
                resonances: true,
                normal_form: Some(NfMode::Direct),
                flow: flow_requested,
                ..none
            },
            Task::Symmetry => Stages {
                eigen: true,
                symmetry: true,
                commutators: true,
                ..none
            },
            Task::Bruno => Stages {
                eigen: true,
                omega: true,
                ..none
            },
            Task::Classify => Stages {
                eigen: true,
                symmetry: true,
                convergence: true,
                ..none
            },
            Task::Flowcheck => Stages {
                eigen: true,
                symmetry: true,
                normal_form: Some(NfMode::Auto),
                flow: true,
                ..none
            },
        }
    }
}

/// Runs `task` on one parameter binding of `spec`.
pub fn run_analysis(spec: &FieldSpec, task: Task, opts: &AnalyzeOptions) -> Result<AnalysisReport, CliError> {
    let k = opts.degree;
    if k < 2 {
        return Err(CliError::Usage(format!("degree must be at least 2, got {k}")));
    }
    let stages = Stages::of(task, opts.flow.is_some());
    let bindings = spec.resolve_bindings(&opts.overrides)?;
    let x = spec.instantiate(&opts.overrides, k)?;
    let names = &spec.vars;
    let mut report = AnalysisReport::new(InputEcho {
        vars: names.clone(),
        params: bindings.iter().map(|(n, v)| (n.clone(), format_rational(v))).collect(),
        field: x.format_with(names),
        degree: k,
        declared_symmetries: spec.symmetry_names().into_iter().map(str::to_string).collect(),
    });
    if task == Task::Parse {
        return Ok(report);
    }
    if x.has_constant_terms() {
        return Err(CliError::Usage(
            "the field has constant terms: the origin must be an equilibrium".into(),
        ));
    }

    let a = x.linear_part();
    let eig = eigenvalues(&a, opts.eigen_tol);
    if stages.eigen {
        report.eigen = Some(EigenSection {
            matrix: a.to_strings(),
            char_poly: eig.char_poly.to_string(),
            exact: eig.exact,
            eigenvalues: eigen_entries(&eig),
            semisimple: sn_decompose(&a).nilpotent.is_zero(),
            poincare_domain: poincare_domain(&eig),
        });
    }
    if stages.resonances {
        report.resonances = Some(resonance_section(&eig, k, names));
    }

    // the symmetry Y, if one is available and commutes with X
    let mut symmetry: Option<(String, VectorField)> = None;
    if stages.symmetry {
        let (section, y) = symmetry_stage(spec, &x, opts)?;
        report.symmetry = Some(section);
        symmetry = y;
    }
    if stages.commutators {
        report.commutators = Some(commutator_section(spec, &x, symmetry.as_ref(), opts)?);
    }

    let mut normalized: Option<NormalFormResult> = None;
    if let Some(mode) = stages.normal_form {
        match normal_form_stage(&x, symmetry.as_ref().map(|(_, y)| y), mode, k) {
            Ok((method, nf, verdict, linearized)) => {
                if !nf.roundtrip_holds(&x)? {
                    return Err(CliError::Internal(
                        "transporting the normalized field back does not reproduce the input".into(),
                    ));
                }
                report.normal_form = Some(normal_form_section(method, &nf, &a, verdict, linearized, names)?);
                normalized = Some(nf);
            }
            Err(NormalizerError::NoLinearPart) => {
                report.notes.push("normal form skipped: the linear part is zero".into());
            }
            Err(e) => return Err(e.into()),
        }
    }

    if stages.omega {
        let (label, m) = match &opts.declared_symmetry {
            Some(name) => ("B", spec.symmetry(name, &opts.overrides, k)?.linear_part()),
            None => ("A", a.clone()),
        };
        let e = eigenvalues(&m, opts.eigen_tol);
        report.omega = Some(omega_section(label, &e, &bruno_omega(&e, opts.k_max, opts.q_sum_cap)));
    }

    if stages.convergence {
        let input = ClassifyInput {
            field: &x,
            symmetry: symmetry.as_ref().map(|(_, y)| y),
            degree: k,
            k_max: opts.k_max,
            q_sum_cap: opts.q_sum_cap,
            tol: opts.eigen_tol,
        };
        let c = classify_convergence(&input);
        let omega_eig = c.eigen_b.as_ref().unwrap_or(&c.eigen_a);
        let label = if c.eigen_b.is_some() { "B" } else { "A" };
        report.convergence = Some(ConvergenceSection {
            classification: c.classification.as_str().to_string(),
            rule: c.rule.clone(),
            diagnostic_conditional: c.diagnostic_conditional,
            poincare_a: c.poincare_a,
            poincare_b: c.poincare_b,
            resonance_degree_bound: c.resonance_degree_bound,
            symmetry_commutes: c.symmetry_commutes,
            b_is_identity: c.b_is_identity,
            b_semisimple: c.b_semisimple,
            y_linear: c.y_linear,
            ker_b_trivial: c.ker_b_trivial,
            joint_kernel_trivial: c.joint_kernel_trivial,
            tested_degrees: [c.tested_degrees.0, c.tested_degrees.1],
            omega: omega_section(label, omega_eig, &c.omega),
        });
    }

    if stages.flow {
        let fo = opts.flow.clone().unwrap_or_default();
        match &normalized {
            Some(nf) => match flow_consistency_check(&x, nf, &fo) {
                Ok(f) => {
                    report.flow = Some(FlowSection {
                        radius: fo.radius,
                        t_end: fo.t_end,
                        step: fo.step,
                        tol: fo.tol,
                        samples: fo.samples,
                        seed: fo.seed,
                        steps: f.steps,
                        max_deviation: f.max_deviation,
                        deviations: f.deviations,
                        passed: f.passed,
                    });
                }
                Err(NormalizerError::Flow(msg)) => report.notes.push(format!("flow check not completed: {msg}")),
                Err(e) => return Err(e.into()),
            },
            None => report.notes.push("flow check skipped: no normal form".into()),
        }
    }
    Ok(report)
}

fn eigen_entries(eig: &EigenData) -> Vec<EigenvalueEntry> {
    eig.values
        .iter()
        .map(|v| match v {
            Eigenvalue::Exact(g) => EigenvalueEntry {
                re: format_rational(&g.re),
                im: format_rational(&g.im),
                exact: true,
                error: None,
            },
            Eigenvalue::Approx { re, im, err } => EigenvalueEntry {
                re: re.to_string(),
                im: im.to_string(),
                exact: false,
                error: Some(*err),
            },
        })
        .collect()
}

fn resonance_section(eig: &EigenData, k: usize, names: &[String]) -> ResonanceSection {
    let entries = enumerate_resonances(eig, k)
        .into_iter()
        .map(|r| ResonanceEntry {
            degree: r.degree,
            component: r.component + 1,
            monomial: Monomial::new(r.multi_index.iter().copied()).format_with(names),
            exact: r.is_exact(),
            residual: match r.residual {
                Residual::Exact(_) => None,
                Residual::Approx(v) => Some(v),
            },
            multi_index: r.multi_index,
        })
        .collect();
    ResonanceSection { max_degree: k, entries }
}

type SymmetryStage = (SymmetrySection, Option<(String, VectorField)>);

fn symmetry_stage(spec: &FieldSpec, x: &VectorField, opts: &AnalyzeOptions) -> Result<SymmetryStage, CliError> {
    let k = opts.degree;
    let names = &spec.vars;
    if let Some(name) = &opts.declared_symmetry {
        let y = spec.symmetry(name, &opts.overrides, k)?;
        let obstruction = first_noncommuting_degree(x, &y, k)?;
        let section = SymmetrySection {
            source: "declared".into(),
            name: Some(name.clone()),
            target: y.linear_part().to_strings(),
            field: y.format_with(names),
            degrees: Vec::new(),
            obstruction,
            witness: None,
        };
        let y = obstruction.is_none().then(|| (name.clone(), y));
        return Ok((section, y));
    }
    let n = x.dim();
    let b = opts.target.clone().unwrap_or_else(|| RatMatrix::identity(n));
    if b.rows() != n || b.cols() != n {
        return Err(CliError::Usage(format!(
            "target matrix is {}x{}, the field has dimension {n}",
            b.rows(),
            b.cols()
        )));
    }
    let target = b.to_strings();
    match find_symmetry(x, &b, k) {
        Ok(s) => {
            let section = SymmetrySection {
                source: "found".into(),
                name: None,
                target,
                field: s.symmetry.format_with(names),
                degrees: s
                    .degrees
                    .iter()
                    .map(|d| SymmetryDegree {
                        degree: d.degree,
                        solution_dim: d.solution_dim,
                        status: match d.status {
                            DegreeStatus::Unique => "unique",
                            DegreeStatus::Parametrized(_) => "parametrized",
                            DegreeStatus::Obstructed => "obstructed",
                        }
                        .into(),
                    })
                    .collect(),
                obstruction: s.obstruction,
                witness: s.witness.as_ref().map(|w| w.iter().map(format_rational).collect()),
            };
            let y = s.obstruction.is_none().then(|| ("Y_found".to_string(), s.symmetry));
            Ok((section, y))
        }
        // the linear parts already fail to commute: obstructed at degree 1
        Err(SymmetryError::LinearPartsDoNotCommute) => Ok((
            SymmetrySection {
                source: "found".into(),
                name: None,
                target,
                field: Vec::new(),
                degrees: Vec::new(),
                obstruction: Some(1),
                witness: None,
            },
            None,
        )),
        Err(e) => Err(e.into()),
    }
}

fn commutator_section(
    spec: &FieldSpec,
    x: &VectorField,
    found: Option<&(String, VectorField)>,
    opts: &AnalyzeOptions,
) -> Result<CommutatorSection, CliError> {
    let mut labels = vec!["X".to_string()];
    let mut fields = vec![x.clone()];
    for name in spec.symmetry_names() {
        labels.push(name.to_string());
        fields.push(spec.symmetry(name, &opts.overrides, opts.degree)?);
    }
    if let Some((label, y)) = found {
        if !labels.contains(label) {
            labels.push(label.clone());
            fields.push(y.clone());
        }
    }
    let r = commutator_report(&fields)?;
    Ok(CommutatorSection {
        pairs: r
            .pairs
            .iter()
            .map(|p| BracketEntry {
                left: labels[p.i].clone(),
                right: labels[p.j].clone(),
                vanishes: p.vanishes,
                linear_part_ok: p.linear_part_ok,
                bracket: p.bracket.format_with(&spec.vars),
                in_span: p.in_span.as_ref().map(|c| c.iter().map(format_rational).collect()),
            })
            .collect(),
        fields: labels,
        closes: r.closes,
        all_commute: r.all_commute,
    })
}

type NormalFormStage = (&'static str, NormalFormResult, String, Option<bool>);

fn normal_form_stage(
    x: &VectorField,
    y: Option<&VectorField>,
    mode: NfMode,
    k: usize,
) -> Result<NormalFormStage, NormalizerError> {
    let verdict_of = |v: &Verdict| match v {
        Verdict::LinearThrough(d) => format!("linear_through_{d}"),
        Verdict::ObstructedAt(d) => format!("obstructed_at_{d}"),
    };
    let direct_verdict = |nf: &NormalFormResult| match nf.normalized.first_nonlinear_degree() {
        None => format!("linear_through_{k}"),
        Some(d) => format!("nonlinear_from_{d}"),
    };
    match (mode, y) {
        (NfMode::Auto, Some(y)) if y.linear_part().is_identity() => {
            let c = linearize_via_symmetry(x, y, k)?;
            let verdict = verdict_of(&c.verdict);
            let nf = NormalFormResult {
                normalized: c.normalized_x,
                transformation: c.transformation,
                remainders: Vec::new(),
                generators: c.y_normal_form.generators,
                solution_dims: c.y_normal_form.solution_dims,
                degree: k,
            };
            Ok(("symmetry", nf, verdict, Some(c.symmetry_linearized)))
        }
        (NfMode::Auto, Some(y)) => {
            let j = joint_normal_form(x, y, k)?;
            let verdict = direct_verdict(&j.x);
            Ok(("joint", j.x, verdict, None))
        }
        _ => {
            let nf = normal_form(x, k)?;
            let verdict = direct_verdict(&nf);
            Ok(("direct", nf, verdict, None))
        }
    }
}

/// Per-degree table of the resonant basis of `ad_{A_s}`, each element
/// flagged by whether the normalized field keeps it.
fn normal_form_section(
    method: &str,
    nf: &NormalFormResult,
    a: &RatMatrix,
    verdict: String,
    symmetry_linearized: Option<bool>,
    names: &[String],
) -> Result<NormalFormSection, CliError> {
    let a_s = sn_decompose(a).semisimple;
    let mut degrees = Vec::new();
    for m in 2..=nf.degree {
        let rs = resonant_subspace(&a_s, m).map_err(|e| CliError::Internal(e.to_string()))?;
        let coords = rs.splitting.kernel_coords(&rs.basis.coords(&nf.normalized.homogeneous(m)));
        let resonant = rs
            .splitting
            .kernel()
            .iter()
            .zip(&coords)
            .map(|(kv, c)| {
                let support: Vec<usize> = (0..kv.len()).filter(|&i| !kv[i].is_zero()).collect();
                let (monomial, component) = match support.as_slice() {
                    [i] => {
                        let (mono, comp) = rs.basis.element(*i);
                        (Some(mono.format_with(names)), Some(comp + 1))
                    }
                    _ => (None, None),
                };
                let field = rs.basis.vector(kv).iter().map(|p| p.format_with(names)).collect();
                ResonantElement {
                    monomial,
                    component,
                    field,
                    coefficient: format_rational(c),
                    status: if c.is_zero() { "cancelled" } else { "retained" }.into(),
                }
            })
            .collect();
        let solution_dim = nf
            .solution_dims
            .iter()
            .find(|(d, _)| *d == m)
            .map_or(0, |(_, s)| *s);
        degrees.push(NormalFormDegree {
            degree: m,
            solution_dim,
            resonant,
        });
    }
    Ok(NormalFormSection {
        method: method.into(),
        degree: nf.degree,
        normalized: nf.normalized.format_with(names),
        transformation: nf.transformation.forward().iter().map(|p| p.format_with(names)).collect(),
        inverse: nf.transformation.inverse().iter().map(|p| p.format_with(names)).collect(),
        linear: nf.is_linear(),
        verdict,
        symmetry_linearized,
        degrees,
    })
}

fn omega_section(label: &str, eig: &EigenData, d: &OmegaDiagnostic) -> OmegaSection {
    OmegaSection {
        matrix: label.into(),
        eigenvalues: eigen_entries(eig),
        exact: d.exact,
        q_sum_cap: d.q_sum_cap,
        bounded: d.bounded,
        entries: d
            .entries
            .iter()
            .map(|e| OmegaEntry {
                k: e.k,
                omega: e.omega,
                partial_sum: e.partial_sum,
                capped: e.capped,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pdnf_core::fixtures;

    fn run(fx: fixtures::Fixture, task: Task, degree: usize) -> AnalysisReport {
        let opts = AnalyzeOptions {
            degree,
            ..Default::default()
        };
        run_analysis(&fx.spec(), task, &opts).unwrap()
    }

    #[test]
    fn parse_task_only_echoes() {
        let r = run(fixtures::EXAMPLE1, Task::Parse, 4);
        assert!(r.eigen.is_none() && r.normal_form.is_none() && r.convergence.is_none());
        assert_eq!(r.input.field, ["x", "3*y - x^2"]);
    }

    #[test]
    fn resonant_term_is_retained_by_direct_normal_form() {
        let r = run(fixtures::RESONANT, Task::Normalize, 3);
        let nf = r.normal_form.unwrap();
        assert_eq!(nf.verdict, "nonlinear_from_2");
        let d2 = &nf.degrees[0];
        let x2 = d2.resonant.iter().find(|e| e.monomial.as_deref() == Some("x^2")).unwrap();
        assert_eq!((x2.component, x2.status.as_str()), (Some(2), "retained"));
    }

    #[test]
    fn resonant_system_has_no_dilation_symmetry() {
        let r = run(fixtures::RESONANT, Task::Classify, 4);
        assert!(r.obstruction().is_some());
        assert_eq!(r.convergence.unwrap().classification, "formal_only");
    }

    #[test]
    fn bruno_defaults_to_the_field_spectrum() {
        let r = run(fixtures::EXAMPLE2, Task::Bruno, 4);
        let w = r.omega.unwrap();
        assert_eq!(w.matrix, "A");
        assert_eq!(w.entries[1].omega, Some(1.0));
    }

    #[test]
    fn declared_symmetry_is_used() {
        let opts = AnalyzeOptions {
            degree: 5,
            declared_symmetry: Some("Y".into()),
            ..Default::default()
        };
        let r = run_analysis(&fixtures::EXAMPLE3.spec(), Task::Classify, &opts).unwrap();
        assert_eq!(r.symmetry.unwrap().source, "declared");
        assert!(r.convergence.unwrap().classification.starts_with("convergent"));
    }

    #[test]
    fn degree_below_two_is_rejected() {
        let opts = AnalyzeOptions {
            degree: 1,
            ..Default::default()
        };
        let e = run_analysis(&fixtures::EXAMPLE1.spec(), Task::Analyze, &opts).unwrap_err();
        assert_eq!(e.exit_code(), crate::error::EXIT_USAGE);
    }
}
