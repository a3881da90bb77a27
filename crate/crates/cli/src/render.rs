//! JSON and plain-text renderings of reports.

use crate::report::*;
use std::fmt::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Renders one report, or a grid of them (a JSON array, or text blocks).
pub fn render(reports: &[AnalysisReport], format: Format, grid: bool) -> String {
    match format {
        Format::Json => {
            let mut s = if grid {
                serde_json::to_string_pretty(reports)
            } else {
                serde_json::to_string_pretty(&reports[0])
            }
            .expect("reports contain only finite numbers");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            for (i, r) in reports.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                if grid {
                    let _ = writeln!(out, "=== grid point {}: {} ===", i + 1, params_line(r));
                }
                out.push_str(&text(r));
            }
            out
        }
    }
}

fn params_line(r: &AnalysisReport) -> String {
    if r.input.params.is_empty() {
        return "(no parameters)".into();
    }
    r.input
        .params
        .iter()
        .map(|(k, v)| format!("{k} = {v}"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn eigen_list(v: &[EigenvalueEntry]) -> String {
    v.iter()
        .map(|e| {
            let im_zero = e.im == "0" || e.im.parse::<f64>() == Ok(0.0);
            let s = if im_zero {
                e.re.clone()
            } else if e.im.starts_with('-') {
                format!("{} - {}i", e.re, &e.im[1..])
            } else {
                format!("{} + {}i", e.re, e.im)
            };
            if e.exact {
                s
            } else {
                format!("~{s}")
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn components(out: &mut String, indent: &str, vars: &[String], comps: &[String]) {
    for (v, c) in vars.iter().zip(comps) {
        let _ = writeln!(out, "{indent}{v}' = {c}");
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt(b: Option<bool>) -> &'static str {
    b.map_or("n/a", yes)
}

fn matrix(m: &[Vec<String>]) -> String {
    let rows: Vec<String> = m.iter().map(|r| r.join(", ")).collect();
    format!("[{}]", rows.join("; "))
}

/// Plain-text rendering of one report.
pub fn text(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let vars = &r.input.vars;
    let _ = writeln!(out, "field (truncated at degree {}):", r.input.degree);
    components(&mut out, "  ", vars, &r.input.field);
    if !r.input.params.is_empty() {
        let _ = writeln!(out, "parameters: {}", params_line(r));
    }
    if !r.input.declared_symmetries.is_empty() {
        let _ = writeln!(out, "declared symmetries: {}", r.input.declared_symmetries.join(", "));
    }

    if let Some(e) = &r.eigen {
        let _ = writeln!(out, "\nlinear part A = {}", matrix(&e.matrix));
        let _ = writeln!(out, "  characteristic polynomial: {}", e.char_poly);
        let _ = writeln!(
            out,
            "  eigenvalues ({}): {}",
            if e.exact { "exact" } else { "numeric" },
            eigen_list(&e.eigenvalues)
        );
        let _ = writeln!(
            out,
            "  semisimple: {}; Poincare domain: {}",
            yes(e.semisimple),
            yes(e.poincare_domain)
        );
    }

    if let Some(res) = &r.resonances {
        let _ = writeln!(
            out,
            "\nresonances through degree {}: {}",
            res.max_degree,
            res.entries.len()
        );
        for e in res.entries.iter().take(40) {
            let tag = if e.exact { "" } else { " (numeric)" };
            let _ = writeln!(
                out,
                "  degree {}: {} in component {}{tag}",
                e.degree, e.monomial, e.component
            );
        }
        if res.entries.len() > 40 {
            let _ = writeln!(out, "  ... {} more", res.entries.len() - 40);
        }
    }

    if let Some(s) = &r.symmetry {
        match &s.name {
            Some(name) => {
                let _ = writeln!(out, "\nsymmetry {name} (declared), linear part {}", matrix(&s.target));
            }
            None => {
                let _ = writeln!(out, "\nsymmetry search with linear part {}", matrix(&s.target));
            }
        }
        if !s.field.is_empty() {
            components(&mut out, "  ", vars, &s.field);
        }
        for d in &s.degrees {
            let _ = writeln!(
                out,
                "  degree {}: {} (solution dimension {})",
                d.degree, d.status, d.solution_dim
            );
        }
        match (s.obstruction, s.source.as_str()) {
            (Some(d), "declared") => {
                let _ = writeln!(out, "  does not commute with the field at degree {d}");
            }
            (Some(d), _) => {
                let _ = writeln!(out, "  obstructed at degree {d}");
            }
            (None, _) => {
                let _ = writeln!(out, "  commutes with the field through degree {}", r.input.degree);
            }
        }
    }

    if let Some(c) = &r.commutators {
        let _ = writeln!(out, "\ncommutators of {}:", c.fields.join(", "));
        for p in &c.pairs {
            let value = if p.vanishes {
                "0".to_string()
            } else {
                format!("({})", p.bracket.join(", "))
            };
            let span = match &p.in_span {
                Some(cs) if !p.vanishes => format!("  = span coefficients ({})", cs.join(", ")),
                None => "  (not in the span)".into(),
                _ => String::new(),
            };
            let _ = writeln!(out, "  [{}, {}] = {value}{span}", p.left, p.right);
        }
        let _ = writeln!(
            out,
            "  all commute: {}; closes under brackets: {}",
            yes(c.all_commute),
            yes(c.closes)
        );
    }

    if let Some(nf) = &r.normal_form {
        let how = match nf.method.as_str() {
            "symmetry" => "through the symmetry",
            "joint" => "jointly with the symmetry",
            _ => "directly",
        };
        let _ = writeln!(out, "\nnormal form ({how}), degree {}: {}", nf.degree, nf.verdict);
        if let Some(l) = nf.symmetry_linearized {
            let _ = writeln!(out, "  symmetry linearized: {}", yes(l));
        }
        let _ = writeln!(out, "  normalized field:");
        components(&mut out, "    ", vars, &nf.normalized);
        let _ = writeln!(out, "  change of coordinates (new variables in terms of old):");
        for (v, c) in vars.iter().zip(&nf.transformation) {
            let _ = writeln!(out, "    {v}_new = {c}");
        }
        let any_resonant = nf.degrees.iter().any(|d| !d.resonant.is_empty());
        if any_resonant {
            let _ = writeln!(out, "  resonant terms:");
            for d in &nf.degrees {
                for e in &d.resonant {
                    let what = match (&e.monomial, e.component) {
                        (Some(m), Some(c)) => format!("{m} in component {c}"),
                        _ => format!("({})", e.field.join(", ")),
                    };
                    let _ = writeln!(
                        out,
                        "    degree {}: {what}: {} (coefficient {})",
                        d.degree, e.status, e.coefficient
                    );
                }
            }
        } else {
            let _ = writeln!(out, "  no resonant terms through degree {}", nf.degree);
        }
    }

    if let Some(w) = &r.omega {
        omega_text(&mut out, w, "");
    }

    if let Some(c) = &r.convergence {
        let _ = writeln!(out, "\nconvergence: {}", c.classification);
        let _ = writeln!(out, "  rule: {}", c.rule);
        if c.diagnostic_conditional {
            let _ = writeln!(out, "  (conditional on the truncated small-divisor diagnostic)");
        }
        let _ = writeln!(
            out,
            "  symmetry commutes: {}; B = I: {}; B semisimple: {}; Y linear: {}",
            opt(c.symmetry_commutes),
            opt(c.b_is_identity),
            opt(c.b_semisimple),
            opt(c.y_linear)
        );
        let _ = writeln!(
            out,
            "  Ker ad(B_s) trivial: {}; joint kernel trivial: {} (degrees {}..={})",
            opt(c.ker_b_trivial),
            opt(c.joint_kernel_trivial),
            c.tested_degrees[0],
            c.tested_degrees[1]
        );
        let _ = writeln!(
            out,
            "  Poincare domain: A {}, B {}",
            yes(c.poincare_a),
            opt(c.poincare_b)
        );
        if let Some(b) = c.resonance_degree_bound {
            let _ = writeln!(out, "  resonances of A occur only below degree {b:.6}");
        }
        omega_text(&mut out, &c.omega, "  ");
    }

    if let Some(f) = &r.flow {
        let _ = writeln!(
            out,
            "\nflow check: {} (max deviation {:e}, tolerance {:e})",
            if f.passed { "passed" } else { "FAILED" },
            f.max_deviation,
            f.tol
        );
        let _ = writeln!(
            out,
            "  {} samples at radius {}, t in [0, {}], step {}, seed {}",
            f.samples, f.radius, f.t_end, f.step, f.seed
        );
    }

    if !r.notes.is_empty() {
        let _ = writeln!(out);
        for n in &r.notes {
            let _ = writeln!(out, "note: {n}");
        }
    }
    out
}

fn omega_text(out: &mut String, w: &OmegaSection, indent: &str) {
    let _ = writeln!(
        out,
        "\n{indent}small divisors of {} (eigenvalues {}), |Q| capped at {}:",
        w.matrix,
        eigen_list(&w.eigenvalues),
        w.q_sum_cap
    );
    for e in &w.entries {
        let omega = e.omega.map_or("undefined".to_string(), |v| format!("{v:.6}"));
        let _ = writeln!(
            out,
            "{indent}  k = {}: omega = {omega}, partial sum = {:.6}{}",
            e.k,
            e.partial_sum,
            if e.capped { " (capped)" } else { "" }
        );
    }
    let _ = writeln!(
        out,
        "{indent}  bounded: {}{}",
        yes(w.bounded),
        if w.exact { "" } else { " (numeric spectrum)" }
    );
}
