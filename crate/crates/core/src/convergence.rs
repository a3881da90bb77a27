//! Convergence diagnostics for normalizing transformations: the Poincaré
//! domain test, the small-divisor sequence ω_k, and a decision tree that
//! combines them with symmetry data.
//!
//! ω_k is the minimum of `|(Q, Λ)| = |Σ qᵢλᵢ|` over integer vectors with
//! `qᵢ ≥ −1`, `(Q, Λ) ≠ 0` and `1 < Σ qᵢ < 2^k`; the summability of
//! `2^{−k} ln ω_k^{−1}` cannot be decided from finitely many terms, so the
//! search is capped and the result is reported as a diagnostic only.

use std::fmt;

use num_complex::Complex64;

use crate::algebra::VectorField;
use crate::homological::{ad_kernel_dim, joint_kernel_dim, APPROX_RESONANCE_TOL};
use crate::matalg::{eigenvalues, sn_decompose, EigenData, Eigenvalue};
use crate::normalizer::first_noncommuting_degree;
use crate::scalar::{to_f64, Gaussian, Rational};

pub const DEFAULT_KMAX: usize = 6;
pub const DEFAULT_QCAP: usize = 40;

/// True iff every eigenvalue has a real part of the same strict sign.
pub fn poincare_domain(eig: &EigenData) -> bool {
    let signs: Vec<i32> = eig.values.iter().map(Eigenvalue::re_signum).collect();
    match signs.first() {
        Some(&s) if s != 0 => signs.iter().all(|&t| t == s),
        _ => false,
    }
}

/// In a Poincaré domain only finitely many resonances exist: a resonance
/// `Σ mᵢλᵢ = λ_r` forces `|m| ≤ max|λ| / min|Re λ|`.
pub fn poincare_resonance_bound(eig: &EigenData) -> Option<f64> {
    if !poincare_domain(eig) {
        return None;
    }
    let vals = eig.to_complex();
    let max_abs = vals.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let min_re = vals.iter().map(|z| z.re.abs()).fold(f64::INFINITY, f64::min);
    Some(max_abs / min_re)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OmegaEntry {
    pub k: usize,
    /// `None` when the admissible set is empty (k = 1).
    pub omega: Option<f64>,
    /// Running `Σ_{j ≤ k} 2^{−j} ln ω_j^{−1}` over the defined terms.
    pub partial_sum: f64,
    /// The search range `Σ qᵢ < 2^k` was cut to the cap.
    pub capped: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OmegaDiagnostic {
    pub entries: Vec<OmegaEntry>,
    /// All eigenvalues exact: minima were compared exactly in ℚ(i).
    pub exact: bool,
    pub q_sum_cap: usize,
    /// Heuristic: every computed term `2^{−k} ln ω_k^{−1}` is at most 1.
    pub bounded: bool,
}

/// ω_k for `k = 1..=k_max` with the search truncated at `Σ qᵢ < q_sum_cap`.
pub fn bruno_omega(eig: &EigenData, k_max: usize, q_sum_cap: usize) -> OmegaDiagnostic {
    let n = eig.len();
    let limit = |k: usize| -> usize {
        let full = if k >= usize::BITS as usize - 1 { usize::MAX } else { 1usize << k };
        full.min(q_sum_cap)
    };
    let top = limit(k_max.max(1));
    let exact_vals = eig.exact_values();
    let approx_vals = eig.to_complex();
    // per_sum[s] = min over Σq = s, as (exact |.|², float |.|)
    let mut per_sum: Vec<Option<(Option<Rational>, f64)>> = vec![None; top.max(2)];
    for (s, slot) in per_sum.iter_mut().enumerate().skip(2) {
        let mut best: Option<(Option<Rational>, f64)> = None;
        for_each_q(n, s, &mut |q| {
            let cand = match &exact_vals {
                Some(l) => {
                    let mut acc = Gaussian::zero();
                    for (qi, li) in q.iter().zip(l) {
                        if *qi != 0 {
                            acc = &acc + &li.scale(&Rational::from_integer((*qi).into()));
                        }
                    }
                    if acc.is_zero() {
                        return;
                    }
                    let nsq = acc.norm_sqr();
                    let f = to_f64(&nsq).sqrt();
                    (Some(nsq), f)
                }
                None => {
                    let z: Complex64 = q
                        .iter()
                        .zip(&approx_vals)
                        .map(|(qi, l)| l * (*qi as f64))
                        .sum();
                    let f = z.norm();
                    if f <= APPROX_RESONANCE_TOL {
                        return;
                    }
                    (None, f)
                }
            };
            let better = match &best {
                None => true,
                Some((Some(b), _)) => cand.0.as_ref().is_some_and(|c| c < b),
                Some((None, bf)) => cand.1 < *bf,
            };
            if better {
                best = Some(cand);
            }
        });
        *slot = best;
    }
    let mut entries = Vec::new();
    let mut sum = 0.0;
    let mut bounded = true;
    for k in 1..=k_max.max(1) {
        let lim = limit(k);
        let mut best: Option<(Option<Rational>, f64)> = None;
        for v in per_sum.iter().take(lim).skip(2).flatten() {
            let better = match &best {
                None => true,
                Some((Some(b), _)) => v.0.as_ref().is_some_and(|c| c < b),
                Some((None, bf)) => v.1 < *bf,
            };
            if better {
                best = Some(v.clone());
            }
        }
        let omega = best.map(|b| b.1);
        if let Some(w) = omega {
            let term = (2f64).powi(-(k as i32)) * (1.0 / w).ln();
            bounded &= term <= 1.0;
            sum += term;
        }
        entries.push(OmegaEntry {
            k,
            omega,
            partial_sum: sum,
            capped: lim < (1usize << k.min(usize::BITS as usize - 2)),
        });
    }
    OmegaDiagnostic {
        entries,
        exact: exact_vals.is_some(),
        q_sum_cap,
        bounded,
    }
}

/// Calls `f` on every integer vector of length `n` with entries `≥ −1` and
/// entry sum `s`.
fn for_each_q(n: usize, s: usize, f: &mut impl FnMut(&[i64])) {
    fn rec(q: &mut Vec<i64>, n: usize, left: i64, f: &mut impl FnMut(&[i64])) {
        if q.len() == n - 1 {
            q.push(left - 1);
            f(q);
            q.pop();
            return;
        }
        for p in 0..=left {
            q.push(p - 1);
            rec(q, n, left - p, f);
            q.pop();
        }
    }
    if n == 0 {
        return;
    }
    // shifted entries pᵢ = qᵢ + 1 ≥ 0 sum to s + n
    rec(&mut Vec::with_capacity(n), n, (s + n) as i64, f);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    ConvergentThm2,
    ConvergentThm4a,
    ConvergentThm4bLinearY,
    FormalOnly,
    Inconclusive,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::ConvergentThm2 => "convergent_thm2",
            Classification::ConvergentThm4a => "convergent_thm4a",
            Classification::ConvergentThm4bLinearY => "convergent_thm4b_linearY",
            Classification::FormalOnly => "formal_only",
            Classification::Inconclusive => "inconclusive",
        }
    }

    pub fn is_convergent(&self) -> bool {
        matches!(
            self,
            Classification::ConvergentThm2 | Classification::ConvergentThm4a | Classification::ConvergentThm4bLinearY
        )
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            Classification::ConvergentThm2,
            Classification::ConvergentThm4a,
            Classification::ConvergentThm4bLinearY,
            Classification::FormalOnly,
            Classification::Inconclusive,
        ]
        .into_iter()
        .find(|c| c.as_str() == s)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Everything the classifier looks at.
#[derive(Clone, Debug)]
pub struct ClassifyInput<'a> {
    pub field: &'a VectorField,
    /// A candidate symmetry `Y` (found or declared).
    pub symmetry: Option<&'a VectorField>,
    pub degree: usize,
    pub k_max: usize,
    pub q_sum_cap: usize,
    pub tol: f64,
}

impl<'a> ClassifyInput<'a> {
    pub fn new(field: &'a VectorField, symmetry: Option<&'a VectorField>, degree: usize) -> Self {
        Self {
            field,
            symmetry,
            degree,
            k_max: DEFAULT_KMAX,
            q_sum_cap: DEFAULT_QCAP,
            tol: crate::matalg::DEFAULT_EIGEN_TOL,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvergenceReport {
    pub eigen_a: EigenData,
    pub eigen_b: Option<EigenData>,
    pub poincare_a: bool,
    pub poincare_b: Option<bool>,
    /// Highest possible resonant degree when A is in a Poincaré domain.
    pub resonance_degree_bound: Option<f64>,
    /// ω data for B when a symmetry is present, for A otherwise.
    pub omega: OmegaDiagnostic,
    pub symmetry_commutes: Option<bool>,
    pub b_is_identity: Option<bool>,
    pub b_semisimple: Option<bool>,
    pub y_linear: Option<bool>,
    /// `Ker ad_B = 0` on every tested degree.
    pub ker_b_trivial: Option<bool>,
    /// `Ker ad_{A_s} ∩ Ker ad_{B_s} = 0` on every tested degree.
    pub joint_kernel_trivial: Option<bool>,
    pub tested_degrees: (usize, usize),
    pub classification: Classification,
    pub rule: String,
    /// The verdict rests on the finite ω diagnostic.
    pub diagnostic_conditional: bool,
}

/// Decision tree, in order:
/// 1. commuting symmetry with `(DY)(0) = I` → `convergent_thm2`;
/// 2. commuting symmetry, `B` semisimple, `Ker ad_B` trivial on the tested
///    degrees and the ω diagnostic bounded → `convergent_thm4a`
///    (diagnostic-conditional);
/// 3. commuting linear symmetry with trivial joint kernel →
///    `convergent_thm4b_linearY`;
/// 4. a formal normal form exists (A ≠ 0) and the symmetry check did not
///    fail → `formal_only`;
/// 5. otherwise `inconclusive`.
pub fn classify_convergence(input: &ClassifyInput<'_>) -> ConvergenceReport {
    let x = input.field;
    let k = input.degree.max(2);
    let a = x.linear_part();
    let eigen_a = eigenvalues(&a, input.tol);
    let poincare_a = poincare_domain(&eigen_a);
    let resonance_degree_bound = poincare_resonance_bound(&eigen_a);
    let tested_degrees = (2, k);

    let mut report = ConvergenceReport {
        omega: bruno_omega(&eigen_a, input.k_max, input.q_sum_cap),
        eigen_a,
        eigen_b: None,
        poincare_a,
        poincare_b: None,
        resonance_degree_bound,
        symmetry_commutes: None,
        b_is_identity: None,
        b_semisimple: None,
        y_linear: None,
        ker_b_trivial: None,
        joint_kernel_trivial: None,
        tested_degrees,
        classification: Classification::Inconclusive,
        rule: String::new(),
        diagnostic_conditional: false,
    };

    let Some(y) = input.symmetry else {
        if a.is_zero() {
            report.rule = "no linear part and no symmetry: nothing applies".into();
        } else {
            report.classification = Classification::FormalOnly;
            report.rule = "formal normal form exists; no symmetry available for a convergence rule".into();
        }
        return report;
    };

    let b = y.linear_part();
    let commutes = y.dim() == x.dim()
        && !x.has_constant_terms()
        && !y.has_constant_terms()
        && matches!(first_noncommuting_degree(x, y, k), Ok(None));
    report.symmetry_commutes = Some(commutes);
    if !commutes {
        report.rule = "the claimed symmetry does not commute with the field: no verdict".into();
        return report;
    }
    let eigen_b = eigenvalues(&b, input.tol);
    report.poincare_b = Some(poincare_domain(&eigen_b));
    report.omega = bruno_omega(&eigen_b, input.k_max, input.q_sum_cap);
    report.eigen_b = Some(eigen_b);
    let b_is_identity = b.is_identity();
    report.b_is_identity = Some(b_is_identity);
    let b_split = sn_decompose(&b);
    let b_semisimple = b_split.is_semisimple();
    report.b_semisimple = Some(b_semisimple);
    let y_linear = y.is_linear();
    report.y_linear = Some(y_linear);

    if b_is_identity {
        report.classification = Classification::ConvergentThm2;
        report.rule = format!(
            "thm2: polynomial symmetry with identity linear part commutes through degree {k}; \
             its normalizing transformation is unique, convergent, and linearizes the field"
        );
        return report;
    }

    let ker_b_trivial = !b.is_zero() && (2..=k).all(|m| ad_kernel_dim(&b_split.semisimple, m) == 0);
    report.ker_b_trivial = Some(ker_b_trivial);
    let a_s = sn_decompose(&a).semisimple;
    let joint_trivial = (2..=k).all(|m| joint_kernel_dim(&a_s, &b_split.semisimple, m) == 0);
    report.joint_kernel_trivial = Some(joint_trivial);

    if b_semisimple && ker_b_trivial && report.omega.bounded {
        report.classification = Classification::ConvergentThm4a;
        report.diagnostic_conditional = true;
        report.rule = format!(
            "thm4a: B semisimple, Ker ad_B trivial on degrees 2..={k}, ω diagnostic bounded \
             (k ≤ {}, Σq < {}); conditional on the finite ω check",
            input.k_max, input.q_sum_cap
        );
        return report;
    }
    if b_semisimple && joint_trivial && y_linear {
        report.classification = Classification::ConvergentThm4bLinearY;
        report.rule = format!(
            "thm4b: symmetry is linear and Ker ad_A ∩ Ker ad_B is trivial on degrees 2..={k}; \
             the joint normal form is linear and convergent"
        );
        return report;
    }
    if a.is_zero() {
        report.rule = "no linear part: no normal form to classify".into();
    } else {
        report.classification = Classification::FormalOnly;
        report.rule = "formal normal form exists; no convergence rule applies".into();
    }
    report
}
