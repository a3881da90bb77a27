use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{NormalFormResult, NormalizerError};
use crate::algebra::VectorField;

#[derive(Clone, Debug, PartialEq)]
pub struct FlowOptions {
    pub radius: f64,
    pub t_end: f64,
    pub step: f64,
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
}

impl Default for FlowOptions {
    fn default() -> Self {
        Self {
            radius: 0.1,
            t_end: 1.0,
            step: 1e-3,
            tol: 1e-6,
            samples: 8,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FlowReport {
    pub radius: f64,
    pub max_deviation: f64,
    /// Max deviation along each sampled trajectory.
    pub deviations: Vec<f64>,
    pub passed: bool,
    pub steps: usize,
}

fn rk4_step(f: &VectorField, x: &[f64], h: f64) -> Vec<f64> {
    let add = |a: &[f64], b: &[f64], s: f64| -> Vec<f64> { a.iter().zip(b).map(|(p, q)| p + s * q).collect() };
    let k1 = f.eval_f64(x);
    let k2 = f.eval_f64(&add(x, &k1, h / 2.0));
    let k3 = f.eval_f64(&add(x, &k2, h / 2.0));
    let k4 = f.eval_f64(&add(x, &k3, h));
    x.iter()
        .enumerate()
        .map(|(i, xi)| xi + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
        .collect()
}

/// Deterministic sample points on the sphere of the given radius.
pub(crate) fn sample_points(n: usize, radius: f64, count: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm < 1e-3 {
            continue;
        }
        out.push(v.into_iter().map(|c| c * radius / norm).collect());
    }
    out
}

/// Integrates the original field from sample points with `|x| = radius`
/// and the normalized field from their images `u₀ = Φ(x₀)`, and compares
/// `Φ(x(t))` with `u(t)` at every step (fixed-step RK4).
pub fn flow_consistency_check(
    original: &VectorField,
    result: &NormalFormResult,
    opts: &FlowOptions,
) -> Result<FlowReport, NormalizerError> {
    if !(opts.step > 0.0 && opts.t_end >= 0.0 && opts.radius >= 0.0) {
        return Err(NormalizerError::Flow(format!(
            "invalid options: step {}, t_end {}, radius {}",
            opts.step, opts.t_end, opts.radius
        )));
    }
    let steps = (opts.t_end / opts.step).round() as usize;
    let h = if steps == 0 { 0.0 } else { opts.t_end / steps as f64 };
    let map = &result.transformation;
    let mut deviations = Vec::new();
    for x0 in sample_points(original.dim(), opts.radius, opts.samples.max(1), opts.seed) {
        let mut x = x0.clone();
        let mut u = map.apply_f64(&x0);
        let mut worst: f64 = 0.0;
        for s in 0..steps {
            x = rk4_step(original, &x, h);
            u = rk4_step(&result.normalized, &u, h);
            let mapped = map.apply_f64(&x);
            let dev = mapped
                .iter()
                .zip(&u)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            if !dev.is_finite() || x.iter().any(|v| !v.is_finite()) {
                return Err(NormalizerError::Flow(format!(
                    "non-finite state at t = {:.4} from |x₀| = {}; reduce radius, t_end or step",
                    (s + 1) as f64 * h,
                    opts.radius
                )));
            }
            worst = worst.max(dev);
        }
        deviations.push(worst);
    }
    let max_deviation = deviations.iter().copied().fold(0.0, f64::max);
    Ok(FlowReport {
        radius: opts.radius,
        max_deviation,
        deviations,
        passed: max_deviation <= opts.tol,
        steps,
    })
}
