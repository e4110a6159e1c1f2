//! Derivative-free maximization shared by the numeric norm and sup-norm
//! paths.
//!
//! Every maximization in this crate runs over a product of half-lines
//! (nonnegative directions, projected onto a norm sphere by the caller)
//! and circles (phases). The objectives are smooth and, thanks to
//! 1-unconditionality, their restrictions to the nonnegative shell are
//! well behaved, so a multi-start pattern search is enough: each sweep
//! perturbs one parameter at a time by `±δ`, the step is halved whenever a
//! full sweep brings no improvement, and independent restarts guard
//! against stray local maxima. Runs are deterministic for a fixed seed.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Step-control parameters for a single pattern search.
#[derive(Clone, Debug)]
pub struct PatternSpec {
    /// Initial step, as a fraction of each parameter's `step_scale`.
    pub delta_init: f64,
    /// The search stops (converged) once the step falls below this value.
    pub delta_min: f64,
    /// Hard sweep budget; exhausting it flags non-convergence.
    pub max_sweeps: usize,
}

impl Default for PatternSpec {
    fn default() -> Self {
        PatternSpec {
            delta_init: 0.4,
            delta_min: 1e-9,
            max_sweeps: 600,
        }
    }
}

/// Result of a multi-start maximization.
#[derive(Clone, Debug)]
pub struct MaxOutcome {
    /// Best objective value across restarts.
    pub value: f64,
    /// Parameter vector attaining `value` (first argmax found).
    pub argmax: Vec<f64>,
    /// Whether the winning restart reduced its step below `delta_min`
    /// within the sweep budget.
    pub converged: bool,
    /// Best minus second-best restart value; near zero when independent
    /// restarts agree on the optimum, large when only one found it.
    /// Used as the uncertainty of sampled sup norms. Zero for a single
    /// restart (no dispersion information).
    pub spread: f64,
}

/// Maximizes `eval` from `start` by coordinate-wise pattern search.
///
/// `step_scale[i]` sets the natural magnitude of moves in parameter `i`
/// (for example `π` for a phase). Returns `(value, argmax, converged)`.
pub fn pattern_search_max<F: FnMut(&[f64]) -> f64>(
    mut eval: F,
    start: &[f64],
    step_scale: &[f64],
    spec: &PatternSpec,
) -> (f64, Vec<f64>, bool) {
    assert_eq!(start.len(), step_scale.len());
    let mut x = start.to_vec();
    let mut fx = eval(&x);
    let mut delta = spec.delta_init;
    let mut sweeps = 0;
    while delta >= spec.delta_min && sweeps < spec.max_sweeps {
        let mut improved = false;
        for i in 0..x.len() {
            for sign in [1.0, -1.0] {
                let old = x[i];
                x[i] = old + sign * delta * step_scale[i];
                let fc = eval(&x);
                if fc > fx {
                    fx = fc;
                    improved = true;
                } else {
                    x[i] = old;
                }
            }
        }
        if !improved {
            delta *= 0.5;
        }
        sweeps += 1;
    }
    (fx, x, delta < spec.delta_min)
}

/// Runs [`pattern_search_max`] from each start and aggregates the results.
pub fn multistart_max<F: FnMut(&[f64]) -> f64>(
    mut eval: F,
    starts: &[Vec<f64>],
    step_scale: &[f64],
    spec: &PatternSpec,
) -> MaxOutcome {
    assert!(!starts.is_empty(), "multistart_max needs at least one start");
    let mut best_value = f64::NEG_INFINITY;
    let mut second_value = f64::NEG_INFINITY;
    let mut best_arg = starts[0].clone();
    let mut best_converged = false;
    for start in starts {
        let (v, arg, conv) = pattern_search_max(&mut eval, start, step_scale, spec);
        if v > best_value {
            second_value = best_value;
            best_value = v;
            best_arg = arg;
            best_converged = conv;
        } else if v > second_value {
            second_value = v;
        }
    }
    let spread = if second_value.is_finite() {
        best_value - second_value
    } else {
        0.0
    };
    MaxOutcome {
        value: best_value,
        argmax: best_arg,
        converged: best_converged,
        spread,
    }
}

/// Deterministic start directions on the nonnegative orthant: the basis
/// vectors, the uniform direction, then seeded random directions with
/// components in `[0.1, 1)` (bounded away from zero so the projection
/// onto a norm sphere never degenerates).
pub fn nonneg_starts(dim: usize, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut starts = Vec::with_capacity(count.max(1));
    for i in 0..count.max(1) {
        if i < dim {
            let mut e = vec![0.0; dim];
            e[i] = 1.0;
            starts.push(e);
        } else if i == dim {
            starts.push(vec![1.0; dim]);
        } else {
            starts.push((0..dim).map(|_| rng.random_range(0.1..1.0)).collect());
        }
    }
    starts
}
