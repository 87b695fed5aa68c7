//! Adaptive explicit Runge-Kutta integration (Dormand-Prince 5(4)).
//!
//! Steps are clipped so every requested sample lands on a step boundary,
//! which keeps the sampled states at full integrator accuracy without an
//! interpolant. Non-stiff desk-scale systems only.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OdeError {
    #[error("step count exceeded {max} before reaching the target")]
    MaxStepsExceeded { max: usize },
    #[error("step size underflowed at t = {t}")]
    StepUnderflow { t: f64 },
    #[error("non-finite state encountered at t = {t}")]
    NonFinite { t: f64 },
    #[error("sample points must increase starting from t0")]
    UnorderedTargets,
}

#[derive(Clone, Copy, Debug)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rel_tol: 1e-10,
            abs_tol: 1e-12,
            max_steps: 2_000_000,
        }
    }
}

/// Integration output: one state per requested sample plus the accepted-step
/// count.
#[derive(Clone, Debug)]
pub struct OdePath {
    pub states: Vec<Vec<f64>>,
    pub steps_accepted: usize,
}

// Dormand-Prince 5(4) tableau.
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
// difference between the 5th- and 4th-order weights
const E: [f64; 7] = [
    35.0 / 384.0 - 5179.0 / 57600.0,
    0.0,
    500.0 / 1113.0 - 7571.0 / 16695.0,
    125.0 / 192.0 - 393.0 / 640.0,
    -2187.0 / 6784.0 + 92097.0 / 339200.0,
    11.0 / 84.0 - 187.0 / 2100.0,
    -1.0 / 40.0,
];

/// Integrates `y' = f(t, y)` from `t0`, returning the state at each target.
///
/// Targets must be non-decreasing and not precede `t0`; a target equal to the
/// current time repeats the current state.
pub fn integrate_path<F>(
    mut f: F,
    t0: f64,
    y0: &[f64],
    targets: &[f64],
    opts: &OdeOptions,
) -> Result<OdePath, OdeError>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let dim = y0.len();
    let mut t = t0;
    let mut y = y0.to_vec();
    let mut k: Vec<Vec<f64>> = vec![vec![0.0; dim]; 7];
    let mut y_stage = vec![0.0; dim];
    let mut steps_accepted = 0usize;
    let mut states = Vec::with_capacity(targets.len());

    f(t, &y, &mut k[0]);
    let mut h = initial_step(t, &y, &k[0], opts);

    let mut last = t0;
    for &target in targets {
        if target < last {
            return Err(OdeError::UnorderedTargets);
        }
        last = target;
        while t < target {
            if steps_accepted >= opts.max_steps {
                return Err(OdeError::MaxStepsExceeded {
                    max: opts.max_steps,
                });
            }
            let clipped = target - t <= h;
            let mut step = h.min(target - t);
            if step <= f64::EPSILON * t.abs().max(1.0) {
                return Err(OdeError::StepUnderflow { t });
            }

            // stages 2..7; k[0] is fresh from the previous step (FSAL)
            for stage in 0..6 {
                for i in 0..dim {
                    let mut acc = 0.0;
                    for (j, kj) in k.iter().enumerate().take(stage + 1) {
                        acc += A[stage][j] * kj[i];
                    }
                    y_stage[i] = y[i] + step * acc;
                }
                f(t + C[stage] * step, &y_stage, &mut k.split_at_mut(stage + 1).1[0]);
            }

            // error estimate against the embedded 4th-order solution
            let mut err_norm_sq = 0.0;
            let mut y_new = vec![0.0; dim];
            for i in 0..dim {
                let mut acc = 0.0;
                for (j, kj) in k.iter().enumerate().take(6) {
                    acc += A[5][j] * kj[i];
                }
                y_new[i] = y[i] + step * acc;
                let mut e = 0.0;
                for (j, kj) in k.iter().enumerate() {
                    e += E[j] * kj[i];
                }
                e *= step;
                let scale = opts.abs_tol + opts.rel_tol * y[i].abs().max(y_new[i].abs());
                err_norm_sq += (e / scale) * (e / scale);
            }
            let err = (err_norm_sq / dim as f64).sqrt();

            if !err.is_finite() {
                return Err(OdeError::NonFinite { t });
            }

            if err <= 1.0 {
                t = if clipped { target } else { t + step };
                y = y_new;
                k.swap(0, 6); // FSAL: k7 = f(t+h, y_new)
                steps_accepted += 1;
            }
            let factor = if err == 0.0 {
                5.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 5.0)
            };
            step *= factor;
            h = step.max(f64::MIN_POSITIVE);
        }
        states.push(y.clone());
    }

    Ok(OdePath {
        states,
        steps_accepted,
    })
}

fn initial_step(t: f64, y: &[f64], dy: &[f64], opts: &OdeOptions) -> f64 {
    let norm_y = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    let norm_dy = dy.iter().map(|v| v * v).sum::<f64>().sqrt();
    let guess = if norm_dy > 1e-12 {
        0.01 * (norm_y.max(1.0) / norm_dy)
    } else {
        1e-3
    };
    let _ = t;
    guess.min(0.1).max(opts.abs_tol.max(1e-10))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_growth_matches_closed_form() {
        let opts = OdeOptions::default();
        let path = integrate_path(
            |_t, y, dy| dy[0] = y[0],
            0.0,
            &[1.0],
            &[0.5, 1.0, 2.0],
            &opts,
        )
        .unwrap();
        for (state, t) in path.states.iter().zip([0.5f64, 1.0, 2.0]) {
            assert!((state[0] - t.exp()).abs() < 1e-9 * t.exp());
        }
    }

    #[test]
    fn circular_motion_conserves_radius() {
        let opts = OdeOptions::default();
        let targets: Vec<f64> = (1..=100).map(|i| i as f64 * 0.2).collect();
        let path = integrate_path(
            |_t, y, dy| {
                dy[0] = -y[1];
                dy[1] = y[0];
            },
            0.0,
            &[1.0, 0.0],
            &targets,
            &opts,
        )
        .unwrap();
        for state in &path.states {
            let r = (state[0] * state[0] + state[1] * state[1]).sqrt();
            assert!((r - 1.0).abs() < 1e-8);
        }
        let end = path.states.last().unwrap();
        assert!((end[0] - 20.0f64.cos()).abs() < 1e-7);
        assert!((end[1] - 20.0f64.sin()).abs() < 1e-7);
    }

    #[test]
    fn coarse_tolerance_gives_visibly_larger_error() {
        let coarse = OdeOptions {
            rel_tol: 1e-2,
            abs_tol: 1e-2,
            ..OdeOptions::default()
        };
        let path = integrate_path(
            |_t, y, dy| {
                dy[0] = -y[1];
                dy[1] = y[0];
            },
            0.0,
            &[1.0, 0.0],
            &[10.0],
            &coarse,
        )
        .unwrap();
        let end = &path.states[0];
        let err = ((end[0] - 10.0f64.cos()).powi(2) + (end[1] - 10.0f64.sin()).powi(2)).sqrt();
        assert!(err > 1e-6, "coarse run unexpectedly accurate: {err:e}");
    }

    #[test]
    fn rejects_unordered_targets() {
        let opts = OdeOptions::default();
        let res = integrate_path(|_t, _y, dy| dy[0] = 0.0, 0.0, &[1.0], &[1.0, 0.5], &opts);
        assert!(matches!(res, Err(OdeError::UnorderedTargets)));
    }
}
