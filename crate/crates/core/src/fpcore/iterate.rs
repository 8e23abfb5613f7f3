use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Slack allowed when checking that a map stays inside its box.
const BOX_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FPConfig {
    pub step_eps: f64,
    pub tol_delta: f64,
    pub window_k: usize,
    pub max_iters: usize,
}

impl Default for FPConfig {
    fn default() -> Self {
        FPConfig { step_eps: 0.5, tol_delta: 1e-4, window_k: 100, max_iters: 100_000 }
    }
}

impl FPConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.step_eps > 0.0 && self.step_eps <= 1.0) {
            return Err(Error::InvalidParams(format!("step_eps = {} not in (0, 1]", self.step_eps)));
        }
        if self.tol_delta.is_nan() || self.tol_delta <= 0.0 {
            return Err(Error::InvalidParams("tol_delta must be positive".into()));
        }
        if self.window_k == 0 || self.max_iters < self.window_k {
            return Err(Error::InvalidParams("need 1 <= window_k <= max_iters".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FPResult {
    pub solution: Vec<f64>,
    pub iterations: usize,
    /// `max_i |f_i(x) - x_i|` at the returned point.
    pub residual: f64,
    pub converged: bool,
}

fn eval_checked<F>(map: &mut F, x: &[f64], out: &mut [f64], upper: &[f64]) -> Result<()>
where
    F: FnMut(&[f64], &mut [f64]),
{
    map(x, out);
    for (i, (v, &u)) in out.iter_mut().zip(upper).enumerate() {
        let slack = BOX_SLACK * (1.0 + u.abs());
        if !(*v >= -slack && *v <= u + slack) {
            return Err(Error::BoxViolation { index: i, value: *v, upper: u });
        }
        *v = v.clamp(0.0, u);
    }
    Ok(())
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Damped iteration `x <- x + eps (f(x) - x)` started at the top of the box.
///
/// Stops once `sum_i |x_i^{t+1} - x_i^t| < n * tol_delta` has held for
/// `window_k` consecutive steps and the residual `max_i |f_i(x) - x_i|` is at
/// most `n * tol_delta`. `map` writes `f(x)` into its second argument.
pub fn iterate_fp<F>(mut map: F, box_upper: &[f64], cfg: &FPConfig) -> Result<FPResult>
where
    F: FnMut(&[f64], &mut [f64]),
{
    cfg.validate()?;
    let n = box_upper.len();
    let bound = n as f64 * cfg.tol_delta;
    let mut x = box_upper.to_vec();
    let mut fx = vec![0.0; n];
    let mut streak = 0;
    for t in 1..=cfg.max_iters {
        eval_checked(&mut map, &x, &mut fx, box_upper)?;
        let mut moved = 0.0;
        for (xi, &fi) in x.iter_mut().zip(&fx) {
            let step = cfg.step_eps * (fi - *xi);
            moved += step.abs();
            *xi += step;
        }
        streak = if moved < bound { streak + 1 } else { 0 };
        if streak >= cfg.window_k {
            eval_checked(&mut map, &x, &mut fx, box_upper)?;
            let residual = max_gap(&x, &fx);
            if residual <= bound {
                return Ok(FPResult { solution: x, iterations: t, residual, converged: true });
            }
            streak = 0;
        }
    }
    eval_checked(&mut map, &x, &mut fx, box_upper)?;
    let residual = max_gap(&x, &fx);
    Ok(FPResult { solution: x, iterations: cfg.max_iters, residual, converged: false })
}

/// Plain iteration `x <- f(x)` from `start` until `max_i |f_i(x) - x_i| < tol`.
pub fn picard<F>(mut map: F, start: &[f64], tol: f64, max_iters: usize) -> FPResult
where
    F: FnMut(&[f64], &mut [f64]),
{
    let mut x = start.to_vec();
    let mut fx = vec![0.0; x.len()];
    for t in 1..=max_iters {
        map(&x, &mut fx);
        let residual = max_gap(&x, &fx);
        std::mem::swap(&mut x, &mut fx);
        if residual < tol {
            return FPResult { solution: x, iterations: t, residual, converged: true };
        }
    }
    map(&x, &mut fx);
    let residual = max_gap(&x, &fx);
    FPResult { solution: x, iterations: max_iters, residual, converged: false }
}
