use crate::{Error, Result};

/// Default residual target for the limit systems.
pub const LIMIT_TOL: f64 = 1e-12;

const PICARD_CAP: usize = 200_000;
const SWEEP_CAP: usize = 10_000;
const BISECTION_STEPS: usize = 200;

fn residual<F: FnMut(&[f64]) -> Vec<f64>>(map: &mut F, x: &[f64]) -> f64 {
    map(x).iter().zip(x).map(|(f, x)| (f - x).abs()).fold(0.0, f64::max)
}

/// Greatest fixed point of a monotone map on `[0, box_upper]` with `k <= 3`.
///
/// Picard from the upper corner; if that stalls, Gauss-Seidel sweeps where
/// each coordinate is solved exactly by bisection with the others held fixed.
pub fn solve_limit_system<F>(mut map: F, box_upper: &[f64], tol: f64) -> Result<Vec<f64>>
where
    F: FnMut(&[f64]) -> Vec<f64>,
{
    let k = box_upper.len();
    if k == 0 || k > 3 {
        return Err(Error::InvalidParams(format!("limit systems have 1 to 3 coordinates, got {k}")));
    }
    if box_upper.iter().any(|u| !(u.is_finite() && *u >= 0.0)) {
        return Err(Error::InvalidParams("box bounds must be finite and nonnegative".into()));
    }
    let clip = |x: Vec<f64>| -> Vec<f64> {
        x.into_iter().zip(box_upper).map(|(v, &u)| v.clamp(0.0, u)).collect()
    };

    let mut x = box_upper.to_vec();
    for _ in 0..PICARD_CAP {
        let fx = clip(map(&x));
        debug_assert!(
            fx.iter().zip(&x).all(|(f, x)| *f <= x + 1e-9 * (1.0 + x.abs())),
            "Picard iterates from the upper corner must not increase"
        );
        let gap = fx.iter().zip(&x).map(|(f, x)| (f - x).abs()).fold(0.0, f64::max);
        x = fx;
        if gap < tol && residual(&mut map, &x) < tol {
            return Ok(x);
        }
    }

    for _ in 0..SWEEP_CAP {
        for i in 0..k {
            let mut probe = x.clone();
            let mut g = |t: f64| {
                probe[i] = t;
                map(&probe)[i] - t
            };
            let (mut lo, mut hi) = (0.0, box_upper[i]);
            if g(hi) >= 0.0 {
                x[i] = hi;
                continue;
            }
            if g(lo) < 0.0 {
                x[i] = lo;
                continue;
            }
            for _ in 0..BISECTION_STEPS {
                let mid = 0.5 * (lo + hi);
                if mid <= lo || mid >= hi {
                    break;
                }
                if g(mid) >= 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            x[i] = lo;
        }
        if residual(&mut map, &x) < tol {
            return Ok(x);
        }
    }
    let r = residual(&mut map, &x);
    Err(Error::NonConvergence { iterations: PICARD_CAP + SWEEP_CAP, residual: r })
}
