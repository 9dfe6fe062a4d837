//! Bracketed root finding: bisection and a safeguarded Newton/bisection hybrid.
//!
//! Every solver here requires a sign-changing bracket up front, so convergence
//! is guaranteed for continuous functions; Newton steps are accepted only while
//! they stay inside the current bracket and keep shrinking it.

use crate::error::{Error, Result};

/// Stopping rule shared by the solvers.
#[derive(Debug, Clone, Copy)]
pub struct StopRule {
    /// Absolute tolerance on the bracket width.
    pub x_abs: f64,
    /// Relative tolerance on the residual, scaled by max(1, |target scale|).
    pub f_rel: f64,
    /// Iteration cap; exceeding it is a convergence error.
    pub max_iter: usize,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            x_abs: 1e-13,
            f_rel: 1e-12,
            max_iter: 200,
        }
    }
}

/// Plain bisection on `[lo, hi]`; `f(lo)` and `f(hi)` must differ in sign.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64, rule: StopRule) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    debug_assert!(flo.signum() != fhi.signum(), "bisect needs a sign change");
    for _ in 0..rule.max_iter {
        let mid = 0.5 * (lo + hi);
        if (hi - lo).abs() < rule.x_abs || mid == lo || mid == hi {
            return Ok(mid);
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == flo.signum() {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    Err(Error::Convergence {
        iterations: rule.max_iter,
        last_x: 0.5 * (lo + hi),
    })
}

/// Safeguarded Newton on a sign-changing bracket.
///
/// `eval` returns `(f(x), f'(x))`. A Newton step is taken when it lands strictly
/// inside the bracket; otherwise the step falls back to bisection. The bracket
/// therefore never widens and the worst case degrades to bisection.
pub fn newton_bisect<F: Fn(f64) -> (f64, f64)>(
    eval: F,
    mut lo: f64,
    mut hi: f64,
    scale: f64,
    rule: StopRule,
) -> Result<f64> {
    let (mut flo, _) = eval(lo);
    let (fhi, _) = eval(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    debug_assert!(
        flo.signum() != fhi.signum(),
        "newton_bisect needs a sign change: f({lo}) = {flo}, f({hi}) = {fhi}"
    );

    let f_tol = rule.f_rel * scale.abs().max(1.0);
    let mut x = 0.5 * (lo + hi);
    for _ in 0..rule.max_iter {
        let (fx, dfx) = eval(x);
        if fx == 0.0 || fx.abs() < f_tol {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        if (hi - lo).abs() < rule.x_abs {
            return Ok(0.5 * (lo + hi));
        }
        let newton = x - fx / dfx;
        x = if dfx.is_finite() && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if x == lo || x == hi {
            // bracket has collapsed to adjacent floats
            return Ok(x);
        }
    }
    Err(Error::Convergence {
        iterations: rule.max_iter,
        last_x: x,
    })
}
