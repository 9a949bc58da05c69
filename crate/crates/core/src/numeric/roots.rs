use crate::error::{Error, Result};

/// Newton's method safeguarded by bisection on a bracket `[lo, hi]` where
/// `f(lo)` and `f(hi)` have opposite signs (or one vanishes).
///
/// `fdf` returns the value and the derivative. Iteration stops when the bracket
/// or the Newton step is below `x_tol·max(1,|x|)`.
pub fn newton_bracketed<F>(
    op: &'static str,
    fdf: F,
    mut lo: f64,
    mut hi: f64,
    x0: f64,
    x_tol: f64,
    max_iter: usize,
) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    let (flo, _) = fdf(lo);
    let (fhi, _) = fdf(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NonConvergence {
            op,
            iterations: 0,
            residual: flo.abs().min(fhi.abs()),
        });
    }
    // orient so that f(lo) < 0 < f(hi)
    if flo > 0.0 {
        std::mem::swap(&mut lo, &mut hi);
    }
    let mut x = if x0 > lo.min(hi) && x0 < lo.max(hi) {
        x0
    } else {
        0.5 * (lo + hi)
    };
    let mut last_f = f64::INFINITY;
    for _ in 0..max_iter {
        let (fx, dfx) = fdf(x);
        last_f = fx;
        if fx == 0.0 {
            return Ok(x);
        }
        if fx < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - fx / dfx;
        let inside = newton.is_finite() && (newton - lo) * (newton - hi) < 0.0;
        let next = if inside { newton } else { 0.5 * (lo + hi) };
        let step = (next - x).abs();
        x = next;
        let scale = x.abs().max(1.0);
        if step <= x_tol * scale || (hi - lo).abs() <= x_tol * scale {
            return Ok(x);
        }
    }
    Err(Error::NonConvergence {
        op,
        iterations: max_iter,
        residual: last_f.abs(),
    })
}
