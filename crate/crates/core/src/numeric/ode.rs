//! Adaptive Dormand–Prince 5(4) integrator for small autonomous complex systems
//! whose right-hand side involves a non-integer power of the first component.
//!
//! The solver keeps the unwrapped argument of component 0 along the path so
//! the right-hand side can evaluate `z^e` on a continuous branch.

use crate::error::{Error, Result};
use crate::numeric::cplx::unwrap;
use num_complex::Complex64;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

pub type State<const N: usize> = [Complex64; N];

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_steps: 200_000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct OdeEnd<const N: usize> {
    pub y: State<N>,
    /// Unwrapped argument of `y[0]` at the end of the path.
    pub arg: f64,
    pub steps: usize,
}

#[inline]
fn comb<const N: usize>(y: &State<N>, h: f64, terms: &[(f64, &State<N>)]) -> State<N> {
    let mut out = *y;
    for (c, k) in terms {
        for i in 0..N {
            out[i] += h * *c * k[i];
        }
    }
    out
}

/// Integrates `y' = f(y, arg_ref)` from 0 to `span`.
///
/// `arg0` is the branch reference for `y[0]` when it starts at the origin.
pub fn integrate<const N: usize, F>(f: F, y0: State<N>, arg0: f64, span: f64, opts: OdeOptions) -> Result<OdeEnd<N>>
where
    F: Fn(&State<N>, f64) -> State<N>,
{
    let mut y = y0;
    let mut arg = if y0[0].norm() > 0.0 {
        unwrap(y0[0].arg(), arg0)
    } else {
        arg0
    };
    if span == 0.0 {
        return Ok(OdeEnd { y, arg, steps: 0 });
    }
    let mut x = 0.0;
    let mut k1 = f(&y, arg);
    let rate = k1.iter().map(|k| k.norm()).fold(0.0, f64::max);
    let mut h = if rate > 0.0 {
        (span * 1e-2).min(1e-2 / rate).max(span * 1e-10)
    } else {
        span * 1e-3
    };
    let mut steps = 0;
    while x < span {
        if steps >= opts.max_steps {
            return Err(Error::NonConvergence {
                op: "ode::integrate",
                iterations: steps,
                residual: span - x,
            });
        }
        let last = x + h >= span;
        if last {
            h = span - x;
        }
        let k2 = f(&comb(&y, h, &[(A21, &k1)]), arg);
        let k3 = f(&comb(&y, h, &[(A31, &k1), (A32, &k2)]), arg);
        let k4 = f(&comb(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]), arg);
        let k5 = f(&comb(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]), arg);
        let k6 = f(
            &comb(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
            arg,
        );
        let y_new = comb(&y, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
        steps += 1;
        if y_new.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            h *= 0.2;
            continue;
        }
        let k7 = f(&y_new, arg);
        let mut en: f64 = 0.0;
        for i in 0..N {
            let err = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] + E7 * k7[i]);
            let sc = opts.abs_tol + opts.rel_tol * y[i].norm().max(y_new[i].norm());
            en = en.max(err.norm() / sc);
        }
        if en <= 1.0 {
            x = if last { span } else { x + h };
            y = y_new;
            if y[0].norm() > 0.0 {
                arg = unwrap(y[0].arg(), arg);
            }
            k1 = k7;
        }
        let fac = if en == 0.0 {
            5.0
        } else {
            (0.9 * en.powf(-0.2)).clamp(0.2, 5.0)
        };
        h *= fac;
    }
    Ok(OdeEnd { y, arg, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_growth() {
        let lam = Complex64::new(-0.5, 3.0);
        let end = integrate(
            |y: &State<1>, _| [lam * y[0]],
            [Complex64::new(1.0, 0.0)],
            0.0,
            2.0,
            OdeOptions::default(),
        )
        .unwrap();
        let exact = (2.0 * lam).exp();
        assert!((end.y[0] - exact).norm() < 1e-10 * exact.norm());
    }

    #[test]
    fn riccati_matches_tanh() {
        // y' = λ - y², y(0)=0 gives y = √λ tanh(√λ x)
        let lam = Complex64::new(4.0, 7.0);
        let end = integrate(
            |y: &State<1>, _| [lam - y[0] * y[0]],
            [Complex64::new(0.0, 0.0)],
            lam.arg(),
            1.0,
            OdeOptions::default(),
        )
        .unwrap();
        let s = lam.sqrt();
        let exact = s * s.tanh();
        assert!(
            (end.y[0] - exact).norm() < 1e-10 * exact.norm(),
            "{:?} vs {exact}",
            end.y
        );
    }

    #[test]
    fn coupled_quadrature_component() {
        // y0' = 1, y1' = y0  ⇒ y1(2) = 2
        let end = integrate(
            |y: &State<2>, _| [Complex64::new(1.0, 0.0), y[0]],
            [Complex64::new(0.0, 0.0); 2],
            0.0,
            2.0,
            OdeOptions::default(),
        )
        .unwrap();
        assert!((end.y[1].re - 2.0).abs() < 1e-12);
    }
}
