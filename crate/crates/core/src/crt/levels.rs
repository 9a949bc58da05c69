use super::ExcursionGrid;
use crate::error::{Error, Result};

/// `(1/ε) Leb{s : a - ε < H_s ≤ a}` with Lebesgue measure counted on cells.
pub fn occupation_local_time(g: &ExcursionGrid, a: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < a) {
        return Err(Error::domain(
            "occupation_local_time",
            format!("need 0 < eps < a (eps={eps}, a={a})"),
        ));
    }
    let n = g.n();
    let hits = g.h[..n].iter().filter(|&&x| x > a - eps && x <= a).count();
    Ok(hits as f64 / (n as f64 * eps))
}

/// Number of excursions of `H` above `a` whose maximum exceeds `a + ε`.
/// Two grid points above `a` belong to the same excursion only if the path
/// stays above `a` on the cell between them.
pub fn count_high_excursions(g: &ExcursionGrid, a: f64, eps: f64) -> Result<usize> {
    if !(a > 0.0 && eps > 0.0) {
        return Err(Error::domain(
            "count_high_excursions",
            format!("need a, eps > 0 (a={a}, eps={eps})"),
        ));
    }
    let mut count = 0;
    let mut run_max: Option<f64> = None;
    for (i, &x) in g.h.iter().enumerate() {
        let joined = i > 0 && g.gaps[i - 1] > a;
        if !joined {
            if run_max.is_some_and(|m| m > a + eps) {
                count += 1;
            }
            run_max = None;
        }
        if x > a {
            run_max = Some(run_max.map_or(x, |m| m.max(x)));
        }
    }
    if run_max.is_some_and(|m| m > a + eps) {
        count += 1;
    }
    Ok(count)
}
