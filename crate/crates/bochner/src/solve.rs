//! Scalar implicit equations: bracketed bisection followed by Newton.

use crate::error::{Error, Result};

/// Solves `f(x) = 0` on `[lo, hi]` where `f(lo)` and `f(hi)` have opposite
/// signs. Bisects until the bracket is narrower than `1e-3 (1 + |x|)`, then
/// runs Newton with `df`, falling back to bisection if a step leaves the
/// bracket.
pub fn bisect_newton<F, D>(f: F, df: D, mut lo: f64, mut hi: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::Numerical(format!(
            "root not bracketed on [{lo}, {hi}]: f = {flo}, {fhi}"
        )));
    }
    while hi - lo > 1e-3 * (1.0 + lo.abs().max(hi.abs())) {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == flo.signum() {
            lo = x;
        } else {
            hi = x;
        }
        let d = df(x);
        let mut nx = x - fx / d;
        if !(nx > lo && nx < hi) || !nx.is_finite() {
            nx = 0.5 * (lo + hi);
        }
        if (nx - x).abs() <= 4.0 * f64::EPSILON * (1.0 + x.abs()) {
            return Ok(nx);
        }
        x = nx;
    }
    Ok(x)
}
