//! Kähler quotient of ℂ³ by a weighted circle action, in the affine chart
//! where one homogeneous coordinate is set to 1.
//!
//! With weights `w` and level `c`, the reduced potential is
//! `F = Σ e^{w_i τ}|z_i|² - c τ` where `τ` solves `Σ w_i e^{w_i τ}|z_i|² = c`.
//! Equal weights give a multiple of Fubini-Study; unequal weights do not give
//! a Bochner-Kähler metric and serve as a negative control.

use num_complex::Complex64;

use super::MetricField;
use crate::error::{Error, Result};
use crate::solve::bisect_newton;
use crate::structure_space::CMat;

/// `G_{ij̄} = δ_ij e^{w_i τ} - w_i w_j e^{(w_i + w_j) τ} z̄_i z_j / D`, with
/// `D = Σ_k w_k² e^{w_k τ}|z_k|²`. The homogeneous coordinate `chart` is set
/// to 1 and the other two, in order, are the chart coordinates.
pub fn weighted_reduction_metric(
    weights: [f64; 3],
    level: f64,
    chart: usize,
) -> Result<MetricField> {
    if weights.iter().any(|w| !(*w > 0.0)) || !(level > 0.0) {
        return Err(Error::Parameter(
            "weights and level must be positive".into(),
        ));
    }
    if chart > 2 {
        return Err(Error::Parameter("chart index must be 0, 1 or 2".into()));
    }
    let label = format!("reduction(weights={weights:?}, level={level}, chart={chart})");
    let free: Vec<usize> = (0..3).filter(|i| *i != chart).collect();
    let weights = [weights[free[0]], weights[free[1]], weights[chart]];
    Ok(MetricField::new(2, label, move |z: &[Complex64]| {
        let r2 = [z[0].norm_sqr(), z[1].norm_sqr(), 1.0];
        let mu = |t: f64| {
            (0..3)
                .map(|i| weights[i] * (weights[i] * t).exp() * r2[i])
                .sum::<f64>()
                - level
        };
        let dmu = |t: f64| {
            (0..3)
                .map(|i| weights[i].powi(2) * (weights[i] * t).exp() * r2[i])
                .sum::<f64>()
        };
        let (mut lo, mut hi) = (-1.0, 1.0);
        while mu(lo) > 0.0 {
            lo *= 2.0;
        }
        while mu(hi) < 0.0 {
            hi *= 2.0;
        }
        let tau = bisect_newton(mu, dmu, lo, hi)?;
        let e: Vec<f64> = (0..3).map(|i| (weights[i] * tau).exp()).collect();
        let d = dmu(tau);
        Ok(CMat::from_fn(2, 2, |i, j| {
            let diag = if i == j { e[i] } else { 0.0 };
            Complex64::new(diag, 0.0)
                - z[i].conj() * z[j] * (weights[i] * weights[j] * e[i] * e[j] / d)
        }))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_weights_is_fubini_study() {
        let g = weighted_reduction_metric([1.0, 1.0, 1.0], 1.0, 2).unwrap();
        let z = [Complex64::new(0.4, -0.3), Complex64::new(1.1, 0.2)];
        let r2: f64 = z.iter().map(|x| x.norm_sqr()).sum();
        let gz = g.eval(&z).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let d = if i == j { 1.0 / (1.0 + r2) } else { 0.0 };
                let e = Complex64::new(d, 0.0) - z[i].conj() * z[j] / ((1.0 + r2) * (1.0 + r2));
                assert!((gz[(i, j)] - e).norm() < 1e-13);
            }
        }
    }
}
