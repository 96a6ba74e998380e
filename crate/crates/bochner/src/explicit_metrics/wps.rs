//! Metrics on the affine chart ℂᵐ of a weighted projective space.
//!
//! Weights are `ρ = (ρ₁, …, ρ_{m+1})`; the chart coordinates are indexed by
//! `α = 2..=m+1` and stored as `z[α - 2]`.

use num_complex::Complex64;

use super::MetricField;
use crate::error::{Error, Result};
use crate::solve::bisect_newton;
use crate::structure_space::CMat;

fn check_rho(rho: &[f64]) -> Result<()> {
    if rho.len() < 2 {
        return Err(Error::Parameter("need at least two weights".into()));
    }
    if rho.iter().any(|r| !(*r > 0.0 && r.is_finite())) {
        return Err(Error::Parameter("weights must be positive".into()));
    }
    Ok(())
}

/// The root `s ∈ (0, 1]` of `s + Σ_α |z_α|² s^{ρ_α/ρ₁} = 1`.
pub fn wps_s(z: &[Complex64], rho: &[f64]) -> Result<f64> {
    check_rho(rho)?;
    if z.len() + 1 != rho.len() {
        return Err(Error::Dimension(format!(
            "{} weights need {} coordinates, got {}",
            rho.len(),
            rho.len() - 1,
            z.len()
        )));
    }
    let e: Vec<f64> = rho[1..].iter().map(|r| r / rho[0]).collect();
    let r2: Vec<f64> = z.iter().map(|c| c.norm_sqr()).collect();
    if r2.iter().all(|x| *x == 0.0) {
        return Ok(1.0);
    }
    let f = |s: f64| {
        s + r2
            .iter()
            .zip(&e)
            .map(|(x, ea)| x * s.powf(*ea))
            .sum::<f64>()
            - 1.0
    };
    let df = |s: f64| {
        1.0 + r2
            .iter()
            .zip(&e)
            .map(|(x, ea)| ea * x * s.powf(ea - 1.0))
            .sum::<f64>()
    };
    bisect_newton(f, df, 0.0, 1.0)
}

/// The Bochner-Kähler orbifold metric in the affine chart. With all weights
/// equal to `ρ₁` it is `1/ρ₁` times the Fubini-Study metric.
pub fn wps_metric(rho: &[f64]) -> Result<MetricField> {
    check_rho(rho)?;
    let rho = rho.to_vec();
    let m = rho.len() - 1;
    let label = format!("wps(rho={rho:?})");
    Ok(MetricField::new(m, label, move |z: &[Complex64]| {
        let s = wps_s(z, &rho)?;
        let r1 = rho[0];
        let sp: Vec<f64> = rho[1..].iter().map(|r| s.powf(r / r1)).collect();
        // D = ρ₁ + Σ (ρ_β - ρ₁) |z_β|² s^{ρ_β/ρ₁}; then w₁ = s/D and w₀ = -1/D
        let d = r1
            + rho[1..]
                .iter()
                .zip(z)
                .zip(&sp)
                .map(|((r, zb), p)| (r - r1) * zb.norm_sqr() * p)
                .sum::<f64>();
        let (w1, w0) = (s / d, -1.0 / d);
        let ginv = CMat::from_fn(m, m, |i, j| {
            let (ra, rb) = (rho[i + 1], rho[j + 1]);
            let diag = if i == j { d / sp[i] } else { 0.0 };
            let c = (ra - r1) * (rb - r1) / (r1 * r1 * w0) + ra * rb / (r1 * r1 * w1);
            Complex64::new(diag, 0.0) + z[i].conj() * z[j] * c
        });
        ginv.try_inverse()
            .ok_or_else(|| Error::Numerical("G^{αβ} is not invertible".into()))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn s_closed_forms() {
        assert_eq!(wps_s(&[c(0.0, 0.0)], &[1.0, 2.0]).unwrap(), 1.0);
        let z = [c(0.7, -0.4)];
        let r2 = z[0].norm_sqr();
        let oracle = (-1.0 + (1.0 + 4.0 * r2).sqrt()) / (2.0 * r2);
        assert_abs_diff_eq!(wps_s(&z, &[1.0, 2.0]).unwrap(), oracle, epsilon = 1e-14);
        let z = [c(0.3, 0.1), c(-1.2, 0.5)];
        let r2: f64 = z.iter().map(|x| x.norm_sqr()).sum();
        assert_abs_diff_eq!(
            wps_s(&z, &[2.0, 2.0, 2.0]).unwrap(),
            1.0 / (1.0 + r2),
            epsilon = 1e-14
        );
    }

    #[test]
    fn equal_weights_fubini_study() {
        let g = wps_metric(&[1.0, 1.0, 1.0]).unwrap();
        let z = [c(0.3, 0.1), c(-1.2, 0.5)];
        let r2: f64 = z.iter().map(|x| x.norm_sqr()).sum();
        let gz = g.eval(&z).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                let d = if i == j { 1.0 / (1.0 + r2) } else { 0.0 };
                let e = c(d, 0.0) - z[i].conj() * z[j] / ((1.0 + r2) * (1.0 + r2));
                assert!((gz[(i, j)] - e).norm() < 1e-10);
            }
        }
    }
}
