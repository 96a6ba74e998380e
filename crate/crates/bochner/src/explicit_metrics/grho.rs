//! The complete torus-invariant family `g_ρ` on ℂⁿ.

use num_complex::Complex64;

use super::{norm_sq, MetricField};
use crate::error::{Error, Result};
use crate::solve::bisect_newton;
use crate::structure_space::CMat;

/// The root `s ≥ 0` of `s - Σ e^{-ρ_i s} |z_i|² = 0`.
pub fn grho_s(z: &[Complex64], rho: &[f64]) -> Result<f64> {
    if z.len() != rho.len() {
        return Err(Error::Dimension(format!(
            "z has {} entries, rho {}",
            z.len(),
            rho.len()
        )));
    }
    if rho.iter().any(|r| !(*r >= 0.0)) {
        return Err(Error::Parameter("rho entries must be nonnegative".into()));
    }
    let r2 = norm_sq(z);
    if r2 == 0.0 {
        return Ok(0.0);
    }
    if rho.iter().all(|r| *r == 0.0) {
        return Ok(r2);
    }
    let f = |s: f64| {
        s - z
            .iter()
            .zip(rho)
            .map(|(zi, r)| (-r * s).exp() * zi.norm_sqr())
            .sum::<f64>()
    };
    let df = |s: f64| {
        1.0 + z
            .iter()
            .zip(rho)
            .map(|(zi, r)| r * (-r * s).exp() * zi.norm_sqr())
            .sum::<f64>()
    };
    bisect_newton(f, df, 0.0, r2 + 1.0)
}

/// `g_ρ`: the inverse of `G^{ij} = S (δ^{ij} e^{ρ_i s} + (ρ_i + ρ_j + ρ_i ρ_j s) z̄_i z_j)`.
pub fn grho_metric(rho: &[f64]) -> Result<MetricField> {
    if rho.is_empty() {
        return Err(Error::Parameter("rho must be nonempty".into()));
    }
    if rho.iter().any(|r| !(*r >= 0.0)) {
        return Err(Error::Parameter("rho entries must be nonnegative".into()));
    }
    let rho = rho.to_vec();
    let n = rho.len();
    let label = format!("grho(rho={rho:?})");
    Ok(MetricField::new(n, label, move |z: &[Complex64]| {
        if rho.iter().all(|r| *r == 0.0) {
            return Ok(CMat::identity(n, n));
        }
        let s = grho_s(z, &rho)?;
        let big_s = 1.0
            + z.iter()
                .zip(&rho)
                .map(|(zi, r)| r * (-r * s).exp() * zi.norm_sqr())
                .sum::<f64>();
        let ginv = CMat::from_fn(n, n, |i, j| {
            let d = if i == j { (rho[i] * s).exp() } else { 0.0 };
            let c = rho[i] + rho[j] + rho[i] * rho[j] * s;
            (Complex64::new(d, 0.0) + z[i].conj() * z[j] * c) * big_s
        });
        ginv.try_inverse()
            .ok_or_else(|| Error::Numerical("G^{ij} is not invertible".into()))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn s_values() {
        let z = [Complex64::new(1.0, 0.0)];
        assert_abs_diff_eq!(
            grho_s(&z, &[1.0]).unwrap(),
            0.5671432904097838,
            epsilon = 1e-14
        );
        let z = [Complex64::new(0.3, 0.4), Complex64::new(-1.0, 0.2)];
        assert_eq!(grho_s(&z, &[0.0, 0.0]).unwrap(), norm_sq(&z));
        assert_eq!(
            grho_s(&[Complex64::new(0.0, 0.0); 2], &[1.0, 2.0]).unwrap(),
            0.0
        );
        let s = grho_s(&z, &[1.0, 2.0]).unwrap();
        let res = s - (-s).exp() * z[0].norm_sqr() - (-2.0 * s).exp() * z[1].norm_sqr();
        assert!(res.abs() < 1e-12);
    }

    #[test]
    fn flat_cases() {
        let g = grho_metric(&[0.0, 0.0]).unwrap();
        let z = [Complex64::new(3.0, -1.0), Complex64::new(0.5, 2.0)];
        assert_eq!(g.eval(&z).unwrap(), CMat::identity(2, 2));
        let g = grho_metric(&[1.0, 2.0]).unwrap();
        let g0 = g.eval(&[Complex64::new(0.0, 0.0); 2]).unwrap();
        assert!((g0 - CMat::identity(2, 2)).norm() < 1e-15);
    }
}
