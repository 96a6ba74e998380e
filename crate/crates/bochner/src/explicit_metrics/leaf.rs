//! The Hessian-type leaf metric `R_D(du, du) + R_D⁻¹(dθ, dθ)` over a momentum
//! cell and its holomorphic chart `z = ∇G(u) + iθ`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::MetricField;
use crate::cell_metric::{potential_gradient, r_d_faces};
use crate::classification::{cell_membership, Membership, MomentumCell};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::poly::RealPolynomial;
use crate::structure_space::CMat;

/// Leaf geometry over one cell whose `p_D` has only simple real roots.
#[derive(Debug, Clone)]
pub struct LeafChart {
    pub p_d: RealPolynomial,
    pub u_ref: Vec<f64>,
    pub x_ref: Vec<f64>,
    signs: Vec<f64>,
}

impl LeafChart {
    pub fn m(&self) -> usize {
        self.u_ref.len()
    }

    /// Block metric `diag(R_D(u), R_D(u)⁻¹)` in `(u, θ)` coordinates.
    pub fn real_metric(&self, u: &[f64]) -> Result<DMatrix<f64>> {
        let m = self.m();
        let r = r_d_faces(&self.p_d, u)?.matrix;
        let rinv = r
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::Singular("R_D is not invertible".into()))?;
        let mut g = DMatrix::zeros(2 * m, 2 * m);
        g.view_mut((0, 0), (m, m)).copy_from(&r);
        g.view_mut((m, m), (m, m)).copy_from(&rinv);
        Ok(g)
    }

    /// `z_j = ∂G/∂u_j + i θ_j`.
    pub fn to_chart(&self, u: &[f64], theta: &[f64]) -> Result<Vec<Complex64>> {
        let x = potential_gradient(&self.p_d, u)?;
        Ok(x.iter()
            .zip(theta)
            .map(|(a, b)| Complex64::new(*a, *b))
            .collect())
    }

    fn interior(&self, u: &[f64]) -> bool {
        // faces keep the sign they have at the reference point
        let faces = match crate::cell_metric::face_functionals(
            &self.p_d,
            &self
                .p_d
                .real_roots()
                .iter()
                .map(|r| r.0)
                .collect::<Vec<_>>(),
        ) {
            Ok(f) => f,
            Err(_) => return false,
        };
        faces
            .iter()
            .zip(&self.signs)
            .all(|(f, s)| f.eval(u) * s > 0.0)
    }

    fn newton_from(&self, u0: &[f64], x: &DVector<f64>) -> Result<Vec<f64>> {
        let mut u = DVector::from_column_slice(u0);
        let resid = |u: &DVector<f64>| -> Result<DVector<f64>> {
            Ok(x - potential_gradient(&self.p_d, u.as_slice())?)
        };
        let mut r = resid(&u)?;
        let scale = 1.0 + x.amax();
        for _ in 0..200 {
            if r.amax() <= 1e-14 * scale {
                return Ok(u.iter().copied().collect());
            }
            let h = r_d_faces(&self.p_d, u.as_slice())?.matrix;
            let step = h
                .lu()
                .solve(&r)
                .ok_or_else(|| Error::Singular("R_D is not invertible".into()))?;
            let mut lam = 1.0;
            let mut accepted = false;
            while lam > 1e-12 {
                let cand = &u + &step * lam;
                if self.interior(cand.as_slice()) {
                    if let Ok(rc) = resid(&cand) {
                        if rc.norm() < r.norm() || rc.amax() <= 1e-14 * scale {
                            u = cand;
                            r = rc;
                            accepted = true;
                            break;
                        }
                    }
                }
                lam *= 0.5;
            }
            if !accepted {
                // stagnated at rounding level or stuck at the image boundary
                if r.amax() <= 1e-11 * scale {
                    return Ok(u.iter().copied().collect());
                }
                return Err(Error::Domain(format!(
                    "Newton stalled; x = {:?} may lie outside the gradient image",
                    x.as_slice()
                )));
            }
        }
        Err(Error::Domain("Newton did not converge".into()))
    }

    /// Solves `∇G(u) = x` by damped Newton from the reference point, falling
    /// back to continuation along the segment from `∇G(u_ref)`.
    pub fn legendre_inverse(&self, x: &[f64]) -> Result<Vec<f64>> {
        let xt = DVector::from_column_slice(x);
        if let Ok(u) = self.newton_from(&self.u_ref, &xt) {
            return Ok(u);
        }
        let x0 = DVector::from_column_slice(&self.x_ref);
        for pieces in [8usize, 64] {
            let mut u = self.u_ref.clone();
            let mut ok = true;
            for j in 1..=pieces {
                let xj = &x0 + (&xt - &x0) * (j as f64 / pieces as f64);
                match self.newton_from(&u, &xj) {
                    Ok(v) => u = v,
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Ok(u);
            }
        }
        Err(Error::Domain(format!("x = {x:?} is outside the chart")))
    }

    /// The leaf metric pushed to the chart: `G_{jk̄}(z) = (R_D(u(Re z))⁻¹)_{jk}`.
    pub fn metric_field(&self) -> MetricField {
        let chart = self.clone();
        let m = self.m();
        MetricField::new(
            m,
            format!("leaf(p_D={})", self.p_d),
            move |z: &[Complex64]| {
                let x: Vec<f64> = z.iter().map(|c| c.re).collect();
                let u = chart.legendre_inverse(&x)?;
                let r = r_d_faces(&chart.p_d, &u)?.matrix;
                let rinv = r
                    .try_inverse()
                    .ok_or_else(|| Error::Singular("R_D is not invertible".into()))?;
                Ok(CMat::from_fn(m, m, |i, j| {
                    Complex64::new(rinv[(i, j)], 0.0)
                }))
            },
        )
    }
}

/// Builds the leaf chart over `cell`, anchored at the interior point `u`.
pub fn leaf_metric(cell: &MomentumCell, u: &[f64], tol: &Tolerances) -> Result<LeafChart> {
    let p_d = cell.p_d.clone();
    let rr = p_d.real_roots();
    if rr.len() != p_d.degree() || rr.iter().any(|r| r.1 != 1) {
        return Err(Error::Precondition(
            "the leaf chart needs p_D with only simple real roots".into(),
        ));
    }
    if cell_membership(cell, u, tol)? != Membership::Interior {
        return Err(Error::Domain(format!(
            "u = {u:?} is not interior to the cell"
        )));
    }
    let roots: Vec<f64> = rr.iter().map(|r| r.0).collect();
    let faces = crate::cell_metric::face_functionals(&p_d, &roots)?;
    let signs = faces.iter().map(|f| f.eval(u).signum()).collect();
    let x_ref = potential_gradient(&p_d, u)?.iter().copied().collect();
    Ok(LeafChart {
        p_d,
        u_ref: u.to_vec(),
        x_ref,
        signs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classification::classify_cells;

    #[test]
    fn legendre_round_trip_m1() {
        let pd = RealPolynomial::from_roots(&[1.0, 0.0, -1.0]);
        let cells = classify_cells(&pd).unwrap();
        let chart = leaf_metric(&cells[0], &[-0.5], &Tolerances::default()).unwrap();
        for u in [-0.9, -0.5, -0.1, -0.01] {
            let x = potential_gradient(&pd, &[u]).unwrap();
            let back = chart.legendre_inverse(x.as_slice()).unwrap();
            assert!((back[0] - u).abs() < 1e-9, "{u} -> {back:?}");
        }
        let g = chart.real_metric(&[-0.5]).unwrap();
        assert!((g[(0, 0)] - 2.0 / 3.0).abs() < 1e-14);
        assert!((g[(1, 1)] - 1.5).abs() < 1e-14);
    }
}
