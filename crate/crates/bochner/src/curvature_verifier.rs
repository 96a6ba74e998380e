//! Finite-difference Kähler curvature of a [`MetricField`], its Ricci and
//! scalar parts, the Bochner residual and the momentum polynomial read off
//! from the Ricci form.
//!
//! Conventions (pinned by [`calibrate`]): with `G` the matrix `G_{ij̄}` and
//! `R_{ij̄kl̄} = -∂_k∂_l̄ G_{ij̄} + G^{q̄p} ∂_k G_{iq̄} ∂_l̄ G_{pj̄}`, the contraction
//! `Ric_{kl̄} = G^{ij̄} R_{ij̄kl̄}` is reported as `ricci`. The Ricci form used
//! for eigenvalues is `ρ = 2 Ric` and the scalar curvature is `tr_G ρ`.

use nalgebra::{Cholesky, DMatrix};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::explicit_metrics::{rotsym_metric, MetricField, RotSymParams};
use crate::poly::RealPolynomial;
use crate::structure_space::CMat;

/// Convention constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Calibration {
    /// `ρ = ricci_factor · Ric`.
    pub ricci_factor: f64,
    /// `scalar = scalar_factor · tr_G Ric`.
    pub scalar_factor: f64,
}

/// The frozen calibration record.
pub const CALIBRATION: Calibration = Calibration {
    ricci_factor: 2.0,
    scalar_factor: 2.0,
};

/// A 4-index array `R_{ij̄kl̄}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Curvature4 {
    n: usize,
    data: Vec<Complex64>,
}

impl Curvature4 {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n * n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        ((i * self.n + j) * self.n + k) * self.n + l
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> Complex64 {
        self.data[self.idx(i, j, k, l)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: Complex64) {
        let p = self.idx(i, j, k, l);
        self.data[p] = v;
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Largest of the defects of `R_{ij̄kl̄} = R_{kj̄il̄}`, `= R_{il̄kj̄}` and
    /// `conj R_{ij̄kl̄} = R_{ji̅lk̄}`, relative to `1 + ‖R‖`.
    pub fn symmetry_defect(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let r = self.get(i, j, k, l);
                        worst = worst
                            .max((r - self.get(k, j, i, l)).norm())
                            .max((r - self.get(i, l, k, j)).norm())
                            .max((r.conj() - self.get(j, i, l, k)).norm());
                    }
                }
            }
        }
        worst / (1.0 + self.norm())
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }
}

struct Derivs {
    g: CMat,
    /// `∂_k G`
    d: Vec<CMat>,
    /// `∂_l̄ G`
    dbar: Vec<CMat>,
    /// `∂_k ∂_l̄ G` at `[k][l]`
    ddbar: Vec<Vec<CMat>>,
}

fn shifted(z: &[Complex64], moves: &[(usize, f64)]) -> Vec<Complex64> {
    let q = z.len();
    let mut out = z.to_vec();
    for &(r, h) in moves {
        if r < q {
            out[r].re += h;
        } else {
            out[r - q].im += h;
        }
    }
    out
}

/// First and second real partials with fourth-order stencils at step `h`.
fn real_partials(
    field: &MetricField,
    z: &[Complex64],
    h: f64,
    g0: &CMat,
) -> Result<(Vec<CMat>, Vec<Vec<CMat>>)> {
    let dim = 2 * z.len();
    let ev = |moves: &[(usize, f64)]| field.eval(&shifted(z, moves));
    let mut first = Vec::with_capacity(dim);
    let mut second = vec![vec![CMat::zeros(0, 0); dim]; dim];
    for r in 0..dim {
        let p1 = ev(&[(r, h)])?;
        let m1 = ev(&[(r, -h)])?;
        let p2 = ev(&[(r, 2.0 * h)])?;
        let m2 = ev(&[(r, -2.0 * h)])?;
        first.push(((&p1 - &m1) * c(8.0) - (&p2 - &m2)) * c(1.0 / (12.0 * h)));
        second[r][r] =
            ((&p1 + &m1) * c(16.0) - (&p2 + &m2) - g0 * c(30.0)) * c(1.0 / (12.0 * h * h));
    }
    for r in 0..dim {
        for s in (r + 1)..dim {
            let g = |t: f64| -> Result<CMat> {
                Ok(
                    ev(&[(r, t), (s, t)])? - ev(&[(r, t), (s, -t)])? - ev(&[(r, -t), (s, t)])?
                        + ev(&[(r, -t), (s, -t)])?,
                )
            };
            let v = (g(h)? * c(16.0) - g(2.0 * h)?) * c(1.0 / (48.0 * h * h));
            second[s][r] = v.clone();
            second[r][s] = v;
        }
    }
    Ok((first, second))
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn derivatives(field: &MetricField, z: &[Complex64], h0: f64) -> Result<Derivs> {
    let q = z.len();
    let g = field.eval(z)?;
    let (f1, s1) = real_partials(field, z, h0, &g)?;
    let (f2, s2) = real_partials(field, z, 0.5 * h0, &g)?;
    // Richardson on the fourth-order stencils
    let rich = |a: &CMat, b: &CMat| (b * c(16.0) - a) * c(1.0 / 15.0);
    let first: Vec<CMat> = f1.iter().zip(&f2).map(|(a, b)| rich(a, b)).collect();
    let second: Vec<Vec<CMat>> = s1
        .iter()
        .zip(&s2)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(a, b)| rich(a, b)).collect())
        .collect();
    let i = Complex64::new(0.0, 1.0);
    let d = (0..q)
        .map(|k| (&first[k] - &first[q + k] * i) * c(0.5))
        .collect();
    let dbar = (0..q)
        .map(|k| (&first[k] + &first[q + k] * i) * c(0.5))
        .collect();
    let ddbar = (0..q)
        .map(|k| {
            (0..q)
                .map(|l| {
                    let re = &second[k][l] + &second[q + k][q + l];
                    let im = &second[k][q + l] - &second[q + k][l];
                    (re + im * i) * c(0.25)
                })
                .collect()
        })
        .collect();
    Ok(Derivs { g, d, dbar, ddbar })
}

/// Default finite-difference base step `1e-3 (1 + |z|)`.
pub fn default_step(z: &[Complex64]) -> f64 {
    1e-3 * (1.0 + z.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt())
}

fn inverse(g: &CMat) -> Result<CMat> {
    g.clone()
        .try_inverse()
        .ok_or_else(|| Error::Singular("metric matrix is singular".into()))
}

/// `R_{ij̄kl̄}` at `z` together with `G(z)`.
pub fn kahler_curvature(
    field: &MetricField,
    z: &[Complex64],
    step: Option<f64>,
) -> Result<(Curvature4, CMat)> {
    let h0 = step.unwrap_or_else(|| default_step(z));
    if !(h0 > 0.0) {
        return Err(Error::Parameter("step must be positive".into()));
    }
    let dv = derivatives(field, z, h0).map_err(|e| match e {
        Error::Domain(m) => {
            Error::Domain(format!("step {h0} too large for the domain margin: {m}"))
        }
        other => other,
    })?;
    let n = z.len();
    let ginv = inverse(&dv.g)?;
    let mut r = Curvature4::zeros(n);
    for k in 0..n {
        for l in 0..n {
            // ∂_k G · G^{-1} · ∂_l̄ G gives Σ_{pq} ∂_k G_{iq̄} N[q][p] ∂_l̄ G_{pj̄}
            let quad = &dv.d[k] * &ginv * &dv.dbar[l];
            for i in 0..n {
                for j in 0..n {
                    r.set(i, j, k, l, -dv.ddbar[k][l][(i, j)] + quad[(i, j)]);
                }
            }
        }
    }
    Ok((r, dv.g))
}

fn tr_g(ginv: &CMat, a: &CMat) -> f64 {
    (ginv * a).trace().re
}

/// `Ric_{kl̄} = G^{ij̄} R_{ij̄kl̄}` and the scalar curvature.
pub fn ricci_scalar(r: &Curvature4, g: &CMat) -> Result<(CMat, f64)> {
    let n = r.dim();
    let ginv = inverse(g)?;
    let mut ric = CMat::zeros(n, n);
    for k in 0..n {
        for l in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for i in 0..n {
                for j in 0..n {
                    s += ginv[(j, i)] * r.get(i, j, k, l);
                }
            }
            ric[(k, l)] = s;
        }
    }
    let scalar = CALIBRATION.scalar_factor * tr_g(&ginv, &ric);
    Ok((ric, scalar))
}

/// Eigenvalues (descending) of the Hermitian form `a` relative to `g`.
pub fn relative_eigenvalues(a: &CMat, g: &CMat) -> Result<Vec<f64>> {
    let m = orthonormal_frame_form(a, g)?;
    let mut v: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|x, y| y.total_cmp(x));
    Ok(v)
}

/// `L⁻¹ a L⁻*` for `g = L L*`.
fn orthonormal_frame_form(a: &CMat, g: &CMat) -> Result<CMat> {
    let herm = (g + g.adjoint()) * c(0.5);
    let chol = Cholesky::new(herm)
        .ok_or_else(|| Error::Singular("metric is not positive definite".into()))?;
    let l = chol.l();
    let linv = l
        .try_inverse()
        .ok_or_else(|| Error::Singular("Cholesky factor is singular".into()))?;
    let m = &linv * a * linv.adjoint();
    Ok((&m + m.adjoint()) * c(0.5))
}

/// Ricci eigenvalues `ρ_i` relative to the metric.
pub fn ricci_eigenvalues(ric: &CMat, g: &CMat) -> Result<Vec<f64>> {
    let rho = ric * c(CALIBRATION.ricci_factor);
    relative_eigenvalues(&rho, g)
}

/// `A_{ij̄}G_{kl̄} + A_{kl̄}G_{ij̄} + A_{il̄}G_{kj̄} + A_{kj̄}G_{il̄}`.
pub fn bochner_form(a: &CMat, g: &CMat) -> Curvature4 {
    let n = g.nrows();
    let mut r = Curvature4::zeros(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let v = a[(i, j)] * g[(k, l)]
                        + a[(k, l)] * g[(i, j)]
                        + a[(i, l)] * g[(k, j)]
                        + a[(k, j)] * g[(i, l)];
                    r.set(i, j, k, l, v);
                }
            }
        }
    }
    r
}

/// Best Bochner fit. Returns `S_fit` (with `R = -Form(S_fit)`) and the
/// normalized residual `‖R - Form‖ / (1 + ‖R‖)`.
pub fn bochner_residual(r: &Curvature4, g: &CMat) -> Result<(CMat, f64)> {
    let n = r.dim() as f64;
    let (ric, _) = ricci_scalar(r, g)?;
    let ginv = inverse(g)?;
    // Ric = (n+2) A + (tr A) G, so tr Ric = 2(n+1) tr A
    let tra = tr_g(&ginv, &ric) / (2.0 * (n + 1.0));
    let a = (&ric - g * c(tra)) * c(1.0 / (n + 2.0));
    let resid = r.sub(&bochner_form(&a, g)).norm() / (1.0 + r.norm());
    Ok((-a, resid))
}

/// Holomorphic sectional curvature `R(v, v̄, v, v̄) / ‖v‖⁴`.
pub fn holo_sect_curvature(r: &Curvature4, g: &CMat, v: &[Complex64]) -> Result<f64> {
    let n = r.dim();
    if v.iter().all(|x| x.norm() == 0.0) {
        return Err(Error::Parameter("v must be nonzero".into()));
    }
    let mut num = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    num += r.get(i, j, k, l) * v[i] * v[j].conj() * v[k] * v[l].conj();
                }
            }
        }
    }
    let mut nv = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            nv += g[(i, j)] * v[i] * v[j].conj();
        }
    }
    Ok(num.re / (nv.re * nv.re))
}

/// Momentum data read off from the Ricci form.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumFit {
    /// `η` in a `G`-orthonormal frame.
    pub h_fit: CMat,
    pub p_h: RealPolynomial,
    /// Elementary symmetric functions `h_1..h_n` of the eigenvalues.
    pub h: Vec<f64>,
    /// Eigenvalues of `h_fit`, descending.
    pub eigenvalues: Vec<f64>,
    /// `‖H_fit - (Ŝ - tr Ŝ/(n+2) I)‖` with `Ŝ` from the Bochner fit.
    pub consistency: f64,
}

fn momentum_from(r: &Curvature4, g: &CMat) -> Result<MomentumFit> {
    let n = r.dim();
    let nf = n as f64;
    let (ric, _) = ricci_scalar(r, g)?;
    let rho = &ric * c(CALIBRATION.ricci_factor);
    let ginv = inverse(g)?;
    let tr_rho = tr_g(&ginv, &rho);
    let eta = g * c(tr_rho / (2.0 * (nf + 1.0) * (nf + 2.0))) - &rho * c(1.0 / (2.0 * (nf + 2.0)));
    let h_fit = orthonormal_frame_form(&eta, g)?;
    let mut eig: Vec<f64> = h_fit.symmetric_eigenvalues().iter().copied().collect();
    eig.sort_by(|x, y| y.total_cmp(x));
    let p_h = RealPolynomial::from_roots(&eig);
    let h = crate::poly::elementary_symmetric(&eig);
    let (s_fit, _) = bochner_residual(r, g)?;
    let s_hat = orthonormal_frame_form(&s_fit, g)?;
    let expect = &s_hat - CMat::identity(n, n) * c(s_hat.trace().re / (nf + 2.0));
    let consistency = (&h_fit - expect).norm();
    Ok(MomentumFit {
        h_fit,
        p_h,
        h,
        eigenvalues: eig,
        consistency,
    })
}

/// Renormalized Ricci endomorphism and its characteristic polynomial.
pub fn extract_momentum(
    field: &MetricField,
    z: &[Complex64],
    step: Option<f64>,
) -> Result<MomentumFit> {
    let (r, g) = kahler_curvature(field, z, step)?;
    momentum_from(&r, &g)
}

/// Everything computed at one point.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureReport {
    pub z: Vec<Complex64>,
    pub g: CMat,
    pub r: Curvature4,
    pub ricci: CMat,
    pub ricci_eigenvalues: Vec<f64>,
    pub scalar: f64,
    pub s_fit: CMat,
    pub bochner_residual: f64,
    pub symmetry_defect: f64,
    pub momentum: MomentumFit,
}

pub fn curvature_report(
    field: &MetricField,
    z: &[Complex64],
    step: Option<f64>,
) -> Result<CurvatureReport> {
    let (r, g) = kahler_curvature(field, z, step)?;
    let (ricci, scalar) = ricci_scalar(&r, &g)?;
    let ricci_eigenvalues = ricci_eigenvalues(&ricci, &g)?;
    let (s_fit, bochner_residual) = bochner_residual(&r, &g)?;
    let momentum = momentum_from(&r, &g)?;
    Ok(CurvatureReport {
        z: z.to_vec(),
        symmetry_defect: r.symmetry_defect(),
        g,
        r,
        ricci,
        ricci_eigenvalues,
        scalar,
        s_fit,
        bochner_residual,
        momentum,
    })
}

fn split(m: &CMat) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let re = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].re).collect())
        .collect();
    let im = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].im).collect())
        .collect();
    (re, im)
}

/// Serializable form of a [`CurvatureReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvatureRecord {
    pub z_re: Vec<f64>,
    pub z_im: Vec<f64>,
    /// `R_{ij̄kl̄}` flattened with `l` fastest.
    pub r_re: Vec<f64>,
    pub r_im: Vec<f64>,
    pub ricci_re: Vec<Vec<f64>>,
    pub ricci_im: Vec<Vec<f64>>,
    pub ricci_eigenvalues: Vec<f64>,
    pub scalar: f64,
    pub s_fit_re: Vec<Vec<f64>>,
    pub s_fit_im: Vec<Vec<f64>>,
    pub bochner_residual: f64,
    pub symmetry_defect: f64,
    /// Coefficients of `p_h`, leading first.
    pub p_h: Vec<f64>,
    pub h: Vec<f64>,
}

impl CurvatureReport {
    pub fn to_record(&self) -> CurvatureRecord {
        let (ricci_re, ricci_im) = split(&self.ricci);
        let (s_fit_re, s_fit_im) = split(&self.s_fit);
        CurvatureRecord {
            z_re: self.z.iter().map(|c| c.re).collect(),
            z_im: self.z.iter().map(|c| c.im).collect(),
            r_re: self.r.as_slice().iter().map(|c| c.re).collect(),
            r_im: self.r.as_slice().iter().map(|c| c.im).collect(),
            ricci_re,
            ricci_im,
            ricci_eigenvalues: self.ricci_eigenvalues.clone(),
            scalar: self.scalar,
            s_fit_re,
            s_fit_im,
            bochner_residual: self.bochner_residual,
            symmetry_defect: self.symmetry_defect,
            p_h: self.momentum.p_h.coeffs().to_vec(),
            h: self.momentum.h.clone(),
        }
    }
}

/// Re-derives the convention constants: the Ricci factor by least squares
/// against `ρ = -2(n+1)k` for the `a = 0` family at the origin, checked
/// against the flat metric.
pub fn calibrate() -> Result<Calibration> {
    let flat = rotsym_metric(&RotSymParams::type_one(2, 0.0, 0.0)?)?;
    let z0 = vec![Complex64::new(0.3, -0.2), Complex64::new(0.1, 0.4)];
    let (r, _) = kahler_curvature(&flat, &z0, None)?;
    if r.norm() > 1e-10 {
        return Err(Error::Numerical(format!(
            "flat curvature {:.3e} is not zero",
            r.norm()
        )));
    }
    let (mut num, mut den) = (0.0, 0.0);
    for (n, k) in [(2usize, 8.0), (2, -3.0), (3, 1.5)] {
        let f = rotsym_metric(&RotSymParams::type_one(n, k, 0.0)?)?;
        let z = vec![Complex64::new(0.0, 0.0); n];
        let (r, g) = kahler_curvature(&f, &z, None)?;
        let (ric, _) = ricci_scalar(&r, &g)?;
        let target = -2.0 * (n as f64 + 1.0) * k;
        for e in relative_eigenvalues(&ric, &g)? {
            num += e * target;
            den += e * e;
        }
    }
    let ricci_factor = num / den;
    Ok(Calibration {
        ricci_factor,
        scalar_factor: ricci_factor,
    })
}

/// Real symmetric matrix helper used by tests and callers that hold real data.
pub fn to_complex(m: &DMatrix<f64>) -> CMat {
    m.map(|x| Complex64::new(x, 0.0))
}
