//! The structure-function ODE along a geodesic with constant frame direction
//! `w`, integrated with fixed-step RK4, and the conservation and constant-root
//! checks it is used for.

use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classification::{reduced_polys, spectral_data};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::structure_space::{
    c, conserved_ck, hermitian_defect, momentum_poly, CMat, CVec, StructurePoint,
};

/// `‖H‖_F` above which integration stops with an error.
pub const BLOWUP_CEILING: f64 = 1e8;

/// A sampled solution of the ODE.
#[derive(Debug, Clone)]
pub struct StructurePath {
    /// `(s, point)` with `s` strictly increasing from 0.
    pub samples: Vec<(f64, StructurePoint)>,
    pub w: CVec,
    /// Largest `|H - H*|` seen after a step, before symmetrization.
    pub max_symmetrization_defect: f64,
}

impl StructurePath {
    pub fn start(&self) -> &StructurePoint {
        &self.samples[0].1
    }

    pub fn end(&self) -> &StructurePoint {
        &self.samples[self.samples.len() - 1].1
    }

    pub fn csv_header(&self) -> String {
        let n = self.w.len();
        let mut cols = vec!["s".to_string()];
        cols.extend((1..=n).map(|i| format!("lambda{i}")));
        cols.push("t_norm_sq".into());
        cols.push("v".into());
        cols.extend((2..=n + 2).map(|k| format!("c{k}")));
        cols.join(",")
    }

    /// One row per sample: `s`, eigenvalues of `H` (descending), `|T|²`, `V`,
    /// `C₂ … C_{n+2}`.
    pub fn to_csv(&self) -> String {
        let mut out = self.csv_header();
        out.push('\n');
        for (s, p) in &self.samples {
            let (vals, _) = p.h_herm().eigen();
            let mut row = format!("{s:.17e}");
            for x in vals {
                let _ = write!(row, ",{x:.17e}");
            }
            let _ = write!(row, ",{:.17e},{:.17e}", p.t().norm_squared(), p.v());
            for x in conserved_ck(p).c {
                let _ = write!(row, ",{x:.17e}");
            }
            out.push_str(&row);
            out.push('\n');
        }
        out
    }
}

#[derive(Clone)]
struct State {
    h: CMat,
    t: CVec,
    v: f64,
}

impl State {
    fn axpy(&self, k: &State, a: f64) -> State {
        State {
            h: &self.h + &k.h * c(a),
            t: &self.t + &k.t * c(a),
            v: self.v + k.v * a,
        }
    }
}

fn rhs(s: &State, w: &CVec) -> State {
    let n = w.len();
    let tr = s.h.trace();
    let h_dot = &s.t * w.adjoint() + w * s.t.adjoint();
    let m = &s.h * &s.h + &s.h * tr + CMat::identity(n, n) * c(s.v);
    let t_dot = m * w;
    let hw = &s.h * w;
    let v_dot = tr * (s.t.dotc(w) + w.dotc(&s.t)) + (s.t.dotc(&hw) + hw.dotc(&s.t));
    State {
        h: h_dot,
        t: t_dot,
        v: v_dot.re,
    }
}

/// Integrates `Ḣ = Tw* + wT*`, `Ṫ = (H² + (tr H)H + V)w`,
/// `V̇ = (tr H)(T*w + w*T) + (T*Hw + w*HT)` over `[0, length]`.
///
/// The step is shrunk to `length / ceil(length / h)` so the last sample lands
/// on `length`. `H` is symmetrized after each step.
pub fn integrate(p0: &StructurePoint, w: &CVec, length: f64, h: f64) -> Result<StructurePath> {
    let n = p0.n();
    if w.len() != n {
        return Err(Error::Dimension(format!(
            "w has length {}, expected {n}",
            w.len()
        )));
    }
    if (w.norm() - 1.0).abs() > 1e-12 {
        return Err(Error::Parameter(format!("|w| = {} is not 1", w.norm())));
    }
    if !(h > 0.0) || !(length >= 0.0) || !length.is_finite() {
        return Err(Error::Parameter(format!(
            "need h > 0 and length >= 0, got h = {h}, length = {length}"
        )));
    }
    let mut path = StructurePath {
        samples: vec![(0.0, p0.clone())],
        w: w.clone(),
        max_symmetrization_defect: 0.0,
    };
    if length == 0.0 {
        return Ok(path);
    }
    let steps = (length / h).ceil() as usize;
    let dt = length / steps as f64;
    let mut y = State {
        h: p0.h().clone(),
        t: p0.t().clone(),
        v: p0.v(),
    };
    for i in 1..=steps {
        let k1 = rhs(&y, w);
        let k2 = rhs(&y.axpy(&k1, dt / 2.0), w);
        let k3 = rhs(&y.axpy(&k2, dt / 2.0), w);
        let k4 = rhs(&y.axpy(&k3, dt), w);
        y = y
            .axpy(&k1, dt / 6.0)
            .axpy(&k2, dt / 3.0)
            .axpy(&k3, dt / 3.0)
            .axpy(&k4, dt / 6.0);
        path.max_symmetrization_defect = path.max_symmetrization_defect.max(hermitian_defect(&y.h));
        y.h = (&y.h + y.h.adjoint()) * c(0.5);
        let size = y.h.norm();
        if !(size <= BLOWUP_CEILING) || !y.v.is_finite() {
            return Err(Error::Numerical(format!(
                "solution left the ceiling |H| <= {BLOWUP_CEILING:e} at s = {}",
                i as f64 * dt
            )));
        }
        let p = StructurePoint::from_parts(y.h.clone(), y.t.clone(), y.v)?;
        path.samples.push((i as f64 * dt, p));
    }
    Ok(path)
}

/// `max_s |C_k(s) - C_k(0)|` for `k = 2..=n+2`.
pub fn conserved_drift(path: &StructurePath) -> Vec<f64> {
    let c0 = conserved_ck(path.start()).c;
    let mut drift = vec![0.0_f64; c0.len()];
    for (_, p) in &path.samples {
        for (d, (a, b)) in drift.iter_mut().zip(conserved_ck(p).c.iter().zip(&c0)) {
            *d = (*d).max((a - b).abs());
        }
    }
    drift
}

/// Whether the constant-root factor of the start divides `p_h` along a path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantFactorReport {
    /// Coefficients of `p_{h''}` at the start, highest degree first.
    pub p_hpp: Vec<f64>,
    /// Largest remainder coefficient of `p_h(s) mod p_{h''}`.
    pub max_remainder: f64,
    pub holds: bool,
}

fn require_admissible(p: &StructurePoint, w: &CVec, tol: &Tolerances) -> Result<()> {
    let (_, u) = p.h_herm().eigen();
    let sd = spectral_data(p, tol);
    let t_rot = u.adjoint() * p.t();
    let w_rot = u.adjoint() * w;
    let mut start = 0;
    for cl in &sd.clusters {
        let t_a = t_rot.rows(start, cl.n);
        let w_a = w_rot.rows(start, cl.n);
        if cl.t_zero && cl.v_zero && w_a.norm() > 1e-9 {
            return Err(Error::Precondition(format!(
                "w has component {:.3e} along the eigenspace of {} where T and V vanish",
                w_a.norm(),
                cl.h
            )));
        }
        if !cl.t_zero {
            let im = t_a.dotc(&w_a).im;
            if im.abs() > 1e-9 * (1.0 + t_a.norm()) {
                return Err(Error::Precondition(format!(
                    "Im(T_a* w_a) = {im:.3e} at eigenvalue {}",
                    cl.h
                )));
            }
        }
        start += cl.n;
    }
    Ok(())
}

/// Checks that `p_{h''}` from the start divides `p_h` at every sample, with
/// remainder coefficients below `1e-6`. The direction must satisfy the
/// admissibility conditions built by [`admissible_direction`].
pub fn constant_factor_check(
    path: &StructurePath,
    tol: &Tolerances,
) -> Result<ConstantFactorReport> {
    let p0 = path.start();
    require_admissible(p0, &path.w, tol)?;
    let p_hpp = reduced_polys(p0, tol)?.p_hpp;
    let mut max_remainder: f64 = 0.0;
    for (_, p) in &path.samples {
        let (_, rem) = momentum_poly(p).div_rem(&p_hpp);
        max_remainder = max_remainder.max(rem.max_abs_coeff());
    }
    Ok(ConstantFactorReport {
        p_hpp: p_hpp.coeffs().to_vec(),
        max_remainder,
        holds: max_remainder < 1e-6,
    })
}

/// Projects `v` to a unit direction with `T_α* w_α` real on every cluster and
/// `w_α = 0` on clusters where `T_α` and `V_α` both vanish.
pub fn admissible_direction(p: &StructurePoint, v: &CVec, tol: &Tolerances) -> Result<CVec> {
    let n = p.n();
    if v.len() != n {
        return Err(Error::Dimension(format!(
            "v has length {}, expected {n}",
            v.len()
        )));
    }
    let (_, u) = p.h_herm().eigen();
    let sd = spectral_data(p, tol);
    let t_rot = u.adjoint() * p.t();
    let mut w_rot = u.adjoint() * v;
    let mut start = 0;
    for cl in &sd.clusters {
        if cl.t_zero && cl.v_zero {
            w_rot.rows_mut(start, cl.n).fill(c(0.0));
        } else if !cl.t_zero {
            let t_a = t_rot.rows(start, cl.n).into_owned();
            let im = t_a.dotc(&w_rot.rows(start, cl.n)).im;
            let fix = &t_a * Complex64::new(0.0, im / t_a.norm_squared());
            let mut w_a = w_rot.rows_mut(start, cl.n);
            w_a -= fix;
        }
        start += cl.n;
    }
    let w = u * w_rot;
    let norm = w.norm();
    if norm < 1e-12 {
        return Err(Error::Precondition(
            "no admissible direction survives the projection".into(),
        ));
    }
    Ok(w / c(norm))
}
