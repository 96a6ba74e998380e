//! The canonical metric `R_D` on momentum cells in root, symmetric and face
//! coordinates, its Hessian potential, the double-root limit and the
//! ellipsoidal resolution.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::classification::{self, cell_membership, lambda, Face, Membership, MomentumCell};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::poly::{elementary_symmetric, RealPolynomial};
use crate::quad;

/// A quadratic form evaluated at a point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticFormEval {
    pub point: Vec<f64>,
    pub matrix: DMatrix<f64>,
}

impl QuadraticFormEval {
    pub fn is_positive_definite(&self) -> bool {
        self.min_eigenvalue() > 0.0
    }

    pub fn min_eigenvalue(&self) -> f64 {
        let s = (&self.matrix + self.matrix.transpose()) * 0.5;
        s.symmetric_eigenvalues().min()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (&self.matrix - &other.matrix).amax()
    }
}

/// Face functionals `l_α` at the given roots of `p_D`; every root must be simple.
pub fn face_functionals(p_d: &RealPolynomial, roots: &[f64]) -> Result<Vec<Face>> {
    classification::face_functionals(p_d, roots)
}

/// `Σ_α r_α^k / p_D'(r_α)` for `p_D = Π (t - r_α)` with simple roots.
pub fn classical_sums(roots: &[f64], k: i32) -> Result<f64> {
    let len = roots.len() as i32;
    if len < 2 {
        return Err(Error::Parameter("need at least two roots".into()));
    }
    let m = len - 2;
    if k < -1 || k > m + 2 {
        return Err(Error::Parameter(format!("k = {k} outside [-1, {}]", m + 2)));
    }
    if k == -1 && roots.iter().any(|r| *r == 0.0) {
        return Err(Error::Parameter("k = -1 needs nonzero roots".into()));
    }
    let mut s = 0.0;
    for (a, ra) in roots.iter().enumerate() {
        let d: f64 = roots
            .iter()
            .enumerate()
            .filter(|(b, _)| *b != a)
            .map(|(_, rb)| ra - rb)
            .product();
        if d == 0.0 {
            return Err(Error::Parameter("roots must be distinct".into()));
        }
        s += ra.powi(k) / d;
    }
    Ok(s)
}

/// `S = ¼ Σ_i Π_{j≠i}(y_i - y_j) / p_D(y_i) dy_i²`.
pub fn s_form_roots(p_d: &RealPolynomial, y: &[f64]) -> Result<QuadraticFormEval> {
    let m = y.len();
    let mut mat = DMatrix::zeros(m, m);
    for i in 0..m {
        let mut num = 1.0;
        for j in 0..m {
            if j != i {
                let d = y[i] - y[j];
                if d == 0.0 {
                    return Err(Error::Singular(format!(
                        "coincident y_{} = y_{}",
                        i + 1,
                        j + 1
                    )));
                }
                num *= d;
            }
        }
        let den = p_d.eval(y[i]);
        if den == 0.0 {
            return Err(Error::Singular(format!(
                "y_{} = {} is a root of p_D",
                i + 1,
                y[i]
            )));
        }
        mat[(i, i)] = 0.25 * num / den;
    }
    Ok(QuadraticFormEval {
        point: y.to_vec(),
        matrix: mat,
    })
}

/// Jacobian `∂σ_k/∂y_i = σ_{k-1}(y with y_i removed)`.
pub fn sigma_jacobian(y: &[f64]) -> DMatrix<f64> {
    let m = y.len();
    DMatrix::from_fn(m, m, |k, i| {
        if k == 0 {
            return 1.0;
        }
        let rest: Vec<f64> = y
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, x)| *x)
            .collect();
        elementary_symmetric(&rest)[k - 1]
    })
}

/// Pushes a diagonal form in `y` forward through σ: `J^{-T} S J^{-1}`.
fn push_through_sigma(s: &DMatrix<f64>, y: &[f64]) -> Result<DMatrix<f64>> {
    let j = sigma_jacobian(y);
    let jinv = j
        .try_inverse()
        .ok_or_else(|| Error::Singular("σ Jacobian is singular (repeated y)".into()))?;
    Ok(jinv.transpose() * s * jinv)
}

/// Evaluates `R_D` at `u` in symmetric coordinates without checking the cell.
pub fn r_d_sym_unchecked(p_d: &RealPolynomial, u: &[f64]) -> Result<QuadraticFormEval> {
    let y = lambda(u)?;
    let s = s_form_roots(p_d, &y)?;
    Ok(QuadraticFormEval {
        point: u.to_vec(),
        matrix: push_through_sigma(&s.matrix, &y)?,
    })
}

/// `R_D^{ij}(u)` on the interior of `cell`.
pub fn r_d_sym(
    p_d: &RealPolynomial,
    u: &[f64],
    cell: &MomentumCell,
    tol: &Tolerances,
) -> Result<QuadraticFormEval> {
    match cell_membership(cell, u, tol)? {
        Membership::Interior => r_d_sym_unchecked(p_d, u),
        other => Err(Error::Domain(format!(
            "u = {u:?} is {other:?}, not interior to the cell"
        ))),
    }
}

fn simple_real_roots(p_d: &RealPolynomial) -> Result<Vec<f64>> {
    let rr = p_d.real_roots();
    if rr.len() != p_d.degree() || rr.iter().any(|r| r.1 != 1) {
        return Err(Error::InvalidReducedPoly(
            "face form needs all roots of p_D real and simple".into(),
        ));
    }
    Ok(rr.into_iter().map(|r| r.0).collect())
}

fn guarded_faces(p_d: &RealPolynomial, u: &[f64]) -> Result<(Vec<Face>, Vec<f64>)> {
    let faces = face_functionals(p_d, &simple_real_roots(p_d)?)?;
    let unorm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    let vals: Vec<f64> = faces.iter().map(|f| f.eval(u)).collect();
    if vals.iter().any(|l| l.abs() < 1e-12 * (1.0 + unorm)) {
        return Err(Error::Singular(format!("u = {u:?} lies on a face l_α = 0")));
    }
    Ok((faces, vals))
}

/// `R_D = Σ_α dl_α² / (4 l_α)` when every root of `p_D` is real and simple.
pub fn r_d_faces(p_d: &RealPolynomial, u: &[f64]) -> Result<QuadraticFormEval> {
    let m = u.len();
    let (faces, vals) = guarded_faces(p_d, u)?;
    let mut mat = DMatrix::zeros(m, m);
    for (f, l) in faces.iter().zip(&vals) {
        let g = DVector::from_column_slice(&f.coeffs);
        mat += (&g * g.transpose()) / (4.0 * l);
    }
    Ok(QuadraticFormEval {
        point: u.to_vec(),
        matrix: mat,
    })
}

/// `G = ¼ Σ_α l_α (log|l_α| - 1)`.
pub fn potential_g(p_d: &RealPolynomial, u: &[f64]) -> Result<f64> {
    let (_, vals) = guarded_faces(p_d, u)?;
    Ok(0.25 * vals.iter().map(|l| l * (l.abs().ln() - 1.0)).sum::<f64>())
}

/// `∇G = ¼ Σ_α log|l_α| ∇l_α`.
pub fn potential_gradient(p_d: &RealPolynomial, u: &[f64]) -> Result<DVector<f64>> {
    let (faces, vals) = guarded_faces(p_d, u)?;
    let mut g = DVector::zeros(u.len());
    for (f, l) in faces.iter().zip(&vals) {
        g += DVector::from_column_slice(&f.coeffs) * (0.25 * l.abs().ln());
    }
    Ok(g)
}

/// `R_D` for Case 3-1 (double root `r_1` on top):
/// `t da²/(4a²) - da dt/(2a) + Σ_{α≥2} dl_α²/(4 l_α)`.
pub fn r_case31(p_d: &RealPolynomial, u: &[f64]) -> Result<QuadraticFormEval> {
    let m = u.len();
    let rr = p_d.real_roots();
    if rr.len() != m + 1 || rr[0].1 != 2 || rr[1..].iter().any(|r| r.1 != 1) {
        return Err(Error::InvalidReducedPoly(
            "Case 3-1 needs a double largest root and m simple roots below it".into(),
        ));
    }
    let r1 = rr[0].0;
    let lower: Vec<f64> = rr[1..].iter().map(|r| r.0).collect();
    let faces = face_functionals(p_d, &lower)?;
    let mut a = 1.0;
    let mut t = 0.0;
    let mut da = DVector::zeros(m);
    let mut dt = DVector::zeros(m);
    let mut mat = DMatrix::zeros(m, m);
    for f in &faces {
        let l = f.eval(u);
        if l.abs() < 1e-12 {
            return Err(Error::Singular(format!("u = {u:?} lies on a face")));
        }
        let g = DVector::from_column_slice(&f.coeffs);
        a -= (r1 - f.root) * l;
        da -= &g * (r1 - f.root);
        t += l;
        dt += &g;
        mat += (&g * g.transpose()) / (4.0 * l);
    }
    if !(a > 0.0) {
        return Err(Error::Domain(format!("a(u) = {a} is not positive")));
    }
    mat += (&da * da.transpose()) * (t / (4.0 * a * a));
    mat -= (&da * dt.transpose() + &dt * da.transpose()) / (4.0 * a);
    Ok(QuadraticFormEval {
        point: u.to_vec(),
        matrix: mat,
    })
}

/// The resolved metric `R_ρ` on the ellipsoid `Σ ρ_α p_α² < 1`.
pub fn resolution_rrho(rho: &[f64], p: &[f64]) -> Result<QuadraticFormEval> {
    let m = rho.len();
    if p.len() != m {
        return Err(Error::Dimension(format!(
            "p has length {}, rho {m}",
            p.len()
        )));
    }
    if rho.iter().any(|r| *r < 0.0) {
        return Err(Error::Parameter("rho must be nonnegative".into()));
    }
    let a = 1.0 - rho.iter().zip(p).map(|(r, x)| r * x * x).sum::<f64>();
    if !(a > 0.0) {
        return Err(Error::Domain(format!("p = {p:?} is outside the ellipsoid")));
    }
    let t: f64 = p.iter().map(|x| x * x).sum();
    let da = DVector::from_iterator(m, rho.iter().zip(p).map(|(r, x)| -2.0 * r * x));
    let dt = DVector::from_iterator(m, p.iter().map(|x| 2.0 * x));
    let mut mat = DMatrix::identity(m, m);
    mat += (&da * da.transpose()) * (t / (4.0 * a * a));
    mat -= (&da * dt.transpose() + &dt * da.transpose()) / (4.0 * a);
    Ok(QuadraticFormEval {
        point: p.to_vec(),
        matrix: mat,
    })
}

/// `R_D`-length of the straight segment from `from` to `to`. An infinite
/// entry in `to` is not allowed; use [`arc_length_ray`] for rays.
pub fn arc_length_diag(
    cell: &MomentumCell,
    from: &[f64],
    to: &[f64],
    tol: &Tolerances,
) -> Result<f64> {
    let m = cell.m;
    if from.len() != m || to.len() != m {
        return Err(Error::Dimension(
            "segment endpoints must have length m".into(),
        ));
    }
    for e in [from, to] {
        if cell_membership(cell, e, tol)? == Membership::Outside {
            return Err(Error::Domain(format!("endpoint {e:?} is outside the cell")));
        }
    }
    let d: Vec<f64> = to.iter().zip(from).map(|(b, a)| b - a).collect();
    if d.iter().all(|x| *x == 0.0) {
        return Ok(0.0);
    }
    let p_d = cell.p_d.clone();
    // s = sin²θ absorbs inverse square-root singularities at both ends
    let f = |th: f64| -> f64 {
        let (sn, cs) = th.sin_cos();
        let s = sn * sn;
        let u: Vec<f64> = from.iter().zip(&d).map(|(a, di)| a + s * di).collect();
        speed(&p_d, &u, &d) * 2.0 * sn * cs
    };
    quad::integrate(f, 0.0, std::f64::consts::FRAC_PI_2, 1e-12, 1e-10)
}

fn speed(p_d: &RealPolynomial, u: &[f64], d: &[f64]) -> f64 {
    match r_d_sym_unchecked(p_d, u) {
        Ok(q) => {
            let dv = DVector::from_column_slice(d);
            (dv.transpose() * &q.matrix * &dv)[(0, 0)].max(0.0).sqrt()
        }
        Err(_) => 0.0,
    }
}

/// `R_D`-length of the ray `from + s d`, `s ≥ 0`, computed with `s = w/(1-w)`.
pub fn arc_length_ray(
    cell: &MomentumCell,
    from: &[f64],
    d: &[f64],
    tol: &Tolerances,
) -> Result<f64> {
    if cell_membership(cell, from, tol)? == Membership::Outside {
        return Err(Error::Domain(format!("start {from:?} is outside the cell")));
    }
    for s in [1.0, 10.0, 1e3, 1e6] {
        let u: Vec<f64> = from.iter().zip(d).map(|(a, di)| a + s * di).collect();
        if cell_membership(cell, &u, tol)? == Membership::Outside {
            return Err(Error::Domain("ray leaves the cell".into()));
        }
    }
    let p_d = cell.p_d.clone();
    let f = |w: f64| -> f64 {
        let s = w / (1.0 - w);
        let u: Vec<f64> = from.iter().zip(d).map(|(a, di)| a + s * di).collect();
        speed(&p_d, &u, d) / ((1.0 - w) * (1.0 - w))
    };
    quad::integrate(f, 0.0, 1.0, 1e-12, 1e-10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classification::classify_cells;
    use approx::assert_abs_diff_eq;

    fn cubic() -> RealPolynomial {
        RealPolynomial::from_roots(&[1.0, 0.0, -1.0])
    }

    #[test]
    fn classical_cubic() {
        let r = [1.0, 0.0, -1.0];
        assert_abs_diff_eq!(classical_sums(&r, 0).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(classical_sums(&r, 1).unwrap(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(classical_sums(&r, 2).unwrap(), 1.0, epsilon = 1e-15);
        assert!(classical_sums(&r, 4).is_err());
        assert!(classical_sums(&r, -1).is_err());
    }

    #[test]
    fn m1_values() {
        let pd = cubic();
        let s = s_form_roots(&pd, &[-0.5]).unwrap();
        assert_abs_diff_eq!(s.matrix[(0, 0)], 2.0 / 3.0, epsilon = 1e-15);
        let f = r_d_faces(&pd, &[-0.5]).unwrap();
        assert_abs_diff_eq!(f.matrix[(0, 0)], 2.0 / 3.0, epsilon = 1e-14);
        let cells = classify_cells(&pd).unwrap();
        let r = r_d_sym(&pd, &[-0.5], &cells[0], &Tolerances::default()).unwrap();
        assert_abs_diff_eq!(r.matrix[(0, 0)], 2.0 / 3.0, epsilon = 1e-14);
        assert!(r_d_sym(&pd, &[0.0], &cells[0], &Tolerances::default()).is_err());
    }

    #[test]
    fn m2_intermediate_form() {
        let pd = RealPolynomial::from_roots(&[3.0, 1.0, -0.5, -2.0]);
        let (y1, y2) = (0.2, -1.1);
        let u = [y1 + y2, y1 * y2];
        let r = r_d_sym_unchecked(&pd, &u).unwrap();
        let (p1, p2) = (pd.eval(y1), pd.eval(y2));
        let den = (y1 - y2) * p1 * p2;
        let e11 = (y1 * y1 * p2 - y2 * y2 * p1) / den / 4.0;
        let e12 = -(y1 * p2 - y2 * p1) / den / 4.0;
        let e22 = (p2 - p1) / den / 4.0;
        assert_abs_diff_eq!(r.matrix[(0, 0)], e11, epsilon = 1e-12);
        assert_abs_diff_eq!(r.matrix[(0, 1)], e12, epsilon = 1e-12);
        assert_abs_diff_eq!(r.matrix[(1, 1)], e22, epsilon = 1e-12);
    }

    #[test]
    fn resolution_flat_and_center() {
        let q = resolution_rrho(&[0.0, 0.0], &[0.3, -0.2]).unwrap();
        assert_eq!(q.matrix, DMatrix::identity(2, 2));
        let q = resolution_rrho(&[1.0, 2.0], &[0.0, 0.0]).unwrap();
        assert_eq!(q.matrix, DMatrix::identity(2, 2));
        assert!(resolution_rrho(&[1.0], &[1.5]).is_err());
    }

    #[test]
    fn case31_m1_collapse() {
        // (t-1)^2 (t+2): R = 1/(4 p_D(u))
        let pd = RealPolynomial::from_roots(&[1.0, 1.0, -2.0]);
        for u in [-1.5, -0.3, 0.7] {
            let r = r_case31(&pd, &[u]).unwrap();
            assert_abs_diff_eq!(r.matrix[(0, 0)], 1.0 / (4.0 * pd.eval(u)), epsilon = 1e-12);
        }
    }

    #[test]
    fn arc_lengths() {
        let pd = cubic();
        let cells = classify_cells(&pd).unwrap();
        let tol = Tolerances::default();
        // ∫_{-1}^{0} du / (2 sqrt(u^3 - u)) on the compact band
        let l = arc_length_diag(&cells[0], &[-1.0], &[0.0], &tol).unwrap();
        let oracle = quad::integrate(
            |th: f64| {
                // u = -(sin th)^2 removes both endpoint singularities
                let u = -th.sin().powi(2);
                let du = 2.0 * th.sin() * th.cos();
                du / (2.0 * (u * u * u - u).sqrt())
            },
            0.0,
            std::f64::consts::FRAC_PI_2,
            1e-13,
            1e-13,
        )
        .unwrap();
        assert!((l - oracle).abs() < 1e-6, "{l} vs {oracle}");
        assert_eq!(
            arc_length_diag(&cells[0], &[-0.5], &[-0.5], &tol).unwrap(),
            0.0
        );
        assert!(arc_length_diag(&cells[0], &[-0.5], &[0.5], &tol).is_err());
    }
}
