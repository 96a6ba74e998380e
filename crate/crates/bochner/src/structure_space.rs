//! Points `(H, T, V)` of structure space, the unitary action on them, and the
//! invariants, momenta and conserved quantities built from a single point.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::classification::spectral_data;
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::poly::RealPolynomial;

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// A complex Hermitian matrix, checked on construction.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianMatrix(CMat);

impl HermitianMatrix {
    pub fn new(m: CMat) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, expected square",
                m.nrows(),
                m.ncols()
            )));
        }
        let defect = hermitian_defect(&m);
        if defect > 1e-12 * (1.0 + m.norm()) {
            return Err(Error::NotHermitian { defect });
        }
        Ok(Self(m))
    }

    pub fn from_real_diagonal(d: &[f64]) -> Self {
        let v = DVector::from_iterator(d.len(), d.iter().map(|x| c(*x)));
        Self(CMat::from_diagonal(&v))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.0
    }

    pub fn into_matrix(self) -> CMat {
        self.0
    }

    /// Eigenvalues in descending order with the matching unitary `U`
    /// (columns are eigenvectors), so that `H = U diag(λ) U*`.
    pub fn eigen(&self) -> (Vec<f64>, CMat) {
        hermitian_eigen(&self.0)
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }
}

/// `max |M - M*|` entrywise.
pub fn hermitian_defect(m: &CMat) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            d = d.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    d
}

pub(crate) fn hermitian_eigen(m: &CMat) -> (Vec<f64>, CMat) {
    let n = m.nrows();
    let sym = (m + m.adjoint()) * c(0.5);
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].partial_cmp(&eig.eigenvalues[a]).unwrap());
    let vals = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut u = CMat::zeros(n, n);
    for (k, &i) in order.iter().enumerate() {
        u.set_column(k, &eig.eigenvectors.column(i));
    }
    (vals, u)
}

/// Groups descending values into runs whose consecutive gaps are at most `tol`.
/// Returns `(start, len)` pairs.
pub(crate) fn cluster_sorted(vals: &[f64], tol: f64) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for (i, v) in vals.iter().enumerate() {
        match out.last_mut() {
            Some((s, len)) if (vals[*s + *len - 1] - v).abs() <= tol => *len += 1,
            _ => out.push((i, 1)),
        }
    }
    out
}

/// The value `(H, T, V)` of the structure function at a frame.
#[derive(Debug, Clone, PartialEq)]
pub struct StructurePoint {
    h: HermitianMatrix,
    t: CVec,
    v: f64,
}

impl StructurePoint {
    pub fn new(h: HermitianMatrix, t: CVec, v: f64) -> Result<Self> {
        let n = h.dim();
        if n == 0 {
            return Err(Error::Dimension("n must be at least 1".into()));
        }
        if t.len() != n {
            return Err(Error::Dimension(format!(
                "T has length {}, expected {n}",
                t.len()
            )));
        }
        Ok(Self { h, t, v })
    }

    /// Builds a point from raw parts, checking Hermitian symmetry.
    pub fn from_parts(h: CMat, t: CVec, v: f64) -> Result<Self> {
        Self::new(HermitianMatrix::new(h)?, t, v)
    }

    /// Real diagonal `H`, real `T`.
    pub fn diagonal(h: &[f64], t: &[f64], v: f64) -> Result<Self> {
        let tv = DVector::from_iterator(t.len(), t.iter().map(|x| c(*x)));
        Self::new(HermitianMatrix::from_real_diagonal(h), tv, v)
    }

    pub fn n(&self) -> usize {
        self.h.dim()
    }

    pub fn h(&self) -> &CMat {
        self.h.matrix()
    }

    pub fn h_herm(&self) -> &HermitianMatrix {
        &self.h
    }

    pub fn t(&self) -> &CVec {
        &self.t
    }

    pub fn v(&self) -> f64 {
        self.v
    }

    pub fn to_record(&self) -> StructurePointRecord {
        let n = self.n();
        let h = self.h();
        StructurePointRecord {
            n,
            h_re: (0..n)
                .map(|i| (0..n).map(|j| h[(i, j)].re).collect())
                .collect(),
            h_im: (0..n)
                .map(|i| (0..n).map(|j| h[(i, j)].im).collect())
                .collect(),
            t_re: self.t.iter().map(|z| z.re).collect(),
            t_im: self.t.iter().map(|z| z.im).collect(),
            v: self.v,
        }
    }
}

/// Serialized form of a [`StructurePoint`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructurePointRecord {
    pub n: usize,
    #[serde(rename = "H_re")]
    pub h_re: Vec<Vec<f64>>,
    #[serde(rename = "H_im", default)]
    pub h_im: Vec<Vec<f64>>,
    #[serde(rename = "T_re")]
    pub t_re: Vec<f64>,
    #[serde(rename = "T_im", default)]
    pub t_im: Vec<f64>,
    #[serde(rename = "V")]
    pub v: f64,
}

impl TryFrom<&StructurePointRecord> for StructurePoint {
    type Error = Error;

    fn try_from(r: &StructurePointRecord) -> Result<Self> {
        let n = r.n;
        let bad = |what: &str| Error::Dimension(format!("{what} does not match n = {n}"));
        if r.h_re.len() != n || r.h_re.iter().any(|row| row.len() != n) {
            return Err(bad("H_re"));
        }
        let im_present = !r.h_im.is_empty();
        if im_present && (r.h_im.len() != n || r.h_im.iter().any(|row| row.len() != n)) {
            return Err(bad("H_im"));
        }
        if r.t_re.len() != n || (!r.t_im.is_empty() && r.t_im.len() != n) {
            return Err(bad("T"));
        }
        let h = CMat::from_fn(n, n, |i, j| {
            let im = if im_present { r.h_im[i][j] } else { 0.0 };
            Complex64::new(r.h_re[i][j], im)
        });
        let t = CVec::from_fn(n, |i, _| {
            Complex64::new(r.t_re[i], r.t_im.get(i).copied().unwrap_or(0.0))
        });
        StructurePoint::from_parts(h, t, r.v)
    }
}

/// A point in the chamber: `H` real diagonal nonincreasing, `T` real and
/// nonnegative, with at most one nonzero `T` entry per eigenvalue block.
#[derive(Debug, Clone, PartialEq)]
pub struct ChamberForm {
    pub point: StructurePoint,
}

/// Moduli coordinates `a_k = tr H^k` (k = 1..n), `b_2 = V`,
/// `b_{k+3} = T* H^k T` (k = 0..n-1). `b` holds `[b_2, ..., b_{n+2}]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantVector {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl InvariantVector {
    pub fn max_diff(&self, other: &Self) -> f64 {
        self.a
            .iter()
            .zip(&other.a)
            .chain(self.b.iter().zip(&other.b))
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    /// Divides each coordinate by `|norm|^weight`, making the vector
    /// invariant under [`scale`]. Uses `|a_1| + |b_2|^{1/2} + |b_3|^{1/3}`-style
    /// homogeneous size; a zero vector is returned unchanged.
    pub fn scale_normalized(&self) -> Self {
        let mut size: f64 = 0.0;
        for (k, a) in self.a.iter().enumerate() {
            size = size.max(a.abs().powf(1.0 / (k + 1) as f64));
        }
        for (k, b) in self.b.iter().enumerate() {
            size = size.max(b.abs().powf(1.0 / (k + 2) as f64));
        }
        if size == 0.0 {
            return self.clone();
        }
        Self {
            a: self
                .a
                .iter()
                .enumerate()
                .map(|(k, a)| a / size.powi(k as i32 + 1))
                .collect(),
            b: self
                .b
                .iter()
                .enumerate()
                .map(|(k, b)| b / size.powi(k as i32 + 2))
                .collect(),
        }
    }
}

/// Conserved quantities `C_2, ..., C_{n+2}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConservedVector {
    pub c: Vec<f64>,
}

impl ConservedVector {
    /// `C_k` for `2 <= k <= n+2`.
    pub fn get(&self, k: usize) -> f64 {
        self.c[k - 2]
    }
}

/// Symmetry dimension counts of a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryDims {
    pub dim_g0: usize,
    pub dim_g: usize,
    pub orbit_dim: usize,
    pub cohomogeneity: usize,
}

fn check_unitary(a: &CMat, n: usize) -> Result<()> {
    if a.nrows() != n || a.ncols() != n {
        return Err(Error::Dimension(format!(
            "unitary has shape {}x{}, expected {n}x{n}",
            a.nrows(),
            a.ncols()
        )));
    }
    let defect = (a.adjoint() * a - CMat::identity(n, n)).camax();
    if defect > 1e-12 {
        return Err(Error::NotUnitary { defect });
    }
    Ok(())
}

/// `a · (H, T, V) = (a H a*, a T, V)`.
pub fn unitary_act(p: &StructurePoint, a: &CMat) -> Result<StructurePoint> {
    check_unitary(a, p.n())?;
    let h = a * p.h() * a.adjoint();
    let h = (&h + h.adjoint()) * c(0.5);
    Ok(StructurePoint {
        h: HermitianMatrix(h),
        t: a * p.t(),
        v: p.v,
    })
}

/// Homothety weight action `(c⁻¹H, c^{-3/2}T, c⁻²V)`.
pub fn scale(p: &StructurePoint, s: f64) -> Result<StructurePoint> {
    if !(s > 0.0) {
        return Err(Error::Parameter(format!(
            "scale factor must be positive, got {s}"
        )));
    }
    Ok(StructurePoint {
        h: HermitianMatrix(p.h() * c(1.0 / s)),
        t: p.t() * c(s.powf(-1.5)),
        v: p.v / (s * s),
    })
}

/// The unique chamber representative of the U(n)-orbit of `p`.
pub fn normal_form(p: &StructurePoint, tol: &Tolerances) -> ChamberForm {
    let n = p.n();
    let (vals, u) = p.h_herm().eigen();
    // a = U* diagonalizes H
    let mut a = u.adjoint();
    let t0 = &a * p.t();
    let hnorm = p.h().norm();
    let tnorm = p.t().norm();
    let mut block_rot = CMat::identity(n, n);
    for (s, len) in cluster_sorted(&vals, tol.cluster * (1.0 + hnorm)) {
        let x = t0.rows(s, len).clone_owned();
        let r = x.norm();
        if r <= tol.zero * (1.0 + tnorm) {
            continue;
        }
        let q = rotation_to_first_axis(&x);
        block_rot.view_mut((s, s), (len, len)).copy_from(&q);
    }
    a = &block_rot * a;
    let mut t = &a * p.t();
    for (s, len) in cluster_sorted(&vals, tol.cluster * (1.0 + hnorm)) {
        if len > 1 || t[s].norm() > 0.0 {
            // the rotation makes the head real and nonnegative; clean round-off
            t[s] = c(t[s].norm());
        }
        for j in s + 1..s + len {
            t[j] = c(0.0);
        }
    }
    let h = CMat::from_diagonal(&DVector::from_iterator(n, vals.iter().map(|x| c(*x))));
    ChamberForm {
        point: StructurePoint {
            h: HermitianMatrix(h),
            t,
            v: p.v,
        },
    }
}

/// Unitary `Q` with `Q x = |x| e_1`.
fn rotation_to_first_axis(x: &CVec) -> CMat {
    let k = x.len();
    let r = x.norm();
    let mut basis: Vec<CVec> = vec![x / c(r)];
    for i in 0..k {
        if basis.len() == k {
            break;
        }
        let mut e = CVec::zeros(k);
        e[i] = c(1.0);
        for b in &basis {
            let proj = b.dotc(&e);
            e -= b * proj;
        }
        for b in &basis {
            let proj = b.dotc(&e);
            e -= b * proj;
        }
        let nrm = e.norm();
        if nrm > 1e-6 {
            basis.push(e / c(nrm));
        }
    }
    let mut q = CMat::zeros(k, k);
    for (i, b) in basis.iter().enumerate() {
        q.set_row(i, &b.adjoint());
    }
    q
}

/// Moduli coordinates of `p`.
pub fn invariants_phi(p: &StructurePoint) -> InvariantVector {
    let n = p.n();
    let h = p.h();
    let mut a = Vec::with_capacity(n);
    let mut hk = CMat::identity(n, n);
    for _ in 0..n {
        hk = &hk * h;
        a.push(hk.trace().re);
    }
    let mut b = vec![p.v];
    let mut ht = p.t().clone();
    for _ in 0..n {
        b.push(p.t().dotc(&ht).re);
        ht = h * ht;
    }
    InvariantVector { a, b }
}

/// Power sums `A_k` to elementary symmetric functions `h_k` (Newton's identities).
pub fn newton_to_elementary(a: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut e = vec![1.0];
    for k in 1..=n {
        let mut s = 0.0;
        for i in 1..=k {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            s += sign * e[k - i] * a[i - 1];
        }
        e.push(s / k as f64);
    }
    e[1..].to_vec()
}

/// Elementary symmetric functions `h_k` to power sums `A_k`.
pub fn elementary_to_newton(h: &[f64]) -> Vec<f64> {
    let n = h.len();
    let mut a: Vec<f64> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut s = if k % 2 == 1 { 1.0 } else { -1.0 } * k as f64 * h[k - 1];
        for i in 1..k {
            let sign = if i % 2 == 1 { 1.0 } else { -1.0 };
            s += sign * h[i - 1] * a[k - i - 1];
        }
        a.push(s);
    }
    a
}

/// `B_0 = 1, B_1 = tr H, B_2 = V, B_k = T* H^{k-3} T`, for `k <= kmax`.
fn b_sequence(p: &StructurePoint, kmax: usize) -> Vec<f64> {
    let mut b = vec![1.0, p.h().trace().re, p.v];
    let mut ht = p.t().clone();
    while b.len() <= kmax {
        b.push(p.t().dotc(&ht).re);
        ht = p.h() * ht;
    }
    b.truncate(kmax + 1);
    b
}

fn ck_from(h: &[f64], b: &[f64], k: usize) -> f64 {
    let mut s = 0.0;
    for j in 0..=k {
        let hj = if j == 0 {
            1.0
        } else if j <= h.len() {
            h[j - 1]
        } else {
            0.0
        };
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        s += sign * hj * b[k - j];
    }
    s
}

/// Conserved quantities `C_k = Σ_j (-1)^j h_j B_{k-j}`, `2 <= k <= n+2`.
pub fn conserved_ck(p: &StructurePoint) -> ConservedVector {
    let n = p.n();
    let h = momentum_h(p);
    let b = b_sequence(p, n + 2);
    let c1 = ck_from(&h, &b, 1);
    debug_assert!(c1.abs() <= 1e-9 * (1.0 + b[1].abs()), "C_1 = {c1}");
    ConservedVector {
        c: (2..=n + 2).map(|k| ck_from(&h, &b, k)).collect(),
    }
}

/// `C_1`, which vanishes identically; exposed as a self-check.
pub fn conserved_c1(p: &StructurePoint) -> f64 {
    ck_from(&momentum_h(p), &b_sequence(p, 1), 1)
}

/// Elementary symmetric functions of the eigenvalues of `H`.
pub fn momentum_h(p: &StructurePoint) -> Vec<f64> {
    newton_to_elementary(&invariants_phi(p).a)
}

/// `p_h(t) = det(tI - H)`.
pub fn momentum_poly(p: &StructurePoint) -> RealPolynomial {
    RealPolynomial::from_elementary(&momentum_h(p))
}

/// Symmetry algebra dimensions, orbit dimension and cohomogeneity.
pub fn symmetry_dims(p: &StructurePoint, tol: &Tolerances) -> SymmetryDims {
    let sd = spectral_data(p, tol);
    let mut dim_g0 = 0;
    let mut orbit = 0;
    let mut m = 0;
    for cl in &sd.clusters {
        dim_g0 += cl.rho;
        orbit += cl.tau;
        m += cl.m;
    }
    SymmetryDims {
        dim_g0,
        dim_g: dim_g0 + orbit,
        orbit_dim: orbit,
        cohomogeneity: m,
    }
}

/// Cayley-Hamilton defect `T* H^{k-n-3} p_h(H) T` at `k = n + 3`.
pub fn cayley_hamilton_defect(p: &StructurePoint) -> f64 {
    let n = p.n();
    let ph = momentum_poly(p);
    let mut acc = CMat::zeros(n, n);
    for coef in ph.coeffs() {
        acc = &acc * p.h() + CMat::identity(n, n) * c(*coef);
    }
    p.t().dotc(&(acc * p.t())).norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn ci(im: f64) -> Complex64 {
        Complex64::new(0.0, im)
    }

    #[test]
    fn act_by_phase() {
        let p = StructurePoint::from_parts(
            CMat::from_diagonal(&CVec::from_vec(vec![c(2.0), c(1.0)])),
            CVec::from_vec(vec![c(0.0), ci(3.0)]),
            5.0,
        )
        .unwrap();
        let a = CMat::from_diagonal(&CVec::from_vec(vec![c(1.0), ci(-1.0)]));
        let q = unitary_act(&p, &a).unwrap();
        assert_abs_diff_eq!(q.t()[1].re, 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(q.t()[1].im, 0.0, epsilon = 1e-15);
        assert_eq!(q.h(), p.h());
        assert_eq!(q.v(), 5.0);
    }

    #[test]
    fn rejects_non_unitary() {
        let p = StructurePoint::diagonal(&[1.0, 2.0], &[0.0, 0.0], 0.0).unwrap();
        let a = CMat::identity(2, 2) * c(1.1);
        assert!(matches!(unitary_act(&p, &a), Err(Error::NotUnitary { .. })));
    }

    #[test]
    fn scale_arithmetic() {
        let p = StructurePoint::diagonal(&[2.0], &[1.0], 3.0).unwrap();
        let q = scale(&p, 4.0).unwrap();
        assert_abs_diff_eq!(q.h()[(0, 0)].re, 0.5);
        assert_abs_diff_eq!(q.t()[0].re, 0.125);
        assert_abs_diff_eq!(q.v(), 0.1875);
        assert!(scale(&p, 0.0).is_err());
    }

    #[test]
    fn normal_form_sorts_and_rotates() {
        let p = StructurePoint::from_parts(
            CMat::from_diagonal(&CVec::from_vec(vec![c(1.0), c(2.0)])),
            CVec::from_vec(vec![ci(1.0), c(0.0)]),
            0.0,
        )
        .unwrap();
        let nf = normal_form(&p, &Tolerances::default()).point;
        assert_abs_diff_eq!(nf.h()[(0, 0)].re, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(nf.h()[(1, 1)].re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(nf.t()[0].norm(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(nf.t()[1].re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(nf.t()[1].im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn normal_form_block() {
        // double eigenvalue 1 carrying t = (3i, 4)
        let p = StructurePoint::from_parts(
            CMat::from_diagonal(&CVec::from_vec(vec![c(1.0), c(1.0), c(-1.0)])),
            CVec::from_vec(vec![ci(3.0), c(4.0), c(0.0)]),
            1.0,
        )
        .unwrap();
        let nf = normal_form(&p, &Tolerances::default()).point;
        assert_abs_diff_eq!(nf.t()[0].re, 5.0, epsilon = 1e-12);
        assert_abs_diff_eq!(nf.t()[1].norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn phi_hand_values() {
        let p = StructurePoint::diagonal(&[1.0, -1.0], &[1.0, 1.0], 2.0).unwrap();
        let phi = invariants_phi(&p);
        assert_eq!(phi.a, vec![0.0, 2.0]);
        assert_eq!(phi.b, vec![2.0, 2.0, 0.0]);

        let p = StructurePoint::diagonal(&[0.7], &[2.0], -1.5).unwrap();
        let phi = invariants_phi(&p);
        assert_eq!(phi.a, vec![0.7]);
        assert_eq!(phi.b, vec![-1.5, 4.0]);
    }

    #[test]
    fn newton_identities() {
        assert_eq!(newton_to_elementary(&[3.0, 5.0]), vec![3.0, 2.0]);
        assert_eq!(newton_to_elementary(&[0.0, 0.0, 0.0]), vec![0.0; 3]);
        let h = [1.5, -2.0, 0.25, 3.0];
        let back = newton_to_elementary(&elementary_to_newton(&h));
        for (x, y) in h.iter().zip(&back) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn n1_conserved() {
        let (h, t, v) = (0.3, 1.7, -0.4);
        let p = StructurePoint::diagonal(&[h], &[t], v).unwrap();
        let cv = conserved_ck(&p);
        assert_abs_diff_eq!(cv.get(2), v - h * h, epsilon = 1e-15);
        assert_abs_diff_eq!(cv.get(3), t * t - h * v, epsilon = 1e-15);
        assert_eq!(conserved_c1(&p), 0.0);
    }

    #[test]
    fn momentum() {
        let p = StructurePoint::diagonal(&[2.0, -2.0], &[0.0, 0.0], -4.0).unwrap();
        assert_eq!(momentum_h(&p), vec![0.0, -4.0]);
        assert_eq!(momentum_poly(&p).coeffs(), &[1.0, 0.0, -4.0]);
        let p = StructurePoint::diagonal(&[1.0, 1.0], &[0.0, 0.0], 0.0).unwrap();
        assert_eq!(momentum_poly(&p).coeffs(), &[1.0, -2.0, 1.0]);
    }

    #[test]
    fn dims() {
        let tol = Tolerances::default();
        let p = StructurePoint::diagonal(&[2.0, 1.0], &[1.0, 1.0], 0.3).unwrap();
        let d = symmetry_dims(&p, &tol);
        assert_eq!((d.dim_g0, d.dim_g, d.cohomogeneity), (0, 2, 2));

        let p = StructurePoint::diagonal(&[0.0, 0.0, 0.0], &[0.0; 3], 0.0).unwrap();
        let d = symmetry_dims(&p, &tol);
        assert_eq!((d.dim_g0, d.dim_g, d.cohomogeneity), (9, 15, 0));

        let p = StructurePoint::diagonal(&[-2.0, 2.0], &[0.0, 0.0], -4.0).unwrap();
        let d = symmetry_dims(&p, &tol);
        assert_eq!((d.dim_g0, d.dim_g, d.cohomogeneity), (2, 6, 0));
    }

    #[test]
    fn record_round_trip() {
        let p = StructurePoint::diagonal(&[1.0, -1.0], &[0.5, 0.0], 2.0).unwrap();
        let r = p.to_record();
        let q = StructurePoint::try_from(&r).unwrap();
        assert_eq!(p, q);
    }
}
