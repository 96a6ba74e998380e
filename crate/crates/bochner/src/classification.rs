//! Spectral data of a point, the characteristic polynomials, the root-pattern
//! taxonomy of the reduced polynomial, momentum cells and the inverse
//! construction of a point from a cell.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::poly::{elementary_symmetric, RealPolynomial};
use crate::structure_space::{cluster_sorted, momentum_poly, StructurePoint};

/// One eigenvalue cluster of `H`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cluster {
    pub h: f64,
    pub n: usize,
    pub tsq: f64,
    pub v: f64,
    pub m: usize,
    pub tau: usize,
    pub rho: usize,
    pub t_zero: bool,
    pub v_zero: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralData {
    pub clusters: Vec<Cluster>,
    pub trace: f64,
    pub v: f64,
}

impl SpectralData {
    pub fn cohomogeneity(&self) -> usize {
        self.clusters.iter().map(|c| c.m).sum()
    }
}

/// Eigen-clusters of `H` (descending) with projected `|T_α|²`, `V_α` and the
/// branch integers `m_α`, `τ_α`, `ρ_α`.
pub fn spectral_data(p: &StructurePoint, tol: &Tolerances) -> SpectralData {
    let (vals, u) = p.h_herm().eigen();
    let hnorm = p.h().norm();
    let tr = p.h().trace().re;
    let t_rot = u.adjoint() * p.t();
    let tnorm_sq = p.t().norm_squared();
    let groups = cluster_sorted(&vals, tol.cluster * (1.0 + hnorm));
    let raw: Vec<(f64, usize, f64)> = groups
        .iter()
        .map(|&(s, len)| {
            let h = vals[s..s + len].iter().sum::<f64>() / len as f64;
            let tsq = t_rot.rows(s, len).norm_squared();
            (h, len, tsq)
        })
        .collect();
    let mut clusters = Vec::with_capacity(raw.len());
    for (a, &(ha, na, tsq)) in raw.iter().enumerate() {
        let mut v = ha * ha + tr * ha + p.v();
        let mut size = ha * ha + (tr * ha).abs() + p.v().abs();
        for (b, &(hb, _, tb)) in raw.iter().enumerate() {
            if a != b {
                let term = tb / (ha - hb);
                v += term;
                size += term.abs();
            }
        }
        let t_zero = tsq.sqrt() <= tol.zero * (1.0 + tnorm_sq.sqrt());
        let v_zero = v.abs() <= tol.zero * (1.0 + size);
        let (m, tau, rho) = match (t_zero, v_zero) {
            (false, _) if na > 1 => (2, 1, (na - 1) * (na - 1)),
            (false, _) => (1, 1, 0),
            (true, false) => (1, 0, na * na),
            (true, true) => (0, 2 * na, na * na),
        };
        clusters.push(Cluster {
            h: ha,
            n: na,
            tsq,
            v,
            m,
            tau,
            rho,
            t_zero,
            v_zero,
        });
    }
    SpectralData {
        clusters,
        trace: tr,
        v: p.v(),
    }
}

/// `p_C(t) = det(tI - H)(t² + (tr H) t + V) + T* Cof(tI - H) T`, evaluated in
/// the eigenbasis of `H`.
pub fn char_poly_pc(p: &StructurePoint) -> RealPolynomial {
    let (vals, u) = p.h_herm().eigen();
    let t_rot = u.adjoint() * p.t();
    let tr = p.h().trace().re;
    let quad = RealPolynomial::new(vec![1.0, tr, p.v()]);
    let mut out = RealPolynomial::from_roots(&vals).mul(&quad);
    for i in 0..vals.len() {
        let others: Vec<f64> = vals
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, x)| *x)
            .collect();
        let term = RealPolynomial::from_roots(&others).scale(t_rot[i].norm_sqr());
        out = out.add(&term);
    }
    // the t^{n+1} coefficient cancels analytically
    let mut coeffs = out.coeffs().to_vec();
    if coeffs.len() > 1 {
        coeffs[1] = 0.0;
    }
    RealPolynomial::new(coeffs)
}

/// Reduced characteristic polynomial, the constant-root factor and the
/// cohomogeneity of a point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedPolys {
    pub p_d: RealPolynomial,
    pub p_hpp: RealPolynomial,
    pub m: usize,
}

/// `p_D` from the cluster product formula and `p_{h''} = Π (t - H_α)^{n_α - m_α}`.
pub fn reduced_polys(p: &StructurePoint, tol: &Tolerances) -> Result<ReducedPolys> {
    let sd = spectral_data(p, tol);
    let quad = RealPolynomial::new(vec![1.0, sd.trace, sd.v]);
    let lin = |h: f64| RealPolynomial::new(vec![1.0, -h]);
    let mut p_d = quad;
    for cl in &sd.clusters {
        p_d = p_d.mul(&lin(cl.h).pow(cl.m));
    }
    for (a, cl) in sd.clusters.iter().enumerate() {
        if cl.t_zero {
            continue;
        }
        let mut term = RealPolynomial::new(vec![cl.tsq]);
        for (b, other) in sd.clusters.iter().enumerate() {
            let e = if a == b { other.m - 1 } else { other.m };
            term = term.mul(&lin(other.h).pow(e));
        }
        p_d = p_d.add(&term);
    }
    let mut p_hpp = RealPolynomial::one();
    for cl in &sd.clusters {
        p_hpp = p_hpp.mul(&lin(cl.h).pow(cl.n - cl.m));
    }
    let pc = char_poly_pc(p);
    let prod = p_hpp.mul(&p_d);
    let resid = prod.max_coeff_diff(&pc);
    if resid > tol.poly_residual * (1.0 + pc.max_abs_coeff()) {
        return Err(Error::Inconsistent(format!(
            "p_h'' p_D differs from p_C by {resid:.3e}; eigenvalue clustering is likely misconfigured"
        )));
    }
    Ok(ReducedPolys {
        m: sd.cohomogeneity(),
        p_d,
        p_hpp,
    })
}

/// Coefficients `(h'_1, ..., h'_m)` of the reduced momentum polynomial
/// `p_{h'} = p_h / p_{h''}`.
pub fn reduced_momentum(p: &StructurePoint, tol: &Tolerances) -> Result<Vec<f64>> {
    let rp = reduced_polys(p, tol)?;
    let (q, _) = momentum_poly(p).div_rem(&rp.p_hpp);
    Ok(q.elementary())
}

/// Root taxonomy of `p_D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sub {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseTag {
    Case1,
    /// label of the triple root
    Case2(usize),
    /// label of the double root and the subcase
    Case3(usize, Sub),
    /// the index `i` with `μ_i = i`
    Case4(usize),
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::Case1 => write!(f, "1"),
            CaseTag::Case2(i) => write!(f, "2-{i}"),
            CaseTag::Case3(i, Sub::A) => write!(f, "3-{i}a"),
            CaseTag::Case3(i, Sub::B) => write!(f, "3-{i}b"),
            CaseTag::Case4(i) => write!(f, "4-{i}"),
        }
    }
}

/// A spectral band; infinite ends are never closed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub lo: f64,
    pub hi: f64,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl Band {
    pub fn is_bounded(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        let lo_ok = if self.lo_closed {
            x >= self.lo - tol
        } else {
            x > self.lo - tol
        };
        let hi_ok = if self.hi_closed {
            x <= self.hi + tol
        } else {
            x < self.hi + tol
        };
        lo_ok && hi_ok
    }
}

/// Affine functional `l(u) = constant + Σ coeffs[i] u_{i+1}` attached to a
/// simple real root.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Face {
    pub root: f64,
    pub constant: f64,
    pub coeffs: Vec<f64>,
}

impl Face {
    pub fn eval(&self, u: &[f64]) -> f64 {
        self.constant + self.coeffs.iter().zip(u).map(|(a, b)| a * b).sum::<f64>()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MomentumCell {
    pub p_d: RealPolynomial,
    pub m: usize,
    pub case: CaseTag,
    /// distinct real roots, descending
    pub roots: Vec<f64>,
    pub mults: Vec<usize>,
    /// `μ` for each listed root
    pub mu: Vec<usize>,
    pub bands: Vec<Band>,
    pub faces: Vec<Face>,
}

impl MomentumCell {
    /// Case label of the `idx`-th listed root.
    pub fn root_label(&self, idx: usize) -> usize {
        match self.case {
            CaseTag::Case4(_) => idx,
            _ => idx + 1,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.bands.iter().all(Band::is_bounded)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Membership {
    Interior,
    Boundary,
    Outside,
}

/// Real roots of `p_D` (descending, with multiplicity) after checking the
/// four admissible root patterns. Returns `(roots, mults, m)`.
fn root_pattern(p_d: &RealPolynomial) -> Result<(Vec<f64>, Vec<usize>, usize)> {
    if !p_d.is_monic() {
        return Err(Error::InvalidReducedPoly("p_D must be monic".into()));
    }
    let d = p_d.degree();
    if d < 2 {
        return Err(Error::InvalidReducedPoly(format!("degree {d} < 2")));
    }
    let m = d - 2;
    let real = p_d.real_roots();
    let roots: Vec<f64> = real.iter().map(|r| r.0).collect();
    let mults: Vec<usize> = real.iter().map(|r| r.1).collect();
    let total: usize = mults.iter().sum();
    let count = |k: usize| mults.iter().filter(|&&x| x == k).count();
    let ok = match roots.len() {
        l if l == m => {
            (total == m && count(1) == m) || (total == m + 2 && count(3) == 1 && count(1) == m - 1)
        }
        l if l == m + 1 => total == m + 2 && count(2) == 1,
        l if l == m + 2 => total == m + 2 && count(1) == m + 2,
        _ => false,
    };
    if !ok {
        return Err(Error::InvalidReducedPoly(format!(
            "real roots {:?} with multiplicities {:?} fit none of the four patterns for degree {d}",
            roots, mults
        )));
    }
    Ok((roots, mults, m))
}

/// Bands from `μ`: `I_j` runs from the largest root with `μ ≥ j` to the
/// smallest root with `μ < j`; an end is closed when that root is simple.
fn bands_from_mu(roots: &[f64], mults: &[usize], mu: &[usize], m: usize) -> Vec<Band> {
    (1..=m)
        .map(|j| {
            let lo = roots
                .iter()
                .zip(mults)
                .zip(mu)
                .filter(|(_, &mi)| mi >= j)
                .map(|((r, k), _)| (*r, *k))
                .fold(None, |acc: Option<(f64, usize)>, x| match acc {
                    Some(a) if a.0 >= x.0 => Some(a),
                    _ => Some(x),
                });
            let hi = roots
                .iter()
                .zip(mults)
                .zip(mu)
                .filter(|(_, &mi)| mi < j)
                .map(|((r, k), _)| (*r, *k))
                .fold(None, |acc: Option<(f64, usize)>, x| match acc {
                    Some(a) if a.0 <= x.0 => Some(a),
                    _ => Some(x),
                });
            Band {
                lo: lo.map_or(f64::NEG_INFINITY, |x| x.0),
                hi: hi.map_or(f64::INFINITY, |x| x.0),
                lo_closed: lo.is_some_and(|x| x.1 == 1),
                hi_closed: hi.is_some_and(|x| x.1 == 1),
            }
        })
        .collect()
}

/// `l_α(u) = -(r^m - r^{m-1}u_1 + ... + (-1)^m u_m) / p_D'(r)` for each
/// listed root. All roots must be simple.
pub fn face_functionals(p_d: &RealPolynomial, roots: &[f64]) -> Result<Vec<Face>> {
    let m = p_d
        .degree()
        .checked_sub(2)
        .ok_or_else(|| Error::InvalidReducedPoly("degree below 2".into()))?;
    let dp = p_d.derivative();
    roots
        .iter()
        .map(|&r| {
            let d = dp.eval(r);
            if d.abs() <= 1e-10 * (1.0 + dp.max_abs_coeff()) {
                return Err(Error::InvalidReducedPoly(format!(
                    "root {r} is not simple; face functional undefined"
                )));
            }
            let coeffs = (1..=m)
                .map(|i| {
                    let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                    -sign * r.powi((m - i) as i32) / d
                })
                .collect();
            Ok(Face {
                root: r,
                constant: -r.powi(m as i32) / d,
                coeffs,
            })
        })
        .collect()
}

fn make_cell(
    p_d: &RealPolynomial,
    roots: &[f64],
    mults: &[usize],
    mu: Vec<usize>,
    m: usize,
    case: CaseTag,
) -> MomentumCell {
    let simple: Vec<f64> = roots
        .iter()
        .zip(mults)
        .filter(|(_, &k)| k == 1)
        .map(|(r, _)| *r)
        .collect();
    let faces = face_functionals(p_d, &simple).unwrap_or_default();
    MomentumCell {
        p_d: p_d.clone(),
        m,
        case,
        roots: roots.to_vec(),
        mults: mults.to_vec(),
        bands: bands_from_mu(roots, mults, &mu, m),
        mu,
        faces,
    }
}

/// All possible momentum cells of `p_D`.
pub fn classify_cells(p_d: &RealPolynomial) -> Result<Vec<MomentumCell>> {
    let (roots, mults, m) = root_pattern(p_d)?;
    let l = roots.len();
    let mut out = Vec::new();
    if l == m {
        // labels 1..=m, μ_i = i
        let mu: Vec<usize> = (1..=m).collect();
        let case = match mults.iter().position(|&k| k == 3) {
            Some(pos) => CaseTag::Case2(pos + 1),
            None => CaseTag::Case1,
        };
        out.push(make_cell(p_d, &roots, &mults, mu, m, case));
    } else if l == m + 1 {
        let i = mults.iter().position(|&k| k == 2).unwrap() + 1;
        let base = |mi: usize| -> Vec<usize> {
            (1..=m + 1)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Less => j,
                    std::cmp::Ordering::Greater => j - 1,
                    std::cmp::Ordering::Equal => mi,
                })
                .collect()
        };
        if i != m + 1 {
            out.push(make_cell(
                p_d,
                &roots,
                &mults,
                base(i),
                m,
                CaseTag::Case3(i, Sub::A),
            ));
        }
        out.push(make_cell(
            p_d,
            &roots,
            &mults,
            base(i - 1),
            m,
            CaseTag::Case3(i, Sub::B),
        ));
    } else {
        // labels 0..=m+1
        for i in 0..=m {
            let mu = (0..=m + 1)
                .map(|j| match j.cmp(&i) {
                    std::cmp::Ordering::Less => j + 1,
                    std::cmp::Ordering::Greater => j - 1,
                    std::cmp::Ordering::Equal => i,
                })
                .collect();
            out.push(make_cell(p_d, &roots, &mults, mu, m, CaseTag::Case4(i)));
        }
    }
    Ok(out)
}

/// `p_k(t) = t^m - k_1 t^{m-1} + ... + (-1)^m k_m`.
pub fn p_k(k: &[f64]) -> RealPolynomial {
    RealPolynomial::from_elementary(k)
}

/// Signed half-space test at every real root of `p_D`.
pub fn cell_membership(cell: &MomentumCell, k: &[f64], tol: &Tolerances) -> Result<Membership> {
    if k.len() != cell.m {
        return Err(Error::Dimension(format!(
            "k has length {}, cell has m = {}",
            k.len(),
            cell.m
        )));
    }
    let pk = p_k(k);
    let mut on_face = false;
    for ((r, mult), mu) in cell.roots.iter().zip(&cell.mults).zip(&cell.mu) {
        let sign = if mu % 2 == 0 { 1.0 } else { -1.0 };
        let val = sign * pk.eval(*r);
        let scale: f64 = pk
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c.abs() * r.abs().powi((cell.m - i) as i32))
            .sum();
        let eps = tol.zero * (1.0 + scale);
        if *mult > 1 {
            if val <= eps {
                return Ok(Membership::Outside);
            }
        } else if val < -eps {
            return Ok(Membership::Outside);
        } else if val <= eps {
            on_face = true;
        }
    }
    Ok(if on_face {
        Membership::Boundary
    } else {
        Membership::Interior
    })
}

/// The symmetrizing map σ.
pub fn sigma(y: &[f64]) -> Vec<f64> {
    elementary_symmetric(y)
}

/// Inverse of σ on descending tuples: the roots of `p_k`, descending.
pub fn lambda(k: &[f64]) -> Result<Vec<f64>> {
    if k.is_empty() {
        return Ok(Vec::new());
    }
    p_k(k).all_real_roots_desc()
}

/// The pair `(σ, λ)` for a cell; the maps do not depend on the cell, which only
/// fixes where λ lands.
pub fn bands_and_sigma(
    _cell: &MomentumCell,
) -> (fn(&[f64]) -> Vec<f64>, fn(&[f64]) -> Result<Vec<f64>>) {
    (sigma, lambda)
}

/// Builds `(s, t, v)` with characteristic polynomials `p_C`, `p_D` and reduced
/// momentum `k`, following the partial-fraction recipe.
pub fn construct_from_cell(
    p_c: &RealPolynomial,
    p_d: &RealPolynomial,
    cell: &MomentumCell,
    k: &[f64],
    tol: &Tolerances,
) -> Result<StructurePoint> {
    if p_c.degree() < p_d.degree() {
        return Err(Error::InvalidPair("deg p_C < deg p_D".into()));
    }
    if p_c.coeff_of(p_c.degree() - 1).abs() > tol.poly_residual * (1.0 + p_c.max_abs_coeff()) {
        return Err(Error::InvalidPair(
            "p_C has a nonzero t^{n+1} coefficient".into(),
        ));
    }
    let (p_hpp, rem) = p_c.div_rem(p_d);
    if rem.max_abs_coeff() > tol.poly_residual * (1.0 + p_c.max_abs_coeff()) {
        return Err(Error::InvalidPair(format!(
            "p_D does not divide p_C (remainder {:.3e})",
            rem.max_abs_coeff()
        )));
    }
    let hpp_roots = if p_hpp.degree() == 0 {
        Vec::new()
    } else {
        p_hpp
            .all_real_roots_desc()
            .map_err(|_| Error::InvalidPair("p_C/p_D has non-real roots".into()))?
    };
    for r in &hpp_roots {
        let near = cell
            .roots
            .iter()
            .any(|x| (x - r).abs() <= 1e-6 * (1.0 + r.abs()));
        if !near {
            return Err(Error::InvalidPair(format!(
                "root {r} of p_C/p_D is not a real root of p_D"
            )));
        }
    }
    if cell_membership(cell, k, tol)? == Membership::Outside {
        return Err(Error::InvalidCellPoint(format!(
            "k = {k:?} lies outside cell {}",
            cell.case
        )));
    }
    let m = cell.m;
    let pk = p_k(k);
    let (quot, _) = p_d.div_rem(&pk);
    let b1 = quot.coeff_of(1);
    let b2 = quot.coeff_of(0);
    // roots of p_k grouped by multiplicity, descending
    let grouped: Vec<(f64, usize)> = if m == 0 { Vec::new() } else { pk.real_roots() };
    if grouped.iter().map(|g| g.1).sum::<usize>() != m {
        return Err(Error::InvalidCellPoint("p_k has non-real roots".into()));
    }
    let dpd = p_d.derivative();
    let mut s = Vec::with_capacity(m);
    let mut q = Vec::with_capacity(m);
    for (gi, &(sj, mult)) in grouped.iter().enumerate() {
        let others: f64 = grouped
            .iter()
            .enumerate()
            .filter(|(gk, _)| *gk != gi)
            .map(|(_, &(sl, ml))| (sj - sl).powi(ml as i32))
            .product();
        match mult {
            1 => {
                s.push(sj);
                q.push(p_d.eval(sj) / others);
            }
            2 => {
                s.push(sj);
                s.push(sj);
                q.push(dpd.eval(sj) / others);
                q.push(0.0);
            }
            _ => {
                return Err(Error::InvalidCellPoint(format!(
                    "p_k has a root of multiplicity {mult}"
                )))
            }
        }
    }
    let mut t = Vec::with_capacity(m);
    for (i, qi) in q.iter().enumerate() {
        if *qi < -tol.clamp * (1.0 + p_d.max_abs_coeff()) {
            return Err(Error::InvalidCellPoint(format!(
                "partial-fraction residue q_{} = {qi:.3e} is negative",
                i + 1
            )));
        }
        t.push(qi.max(0.0).sqrt());
    }
    s.extend_from_slice(&hpp_roots);
    t.resize(s.len(), 0.0);
    let tr: f64 = s.iter().sum();
    if (tr - b1).abs() > 1e-8 * (1.0 + tr.abs()) {
        return Err(Error::InvalidPair(format!(
            "tr s = {tr} differs from b_1 = {b1}"
        )));
    }
    StructurePoint::diagonal(&s, &t, b2)
}

/// Cells of `p_D` whose closure contains `k`.
///
/// At an interior point the count from [`mu_from_point`] already fixes `μ`; on
/// a face the strict count drops by one at that root and the cell is only
/// determined by which closed cell `k` belongs to.
pub fn cells_containing(
    p_d: &RealPolynomial,
    k: &[f64],
    tol: &Tolerances,
) -> Result<Vec<MomentumCell>> {
    let mut out = Vec::new();
    for cell in classify_cells(p_d)? {
        if cell_membership(&cell, k, tol)? != Membership::Outside {
            out.push(cell);
        }
    }
    Ok(out)
}

/// `μ_i` = number of roots of `p_{h'}` strictly above `r_i`.
pub fn mu_from_point(p: &StructurePoint, roots: &[f64], tol: &Tolerances) -> Result<Vec<usize>> {
    let k = reduced_momentum(p, tol)?;
    let lam = lambda(&k)?;
    Ok(roots
        .iter()
        .map(|r| {
            lam.iter()
                .filter(|l| **l > r + tol.cluster * (1.0 + r.abs()))
                .count()
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Completeness {
    PossiblyComplete,
    OrbifoldOnly,
    NeverComplete,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseVerdict {
    pub bounded: bool,
    pub completeness: Completeness,
    pub notes: String,
}

/// Boundedness and completeness verdict for a cell.
pub fn verdict(cell: &MomentumCell) -> CaseVerdict {
    if cell.m == 0 {
        return CaseVerdict {
            bounded: true,
            completeness: Completeness::PossiblyComplete,
            notes: "m = 0: the cell is a point and the metric is locally symmetric".into(),
        };
    }
    match cell.case {
        CaseTag::Case3(1, Sub::B) => CaseVerdict {
            bounded: true,
            completeness: Completeness::PossiblyComplete,
            notes: "the only bounded cell with a missing face".into(),
        },
        CaseTag::Case4(0) => CaseVerdict {
            bounded: true,
            completeness: Completeness::OrbifoldOnly,
            notes: "compact cell; completions are orbifolds only".into(),
        },
        _ => CaseVerdict {
            bounded: false,
            completeness: Completeness::NeverComplete,
            notes: "unbounded cell: curvature blows up at finite distance".into(),
        },
    }
}

/// Roots `r_β = r Σ_α (ν_α + 1)(p_α - p_β)` and the polynomials
/// `p_D = Π (t - r_β)`, `p_C = Π (t - r_β)^{ν_β + 1}`.
///
/// `p` must start with `0` and be strictly increasing, with the positive
/// entries having gcd 1.
pub fn orbifold_case40(r: f64, p: &[u64], nu: &[u64]) -> Result<(RealPolynomial, RealPolynomial)> {
    if !(r > 0.0) {
        return Err(Error::Parameter(format!("r must be positive, got {r}")));
    }
    if p.len() < 2 || p[0] != 0 {
        return Err(Error::Parameter(
            "p must start with 0 and have at least two entries".into(),
        ));
    }
    if p.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter(format!(
            "p = {p:?} is not strictly increasing"
        )));
    }
    let g = p[1..].iter().fold(0, |a, &b| gcd(a, b));
    if g != 1 {
        return Err(Error::Parameter(format!(
            "gcd of p = {p:?} is {g}, expected 1"
        )));
    }
    if nu.len() != p.len() {
        return Err(Error::Parameter(format!(
            "nu has length {}, expected {}",
            nu.len(),
            p.len()
        )));
    }
    let roots = orbifold_roots(r, p, nu);
    let p_d = RealPolynomial::from_roots(&roots);
    let mut p_c = RealPolynomial::one();
    for (rb, nb) in roots.iter().zip(nu) {
        p_c = p_c.mul(&RealPolynomial::new(vec![1.0, -rb]).pow(*nb as usize + 1));
    }
    Ok((p_c, p_d))
}

pub fn orbifold_roots(r: f64, p: &[u64], nu: &[u64]) -> Vec<f64> {
    p.iter()
        .map(|&pb| {
            r * p
                .iter()
                .zip(nu)
                .map(|(&pa, &na)| (na as f64 + 1.0) * (pa as f64 - pb as f64))
                .sum::<f64>()
        })
        .collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Holomorphic sectional curvature `c = 4 p_D'(r) / p_{h'}(r)` of the factor of
/// the reduced space belonging to a constant root `r` (a root of `p_{h''}`).
pub fn reduced_space_curvature(r: f64, p: &StructurePoint, tol: &Tolerances) -> Result<f64> {
    let rp = reduced_polys(p, tol)?;
    let hpp_val = rp.p_hpp.eval(r);
    let near_root = rp
        .p_hpp
        .real_roots()
        .iter()
        .any(|x| (x.0 - r).abs() <= 1e-6 * (1.0 + r.abs()));
    if rp.p_hpp.degree() == 0 || !near_root {
        return Err(Error::Precondition(format!(
            "{r} is not a constant root of the momentum polynomial (p_h''({r}) = {hpp_val:.3e})"
        )));
    }
    let (ph1, _) = momentum_poly(p).div_rem(&rp.p_hpp);
    let den = ph1.eval(r);
    if den.abs() <= tol.zero * (1.0 + ph1.max_abs_coeff()) {
        return Err(Error::Singular(format!("p_h'({r}) vanishes")));
    }
    Ok(4.0 * rp.p_d.derivative().eval(r) / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn spectral_space_form() {
        let p = StructurePoint::diagonal(&[-2.0, 2.0], &[0.0, 0.0], -4.0).unwrap();
        let sd = spectral_data(&p, &tol());
        assert_eq!(sd.clusters.len(), 2);
        assert!(sd.clusters.iter().all(|c| c.v_zero && c.m == 0));
    }

    #[test]
    fn spectral_branches() {
        let p = StructurePoint::diagonal(&[0.0], &[0.0], 1.0).unwrap();
        let sd = spectral_data(&p, &tol());
        assert_eq!(sd.clusters[0].m, 1);
        assert_abs_diff_eq!(sd.clusters[0].v, 1.0);
        let p = StructurePoint::diagonal(&[2.0, 1.0], &[1.0, 1.0], 0.0).unwrap();
        let sd = spectral_data(&p, &tol());
        assert!(sd.clusters.iter().all(|c| c.m == 1));
    }

    #[test]
    fn pc_examples() {
        let p = StructurePoint::diagonal(&[-2.0, 2.0], &[0.0, 0.0], -4.0).unwrap();
        assert_eq!(char_poly_pc(&p).coeffs(), &[1.0, 0.0, -8.0, 0.0, 16.0]);
        let p = StructurePoint::diagonal(&[0.0; 3], &[0.0; 3], 0.0).unwrap();
        assert_eq!(char_poly_pc(&p), RealPolynomial::monomial(5));
        let p = StructurePoint::diagonal(&[-0.5], &[0.375f64.sqrt()], -0.75).unwrap();
        let pc = char_poly_pc(&p);
        assert!(pc.max_coeff_diff(&RealPolynomial::new(vec![1.0, 0.0, -1.0, 0.0])) < 1e-15);
    }

    #[test]
    fn reduced_space_form() {
        let p = StructurePoint::diagonal(&[-2.0, 2.0], &[0.0, 0.0], -4.0).unwrap();
        let rp = reduced_polys(&p, &tol()).unwrap();
        assert_eq!(rp.m, 0);
        assert_eq!(rp.p_d.coeffs(), &[1.0, 0.0, -4.0]);
        assert_eq!(rp.p_hpp.coeffs(), &[1.0, 0.0, -4.0]);
    }

    #[test]
    fn cells_of_cubic() {
        let pd = RealPolynomial::from_roots(&[1.0, 0.0, -1.0]);
        let cells = classify_cells(&pd).unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[0].case, CaseTag::Case4(0));
        assert_eq!(cells[0].mu, vec![0, 0, 1]);
        let b = cells[0].bands[0];
        assert_eq!(
            (b.lo, b.hi, b.lo_closed, b.hi_closed),
            (-1.0, 0.0, true, true)
        );
        assert_eq!(cells[1].case, CaseTag::Case4(1));
        // p_D < 0 on (0, 1), so the second cell is the upper ray
        let b = cells[1].bands[0];
        assert_eq!((b.lo, b.hi, b.lo_closed), (1.0, f64::INFINITY, true));
        let t = tol();
        assert_eq!(
            cell_membership(&cells[0], &[-0.5], &t).unwrap(),
            Membership::Interior
        );
        assert_eq!(
            cell_membership(&cells[0], &[0.0], &t).unwrap(),
            Membership::Boundary
        );
        assert_eq!(
            cell_membership(&cells[0], &[0.5], &t).unwrap(),
            Membership::Outside
        );
    }

    #[test]
    fn case2_band() {
        // (t-1)^3, m = 1: I_1 = (1, ∞)
        let pd = RealPolynomial::from_roots(&[1.0, 1.0, 1.0]);
        let cells = classify_cells(&pd).unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].case, CaseTag::Case2(1));
        let b = cells[0].bands[0];
        assert_eq!((b.lo, b.hi, b.lo_closed), (1.0, f64::INFINITY, false));
        // m = 2, r1 = 1 triple, r2 = -3: I_1 = (1,∞), I_2 = [-3, 1)
        let pd = RealPolynomial::from_roots(&[1.0, 1.0, 1.0, -3.0]);
        let cells = classify_cells(&pd).unwrap();
        let b = &cells[0].bands;
        assert_eq!(
            (b[1].lo, b[1].hi, b[1].lo_closed, b[1].hi_closed),
            (-3.0, 1.0, true, false)
        );
    }

    #[test]
    fn case1_single_closed_cell() {
        // (t^2 + 1)(t - 2), m = 1
        let pd = RealPolynomial::new(vec![1.0, -2.0, 1.0, -2.0]);
        let cells = classify_cells(&pd).unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].case, CaseTag::Case1);
        assert_eq!(cells[0].bands[0].lo_closed, true);
        assert!(!cells[0].is_bounded());
    }

    #[test]
    fn case3_cells() {
        // (t-1)^2 (t+2), m = 1: double root r1 = 1, 3-1a and 3-1b
        let pd = RealPolynomial::from_roots(&[1.0, 1.0, -2.0]);
        let cells = classify_cells(&pd).unwrap();
        assert_eq!(cells.len(), 2);
        assert_eq!(cells[0].case, CaseTag::Case3(1, Sub::A));
        assert_eq!(cells[1].case, CaseTag::Case3(1, Sub::B));
        assert!(!cells[0].is_bounded());
        assert!(cells[1].is_bounded());
        let b = cells[1].bands[0];
        assert_eq!(
            (b.lo, b.hi, b.lo_closed, b.hi_closed),
            (-2.0, 1.0, true, false)
        );
        // double root at the bottom: single cell
        let pd = RealPolynomial::from_roots(&[2.0, -1.0, -1.0]);
        let cells = classify_cells(&pd).unwrap();
        assert_eq!(cells.len(), 1);
        assert_eq!(cells[0].case, CaseTag::Case3(2, Sub::B));
    }

    #[test]
    fn rejects_bad_patterns() {
        let pd = RealPolynomial::from_roots(&[1.0, 1.0, 1.0, 1.0]);
        assert!(classify_cells(&pd).is_err());
        // two double roots
        let pd = RealPolynomial::from_roots(&[1.0, 1.0, -1.0, -1.0]);
        assert!(classify_cells(&pd).is_err());
    }

    #[test]
    fn sigma_lambda() {
        assert_eq!(sigma(&[2.0, 1.0]), vec![3.0, 2.0]);
        let l = lambda(&[3.0, 2.0]).unwrap();
        assert_abs_diff_eq!(l[0], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(l[1], 1.0, epsilon = 1e-12);
        assert!(lambda(&[0.0, 1.0]).is_err());
    }

    #[test]
    fn construct_worked_example() {
        let pd = RealPolynomial::from_roots(&[1.0, 0.0, -1.0]);
        let cells = classify_cells(&pd).unwrap();
        let p = construct_from_cell(&pd, &pd, &cells[0], &[-0.5], &tol()).unwrap();
        assert_abs_diff_eq!(p.h()[(0, 0)].re, -0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(p.t()[0].re, 0.375f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(p.v(), -0.75, epsilon = 1e-14);
        assert!(matches!(
            construct_from_cell(&pd, &pd, &cells[0], &[0.5], &tol()),
            Err(Error::InvalidCellPoint(_))
        ));
    }

    #[test]
    fn construct_space_form() {
        let pc = RealPolynomial::from_roots(&[2.0, 2.0, -2.0, -2.0]);
        let pd = RealPolynomial::from_roots(&[2.0, -2.0]);
        let cells = classify_cells(&pd).unwrap();
        assert_eq!(cells.len(), 1);
        let p = construct_from_cell(&pc, &pd, &cells[0], &[], &tol()).unwrap();
        assert_abs_diff_eq!(p.h()[(0, 0)].re, 2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(p.h()[(1, 1)].re, -2.0, epsilon = 1e-10);
        assert_abs_diff_eq!(p.v(), -4.0, epsilon = 1e-12);
        assert!(p.t().norm() == 0.0);
    }

    #[test]
    fn faces_of_cubic() {
        let pd = RealPolynomial::from_roots(&[1.0, 0.0, -1.0]);
        let f = face_functionals(&pd, &[1.0, 0.0, -1.0]).unwrap();
        // l0 = (u-1)/2, l1 = -u, l2 = (u+1)/2
        assert_abs_diff_eq!(f[0].constant, -0.5);
        assert_abs_diff_eq!(f[0].coeffs[0], 0.5);
        assert_abs_diff_eq!(f[1].constant, 0.0);
        assert_abs_diff_eq!(f[1].coeffs[0], -1.0);
        assert_abs_diff_eq!(f[2].constant, 0.5);
        assert_abs_diff_eq!(f[2].coeffs[0], 0.5);
    }

    #[test]
    fn verdicts() {
        let pd = RealPolynomial::from_roots(&[1.0, 0.0, -1.0]);
        let cells = classify_cells(&pd).unwrap();
        assert_eq!(verdict(&cells[0]).completeness, Completeness::OrbifoldOnly);
        assert!(verdict(&cells[0]).bounded);
        assert!(!verdict(&cells[1]).bounded);
        let pd = RealPolynomial::new(vec![1.0, -2.0, 1.0, -2.0]);
        let c = &classify_cells(&pd).unwrap()[0];
        assert_eq!(verdict(c).completeness, Completeness::NeverComplete);
    }

    #[test]
    fn orbifold_formula() {
        let (pc, pd) = orbifold_case40(1.0, &[0, 1, 2], &[0, 0, 0]).unwrap();
        assert_eq!(
            orbifold_roots(1.0, &[0, 1, 2], &[0, 0, 0]),
            vec![3.0, 0.0, -3.0]
        );
        assert_eq!(pc, pd);
        assert!(pd.max_coeff_diff(&RealPolynomial::from_roots(&[3.0, 0.0, -3.0])) < 1e-14);
        assert!(orbifold_case40(1.0, &[0, 2, 4], &[0, 0, 0]).is_err());
        assert!(orbifold_case40(1.0, &[0, 2, 1], &[0, 0, 0]).is_err());
        let (pc, pd2) = orbifold_case40(1.0, &[0, 1, 2], &[1, 0, 2]).unwrap();
        assert_eq!(pc.degree(), 6);
        assert_eq!(pd2.degree(), 3);
        assert!(pc.coeff_of(5).abs() < 1e-10);
    }

    #[test]
    fn reduced_curvature_space_form() {
        // p_D = (t+2)(t-2), m = 0: c = 4 p_D'(r)
        let p = StructurePoint::diagonal(&[-2.0, 2.0], &[0.0, 0.0], -4.0).unwrap();
        let c = reduced_space_curvature(2.0, &p, &tol()).unwrap();
        assert_abs_diff_eq!(c, 16.0, epsilon = 1e-9);
        let c = reduced_space_curvature(-2.0, &p, &tol()).unwrap();
        assert_abs_diff_eq!(c, -16.0, epsilon = 1e-9);
        assert!(reduced_space_curvature(1.0, &p, &tol()).is_err());
    }
}
