//! Real polynomials with root and multiplicity extraction.
//!
//! Coefficients are stored leading term first, so `t^3 - t` is `[1, 0, -1, 0]`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// A root together with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: Complex64,
    pub multiplicity: usize,
}

impl Root {
    pub fn is_real(&self) -> bool {
        self.value.im.abs() <= 1e-8 * (1.0 + self.value.norm())
    }
}

/// Polynomial with real coefficients, leading coefficient first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl RealPolynomial {
    /// Builds a polynomial from coefficients, leading first. Leading zeros are dropped.
    pub fn new(coeffs: Vec<f64>) -> Self {
        let first = coeffs.iter().position(|c| *c != 0.0);
        let coeffs = match first {
            Some(i) => coeffs[i..].to_vec(),
            None => vec![0.0],
        };
        Self { coeffs }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1.0] }
    }

    /// `t^d`
    pub fn monomial(d: usize) -> Self {
        let mut c = vec![0.0; d + 1];
        c[0] = 1.0;
        Self { coeffs: c }
    }

    /// Monic polynomial with the given real roots.
    pub fn from_roots(roots: &[f64]) -> Self {
        let mut p = Self::one();
        for &r in roots {
            p = p.mul(&Self::new(vec![1.0, -r]));
        }
        p
    }

    /// `t^m - e1 t^{m-1} + e2 t^{m-2} - ...`, the polynomial whose roots have
    /// elementary symmetric functions `e`.
    pub fn from_elementary(e: &[f64]) -> Self {
        let mut c = Vec::with_capacity(e.len() + 1);
        c.push(1.0);
        for (k, ek) in e.iter().enumerate() {
            let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
            c.push(sign * ek);
        }
        Self { coeffs: c }
    }

    /// Inverse of [`RealPolynomial::from_elementary`] for a monic polynomial.
    pub fn elementary(&self) -> Vec<f64> {
        let lead = self.coeffs[0];
        self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let sign = if k % 2 == 0 { -1.0 } else { 1.0 };
                sign * c / lead
            })
            .collect()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn is_monic(&self) -> bool {
        (self.coeffs[0] - 1.0).abs() <= 1e-14
    }

    /// Coefficient of `t^k`.
    pub fn coeff_of(&self, k: usize) -> f64 {
        let d = self.degree();
        if k > d {
            0.0
        } else {
            self.coeffs[d - k]
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, c| acc * t + c)
    }

    pub fn eval_complex(&self, t: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, c| acc * t + c)
    }

    pub fn derivative(&self) -> Self {
        let d = self.degree();
        if d == 0 {
            return Self::new(vec![0.0]);
        }
        Self::new(
            self.coeffs[..d]
                .iter()
                .enumerate()
                .map(|(i, c)| c * (d - i) as f64)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![0.0; n];
        for (k, c) in self.coeffs.iter().rev().enumerate() {
            out[n - 1 - k] += c;
        }
        for (k, c) in other.coeffs.iter().rev().enumerate() {
            out[n - 1 - k] += c;
        }
        Self::new(out)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division; returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dn = divisor.degree();
        let lead = divisor.coeffs[0];
        if self.degree() < dn {
            return (Self::new(vec![0.0]), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let qlen = self.degree() - dn + 1;
        let mut q = vec![0.0; qlen];
        for i in 0..qlen {
            let f = rem[i] / lead;
            q[i] = f;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= f * d;
            }
        }
        let r = if dn == 0 {
            vec![0.0]
        } else {
            rem[qlen..].to_vec()
        };
        (Self::new(q), Self::new(r))
    }

    /// Largest absolute coefficient.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// Max coefficient difference, padding the shorter polynomial with zeros.
    pub fn max_coeff_diff(&self, other: &Self) -> f64 {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n)
            .map(|k| (self.coeff_of(k) - other.coeff_of(k)).abs())
            .fold(0.0, f64::max)
    }

    /// Taylor coefficients `p^{(j)}(c)/j!` for `j = 0..=d`, with a rounding
    /// bound for each.
    fn taylor_at(&self, c: Complex64) -> Vec<(Complex64, f64)> {
        let d = self.degree();
        let mut work: Vec<Complex64> = self
            .coeffs
            .iter()
            .map(|x| Complex64::new(*x, 0.0))
            .collect();
        let mut absw: Vec<f64> = self.coeffs.iter().map(|x| x.abs()).collect();
        let cn = c.norm();
        let mut out = Vec::with_capacity(d + 1);
        // repeated synthetic division by (t - c)
        for j in 0..=d {
            let len = d + 1 - j;
            for i in 1..len {
                let prev = work[i - 1];
                work[i] += prev * c;
                let prev_abs = absw[i - 1];
                absw[i] += prev_abs * cn;
            }
            let bound = 64.0 * f64::EPSILON * (d as f64 + 1.0) * absw[len - 1];
            out.push((work[len - 1], bound));
        }
        out
    }

    /// All roots, grouped into multiplicity clusters.
    ///
    /// Companion-matrix eigenvalues are grouped greedily: two groups merge
    /// when their centroids lie within `1e-8 (1 + |c|)`, or when the Taylor
    /// expansion at the merged centroid certifies a root of the merged
    /// multiplicity. The centroid of a real cluster is then polished by Newton
    /// on the derivative of order `k - 1`, where the root is simple.
    pub fn roots(&self) -> Vec<Root> {
        let d = self.degree();
        if d == 0 {
            return Vec::new();
        }
        let lead = self.coeffs[0];
        // exact zero roots are split off; the eigen solver can stall on a
        // nilpotent companion matrix
        let zeros = self.coeffs.iter().rev().take_while(|c| **c == 0.0).count();
        let d = d - zeros;
        let mut raw: Vec<Complex64> = if d == 0 {
            Vec::new()
        } else if d == 1 {
            vec![Complex64::new(-self.coeffs[1] / lead, 0.0)]
        } else {
            let mut comp = DMatrix::<f64>::zeros(d, d);
            for j in 0..d {
                comp[(0, j)] = -self.coeffs[j + 1] / lead;
            }
            for i in 1..d {
                comp[(i, i - 1)] = 1.0;
            }
            comp.complex_eigenvalues().iter().copied().collect()
        };
        raw.extend(std::iter::repeat(Complex64::new(0.0, 0.0)).take(zeros));
        let mut clusters: Vec<Vec<Complex64>> = raw.into_iter().map(|z| vec![z]).collect();
        let mut rejected: Vec<(usize, usize)> = Vec::new();
        let centroid = |c: &Vec<Complex64>| c.iter().sum::<Complex64>() / c.len() as f64;
        loop {
            let mut best: Option<(f64, usize, usize)> = None;
            for i in 0..clusters.len() {
                for j in (i + 1)..clusters.len() {
                    let key = (clusters[i].len() * 1000 + i, clusters[j].len() * 1000 + j);
                    if rejected.contains(&key) {
                        continue;
                    }
                    let dist = (centroid(&clusters[i]) - centroid(&clusters[j])).norm();
                    if best.map_or(true, |(bd, _, _)| dist < bd) {
                        best = Some((dist, i, j));
                    }
                }
            }
            let Some((dist, i, j)) = best else { break };
            let mut merged = clusters[i].clone();
            merged.extend_from_slice(&clusters[j]);
            let c = centroid(&merged);
            let tight = 1e-8 * (1.0 + c.norm());
            let ok = dist <= tight || self.certifies_multiple_root(c, merged.len());
            if ok {
                clusters[i] = merged;
                clusters.remove(j);
                rejected.clear();
            } else {
                rejected.push((clusters[i].len() * 1000 + i, clusters[j].len() * 1000 + j));
            }
        }
        let mut roots: Vec<Root> = clusters
            .iter()
            .map(|c| {
                let k = c.len();
                let mut z = centroid(c);
                if z.im.abs() <= 1e-8 * (1.0 + z.norm()) {
                    z = Complex64::new(self.polish_real(z.re, k), 0.0);
                }
                Root {
                    value: z,
                    multiplicity: k,
                }
            })
            .collect();
        roots.sort_by(|a, b| {
            b.value
                .re
                .partial_cmp(&a.value.re)
                .unwrap()
                .then(b.value.im.partial_cmp(&a.value.im).unwrap())
        });
        roots
    }

    fn certifies_multiple_root(&self, c: Complex64, k: usize) -> bool {
        let tay = self.taylor_at(c);
        if k >= tay.len() {
            return false;
        }
        // a cluster may be part of a higher-order root, so a_k itself can vanish
        let ak = tay[k..].iter().fold(tay[k].1, |m, (a, _)| m.max(a.norm()));
        let eta = 1e-7 * (1.0 + c.norm());
        (0..k).all(|j| {
            let binom = binomial(k, j);
            tay[j].0.norm() <= binom * ak * eta.powi((k - j) as i32) + tay[j].1
        })
    }

    fn polish_real(&self, x0: f64, k: usize) -> f64 {
        let mut q = self.clone();
        for _ in 1..k {
            q = q.derivative();
        }
        let dq = q.derivative();
        let mut x = x0;
        let mut fx = q.eval(x).abs();
        for _ in 0..8 {
            let dv = dq.eval(x);
            if dv == 0.0 {
                break;
            }
            let nx = x - q.eval(x) / dv;
            let nf = q.eval(nx).abs();
            if !(nf < fx) || (nx - x0).abs() > 1e-3 * (1.0 + x0.abs()) {
                break;
            }
            x = nx;
            fx = nf;
        }
        x
    }

    /// Distinct real roots in descending order with multiplicities.
    pub fn real_roots(&self) -> Vec<(f64, usize)> {
        self.roots()
            .into_iter()
            .filter(|r| r.is_real())
            .map(|r| (r.value.re, r.multiplicity))
            .collect()
    }

    /// All roots, real parts, assuming every root is real; errors otherwise.
    /// Repeated roots appear repeatedly. Descending.
    pub fn all_real_roots_desc(&self) -> Result<Vec<f64>> {
        let mut out = Vec::new();
        for r in self.roots() {
            if !r.is_real() {
                return Err(Error::Domain(format!(
                    "polynomial has a non-real root {:.6}{:+.6}i",
                    r.value.re, r.value.im
                )));
            }
            for _ in 0..r.multiplicity {
                out.push(r.value.re);
            }
        }
        Ok(out)
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

impl fmt::Display for RealPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            let p = d - i;
            if *c == 0.0 && !(d == 0) {
                continue;
            }
            let sign = if *c < 0.0 { "-" } else { "+" };
            if first {
                if *c < 0.0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let show_coeff = (a - 1.0).abs() > 0.0 || p == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match p {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{p}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Elementary symmetric functions `(e_1, ..., e_m)` of `y`.
pub fn elementary_symmetric(y: &[f64]) -> Vec<f64> {
    let m = y.len();
    let mut e = vec![0.0; m + 1];
    e[0] = 1.0;
    for (k, &yk) in y.iter().enumerate() {
        for j in (1..=k + 1).rev() {
            e[j] += yk * e[j - 1];
        }
    }
    e[1..].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = RealPolynomial::from_roots(&[1.0, 0.0, -1.0]);
        assert_eq!(p.coeffs(), &[1.0, 0.0, -1.0, 0.0]);
        assert_eq!(p.eval(2.0), 6.0);
        assert_eq!(p.derivative().coeffs(), &[3.0, 0.0, -1.0]);
        let (q, r) = p.div_rem(&RealPolynomial::new(vec![1.0, 0.5]));
        // t^3 - t = (t + 0.5)(t^2 - 0.5 t - 0.75) + 0.375
        assert_eq!(q.coeffs(), &[1.0, -0.5, -0.75]);
        assert!((r.coeffs()[0] - 0.375).abs() < 1e-15);
    }

    #[test]
    fn double_and_triple_roots_cluster() {
        let p = RealPolynomial::from_roots(&[2.0, 2.0, -2.0, -2.0]);
        let r = p.real_roots();
        assert_eq!(r.len(), 2);
        assert!((r[0].0 - 2.0).abs() < 1e-12 && r[0].1 == 2);
        assert!((r[1].0 + 2.0).abs() < 1e-12 && r[1].1 == 2);

        let p = RealPolynomial::from_roots(&[1.0, 1.0, 1.0, -0.5]);
        let r = p.real_roots();
        assert_eq!(r, vec![(r[0].0, 3), (r[1].0, 1)]);
        assert!((r[0].0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn close_simple_roots_stay_apart() {
        let p = RealPolynomial::from_roots(&[1.0 + 1e-4, 1.0, 0.0, -2.0]);
        let r = p.real_roots();
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|x| x.1 == 1));
    }

    #[test]
    fn complex_pair() {
        // (t^2 + 1)(t - 3)
        let p = RealPolynomial::new(vec![1.0, -3.0, 1.0, -3.0]);
        let roots = p.roots();
        assert_eq!(roots.len(), 3);
        assert_eq!(p.real_roots().len(), 1);
        assert!((p.real_roots()[0].0 - 3.0).abs() < 1e-12);
    }

    #[test]
    fn elementary_round_trip() {
        let y = [3.0, 1.0, -2.0];
        let e = elementary_symmetric(&y);
        assert_eq!(e, vec![2.0, -5.0, -6.0]);
        let p = RealPolynomial::from_elementary(&e);
        assert_eq!(p, RealPolynomial::from_roots(&y));
        assert_eq!(p.elementary(), e);
    }

    #[test]
    fn zero_root_of_high_order() {
        let p = RealPolynomial::monomial(4);
        let r = p.real_roots();
        assert_eq!(r, vec![(0.0, 4)]);
    }
}
