//! Complex dimension one: `g = dH²/(4p(H)) + 4p(H) dθ²` with
//! `p(t) = t³ + C₂t + C₃`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::RealPolynomial;
use crate::quad;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dim1Case {
    /// One simple real root.
    Case1,
    /// Triple root at 0.
    Case2,
    /// Double root `r > 0` above the simple root `-2r`.
    Case31,
    /// Double root `r < 0` below the simple root `-2r`.
    Case32,
    /// Three distinct real roots.
    Case4,
}

/// A maximal interval of `H` where `p(H) > 0`, with the smoothing period at
/// each simple root on its boundary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dim1Component {
    pub label: String,
    pub lo: f64,
    pub hi: f64,
    pub bounded: bool,
    /// `(root, τ)` with `τ = π / |3r² + C₂|`.
    pub periods: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dim1Family {
    pub c2: f64,
    pub c3: f64,
    /// Real roots, descending, with multiplicities.
    pub roots: Vec<(f64, usize)>,
    pub case: Dim1Case,
    pub components: Vec<Dim1Component>,
}

impl Dim1Family {
    pub fn poly(&self) -> RealPolynomial {
        RealPolynomial::new(vec![1.0, 0.0, self.c2, self.c3])
    }

    pub fn p(&self, h: f64) -> f64 {
        ((h * h + self.c2) * h) + self.c3
    }

    pub fn dp(&self, h: f64) -> f64 {
        3.0 * h * h + self.c2
    }

    /// `(E, G)` with `g = E dH² + G dθ²`.
    pub fn metric(&self, h: f64) -> Result<(f64, f64)> {
        let p = self.p(h);
        if !(p > 0.0) {
            return Err(Error::Domain(format!("p(H) = {p} <= 0 at H = {h}")));
        }
        Ok((1.0 / (4.0 * p), 4.0 * p))
    }

    /// Smoothing period `π / |3r² + C₂|` at a simple root.
    pub fn period(&self, r: f64) -> f64 {
        PI / self.dp(r).abs()
    }

    /// Gaussian curvature of `E dH² + G dθ²` by nested fourth-order central
    /// differences in `H`.
    pub fn gaussian_curvature(&self, h: f64) -> Result<f64> {
        let step = 1e-3 * (1.0 + h.abs());
        for j in -4..=4 {
            self.metric(h + j as f64 * step)?;
        }
        let d = |f: &dyn Fn(f64) -> f64, x: f64| {
            (f(x - 2.0 * step) - 8.0 * f(x - step) + 8.0 * f(x + step) - f(x + 2.0 * step))
                / (12.0 * step)
        };
        let gcoef = |x: f64| self.metric(x).map(|m| m.1).unwrap_or(f64::NAN);
        let root_eg = |x: f64| {
            let (e, g) = self.metric(x).unwrap_or((f64::NAN, f64::NAN));
            (e * g).sqrt()
        };
        let phi = |x: f64| d(&gcoef, x) / root_eg(x);
        Ok(-d(&phi, h) / (2.0 * root_eg(h)))
    }

    /// Geodesic distance from the simple root `r` to `r + side·δ` along `θ = const`.
    pub fn distance_from_root(&self, r: f64, side: f64, delta: f64) -> Result<f64> {
        let f = |th: f64| {
            let (s, c) = th.sin_cos();
            let h = r + side * delta * s * s;
            let p = self.p(h).max(0.0);
            if p == 0.0 {
                // leading behaviour 1/(2√(p'(r)(h-r))) times the Jacobian
                let jac = 2.0 * delta * c;
                return jac / (2.0 * (self.dp(r).abs() * delta).sqrt());
            }
            delta * 2.0 * s * c / (2.0 * p.sqrt())
        };
        quad::integrate(f, 0.0, PI / 2.0, 1e-15, 1e-13)
    }

    /// Period making the metric smooth at the simple root `r`, fitted from the
    /// ratio of circumference rate to radius near the root.
    pub fn cone_period_fit(&self, r: f64) -> Result<f64> {
        let side = if self.dp(r) > 0.0 { 1.0 } else { -1.0 };
        let slope = |delta: f64| -> Result<f64> {
            let h = r + side * delta;
            let circ = 2.0 * self.p(h).sqrt();
            Ok(circ / self.distance_from_root(r, side, delta)?)
        };
        let d = 1e-4 * (1.0 + r.abs());
        let s1 = slope(d)?;
        let s2 = slope(d / 2.0)?;
        // the ratio has an error linear in δ
        let lim = 2.0 * s2 - s1;
        Ok(2.0 * PI / lim)
    }
}

fn component(label: &str, lo: f64, hi: f64, roots: &[f64], fam: &Dim1Family) -> Dim1Component {
    let periods = roots.iter().map(|r| (*r, fam.period(*r))).collect();
    Dim1Component {
        label: label.into(),
        lo,
        hi,
        bounded: hi.is_finite() && lo.is_finite(),
        periods,
    }
}

/// Classifies `t³ + C₂t + C₃` by its root pattern and lists the components
/// of `p > 0` with their smoothing periods.
pub fn dim1_suite(c2: f64, c3: f64) -> Result<Dim1Family> {
    if !(c2.is_finite() && c3.is_finite()) {
        return Err(Error::Parameter("C2 and C3 must be finite".into()));
    }
    let poly = RealPolynomial::new(vec![1.0, 0.0, c2, c3]);
    let roots = poly.real_roots();
    let mut fam = Dim1Family {
        c2,
        c3,
        roots: roots.clone(),
        case: Dim1Case::Case1,
        components: vec![],
    };
    let inf = f64::INFINITY;
    match roots.as_slice() {
        [(r, 1)] => {
            fam.case = Dim1Case::Case1;
            fam.components = vec![component("Gamma", *r, inf, &[*r], &fam)];
        }
        [(_, 3)] => {
            fam.case = Dim1Case::Case2;
            fam.components = vec![component("Gamma", 0.0, inf, &[], &fam)];
        }
        [(r, 2), (s, 1)] => {
            fam.case = Dim1Case::Case31;
            fam.components = vec![
                component("Gamma^a", *r, inf, &[], &fam),
                component("Gamma^b", *s, *r, &[*s], &fam),
            ];
            // the approach to the double root is at infinite distance
            fam.components[1].bounded = true;
        }
        [(s, 1), (_, 2)] => {
            fam.case = Dim1Case::Case32;
            fam.components = vec![component("Gamma^a", *s, inf, &[*s], &fam)];
        }
        [(r0, 1), (r1, 1), (r2, 1)] => {
            fam.case = Dim1Case::Case4;
            fam.components = vec![
                component("Gamma^0", *r0, inf, &[*r0], &fam),
                component("Gamma^1", *r2, *r1, &[*r2, *r1], &fam),
            ];
        }
        other => {
            return Err(Error::Numerical(format!(
                "unexpected root pattern {other:?}"
            )));
        }
    }
    Ok(fam)
}

/// Outcome of scanning root pairs `r₁ > r₂` (with `r₀ = -(r₁ + r₂) > r₁`)
/// for equal smoothing periods `τ₁ = τ₂` at the two ends of the bounded strip.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeriodScan {
    pub pairs: usize,
    /// Minimum of `p'(r₁) + p'(r₂)`, which vanishes exactly when `τ₁ = τ₂`.
    pub min_gap: f64,
    pub sign_changes: usize,
    pub solutions: usize,
}

/// Grid scan over `[lo, hi]²` at the given resolution.
pub fn period_equality_scan(lo: f64, hi: f64, step: f64) -> PeriodScan {
    let count = ((hi - lo) / step).round() as i64;
    let grid: Vec<f64> = (0..=count).map(|i| lo + i as f64 * step).collect();
    let mut scan = PeriodScan {
        pairs: 0,
        min_gap: f64::INFINITY,
        sign_changes: 0,
        solutions: 0,
    };
    for &r1 in &grid {
        let mut prev: Option<f64> = None;
        for &r2 in &grid {
            let r0 = -(r1 + r2);
            if !(r1 > r2 && r0 > r1) {
                continue;
            }
            let c2 = r0 * r1 + r0 * r2 + r1 * r2;
            let gap = (3.0 * r1 * r1 + c2) + (3.0 * r2 * r2 + c2);
            scan.pairs += 1;
            scan.min_gap = scan.min_gap.min(gap);
            if gap == 0.0 {
                scan.solutions += 1;
            }
            if let Some(p) = prev {
                if p.signum() != gap.signum() {
                    scan.sign_changes += 1;
                }
            }
            prev = Some(gap);
        }
    }
    scan
}
