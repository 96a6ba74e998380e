//! Rotationally symmetric metrics `∂∂̄ f(|z|²)` whose profile `x = t f'(t)`
//! solves `t x' = x (1 + k x + a x²)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{norm_sq, MetricField};
use crate::error::{Error, Result};
use crate::quad;
use crate::solve::bisect_newton;
use crate::structure_space::CMat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    TypeOne,
    TypeTwo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RotSymParams {
    pub n: usize,
    pub k: f64,
    pub a: f64,
    pub branch: Branch,
}

impl RotSymParams {
    pub fn new(n: usize, k: f64, a: f64, branch: Branch) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("n must be positive".into()));
        }
        if !(k.is_finite() && a.is_finite()) {
            return Err(Error::Parameter("k and a must be finite".into()));
        }
        if branch == Branch::TypeTwo && !(a > 0.0 && k <= -2.0 * a.sqrt()) {
            return Err(Error::Parameter(format!(
                "type two needs a > 0 and k <= -2 sqrt(a), got k = {k}, a = {a}"
            )));
        }
        Ok(Self { n, k, a, branch })
    }

    pub fn type_one(n: usize, k: f64, a: f64) -> Result<Self> {
        Self::new(n, k, a, Branch::TypeOne)
    }

    fn q(&self, x: f64) -> f64 {
        1.0 + self.k * x + self.a * x * x
    }

    /// Positive roots of `1 + kx + ax²`, ascending.
    fn positive_roots(&self) -> Vec<f64> {
        let (k, a) = (self.k, self.a);
        if a == 0.0 {
            return if k < 0.0 { vec![-1.0 / k] } else { vec![] };
        }
        let disc = k * k - 4.0 * a;
        if disc < 0.0 {
            return vec![];
        }
        let sq = disc.sqrt();
        // stable quadratic roots of a x² + k x + 1
        let qq = -0.5 * (k + k.signum() * sq);
        let mut r = if qq == 0.0 {
            vec![]
        } else {
            vec![qq / a, 1.0 / qq]
        };
        r.retain(|x| *x > 0.0);
        r.sort_by(|x, y| x.total_cmp(y));
        r.dedup_by(|x, y| (*x - *y).abs() <= 1e-15 * y.abs());
        r
    }

    /// Upper end of the x-range of the branch (`∞` if unbounded).
    pub fn x_sup(&self) -> f64 {
        match self.branch {
            Branch::TypeOne => self
                .positive_roots()
                .first()
                .copied()
                .unwrap_or(f64::INFINITY),
            Branch::TypeTwo => f64::INFINITY,
        }
    }

    /// Lower end of the x-range of the branch.
    pub fn x_inf(&self) -> f64 {
        match self.branch {
            Branch::TypeOne => 0.0,
            Branch::TypeTwo => *self.positive_roots().last().expect("type two has a root"),
        }
    }

    /// Supremum of `t = |z|²` on a type one branch; finite only when the
    /// x-range is unbounded and `q` grows at infinity.
    pub fn t_sup(&self) -> f64 {
        if self.branch == Branch::TypeTwo {
            return 1.0;
        }
        if self.x_sup().is_finite() || (self.a == 0.0 && self.k <= 0.0) {
            return f64::INFINITY;
        }
        if self.a == 0.0 {
            return 1.0 / self.k;
        }
        // log t(x) converges as x → ∞; at 1e100 the tail is below rounding
        self.log_t(1e100).exp()
    }

    /// An antiderivative of `1 / (1 + kξ + aξ²)`, tending to 0 at `+∞` when `a > 0`.
    fn j_anti(&self, x: f64) -> f64 {
        let (k, a) = (self.k, self.a);
        if a == 0.0 {
            return if k == 0.0 { x } else { (k * x).ln_1p() / k };
        }
        let disc = k * k - 4.0 * a;
        let y = 2.0 * a * x + k;
        if disc < 0.0 {
            let s = (-disc).sqrt();
            2.0 / s * (y / s).atan()
        } else if disc == 0.0 {
            -2.0 / y
        } else {
            let s = disc.sqrt();
            ((y - s) / (y + s)).abs().ln() / s
        }
    }

    /// `log t` as a function of `x` on the branch.
    fn log_t(&self, x: f64) -> f64 {
        match self.branch {
            Branch::TypeOne => {
                // log F(x) = -½ log q(x) - (k/2)(J(x) - J(0))
                let log_f =
                    -0.5 * self.q(x).ln() - 0.5 * self.k * (self.j_anti(x) - self.j_anti(0.0));
                x.ln() + log_f
            }
            Branch::TypeTwo => {
                // log F*(x) = Φ(x) - Φ(∞), Φ = log ξ - ½ log q - (k/2) J
                let phi = x.ln() - 0.5 * self.q(x).ln() - 0.5 * self.k * self.j_anti(x);
                phi + 0.5 * self.a.ln()
            }
        }
    }

    /// Type two only: `ε = x - x_inf` from `log t`, solved in `ln ε` so that
    /// `ε` keeps full relative precision as `t → 0`, where `x` sits within
    /// rounding of the root.
    fn type_two_eps(&self, t: f64) -> Result<f64> {
        let (k, a) = (self.k, self.a);
        let x0 = self.x_inf();
        let disc = (k * k - 4.0 * a).max(0.0);
        let s = disc.sqrt();
        let d = s / a;
        // log t as a function of e = ln ε, with q = a ε (ε + d)
        let log_t = |e: f64| {
            let eps = e.exp();
            let j = if s == 0.0 {
                -1.0 / (a * eps)
            } else {
                (e - (eps + d).ln()) / s
            };
            (x0 + eps).ln() - 0.5 * (e + (eps + d).ln()) - 0.5 * k * j
        };
        let dlog = |e: f64| {
            let eps = e.exp();
            1.0 / ((x0 + eps) * a * (eps + d))
        };
        let lt = t.ln();
        let (mut lo, mut hi) = (-1.0, 1.0);
        let mut guard = 0;
        while log_t(lo) > lt {
            lo = 2.0 * lo - 1.0;
            guard += 1;
            if guard > 60 || !lo.is_finite() {
                return Err(Error::Numerical(format!("no lower bracket for t = {t}")));
            }
        }
        while log_t(hi) < lt {
            hi = 2.0 * hi + 1.0;
            guard += 1;
            if guard > 60 {
                return Err(Error::Numerical(format!("no upper bracket for t = {t}")));
            }
        }
        Ok(bisect_newton(|e| log_t(e) - lt, dlog, lo, hi)?.exp())
    }

    /// `(x, q(x))` with `q` free of cancellation near the lower root on type two.
    fn x_and_q(&self, t: f64) -> Result<(f64, f64)> {
        if self.branch == Branch::TypeTwo {
            if !(t > 0.0 && t < 1.0) {
                return Err(Error::Domain(format!(
                    "t = {t} outside the type two domain (0, 1)"
                )));
            }
            let eps = self.type_two_eps(t)?;
            let d = (self.k * self.k - 4.0 * self.a).max(0.0).sqrt() / self.a;
            return Ok((self.x_inf() + eps, self.a * eps * (eps + d)));
        }
        let (x, _) = rotsym_profile(self, t)?;
        Ok((x, self.q(x)))
    }

    /// `x(t)` on the branch.
    pub fn x_of_t(&self, t: f64) -> Result<f64> {
        let dom_err = |sup: f64| {
            Error::Domain(format!(
                "t = {t} outside the {:?} domain (approximately [0, {sup:.6e}))",
                self.branch
            ))
        };
        match self.branch {
            Branch::TypeOne => {
                if t == 0.0 {
                    return Ok(0.0);
                }
                if !(t > 0.0) {
                    return Err(dom_err(f64::NAN));
                }
            }
            Branch::TypeTwo => {
                if !(t > 0.0 && t < 1.0) {
                    return Err(Error::Domain(format!(
                        "t = {t} outside the type two domain (0, 1)"
                    )));
                }
            }
        }
        let lt = t.ln();
        let g = |x: f64| self.log_t(x) - lt;
        let dg = |x: f64| 1.0 / (x * self.q(x));
        let (x0, x1) = (self.x_inf(), self.x_sup());
        let mut lo = match self.branch {
            Branch::TypeOne => t.min(if x1.is_finite() { 0.5 * x1 } else { t }),
            Branch::TypeTwo => x0 * 2.0,
        };
        let mut tries = 0;
        while g(lo) >= 0.0 {
            lo = match self.branch {
                Branch::TypeOne => lo * 0.5,
                Branch::TypeTwo => x0 + 0.5 * (lo - x0),
            };
            tries += 1;
            if tries > 2000 || lo <= x0 {
                return Err(Error::Numerical(format!("no lower bracket for t = {t}")));
            }
        }
        let mut hi = lo;
        let mut j = 0;
        loop {
            hi = if x1.is_finite() {
                j += 1;
                x1 - x1 * 0.5f64.powi(j)
            } else {
                j += 1;
                hi * 2.0 + 1.0
            };
            if hi > lo && g(hi) > 0.0 {
                break;
            }
            if j > 1100 || !hi.is_finite() || (x1.is_finite() && hi >= x1) {
                return Err(dom_err(self.log_t(hi.min(f64::MAX)).exp()));
            }
        }
        bisect_newton(g, dg, lo, hi)
    }
}

/// `(x(t), f'(t))` on the chosen branch.
pub fn rotsym_profile(params: &RotSymParams, t: f64) -> Result<(f64, f64)> {
    if params.a == 0.0 && t >= 0.0 && params.k * t < 1.0 {
        // closed form x = t / (1 - kt), exact enough for finite differences
        let fp = 1.0 / (1.0 - params.k * t);
        return Ok((t * fp, fp));
    }
    let x = params.x_of_t(t)?;
    let fp = if t == 0.0 { 1.0 } else { x / t };
    Ok((x, fp))
}

/// `G_{ij̄} = f' δ_ij + f'' z̄_i z_j` with `f'' = (a t f' + k) f'²`.
pub fn rotsym_metric(params: &RotSymParams) -> Result<MetricField> {
    let p = *params;
    if p.branch == Branch::TypeOne && !(p.x_sup() > 0.0) {
        return Err(Error::Parameter("empty type one domain".into()));
    }
    let label = format!("rotsym(n={}, k={}, a={}, {:?})", p.n, p.k, p.a, p.branch);
    Ok(MetricField::new(p.n, label, move |z: &[Complex64]| {
        let t = norm_sq(z);
        if p.branch == Branch::TypeTwo {
            // G = (x/t)(δ - z̄z/t) + (x q / t)(z̄z/t): the radial part x q / t
            // is tiny near t = 0 and must not come from a difference
            let (x, q) = p.x_and_q(t)?;
            let (tang, rad) = (x / t, x * q / t);
            return Ok(CMat::from_fn(p.n, p.n, |i, j| {
                let d = if i == j { tang } else { 0.0 };
                Complex64::new(d, 0.0) + z[i].conj() * z[j] * ((rad - tang) / t)
            }));
        }
        let (_, fp) = rotsym_profile(&p, t)?;
        let fpp = (p.a * t * fp + p.k) * fp * fp;
        Ok(CMat::from_fn(p.n, p.n, |i, j| {
            let d = if i == j { fp } else { 0.0 };
            Complex64::new(d, 0.0) + z[i].conj() * z[j] * fpp
        }))
    }))
}

/// Ricci eigenvalues `(ρ₁, ρ₂)` relative to the metric: `ρ₁` on the complex
/// hyperplane orthogonal to `z` and `ρ₂` in the radial direction.
pub fn rotsym_ricci_eigs(params: &RotSymParams, z: &[Complex64]) -> Result<(f64, f64)> {
    let n = params.n as f64;
    let t = norm_sq(z);
    let (_, fp) = rotsym_profile(params, t)?;
    let base = -2.0 * (n + 1.0) * params.k;
    let s = params.a * t * fp;
    Ok((base - 2.0 * (n + 2.0) * s, base - 4.0 * (n + 2.0) * s))
}

fn arc_integrand(params: &RotSymParams, x: f64) -> f64 {
    1.0 / (2.0 * (x * params.q(x)).sqrt())
}

/// Radial arc length `∫ dx / (2 √(x (1 + kx + ax²)))` between `|z|² = t0` and `t1`.
pub fn rotsym_arclength(params: &RotSymParams, t0: f64, t1: f64) -> Result<f64> {
    if t0 == t1 {
        params.x_of_t(t0)?;
        return Ok(0.0);
    }
    let x0 = params.x_of_t(t0)?;
    let x1 = params.x_of_t(t1)?;
    let (lo, hi) = if x0 < x1 { (x0, x1) } else { (x1, x0) };
    // x = lo + (hi - lo) sin²θ absorbs an inverse square root at x = 0
    let f = |th: f64| {
        let (s, c) = th.sin_cos();
        let x = lo + (hi - lo) * s * s;
        arc_integrand(params, x) * 2.0 * (hi - lo) * s * c
    };
    quad::integrate(f, 0.0, std::f64::consts::FRAC_PI_2, 1e-13, 1e-11)
}

/// Type one radial length from the origin toward the end of the x-range,
/// integrated in `w` with `x = x_sup (1 - e^{-w})` (or `x = e^w - 1` when the
/// range is unbounded) and truncated at `w = w_cap`.
pub fn rotsym_radial_length_capped(params: &RotSymParams, w_cap: f64) -> Result<f64> {
    if params.branch != Branch::TypeOne {
        return Err(Error::Precondition(
            "capped radial length is for type one".into(),
        ));
    }
    if !(w_cap > 0.0) {
        return Err(Error::Parameter("w_cap must be positive".into()));
    }
    let xs = params.x_sup();
    let (k, a) = (params.k, params.a);
    let integrand = move |w: f64| -> f64 {
        if xs.is_finite() {
            let eps = xs * (-w).exp();
            let x = xs - eps;
            let x = if x > 0.0 { x } else { xs * -(-w).exp_m1() };
            if a == 0.0 {
                // q = |k| ε
                (eps / (x * -k)).sqrt() / 2.0
            } else {
                let roots = params.positive_roots();
                let other = if roots.len() == 2 {
                    roots[1]
                } else {
                    // the other root of a x² + k x + 1 has product 1/a
                    1.0 / (a * xs)
                };
                if (other - xs).abs() <= 1e-12 * xs {
                    // q = a ε²
                    1.0 / (2.0 * (a * x).sqrt())
                } else {
                    (eps / (x * a * (other - x))).sqrt() / 2.0
                }
            }
        } else {
            let x = w.exp_m1();
            w.exp() * arc_integrand(params, x)
        }
    };
    // w = v² on [0, 1] absorbs the inverse square root at the origin
    let head = quad::integrate(
        |v: f64| integrand(v * v) * 2.0 * v,
        0.0,
        1.0_f64.min(w_cap.sqrt()),
        1e-13,
        1e-12,
    )?;
    if w_cap <= 1.0 {
        return Ok(head);
    }
    Ok(head + quad::integrate(integrand, 1.0, w_cap, 1e-12, 1e-12)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn ball_radius() {
        let p = RotSymParams::type_one(2, 8.0, 0.0).unwrap();
        assert!((p.t_sup() - 0.125).abs() < 1e-15);
        let p = RotSymParams::type_one(2, 8.0, 1.0).unwrap();
        let ts = p.t_sup();
        assert!(ts < 0.125 && ts > 0.1, "{ts}");
        assert!(p.x_of_t(0.999 * ts).is_ok());
        assert!(RotSymParams::type_one(2, -2.0, 1.0)
            .unwrap()
            .t_sup()
            .is_infinite());
    }

    #[test]
    fn a_zero_closed_form() {
        for k in [-1.0, 0.0, 0.7, 3.0] {
            let p = RotSymParams::type_one(2, k, 0.0).unwrap();
            for t in [0.0, 0.01, 0.2, 0.3] {
                let (x, fp) = rotsym_profile(&p, t).unwrap();
                assert_relative_eq!(x, t / (1.0 - k * t), max_relative = 1e-13, epsilon = 1e-300);
                assert_relative_eq!(fp, 1.0 / (1.0 - k * t), max_relative = 1e-13);
            }
        }
        let p = RotSymParams::type_one(2, 3.0, 0.0).unwrap();
        assert!(matches!(rotsym_profile(&p, 0.4), Err(Error::Domain(_))));
    }

    #[test]
    fn profile_solves_ode() {
        for (k, a, b) in [
            (-2.0, 1.0, Branch::TypeOne),
            (-2.0, 1.0, Branch::TypeTwo),
            (-1.5, 0.5, Branch::TypeTwo),
            (0.5, 1.0, Branch::TypeOne),
        ] {
            let p = RotSymParams::new(2, k, a, b).unwrap();
            for t in [0.05, 0.3, 0.6] {
                let h = 1e-5 * t;
                let (x, _) = rotsym_profile(&p, t).unwrap();
                let xp = (rotsym_profile(&p, t + h).unwrap().0
                    - rotsym_profile(&p, t - h).unwrap().0)
                    / (2.0 * h);
                assert_relative_eq!(t * xp, x * p.q(x), max_relative = 1e-7);
                assert!(xp > 0.0 && x > 0.0);
            }
        }
    }

    #[test]
    fn type_one_critical_monotone_below_one() {
        let p = RotSymParams::type_one(2, -2.0, 1.0).unwrap();
        let mut prev = 0.0;
        for t in [0.1, 1.0, 10.0, 1e3, 1e6] {
            let (x, _) = rotsym_profile(&p, t).unwrap();
            assert!(x > prev && x < 1.0);
            prev = x;
        }
    }

    #[test]
    fn metric_at_origin_and_flat() {
        let p = RotSymParams::type_one(3, 2.0, 0.5).unwrap();
        let g = rotsym_metric(&p).unwrap().eval(&[c(0.0, 0.0); 3]).unwrap();
        assert_eq!(g, CMat::identity(3, 3));
        let flat = rotsym_metric(&RotSymParams::type_one(2, 0.0, 0.0).unwrap()).unwrap();
        assert_eq!(
            flat.eval(&[c(0.3, -1.0), c(2.0, 0.1)]).unwrap(),
            CMat::identity(2, 2)
        );
    }

    #[test]
    fn ball_metric_entries() {
        // a = 0, k = 1: f = -log(1 - t)
        let p = RotSymParams::type_one(2, 1.0, 0.0).unwrap();
        let z = [c(0.5, 0.0), c(0.0, 0.5)];
        let g = rotsym_metric(&p).unwrap().eval(&z).unwrap();
        let t: f64 = 0.5;
        for i in 0..2 {
            for j in 0..2 {
                let d = if i == j { 1.0 / (1.0 - t) } else { 0.0 };
                let e = c(d, 0.0) + z[i].conj() * z[j] / ((1.0 - t) * (1.0 - t));
                assert!((g[(i, j)] - e).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn ricci_limits() {
        let p = RotSymParams::type_one(3, 1.5, 0.0).unwrap();
        let (r1, r2) = rotsym_ricci_eigs(&p, &[c(0.2, 0.1), c(0.0, 0.0), c(0.1, 0.0)]).unwrap();
        assert_eq!((r1, r2), (-12.0, -12.0));
    }

    #[test]
    fn arc_lengths() {
        let p = RotSymParams::type_one(2, -1.0, 0.0).unwrap();
        assert_eq!(rotsym_arclength(&p, 0.5, 0.5).unwrap(), 0.0);
        let total = rotsym_radial_length_capped(&p, 80.0).unwrap();
        assert_relative_eq!(total, std::f64::consts::FRAC_PI_2, max_relative = 1e-9);
        let part = rotsym_arclength(&p, 0.0, 1.0).unwrap();
        // x(1) = 1/2: ∫_0^{1/2} dξ / (2√(ξ(1-ξ))) = π/4
        assert_relative_eq!(part, std::f64::consts::FRAC_PI_4, max_relative = 1e-9);
        let crit = RotSymParams::type_one(2, -2.0, 1.0).unwrap();
        let l1 = rotsym_radial_length_capped(&crit, 100.0).unwrap();
        let l2 = rotsym_radial_length_capped(&crit, 200.0).unwrap();
        assert!(l2 - l1 > 45.0);
    }
}
