//! Seeded sample points for `verify`.

use bochner::classification::{sigma, MomentumCell};
use bochner::explicit_metrics::{Branch, LeafChart, MetricField, RotSymParams};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::failure::Failure;

const MAX_TRIES: usize = 10_000;

fn gaussian_direction(rng: &mut ChaCha8Rng, q: usize) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..q)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let n = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-3 {
            return v.iter().map(|c| c / n).collect();
        }
    }
}

/// Points with every coordinate in the square `|re|, |im| <= half_width`,
/// kept only where the field evaluates.
pub fn box_points(
    field: &MetricField,
    rng: &mut ChaCha8Rng,
    count: usize,
    half_width: f64,
) -> Result<Vec<Vec<Complex64>>, Failure> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..MAX_TRIES {
        if out.len() == count {
            break;
        }
        let z: Vec<Complex64> = (0..field.dim())
            .map(|_| {
                Complex64::new(
                    rng.gen_range(-half_width..half_width),
                    rng.gen_range(-half_width..half_width),
                )
            })
            .collect();
        if field.in_domain(&z) {
            out.push(z);
        }
    }
    if out.len() < count {
        return Err(Failure::usage(format!(
            "found only {} of {count} points inside the domain of {}",
            out.len(),
            field.label()
        )));
    }
    Ok(out)
}

/// Radial samples for the rotationally symmetric family.
///
/// Type one uses `|z| <= min(1, 0.9 r)` with `r` the radius of the domain;
/// type two keeps `|z|²` in `[0.36, 0.81]`, away from the origin where the
/// radial eigenvalue degenerates.
pub fn rotsym_points(
    params: &RotSymParams,
    rng: &mut ChaCha8Rng,
    count: usize,
) -> Vec<Vec<Complex64>> {
    let (lo, hi) = match params.branch {
        Branch::TypeOne => (0.0, (0.9 * params.t_sup().sqrt()).min(1.0)),
        Branch::TypeTwo => (0.6, 0.9),
    };
    (0..count)
        .map(|_| {
            let r = rng.gen_range(lo..=hi);
            gaussian_direction(rng, params.n)
                .into_iter()
                .map(|c| c * r)
                .collect()
        })
        .collect()
}

/// Leaf points over the interior of the cell: `y` inside each band with a
/// 5% margin (infinite ends cut 3 units past the finite one).
pub fn leaf_points(
    chart: &LeafChart,
    cell: &MomentumCell,
    rng: &mut ChaCha8Rng,
    count: usize,
) -> Result<Vec<Vec<Complex64>>, Failure> {
    (0..count)
        .map(|_| {
            let mut y: Vec<f64> = cell
                .bands
                .iter()
                .map(|b| {
                    let (lo, hi) = band_range(b.lo, b.hi);
                    let m = 0.05 * (hi - lo);
                    rng.gen_range(lo + m..hi - m)
                })
                .collect();
            y.sort_by(|a, b| b.total_cmp(a));
            let theta: Vec<f64> = (0..cell.m)
                .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
                .collect();
            Ok(chart.to_chart(&sigma(&y), &theta)?)
        })
        .collect()
}

fn band_range(lo: f64, hi: f64) -> (f64, f64) {
    let lo = if lo.is_finite() { lo } else { hi - 3.0 };
    let hi = if hi.is_finite() { hi } else { lo + 3.0 };
    (lo, hi)
}

/// The image under `σ` of the band midpoints, an interior point of the cell.
pub fn cell_anchor(cell: &MomentumCell) -> Vec<f64> {
    let mut y: Vec<f64> = cell
        .bands
        .iter()
        .map(|b| {
            let (lo, hi) = band_range(b.lo, b.hi);
            0.5 * (lo + hi)
        })
        .collect();
    y.sort_by(|a, b| b.total_cmp(a));
    sigma(&y)
}
