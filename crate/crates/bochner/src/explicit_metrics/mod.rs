//! Concrete Bochner-Kähler metric fields in holomorphic coordinates.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::structure_space::CMat;

pub mod dim1;
pub mod grho;
pub mod leaf;
pub mod reduction;
pub mod rotsym;
pub mod wps;

pub use dim1::{dim1_suite, Dim1Case, Dim1Component, Dim1Family};
pub use grho::{grho_metric, grho_s};
pub use leaf::{leaf_metric, LeafChart};
pub use reduction::weighted_reduction_metric;
pub use rotsym::{
    rotsym_arclength, rotsym_metric, rotsym_profile, rotsym_radial_length_capped,
    rotsym_ricci_eigs, Branch, RotSymParams,
};
pub use wps::{wps_metric, wps_s};

type EvalFn = dyn Fn(&[Complex64]) -> Result<CMat> + Send + Sync;

/// Metric coefficients `G_{ij̄}(z)` with `ds² = G_{ij̄} dz_i dz̄_j`.
///
/// Entry `(i, j)` of the returned matrix is `G_{ij̄}`. Evaluation fails with a
/// domain error outside the field's domain.
#[derive(Clone)]
pub struct MetricField {
    q: usize,
    label: String,
    eval: Arc<EvalFn>,
}

impl MetricField {
    pub fn new<F>(q: usize, label: impl Into<String>, eval: F) -> Self
    where
        F: Fn(&[Complex64]) -> Result<CMat> + Send + Sync + 'static,
    {
        Self {
            q,
            label: label.into(),
            eval: Arc::new(eval),
        }
    }

    /// Complex dimension.
    pub fn dim(&self) -> usize {
        self.q
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn eval(&self, z: &[Complex64]) -> Result<CMat> {
        if z.len() != self.q {
            return Err(Error::Dimension(format!(
                "point has {} coordinates, field has {}",
                z.len(),
                self.q
            )));
        }
        (self.eval)(z)
    }

    pub fn in_domain(&self, z: &[Complex64]) -> bool {
        self.eval(z).is_ok()
    }

    /// One CSV row: the coordinates as re/im pairs followed by the entries of
    /// `G` row by row as re/im pairs.
    pub fn csv_row(&self, z: &[Complex64]) -> Result<String> {
        let g = self.eval(z)?;
        let mut cells: Vec<String> = Vec::new();
        for c in z {
            cells.push(format!("{:.17e}", c.re));
            cells.push(format!("{:.17e}", c.im));
        }
        for i in 0..self.q {
            for j in 0..self.q {
                cells.push(format!("{:.17e}", g[(i, j)].re));
                cells.push(format!("{:.17e}", g[(i, j)].im));
            }
        }
        Ok(cells.join(","))
    }

    pub fn csv_header(&self) -> String {
        let mut cells = Vec::new();
        for i in 1..=self.q {
            cells.push(format!("z{i}_re"));
            cells.push(format!("z{i}_im"));
        }
        for i in 1..=self.q {
            for j in 1..=self.q {
                cells.push(format!("g{i}{j}_re"));
                cells.push(format!("g{i}{j}_im"));
            }
        }
        cells.join(",")
    }
}

impl fmt::Debug for MetricField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MetricField")
            .field("q", &self.q)
            .field("label", &self.label)
            .finish()
    }
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(g: &CMat) -> f64 {
    let h = (g + g.adjoint()) * Complex64::new(0.5, 0.0);
    h.symmetric_eigenvalues().min()
}

/// `Σ |z_i|²`.
pub(crate) fn norm_sq(z: &[Complex64]) -> f64 {
    z.iter().map(|c| c.norm_sqr()).sum()
}
