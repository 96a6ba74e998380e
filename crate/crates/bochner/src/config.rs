use serde::{Deserialize, Serialize};

/// Tolerances that steer every branch decision made on floating point data.
///
/// Passed explicitly; nothing is read from the environment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Eigenvalues closer than `cluster * (1 + |H|)` are treated as equal.
    pub cluster: f64,
    /// Relative threshold for `T_alpha = 0` and `V_alpha = 0`.
    pub zero: f64,
    /// Allowed coefficient residual of exact polynomial identities.
    pub poly_residual: f64,
    /// Negative `q_i` above `-clamp` are treated as boundary round-off.
    pub clamp: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            cluster: 1e-8,
            zero: 1e-8,
            poly_residual: 1e-8,
            clamp: 1e-10,
        }
    }
}
