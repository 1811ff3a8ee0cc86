use serde::{Deserialize, Serialize};

/// Numerical tolerances threaded through the kernels and engines.
///
/// All values are relative: callers multiply by a problem scale (a triangle
/// diameter, a hinge diameter, ...) before comparing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Degeneracy threshold for determinants and norms.
    pub eps: f64,
    /// `|margin| <= tie * hinge_diameter` classifies an edge as a tie.
    pub tie: f64,
    /// Arguments of `acosh`/`asinh` within this distance of the domain
    /// boundary are clamped; farther out is an error.
    pub clamp: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            eps: 1e-12,
            tie: 1e-9,
            clamp: 1e-9,
        }
    }
}

impl Tolerance {
    pub fn with_eps(eps: f64) -> Self {
        Self {
            eps,
            ..Self::default()
        }
    }
}
