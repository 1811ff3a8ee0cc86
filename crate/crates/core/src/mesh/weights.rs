use serde::{Deserialize, Serialize};

use super::{DeltaTriangulation, Geometry};
use crate::error::{Error, Result};

/// Per-vertex weights: squared radii on flat surfaces, radii on hyperbolic
/// ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(pub Vec<f64>);

impl WeightVector {
    pub fn uniform(n: usize, value: f64) -> Self {
        Self(vec![value; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Checks positivity and length against a vertex count.
    pub fn check(&self, num_vertices: usize) -> Result<()> {
        if self.0.len() != num_vertices {
            return Err(Error::WeightCount {
                expected: num_vertices,
                got: self.0.len(),
            });
        }
        match self.0.iter().position(|w| !(*w > 0.0 && w.is_finite())) {
            Some(index) => Err(Error::NonpositiveWeight {
                index,
                value: self.0[index],
            }),
            None => Ok(()),
        }
    }
}

impl From<Vec<f64>> for WeightVector {
    fn from(v: Vec<f64>) -> Self {
        Self(v)
    }
}

impl std::ops::Index<usize> for WeightVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WeightClass {
    /// The pairwise inequality holds on every edge.
    EdgeAdmissible,
    /// The vertex disks are, in addition, pairwise disjoint along every edge.
    Surrogate,
    Rejected,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightValidation {
    pub class: WeightClass,
    /// Edges where the pairwise inequality fails.
    pub violations: Vec<usize>,
    /// Edges where the vertex disks overlap.
    pub overlaps: Vec<usize>,
}

/// Edge-level admissibility of `weights` on the current triangulation.
///
/// Edge lengths stand in for vertex distances, so passing is necessary but
/// not sufficient for admissibility on the surface.
pub fn validate_weights(mesh: &DeltaTriangulation, weights: &WeightVector) -> Result<WeightValidation> {
    weights.check(mesh.num_vertices())?;
    let conn = mesh.connectivity();
    let mut violations = Vec::new();
    let mut overlaps = Vec::new();
    for e in 0..mesh.num_edges() {
        let (i, j) = conn.edge_vertices(e);
        let (a, b, l) = (weights[i], weights[j], mesh.length(e));
        let (pairwise, disjoint) = match mesh.geometry() {
            Geometry::Flat => (a < l * l + b && b < l * l + a, a.sqrt() + b.sqrt() < l),
            Geometry::Hyperbolic => {
                let cl = l.cosh();
                (
                    a.cosh() < b.cosh() * cl && b.cosh() < a.cosh() * cl,
                    a + b < l,
                )
            }
        };
        if !pairwise {
            violations.push(e);
        }
        if !disjoint {
            overlaps.push(e);
        }
    }
    let class = if !violations.is_empty() {
        WeightClass::Rejected
    } else if overlaps.is_empty() {
        WeightClass::Surrogate
    } else {
        WeightClass::EdgeAdmissible
    };
    Ok(WeightValidation {
        class,
        violations,
        overlaps,
    })
}
