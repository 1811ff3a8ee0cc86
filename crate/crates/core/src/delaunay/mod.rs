//! Weighted Delaunay triangulations of closed flat and hyperbolic surfaces.
//!
//! Each edge is certified in its unfolded hinge: the dual points of the two
//! faces are computed in the shared chart and their signed heights over the
//! edge are summed. A non-negative sum on every edge characterizes the
//! weighted Delaunay triangulation.

mod driver;
mod dual;
mod tessellation;

use serde::{Deserialize, Serialize};

pub use driver::{
    certify_global, flip_to_delaunay, flip_to_delaunay_observed, run_flips, Certification,
    FlipConfig, FlipPhase, FlipReport, FlipSurface, WeightedMesh,
};
pub use dual::{extract_dual, DualComplex, DualEdge, DualVertex};
pub use tessellation::{
    canonical_tessellation, canonical_tessellation_of, length_quantum, Tessellation,
};

use crate::error::{Error, Result};
use crate::euclid::{power_center, signed_height, Point2, WeightedPoint};
use crate::hyperbolic::{hyp_power_center, signed_dist_to_geodesic, HGeodesic, HPoint};
use crate::mesh::{DeltaTriangulation, HingeChart, HingePoints, WeightVector};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CertStatus {
    Delaunay,
    Tie,
    Violated,
    SelfGlued,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeCertificate {
    pub edge: usize,
    /// Signed height of the first face's dual point, positive towards `k`.
    pub h_k: f64,
    /// Signed height of the second face's dual point, positive towards `l`.
    pub h_l: f64,
    pub margin: f64,
    pub status: CertStatus,
}

impl EdgeCertificate {
    /// Classifies `h_k + h_l` against `tie * scale`.
    pub fn classify(edge: usize, h_k: f64, h_l: f64, scale: f64, tol: &Tolerance) -> Self {
        let margin = h_k + h_l;
        let band = tol.tie * scale;
        let status = if margin.abs() <= band {
            CertStatus::Tie
        } else if margin > 0.0 {
            CertStatus::Delaunay
        } else {
            CertStatus::Violated
        };
        Self {
            edge,
            h_k,
            h_l,
            margin,
            status,
        }
    }

    pub fn self_glued(edge: usize, h: f64) -> Self {
        Self {
            edge,
            h_k: h,
            h_l: h,
            margin: 2.0 * h,
            status: CertStatus::SelfGlued,
        }
    }

    pub fn is_violated(&self) -> bool {
        self.status == CertStatus::Violated
    }
}

/// Engine-side weight check: finite, non-negative and one per vertex.
/// Zero weights give the classic intrinsic Delaunay triangulation.
pub(crate) fn check_engine_weights(mesh: &DeltaTriangulation, weights: &WeightVector) -> Result<()> {
    if weights.len() != mesh.num_vertices() {
        return Err(Error::WeightCount {
            expected: mesh.num_vertices(),
            got: weights.len(),
        });
    }
    match weights.as_slice().iter().position(|w| !(*w >= 0.0 && w.is_finite())) {
        Some(index) => Err(Error::NonpositiveWeight {
            index,
            value: weights[index],
        }),
        None => Ok(()),
    }
}

/// Heights of the two dual points over the hinge edge, in chart order
/// `(h_k, h_l)`. For a self-glued hinge both faces are the same face and
/// only the first one is evaluated.
fn hinge_heights(
    chart: &HingeChart,
    weights: &WeightVector,
    tol: &Tolerance,
) -> Result<(f64, f64)> {
    let [i, j, k, l] = chart.vertices.map(|v| weights[v]);
    let [f0, f1] = chart.faces;
    match chart.points {
        HingePoints::Flat(p) => {
            let height = |opp: usize, w_opp: f64, face: usize| -> Result<f64> {
                let o = flat_face_center([p[0], p[1], p[opp]], [i, j, w_opp], face, tol)?;
                signed_height(o.center, (p[0], p[1]), p[opp], tol)
                    .map_err(|_| Error::InfeasibleFace { face })
            };
            let h_k = height(2, k, f0)?;
            let h_l = if chart.is_self_glued() { h_k } else { height(3, l, f1)? };
            Ok((h_k, h_l))
        }
        HingePoints::Hyperbolic(p) => {
            let base = HGeodesic::through(p[0], p[1]).ok_or(Error::InfeasibleFace { face: f0 })?;
            let height = |opp: usize, r_opp: f64, face: usize| -> Result<f64> {
                let o = hyp_face_center([p[0], p[1], p[opp]], [i, j, r_opp], face, tol)?;
                let side = signed_dist_to_geodesic(p[opp], &base).signum();
                Ok(side * signed_dist_to_geodesic(o.center, &base))
            };
            let h_k = height(2, k, f0)?;
            let h_l = if chart.is_self_glued() { h_k } else { height(3, l, f1)? };
            Ok((h_k, h_l))
        }
    }
}

/// Local weighted Delaunay certificate of edge `e`.
pub fn edge_certificate(
    mesh: &DeltaTriangulation,
    weights: &WeightVector,
    e: usize,
    tol: &Tolerance,
) -> Result<EdgeCertificate> {
    check_engine_weights(mesh, weights)?;
    certificate_unchecked(mesh, weights, e, tol)
}

pub(crate) fn certificate_unchecked(
    mesh: &DeltaTriangulation,
    weights: &WeightVector,
    e: usize,
    tol: &Tolerance,
) -> Result<EdgeCertificate> {
    let chart = mesh.unfold_hinge(e)?;
    let (h_k, h_l) = hinge_heights(&chart, weights, tol)?;
    if chart.is_self_glued() {
        return Ok(EdgeCertificate::self_glued(e, h_k));
    }
    Ok(EdgeCertificate::classify(e, h_k, h_l, chart.diameter(), tol))
}

/// Both heights of a self-glued hinge computed independently, one per copy
/// of the face in the chart.
pub fn self_glued_heights(
    mesh: &DeltaTriangulation,
    weights: &WeightVector,
    e: usize,
    tol: &Tolerance,
) -> Result<Option<(f64, f64)>> {
    check_engine_weights(mesh, weights)?;
    let mut chart = mesh.unfold_hinge(e)?;
    if !chart.is_self_glued() {
        return Ok(None);
    }
    // Pretend the faces differ so that both copies are evaluated.
    chart.faces[1] = usize::MAX;
    hinge_heights(&chart, weights, tol).map(Some)
}

/// Power center of a flat face in its canonical chart.
pub(crate) fn flat_face_center(
    points: [Point2; 3],
    w: [f64; 3],
    face: usize,
    tol: &Tolerance,
) -> Result<crate::euclid::PowerCenterE> {
    power_center(
        WeightedPoint::new(points[0], w[0]),
        WeightedPoint::new(points[1], w[1]),
        WeightedPoint::new(points[2], w[2]),
        tol,
    )
    .map_err(|_| Error::InfeasibleFace { face })
}

pub(crate) fn hyp_face_center(
    points: [HPoint; 3],
    r: [f64; 3],
    face: usize,
    tol: &Tolerance,
) -> Result<crate::hyperbolic::PowerCenterH> {
    hyp_power_center(points, r, tol).map_err(|e| match e {
        Error::NoIntersection | Error::DegenerateBisector => Error::PowerCenterInfeasible { face },
        _ => Error::InfeasibleFace { face },
    })
}
