use serde::{Deserialize, Serialize};

use super::{certify_global, flat_face_center, hyp_face_center};
use crate::error::{Error, Result};
use crate::mesh::{DeltaTriangulation, FacePoints, Geometry, WeightVector};
use crate::tolerance::Tolerance;

/// Dual point of one face, in that face's canonical chart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualVertex {
    pub face: usize,
    pub geometry: Geometry,
    /// Plane coordinates, or hyperboloid coordinates `(x, y, z)`.
    pub coords: Vec<f64>,
    /// Orthogonal-circle power (flat) or common cosh ratio (hyperbolic).
    pub power: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualEdge {
    pub edge: usize,
    pub length: f64,
}

/// The weighted Voronoi decomposition as a cell complex dual to the
/// triangulation: one dual vertex per face, one dual edge per edge and one
/// dual face per vertex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualComplex {
    pub dual_vertices: Vec<DualVertex>,
    pub dual_edges: Vec<DualEdge>,
    /// For each primal vertex, the dual vertices around it in
    /// counter-clockwise order.
    pub dual_faces: Vec<Vec<usize>>,
}

pub fn extract_dual(
    mesh: &DeltaTriangulation,
    weights: &WeightVector,
    tol: &Tolerance,
) -> Result<DualComplex> {
    let cert = certify_global(mesh, weights, tol)?;
    if !cert.certified {
        return Err(Error::NotCertified {
            violations: cert.violations.len(),
        });
    }
    let conn = mesh.connectivity();
    let dual_vertices = (0..mesh.num_faces())
        .map(|f| {
            let chart = mesh.face_chart(f, None)?;
            let w = chart.halfedges.map(|h| weights[conn.origin(h)]);
            Ok(match chart.points {
                FacePoints::Flat(p) => {
                    let o = flat_face_center(p, w, f, tol)?;
                    DualVertex {
                        face: f,
                        geometry: Geometry::Flat,
                        coords: vec![o.center.x, o.center.y],
                        power: o.power,
                    }
                }
                FacePoints::Hyperbolic(p) => {
                    let o = hyp_face_center(p, w, f, tol)?;
                    DualVertex {
                        face: f,
                        geometry: Geometry::Hyperbolic,
                        coords: vec![o.center.x(), o.center.y(), o.center.z()],
                        power: o.ratio,
                    }
                }
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let dual_edges = cert
        .certificates
        .iter()
        .map(|c| DualEdge {
            edge: c.edge,
            length: c.margin,
        })
        .collect();
    let dual_faces = conn
        .vertex_rings()
        .into_iter()
        .map(|ring| ring.into_iter().map(|h| conn.face(h)).collect())
        .collect();
    Ok(DualComplex {
        dual_vertices,
        dual_edges,
        dual_faces,
    })
}
