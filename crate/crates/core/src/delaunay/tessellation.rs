use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{certify_global, CertStatus};
use crate::error::{Error, Result};
use crate::mesh::{Connectivity, DeltaTriangulation, WeightVector};
use crate::tolerance::Tolerance;

/// Polygonal complex left after erasing tie edges, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tessellation {
    /// Hex SHA-256 of the canonical polygon list.
    pub hash: String,
    /// Each polygon as its boundary cycle of `(vertex, quantized length)`,
    /// rotated to its lexicographically least start; the list is sorted.
    pub polygons: Vec<Vec<(usize, i64)>>,
    pub erased_edges: Vec<usize>,
}

/// Length resolution used for hashing, relative to a flip-invariant scale
/// of the surface.
pub fn length_quantum(scale: f64) -> f64 {
    1e-6 * scale
}

fn least_rotation(cycle: &[(usize, i64)]) -> Vec<(usize, i64)> {
    (0..cycle.len())
        .map(|s| cycle[s..].iter().chain(&cycle[..s]).copied().collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Canonical form of the complex obtained from `conn` by erasing every edge
/// with `erase[e]`; lengths are rounded to multiples of `quantum`.
pub fn canonical_tessellation_of(
    conn: &Connectivity,
    lengths: &[f64],
    erase: &[bool],
    quantum: f64,
) -> Tessellation {
    let nh = conn.num_halfedges();
    let mut visited = vec![false; nh];
    let mut polygons = Vec::new();
    // Next boundary halfedge of the polygon: rotate around the head of `h`
    // through erased edges.
    let advance = |h: usize| {
        let mut g = conn.next(h);
        for _ in 0..nh {
            if !erase[conn.edge(g)] {
                return g;
            }
            g = conn.next(conn.twin(g));
        }
        g
    };
    for start in 0..nh {
        if visited[start] || erase[conn.edge(start)] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut h = start;
        while !visited[h] {
            visited[h] = true;
            let q = (lengths[conn.edge(h)] / quantum).round() as i64;
            cycle.push((conn.origin(h), q));
            h = advance(h);
        }
        polygons.push(least_rotation(&cycle));
    }
    polygons.sort();

    let mut digest = Sha256::new();
    for poly in &polygons {
        for (v, q) in poly {
            digest.update(format!("{v}:{q},"));
        }
        digest.update(";");
    }
    let hash = digest.finalize().iter().map(|b| format!("{b:02x}")).collect();
    let erased_edges = (0..erase.len()).filter(|&e| erase[e]).collect();
    Tessellation {
        hash,
        polygons,
        erased_edges,
    }
}

/// Canonical weighted Delaunay tessellation of a certified triangulation.
/// Tie edges are erased; the length scale is the square root of the area.
pub fn canonical_tessellation(
    mesh: &DeltaTriangulation,
    weights: &WeightVector,
    tol: &Tolerance,
) -> Result<Tessellation> {
    let cert = certify_global(mesh, weights, tol)?;
    if !cert.certified {
        return Err(Error::NotCertified {
            violations: cert.violations.len(),
        });
    }
    let erase: Vec<bool> = cert
        .certificates
        .iter()
        .map(|c| c.status == CertStatus::Tie)
        .collect();
    let quantum = length_quantum(mesh.total_area()?.sqrt());
    Ok(canonical_tessellation_of(
        mesh.connectivity(),
        mesh.lengths(),
        &erase,
        quantum,
    ))
}
