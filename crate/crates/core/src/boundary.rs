//! Hyperbolic surfaces with geodesic boundary, cut into right-angled
//! hexagons.
//!
//! The combinatorics are those of a triangulated closed surface in which
//! each vertex stands for one boundary geodesic and each edge for the
//! orthogeodesic (seam) between two boundary geodesics. Each face becomes a
//! right-angled hexagon whose alternate sides are its three seams.
//!
//! The per-seam condition used here is reconstructed from the sinh-level
//! duality rather than taken from a closed formula; reports flag this with
//! `inferred_condition`.

use serde::{Deserialize, Serialize};

use crate::delaunay::{
    canonical_tessellation_of, length_quantum, run_flips, CertStatus, Certification,
    EdgeCertificate, FlipConfig, FlipPhase, FlipSurface, Tessellation,
};
use crate::error::{Error, Result};
use crate::hyperbolic::{
    boundary_dual_point, h_distance, hexagon_solve, signed_dist_to_geodesic, BoundaryDualPoint,
    Frame, HGeodesic, HPoint, MinkVec,
};
use crate::mesh::io::{encode_gluing, FileGeometry, SurfaceFile};
use crate::mesh::{Connectivity, Corner, WeightVector};
use crate::tolerance::Tolerance;

/// A right-angled hexagon laid out in the hyperboloid model.
///
/// Index `c` refers to the face corner `c`: seam `c` runs from boundary
/// geodesic `c` to boundary geodesic `c + 1`, and `arcs[c]` is the side on
/// boundary geodesic `c`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hexagon {
    pub seams: [f64; 3],
    pub arcs: [f64; 3],
    /// Boundary geodesics, positive towards the interior.
    pub boundaries: [HGeodesic; 3],
    /// Seam geodesics, positive towards the interior.
    pub seam_lines: [HGeodesic; 3],
    /// `feet[c]` is where seam `c` leaves boundary `c`; `heads[c]` is where
    /// it meets boundary `c + 1`.
    pub feet: [HPoint; 3],
    pub heads: [HPoint; 3],
    /// Distance between the start point and where the walk around the
    /// boundary ends.
    pub closure_error: f64,
}

/// Arc lengths on the three boundary geodesics of the hexagon with the
/// given seams; `arcs[c]` is opposite `seams[c + 1]`.
pub fn hexagon_arcs(seams: [f64; 3]) -> Result<[f64; 3]> {
    let (o0, o1, o2) = hexagon_solve(seams[0], seams[1], seams[2])?;
    let opposite = [o0, o1, o2];
    Ok([opposite[1], opposite[2], opposite[0]])
}

fn lay_out(start: Frame, seams: [f64; 3], arcs: [f64; 3]) -> Hexagon {
    let mut f = start;
    let mut seam_lines = [start.geodesic(); 3];
    let mut boundaries = [start.geodesic(); 3];
    let mut feet = [start.point; 3];
    let mut heads = [start.point; 3];
    for c in 0..3 {
        let v = (c + 1) % 3;
        seam_lines[c] = f.geodesic();
        feet[c] = f.point;
        f = f.walk(seams[c]);
        heads[c] = f.point;
        f = f.turn_left();
        boundaries[v] = f.geodesic();
        f = f.walk(arcs[v]).turn_left();
    }
    Hexagon {
        seams,
        arcs,
        boundaries,
        seam_lines,
        feet,
        heads,
        closure_error: h_distance(f.point, start.point),
    }
}

/// Hexagon with the given seams, with seam 0 leaving the origin along the
/// positive first axis and the interior above it.
pub fn hexagon_from_seams(seams: [f64; 3]) -> Result<Hexagon> {
    let arcs = hexagon_arcs(seams)?;
    Ok(lay_out(Frame::new(HPoint::ORIGIN, MinkVec::new(1.0, 0.0, 0.0)), seams, arcs))
}

impl Hexagon {
    pub fn diameter(&self) -> f64 {
        self.seams.iter().chain(&self.arcs).copied().fold(0.0, f64::max)
    }

    /// All six side lengths re-measured from the layout, seams first.
    pub fn measured_sides(&self) -> [f64; 6] {
        [
            h_distance(self.feet[0], self.heads[0]),
            h_distance(self.feet[1], self.heads[1]),
            h_distance(self.feet[2], self.heads[2]),
            h_distance(self.heads[2], self.feet[0]),
            h_distance(self.heads[0], self.feet[1]),
            h_distance(self.heads[1], self.feet[2]),
        ]
    }
}

/// Two hexagons sharing a seam, laid out in one chart.
///
/// Boundary geodesics are ordered `i, j, k, l`: the seam joins `i` to `j`
/// and runs along the positive first axis from the origin; the hexagon
/// containing `k` lies above it and the one containing `l` below.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryHinge {
    pub edge: usize,
    pub faces: [usize; 2],
    pub vertices: [usize; 4],
    pub hexagons: [Hexagon; 2],
    pub boundaries: [HGeodesic; 4],
    pub seam: HGeodesic,
}

impl BoundaryHinge {
    pub fn is_self_glued(&self) -> bool {
        self.faces[0] == self.faces[1]
    }

    pub fn diameter(&self) -> f64 {
        self.hexagons[0].diameter().max(self.hexagons[1].diameter())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruncatedTriangulation {
    conn: Connectivity,
    seams: Vec<f64>,
}

impl TruncatedTriangulation {
    pub fn new(conn: Connectivity, seams: Vec<f64>) -> Result<Self> {
        if seams.len() != conn.num_edges() {
            return Err(Error::InvalidMesh(format!(
                "{} seam lengths for {} edges",
                seams.len(),
                conn.num_edges()
            )));
        }
        let tt = Self { conn, seams };
        for f in 0..tt.num_faces() {
            let s = tt.face_seams(tt.conn.face_halfedges(f)[0]);
            hexagon_arcs(s)?;
        }
        Ok(tt)
    }

    pub fn from_faces(faces: &[[usize; 3]], gluing: &[(Corner, Corner)], seams: Vec<f64>) -> Result<Self> {
        Self::new(Connectivity::from_faces(faces, gluing)?, seams)
    }

    pub fn from_file(file: &SurfaceFile) -> Result<Self> {
        if file.geometry != FileGeometry::Boundary {
            return Err(Error::Parse("closed mesh where a boundary surface was expected".into()));
        }
        let seams = file
            .seam_lengths
            .clone()
            .ok_or_else(|| Error::Parse("missing field `seam_lengths`".into()))?;
        Self::new(file.connectivity()?, seams)
    }

    pub fn to_file(&self, weights: Option<&WeightVector>) -> SurfaceFile {
        let (faces, gluing) = self.conn.to_faces();
        SurfaceFile {
            geometry: FileGeometry::Boundary,
            faces,
            gluing: encode_gluing(&gluing),
            edge_lengths: None,
            seam_lengths: Some(self.seams.clone()),
            weights: weights.cloned(),
        }
    }

    pub fn connectivity(&self) -> &Connectivity {
        &self.conn
    }

    pub fn seams(&self) -> &[f64] {
        &self.seams
    }

    pub fn num_boundaries(&self) -> usize {
        self.conn.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.conn.num_edges()
    }

    pub fn num_faces(&self) -> usize {
        self.conn.num_faces()
    }

    /// Seams of the face of `h`, starting with `h`.
    fn face_seams(&self, h: usize) -> [f64; 3] {
        let h1 = self.conn.next(h);
        let h2 = self.conn.next(h1);
        [h, h1, h2].map(|g| self.seams[self.conn.edge(g)])
    }

    /// Hexagon of `face(h)` with seam `h` leaving `start` along its tangent.
    pub fn hexagon_at(&self, h: usize, start: Frame) -> Result<Hexagon> {
        let seams = self.face_seams(h);
        Ok(lay_out(start, seams, hexagon_arcs(seams)?))
    }

    pub fn hexagon(&self, f: usize) -> Result<Hexagon> {
        hexagon_from_seams(self.face_seams(self.conn.face_halfedges(f)[0]))
    }

    /// Total length of each boundary geodesic.
    pub fn boundary_lengths(&self) -> Result<Vec<f64>> {
        let mut out = vec![0.0; self.num_boundaries()];
        for f in 0..self.num_faces() {
            let hs = self.conn.face_halfedges(f);
            let arcs = hexagon_arcs(self.face_seams(hs[0]))?;
            for c in 0..3 {
                out[self.conn.origin(hs[c])] += arcs[c];
            }
        }
        Ok(out)
    }

    pub fn unfold_seam(&self, e: usize) -> Result<BoundaryHinge> {
        if e >= self.num_edges() {
            return Err(Error::InvalidEdge { edge: e });
        }
        let c = &self.conn;
        let h = c.halfedge(e);
        let t = c.twin(h);
        let start = Frame::new(HPoint::ORIGIN, MinkVec::new(1.0, 0.0, 0.0));
        let upper = self.hexagon_at(h, start)?;
        let lower = self.hexagon_at(t, start.walk(self.seams[e]).reversed())?;
        Ok(BoundaryHinge {
            edge: e,
            faces: [c.face(h), c.face(t)],
            vertices: [c.origin(h), c.dest(h), c.origin(c.prev(h)), c.origin(c.prev(t))],
            boundaries: [upper.boundaries[0], upper.boundaries[1], upper.boundaries[2], lower.boundaries[2]],
            seam: upper.seam_lines[0],
            hexagons: [upper, lower],
        })
    }

    /// Replaces seam `e` by the orthogeodesic between the two far boundary
    /// geodesics of its hinge. Returns the new seam length.
    pub fn switch_seam(&mut self, e: usize, tol: &Tolerance) -> Result<f64> {
        if e >= self.num_edges() {
            return Err(Error::InvalidEdge { edge: e });
        }
        if self.conn.is_self_glued(e) {
            return Err(Error::SelfGluedFlip { edge: e });
        }
        let hinge = self.unfold_seam(e)?;
        let (_, _, len) =
            crate::hyperbolic::common_perpendicular(&hinge.boundaries[2], &hinge.boundaries[3], tol)?;
        self.conn.flip(e)?;
        self.seams[e] = len;
        Ok(len)
    }
}

fn check_radii(tt: &TruncatedTriangulation, weights: &WeightVector) -> Result<()> {
    weights.check(tt.num_boundaries())
}

fn dual_point(
    hinge: &BoundaryHinge,
    upper: bool,
    weights: &WeightVector,
    tol: &Tolerance,
) -> Result<BoundaryDualPoint> {
    let [i, j, k, l] = hinge.vertices;
    let [gi, gj, gk, gl] = hinge.boundaries;
    let (g, r) = if upper {
        ([gi, gj, gk], [weights[i], weights[j], weights[k]])
    } else {
        ([gj, gi, gl], [weights[j], weights[i], weights[l]])
    };
    boundary_dual_point(&g, r, tol)
}

/// Signed distances of the two hexagons' dual points to the shared seam,
/// each positive towards its own hexagon.
pub fn boundary_certificate(
    tt: &TruncatedTriangulation,
    weights: &WeightVector,
    e: usize,
    tol: &Tolerance,
) -> Result<EdgeCertificate> {
    check_radii(tt, weights)?;
    certificate_unchecked(tt, weights, e, tol)
}

fn certificate_unchecked(
    tt: &TruncatedTriangulation,
    weights: &WeightVector,
    e: usize,
    tol: &Tolerance,
) -> Result<EdgeCertificate> {
    let hinge = tt.unfold_seam(e)?;
    let o = dual_point(&hinge, true, weights, tol)?;
    let h_k = signed_dist_to_geodesic(o.center, &hinge.seam);
    if hinge.is_self_glued() {
        return Ok(EdgeCertificate::self_glued(e, h_k));
    }
    let o = dual_point(&hinge, false, weights, tol)?;
    let h_l = -signed_dist_to_geodesic(o.center, &hinge.seam);
    Ok(EdgeCertificate::classify(e, h_k, h_l, hinge.diameter(), tol))
}

/// Dual point of each hexagon in its own layout.
pub fn boundary_dual_points(
    tt: &TruncatedTriangulation,
    weights: &WeightVector,
    tol: &Tolerance,
) -> Result<Vec<BoundaryDualPoint>> {
    check_radii(tt, weights)?;
    (0..tt.num_faces())
        .map(|f| {
            let hex = tt.hexagon(f)?;
            let r = tt.conn.face_vertices(f).map(|v| weights[v]);
            boundary_dual_point(&hex.boundaries, r, tol)
        })
        .collect()
}

struct WeightedBoundary<'a> {
    tt: &'a mut TruncatedTriangulation,
    weights: &'a WeightVector,
    tol: Tolerance,
}

impl FlipSurface for WeightedBoundary<'_> {
    fn num_edges(&self) -> usize {
        self.tt.num_edges()
    }

    fn certificate(&self, e: usize) -> Result<EdgeCertificate> {
        certificate_unchecked(self.tt, self.weights, e, &self.tol)
    }

    fn flip(&mut self, e: usize) -> Result<()> {
        self.tt.switch_seam(e, &self.tol).map(|_| ())
    }

    fn hinge_boundary(&self, e: usize) -> [usize; 4] {
        self.tt.conn.hinge_boundary(e)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwitchReport {
    pub switches: usize,
    pub ties: usize,
    pub certificates: Vec<EdgeCertificate>,
    pub boundary_lengths: Vec<f64>,
    /// The per-seam condition is a reconstruction; always `true`.
    pub inferred_condition: bool,
}

pub fn switch_to_delaunay(
    tt: &mut TruncatedTriangulation,
    weights: &WeightVector,
    config: &FlipConfig,
) -> Result<SwitchReport> {
    switch_to_delaunay_observed(tt, weights, config, &mut |_, _, _| {})
}

pub fn switch_to_delaunay_observed(
    tt: &mut TruncatedTriangulation,
    weights: &WeightVector,
    config: &FlipConfig,
    observer: &mut dyn FnMut(&TruncatedTriangulation, FlipPhase, usize),
) -> Result<SwitchReport> {
    check_radii(tt, weights)?;
    let cap = config.cap(tt.num_edges());
    let mut surface = WeightedBoundary {
        tt,
        weights,
        tol: config.tol,
    };
    let (switches, certificates) = run_flips(&mut surface, cap, &mut |s, phase, e| observer(s.tt, phase, e))
        .map_err(|err| match err {
            Error::FlipLimitExceeded { cap, violations } => Error::SwitchLimitExceeded { cap, violations },
            other => other,
        })?;
    let ties = certificates.iter().filter(|c| c.status == CertStatus::Tie).count();
    Ok(SwitchReport {
        switches,
        ties,
        certificates,
        boundary_lengths: tt.boundary_lengths()?,
        inferred_condition: true,
    })
}

pub fn certify_boundary(
    tt: &TruncatedTriangulation,
    weights: &WeightVector,
    tol: &Tolerance,
) -> Result<Certification> {
    check_radii(tt, weights)?;
    let certificates = (0..tt.num_edges())
        .map(|e| certificate_unchecked(tt, weights, e, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(Certification::from_certificates(certificates))
}

/// Canonical tessellation; the length scale is the total boundary length.
pub fn boundary_tessellation(
    tt: &TruncatedTriangulation,
    weights: &WeightVector,
    tol: &Tolerance,
) -> Result<Tessellation> {
    let cert = certify_boundary(tt, weights, tol)?;
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
    let scale: f64 = tt.boundary_lengths()?.iter().sum();
    Ok(canonical_tessellation_of(&tt.conn, &tt.seams, &erase, length_quantum(scale)))
}
