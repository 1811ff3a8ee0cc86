//! Intrinsic triangulated surfaces: combinatorics plus edge lengths.
//!
//! A surface is never given by an embedding. Flat faces are realized in the
//! plane and hyperbolic faces in the hyperboloid model, each in a canonical
//! frame: the origin of a chosen halfedge at the origin, the halfedge along
//! the positive first axis, and the rest of the face above it.

mod connectivity;
pub mod io;
mod weights;

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

pub use connectivity::{Connectivity, Corner};
pub use weights::{validate_weights, WeightClass, WeightValidation, WeightVector};

use crate::error::{Error, Result};
use crate::euclid::Point2;
use crate::hyperbolic::{h_distance, HPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Flat,
    Hyperbolic,
}

/// Angle opposite `a` in a triangle with sides `a, b, c`, or `None` if the
/// strict triangle inequality fails. Uses the half-angle form, which stays
/// accurate for small and needle-like triangles.
pub fn triangle_angle(geometry: Geometry, a: f64, b: f64, c: f64) -> Option<f64> {
    let s = 0.5 * (a + b + c);
    let (sa, sb, sc) = (s - a, s - b, s - c);
    if !(sa > 0.0 && sb > 0.0 && sc > 0.0) {
        return None;
    }
    let (num, den) = match geometry {
        Geometry::Flat => (sb * sc, s * sa),
        Geometry::Hyperbolic => (sb.sinh() * sc.sinh(), s.sinh() * sa.sinh()),
    };
    Some(2.0 * num.sqrt().atan2(den.sqrt()))
}

/// Angles of one face, listed at the origins of its three halfedges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceAngles {
    pub halfedges: [usize; 3],
    pub angles: [f64; 3],
}

/// Per-vertex cone angles and discrete curvatures `2π - angle`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConeData {
    pub angles: Vec<f64>,
    pub curvatures: Vec<f64>,
}

/// Chart positions of a single face in its canonical frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FacePoints {
    Flat([Point2; 3]),
    Hyperbolic([HPoint; 3]),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaceChart {
    pub face: usize,
    /// Halfedges in order; `points[c]` is the origin of `halfedges[c]`.
    pub halfedges: [usize; 3],
    pub points: FacePoints,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HingePoints {
    Flat([Point2; 4]),
    Hyperbolic([HPoint; 4]),
}

/// Two faces sharing an edge, unfolded into one chart.
///
/// `vertices` and `points` are ordered `i, j, k, l`: the edge runs `i -> j`
/// along the representative halfedge, `k` is opposite in that halfedge's
/// face and `l` in the twin's face. `i` sits at the origin, `j` on the
/// positive first axis, `k` above and `l` below.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HingeChart {
    pub edge: usize,
    pub halfedge: usize,
    pub twin: usize,
    pub faces: [usize; 2],
    pub vertices: [usize; 4],
    pub points: HingePoints,
    /// Interior angles of the hinge at `i` and at `j`.
    pub angle_sums: [f64; 2],
}

impl HingeChart {
    pub fn is_self_glued(&self) -> bool {
        self.faces[0] == self.faces[1]
    }

    pub fn distance(&self, a: usize, b: usize) -> f64 {
        match self.points {
            HingePoints::Flat(p) => p[a].distance(p[b]),
            HingePoints::Hyperbolic(p) => h_distance(p[a], p[b]),
        }
    }

    /// Chart distance between the two opposite vertices.
    pub fn diagonal(&self) -> f64 {
        self.distance(2, 3)
    }

    /// The five mesh lengths re-measured in the chart, ordered
    /// `ij, jk, ki, il, lj`.
    pub fn chart_lengths(&self) -> [f64; 5] {
        [
            self.distance(0, 1),
            self.distance(1, 2),
            self.distance(2, 0),
            self.distance(0, 3),
            self.distance(3, 1),
        ]
    }

    pub fn diameter(&self) -> f64 {
        self.chart_lengths().into_iter().fold(self.diagonal(), f64::max)
    }

    /// The segment `k l` crosses the open edge `i j`.
    pub fn is_convex(&self) -> bool {
        self.angle_sums.iter().all(|&a| a < PI - 1e-12)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DeltaTriangulation {
    conn: Connectivity,
    lengths: Vec<f64>,
    geometry: Geometry,
}

impl DeltaTriangulation {
    pub fn new(geometry: Geometry, conn: Connectivity, lengths: Vec<f64>) -> Result<Self> {
        if lengths.len() != conn.num_edges() {
            return Err(Error::InvalidMesh(format!(
                "{} edge lengths for {} edges",
                lengths.len(),
                conn.num_edges()
            )));
        }
        if let Some(e) = lengths.iter().position(|&l| !(l > 0.0 && l.is_finite())) {
            return Err(Error::InvalidMesh(format!("edge {e} has non-positive length")));
        }
        let mesh = Self {
            conn,
            lengths,
            geometry,
        };
        for f in 0..mesh.num_faces() {
            mesh.face_angles(f)?;
        }
        Ok(mesh)
    }

    pub fn from_faces(
        geometry: Geometry,
        faces: &[[usize; 3]],
        gluing: &[(Corner, Corner)],
        lengths: Vec<f64>,
    ) -> Result<Self> {
        Self::new(geometry, Connectivity::from_faces(faces, gluing)?, lengths)
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn connectivity(&self) -> &Connectivity {
        &self.conn
    }

    pub fn lengths(&self) -> &[f64] {
        &self.lengths
    }

    pub fn length(&self, e: usize) -> f64 {
        self.lengths[e]
    }

    pub fn halfedge_length(&self, h: usize) -> f64 {
        self.lengths[self.conn.edge(h)]
    }

    pub fn num_vertices(&self) -> usize {
        self.conn.num_vertices()
    }

    pub fn num_edges(&self) -> usize {
        self.conn.num_edges()
    }

    pub fn num_faces(&self) -> usize {
        self.conn.num_faces()
    }

    /// Replaces every length by `scale * length`.
    pub fn scaled(&self, scale: f64) -> Result<Self> {
        Self::new(
            self.geometry,
            self.conn.clone(),
            self.lengths.iter().map(|l| l * scale).collect(),
        )
    }

    /// Same combinatorics and lengths, other geometry.
    pub fn with_geometry(&self, geometry: Geometry) -> Result<Self> {
        Self::new(geometry, self.conn.clone(), self.lengths.clone())
    }

    /// Corner angle at the origin of `h`, inside `face(h)`.
    pub fn corner_angle(&self, h: usize) -> Result<f64> {
        let a = self.halfedge_length(self.conn.next(h));
        let b = self.halfedge_length(h);
        let c = self.halfedge_length(self.conn.prev(h));
        triangle_angle(self.geometry, a, b, c).ok_or(Error::InfeasibleFace {
            face: self.conn.face(h),
        })
    }

    pub fn face_angles(&self, f: usize) -> Result<FaceAngles> {
        let halfedges = self.conn.face_halfedges(f);
        let mut angles = [0.0; 3];
        for (c, &h) in halfedges.iter().enumerate() {
            angles[c] = self.corner_angle(h)?;
        }
        Ok(FaceAngles { halfedges, angles })
    }

    pub fn face_area(&self, f: usize) -> Result<f64> {
        match self.geometry {
            Geometry::Flat => {
                let [a, b, c] = self.conn.face_halfedges(f).map(|h| self.halfedge_length(h));
                let p = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c);
                if !(p > 0.0) {
                    return Err(Error::InfeasibleFace { face: f });
                }
                Ok(0.25 * p.sqrt())
            }
            Geometry::Hyperbolic => {
                let angles = self.face_angles(f)?.angles;
                Ok(PI - angles.iter().sum::<f64>())
            }
        }
    }

    pub fn total_area(&self) -> Result<f64> {
        (0..self.num_faces()).map(|f| self.face_area(f)).sum()
    }

    pub fn cone_angles(&self) -> Result<ConeData> {
        let mut angles = vec![0.0; self.num_vertices()];
        for h in 0..self.conn.num_halfedges() {
            angles[self.conn.origin(h)] += self.corner_angle(h)?;
        }
        let curvatures = angles.iter().map(|a| 2.0 * PI - a).collect();
        Ok(ConeData { angles, curvatures })
    }

    /// Canonical chart of face `f` starting at halfedge `start` (or the
    /// face's first halfedge).
    pub fn face_chart(&self, f: usize, start: Option<usize>) -> Result<FaceChart> {
        let h0 = start.unwrap_or(self.conn.face_halfedges(f)[0]);
        if self.conn.face(h0) != f {
            return Err(Error::InvalidMesh(format!("halfedge {h0} is not in face {f}")));
        }
        let h1 = self.conn.next(h0);
        let h2 = self.conn.next(h1);
        let l01 = self.halfedge_length(h0);
        let l02 = self.halfedge_length(h2);
        let angle = self.corner_angle(h0)?;
        let points = match self.geometry {
            Geometry::Flat => FacePoints::Flat([
                Point2::ORIGIN,
                Point2::new(l01, 0.0),
                Point2::from_polar(l02, angle),
            ]),
            Geometry::Hyperbolic => FacePoints::Hyperbolic([
                HPoint::ORIGIN,
                HPoint::from_polar(l01, 0.0),
                HPoint::from_polar(l02, angle),
            ]),
        };
        Ok(FaceChart {
            face: f,
            halfedges: [h0, h1, h2],
            points,
        })
    }

    /// Unfolds the two faces of `e` into one chart.
    pub fn unfold_hinge(&self, e: usize) -> Result<HingeChart> {
        if e >= self.num_edges() {
            return Err(Error::InvalidEdge { edge: e });
        }
        let c = &self.conn;
        let h = c.halfedge(e);
        let t = c.twin(h);
        let (h1, h2) = (c.next(h), c.prev(h));
        let (t1, t2) = (c.next(t), c.prev(t));
        let len = self.lengths[e];
        let angle_ik = self.corner_angle(h)?;
        let angle_il = self.corner_angle(t1)?;
        let angle_jk = self.corner_angle(h1)?;
        let angle_jl = self.corner_angle(t)?;
        let len_ik = self.halfedge_length(h2);
        let len_il = self.halfedge_length(t1);
        let points = match self.geometry {
            Geometry::Flat => HingePoints::Flat([
                Point2::ORIGIN,
                Point2::new(len, 0.0),
                Point2::from_polar(len_ik, angle_ik),
                Point2::from_polar(len_il, -angle_il),
            ]),
            Geometry::Hyperbolic => HingePoints::Hyperbolic([
                HPoint::ORIGIN,
                HPoint::from_polar(len, 0.0),
                HPoint::from_polar(len_ik, angle_ik),
                HPoint::from_polar(len_il, -angle_il),
            ]),
        };
        Ok(HingeChart {
            edge: e,
            halfedge: h,
            twin: t,
            faces: [c.face(h), c.face(t)],
            vertices: [c.origin(h), c.dest(h), c.origin(h2), c.origin(t2)],
            points,
            angle_sums: [angle_ik + angle_il, angle_jk + angle_jl],
        })
    }

    /// Replaces `e` by the other diagonal of its hinge, keeping the metric.
    /// Returns the new length of `e`.
    pub fn flip_edge(&mut self, e: usize) -> Result<f64> {
        if e >= self.num_edges() {
            return Err(Error::InvalidEdge { edge: e });
        }
        if self.conn.is_self_glued(e) {
            return Err(Error::SelfGluedFlip { edge: e });
        }
        let chart = self.unfold_hinge(e)?;
        if !chart.is_convex() {
            return Err(Error::NonConvexHinge { edge: e });
        }
        let new_len = chart.diagonal();
        let old_len = self.lengths[e];
        let saved = self.conn.clone();
        self.conn.flip(e)?;
        self.lengths[e] = new_len;
        for f in chart.faces {
            if let Err(err) = self.face_angles(f) {
                self.conn = saved;
                self.lengths[e] = old_len;
                return Err(err);
            }
        }
        Ok(new_len)
    }

    /// Length of a shortest edge at each vertex.
    pub fn min_incident_lengths(&self) -> Vec<f64> {
        let mut out = vec![f64::INFINITY; self.num_vertices()];
        for e in 0..self.num_edges() {
            let (a, b) = self.conn.edge_vertices(e);
            out[a] = out[a].min(self.lengths[e]);
            out[b] = out[b].min(self.lengths[e]);
        }
        out
    }

    pub fn max_length(&self) -> f64 {
        self.lengths.iter().copied().fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperbolic::HPoint;

    fn unit_square_torus() -> DeltaTriangulation {
        let faces = [[0, 0, 0], [0, 0, 0]];
        let gluing = [((0, 0), (1, 1)), ((0, 1), (1, 2)), ((0, 2), (1, 0))];
        DeltaTriangulation::from_faces(Geometry::Flat, &faces, &gluing, vec![1.0, 1.0, 2f64.sqrt()])
            .unwrap()
    }

    fn tetrahedron(geometry: Geometry, len: f64) -> DeltaTriangulation {
        let faces = [[0, 1, 2], [0, 3, 1], [1, 3, 2], [2, 3, 0]];
        let gluing = [
            ((0, 0), (1, 2)),
            ((0, 1), (2, 2)),
            ((0, 2), (3, 2)),
            ((1, 0), (3, 1)),
            ((1, 1), (2, 0)),
            ((2, 1), (3, 0)),
        ];
        DeltaTriangulation::from_faces(geometry, &faces, &gluing, vec![len; 6]).unwrap()
    }

    #[test]
    fn flat_corner_angles() {
        let a = triangle_angle(Geometry::Flat, 1.0, 1.0, 1.0).unwrap();
        assert!((a - PI / 3.0).abs() < 1e-15);
        let right = triangle_angle(Geometry::Flat, 5.0, 3.0, 4.0).unwrap();
        assert!((right - PI / 2.0).abs() < 1e-15);
        assert!(triangle_angle(Geometry::Flat, 2.0, 1.0, 1.0).is_none());
    }

    #[test]
    fn hyperbolic_corner_angles_match_law_of_cosines() {
        let a = triangle_angle(Geometry::Hyperbolic, 1.0, 1.0, 1.0).unwrap();
        let oracle = ((1f64.cosh().powi(2) - 1f64.cosh()) / 1f64.sinh().powi(2)).acos();
        assert!((a - oracle).abs() < 1e-14);
        assert!(a < PI / 3.0);
        let (x, y, z) = (0.7, 1.3, 0.9);
        let a = triangle_angle(Geometry::Hyperbolic, x, y, z).unwrap();
        let oracle = ((y.cosh() * z.cosh() - x.cosh()) / (y.sinh() * z.sinh())).acos();
        assert!((a - oracle).abs() < 1e-13);
    }

    #[test]
    fn torus_and_tetrahedron_cone_angles() {
        let cones = unit_square_torus().cone_angles().unwrap();
        assert!((cones.angles[0] - 2.0 * PI).abs() < 1e-12);
        assert!(cones.curvatures[0].abs() < 1e-12);

        let cones = tetrahedron(Geometry::Flat, 1.0).cone_angles().unwrap();
        for (a, k) in cones.angles.iter().zip(&cones.curvatures) {
            assert!((a - PI).abs() < 1e-12 && (k - PI).abs() < 1e-12);
        }
    }

    #[test]
    fn equilateral_hinge_is_rhombus() {
        let mesh = tetrahedron(Geometry::Flat, 1.0);
        let chart = mesh.unfold_hinge(0).unwrap();
        assert!((chart.diagonal() - 3f64.sqrt()).abs() < 1e-14);
        for (l, m) in chart.chart_lengths().iter().zip([1.0; 5]) {
            assert!((l - m).abs() < 1e-14);
        }
    }

    #[test]
    fn torus_hinge_separates_identified_vertices() {
        let mesh = unit_square_torus();
        let chart = mesh.unfold_hinge(2).unwrap();
        assert_eq!(chart.vertices, [0, 0, 0, 0]);
        assert!((chart.diagonal() - 2f64.sqrt()).abs() < 1e-14);
        assert!(!chart.is_self_glued());
        let expected = [2f64.sqrt(), 1.0, 1.0, 1.0, 1.0];
        for (l, m) in chart.chart_lengths().iter().zip(expected) {
            assert!((l - m).abs() < 1e-14);
        }
    }

    #[test]
    fn square_flip_and_involution() {
        let mut mesh = unit_square_torus();
        let area = mesh.total_area().unwrap();
        let new = mesh.flip_edge(2).unwrap();
        assert!((new - 2f64.sqrt()).abs() < 1e-14);
        assert!((mesh.total_area().unwrap() - area).abs() < 1e-14);
        mesh.flip_edge(2).unwrap();
        assert!((mesh.length(2) - 2f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn skewed_flip_twice_returns_lengths() {
        // One-vertex torus with lattice (1, 0), (0.3, 0.9).
        let faces = [[0, 0, 0], [0, 0, 0]];
        let gluing = [((0, 0), (1, 1)), ((0, 1), (1, 2)), ((0, 2), (1, 0))];
        let w = Point2::new(0.3, 0.9);
        let lengths = vec![1.0, w.norm(), (Point2::new(1.0, 0.0) + w).norm()];
        let mut mesh =
            DeltaTriangulation::from_faces(Geometry::Flat, &faces, &gluing, lengths.clone()).unwrap();
        mesh.flip_edge(2).unwrap();
        assert!((mesh.length(2) - (w - Point2::new(1.0, 0.0)).norm()).abs() < 1e-14);
        mesh.flip_edge(2).unwrap();
        for (a, b) in mesh.lengths().iter().zip(&lengths) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn nonconvex_hinge_is_refused() {
        // Flat "double cone": two triangles (0,1,2) glued along all three
        // edges; each hinge is the triangle and its mirror image.
        let faces = [[0, 1, 2], [0, 2, 1]];
        let gluing = [((0, 0), (1, 2)), ((0, 1), (1, 1)), ((0, 2), (1, 0))];
        let mut mesh =
            DeltaTriangulation::from_faces(Geometry::Flat, &faces, &gluing, vec![1.0, 1.0, 1.9]).unwrap();
        // The obtuse corner doubles past π in one of the hinges.
        let bad = (0..3)
            .find(|&e| !mesh.unfold_hinge(e).unwrap().is_convex())
            .expect("some hinge is non-convex");
        assert_eq!(mesh.flip_edge(bad), Err(Error::NonConvexHinge { edge: bad }));
    }

    #[test]
    fn hyperbolic_chart_reproduces_lengths() {
        let mesh = tetrahedron(Geometry::Hyperbolic, 0.8);
        for e in 0..6 {
            let chart = mesh.unfold_hinge(e).unwrap();
            for l in chart.chart_lengths() {
                assert!((l - 0.8).abs() < 1e-12);
            }
            if let HingePoints::Hyperbolic(p) = chart.points {
                assert!(p.iter().all(|q: &HPoint| q.constraint_residual() < 1e-12));
                assert!(p[2].y() > 0.0 && p[3].y() < 0.0);
            }
        }
    }

    #[test]
    fn flip_preserves_cone_angles() {
        let mut mesh = tetrahedron(Geometry::Flat, 1.0);
        let before = mesh.cone_angles().unwrap();
        mesh.flip_edge(0).unwrap();
        let after = mesh.cone_angles().unwrap();
        for (a, b) in before.angles.iter().zip(&after.angles) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
