//! Example surfaces: lattice tori, cone spheres, a genus-2 octagon surface
//! and small bordered surfaces.

use std::collections::HashMap;
use std::f64::consts::PI;

use rand::Rng;

use crate::boundary::TruncatedTriangulation;
use crate::error::{Error, Result};
use crate::euclid::{signed_area, Point2};
use crate::mesh::{Corner, DeltaTriangulation, Geometry};

/// A flat torus `R^2 / lattice` with marked points, triangulated.
#[derive(Debug, Clone)]
pub struct PeriodicTorus {
    pub lattice: [Point2; 2],
    /// Position of each vertex in the fundamental domain.
    pub positions: Vec<Point2>,
    pub mesh: DeltaTriangulation,
}

/// Triangulates a `cols x rows` grid of points on the torus spanned by
/// `lattice`, each grid cell cut along the same diagonal. `offsets` moves
/// the points off the grid and must keep every triangle positively
/// oriented.
pub fn lattice_torus(
    cols: usize,
    rows: usize,
    lattice: [Point2; 2],
    offsets: &[Point2],
) -> Result<PeriodicTorus> {
    let n = cols * rows;
    if n == 0 || offsets.len() != n {
        return Err(Error::InvalidMesh("grid size and offsets disagree".into()));
    }
    let [u, v] = lattice;
    let positions: Vec<Point2> = (0..n)
        .map(|id| {
            let (a, b) = (id % cols, id / cols);
            u * (a as f64 / cols as f64) + v * (b as f64 / rows as f64) + offsets[id]
        })
        .collect();
    // A grid corner as (vertex id, lattice shift).
    let corner = |a: usize, b: usize| -> (usize, (i64, i64)) {
        let (sa, sb) = ((a / cols) as i64, (b / rows) as i64);
        ((a % cols) + (b % rows) * cols, (sa, sb))
    };
    let place = |(id, (sa, sb)): (usize, (i64, i64))| positions[id] + u * sa as f64 + v * sb as f64;

    let mut faces = Vec::new();
    let mut open: HashMap<(usize, usize, (i64, i64)), Corner> = HashMap::new();
    let mut gluing = Vec::new();
    let mut lengths = Vec::new();
    for b in 0..rows {
        for a in 0..cols {
            let c00 = corner(a, b);
            let c10 = corner(a + 1, b);
            let c11 = corner(a + 1, b + 1);
            let c01 = corner(a, b + 1);
            for tri in [[c00, c10, c11], [c00, c11, c01]] {
                let f = faces.len();
                let p = tri.map(place);
                if !(signed_area(p[0], p[1], p[2]) > 0.0) {
                    return Err(Error::InvalidMesh(format!("face {f} is not positively oriented")));
                }
                faces.push(tri.map(|(id, _)| id));
                for c in 0..3 {
                    let (from, s0) = tri[c];
                    let (to, s1) = tri[(c + 1) % 3];
                    let shift = (s1.0 - s0.0, s1.1 - s0.1);
                    if let Some(other) = open.remove(&(to, from, (-shift.0, -shift.1))) {
                        gluing.push((other, (f, c)));
                        lengths.push(p[c].distance(p[(c + 1) % 3]));
                    } else {
                        open.insert((from, to, shift), (f, c));
                    }
                }
            }
        }
    }
    if !open.is_empty() {
        return Err(Error::InvalidMesh("grid too small to close up".into()));
    }
    let mesh = DeltaTriangulation::from_faces(Geometry::Flat, &faces, &gluing, lengths)?;
    Ok(PeriodicTorus {
        lattice,
        positions,
        mesh,
    })
}

/// Random lattice torus with at most `max_vertices` points; the lattice has
/// unit area and moderate shape distortion.
pub fn random_torus<R: Rng>(rng: &mut R, max_vertices: usize) -> PeriodicTorus {
    loop {
        let cols = rng.gen_range(1..=max_vertices.min(6));
        let rows = rng.gen_range(1..=(max_vertices / cols).max(1));
        let shear = rng.gen_range(-0.5..0.5);
        let aspect: f64 = rng.gen_range(0.6..1.6);
        let u = Point2::new(aspect, 0.0);
        let v = Point2::new(shear * aspect, 1.0 / aspect);
        let cell = (aspect / cols as f64).min(1.0 / (aspect * rows as f64));
        let jitter = 0.2 * cell;
        let offsets: Vec<Point2> = (0..cols * rows)
            .map(|_| Point2::new(rng.gen_range(-jitter..jitter), rng.gen_range(-jitter..jitter)))
            .collect();
        if let Ok(t) = lattice_torus(cols, rows, [u, v], &offsets) {
            return t;
        }
    }
}

/// One-vertex unit square torus.
pub fn square_torus() -> DeltaTriangulation {
    lattice_torus(1, 1, [Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)], &[Point2::ORIGIN])
        .expect("valid grid")
        .mesh
}

/// One-vertex torus on the lattice `(1, 0), (2.3, 0.8)`, triangulated by the
/// given (far from Delaunay) basis.
pub fn skewed_torus() -> DeltaTriangulation {
    lattice_torus(1, 1, [Point2::new(1.0, 0.0), Point2::new(2.3, 0.8)], &[Point2::ORIGIN])
        .expect("valid grid")
        .mesh
}

/// Unit-area torus carrying a square grid of points, three per fundamental
/// domain: the lattice is spanned by `(3s, 0)` and `(s, s)` with `s` the grid
/// spacing. Every grid square has corners `v, v+1, v, v-1` (mod 3), so it is
/// cocircular and the weights decide its diagonal.
pub fn three_vertex_torus() -> PeriodicTorus {
    let s = 1.0 / 3f64.sqrt();
    lattice_torus(
        3,
        1,
        [Point2::new(3.0 * s, 0.0), Point2::new(s, s)],
        &[Point2::ORIGIN; 3],
    )
    .expect("valid grid")
}

/// The three-vertex torus combinatorics with hyperbolic faces, lengths
/// multiplied by `scale`.
pub fn three_vertex_hyperbolic(scale: f64) -> DeltaTriangulation {
    three_vertex_torus()
        .mesh
        .scaled(scale)
        .and_then(|m| m.with_geometry(Geometry::Hyperbolic))
        .expect("flat triangles are hyperbolic triangles")
}

/// Sphere from two isosceles triangles `(0, 1, 1)` and `(2, 1, 1)` sharing
/// their bases; each triangle's two legs are glued to each other, so edges
/// 0 and 1 are self-glued. Edge 2 is the common base.
pub fn double_cone(geometry: Geometry, leg0: f64, leg1: f64, base: f64) -> Result<DeltaTriangulation> {
    let faces = [[0, 1, 1], [2, 1, 1]];
    let gluing = [((0, 0), (0, 2)), ((1, 0), (1, 2)), ((0, 1), (1, 1))];
    DeltaTriangulation::from_faces(geometry, &faces, &gluing, vec![leg0, leg1, base])
}

/// Genus-2 surface from the regular hyperbolic octagon with angles `π/4`,
/// sides glued as `a b a⁻¹ b⁻¹ c d c⁻¹ d⁻¹`, fan-triangulated from one
/// corner. All corners become a single vertex of angle `2π`.
pub fn genus_two_octagon() -> DeltaTriangulation {
    let t = (PI / 8.0).tan();
    let cosh_r = 1.0 / (t * t);
    let sinh_sq = cosh_r * cosh_r - 1.0;
    let chord = |steps: usize| {
        let theta = 2.0 * PI * steps as f64 / 8.0;
        (cosh_r * cosh_r - sinh_sq * theta.cos()).acosh()
    };
    // Fan triangle t = (0, t+1, t+2) for t in 0..6.
    let faces = [[0, 0, 0]; 6];
    // Octagon side m as a corner: side 0 is (0, 0), side 7 is (5, 2),
    // side m in 1..=6 is (m - 1, 1).
    let side = |m: usize| -> Corner {
        match m {
            0 => (0, 0),
            7 => (5, 2),
            m => (m - 1, 1),
        }
    };
    let mut gluing = Vec::new();
    let mut lengths = Vec::new();
    for m in [0, 1, 4, 5] {
        gluing.push((side(m), side(m + 2)));
        lengths.push(chord(1));
    }
    for t in 0..5 {
        gluing.push(((t, 2), (t + 1, 0)));
        lengths.push(chord(t + 2));
    }
    DeltaTriangulation::from_faces(Geometry::Hyperbolic, &faces, &gluing, lengths).expect("octagon data")
}

/// Regular tetrahedron boundary with the given edge length.
pub fn tetrahedron(geometry: Geometry, length: f64) -> DeltaTriangulation {
    let faces = [[0, 1, 2], [0, 3, 1], [1, 3, 2], [2, 3, 0]];
    let gluing = [
        ((0, 0), (1, 2)),
        ((0, 1), (2, 2)),
        ((0, 2), (3, 2)),
        ((1, 0), (3, 1)),
        ((1, 1), (2, 0)),
        ((2, 1), (3, 0)),
    ];
    DeltaTriangulation::from_faces(geometry, &faces, &gluing, vec![length; 6]).expect("tetrahedron")
}

/// Pair of pants: two hexagons glued along three seams.
pub fn pants(seams: [f64; 3]) -> Result<TruncatedTriangulation> {
    let faces = [[0, 1, 2], [0, 2, 1]];
    let gluing = [((0, 0), (1, 2)), ((0, 1), (1, 1)), ((0, 2), (1, 0))];
    TruncatedTriangulation::from_faces(&faces, &gluing, seams.to_vec())
}

/// Torus with one boundary geodesic: two hexagons, three seams from the
/// boundary to itself.
pub fn one_holed_torus(seams: [f64; 3]) -> Result<TruncatedTriangulation> {
    let faces = [[0, 0, 0], [0, 0, 0]];
    let gluing = [((0, 0), (1, 1)), ((0, 1), (1, 2)), ((0, 2), (1, 0))];
    TruncatedTriangulation::from_faces(&faces, &gluing, seams.to_vec())
}

/// Sphere with four boundary geodesics, on tetrahedron combinatorics.
pub fn four_holed_sphere(seams: [f64; 6]) -> Result<TruncatedTriangulation> {
    let t = tetrahedron(Geometry::Flat, 1.0);
    TruncatedTriangulation::new(t.connectivity().clone(), seams.to_vec())
}
