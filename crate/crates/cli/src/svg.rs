//! SVG drawings of small flat surfaces, laid out by unfolding faces
//! breadth-first from face 0.

use std::collections::VecDeque;
use std::fmt::Write;

use wvd_core::euclid::{power_center, Point2, WeightedPoint};
use wvd_core::mesh::{DeltaTriangulation, FacePoints, Geometry, WeightVector};
use wvd_core::{Error, Result, Tolerance};

const WIDTH: f64 = 640.0;
const MARGIN: f64 = 20.0;

/// Vertex positions of every face in one planar chart, indexed by halfedge
/// (the position of the halfedge's origin).
struct Layout {
    positions: Vec<Point2>,
}

/// Corners of face `g` placed so that its halfedge `t` runs from `from` to `to`.
fn place(mesh: &DeltaTriangulation, t: usize, from: Point2, to: Point2) -> Result<[(usize, Point2); 3]> {
    let conn = mesh.connectivity();
    let chart = mesh.face_chart(conn.face(t), Some(t))?;
    let FacePoints::Flat(q) = chart.points else {
        return Err(Error::InvalidMesh("only flat surfaces can be drawn".into()));
    };
    let d = to - from;
    let dir = d * (1.0 / d.norm());
    let map = |p: Point2| from + dir * p.x + dir.perp() * p.y;
    Ok([0, 1, 2].map(|c| (chart.halfedges[c], map(q[c]))))
}

fn unfold(mesh: &DeltaTriangulation) -> Result<Layout> {
    if mesh.geometry() != Geometry::Flat {
        return Err(Error::InvalidMesh("only flat surfaces can be drawn".into()));
    }
    let conn = mesh.connectivity();
    let mut positions = vec![Point2::ORIGIN; conn.num_halfedges()];
    let mut placed = vec![false; mesh.num_faces()];
    let mut queue = VecDeque::from([0]);
    placed[0] = true;
    let h0 = conn.face_halfedges(0)[0];
    let root = place(mesh, h0, Point2::ORIGIN, Point2::new(mesh.halfedge_length(h0), 0.0))?;
    for (h, p) in root {
        positions[h] = p;
    }
    while let Some(f) = queue.pop_front() {
        for h in conn.face_halfedges(f) {
            let t = conn.twin(h);
            let g = conn.face(t);
            if placed[g] {
                continue;
            }
            for (k, p) in place(mesh, t, positions[conn.next(h)], positions[h])? {
                positions[k] = p;
            }
            placed[g] = true;
            queue.push_back(g);
        }
    }
    Ok(Layout { positions })
}

fn face_center(
    mesh: &DeltaTriangulation,
    weights: &WeightVector,
    corners: [(usize, Point2); 3],
    tol: &Tolerance,
) -> Result<Point2> {
    let conn = mesh.connectivity();
    let [a, b, c] = corners.map(|(h, p)| WeightedPoint {
        position: p,
        weight: weights[conn.origin(h)],
    });
    Ok(power_center(a, b, c, tol)?.center)
}

struct Canvas {
    min: Point2,
    scale: f64,
    height: f64,
    body: String,
}

impl Canvas {
    fn new(points: &[Point2]) -> Self {
        let (mut lo, mut hi) = (points[0], points[0]);
        for p in points {
            lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-12);
        let scale = (WIDTH - 2.0 * MARGIN) / span;
        Self {
            min: lo,
            scale,
            height: (hi.y - lo.y) * scale + 2.0 * MARGIN,
            body: String::new(),
        }
    }

    fn map(&self, p: Point2) -> (f64, f64) {
        (
            MARGIN + (p.x - self.min.x) * self.scale,
            self.height - MARGIN - (p.y - self.min.y) * self.scale,
        )
    }

    fn line(&mut self, a: Point2, b: Point2, class: &str) {
        let ((x0, y0), (x1, y1)) = (self.map(a), self.map(b));
        let _ = writeln!(
            self.body,
            r#"  <line class="{class}" x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y1:.3}"/>"#
        );
    }

    fn circle(&mut self, c: Point2, r: f64, class: &str) {
        let (x, y) = self.map(c);
        let r = r * self.scale;
        let _ = writeln!(self.body, r#"  <circle class="{class}" cx="{x:.3}" cy="{y:.3}" r="{r:.3}"/>"#);
    }

    fn finish(self) -> String {
        format!(
            concat!(
                r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.0}" height="{h:.0}" viewBox="0 0 {w:.0} {h:.0}">"#,
                "\n  <style>.edge{{stroke:#999;stroke-width:1}} .dual{{stroke:#c0392b;stroke-width:2}} ",
                ".disk{{fill:#2e86c1;fill-opacity:0.15;stroke:#2e86c1}} .site{{fill:#000}}</style>\n",
                "{body}</svg>\n"
            ),
            w = WIDTH,
            h = self.height,
            body = self.body
        )
    }
}

/// Triangulation in its unfolded chart with a disk of radius `sqrt(w)` at
/// every vertex; with `dual` also the power-diagram edges, each drawn from
/// the dual point of a face to that of its neighbor unfolded across the
/// shared edge.
pub fn render(mesh: &DeltaTriangulation, weights: &WeightVector, dual: bool, tol: &Tolerance) -> Result<String> {
    let layout = unfold(mesh)?;
    let conn = mesh.connectivity();
    let mut segments = Vec::new();
    for f in 0..mesh.num_faces() {
        let [h0, h1, h2] = conn.face_halfedges(f);
        for (a, b) in [(h0, h1), (h1, h2), (h2, h0)] {
            segments.push((layout.positions[a], layout.positions[b]));
        }
    }
    let mut dual_segments = Vec::new();
    if dual {
        for f in 0..mesh.num_faces() {
            let hs = conn.face_halfedges(f);
            let own = face_center(mesh, weights, hs.map(|h| (h, layout.positions[h])), tol)?;
            for h in hs {
                let across = place(mesh, conn.twin(h), layout.positions[conn.next(h)], layout.positions[h])?;
                dual_segments.push((own, face_center(mesh, weights, across, tol)?));
            }
        }
    }
    let mut points: Vec<Point2> = layout.positions.clone();
    points.extend(dual_segments.iter().flat_map(|&(a, b)| [a, b]));
    let mut canvas = Canvas::new(&points);
    for &(a, b) in &segments {
        canvas.line(a, b, "edge");
    }
    for h in 0..conn.num_halfedges() {
        let w = weights[conn.origin(h)];
        if w > 0.0 {
            canvas.circle(layout.positions[h], w.sqrt(), "disk");
        }
        canvas.circle(layout.positions[h], 2.0 / canvas.scale, "site");
    }
    for &(a, b) in &dual_segments {
        canvas.line(a, b, "dual");
    }
    Ok(canvas.finish())
}
