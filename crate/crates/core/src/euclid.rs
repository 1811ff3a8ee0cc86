//! Planar power geometry: power centers, radical lines and signed heights.
//!
//! The kernel accepts arbitrary real weights. Admissibility of weights is a
//! surface-level concern and is checked in [`crate::mesh`].

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn from_polar(radius: f64, angle: f64) -> Self {
        Self::new(radius * angle.cos(), radius * angle.sin())
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point2) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(self, other: Point2) -> f64 {
        (self - other).norm()
    }

    pub fn distance_sq(self, other: Point2) -> f64 {
        (self - other).norm_sq()
    }

    /// Counter-clockwise rotation by a right angle.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn rotate(self, angle: f64) -> Point2 {
        let (s, c) = angle.sin_cos();
        Point2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// A site with a weight in units of length squared.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightedPoint {
    pub position: Point2,
    pub weight: f64,
}

impl WeightedPoint {
    pub const fn new(position: Point2, weight: f64) -> Self {
        Self { position, weight }
    }

    /// Power distance `|q - p|^2 - w`.
    pub fn power(&self, q: Point2) -> f64 {
        q.distance_sq(self.position) - self.weight
    }
}

/// The point with equal power to three weighted sites, and that power.
///
/// `power` is the weight of the orthogonal circle: every defining site
/// satisfies `|center - p|^2 - power = w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerCenterE {
    pub center: Point2,
    pub power: f64,
}

impl PowerCenterE {
    /// Radius of the orthogonal circle, when the power is positive.
    pub fn orthogonal_radius(&self) -> Option<f64> {
        (self.power > 0.0).then(|| self.power.sqrt())
    }
}

/// Oriented line `{q : normal . q = offset}` with unit normal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Line2 {
    pub normal: Point2,
    pub offset: f64,
}

impl Line2 {
    /// Signed distance, positive on the side the normal points to.
    pub fn signed_distance(&self, q: Point2) -> f64 {
        self.normal.dot(q) - self.offset
    }

    /// Closest point on the line to the origin.
    pub fn anchor(&self) -> Point2 {
        self.normal * self.offset
    }

    pub fn direction(&self) -> Point2 {
        self.normal.perp()
    }
}

fn diameter3(a: Point2, b: Point2, c: Point2) -> f64 {
    a.distance(b).max(b.distance(c)).max(c.distance(a))
}

/// Center and power of the circle orthogonal to the three weighted circles.
///
/// Subtracting the defining equation of `a` from those of `b` and `c` leaves
/// a 2x2 linear system for the center.
pub fn power_center(
    a: WeightedPoint,
    b: WeightedPoint,
    c: WeightedPoint,
    tol: &Tolerance,
) -> Result<PowerCenterE> {
    let (pa, pb, pc) = (a.position, b.position, c.position);
    let u = pb - pa;
    let v = pc - pa;
    let det = u.cross(v);
    let scale = diameter3(pa, pb, pc);
    if !(det.abs() > tol.eps * scale * scale) {
        return Err(Error::DegenerateTriangle);
    }
    // Work relative to `a` to keep the right-hand side small.
    let ru = 0.5 * (u.norm_sq() - b.weight + a.weight);
    let rv = 0.5 * (v.norm_sq() - c.weight + a.weight);
    let rel = Point2::new((ru * v.y - rv * u.y) / det, (u.x * rv - v.x * ru) / det);
    let center = pa + rel;
    let power = rel.norm_sq() - a.weight;
    Ok(PowerCenterE { center, power })
}

/// Locus of equal power with respect to `a` and `b`.
///
/// The normal points from `b` towards `a`; the signed distance is positive
/// exactly where the power with respect to `a` is the smaller one.
pub fn radical_line(a: WeightedPoint, b: WeightedPoint, tol: &Tolerance) -> Result<Line2> {
    let diff = a.position - b.position;
    let len = diff.norm();
    let scale = a.position.norm().max(b.position.norm()).max(1.0);
    if !(len > tol.eps * scale) {
        return Err(Error::CoincidentPoints);
    }
    let normal = diff * (1.0 / len);
    // power_b(q) - power_a(q) = 2 q.(a-b) + |b|^2 - |a|^2 - w_b + w_a
    let offset = (b.position.norm_sq() - a.position.norm_sq() - b.weight + a.weight) / (-2.0 * len);
    Ok(Line2 { normal, offset })
}

/// Signed distance from `center` to the line through `edge`, positive when
/// `center` and `opposite` lie on the same side.
pub fn signed_height(
    center: Point2,
    edge: (Point2, Point2),
    opposite: Point2,
    tol: &Tolerance,
) -> Result<f64> {
    let (p, q) = edge;
    let dir = q - p;
    let len = dir.norm();
    let scale = p.distance(opposite).max(q.distance(opposite)).max(len);
    if !(len > tol.eps * scale) {
        return Err(Error::DegenerateEdge);
    }
    let side = dir.cross(opposite - p);
    if !(side.abs() > tol.eps * scale * len) {
        return Err(Error::DegenerateEdge);
    }
    let h = dir.cross(center - p) / len;
    Ok(if side > 0.0 { h } else { -h })
}

/// `|a - b|^2 - w_a - w_b`; zero exactly when the two circles meet at right
/// angles, positive when they are farther apart.
pub fn circles_orthogonal(a: WeightedPoint, b: WeightedPoint) -> Result<f64> {
    for (index, w) in [a.weight, b.weight].into_iter().enumerate() {
        if !(w > 0.0) {
            return Err(Error::NonpositiveWeight { index, value: w });
        }
    }
    Ok(a.position.distance_sq(b.position) - a.weight - b.weight)
}

/// Area with sign: positive for counter-clockwise `a, b, c`.
pub fn signed_area(a: Point2, b: Point2, c: Point2) -> f64 {
    0.5 * (b - a).cross(c - a)
}
