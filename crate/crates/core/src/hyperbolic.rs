//! Hyperbolic plane in the hyperboloid model.
//!
//! Points live on the upper sheet of `x^2 + y^2 - z^2 = -1`. A geodesic is
//! the intersection of the sheet with a plane through the origin and is
//! stored by its spacelike unit normal `n`; the positive side of a geodesic
//! is `{q : <q, n> > 0}`. For the geodesic through `p` then `q` the normal
//! is `p ⊠ q` (Minkowski cross product), so the positive side is on the
//! left when walking from `p` to `q`. Every signed distance in the crate
//! follows this convention.
//!
//! Both kinds of weighted bisectors used by the crate are linear in this
//! model: the cosh-ratio locus of two weighted points and the sinh-level
//! locus of two weighted geodesics are planes through the origin.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::euclid::Point2;
use crate::tolerance::Tolerance;

/// A vector of Minkowski space `R^{2,1}`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct MinkVec {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl MinkVec {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Bilinear form `x x' + y y' - z z'`.
    pub fn mdot(self, o: MinkVec) -> f64 {
        self.x * o.x + self.y * o.y - self.z * o.z
    }

    /// Minkowski cross product: orthogonal (for `mdot`) to both factors.
    pub fn mcross(self, o: MinkVec) -> MinkVec {
        MinkVec::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            -(self.x * o.y - self.y * o.x),
        )
    }

    pub fn euclid_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn det(a: MinkVec, b: MinkVec, c: MinkVec) -> f64 {
        a.x * (b.y * c.z - b.z * c.y) - a.y * (b.x * c.z - b.z * c.x) + a.z * (b.x * c.y - b.y * c.x)
    }
}

impl Add for MinkVec {
    type Output = MinkVec;
    fn add(self, o: MinkVec) -> MinkVec {
        MinkVec::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for MinkVec {
    type Output = MinkVec;
    fn sub(self, o: MinkVec) -> MinkVec {
        MinkVec::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for MinkVec {
    type Output = MinkVec;
    fn mul(self, s: f64) -> MinkVec {
        MinkVec::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for MinkVec {
    type Output = MinkVec;
    fn neg(self) -> MinkVec {
        MinkVec::new(-self.x, -self.y, -self.z)
    }
}

/// A point of the hyperbolic plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HPoint(MinkVec);

impl HPoint {
    pub const ORIGIN: HPoint = HPoint(MinkVec::new(0.0, 0.0, 1.0));

    /// Rescales a timelike vector onto the upper sheet.
    pub fn from_timelike(v: MinkVec) -> Option<HPoint> {
        let q = v.mdot(v);
        if !(q < 0.0) || !q.is_finite() {
            return None;
        }
        let s = (-q).sqrt();
        let s = if v.z < 0.0 { -s } else { s };
        Some(HPoint(v * (1.0 / s)))
    }

    /// Point at distance `r` from the origin in direction `angle`.
    pub fn from_polar(r: f64, angle: f64) -> HPoint {
        let (s, c) = angle.sin_cos();
        HPoint(MinkVec::new(r.sinh() * c, r.sinh() * s, r.cosh()))
    }

    pub fn coords(self) -> MinkVec {
        self.0
    }

    pub fn x(self) -> f64 {
        self.0.x
    }

    pub fn y(self) -> f64 {
        self.0.y
    }

    pub fn z(self) -> f64 {
        self.0.z
    }

    /// Residual of the hyperboloid constraint.
    pub fn constraint_residual(self) -> f64 {
        (self.0.mdot(self.0) + 1.0).abs()
    }

    pub fn to_poincare(self) -> Point2 {
        Point2::new(self.0.x / (1.0 + self.0.z), self.0.y / (1.0 + self.0.z))
    }

    pub fn from_poincare(p: Point2) -> Option<HPoint> {
        let r2 = p.norm_sq();
        if !(r2 < 1.0) {
            return None;
        }
        let k = 1.0 / (1.0 - r2);
        Some(HPoint(MinkVec::new(2.0 * p.x * k, 2.0 * p.y * k, (1.0 + r2) * k)))
    }

    /// Coordinates in the Klein (projective) disk.
    pub fn to_klein(self) -> Point2 {
        Point2::new(self.0.x / self.0.z, self.0.y / self.0.z)
    }
}

/// A geodesic, stored by its spacelike unit normal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HGeodesic {
    n: MinkVec,
}

impl HGeodesic {
    pub fn from_normal(v: MinkVec) -> Option<HGeodesic> {
        let q = v.mdot(v);
        if !(q > 0.0) || !q.is_finite() {
            return None;
        }
        Some(HGeodesic {
            n: v * (1.0 / q.sqrt()),
        })
    }

    /// Geodesic through `p` and `q`, positive side on the left of `p -> q`.
    pub fn through(p: HPoint, q: HPoint) -> Option<HGeodesic> {
        Self::from_normal(p.0.mcross(q.0))
    }

    pub fn normal(&self) -> MinkVec {
        self.n
    }

    pub fn reversed(&self) -> HGeodesic {
        HGeodesic { n: -self.n }
    }

    pub fn contains(&self, q: HPoint, tol: f64) -> bool {
        q.0.mdot(self.n).abs() <= tol
    }

    /// The point of the geodesic closest to the origin.
    pub fn point(&self) -> HPoint {
        let e = HPoint::ORIGIN.0;
        // e - <e,n> n is orthogonal to n and timelike.
        HPoint::from_timelike(e - self.n * e.mdot(self.n)).expect("projection of a timelike vector")
    }

    /// Orthogonal projection of `q` onto the geodesic.
    pub fn foot(&self, q: HPoint) -> HPoint {
        HPoint::from_timelike(q.0 - self.n * q.0.mdot(self.n)).expect("projection of a timelike vector")
    }

    /// Unit tangent at `p` (assumed on the geodesic), pointing so that the
    /// positive side is on its left.
    pub fn tangent_at(&self, p: HPoint) -> MinkVec {
        // left normal of (p, t) is p ⊠ t = n  =>  t = n ⊠ p
        let t = self.n.mcross(p.0);
        t * (1.0 / t.mdot(t).sqrt())
    }
}

/// A point with a unit tangent, used to lay out polygons by walking.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub point: HPoint,
    pub tangent: MinkVec,
}

impl Frame {
    pub fn new(point: HPoint, tangent: MinkVec) -> Self {
        Self { point, tangent }
    }

    /// Moves `distance` along the geodesic in the tangent direction.
    pub fn walk(self, distance: f64) -> Frame {
        let (s, c) = (distance.sinh(), distance.cosh());
        let p = self.point.0 * c + self.tangent * s;
        let t = self.point.0 * s + self.tangent * c;
        let point = HPoint::from_timelike(p).expect("walk stays on the sheet");
        let t = t + point.0 * t.mdot(point.0);
        Frame {
            point,
            tangent: t * (1.0 / t.mdot(t).sqrt()),
        }
    }

    /// Unit normal on the left of the direction of travel.
    pub fn left(&self) -> MinkVec {
        self.point.0.mcross(self.tangent)
    }

    /// Rotates the tangent counter-clockwise by `angle`.
    pub fn turn(self, angle: f64) -> Frame {
        let (s, c) = angle.sin_cos();
        Frame {
            point: self.point,
            tangent: self.tangent * c + self.left() * s,
        }
    }

    pub fn turn_left(self) -> Frame {
        Frame {
            point: self.point,
            tangent: self.left(),
        }
    }

    pub fn reversed(self) -> Frame {
        Frame {
            point: self.point,
            tangent: -self.tangent,
        }
    }

    /// Geodesic through the frame, positive on the left.
    pub fn geodesic(&self) -> HGeodesic {
        HGeodesic::from_normal(self.left()).expect("left normal is spacelike")
    }
}

/// `acosh` with roundoff clamping near 1; larger violations are errors.
pub fn acosh_checked(x: f64, tol: &Tolerance) -> Result<f64> {
    if x >= 1.0 {
        Ok(x.acosh())
    } else if x > 1.0 - tol.clamp {
        Ok(0.0)
    } else {
        Err(Error::OutOfDomain {
            function: "acosh",
            value: x,
        })
    }
}

/// Hyperbolic distance. Computed from the Minkowski chord for accuracy at
/// short range; equals `acosh(-<p,q>)`.
pub fn h_distance(p: HPoint, q: HPoint) -> f64 {
    let d = p.0 - q.0;
    let chord_sq = d.mdot(d).max(0.0);
    2.0 * (0.5 * chord_sq.sqrt()).asinh()
}

/// Signed distance from `q` to `g`; positive on the side `g`'s normal points to.
pub fn signed_dist_to_geodesic(q: HPoint, g: &HGeodesic) -> f64 {
    q.0.mdot(g.n).asinh()
}

fn bisector_normal_cosh(p1: HPoint, r1: f64, p2: HPoint, r2: f64, tol: &Tolerance) -> Result<HGeodesic> {
    let a = p1.0 * (1.0 / r1.cosh());
    let b = p2.0 * (1.0 / r2.cosh());
    let m = b - a;
    let scale = a.euclid_norm() + b.euclid_norm();
    if !(m.mdot(m) > tol.eps * scale * scale) {
        return Err(Error::DegenerateBisector);
    }
    Ok(HGeodesic::from_normal(m).ok_or(Error::DegenerateBisector)?)
}

/// Locus `cosh d(q,p1) / cosh r1 = cosh d(q,p2) / cosh r2`.
///
/// The locus is a geodesic orthogonal to the segment `p1 p2`; its positive
/// side is where the ratio for `p2` is the larger one, which contains `p2`.
pub fn cosh_bisector(p1: HPoint, r1: f64, p2: HPoint, r2: f64, tol: &Tolerance) -> Result<HGeodesic> {
    let d = h_distance(p1, p2);
    if !(d > tol.eps * p1.0.euclid_norm().max(p2.0.euclid_norm())) {
        return Err(Error::DegenerateBisector);
    }
    if !(r1 > 0.0 && r2 > 0.0 && r1 < d && r2 < d) {
        return Err(Error::InvalidRadii { r1, r2, distance: d });
    }
    bisector_normal_cosh(p1, r1, p2, r2, tol)
}

/// Returns the two normals, each re-oriented so that the other geodesic lies
/// on its positive side.
fn facing_normals(g1: &HGeodesic, g2: &HGeodesic, tol: &Tolerance) -> Result<(MinkVec, MinkVec)> {
    let c = g1.n.mdot(g2.n);
    if !(c.abs() > 1.0 + tol.eps) {
        return Err(Error::GeodesicsIntersect);
    }
    let n1 = if g2.point().0.mdot(g1.n) > 0.0 { g1.n } else { -g1.n };
    let n2 = if g1.point().0.mdot(g2.n) > 0.0 { g2.n } else { -g2.n };
    Ok((n1, n2))
}

/// Branch between `g1` and `g2` of `r1 sinh d(q,g1) = r2 sinh d(q,g2)`.
///
/// The result is orthogonal to the common perpendicular of `g1` and `g2`;
/// its positive side contains `g2`.
pub fn sinh_bisector(g1: &HGeodesic, r1: f64, g2: &HGeodesic, r2: f64, tol: &Tolerance) -> Result<HGeodesic> {
    if !(r1 > 0.0 && r2 > 0.0) {
        return Err(Error::NonpositiveWeight {
            index: if r1 > 0.0 { 1 } else { 0 },
            value: if r1 > 0.0 { r2 } else { r1 },
        });
    }
    let (n1, n2) = facing_normals(g1, g2, tol)?;
    HGeodesic::from_normal(n1 * r1 - n2 * r2).ok_or(Error::DegenerateBisector)
}

/// Common perpendicular of two ultraparallel geodesics: its feet on `g1`
/// and `g2`, and its length.
pub fn common_perpendicular(g1: &HGeodesic, g2: &HGeodesic, tol: &Tolerance) -> Result<(HPoint, HPoint, f64)> {
    let (n1, n2) = facing_normals(g1, g2, tol)?;
    let axis = n1.mcross(n2);
    // The perpendicular is the plane spanned by n1 and n2; its normal is `axis`.
    let perp = HGeodesic::from_normal(axis).ok_or(Error::GeodesicsIntersect)?;
    let f1 = HPoint::from_timelike(perp.n.mcross(n1)).ok_or(Error::GeodesicsIntersect)?;
    let f2 = HPoint::from_timelike(perp.n.mcross(n2)).ok_or(Error::GeodesicsIntersect)?;
    Ok((f1, f2, (-n1.mdot(n2)).acosh()))
}

/// Point with equal cosh-ratio to three weighted points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerCenterH {
    pub center: HPoint,
    /// Common value of `cosh d(center, p_a) / cosh r_a`.
    pub ratio: f64,
}

impl PowerCenterH {
    /// Radius of the orthogonal circle, `acosh(ratio)`, when `ratio >= 1`.
    pub fn dual_radius(&self) -> Option<f64> {
        (self.ratio >= 1.0).then(|| self.ratio.acosh())
    }
}

/// Intersection of the cosh-ratio bisectors of `p0 p1` and `p1 p2`.
///
/// Only the spacelike condition `d(p_a, p_b) > |r_a - r_b|` is needed for
/// each bisector to be a geodesic; the stricter radius hypothesis of
/// [`cosh_bisector`] is not imposed here.
pub fn hyp_power_center(p: [HPoint; 3], r: [f64; 3], tol: &Tolerance) -> Result<PowerCenterH> {
    let det = MinkVec::det(p[0].0, p[1].0, p[2].0);
    let scale = p[0].0.euclid_norm() * p[1].0.euclid_norm() * p[2].0.euclid_norm();
    let diam = h_distance(p[0], p[1])
        .max(h_distance(p[1], p[2]))
        .max(h_distance(p[2], p[0]));
    if !(det.abs() > tol.eps * scale * diam.min(1.0).powi(2)) {
        return Err(Error::DegenerateTriangle);
    }
    let b01 = bisector_normal_cosh(p[0], r[0], p[1], r[1], tol)?;
    let b12 = bisector_normal_cosh(p[1], r[1], p[2], r[2], tol)?;
    let c = b01.n.mcross(b12.n);
    let cc = c.mdot(c);
    let cn = c.euclid_norm();
    if !(cc < -tol.eps * cn * cn) {
        return Err(Error::NoIntersection);
    }
    let center = HPoint::from_timelike(c).ok_or(Error::NoIntersection)?;
    let ratio = -center.0.mdot(p[0].0) / r[0].cosh();
    Ok(PowerCenterH { center, ratio })
}

/// Point with equal level `r_a sinh d(., g_a)` for three boundary geodesics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundaryDualPoint {
    pub center: HPoint,
    pub level: f64,
}

/// Orients each normal so that the other two geodesics are on its positive
/// side. Fails if one of the geodesics separates the other two.
pub fn inward_normals(g: &[HGeodesic; 3], tol: &Tolerance) -> Result<[MinkVec; 3]> {
    let mut out = [MinkVec::default(); 3];
    for a in 0..3 {
        let (b, c) = ((a + 1) % 3, (a + 2) % 3);
        let (na, _) = facing_normals(&g[a], &g[b], tol)?;
        let (nc, _) = facing_normals(&g[a], &g[c], tol)?;
        if na.mdot(nc) < 0.0 {
            return Err(Error::GeodesicsIntersect);
        }
        out[a] = na;
    }
    Ok(out)
}

/// Intersection of the sinh-level bisectors of `(g0, g1)` and `(g1, g2)`.
pub fn boundary_dual_point(g: &[HGeodesic; 3], r: [f64; 3], tol: &Tolerance) -> Result<BoundaryDualPoint> {
    for (index, &value) in r.iter().enumerate() {
        if !(value > 0.0) {
            return Err(Error::NonpositiveWeight { index, value });
        }
    }
    let n = inward_normals(g, tol)?;
    let m01 = n[0] * r[0] - n[1] * r[1];
    let m12 = n[1] * r[1] - n[2] * r[2];
    let c = m01.mcross(m12);
    let cc = c.mdot(c);
    let cn = c.euclid_norm();
    if !(cc < -tol.eps * cn * cn) {
        return Err(Error::NoIntersection);
    }
    let center = HPoint::from_timelike(c).ok_or(Error::NoIntersection)?;
    let level = r[0] * center.0.mdot(n[0]);
    if !(level > 0.0) {
        return Err(Error::NoIntersection);
    }
    Ok(BoundaryDualPoint { center, level })
}

/// Quadrilateral `ABCD` with right angles at `A`, `B`, `C`: from the two
/// sides `AD > BC` returns `(AB, CD)` with `cosh AB = tanh AD / tanh BC`
/// and `cosh CD = sinh AD / sinh BC`.
pub fn trirectangle_solve(ad: f64, bc: f64) -> Result<(f64, f64)> {
    if !(bc > 0.0 && ad > bc && ad.is_finite()) {
        return Err(Error::InvalidSides { ad, bc });
    }
    let ab = (ad.tanh() / bc.tanh()).max(1.0).acosh();
    let cd = (ad.sinh() / bc.sinh()).max(1.0).acosh();
    Ok((ab, cd))
}

/// Right-angled hexagon with alternate sides `a, b, c`: returns the sides
/// `(a', b', c')` opposite to them, from
/// `cosh a' = (cosh a + cosh b cosh c) / (sinh b sinh c)` and cyclically.
pub fn hexagon_solve(a: f64, b: f64, c: f64) -> Result<(f64, f64, f64)> {
    let invalid = Error::InvalidHexagon { a, b, c };
    if !(a > 0.0 && b > 0.0 && c > 0.0) || !(a.is_finite() && b.is_finite() && c.is_finite()) {
        return Err(invalid);
    }
    let opposite = |x: f64, y: f64, z: f64| -> Option<f64> {
        let ch = (x.cosh() + y.cosh() * z.cosh()) / (y.sinh() * z.sinh());
        (ch > 1.0 && ch.is_finite()).then(|| ch.acosh())
    };
    match (opposite(a, b, c), opposite(b, c, a), opposite(c, a, b)) {
        (Some(x), Some(y), Some(z)) => Ok((x, y, z)),
        _ => Err(invalid),
    }
}
