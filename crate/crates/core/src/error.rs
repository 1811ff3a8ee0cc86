use thiserror::Error;

/// Errors produced anywhere in the geometry stack.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate triangle: the three points are collinear")]
    DegenerateTriangle,
    #[error("coincident points")]
    CoincidentPoints,
    #[error("degenerate edge: endpoints coincide or the opposite point lies on the edge line")]
    DegenerateEdge,
    #[error("weight {value} at index {index} is not positive")]
    NonpositiveWeight { index: usize, value: f64 },

    #[error("degenerate bisector: the defining vector is not spacelike")]
    DegenerateBisector,
    #[error("radii ({r1}, {r2}) must lie in (0, {distance})")]
    InvalidRadii { r1: f64, r2: f64, distance: f64 },
    #[error("geodesics intersect or are asymptotic")]
    GeodesicsIntersect,
    #[error("bisectors do not meet inside the hyperbolic plane")]
    NoIntersection,
    #[error("trirectangle sides require AD > BC > 0 (got AD = {ad}, BC = {bc})")]
    InvalidSides { ad: f64, bc: f64 },
    #[error("no right-angled hexagon with sides ({a}, {b}, {c})")]
    InvalidHexagon { a: f64, b: f64, c: f64 },
    #[error("value {value} outside the domain of {function}")]
    OutOfDomain { function: &'static str, value: f64 },

    #[error("face {face} violates the triangle inequality")]
    InfeasibleFace { face: usize },
    #[error("edge {edge} does not exist")]
    InvalidEdge { edge: usize },
    #[error("edge {edge} is glued to itself inside one face and cannot be flipped")]
    SelfGluedFlip { edge: usize },
    #[error("hinge of edge {edge} is not convex; flipping would not produce an embedded hinge")]
    NonConvexHinge { edge: usize },
    #[error("invalid mesh: {0}")]
    InvalidMesh(String),
    #[error("weight vector has {got} entries, mesh has {expected} vertices")]
    WeightCount { expected: usize, got: usize },

    #[error("power center of face {face} does not exist as an interior point")]
    PowerCenterInfeasible { face: usize },
    #[error("flip limit {cap} exceeded ({violations} violated edges remain)")]
    FlipLimitExceeded { cap: usize, violations: usize },
    #[error("switch limit {cap} exceeded ({violations} violated seams remain)")]
    SwitchLimitExceeded { cap: usize, violations: usize },
    #[error("triangulation is not weighted Delaunay ({violations} violated edges)")]
    NotCertified { violations: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
