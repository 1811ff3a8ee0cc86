pub mod boundary;
pub mod delaunay;
pub mod error;
pub mod finiteness;
pub mod euclid;
pub mod hyperbolic;
pub mod instances;
pub mod mesh;
pub mod tolerance;

pub use error::{Error, Result};
pub use tolerance::Tolerance;
