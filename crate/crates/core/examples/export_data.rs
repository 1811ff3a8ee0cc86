//! Writes the example surfaces shipped in `data/`.
//!
//! Usage: `cargo run -p wvd-core --example export_data -- <dir>`

use std::path::PathBuf;

use wvd_core::instances;
use wvd_core::mesh::io::{to_canonical_json, SurfaceFile};
use wvd_core::mesh::WeightVector;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "data".into()));
    std::fs::create_dir_all(&dir)?;
    let write = |name: &str, file: SurfaceFile| std::fs::write(dir.join(name), to_canonical_json(&file));

    let square = instances::square_torus();
    write("square_torus.json", SurfaceFile::from_mesh(&square, Some(&WeightVector::uniform(1, 1.0))))?;
    write("square_torus_zero.json", SurfaceFile::from_mesh(&square, Some(&WeightVector::uniform(1, 0.0))))?;
    write("skewed_torus.json", SurfaceFile::from_mesh(&instances::skewed_torus(), None))?;

    let three = instances::three_vertex_torus().mesh;
    write("three_vertex_torus.json", SurfaceFile::from_mesh(&three, None))?;
    let oversized = WeightVector(vec![1.0, 0.01, 0.01]);
    write("oversized_weights.json", SurfaceFile::from_mesh(&three, Some(&oversized)))?;
    write(
        "three_vertex_hyperbolic.json",
        SurfaceFile::from_mesh(&instances::three_vertex_hyperbolic(1.0), None),
    )?;

    let pants = instances::pants([1.0, 1.0, 1.0])?;
    write("pants.json", pants.to_file(Some(&WeightVector::uniform(3, 0.2))))?;
    let torus = instances::one_holed_torus([1.0, 1.2, 1.4])?;
    write("one_holed_torus.json", torus.to_file(Some(&WeightVector::uniform(1, 0.2))))?;
    Ok(())
}
