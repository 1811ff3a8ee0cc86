//! Mesh files (JSON and OBJ) and byte-stable JSON output.

use std::collections::HashMap;
use std::io;

use serde::{Deserialize, Serialize};
use serde_json::ser::{Formatter, PrettyFormatter};

use super::{Connectivity, Corner, DeltaTriangulation, Geometry, WeightVector};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FileGeometry {
    Flat,
    Hyperbolic,
    Boundary,
}

/// On-disk surface. Closed surfaces carry `edge_lengths`; surfaces with
/// geodesic boundary carry `seam_lengths`. Edge `e` is `gluing[e]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SurfaceFile {
    pub geometry: FileGeometry,
    pub faces: Vec<[usize; 3]>,
    pub gluing: Vec<[[usize; 2]; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_lengths: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seam_lengths: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<WeightVector>,
}

impl SurfaceFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn corner_gluing(&self) -> Vec<(Corner, Corner)> {
        self.gluing
            .iter()
            .map(|[a, b]| ((a[0], a[1]), (b[0], b[1])))
            .collect()
    }

    pub fn connectivity(&self) -> Result<Connectivity> {
        Connectivity::from_faces(&self.faces, &self.corner_gluing())
    }

    /// The closed surface described by the file.
    pub fn to_mesh(&self) -> Result<DeltaTriangulation> {
        let geometry = match self.geometry {
            FileGeometry::Flat => Geometry::Flat,
            FileGeometry::Hyperbolic => Geometry::Hyperbolic,
            FileGeometry::Boundary => {
                return Err(Error::Parse("boundary surface where a closed mesh was expected".into()))
            }
        };
        let lengths = self
            .edge_lengths
            .clone()
            .ok_or_else(|| Error::Parse("missing field `edge_lengths`".into()))?;
        DeltaTriangulation::new(geometry, self.connectivity()?, lengths)
    }

    pub fn from_mesh(mesh: &DeltaTriangulation, weights: Option<&WeightVector>) -> Self {
        let (faces, gluing) = mesh.connectivity().to_faces();
        Self {
            geometry: match mesh.geometry() {
                Geometry::Flat => FileGeometry::Flat,
                Geometry::Hyperbolic => FileGeometry::Hyperbolic,
            },
            faces,
            gluing: encode_gluing(&gluing),
            edge_lengths: Some(mesh.lengths().to_vec()),
            seam_lengths: None,
            weights: weights.cloned(),
        }
    }
}

pub fn encode_gluing(gluing: &[(Corner, Corner)]) -> Vec<[[usize; 2]; 2]> {
    gluing
        .iter()
        .map(|&((fa, ca), (fb, cb))| [[fa, ca], [fb, cb]])
        .collect()
}

/// Reads a closed triangulated OBJ as a flat surface. Positions only feed
/// the edge lengths and are then dropped.
pub fn import_obj(text: &str) -> Result<DeltaTriangulation> {
    let mut positions: Vec<[f64; 3]> = Vec::new();
    let mut faces: Vec<[usize; 3]> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let mut tokens = line.split_whitespace();
        let bad = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
        match tokens.next() {
            Some("v") => {
                let mut p = [0.0; 3];
                for x in &mut p {
                    *x = tokens
                        .next()
                        .and_then(|t| t.parse().ok())
                        .ok_or_else(|| bad("bad vertex"))?;
                }
                positions.push(p);
            }
            Some("f") => {
                let ids = tokens
                    .map(|t| {
                        let head = t.split('/').next().unwrap_or("");
                        let i: i64 = head.parse().map_err(|_| bad("bad face index"))?;
                        let n = positions.len() as i64;
                        let idx = if i < 0 { n + i } else { i - 1 };
                        if idx < 0 || idx >= n {
                            return Err(bad("face index out of range"));
                        }
                        Ok(idx as usize)
                    })
                    .collect::<Result<Vec<_>>>()?;
                if ids.len() != 3 {
                    return Err(bad("only triangles are supported"));
                }
                faces.push([ids[0], ids[1], ids[2]]);
            }
            _ => {}
        }
    }
    // Drop unreferenced vertices so labels stay contiguous.
    let mut relabel = vec![usize::MAX; positions.len()];
    let mut used = Vec::new();
    for f in &mut faces {
        for v in f.iter_mut() {
            if relabel[*v] == usize::MAX {
                relabel[*v] = used.len();
                used.push(*v);
            }
            *v = relabel[*v];
        }
    }
    let pos: Vec<[f64; 3]> = used.iter().map(|&v| positions[v]).collect();

    let mut open: HashMap<(usize, usize), Corner> = HashMap::new();
    let mut gluing = Vec::new();
    let mut lengths = Vec::new();
    for (f, tri) in faces.iter().enumerate() {
        for c in 0..3 {
            let (a, b) = (tri[c], tri[(c + 1) % 3]);
            if let Some(other) = open.remove(&(b, a)) {
                gluing.push((other, (f, c)));
                let d: f64 = (0..3).map(|k| (pos[a][k] - pos[b][k]).powi(2)).sum();
                lengths.push(d.sqrt());
            } else if open.insert((a, b), (f, c)).is_some() {
                return Err(Error::InvalidMesh(format!(
                    "edge {a}-{b} is used twice with the same orientation"
                )));
            }
        }
    }
    if !open.is_empty() {
        return Err(Error::InvalidMesh(format!("{} unmatched halfedges", open.len())));
    }
    DeltaTriangulation::from_faces(Geometry::Flat, &faces, &gluing, lengths)
}

/// Pretty JSON with floats at 17 significant digits; identical values give
/// identical bytes.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedFloat(PrettyFormatter::new()));
    value
        .serialize(&mut ser)
        .expect("serializing to memory cannot fail");
    out.push(b'\n');
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

struct FixedFloat<'a>(PrettyFormatter<'a>);

impl Formatter for FixedFloat<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}
