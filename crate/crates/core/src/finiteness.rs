//! Weight-space sweeps: how many distinct weighted Delaunay tessellations
//! does a surface have, and how long can their edges get?

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boundary::{boundary_tessellation, switch_to_delaunay, TruncatedTriangulation};
use crate::delaunay::{canonical_tessellation, flip_to_delaunay, FlipConfig};
use crate::error::Result;
use crate::hyperbolic::hexagon_solve;
use crate::mesh::{Connectivity, DeltaTriangulation, Geometry, WeightVector};

/// A surface to sweep.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepSurface {
    Closed(DeltaTriangulation),
    Boundary(TruncatedTriangulation),
}

impl SweepSurface {
    fn conn(&self) -> &Connectivity {
        match self {
            Self::Closed(m) => m.connectivity(),
            Self::Boundary(t) => t.connectivity(),
        }
    }

    fn lengths(&self) -> &[f64] {
        match self {
            Self::Closed(m) => m.lengths(),
            Self::Boundary(t) => t.seams(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.conn().num_vertices()
    }

    /// Whether weights are squared radii (flat) or radii.
    fn squared_weights(&self) -> bool {
        matches!(self, Self::Closed(m) if m.geometry() == Geometry::Flat)
    }

    /// Upper bound for the largest distance between two points of the
    /// surface.
    ///
    /// Closed surfaces: graph diameter of the edge graph plus twice the
    /// longest edge (every point is within one edge length of a vertex).
    /// Bordered surfaces: graph diameter where crossing a seam also pays
    /// half of each boundary length, plus the largest hexagon
    /// half-perimeter twice, plus the longest boundary.
    pub fn diameter_bound(&self) -> Result<f64> {
        match self {
            Self::Closed(m) => {
                let costs: Vec<f64> = m.lengths().to_vec();
                Ok(graph_diameter(m.connectivity(), &costs) + 2.0 * m.max_length())
            }
            Self::Boundary(t) => {
                let bl = t.boundary_lengths()?;
                let conn = t.connectivity();
                let costs: Vec<f64> = (0..t.num_edges())
                    .map(|e| {
                        let (a, b) = conn.edge_vertices(e);
                        t.seams()[e] + 0.5 * (bl[a] + bl[b])
                    })
                    .collect();
                let mut perimeter: f64 = 0.0;
                for f in 0..t.num_faces() {
                    let s = conn.face_halfedges(f).map(|h| t.seams()[conn.edge(h)]);
                    let (a, b, c) = hexagon_solve(s[0], s[1], s[2])?;
                    perimeter = perimeter.max(s.iter().sum::<f64>() + a + b + c);
                }
                let longest = bl.iter().copied().fold(0.0, f64::max);
                Ok(graph_diameter(conn, &costs) + perimeter + longest)
            }
        }
    }
}

/// Largest shortest-path distance between two vertices.
pub fn graph_diameter(conn: &Connectivity, costs: &[f64]) -> f64 {
    let n = conn.num_vertices();
    let mut adj = vec![Vec::new(); n];
    for e in 0..conn.num_edges() {
        let (a, b) = conn.edge_vertices(e);
        adj[a].push((b, costs[e]));
        adj[b].push((a, costs[e]));
    }
    let mut best: f64 = 0.0;
    for s in 0..n {
        let mut dist = vec![f64::INFINITY; n];
        dist[s] = 0.0;
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((Dist(0.0), s)));
        while let Some(Reverse((Dist(d), v))) = heap.pop() {
            if d > dist[v] {
                continue;
            }
            for &(w, c) in &adj[v] {
                if d + c < dist[w] {
                    dist[w] = d + c;
                    heap.push(Reverse((Dist(d + c), w)));
                }
            }
        }
        best = dist.iter().copied().fold(best, f64::max);
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
struct Dist(f64);
impl Eq for Dist {}
impl std::cmp::Ord for Dist {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampler {
    /// Independent uniform draws in the per-vertex box.
    Random,
    /// Cell midpoints of a regular grid over the box, enumerated in
    /// mixed-radix order.
    Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub sampler: Sampler,
    pub samples: usize,
    pub seed: u64,
    pub flip: FlipConfig,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            sampler: Sampler::Random,
            samples: 1000,
            seed: 0,
            flip: FlipConfig::default(),
        }
    }
}

/// Weight vector number `index` of a sweep. Sample `i` depends only on the
/// seed and `i`, so a longer sweep extends a shorter one.
pub fn sample_weights(surface: &SweepSurface, config: &SweepConfig, index: usize) -> WeightVector {
    let conn = surface.conn();
    let lengths = surface.lengths();
    let n = conn.num_vertices();
    let mut cap = vec![f64::INFINITY; n];
    for e in 0..conn.num_edges() {
        let (a, b) = conn.edge_vertices(e);
        cap[a] = cap[a].min(lengths[e]);
        cap[b] = cap[b].min(lengths[e]);
    }
    let unit: Vec<f64> = match config.sampler {
        Sampler::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(index as u64);
            (0..n)
                .map(|_| loop {
                    let u: f64 = rng.gen();
                    if u > 0.0 {
                        break u;
                    }
                })
                .collect()
        }
        Sampler::Grid => {
            let levels = (config.samples.max(1) as f64).powf(1.0 / n as f64).ceil().max(1.0) as usize;
            let mut k = index;
            (0..n)
                .map(|_| {
                    let d = k % levels;
                    k /= levels;
                    (d as f64 + 0.5) / levels as f64
                })
                .collect()
        }
    };
    let squared = surface.squared_weights();
    WeightVector(
        unit.iter()
            .zip(&cap)
            .map(|(u, m)| {
                let r = 0.49 * m;
                if squared {
                    u * r * r
                } else {
                    u * r
                }
            })
            .collect(),
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleOutcome {
    pub hash: String,
    pub flips: usize,
    /// Longest edge of the final triangulation.
    pub max_edge: f64,
}

/// Runs one weight vector to a certified tessellation.
pub fn run_sample(surface: &SweepSurface, weights: &WeightVector, flip: &FlipConfig) -> Result<SampleOutcome> {
    match surface {
        SweepSurface::Closed(m) => {
            let mut mesh = m.clone();
            let report = flip_to_delaunay(&mut mesh, weights, flip)?;
            let t = canonical_tessellation(&mesh, weights, &flip.tol)?;
            Ok(SampleOutcome {
                hash: t.hash,
                flips: report.flips,
                max_edge: mesh.max_length(),
            })
        }
        SweepSurface::Boundary(tt) => {
            let mut tt = tt.clone();
            let report = switch_to_delaunay(&mut tt, weights, flip)?;
            let t = boundary_tessellation(&tt, weights, &flip.tol)?;
            Ok(SampleOutcome {
                hash: t.hash,
                flips: report.switches,
                max_edge: tt.seams().iter().copied().fold(0.0, f64::max),
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub hash: String,
    pub count: usize,
    /// First sample that produced this tessellation.
    pub witness_sample: usize,
    pub witness_weights: WeightVector,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleFailure {
    pub sample: usize,
    pub weights: WeightVector,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub surface: String,
    pub samples: usize,
    pub seed: u64,
    pub sampler: Sampler,
    pub distinct: usize,
    /// Sorted by hash.
    pub catalog: Vec<CatalogEntry>,
    pub max_edge_length: f64,
    /// Twice the diameter bound.
    pub edge_bound: f64,
    pub bound_holds: bool,
    pub total_flips: usize,
    pub failures: Vec<SampleFailure>,
    /// Hash per sample, `None` for failures.
    #[serde(skip)]
    pub sample_hashes: Vec<Option<String>>,
}

/// Every final edge is no longer than `bound` (plus a relative tolerance).
pub fn edge_bound_check(lengths: &[f64], bound: f64) -> bool {
    lengths.iter().all(|&l| l <= bound * (1.0 + 1e-12))
}

/// Samples `config.samples` weight vectors, runs each to a certified
/// tessellation in parallel and merges the results in sample order.
pub fn sweep(id: &str, surface: &SweepSurface, config: &SweepConfig) -> Result<SweepReport> {
    let bound = 2.0 * surface.diameter_bound()?;
    let outcomes: Vec<(WeightVector, Result<SampleOutcome>)> = (0..config.samples)
        .into_par_iter()
        .map(|i| {
            let w = sample_weights(surface, config, i);
            let out = run_sample(surface, &w, &config.flip);
            (w, out)
        })
        .collect();

    let mut catalog: BTreeMap<String, CatalogEntry> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut sample_hashes = Vec::with_capacity(outcomes.len());
    let mut max_edge: f64 = 0.0;
    let mut total_flips = 0;
    for (i, (w, out)) in outcomes.into_iter().enumerate() {
        match out {
            Ok(o) => {
                max_edge = max_edge.max(o.max_edge);
                total_flips += o.flips;
                sample_hashes.push(Some(o.hash.clone()));
                catalog
                    .entry(o.hash.clone())
                    .and_modify(|c| c.count += 1)
                    .or_insert(CatalogEntry {
                        hash: o.hash,
                        count: 1,
                        witness_sample: i,
                        witness_weights: w,
                    });
            }
            Err(e) => {
                sample_hashes.push(None);
                failures.push(SampleFailure {
                    sample: i,
                    weights: w,
                    error: e.to_string(),
                });
            }
        }
    }
    Ok(SweepReport {
        surface: id.to_string(),
        samples: config.samples,
        seed: config.seed,
        sampler: config.sampler,
        distinct: catalog.len(),
        catalog: catalog.into_values().collect(),
        max_edge_length: max_edge,
        edge_bound: bound,
        bound_holds: edge_bound_check(&[max_edge], bound),
        total_flips,
        failures,
        sample_hashes,
    })
}
