use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{certificate_unchecked, check_engine_weights, CertStatus, EdgeCertificate};
use crate::error::{Error, Result};
use crate::mesh::{DeltaTriangulation, WeightVector};
use crate::tolerance::Tolerance;

/// A triangulated surface whose edges can be certified and flipped.
pub trait FlipSurface {
    fn num_edges(&self) -> usize;
    fn certificate(&self, e: usize) -> Result<EdgeCertificate>;
    fn flip(&mut self, e: usize) -> Result<()>;
    /// Edges whose certificates may change when `e` is flipped.
    fn hinge_boundary(&self, e: usize) -> [usize; 4];
}

/// A closed surface together with its weights.
pub struct WeightedMesh<'a> {
    pub mesh: &'a mut DeltaTriangulation,
    pub weights: &'a WeightVector,
    pub tol: Tolerance,
}

impl FlipSurface for WeightedMesh<'_> {
    fn num_edges(&self) -> usize {
        self.mesh.num_edges()
    }

    fn certificate(&self, e: usize) -> Result<EdgeCertificate> {
        certificate_unchecked(self.mesh, self.weights, e, &self.tol)
    }

    fn flip(&mut self, e: usize) -> Result<()> {
        self.mesh.flip_edge(e).map(|_| ())
    }

    fn hinge_boundary(&self, e: usize) -> [usize; 4] {
        self.mesh.connectivity().hinge_boundary(e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlipPhase {
    Before,
    After,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlipConfig {
    pub tol: Tolerance,
    /// Maximum number of flips; `None` means `50 * E^2`.
    pub flip_cap: Option<usize>,
}

impl Default for FlipConfig {
    fn default() -> Self {
        Self {
            tol: Tolerance::default(),
            flip_cap: None,
        }
    }
}

impl FlipConfig {
    pub fn cap(&self, num_edges: usize) -> usize {
        self.flip_cap.unwrap_or(50 * num_edges * num_edges)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlipReport {
    pub flips: usize,
    pub ties: usize,
    pub self_glued: usize,
    pub certificates: Vec<EdgeCertificate>,
}

impl FlipReport {
    fn new(flips: usize, certificates: Vec<EdgeCertificate>) -> Self {
        let count = |s| certificates.iter().filter(|c| c.status == s).count();
        Self {
            flips,
            ties: count(CertStatus::Tie),
            self_glued: count(CertStatus::SelfGlued),
            certificates,
        }
    }
}

fn sweep<S: FlipSurface>(s: &S) -> Result<Vec<EdgeCertificate>> {
    (0..s.num_edges()).map(|e| s.certificate(e)).collect()
}

/// Flips violated edges until every edge certifies.
///
/// Edges are processed first-in first-out; after a flip the four edges of
/// the hinge boundary are queued again. When the queue drains a full sweep
/// re-checks every edge. Exceeding `cap` flips is an error carrying the
/// number of violated edges left.
pub fn run_flips<S: FlipSurface>(
    s: &mut S,
    cap: usize,
    observer: &mut dyn FnMut(&S, FlipPhase, usize),
) -> Result<(usize, Vec<EdgeCertificate>)> {
    let n = s.num_edges();
    let mut queue: VecDeque<usize> = (0..n).collect();
    let mut queued = vec![true; n];
    let mut flips = 0;
    loop {
        while let Some(e) = queue.pop_front() {
            queued[e] = false;
            if !s.certificate(e)?.is_violated() {
                continue;
            }
            if flips == cap {
                let violations = sweep(s)?.iter().filter(|c| c.is_violated()).count();
                return Err(Error::FlipLimitExceeded { cap, violations });
            }
            observer(s, FlipPhase::Before, e);
            s.flip(e)?;
            flips += 1;
            observer(s, FlipPhase::After, e);
            for g in s.hinge_boundary(e) {
                if !queued[g] {
                    queued[g] = true;
                    queue.push_back(g);
                }
            }
        }
        let certificates = sweep(s)?;
        let violated: Vec<usize> = certificates
            .iter()
            .filter(|c| c.is_violated())
            .map(|c| c.edge)
            .collect();
        if violated.is_empty() {
            return Ok((flips, certificates));
        }
        for e in violated {
            queued[e] = true;
            queue.push_back(e);
        }
    }
}

pub fn flip_to_delaunay(
    mesh: &mut DeltaTriangulation,
    weights: &WeightVector,
    config: &FlipConfig,
) -> Result<FlipReport> {
    flip_to_delaunay_observed(mesh, weights, config, &mut |_, _, _| {})
}

/// As [`flip_to_delaunay`], calling `observer` around every flip with the
/// mesh state and the edge.
pub fn flip_to_delaunay_observed(
    mesh: &mut DeltaTriangulation,
    weights: &WeightVector,
    config: &FlipConfig,
    observer: &mut dyn FnMut(&DeltaTriangulation, FlipPhase, usize),
) -> Result<FlipReport> {
    check_engine_weights(mesh, weights)?;
    let cap = config.cap(mesh.num_edges());
    let mut surface = WeightedMesh {
        mesh,
        weights,
        tol: config.tol,
    };
    let (flips, certificates) = run_flips(&mut surface, cap, &mut |s, phase, e| observer(s.mesh, phase, e))?;
    Ok(FlipReport::new(flips, certificates))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certification {
    pub certified: bool,
    pub violations: Vec<usize>,
    pub certificates: Vec<EdgeCertificate>,
}

impl Certification {
    pub fn from_certificates(certificates: Vec<EdgeCertificate>) -> Self {
        let violations: Vec<usize> = certificates
            .iter()
            .filter(|c| c.is_violated())
            .map(|c| c.edge)
            .collect();
        Self {
            certified: violations.is_empty(),
            violations,
            certificates,
        }
    }
}

/// Certificates of every edge; certified when none is violated.
pub fn certify_global(
    mesh: &DeltaTriangulation,
    weights: &WeightVector,
    tol: &Tolerance,
) -> Result<Certification> {
    check_engine_weights(mesh, weights)?;
    let certificates = (0..mesh.num_edges())
        .map(|e| certificate_unchecked(mesh, weights, e, tol))
        .collect::<Result<Vec<_>>>()?;
    Ok(Certification::from_certificates(certificates))
}
