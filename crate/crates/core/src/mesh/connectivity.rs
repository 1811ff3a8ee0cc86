//! Halfedge combinatorics of a closed oriented Δ-complex.
//!
//! Self-glued faces, loops and multi-edges are all allowed: a halfedge is
//! identified by index only, never by its endpoint pair.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A face corner: `(face, c)` is the halfedge from `faces[face][c]` to
/// `faces[face][(c + 1) % 3]`.
pub type Corner = (usize, usize);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Connectivity {
    next: Vec<usize>,
    twin: Vec<usize>,
    origin: Vec<usize>,
    face: Vec<usize>,
    edge: Vec<usize>,
    edge_halfedge: Vec<usize>,
    face_halfedge: Vec<usize>,
    num_vertices: usize,
}

impl Connectivity {
    /// Builds the complex from face triples and a twin pairing of corners.
    /// Edge `e` is the pair `gluing[e]`.
    pub fn from_faces(faces: &[[usize; 3]], gluing: &[(Corner, Corner)]) -> Result<Self> {
        let nf = faces.len();
        if nf == 0 {
            return Err(Error::InvalidMesh("no faces".into()));
        }
        let nh = 3 * nf;
        let num_vertices = faces.iter().flatten().copied().max().unwrap_or(0) + 1;
        let mut next = vec![0; nh];
        let mut origin = vec![0; nh];
        let mut face = vec![0; nh];
        for (f, tri) in faces.iter().enumerate() {
            for c in 0..3 {
                let h = 3 * f + c;
                next[h] = 3 * f + (c + 1) % 3;
                origin[h] = tri[c];
                face[h] = f;
            }
        }
        let mut twin = vec![usize::MAX; nh];
        let mut edge = vec![usize::MAX; nh];
        let mut edge_halfedge = Vec::with_capacity(gluing.len());
        for (e, &((fa, ca), (fb, cb))) in gluing.iter().enumerate() {
            if fa >= nf || fb >= nf || ca > 2 || cb > 2 {
                return Err(Error::InvalidMesh(format!("gluing {e} refers to a missing corner")));
            }
            let (a, b) = (3 * fa + ca, 3 * fb + cb);
            if a == b || twin[a] != usize::MAX || twin[b] != usize::MAX {
                return Err(Error::InvalidMesh(format!("gluing {e} reuses a halfedge")));
            }
            twin[a] = b;
            twin[b] = a;
            edge[a] = e;
            edge[b] = e;
            edge_halfedge.push(a);
        }
        if let Some(h) = twin.iter().position(|&t| t == usize::MAX) {
            return Err(Error::InvalidMesh(format!(
                "corner ({}, {}) has no twin; surface is not closed",
                h / 3,
                h % 3
            )));
        }
        let conn = Connectivity {
            next,
            twin,
            origin,
            face,
            edge,
            edge_halfedge,
            face_halfedge: (0..nf).map(|f| 3 * f).collect(),
            num_vertices,
        };
        conn.check()?;
        Ok(conn)
    }

    fn check(&self) -> Result<()> {
        for h in 0..self.num_halfedges() {
            let t = self.twin[h];
            if self.origin[t] != self.dest(h) || self.dest(t) != self.origin[h] {
                return Err(Error::InvalidMesh(format!(
                    "halfedge {h} and its twin do not run in opposite directions"
                )));
            }
        }
        // Every vertex must have exactly one ring of corners.
        let mut seen = vec![false; self.num_halfedges()];
        let mut rings = vec![0usize; self.num_vertices];
        for h in 0..self.num_halfedges() {
            if seen[h] {
                continue;
            }
            rings[self.origin[h]] += 1;
            let mut g = h;
            loop {
                seen[g] = true;
                g = self.rotate(g);
                if g == h {
                    break;
                }
            }
        }
        if let Some(v) = rings.iter().position(|&r| r != 1) {
            return Err(Error::InvalidMesh(format!(
                "vertex {v} has {} corner rings (must be exactly one)",
                rings[v]
            )));
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edge_halfedge.len()
    }

    pub fn num_faces(&self) -> usize {
        self.face_halfedge.len()
    }

    pub fn num_halfedges(&self) -> usize {
        self.next.len()
    }

    pub fn next(&self, h: usize) -> usize {
        self.next[h]
    }

    pub fn prev(&self, h: usize) -> usize {
        self.next[self.next[h]]
    }

    pub fn twin(&self, h: usize) -> usize {
        self.twin[h]
    }

    pub fn origin(&self, h: usize) -> usize {
        self.origin[h]
    }

    pub fn dest(&self, h: usize) -> usize {
        self.origin[self.next[h]]
    }

    pub fn face(&self, h: usize) -> usize {
        self.face[h]
    }

    pub fn edge(&self, h: usize) -> usize {
        self.edge[h]
    }

    /// The representative halfedge of `e`.
    pub fn halfedge(&self, e: usize) -> usize {
        self.edge_halfedge[e]
    }

    pub fn face_halfedges(&self, f: usize) -> [usize; 3] {
        let h = self.face_halfedge[f];
        [h, self.next[h], self.next[self.next[h]]]
    }

    pub fn face_vertices(&self, f: usize) -> [usize; 3] {
        self.face_halfedges(f).map(|h| self.origin[h])
    }

    pub fn edge_vertices(&self, e: usize) -> (usize, usize) {
        let h = self.edge_halfedge[e];
        (self.origin[h], self.dest(h))
    }

    /// Face triples and corner gluing describing the current complex, with
    /// edges in their current order. Round-trips through [`Self::from_faces`].
    pub fn to_faces(&self) -> (Vec<[usize; 3]>, Vec<(Corner, Corner)>) {
        let mut corner = vec![(0, 0); self.num_halfedges()];
        let faces = (0..self.num_faces())
            .map(|f| {
                let hs = self.face_halfedges(f);
                for (c, &h) in hs.iter().enumerate() {
                    corner[h] = (f, c);
                }
                hs.map(|h| self.origin[h])
            })
            .collect();
        let gluing = self
            .edge_halfedge
            .iter()
            .map(|&h| (corner[h], corner[self.twin[h]]))
            .collect();
        (faces, gluing)
    }

    /// Next outgoing halfedge counter-clockwise around `origin(h)`.
    pub fn rotate(&self, h: usize) -> usize {
        self.twin[self.prev(h)]
    }

    /// Outgoing halfedges of each vertex, in counter-clockwise order.
    pub fn vertex_rings(&self) -> Vec<Vec<usize>> {
        let mut rings = vec![Vec::new(); self.num_vertices];
        let mut seen = vec![false; self.num_halfedges()];
        for h in 0..self.num_halfedges() {
            if seen[h] {
                continue;
            }
            let v = self.origin[h];
            let mut g = h;
            loop {
                seen[g] = true;
                rings[v].push(g);
                g = self.rotate(g);
                if g == h {
                    break;
                }
            }
        }
        rings
    }

    /// Both sides of the edge lie in the same face.
    pub fn is_self_glued(&self, e: usize) -> bool {
        let h = self.edge_halfedge[e];
        self.face[h] == self.face[self.twin[h]]
    }

    /// The four edges bounding the hinge of `e`.
    pub fn hinge_boundary(&self, e: usize) -> [usize; 4] {
        let h = self.edge_halfedge[e];
        let t = self.twin[h];
        [self.next[h], self.prev(h), self.next[t], self.prev(t)].map(|g| self.edge[g])
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    /// Replaces `e` by the other diagonal of its hinge.
    ///
    /// With `h: i -> j` in face `(i, j, k)` and its twin in `(j, i, l)`, the
    /// faces become `(k, l, j)` and `(l, k, i)`; `h` now runs `k -> l`.
    pub fn flip(&mut self, e: usize) -> Result<()> {
        if e >= self.num_edges() {
            return Err(Error::InvalidEdge { edge: e });
        }
        if self.is_self_glued(e) {
            return Err(Error::SelfGluedFlip { edge: e });
        }
        let h = self.edge_halfedge[e];
        let t = self.twin[h];
        let (h1, h2) = (self.next[h], self.prev(h));
        let (t1, t2) = (self.next[t], self.prev(t));
        let (f0, f1) = (self.face[h], self.face[t]);
        let k = self.origin[h2];
        let l = self.origin[t2];

        self.origin[h] = k;
        self.origin[t] = l;
        self.next[h] = t2;
        self.next[t2] = h1;
        self.next[h1] = h;
        self.next[t] = h2;
        self.next[h2] = t1;
        self.next[t1] = t;
        self.face[t2] = f0;
        self.face[h2] = f1;
        self.face_halfedge[f0] = h;
        self.face_halfedge[f1] = t;
        Ok(())
    }
}
