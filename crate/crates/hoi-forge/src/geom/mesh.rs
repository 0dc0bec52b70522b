//! Triangle meshes and the primitive shapes used by tests and scenarios.

use nalgebra::{Point3, Vector3};

use super::Pose;

/// Indexed triangle mesh in meters. Faces are vertex-index triples.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleMesh {
    pub vertices: Vec<Point3<f64>>,
    pub faces: Vec<[usize; 3]>,
}

impl TriangleMesh {
    /// Build a mesh, dropping faces with out-of-range indices or zero area.
    pub fn new(vertices: Vec<Point3<f64>>, faces: Vec<[usize; 3]>) -> Self {
        let n = vertices.len();
        let faces = faces
            .into_iter()
            .filter(|f| {
                if f.iter().any(|&i| i >= n) {
                    return false;
                }
                let a = vertices[f[0]];
                let b = vertices[f[1]];
                let c = vertices[f[2]];
                (b - a).cross(&(c - a)).norm() > 1e-14
            })
            .collect();
        Self { vertices, faces }
    }

    pub fn triangle(&self, f: usize) -> [Point3<f64>; 3] {
        let [i, j, k] = self.faces[f];
        [self.vertices[i], self.vertices[j], self.vertices[k]]
    }

    pub fn face_normal(&self, f: usize) -> Vector3<f64> {
        let [a, b, c] = self.triangle(f);
        (b - a).cross(&(c - a)).normalize()
    }

    /// Axis-aligned bounds as (min, max).
    pub fn bounds(&self) -> (Point3<f64>, Point3<f64>) {
        let mut lo = Point3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
        let mut hi = Point3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for v in &self.vertices {
            for k in 0..3 {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }

    /// Uniformly scale about the origin.
    pub fn scaled(&self, s: f64) -> TriangleMesh {
        TriangleMesh {
            vertices: self.vertices.iter().map(|v| Point3::from(v.coords * s)).collect(),
            faces: self.faces.clone(),
        }
    }

    /// Rigidly transform every vertex.
    pub fn transformed(&self, pose: &Pose) -> TriangleMesh {
        TriangleMesh {
            vertices: self.vertices.iter().map(|v| pose.transform_point(v)).collect(),
            faces: self.faces.clone(),
        }
    }

    /// Signed volume via the divergence theorem; positive for outward-wound
    /// closed meshes.
    pub fn signed_volume(&self) -> f64 {
        self.faces
            .iter()
            .map(|f| {
                let a = self.vertices[f[0]].coords;
                let b = self.vertices[f[1]].coords;
                let c = self.vertices[f[2]].coords;
                a.dot(&b.cross(&c)) / 6.0
            })
            .sum()
    }

    pub fn surface_area(&self) -> f64 {
        (0..self.faces.len())
            .map(|f| {
                let [a, b, c] = self.triangle(f);
                (b - a).cross(&(c - a)).norm() * 0.5
            })
            .sum()
    }

    /// Deterministic surface samples: per face, stratified barycentric points
    /// proportional to face area, at least one per face.
    pub fn sample_surface(&self, approx_count: usize) -> Vec<Point3<f64>> {
        let total = self.surface_area();
        let mut out = Vec::with_capacity(approx_count + self.faces.len());
        for f in 0..self.faces.len() {
            let [a, b, c] = self.triangle(f);
            let area = (b - a).cross(&(c - a)).norm() * 0.5;
            let n = ((approx_count as f64 * area / total).ceil() as usize).max(1);
            // Low-discrepancy lattice in the unit square folded to barycentric.
            for i in 0..n {
                let mut u = (i as f64 + 0.5) / n as f64;
                let mut v = ((i as f64 * 0.754_877_666) + 0.25).fract();
                if u + v > 1.0 {
                    u = 1.0 - u;
                    v = 1.0 - v;
                }
                out.push(Point3::from(
                    a.coords * (1.0 - u - v) + b.coords * u + c.coords * v,
                ));
            }
        }
        out
    }

    /// Axis-aligned box centered at the origin with the given full extents.
    pub fn box_mesh(ex: f64, ey: f64, ez: f64) -> TriangleMesh {
        let (hx, hy, hz) = (ex / 2.0, ey / 2.0, ez / 2.0);
        let v = vec![
            Point3::new(-hx, -hy, -hz),
            Point3::new(hx, -hy, -hz),
            Point3::new(hx, hy, -hz),
            Point3::new(-hx, hy, -hz),
            Point3::new(-hx, -hy, hz),
            Point3::new(hx, -hy, hz),
            Point3::new(hx, hy, hz),
            Point3::new(-hx, hy, hz),
        ];
        // Outward winding (CCW seen from outside).
        let f = vec![
            [0, 2, 1],
            [0, 3, 2],
            [4, 5, 6],
            [4, 6, 7],
            [0, 1, 5],
            [0, 5, 4],
            [2, 3, 7],
            [2, 7, 6],
            [1, 2, 6],
            [1, 6, 5],
            [3, 0, 4],
            [3, 4, 7],
        ];
        TriangleMesh::new(v, f)
    }

    /// Icosphere of the given radius, `subdivisions` in [0, 4].
    pub fn icosphere(radius: f64, subdivisions: usize) -> TriangleMesh {
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        let mut verts: Vec<Vector3<f64>> = vec![
            Vector3::new(-1.0, phi, 0.0),
            Vector3::new(1.0, phi, 0.0),
            Vector3::new(-1.0, -phi, 0.0),
            Vector3::new(1.0, -phi, 0.0),
            Vector3::new(0.0, -1.0, phi),
            Vector3::new(0.0, 1.0, phi),
            Vector3::new(0.0, -1.0, -phi),
            Vector3::new(0.0, 1.0, -phi),
            Vector3::new(phi, 0.0, -1.0),
            Vector3::new(phi, 0.0, 1.0),
            Vector3::new(-phi, 0.0, -1.0),
            Vector3::new(-phi, 0.0, 1.0),
        ]
        .into_iter()
        .map(|v| v.normalize())
        .collect();
        let mut faces: Vec<[usize; 3]> = vec![
            [0, 11, 5],
            [0, 5, 1],
            [0, 1, 7],
            [0, 7, 10],
            [0, 10, 11],
            [1, 5, 9],
            [5, 11, 4],
            [11, 10, 2],
            [10, 7, 6],
            [7, 1, 8],
            [3, 9, 4],
            [3, 4, 2],
            [3, 2, 6],
            [3, 6, 8],
            [3, 8, 9],
            [4, 9, 5],
            [2, 4, 11],
            [6, 2, 10],
            [8, 6, 7],
            [9, 8, 1],
        ];
        for _ in 0..subdivisions {
            let mut midpoint = std::collections::HashMap::new();
            let mut next = Vec::with_capacity(faces.len() * 4);
            for f in &faces {
                let mut mid = [0usize; 3];
                for e in 0..3 {
                    let (i, j) = (f[e], f[(e + 1) % 3]);
                    let key = (i.min(j), i.max(j));
                    mid[e] = *midpoint.entry(key).or_insert_with(|| {
                        verts.push((verts[i] + verts[j]).normalize());
                        verts.len() - 1
                    });
                }
                next.push([f[0], mid[0], mid[2]]);
                next.push([f[1], mid[1], mid[0]]);
                next.push([f[2], mid[2], mid[1]]);
                next.push([mid[0], mid[1], mid[2]]);
            }
            faces = next;
        }
        TriangleMesh::new(
            verts
                .into_iter()
                .map(|v| Point3::from(v * radius))
                .collect(),
            faces,
        )
    }

    /// Closed cylinder along +Z, centered at the origin.
    pub fn cylinder(radius: f64, length: f64, segments: usize) -> TriangleMesh {
        let half = length / 2.0;
        let mut verts = Vec::new();
        for &z in &[-half, half] {
            for k in 0..segments {
                let a = 2.0 * std::f64::consts::PI * k as f64 / segments as f64;
                verts.push(Point3::new(radius * a.cos(), radius * a.sin(), z));
            }
        }
        let bottom_center = verts.len();
        verts.push(Point3::new(0.0, 0.0, -half));
        let top_center = verts.len();
        verts.push(Point3::new(0.0, 0.0, half));
        let mut faces = Vec::new();
        for k in 0..segments {
            let k1 = (k + 1) % segments;
            let (b0, b1) = (k, k1);
            let (t0, t1) = (segments + k, segments + k1);
            faces.push([b0, t0, b1]);
            faces.push([b1, t0, t1]);
            faces.push([bottom_center, b1, b0]);
            faces.push([top_center, t0, t1]);
        }
        TriangleMesh::new(verts, faces)
    }
}
