//! Axis-aligned bounding-box tree over mesh triangles for closest-point
//! queries.

use nalgebra::{Point3, Vector3};

use super::TriangleMesh;

#[derive(Debug, Clone, Copy)]
struct Aabb {
    lo: Point3<f64>,
    hi: Point3<f64>,
}

impl Aabb {
    fn empty() -> Self {
        Self {
            lo: Point3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY),
            hi: Point3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY),
        }
    }

    fn grow_point(&mut self, p: &Point3<f64>) {
        for k in 0..3 {
            self.lo[k] = self.lo[k].min(p[k]);
            self.hi[k] = self.hi[k].max(p[k]);
        }
    }

    fn dist_sq(&self, p: &Point3<f64>) -> f64 {
        let mut d = 0.0;
        for k in 0..3 {
            let v = if p[k] < self.lo[k] {
                self.lo[k] - p[k]
            } else if p[k] > self.hi[k] {
                p[k] - self.hi[k]
            } else {
                0.0
            };
            d += v * v;
        }
        d
    }
}

#[derive(Debug)]
enum Node {
    Leaf {
        faces: Vec<usize>,
    },
    Inner {
        left: usize,
        right: usize,
    },
}

/// Static BVH over a mesh's triangles.
#[derive(Debug)]
pub struct MeshBvh {
    nodes: Vec<Node>,
    bounds: Vec<Aabb>,
    triangles: Vec<[Point3<f64>; 3]>,
}

const LEAF_SIZE: usize = 8;

impl MeshBvh {
    pub fn build(mesh: &TriangleMesh) -> Self {
        let triangles: Vec<_> = (0..mesh.faces.len()).map(|f| mesh.triangle(f)).collect();
        let centroids: Vec<Point3<f64>> = triangles
            .iter()
            .map(|t| Point3::from((t[0].coords + t[1].coords + t[2].coords) / 3.0))
            .collect();
        let mut bvh = Self {
            nodes: Vec::new(),
            bounds: Vec::new(),
            triangles,
        };
        let all: Vec<usize> = (0..bvh.triangles.len()).collect();
        if !all.is_empty() {
            bvh.build_node(all, &centroids);
        }
        bvh
    }

    fn node_bounds(&self, faces: &[usize]) -> Aabb {
        let mut b = Aabb::empty();
        for &f in faces {
            for p in &self.triangles[f] {
                b.grow_point(p);
            }
        }
        b
    }

    fn build_node(&mut self, mut faces: Vec<usize>, centroids: &[Point3<f64>]) -> usize {
        let bounds = self.node_bounds(&faces);
        let idx = self.nodes.len();
        self.nodes.push(Node::Leaf { faces: Vec::new() });
        self.bounds.push(bounds);
        if faces.len() <= LEAF_SIZE {
            self.nodes[idx] = Node::Leaf { faces };
            return idx;
        }
        // Split at the median along the widest centroid axis.
        let mut clo = Point3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
        let mut chi = Point3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        for &f in &faces {
            for k in 0..3 {
                clo[k] = clo[k].min(centroids[f][k]);
                chi[k] = chi[k].max(centroids[f][k]);
            }
        }
        let axis = (0..3)
            .max_by(|&a, &b| (chi[a] - clo[a]).partial_cmp(&(chi[b] - clo[b])).unwrap())
            .unwrap();
        if chi[axis] - clo[axis] < 1e-12 {
            self.nodes[idx] = Node::Leaf { faces };
            return idx;
        }
        faces.sort_by(|&a, &b| centroids[a][axis].partial_cmp(&centroids[b][axis]).unwrap());
        let right_half = faces.split_off(faces.len() / 2);
        let left = self.build_node(faces, centroids);
        let right = self.build_node(right_half, centroids);
        self.nodes[idx] = Node::Inner { left, right };
        idx
    }

    /// Unsigned distance from `p` to the mesh surface.
    pub fn distance(&self, p: &Point3<f64>) -> f64 {
        self.closest(p).0.sqrt()
    }

    /// Squared distance and index of the closest triangle.
    pub fn closest(&self, p: &Point3<f64>) -> (f64, usize) {
        assert!(!self.nodes.is_empty(), "bvh over empty mesh");
        let mut best = (f64::INFINITY, usize::MAX);
        self.closest_rec(0, p, &mut best);
        best
    }

    fn closest_rec(&self, node: usize, p: &Point3<f64>, best: &mut (f64, usize)) {
        if self.bounds[node].dist_sq(p) >= best.0 {
            return;
        }
        match &self.nodes[node] {
            Node::Leaf { faces } => {
                for &f in faces {
                    let t = &self.triangles[f];
                    let d = point_triangle_dist_sq(p, &t[0], &t[1], &t[2]);
                    if d < best.0 {
                        *best = (d, f);
                    }
                }
            }
            Node::Inner { left, right } => {
                let dl = self.bounds[*left].dist_sq(p);
                let dr = self.bounds[*right].dist_sq(p);
                let (first, second) = if dl <= dr {
                    (*left, *right)
                } else {
                    (*right, *left)
                };
                self.closest_rec(first, p, best);
                self.closest_rec(second, p, best);
            }
        }
    }
}

/// Squared distance from a point to a triangle (Ericson, Real-Time Collision
/// Detection, closest-point-on-triangle).
pub fn point_triangle_dist_sq(
    p: &Point3<f64>,
    a: &Point3<f64>,
    b: &Point3<f64>,
    c: &Point3<f64>,
) -> f64 {
    let ab: Vector3<f64> = b - a;
    let ac: Vector3<f64> = c - a;
    let ap: Vector3<f64> = p - a;

    let d1 = ab.dot(&ap);
    let d2 = ac.dot(&ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return ap.norm_squared();
    }

    let bp = p - b;
    let d3 = ab.dot(&bp);
    let d4 = ac.dot(&bp);
    if d3 >= 0.0 && d4 <= d3 {
        return bp.norm_squared();
    }

    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        let v = d1 / (d1 - d3);
        return (ap - ab * v).norm_squared();
    }

    let cp = p - c;
    let d5 = ab.dot(&cp);
    let d6 = ac.dot(&cp);
    if d6 >= 0.0 && d5 <= d6 {
        return cp.norm_squared();
    }

    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        let w = d2 / (d2 - d6);
        return (ap - ac * w).norm_squared();
    }

    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        let w = (d4 - d3) / ((d4 - d3) + (d5 - d6));
        return (bp - (c - b) * w).norm_squared();
    }

    let denom = 1.0 / (va + vb + vc);
    let v = vb * denom;
    let w = vc * denom;
    (ap - ab * v - ac * w).norm_squared()
}
