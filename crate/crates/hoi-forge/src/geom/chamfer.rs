//! Chamfer distance and nearest-neighbor machinery for point sets.
//!
//! Chamfer here is the symmetric sum of mean *unsquared* Euclidean
//! nearest-neighbor distances. Contact losses elsewhere use squared
//! distances; the two conventions must not be mixed.

use nalgebra::Point3;

use super::GeomError;

/// Static kd-tree over 3D points.
#[derive(Debug)]
pub struct KdTree {
    // Flattened nodes: (point index, split axis). Children implicit via
    // subrange recursion.
    indices: Vec<usize>,
    points: Vec<Point3<f64>>,
}

impl KdTree {
    pub fn build(points: &[Point3<f64>]) -> Self {
        let mut indices: Vec<usize> = (0..points.len()).collect();
        let points = points.to_vec();
        if !indices.is_empty() {
            let n = indices.len();
            Self::build_rec(&points, &mut indices, 0, n, 0);
        }
        Self { indices, points }
    }

    fn build_rec(points: &[Point3<f64>], idx: &mut [usize], lo: usize, hi: usize, depth: usize) {
        if hi - lo <= 1 {
            return;
        }
        let axis = depth % 3;
        let mid = lo + (hi - lo) / 2;
        idx[lo..hi].select_nth_unstable_by(mid - lo, |&a, &b| {
            points[a][axis].partial_cmp(&points[b][axis]).unwrap()
        });
        Self::build_rec(points, idx, lo, mid, depth + 1);
        Self::build_rec(points, idx, mid + 1, hi, depth + 1);
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Index of the nearest stored point and the squared distance to it.
    pub fn nearest(&self, q: &Point3<f64>) -> (usize, f64) {
        assert!(!self.indices.is_empty(), "nearest on empty tree");
        let mut best = (usize::MAX, f64::INFINITY);
        self.nearest_rec(q, 0, self.indices.len(), 0, &mut best);
        best
    }

    fn nearest_rec(
        &self,
        q: &Point3<f64>,
        lo: usize,
        hi: usize,
        depth: usize,
        best: &mut (usize, f64),
    ) {
        if lo >= hi {
            return;
        }
        let mid = lo + (hi - lo) / 2;
        let pi = self.indices[mid];
        let d = (self.points[pi] - q).norm_squared();
        if d < best.1 {
            *best = (pi, d);
        }
        let axis = depth % 3;
        let delta = q[axis] - self.points[pi][axis];
        let (near, far) = if delta < 0.0 {
            ((lo, mid), (mid + 1, hi))
        } else {
            ((mid + 1, hi), (lo, mid))
        };
        self.nearest_rec(q, near.0, near.1, depth + 1, best);
        if delta * delta < best.1 {
            self.nearest_rec(q, far.0, far.1, depth + 1, best);
        }
    }
}

/// For each point of `from`, the index of its nearest neighbor in `to`.
pub fn nearest_neighbors(from: &[Point3<f64>], to: &[Point3<f64>]) -> Vec<usize> {
    let tree = KdTree::build(to);
    from.iter().map(|p| tree.nearest(p).0).collect()
}

/// Symmetric chamfer distance in meters:
/// mean_a min_b ||a-b|| + mean_b min_a ||b-a||.
pub fn chamfer_distance(a: &[Point3<f64>], b: &[Point3<f64>]) -> Result<f64, GeomError> {
    if a.is_empty() || b.is_empty() {
        return Err(GeomError::EmptySet);
    }
    let ta = KdTree::build(a);
    let tb = KdTree::build(b);
    let ab: f64 = a.iter().map(|p| tb.nearest(p).1.sqrt()).sum::<f64>() / a.len() as f64;
    let ba: f64 = b.iter().map(|p| ta.nearest(p).1.sqrt()).sum::<f64>() / b.len() as f64;
    Ok(ab + ba)
}
