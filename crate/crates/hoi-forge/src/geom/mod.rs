//! Rigid transforms, meshes, signed distance fields, software rasterization,
//! and set-distance primitives shared by every stage.

mod bvh;
mod camera;
mod chamfer;
mod hull;
mod mask;
mod mesh;
mod pose;
mod raster;
mod sdf;
pub mod so3;

pub use bvh::MeshBvh;
pub use camera::CameraIntrinsics;
pub use chamfer::{chamfer_distance, nearest_neighbors, KdTree};
pub use hull::convex_hull;
pub use mask::{mask_iou, BinaryMask, DepthMap};
pub use mesh::TriangleMesh;
pub use pose::Pose;
pub use raster::{rasterize, RasterError};
pub use sdf::{build_sdf_grid, SdfGrid, SdfSample};

use thiserror::Error;

/// Errors raised by geometry primitives.
#[derive(Debug, Error)]
pub enum GeomError {
    #[error("mask/depth dimensions differ: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("point set is empty")]
    EmptySet,
    #[error("sign classification ambiguous for {0:.1}% of grid cells")]
    NonManifoldMesh(f64),
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
}
