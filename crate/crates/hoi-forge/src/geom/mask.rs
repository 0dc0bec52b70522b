//! Binary masks and depth maps, plus mask IoU.

use super::{CameraIntrinsics, GeomError};

/// Row-major height x width binary mask. `true` = inside.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    pub width: usize,
    pub height: usize,
    pub values: Vec<bool>,
}

impl BinaryMask {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            height,
            values: vec![false; width * height],
        }
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.values[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: bool) {
        self.values[y * self.width + x] = v;
    }

    pub fn count(&self) -> usize {
        self.values.iter().filter(|v| **v).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.values.iter().any(|v| *v)
    }
}

/// Row-major depth map in meters. Entries <= 0 or non-finite are invalid.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthMap {
    pub width: usize,
    pub height: usize,
    pub values: Vec<f32>,
    pub intrinsics: CameraIntrinsics,
}

impl DepthMap {
    pub fn new(intrinsics: CameraIntrinsics) -> Self {
        Self {
            width: intrinsics.width,
            height: intrinsics.height,
            values: vec![0.0; intrinsics.width * intrinsics.height],
            intrinsics,
        }
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f32 {
        self.values[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: f32) {
        self.values[y * self.width + x] = v;
    }

    #[inline]
    pub fn is_valid(&self, x: usize, y: usize) -> bool {
        let v = self.get(x, y);
        v.is_finite() && v > 0.0
    }

    /// Scale every valid depth by `s`.
    pub fn scaled(&self, s: f64) -> DepthMap {
        let mut out = self.clone();
        for v in &mut out.values {
            if v.is_finite() && *v > 0.0 {
                *v = (*v as f64 * s) as f32;
            }
        }
        out
    }
}

/// Intersection-over-union of two masks. Both empty yields 0: an invisible
/// object must not score as a perfect match.
pub fn mask_iou(a: &BinaryMask, b: &BinaryMask) -> Result<f64, GeomError> {
    if a.width != b.width || a.height != b.height {
        return Err(GeomError::DimensionMismatch(
            a.width, a.height, b.width, b.height,
        ));
    }
    let mut inter = 0usize;
    let mut union = 0usize;
    for (pa, pb) in a.values.iter().zip(&b.values) {
        inter += (*pa && *pb) as usize;
        union += (*pa || *pb) as usize;
    }
    if union == 0 {
        return Ok(0.0);
    }
    Ok(inter as f64 / union as f64)
}
