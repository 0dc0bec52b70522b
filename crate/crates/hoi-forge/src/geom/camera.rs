//! Pinhole camera intrinsics.

use nalgebra::{Point3, Vector3};
use serde::{Deserialize, Serialize};

/// Pinhole intrinsics. Camera looks down +Z, x right, y down; pixel (u, v)
/// maps to the ray through ((u - cx)/fx, (v - cy)/fy, 1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CameraIntrinsics {
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
    pub width: usize,
    pub height: usize,
}

impl CameraIntrinsics {
    pub fn new(fx: f64, fy: f64, cx: f64, cy: f64, width: usize, height: usize) -> Self {
        let c = Self {
            fx,
            fy,
            cx,
            cy,
            width,
            height,
        };
        c.validate().expect("invalid intrinsics");
        c
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.fx <= 0.0 || self.fy <= 0.0 {
            return Err(format!("focal lengths must be positive: {} {}", self.fx, self.fy));
        }
        if self.cx < 0.0 || self.cx >= self.width as f64 {
            return Err(format!("cx {} outside [0, {})", self.cx, self.width));
        }
        if self.cy < 0.0 || self.cy >= self.height as f64 {
            return Err(format!("cy {} outside [0, {})", self.cy, self.height));
        }
        Ok(())
    }

    /// A centered camera with the given focal length in pixels.
    pub fn centered(f: f64, width: usize, height: usize) -> Self {
        Self::new(f, f, width as f64 / 2.0, height as f64 / 2.0, width, height)
    }

    /// Project a camera-space point; returns (u, v, z). Points at or behind
    /// the camera plane give non-finite pixels.
    pub fn project(&self, p: &Point3<f64>) -> (f64, f64, f64) {
        (
            self.fx * p.x / p.z + self.cx,
            self.fy * p.y / p.z + self.cy,
            p.z,
        )
    }

    /// Unproject pixel coordinates at the given depth to a camera-space point.
    pub fn unproject(&self, u: f64, v: f64, depth: f64) -> Point3<f64> {
        Point3::new(
            (u - self.cx) / self.fx * depth,
            (v - self.cy) / self.fy * depth,
            depth,
        )
    }

    /// Unit direction of the ray through pixel (u, v).
    pub fn ray_direction(&self, u: f64, v: f64) -> Vector3<f64> {
        Vector3::new((u - self.cx) / self.fx, (v - self.cy) / self.fy, 1.0).normalize()
    }
}
