//! Z-buffered perspective rasterization of silhouettes and depth.
//!
//! Samples at pixel centers with no antialiasing; both triangle windings are
//! drawn. Depth is the camera-space z of the nearest surface, interpolated
//! perspective-correctly (1/z linear in screen space).

use nalgebra::{Point3, Vector2};
use thiserror::Error;

use super::{BinaryMask, CameraIntrinsics, DepthMap, Pose, TriangleMesh};

/// Near-plane distance in meters; geometry closer than this is clipped.
pub const NEAR_PLANE: f64 = 1e-4;

#[derive(Debug, Error)]
pub enum RasterError {
    #[error("every vertex projects behind the near plane")]
    BehindCamera,
    #[error("mesh has no faces")]
    EmptyMesh,
}

/// Render `mesh` under `pose` (camera frame) through `cam`.
pub fn rasterize(
    mesh: &TriangleMesh,
    pose: &Pose,
    cam: &CameraIntrinsics,
) -> Result<(BinaryMask, DepthMap), RasterError> {
    if mesh.faces.is_empty() {
        return Err(RasterError::EmptyMesh);
    }
    let verts: Vec<Point3<f64>> = mesh
        .vertices
        .iter()
        .map(|v| pose.transform_point(v))
        .collect();
    if verts.iter().all(|v| v.z < NEAR_PLANE) {
        return Err(RasterError::BehindCamera);
    }

    let mut mask = BinaryMask::new(cam.width, cam.height);
    let mut depth = DepthMap::new(*cam);
    let mut zbuf = vec![f64::INFINITY; cam.width * cam.height];

    let mut clipped = Vec::with_capacity(4);
    for face in &mesh.faces {
        let tri = [verts[face[0]], verts[face[1]], verts[face[2]]];
        clip_near(&tri, &mut clipped);
        if clipped.len() < 3 {
            continue;
        }
        // Fan-triangulate the clipped polygon.
        for t in 1..clipped.len() - 1 {
            raster_triangle(
                &[clipped[0], clipped[t], clipped[t + 1]],
                cam,
                &mut mask,
                &mut zbuf,
            );
        }
    }

    for (i, z) in zbuf.iter().enumerate() {
        if z.is_finite() {
            depth.values[i] = *z as f32;
        }
    }
    Ok((mask, depth))
}

/// Sutherland–Hodgman clip of one triangle against z >= NEAR_PLANE.
fn clip_near(tri: &[Point3<f64>; 3], out: &mut Vec<Point3<f64>>) {
    out.clear();
    for i in 0..3 {
        let a = tri[i];
        let b = tri[(i + 1) % 3];
        let ain = a.z >= NEAR_PLANE;
        let bin = b.z >= NEAR_PLANE;
        if ain {
            out.push(a);
        }
        if ain != bin {
            let t = (NEAR_PLANE - a.z) / (b.z - a.z);
            out.push(a + (b - a) * t);
        }
    }
}

fn raster_triangle(
    tri: &[Point3<f64>; 3],
    cam: &CameraIntrinsics,
    mask: &mut BinaryMask,
    zbuf: &mut [f64],
) {
    let p: Vec<Vector2<f64>> = tri
        .iter()
        .map(|v| Vector2::new(cam.fx * v.x / v.z + cam.cx, cam.fy * v.y / v.z + cam.cy))
        .collect();
    let inv_z = [1.0 / tri[0].z, 1.0 / tri[1].z, 1.0 / tri[2].z];

    let area = edge(&p[0], &p[1], &p[2]);
    if area.abs() < 1e-12 {
        return;
    }
    // Normalize so barycentric weights are positive for inside pixels
    // regardless of winding.
    let sign = if area > 0.0 { 1.0 } else { -1.0 };
    let inv_area = sign / area;

    let min_x = p.iter().map(|q| q.x).fold(f64::INFINITY, f64::min);
    let max_x = p.iter().map(|q| q.x).fold(f64::NEG_INFINITY, f64::max);
    let min_y = p.iter().map(|q| q.y).fold(f64::INFINITY, f64::min);
    let max_y = p.iter().map(|q| q.y).fold(f64::NEG_INFINITY, f64::max);

    let x0 = (min_x - 0.5).floor().max(0.0) as usize;
    let x1 = (max_x - 0.5).ceil().min((cam.width - 1) as f64) as usize;
    let y0 = (min_y - 0.5).floor().max(0.0) as usize;
    let y1 = (max_y - 0.5).ceil().min((cam.height - 1) as f64) as usize;
    if x0 > x1 || y0 > y1 {
        return;
    }

    for y in y0..=y1 {
        for x in x0..=x1 {
            let c = Vector2::new(x as f64 + 0.5, y as f64 + 0.5);
            let w0 = edge(&p[1], &p[2], &c) * sign;
            let w1 = edge(&p[2], &p[0], &c) * sign;
            let w2 = edge(&p[0], &p[1], &c) * sign;
            if w0 < 0.0 || w1 < 0.0 || w2 < 0.0 {
                continue;
            }
            let l0 = w0 * inv_area;
            let l1 = w1 * inv_area;
            let l2 = w2 * inv_area;
            let z = 1.0 / (l0 * inv_z[0] + l1 * inv_z[1] + l2 * inv_z[2]);
            let idx = y * cam.width + x;
            if z < zbuf[idx] {
                zbuf[idx] = z;
            }
            mask.values[idx] = true;
        }
    }
}

#[inline]
fn edge(a: &Vector2<f64>, b: &Vector2<f64>, c: &Vector2<f64>) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::mask_iou;
    use nalgebra::Vector3;

    fn cam256() -> CameraIntrinsics {
        CameraIntrinsics::centered(256.0, 256, 256)
    }

    #[test]
    fn single_triangle_matches_point_in_triangle_oracle() {
        // Triangle at z = 2 covering a known pixel region.
        let cam = CameraIntrinsics::centered(100.0, 64, 64);
        let mesh = TriangleMesh::new(
            vec![
                Point3::new(-0.1, -0.1, 2.0),
                Point3::new(0.25, -0.1, 2.0),
                Point3::new(-0.1, 0.3, 2.0),
            ],
            vec![[0, 1, 2]],
        );
        let (mask, depth) = rasterize(&mesh, &Pose::identity(), &cam).unwrap();

        // Oracle: test each pixel center against the projected triangle.
        let proj: Vec<Vector2<f64>> = mesh
            .vertices
            .iter()
            .map(|v| Vector2::new(cam.fx * v.x / v.z + cam.cx, cam.fy * v.y / v.z + cam.cy))
            .collect();
        let mut covered = 0;
        for y in 0..cam.height {
            for x in 0..cam.width {
                let c = Vector2::new(x as f64 + 0.5, y as f64 + 0.5);
                let w0 = edge(&proj[0], &proj[1], &c);
                let w1 = edge(&proj[1], &proj[2], &c);
                let w2 = edge(&proj[2], &proj[0], &c);
                let inside = (w0 >= 0.0 && w1 >= 0.0 && w2 >= 0.0)
                    || (w0 <= 0.0 && w1 <= 0.0 && w2 <= 0.0);
                assert_eq!(mask.get(x, y), inside, "pixel ({x},{y})");
                if inside {
                    covered += 1;
                    assert!((depth.get(x, y) as f64 - 2.0).abs() < 1e-6);
                }
            }
        }
        assert!(covered > 50, "triangle should cover a visible area");
    }

    #[test]
    fn offscreen_mesh_renders_empty() {
        let cam = cam256();
        let mesh = TriangleMesh::box_mesh(0.1, 0.1, 0.1)
            .transformed(&Pose::new(Default::default(), Vector3::new(50.0, 0.0, 4.0)));
        let (mask, _) = rasterize(&mesh, &Pose::identity(), &cam).unwrap();
        assert!(mask.is_empty());
    }

    #[test]
    fn behind_camera_is_error() {
        let cam = cam256();
        let mesh = TriangleMesh::box_mesh(0.1, 0.1, 0.1)
            .transformed(&Pose::new(Default::default(), Vector3::new(0.0, 0.0, -5.0)));
        match rasterize(&mesh, &Pose::identity(), &cam) {
            Err(RasterError::BehindCamera) => {}
            other => panic!("expected BehindCamera, got {other:?}"),
        }
    }

    #[test]
    fn sphere_silhouette_matches_analytic_disk() {
        let cam = cam256();
        let mesh = TriangleMesh::icosphere(1.0, 3);
        let pose = Pose::new(Default::default(), Vector3::new(0.0, 0.0, 4.0));
        let (mask, _) = rasterize(&mesh, &pose, &cam).unwrap();

        // The exact silhouette of a sphere is the cone tangency circle: a pixel
        // is covered iff the angle between its ray and the center direction is
        // below asin(r/d).
        let mut disk = BinaryMask::new(cam.width, cam.height);
        let center = Vector3::new(0.0, 0.0, 4.0).normalize();
        let half_angle = (1.0f64 / 4.0).asin();
        for y in 0..cam.height {
            for x in 0..cam.width {
                let d = cam.ray_direction(x as f64 + 0.5, y as f64 + 0.5);
                disk.set(x, y, d.dot(&center).acos() <= half_angle);
            }
        }
        let iou = mask_iou(&mask, &disk).unwrap();
        assert!(iou >= 0.98, "IoU {iou}");
    }

    #[test]
    fn depth_is_reprojection_consistent() {
        let cam = cam256();
        let mesh = TriangleMesh::box_mesh(0.6, 0.4, 0.5);
        let pose = Pose::from_axis_angle(
            &Vector3::new(1.0, 1.0, 0.3),
            0.7,
            Vector3::new(0.05, -0.1, 3.0),
        );
        let (mask, depth) = rasterize(&mesh, &pose, &cam).unwrap();
        for y in 0..cam.height {
            for x in 0..cam.width {
                if !mask.get(x, y) {
                    continue;
                }
                let z = depth.get(x, y) as f64;
                assert!(z > 0.0);
                let p = cam.unproject(x as f64 + 0.5, y as f64 + 0.5, z);
                let (u, v, _) = cam.project(&p);
                assert!((u - (x as f64 + 0.5)).abs() < 0.5);
                assert!((v - (y as f64 + 0.5)).abs() < 0.5);
            }
        }
    }

    #[test]
    fn triangle_straddling_near_plane_is_clipped_not_dropped() {
        let cam = cam256();
        // One vertex behind the camera, two in front.
        let mesh = TriangleMesh::new(
            vec![
                Point3::new(0.0, 0.0, -1.0),
                Point3::new(0.5, 0.0, 2.0),
                Point3::new(-0.5, 0.0, 2.0),
            ],
            vec![[0, 1, 2]],
        );
        let (mask, _) = rasterize(&mesh, &Pose::identity(), &cam).unwrap();
        assert!(!mask.is_empty());
    }
}
