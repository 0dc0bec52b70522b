//! Rigid SE(3) transforms stored as unit quaternion + translation.

use nalgebra::{Matrix4, Point3, UnitQuaternion, Vector3};
use serde::{Deserialize, Serialize};

use super::so3;

/// A rigid transform: rotation (unit quaternion) and translation in meters.
///
/// Applies as `p' = R p + t`. The quaternion is renormalized after every
/// composing operation so the unit-norm invariant holds to 1e-9.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pose {
    /// Rotation, serialized as [w, x, y, z].
    #[serde(with = "quat_wxyz")]
    pub rotation: UnitQuaternion<f64>,
    /// Translation in meters, serialized as [x, y, z].
    #[serde(with = "vec_xyz")]
    pub translation: Vector3<f64>,
}

impl Pose {
    pub fn identity() -> Self {
        Self {
            rotation: UnitQuaternion::identity(),
            translation: Vector3::zeros(),
        }
    }

    pub fn new(rotation: UnitQuaternion<f64>, translation: Vector3<f64>) -> Self {
        Self {
            rotation: UnitQuaternion::from_quaternion(rotation.into_inner().normalize()),
            translation,
        }
    }

    /// Rotation about `axis` by `angle` radians plus a translation.
    pub fn from_axis_angle(axis: &Vector3<f64>, angle: f64, translation: Vector3<f64>) -> Self {
        Self::new(
            UnitQuaternion::from_axis_angle(&nalgebra::Unit::new_normalize(*axis), angle),
            translation,
        )
    }

    /// Composition: `self` applied after `other` (p -> self(other(p))).
    pub fn compose(&self, other: &Pose) -> Pose {
        Pose::new(
            self.rotation * other.rotation,
            self.translation + self.rotation * other.translation,
        )
    }

    pub fn inverse(&self) -> Pose {
        let r_inv = self.rotation.inverse();
        Pose::new(r_inv, -(r_inv * self.translation))
    }

    pub fn transform_point(&self, p: &Point3<f64>) -> Point3<f64> {
        self.rotation * p + self.translation
    }

    pub fn transform_vector(&self, v: &Vector3<f64>) -> Vector3<f64> {
        self.rotation * v
    }

    pub fn to_matrix(&self) -> Matrix4<f64> {
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(0, 0)
            .copy_from(self.rotation.to_rotation_matrix().matrix());
        m.fixed_view_mut::<3, 1>(0, 3).copy_from(&self.translation);
        m
    }

    /// Geodesic rotation angle to `other`, in radians.
    pub fn rotation_angle_to(&self, other: &Pose) -> f64 {
        self.rotation.angle_to(&other.rotation)
    }
}

/// Composition with `b` applied first, then `a`.
pub fn se3_compose(a: &Pose, b: &Pose) -> Pose {
    a.compose(b)
}

/// Interpolate between two poses: linear translation, spherical rotation
/// along the shortest geodesic. `u = 0` returns `a`, `u = 1` returns `b`.
pub fn se3_interpolate(a: &Pose, b: &Pose, u: f64) -> Pose {
    if u <= 0.0 {
        return *a;
    }
    if u >= 1.0 {
        return *b;
    }
    let qa = a.rotation.into_inner();
    let mut qb = b.rotation.into_inner();
    // Antipodal quaternions represent the same rotation; flip the sign so the
    // interpolation follows the shorter arc.
    if qa.dot(&qb) < 0.0 {
        qb = -qb;
    }
    let rel = UnitQuaternion::from_quaternion(qa).inverse()
        * UnitQuaternion::from_quaternion(qb.normalize());
    let rot = UnitQuaternion::from_quaternion(qa) * so3::exp(&(so3::log(&rel) * u));
    Pose::new(rot, a.translation.lerp(&b.translation, u))
}

mod quat_wxyz {
    use nalgebra::{Quaternion, UnitQuaternion};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(q: &UnitQuaternion<f64>, s: S) -> Result<S::Ok, S::Error> {
        [q.w, q.i, q.j, q.k].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<UnitQuaternion<f64>, D::Error> {
        let [w, x, y, z] = <[f64; 4]>::deserialize(d)?;
        let q = Quaternion::new(w, x, y, z);
        if q.norm() < 1e-12 {
            return Err(serde::de::Error::custom("zero-norm quaternion"));
        }
        Ok(UnitQuaternion::from_quaternion(q))
    }
}

mod vec_xyz {
    use nalgebra::Vector3;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Vector3<f64>, s: S) -> Result<S::Ok, S::Error> {
        [v.x, v.y, v.z].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vector3<f64>, D::Error> {
        let [x, y, z] = <[f64; 3]>::deserialize(d)?;
        Ok(Vector3::new(x, y, z))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::Matrix4;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_pose(rng: &mut impl Rng) -> Pose {
        let axis = Vector3::new(
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        );
        let axis = if axis.norm() < 1e-6 {
            Vector3::x()
        } else {
            axis
        };
        Pose::from_axis_angle(
            &axis,
            rng.gen_range(-3.0..3.0),
            Vector3::new(
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ),
        )
    }

    #[test]
    fn identity_compose_identity() {
        let id = Pose::identity();
        let c = se3_compose(&id, &id);
        assert_relative_eq!(c.translation, Vector3::zeros(), epsilon = 1e-15);
        assert!(c.rotation.angle() < 1e-15);
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let p = random_pose(&mut rng);
            let c = se3_compose(&p, &p.inverse());
            assert!(c.rotation.angle() < 1e-9);
            assert!(c.translation.norm() < 1e-9);
            assert!((c.rotation.into_inner().norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn compose_matches_homogeneous_matrix_oracle() {
        // Spec example: (Rz(90deg), [1,0,0]) o (I, [0,1,0]).
        let a = Pose::from_axis_angle(
            &Vector3::z(),
            std::f64::consts::FRAC_PI_2,
            Vector3::new(1.0, 0.0, 0.0),
        );
        let b = Pose::new(UnitQuaternion::identity(), Vector3::new(0.0, 1.0, 0.0));
        let c = se3_compose(&a, &b);
        assert_relative_eq!(c.translation, Vector3::new(0.0, 1.0, 0.0), epsilon = 1e-12);

        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let a = random_pose(&mut rng);
            let b = random_pose(&mut rng);
            let c = se3_compose(&a, &b);
            let m: Matrix4<f64> = a.to_matrix() * b.to_matrix();
            assert_relative_eq!(c.to_matrix(), m, epsilon = 1e-9);
        }
    }

    #[test]
    fn interpolate_endpoints_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = random_pose(&mut rng);
            let b = random_pose(&mut rng);
            let at0 = se3_interpolate(&a, &b, 0.0);
            let at1 = se3_interpolate(&a, &b, 1.0);
            assert!(at0.rotation.angle_to(&a.rotation) <= 1e-12);
            assert!(at1.rotation.angle_to(&b.rotation) <= 1e-12);
            assert_relative_eq!(at0.translation, a.translation, epsilon = 1e-12);
            assert_relative_eq!(at1.translation, b.translation, epsilon = 1e-12);
        }
    }

    #[test]
    fn interpolate_same_pose_is_fixed_point() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = random_pose(&mut rng);
        let mid = se3_interpolate(&p, &p, 0.5);
        assert!(mid.rotation.angle_to(&p.rotation) < 1e-12);
        assert_relative_eq!(mid.translation, p.translation, epsilon = 1e-12);
    }

    #[test]
    fn interpolate_halfway_rotation() {
        let a = Pose::identity();
        let b = Pose::from_axis_angle(&Vector3::z(), std::f64::consts::FRAC_PI_2, Vector3::zeros());
        let mid = se3_interpolate(&a, &b, 0.5);
        assert!((mid.rotation.angle() - std::f64::consts::FRAC_PI_4).abs() < 1e-9);
    }

    /// Closed-form slerp: q(u) = (sin((1-u)t) q0 + sin(ut) q1) / sin(t).
    fn slerp_oracle(a: &Pose, b: &Pose, u: f64) -> UnitQuaternion<f64> {
        let q0 = a.rotation.into_inner();
        let mut q1 = b.rotation.into_inner();
        if q0.dot(&q1) < 0.0 {
            q1 = -q1;
        }
        let cos_t = q0.dot(&q1).clamp(-1.0, 1.0);
        let t = cos_t.acos();
        if t < 1e-9 {
            return a.rotation;
        }
        let q = (q0 * ((1.0 - u) * t).sin() + q1 * (u * t).sin()) / t.sin();
        UnitQuaternion::from_quaternion(q)
    }

    #[test]
    fn interpolate_matches_slerp_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            let a = random_pose(&mut rng);
            let b = random_pose(&mut rng);
            let u = 0.25;
            let got = se3_interpolate(&a, &b, u);
            let want = slerp_oracle(&a, &b, u);
            assert!(got.rotation.angle_to(&want) < 1e-9);
            let want_t = a.translation * (1.0 - u) + b.translation * u;
            assert_relative_eq!(got.translation, want_t, epsilon = 1e-12);
        }
    }

    #[test]
    fn pose_serde_round_trip() {
        let p = Pose::from_axis_angle(&Vector3::y(), 0.7, Vector3::new(1.0, 2.0, 3.0));
        let s = serde_json::to_string(&p).unwrap();
        let q: Pose = serde_json::from_str(&s).unwrap();
        assert!(p.rotation.angle_to(&q.rotation) < 1e-12);
        assert_relative_eq!(p.translation, q.translation, epsilon = 1e-12);
    }
}
