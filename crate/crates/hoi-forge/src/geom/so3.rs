//! SO(3) tangent-space helpers: exponential/logarithm maps and the right
//! Jacobian used to differentiate losses through rotation parameters.

use nalgebra::{Matrix3, UnitQuaternion, Vector3};

/// Skew-symmetric cross-product matrix `[v]x`.
pub fn hat(v: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -v.z, v.y, v.z, 0.0, -v.x, -v.y, v.x, 0.0)
}

/// Exponential map from an axis-angle vector to a unit quaternion.
pub fn exp(omega: &Vector3<f64>) -> UnitQuaternion<f64> {
    let angle = omega.norm();
    if angle < 1e-12 {
        // First-order expansion keeps the map smooth through zero.
        UnitQuaternion::from_quaternion(
            nalgebra::Quaternion::new(1.0, omega.x * 0.5, omega.y * 0.5, omega.z * 0.5)
                .normalize(),
        )
    } else {
        UnitQuaternion::from_axis_angle(&nalgebra::Unit::new_normalize(*omega), angle)
    }
}

/// Logarithm map from a unit quaternion to an axis-angle vector in (-pi, pi].
pub fn log(q: &UnitQuaternion<f64>) -> Vector3<f64> {
    match q.axis_angle() {
        Some((axis, angle)) => axis.into_inner() * angle,
        None => Vector3::zeros(),
    }
}

/// Geodesic angle between two rotations, in radians.
pub fn geodesic_angle(a: &UnitQuaternion<f64>, b: &UnitQuaternion<f64>) -> f64 {
    a.angle_to(b)
}

/// Right Jacobian of SO(3): exp(theta + d) = exp(theta) * exp(Jr(theta) d).
pub fn right_jacobian(theta: &Vector3<f64>) -> Matrix3<f64> {
    let angle = theta.norm();
    let k = hat(theta);
    if angle < 1e-6 {
        Matrix3::identity() - 0.5 * k + (k * k) / 6.0
    } else {
        let a2 = angle * angle;
        Matrix3::identity() - ((1.0 - angle.cos()) / a2) * k
            + ((angle - angle.sin()) / (a2 * angle)) * (k * k)
    }
}

/// Inverse of the right Jacobian: log(exp(a) exp(d)) = a + Jr(a)^-1 d + O(d^2).
pub fn right_jacobian_inv(theta: &Vector3<f64>) -> Matrix3<f64> {
    let angle = theta.norm();
    let k = hat(theta);
    if angle < 1e-6 {
        Matrix3::identity() + 0.5 * k + (k * k) / 12.0
    } else {
        let a2 = angle * angle;
        let coeff = 1.0 / a2 - (1.0 + angle.cos()) / (2.0 * angle * angle.sin());
        Matrix3::identity() + 0.5 * k + coeff * (k * k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn sample_vectors() -> Vec<Vector3<f64>> {
        vec![
            Vector3::new(0.0, 0.0, 0.0),
            Vector3::new(1e-9, 0.0, 0.0),
            Vector3::new(0.3, -0.2, 0.5),
            Vector3::new(-1.0, 2.0, 0.7),
            Vector3::new(3.0, -0.1, 0.2),
        ]
    }

    #[test]
    fn exp_log_round_trip() {
        for v in sample_vectors() {
            let q = exp(&v);
            let back = log(&q);
            // log returns the principal value; inputs above stay below pi.
            if v.norm() < std::f64::consts::PI {
                assert_relative_eq!(v, back, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn right_jacobian_matches_finite_differences() {
        let h = 1e-6;
        for theta in sample_vectors() {
            if theta.norm() > 3.0 {
                continue;
            }
            let jr = right_jacobian(&theta);
            // exp(theta + h e_i) vs exp(theta) exp(Jr h e_i)
            for i in 0..3 {
                let mut dt = Vector3::zeros();
                dt[i] = h;
                let lhs = exp(&(theta + dt));
                let rhs = exp(&theta) * exp(&(jr * dt));
                assert!(lhs.angle_to(&rhs) < 1e-10, "column {i} theta {theta:?}");
            }
        }
    }

    #[test]
    fn right_jacobian_inverse_is_inverse() {
        for theta in sample_vectors() {
            let prod = right_jacobian(&theta) * right_jacobian_inv(&theta);
            assert_relative_eq!(prod, Matrix3::identity(), epsilon = 1e-8);
        }
    }
}
