use nalgebra::{Matrix3, Rotation3, Vector3};

use crate::error::{Error, Result};

const ORTHONORMAL_TOL: f64 = 1e-6;

/// Proper rigid-body motion `p' = R p + t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidTransform {
    rotation: Matrix3<f64>,
    translation: Vector3<f64>,
}

impl Default for RigidTransform {
    fn default() -> Self {
        Self::identity()
    }
}

impl RigidTransform {
    pub fn identity() -> Self {
        Self {
            rotation: Matrix3::identity(),
            translation: Vector3::zeros(),
        }
    }

    /// Fails unless `rotation` is orthonormal with determinant +1 (to 1e-6).
    pub fn new(rotation: Matrix3<f64>, translation: Vector3<f64>) -> Result<Self> {
        if !rotation.iter().chain(translation.iter()).all(|v| v.is_finite()) {
            return Err(Error::config("rigid transform has non-finite entries"));
        }
        let gram_err = (rotation.transpose() * rotation - Matrix3::identity()).amax();
        let det = rotation.determinant();
        if gram_err > ORTHONORMAL_TOL || (det - 1.0).abs() > ORTHONORMAL_TOL {
            return Err(Error::config(format!(
                "rotation is not proper orthonormal (|RᵀR - I| = {gram_err:.3e}, det = {det:.6})"
            )));
        }
        Ok(Self {
            rotation,
            translation,
        })
    }

    /// Rotation about `axis` by `angle` radians followed by `translation`.
    pub fn from_axis_angle(axis: Vector3<f64>, angle: f64, translation: Vector3<f64>) -> Self {
        let rotation = if axis.norm() == 0.0 {
            Matrix3::identity()
        } else {
            *Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(axis), angle).matrix()
        };
        Self {
            rotation,
            translation,
        }
    }

    /// Row-major rotation followed by translation, the layout used in
    /// calibration files.
    pub fn from_row_major(values: &[f64; 12]) -> Result<Self> {
        let rotation = Matrix3::from_row_slice(&values[..9]);
        let translation = Vector3::new(values[9], values[10], values[11]);
        Self::new(rotation, translation)
    }

    pub fn to_row_major(&self) -> [f64; 12] {
        let mut out = [0.0; 12];
        for r in 0..3 {
            for c in 0..3 {
                out[r * 3 + c] = self.rotation[(r, c)];
            }
        }
        out[9..].copy_from_slice(self.translation.as_slice());
        out
    }

    pub fn rotation(&self) -> &Matrix3<f64> {
        &self.rotation
    }

    pub fn translation(&self) -> &Vector3<f64> {
        &self.translation
    }

    #[inline]
    pub fn apply(&self, p: &Vector3<f64>) -> Vector3<f64> {
        self.rotation * p + self.translation
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &RigidTransform) -> RigidTransform {
        RigidTransform {
            rotation: self.rotation * other.rotation,
            translation: self.rotation * other.translation + self.translation,
        }
    }

    pub fn inverse(&self) -> RigidTransform {
        let rt = self.rotation.transpose();
        RigidTransform {
            rotation: rt,
            translation: -(rt * self.translation),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_transform() -> impl Strategy<Value = RigidTransform> {
        (
            prop::array::uniform3(-1.0f64..1.0),
            -6.3f64..6.3,
            prop::array::uniform3(-10.0f64..10.0),
        )
            .prop_filter("non-degenerate axis", |(a, _, _)| {
                a.iter().map(|v| v * v).sum::<f64>() > 1e-3
            })
            .prop_map(|(axis, angle, t)| {
                RigidTransform::from_axis_angle(Vector3::from(axis), angle, Vector3::from(t))
            })
    }

    #[test]
    fn rejects_reflection_and_scale() {
        let mut reflect = Matrix3::identity();
        reflect[(2, 2)] = -1.0;
        assert!(RigidTransform::new(reflect, Vector3::zeros()).is_err());
        assert!(RigidTransform::new(Matrix3::identity() * 1.01, Vector3::zeros()).is_err());
        assert!(RigidTransform::new(Matrix3::identity(), Vector3::new(f64::NAN, 0.0, 0.0)).is_err());
    }

    #[test]
    fn row_major_layout() {
        let t = RigidTransform::from_axis_angle(Vector3::z(), std::f64::consts::FRAC_PI_2, Vector3::new(1.0, 2.0, 3.0));
        let back = RigidTransform::from_row_major(&t.to_row_major()).unwrap();
        assert_eq!(t, back);
        // +90° about z sends x to y.
        let p = t.apply(&Vector3::x());
        assert!((p - Vector3::new(1.0, 3.0, 3.0)).norm() < 1e-12);
    }

    proptest! {
        #[test]
        fn compose_with_inverse_is_identity(t in arb_transform()) {
            let id = t.compose(&t.inverse());
            prop_assert!((id.rotation - Matrix3::identity()).amax() < 1e-9);
            prop_assert!(id.translation.amax() < 1e-9);
        }

        #[test]
        fn preserves_distances(
            t in arb_transform(),
            a in prop::array::uniform3(-50.0f64..50.0),
            b in prop::array::uniform3(-50.0f64..50.0),
        ) {
            let (a, b) = (Vector3::from(a), Vector3::from(b));
            let d0 = (a - b).norm();
            let d1 = (t.apply(&a) - t.apply(&b)).norm();
            prop_assert!((d0 - d1).abs() < 1e-9);
        }

        #[test]
        fn composition_is_closed(s in arb_transform(), t in arb_transform()) {
            let c = s.compose(&t);
            prop_assert!(RigidTransform::new(c.rotation, c.translation).is_ok());
        }
    }
}
