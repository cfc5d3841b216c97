use nalgebra::Vector3;

use crate::error::{Error, Result};

/// Pinhole intrinsics of the thermal camera with an even-powered radial
/// distortion polynomial applied in normalized image coordinates:
/// `x_d = x (1 + k1 r² + k2 r⁴ + ...)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CameraIntrinsics {
    pub fx: f64,
    pub fy: f64,
    pub cx: f64,
    pub cy: f64,
    pub width: usize,
    pub height: usize,
    pub distortion: Vec<f64>,
}

impl CameraIntrinsics {
    pub fn new(fx: f64, fy: f64, cx: f64, cy: f64, width: usize, height: usize) -> Result<Self> {
        Self::with_distortion(fx, fy, cx, cy, width, height, Vec::new())
    }

    pub fn with_distortion(
        fx: f64,
        fy: f64,
        cx: f64,
        cy: f64,
        width: usize,
        height: usize,
        distortion: Vec<f64>,
    ) -> Result<Self> {
        let intr = Self {
            fx,
            fy,
            cx,
            cy,
            width,
            height,
            distortion,
        };
        intr.validate()?;
        Ok(intr)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.fx > 0.0 && self.fy > 0.0) || !self.fx.is_finite() || !self.fy.is_finite() {
            return Err(Error::config(format!(
                "focal lengths must be positive, got fx={} fy={}",
                self.fx, self.fy
            )));
        }
        if !(self.cx >= 0.0 && self.cx < self.width as f64) {
            return Err(Error::config(format!(
                "cx={} outside [0, {})",
                self.cx, self.width
            )));
        }
        if !(self.cy >= 0.0 && self.cy < self.height as f64) {
            return Err(Error::config(format!(
                "cy={} outside [0, {})",
                self.cy, self.height
            )));
        }
        if !self.distortion.iter().all(|k| k.is_finite()) {
            return Err(Error::config("distortion coefficients must be finite"));
        }
        Ok(())
    }

    fn radial_factor(&self, r2: f64) -> f64 {
        let mut factor = 1.0;
        let mut power = r2;
        for k in &self.distortion {
            factor += k * power;
            power *= r2;
        }
        factor
    }

    /// Normalized, undistorted ray direction through pixel `(u, v)` scaled
    /// to depth `z`.
    pub fn backproject(&self, u: f64, v: f64, z: f64) -> Vector3<f64> {
        let xd = (u - self.cx) / self.fx;
        let yd = (v - self.cy) / self.fy;
        // Fixed-point inversion of the radial polynomial.
        let (mut x, mut y) = (xd, yd);
        if !self.distortion.is_empty() {
            for _ in 0..50 {
                let f = self.radial_factor(x * x + y * y);
                let (nx, ny) = (xd / f, yd / f);
                let done = (nx - x).abs() < 1e-15 && (ny - y).abs() < 1e-15;
                x = nx;
                y = ny;
                if done {
                    break;
                }
            }
        }
        Vector3::new(x * z, y * z, z)
    }
}

/// Projects a camera-frame point to pixel coordinates.
///
/// `None` when the point is not in front of the camera or lands outside
/// `[0, width) x [0, height)`.
pub fn project_point(p: &Vector3<f64>, intr: &CameraIntrinsics) -> Option<(f64, f64)> {
    if !(p.z > 0.0) {
        return None;
    }
    let x = p.x / p.z;
    let y = p.y / p.z;
    let f = intr.radial_factor(x * x + y * y);
    let u = intr.fx * x * f + intr.cx;
    let v = intr.fy * y * f + intr.cy;
    let inside = u >= 0.0 && u < intr.width as f64 && v >= 0.0 && v < intr.height as f64;
    inside.then_some((u, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn intr() -> CameraIntrinsics {
        CameraIntrinsics::new(100.0, 100.0, 80.0, 60.0, 160, 120).unwrap()
    }

    #[test]
    fn optical_axis_hits_principal_point() {
        assert_eq!(project_point(&Vector3::new(0.0, 0.0, 2.0), &intr()), Some((80.0, 60.0)));
    }

    #[test]
    fn behind_camera_is_none() {
        assert_eq!(project_point(&Vector3::new(0.0, 0.0, -1.0), &intr()), None);
        assert_eq!(project_point(&Vector3::new(0.0, 0.0, 0.0), &intr()), None);
    }

    #[test]
    fn off_axis_point() {
        // u = 100 * 0.5 / 2 + 80 = 105, v = 100 * 0.25 / 2 + 60 = 72.5
        let (u, v) = project_point(&Vector3::new(0.5, 0.25, 2.0), &intr()).unwrap();
        assert_eq!((u, v), (105.0, 72.5));
    }

    #[test]
    fn out_of_frame_is_none() {
        assert_eq!(project_point(&Vector3::new(5.0, 0.0, 1.0), &intr()), None);
    }

    #[test]
    fn distortion_moves_points_outward_for_positive_k1() {
        let d = CameraIntrinsics::with_distortion(100.0, 100.0, 80.0, 60.0, 160, 120, vec![0.1]).unwrap();
        // x = 0.25, r² = 0.0625, factor = 1.00625
        let (u, _) = project_point(&Vector3::new(0.5, 0.0, 2.0), &d).unwrap();
        assert!((u - (80.0 + 25.0 * 1.00625)).abs() < 1e-12);
        let p = d.backproject(u, 60.0, 2.0);
        assert!((p.x - 0.5).abs() < 1e-9);
    }

    #[test]
    fn invalid_intrinsics() {
        assert!(CameraIntrinsics::new(0.0, 100.0, 80.0, 60.0, 160, 120).is_err());
        assert!(CameraIntrinsics::new(100.0, 100.0, 160.0, 60.0, 160, 120).is_err());
        assert!(CameraIntrinsics::new(100.0, 100.0, 80.0, -1.0, 160, 120).is_err());
    }

    proptest! {
        #[test]
        fn backproject_then_project(u in 0.0f64..159.9, v in 0.0f64..119.9, z in 0.05f64..50.0) {
            let i = intr();
            let (pu, pv) = project_point(&i.backproject(u, v, z), &i).unwrap();
            prop_assert!((pu - u).abs() < 1e-6 && (pv - v).abs() < 1e-6);
        }
    }
}
