//! Thermal-depth fusion: camera model, rigid transforms, temperature
//! annotation of depth points and the point-cloud / calibration file formats.

mod calibration;
mod camera;
mod cloud;
mod transform;

pub use calibration::Calibration;
pub use camera::{project_point, CameraIntrinsics};
pub use cloud::{annotate_cloud, load_cloud, read_cloud, save_cloud, write_cloud, ThermalCloud, ThermalImage, ThermalPoint};
pub use transform::RigidTransform;
