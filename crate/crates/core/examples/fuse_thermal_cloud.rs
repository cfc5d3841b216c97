//! Projects a synthetic depth cloud into a thermal camera and tags every
//! point with the temperature it sees.

use thermal_nav::geometry::{annotate_cloud, write_cloud, CameraIntrinsics, RigidTransform, ThermalCloud, ThermalImage, ThermalPoint};
use thermal_nav::nalgebra::Vector3;

fn main() -> thermal_nav::Result<()> {
    let intr = CameraIntrinsics::new(100.0, 100.0, 80.0, 60.0, 160, 120)?;
    // Thermal camera 5 cm to the right of the depth camera, same orientation.
    let depth_to_thermal = RigidTransform::from_axis_angle(Vector3::z(), 0.0, Vector3::new(-0.05, 0.0, 0.0));

    // A hot patch in the middle of the image.
    let temps: Vec<f64> = (0..120)
        .flat_map(|row| {
            (0..160).map(move |col| {
                let (dx, dy) = (col as f64 - 80.0, row as f64 - 60.0);
                if dx.hypot(dy) < 15.0 { 455.0 } else { 293.15 }
            })
        })
        .collect();
    let image = ThermalImage::new(160, 120, temps, 465.65)?;

    let points = (-3..=3)
        .flat_map(|i| (-2..=2).map(move |j| ThermalPoint::new(i as f64 * 0.2, j as f64 * 0.2, 2.0)))
        .chain([ThermalPoint::new(0.0, 0.0, -1.0)])
        .collect();
    let cloud = ThermalCloud::new(points, "depth")?;
    let annotated = annotate_cloud(&cloud, &image, &depth_to_thermal, &intr)?;

    let hot = annotated.points().iter().filter(|p| p.temperature.is_some_and(|t| t > 373.15)).count();
    let unseen = annotated.points().iter().filter(|p| p.temperature.is_none()).count();
    println!("{} points, {hot} hot, {unseen} outside the thermal view", annotated.len());
    write_cloud(&annotated, std::io::stdout().lock())
}
