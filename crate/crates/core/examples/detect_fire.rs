//! Clusters hot points and estimates the fire's footprint and power.
//!
//!     cargo run --example detect_fire -- fixtures/hot_fire.tcloud

use thermal_nav::fire::{detect_fire, DbscanParams, RadiationConstants};
use thermal_nav::geometry::load_cloud;

fn main() -> thermal_nav::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/hot_fire.tcloud").into());
    let cloud = load_cloud(&path)?;
    let consts = RadiationConstants::default();
    match detect_fire(&cloud, &consts, &DbscanParams::default()) {
        Some(fire) => {
            let [x, y, z] = fire.center;
            println!("fire at ({x:.3}, {y:.3}, {z:.3}) from {} hot points", fire.cluster_size);
            println!("footprint radius {:.3} m, area {:.3} m²", fire.footprint_radius, fire.area);
            println!("emitted power {:.1} kW", fire.power / 1e3);
        }
        None => println!("no fire in {path}"),
    }
    Ok(())
}
