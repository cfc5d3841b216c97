//! Builds an occupancy map from a cloud and writes it as a PGM.
//!
//!     cargo run --example occupancy_map -- fixtures/hot_fire.tcloud map.pgm

use thermal_nav::fire::{detect_fire, DbscanParams, RadiationConstants};
use thermal_nav::geometry::load_cloud;
use thermal_nav::grid::GridSpec;
use thermal_nav::occupancy::{build_map_layers, RobotParams};
use thermal_nav::radiation::DangerThreshold;
use thermal_nav::raster::{mark_fire, occupancy_levels, save_pgm8};

fn main() -> thermal_nav::Result<()> {
    let mut args = std::env::args().skip(1);
    let cloud_path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/hot_fire.tcloud").into());
    let out = args.next().unwrap_or_else(|| "occupancy.pgm".into());

    let cloud = load_cloud(&cloud_path)?;
    let consts = RadiationConstants::default();
    let fire = detect_fire(&cloud, &consts, &DbscanParams::default());
    let spec = GridSpec::default();
    let layers = build_map_layers(
        &spec,
        &[cloud],
        &RobotParams::at([9.0, 9.0]),
        fire.as_ref(),
        &DangerThreshold::new(1.0)?,
        &consts,
    )?;
    let lethal = spec.cells().filter(|&c| layers.occupancy.is_lethal(c)).count();
    let graded = spec
        .cells()
        .filter(|&c| (0.1..1.0).contains(&layers.occupancy.at(c)))
        .count();
    println!("{} obstacle cells, {lethal} lethal, {graded} in the 0.1..1 band", layers.obstacles.count());

    let mut img = occupancy_levels(&layers.occupancy);
    if let Some(f) = &fire {
        mark_fire(&mut img, f);
    }
    save_pgm8(&img, &out)?;
    println!("wrote {out}");
    Ok(())
}
