//! How the safety factor phi reshapes the map around a fixed fire.

use thermal_nav::fire::{FireEstimate, RadiationConstants};
use thermal_nav::grid::GridSpec;
use thermal_nav::occupancy::{build_map, RobotParams};
use thermal_nav::radiation::{safe_distance, DangerThreshold};

fn main() -> thermal_nav::Result<()> {
    let consts = RadiationConstants::default();
    let spec = GridSpec::new([0.0, 0.0], 0.1, 80, 80)?;
    let area = spec.resolution * spec.resolution;
    println!("{:>5} {:>9} {:>11} {:>13} {:>13}", "r_f", "phi", "q_danger", "lethal (m²)", "band (m²)");
    for r in [0.25, 0.342, 0.45] {
        let fire = FireEstimate::from_footprint([4.0, 4.0, 0.0], r, &consts, 0)?;
        for phi in [0.5, 1.0, 2.0, 4.0] {
            let danger = DangerThreshold::new(phi)?;
            let occ = build_map(&spec, &[], &RobotParams::at([0.5, 0.5]), Some(&fire), &danger, &consts)?;
            let lethal = spec.cells().filter(|&c| occ.is_lethal(c)).count() as f64 * area;
            let band = spec
                .cells()
                .filter(|&c| occ.at(c) > 0.1 && occ.at(c) < 1.0)
                .count() as f64
                * area;
            println!(
                "{r:>5} {phi:>9} {:>11.3} {lethal:>13.2} {band:>13.2}   r* = {:.2} m",
                danger.q_danger(),
                safe_distance(fire.power, danger.q_danger(), &consts)
            );
        }
    }
    Ok(())
}
