//! Plans around a fire for several values of beta and compares A* with
//! Dijkstra.

use thermal_nav::fire::{FireEstimate, RadiationConstants};
use thermal_nav::grid::{Cell, GridSpec};
use thermal_nav::occupancy::{build_map, RobotParams};
use thermal_nav::planner::{astar, dijkstra, make_cost_map};
use thermal_nav::radiation::DangerThreshold;

fn main() -> thermal_nav::Result<()> {
    let consts = RadiationConstants::default();
    let spec = GridSpec::new([0.0, 0.0], 0.1, 100, 60)?;
    let fire = FireEstimate::from_area([5.0, 3.0, 0.0], 0.735, &consts)?;
    let occ = build_map(&spec, &[], &RobotParams::at([1.0, 3.0]), Some(&fire), &DangerThreshold::new(1.0)?, &consts)?;
    let (start, goal) = (Cell::new(5, 30), Cell::new(95, 30));

    println!("{:>6} {:>9} {:>9} {:>10} {:>12}", "beta", "cost", "length", "exposure", "closest (m)");
    for beta in [0.0, 1.0, 10.0, 50.0] {
        let cm = make_cost_map(&occ, beta)?;
        let Some(path) = astar(&cm, start, goal)? else {
            println!("{beta:>6} no path");
            continue;
        };
        let reference = dijkstra(&cm, start, goal)?.expect("same reachability");
        assert_eq!(path.total_cost, reference.total_cost);
        let closest = path
            .world_points
            .iter()
            .map(|p| (p[0] - 5.0).hypot(p[1] - 3.0))
            .fold(f64::INFINITY, f64::min);
        println!(
            "{beta:>6} {:>9.3} {:>9.3} {:>10.3} {:>12.3}",
            path.total_cost,
            path.length() * spec.resolution,
            path.exposure(&occ),
            closest
        );
    }
    Ok(())
}
