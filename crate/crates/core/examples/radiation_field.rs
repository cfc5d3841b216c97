//! Heat flux around a fire, with a wall casting a radiation shadow.

use thermal_nav::fire::{FireEstimate, RadiationConstants};
use thermal_nav::grid::{Cell, Grid, GridSpec};
use thermal_nav::occupancy::ObstacleGrid;
use thermal_nav::radiation::{fill_thermal_grid, flux_at, safe_distance, DangerThreshold};

fn main() -> thermal_nav::Result<()> {
    let consts = RadiationConstants::default();
    let fire = FireEstimate::from_area([2.0, 2.0, 0.0], 0.735, &consts)?;
    println!("P = {:.1} kW", fire.power / 1e3);
    for r in [0.45, 1.0, 2.0] {
        println!("flux at {r:.2} m: {:.2} kW/m²", flux_at(fire.power, r, &consts)?);
    }
    for phi in [0.5, 1.0, 2.0] {
        let q = DangerThreshold::new(phi)?.q_danger();
        println!("phi {phi}: q_danger {q:.2} kW/m², safe beyond {:.3} m", safe_distance(fire.power, q, &consts));
    }

    let spec = GridSpec::new([0.0, 0.0], 0.1, 40, 40)?;
    let wall = Grid::from_fn(spec, |c| c.x == 28 && (10..30).contains(&c.y));
    let field = fill_thermal_grid(&spec, &ObstacleGrid::from_grid(wall.clone()), &fire, &consts)?;
    let q = DangerThreshold::new(1.0)?.q_danger();
    println!("\n# wall, X above q_danger, + above q/4, . lit, blank shadow");
    for y in (0..spec.height).rev() {
        let row: String = (0..spec.width)
            .map(|x| {
                let c = Cell::new(x, y);
                let t = field.at(c);
                if wall[c] {
                    '#'
                } else if t >= q {
                    'X'
                } else if t >= q / 4.0 {
                    '+'
                } else if t > 0.0 {
                    '.'
                } else {
                    ' '
                }
            })
            .collect();
        println!("{row}");
    }
    Ok(())
}
