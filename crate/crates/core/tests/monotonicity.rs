mod common;

use common::random_obstacles;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thermal_nav::fire::{FireEstimate, RadiationConstants};
use thermal_nav::grid::{Cell, GridSpec};
use thermal_nav::occupancy::{blend, ObstacleGrid, OccupancyGrid};
use thermal_nav::radiation::{fill_thermal_grid, DangerThreshold};

fn occupancy(obstacles: &ObstacleGrid, fire: &FireEstimate, phi: f64) -> OccupancyGrid {
    let consts = RadiationConstants::default();
    let thermal = fill_thermal_grid(obstacles.spec(), obstacles, fire, &consts).unwrap();
    blend(obstacles, &thermal, &DangerThreshold::new(phi).unwrap()).unwrap()
}

fn set(occ: &OccupancyGrid, pred: impl Fn(f64) -> bool) -> Vec<Cell> {
    occ.spec().cells().filter(|&c| pred(occ.at(c))).collect()
}

fn subset(a: &[Cell], b: &[Cell]) -> bool {
    let b: std::collections::HashSet<_> = b.iter().collect();
    a.iter().all(|c| b.contains(c))
}

#[test]
fn lethal_set_grows_with_phi() {
    let spec = GridSpec::new([0.0, 0.0], 0.1, 80, 80).unwrap();
    let consts = RadiationConstants::default();
    let fire = FireEstimate::from_area([4.0, 4.0, 0.0], 0.735, &consts).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for obstacles in [ObstacleGrid::empty(spec), random_obstacles(&mut rng, spec)] {
        let lethal: Vec<Vec<Cell>> = [0.5, 1.0, 2.0]
            .iter()
            .map(|&phi| set(&occupancy(&obstacles, &fire, phi), |o| o >= 1.0))
            .collect();
        assert!(subset(&lethal[0], &lethal[1]));
        assert!(subset(&lethal[1], &lethal[2]));
        assert!(lethal[0].len() < lethal[2].len());
    }
}

#[test]
fn blue_band_and_lethal_disc_grow_with_footprint() {
    let spec = GridSpec::new([0.0, 0.0], 0.1, 80, 80).unwrap();
    let consts = RadiationConstants::default();
    let obstacles = ObstacleGrid::empty(spec);
    let mut prev: Option<(Vec<Cell>, Vec<Cell>)> = None;
    for r in [0.2, 0.3, 0.342, 0.45] {
        let fire = FireEstimate::from_footprint([4.0, 4.0, 0.0], r, &consts, 1).unwrap();
        let occ = occupancy(&obstacles, &fire, 1.0);
        let band = set(&occ, |o| o > 0.1);
        let lethal = set(&occ, |o| o >= 1.0);
        if let Some((pb, pl)) = &prev {
            assert!(subset(pb, &band));
            assert!(subset(pl, &lethal));
        }
        prev = Some((band, lethal));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn occupancy_pointwise_nondecreasing_in_phi(seed in any::<u64>(), p1 in 0.05f64..4.0, p2 in 0.05f64..4.0) {
        let spec = GridSpec::new([0.0, 0.0], 0.1, 40, 40).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let obstacles = random_obstacles(&mut rng, spec);
        let fire = common::fire_with_power([2.0, 2.0], 60_000.0);
        let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        let a = occupancy(&obstacles, &fire, lo);
        let b = occupancy(&obstacles, &fire, hi);
        for c in spec.cells() {
            prop_assert!(a.at(c) <= b.at(c));
        }
    }
}
