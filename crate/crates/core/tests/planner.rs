mod common;

use common::{dijkstra_oracle, random_free_cell, random_occupancy};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thermal_nav::grid::GridSpec;
use thermal_nav::planner::{astar, dijkstra, make_cost_map, path_cost};

#[test]
fn astar_matches_float_oracle() {
    let spec = GridSpec::new([0.0, 0.0], 0.1, 24, 24).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x91a7);
    let mut solved = 0;
    for _ in 0..60 {
        let occ = random_occupancy(&mut rng, spec);
        let cm = make_cost_map(&occ, 10.0).unwrap();
        let (Some(s), Some(g)) = (random_free_cell(&mut rng, &cm), random_free_cell(&mut rng, &cm)) else {
            continue;
        };
        let got = astar(&cm, s, g).unwrap();
        let want = dijkstra_oracle(&cm, s, g);
        match (got, want) {
            (Some(p), Some(w)) => {
                solved += 1;
                // Costs are quantized to 1e-6 per cell.
                assert!((p.total_cost - w).abs() <= 1e-5 * p.moves().max(1) as f64, "{} {w}", p.total_cost);
                assert!((path_cost(&cm, &p.cells) - w).abs() <= 1e-5 * p.moves().max(1) as f64);
                assert_eq!(p.cells.first(), Some(&s));
                assert_eq!(p.cells.last(), Some(&g));
                assert!(p.cells.iter().all(|&c| cm.is_passable(c)));
            }
            (None, None) => {}
            (got, want) => panic!("reachability differs: {got:?} vs {want:?}"),
        }
    }
    assert!(solved > 20);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn astar_equals_dijkstra_exactly(seed in any::<u64>(), beta in 0.0f64..20.0) {
        let spec = GridSpec::new([0.0, 0.0], 0.1, 30, 30).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let occ = random_occupancy(&mut rng, spec);
        let cm = make_cost_map(&occ, beta).unwrap();
        let (Some(s), Some(g)) = (random_free_cell(&mut rng, &cm), random_free_cell(&mut rng, &cm)) else {
            return Ok(());
        };
        let a = astar(&cm, s, g).unwrap().map(|p| p.total_cost);
        let d = dijkstra(&cm, s, g).unwrap().map(|p| p.total_cost);
        prop_assert_eq!(a, d);
    }

    #[test]
    fn steps_are_unit_moves(seed in any::<u64>()) {
        let spec = GridSpec::new([0.0, 0.0], 0.1, 20, 20).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let occ = random_occupancy(&mut rng, spec);
        let cm = make_cost_map(&occ, 5.0).unwrap();
        let (Some(s), Some(g)) = (random_free_cell(&mut rng, &cm), random_free_cell(&mut rng, &cm)) else {
            return Ok(());
        };
        if let Some(p) = astar(&cm, s, g).unwrap() {
            for w in p.cells.windows(2) {
                prop_assert!(w[0].x.abs_diff(w[1].x) <= 1 && w[0].y.abs_diff(w[1].y) <= 1 && w[0] != w[1]);
            }
        }
    }
}
