//! Independent oracles and random world generators shared by the
//! integration suites.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use thermal_nav::fire::{DbscanParams, FireEstimate, RadiationConstants};
use thermal_nav::grid::{Cell, Grid, GridSpec};
use thermal_nav::nalgebra::Vector3;
use thermal_nav::occupancy::{ObstacleGrid, OccupancyGrid};
use thermal_nav::planner::CostMap;

pub fn manifest_path(rel: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

/// Cluster partition as a set of sorted member sets.
pub type Partition = BTreeSet<Vec<usize>>;

/// Textbook DBSCAN over an explicit O(n²) neighbor matrix.
///
/// Core points have at least `min_samples` points (themselves included)
/// within `epsilon`. Clusters are the connected components of core points
/// under the neighbor relation. A non-core point with core neighbors joins
/// the nearest one (ties: smaller coordinates, then smaller index).
pub fn dbscan_oracle(points: &[Vector3<f64>], params: &DbscanParams) -> (Partition, Vec<usize>) {
    let n = points.len();
    let eps2 = params.epsilon * params.epsilon;
    let near = |i: usize, j: usize| (points[i] - points[j]).norm_squared() <= eps2;
    let core: Vec<bool> = (0..n)
        .map(|i| (0..n).filter(|&j| near(i, j)).count() >= params.min_samples)
        .collect();

    // Union-find over core points.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if core[i] && core[j] && near(i, j) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }

    let mut root_of: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        if core[i] {
            root_of[i] = Some(find(&mut parent, i));
        }
    }
    let mut noise = Vec::new();
    for i in 0..n {
        if core[i] {
            continue;
        }
        let mut best: Option<usize> = None;
        for j in 0..n {
            if !core[j] || !near(i, j) {
                continue;
            }
            best = Some(match best {
                None => j,
                Some(b) => {
                    let dj = (points[j] - points[i]).norm_squared();
                    let db = (points[b] - points[i]).norm_squared();
                    let key = |k: usize| (points[k].x, points[k].y, points[k].z);
                    if dj < db || (dj == db && (key(j).partial_cmp(&key(b)) == Some(std::cmp::Ordering::Less)))
                    {
                        j
                    } else {
                        b
                    }
                }
            });
        }
        match best {
            Some(j) => root_of[i] = root_of[j],
            None => noise.push(i),
        }
    }

    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for (i, r) in root_of.iter().enumerate() {
        if let Some(r) = r {
            groups.entry(*r).or_default().push(i);
        }
    }
    (groups.into_values().collect(), noise)
}

/// Random point set mixing dense blobs, lattice points (exact distance
/// ties) and scattered noise.
pub fn random_points(rng: &mut impl Rng, max_points: usize) -> Vec<Vector3<f64>> {
    let n = rng.gen_range(0..=max_points);
    let blobs: Vec<Vector3<f64>> = (0..rng.gen_range(1..5))
        .map(|_| Vector3::new(rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(0.0..2.0)))
        .collect();
    (0..n)
        .map(|_| match rng.gen_range(0..3) {
            0 => {
                let c = blobs[rng.gen_range(0..blobs.len())];
                c + Vector3::new(rng.gen_range(-0.6..0.6), rng.gen_range(-0.6..0.6), rng.gen_range(-0.3..0.3))
            }
            1 => Vector3::new(
                rng.gen_range(-8..8) as f64 * 0.25,
                rng.gen_range(-8..8) as f64 * 0.25,
                rng.gen_range(0..4) as f64 * 0.25,
            ),
            _ => Vector3::new(rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0), rng.gen_range(0.0..3.0)),
        })
        .collect()
}

/// Cells of the segment `a → b`, endpoints included, computed per major-axis
/// step with exact integer rounding (half-way cases round away from `a`).
pub fn trace_cells(a: Cell, b: Cell) -> Vec<Cell> {
    let (ax, ay, bx, by) = (a.x as i64, a.y as i64, b.x as i64, b.y as i64);
    let (dx, dy) = (bx - ax, by - ay);
    let steps = dx.abs().max(dy.abs());
    if steps == 0 {
        return vec![a];
    }
    // round(i * d / steps) with ties away from zero, in integers.
    let offset = |i: i64, d: i64| -> i64 {
        let num = 2 * i * d.abs() + steps;
        d.signum() * (num / (2 * steps))
    };
    (0..=steps)
        .map(|i| Cell::new((ax + offset(i, dx)) as usize, (ay + offset(i, dy)) as usize))
        .collect()
}

/// Whether any strictly interior cell of the canonical (lexicographically
/// ordered) trace is occupied.
pub fn occluded(obstacles: &ObstacleGrid, a: Cell, b: Cell) -> bool {
    let (s, t) = if (a.x, a.y) <= (b.x, b.y) { (a, b) } else { (b, a) };
    let cells = trace_cells(s, t);
    cells[1..cells.len().saturating_sub(1)]
        .iter()
        .any(|&c| obstacles.is_occupied(c))
}

/// Random axis-aligned blocks and thin walls.
pub fn random_obstacles(rng: &mut impl Rng, spec: GridSpec) -> ObstacleGrid {
    let mut g = Grid::filled(spec, false);
    for _ in 0..rng.gen_range(0..8) {
        let (w, h) = if rng.gen_bool(0.5) {
            (rng.gen_range(1..4), rng.gen_range(4..spec.height / 2))
        } else {
            (rng.gen_range(1..8), rng.gen_range(1..8))
        };
        let x0 = rng.gen_range(0..spec.width);
        let y0 = rng.gen_range(0..spec.height);
        for x in x0..(x0 + w).min(spec.width) {
            for y in y0..(y0 + h).min(spec.height) {
                g[Cell::new(x, y)] = true;
            }
        }
    }
    ObstacleGrid::from_grid(g)
}

pub fn fire_with_power(center: [f64; 2], power: f64) -> FireEstimate {
    let mut f = FireEstimate::from_footprint([center[0], center[1], 0.0], 0.3, &RadiationConstants::default(), 1)
        .expect("valid fire");
    f.power = power;
    f
}

/// Plain Dijkstra over floating-point costs with the same move model:
/// 8-connected, edge cost `len * (c_a + c_b) / 2`, no diagonal past an
/// impassable side cell.
pub fn dijkstra_oracle(cm: &CostMap, start: Cell, goal: Cell) -> Option<f64> {
    let spec = *cm.spec();
    let n = spec.len();
    let mut dist = vec![f64::INFINITY; n];
    let mut done = vec![false; n];
    dist[spec.index(start)] = 0.0;
    let passable = |x: i64, y: i64| cm.at(Cell::new(x as usize, y as usize)).is_finite();
    loop {
        // O(n²) selection keeps the oracle free of heap subtleties.
        let mut best = None;
        for i in 0..n {
            if !done[i] && dist[i].is_finite() && best.map_or(true, |b: usize| dist[i] < dist[b]) {
                best = Some(i);
            }
        }
        let i = best?;
        if i == spec.index(goal) {
            return Some(dist[i]);
        }
        done[i] = true;
        let c = spec.cell_of_index(i);
        let (x, y) = (c.x as i64, c.y as i64);
        for dx in -1i64..=1 {
            for dy in -1i64..=1 {
                let (nx, ny) = (x + dx, y + dy);
                if (dx, dy) == (0, 0) || nx < 0 || ny < 0 || nx >= spec.width as i64 || ny >= spec.height as i64 {
                    continue;
                }
                if !passable(nx, ny) {
                    continue;
                }
                let diag = dx != 0 && dy != 0;
                if diag && (!passable(nx, y) || !passable(x, ny)) {
                    continue;
                }
                let len = if diag { std::f64::consts::SQRT_2 } else { 1.0 };
                let j = spec.index(Cell::new(nx as usize, ny as usize));
                let d = dist[i] + len * (cm.at(c) + cm.at(Cell::new(nx as usize, ny as usize))) / 2.0;
                if d < dist[j] {
                    dist[j] = d;
                }
            }
        }
    }
}

/// Random occupancy: blocks of `O = 1` plus the blended field of a random fire.
pub fn random_occupancy(rng: &mut impl Rng, spec: GridSpec) -> OccupancyGrid {
    use thermal_nav::occupancy::blend;
    use thermal_nav::radiation::{fill_thermal_grid, DangerThreshold};
    let obstacles = random_obstacles(rng, spec);
    let consts = RadiationConstants::default();
    let center = [
        spec.origin[0] + rng.gen_range(0.0..spec.width as f64 * spec.resolution),
        spec.origin[1] + rng.gen_range(0.0..spec.height as f64 * spec.resolution),
    ];
    let fire = fire_with_power(center, rng.gen_range(2_000.0..120_000.0));
    let thermal = fill_thermal_grid(&spec, &obstacles, &fire, &consts).expect("fire inside grid");
    let danger = DangerThreshold::new(rng.gen_range(0.3..3.0)).expect("valid phi");
    blend(&obstacles, &thermal, &danger).expect("matching grids")
}

pub fn random_free_cell(rng: &mut impl Rng, cm: &CostMap) -> Option<Cell> {
    let spec = *cm.spec();
    (0..200)
        .map(|_| Cell::new(rng.gen_range(0..spec.width), rng.gen_range(0..spec.height)))
        .find(|&c| cm.is_passable(c))
}
