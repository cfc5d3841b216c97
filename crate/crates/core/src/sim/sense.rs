use std::f64::consts::{PI, SQRT_2};

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::scenario::Scenario;
use crate::geometry::{ThermalCloud, ThermalPoint};

/// Temperature of every non-burning surface (K).
pub const AMBIENT: f64 = 293.15;
/// Range of flame surface temperatures reported by the synthetic camera (K).
pub const FLAME_SURFACE: [f64; 2] = [450.0, 465.0];

const FIRE_POINTS_PER_M2: f64 = 1000.0;
const RIM_POINTS: usize = 64;

/// Synthetic LiDAR + thermal frame of the scene at time `t`, in world
/// coordinates.
///
/// Ground returns lie on a cell-center lattice, box tops on a half-cell
/// lattice. A burning fire adds a hot hemisphere whose radius is the
/// footprint radius over √2: the footprint's bounding square, and therefore
/// the circle a detector circumscribes around it, then matches the
/// configured footprint. Only the fire samples use the random stream.
pub fn synth_sense(scene: &Scenario, t: f64, pose: [f64; 2], seed: u64) -> ThermalCloud {
    let spec = &scene.grid;
    let in_range = |x: f64, y: f64| {
        scene
            .sensor_range
            .map_or(true, |r| (x - pose[0]).powi(2) + (y - pose[1]).powi(2) <= r * r)
    };
    let mut points = Vec::new();

    for cell in spec.cells() {
        let [x, y] = spec.cell_center(cell);
        if in_range(x, y) {
            points.push(ThermalPoint::with_temperature(x, y, 0.0, AMBIENT));
        }
    }

    let step = spec.resolution / 2.0;
    for b in &scene.obstacles {
        let nx = ((b.max[0] - b.min[0]) / step).ceil().max(1.0) as usize;
        let ny = ((b.max[1] - b.min[1]) / step).ceil().max(1.0) as usize;
        for i in 0..nx {
            for j in 0..ny {
                let x = (b.min[0] + (i as f64 + 0.5) * step).min(b.max[0]);
                let y = (b.min[1] + (j as f64 + 0.5) * step).min(b.max[1]);
                if in_range(x, y) {
                    points.push(ThermalPoint::with_temperature(x, y, b.height, AMBIENT));
                }
            }
        }
    }

    if let Some(fire) = scene.fire_at(t) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = fire.footprint_radius / SQRT_2;
        let [cx, cy] = fire.center;
        let mut hot = |p: Vector3<f64>, rng: &mut ChaCha8Rng| {
            if in_range(p.x, p.y) {
                let temp = rng.gen_range(FLAME_SURFACE[0]..=FLAME_SURFACE[1]);
                points.push(ThermalPoint::with_temperature(p.x, p.y, p.z, temp));
            }
        };
        // Base rim, so the footprint extent does not depend on luck.
        let phase = rng.gen_range(0.0..2.0 * PI / RIM_POINTS as f64);
        for k in 0..RIM_POINTS {
            let a = phase + 2.0 * PI * k as f64 / RIM_POINTS as f64;
            hot(Vector3::new(cx + rho * a.cos(), cy + rho * a.sin(), 0.0), &mut rng);
        }
        // Uniform over the dome: z uniform in [0, ρ] gives equal-area bands.
        let n = ((2.0 * PI * rho * rho * FIRE_POINTS_PER_M2).ceil() as usize).max(64);
        for _ in 0..n {
            let z: f64 = rng.gen_range(0.0..=rho);
            let a: f64 = rng.gen_range(0.0..2.0 * PI);
            let ring = (rho * rho - z * z).max(0.0).sqrt();
            hot(Vector3::new(cx + ring * a.cos(), cy + ring * a.sin(), z), &mut rng);
        }
    }

    ThermalCloud::new(points, "world").expect("synthetic points are finite")
}
