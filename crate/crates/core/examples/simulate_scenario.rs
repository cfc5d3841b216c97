//! Runs a scenario file and summarizes the trajectory.
//!
//!     cargo run --release --example simulate_scenario -- scenarios/exp4_wall.json

use std::time::Instant;

use thermal_nav::sim::{run_scenario, Scenario};

fn main() -> thermal_nav::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios/exp2_fire_large_phi.json").into());
    let scenario = Scenario::load(&path)?;
    let t0 = Instant::now();
    let log = run_scenario(&scenario)?;
    let elapsed = t0.elapsed();

    println!("scenario    {}", log.scenario);
    println!("status      {:?}", log.status);
    println!("ticks       {}", log.ticks.len());
    println!("wall time   {elapsed:.2?}");
    if let Some(d) = log.min_fire_distance() {
        println!("closest     {d:.3} m from the fire");
    }
    let last = log.ticks.last().expect("at least one tick");
    println!("max flux    {:.3} kW/m² (threshold {:.2})", last.max_flux, last.q_danger);
    let replans = log.ticks.iter().filter(|t| t.replanned).count();
    println!("replans     {replans}");
    Ok(())
}
