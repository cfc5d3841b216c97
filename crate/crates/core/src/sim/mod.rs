//! Scripted scenes and the closed navigation loop.

mod run;
mod scenario;
mod sense;

pub use run::{run_scenario, run_scenario_with, SimStatus, TickRecord, TrajectoryLog};
pub use scenario::{BoxObstacle, FireEvent, Scenario};
pub use sense::{synth_sense, AMBIENT, FLAME_SURFACE};
