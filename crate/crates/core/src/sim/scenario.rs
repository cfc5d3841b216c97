use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fire::{DbscanParams, RadiationConstants};
use crate::grid::{Cell, GridSpec};
use crate::occupancy::RobotParams;
use crate::radiation::DangerThreshold;

/// Axis-aligned box standing on flat ground.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxObstacle {
    pub min: [f64; 2],
    pub max: [f64; 2],
    pub height: f64,
}

impl BoxObstacle {
    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.min[0] && x <= self.max[0] && y >= self.min[1] && y <= self.max[1]
    }

    pub fn center(&self) -> [f64; 2] {
        [
            (self.min[0] + self.max[0]) / 2.0,
            (self.min[1] + self.max[1]) / 2.0,
        ]
    }
}

/// Switches the fire on (or off) at `time`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FireEvent {
    /// s
    pub time: f64,
    pub on: bool,
    pub center: [f64; 2],
    pub footprint_radius: f64,
}

fn default_phi() -> f64 {
    1.0
}

fn default_beta() -> f64 {
    10.0
}

fn default_dt() -> f64 {
    1.0
}

fn default_max_ticks() -> usize {
    10_000
}

/// A static world, a fire timeline and a navigation task.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub obstacles: Vec<BoxObstacle>,
    #[serde(default)]
    pub fire_events: Vec<FireEvent>,
    pub robot_start: [f64; 2],
    pub goal: [f64; 2],
    #[serde(default = "default_phi")]
    pub phi: f64,
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default)]
    pub robot: RobotParams,
    /// Distance travelled per tick (m); one cell when absent.
    #[serde(default)]
    pub step_length: Option<f64>,
    #[serde(default)]
    pub seed: u64,
    /// Seconds per tick.
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_max_ticks")]
    pub max_ticks: usize,
    /// Only surfaces within this range of the robot are observed (m).
    #[serde(default)]
    pub sensor_range: Option<f64>,
    #[serde(default)]
    pub constants: RadiationConstants,
    #[serde(default)]
    pub dbscan: DbscanParams,
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Self> {
        let sc: Scenario = serde_json::from_str(text)?;
        sc.validate()?;
        Ok(sc)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        self.grid.validate()?;
        self.robot.validate()?;
        self.constants.validate()?;
        self.dbscan.validate()?;
        DangerThreshold::new(self.phi)?;
        if !(self.beta >= 0.0) || !self.beta.is_finite() {
            return Err(Error::config(format!("beta must be >= 0, got {}", self.beta)));
        }
        self.start_cell()?;
        self.goal_cell()?;
        if !(self.step_length() > 0.0) || !self.step_length().is_finite() {
            return Err(Error::config("step_length must be positive"));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::config("dt must be positive"));
        }
        if self.sensor_range.is_some_and(|r| !(r > 0.0)) {
            return Err(Error::config("sensor_range must be positive"));
        }
        for b in &self.obstacles {
            if !(b.min[0] <= b.max[0] && b.min[1] <= b.max[1]) || !(b.height >= 0.0) {
                return Err(Error::config(format!("malformed obstacle box {b:?}")));
            }
        }
        let mut last = f64::NEG_INFINITY;
        for e in &self.fire_events {
            if !(e.time >= last) || !e.time.is_finite() {
                return Err(Error::config("fire event times must be finite and non-decreasing"));
            }
            last = e.time;
            if e.on && !(e.footprint_radius > 0.0) {
                return Err(Error::config("an active fire needs a positive footprint radius"));
            }
        }
        Ok(())
    }

    pub fn step_length(&self) -> f64 {
        self.step_length.unwrap_or(self.grid.resolution)
    }

    pub fn danger(&self) -> Result<DangerThreshold> {
        DangerThreshold::new(self.phi)
    }

    pub fn start_cell(&self) -> Result<Cell> {
        let [x, y] = self.robot_start;
        self.grid
            .world_to_cell(x, y)
            .ok_or_else(|| Error::config(format!("robot start ({x}, {y}) lies outside the grid")))
    }

    pub fn goal_cell(&self) -> Result<Cell> {
        let [x, y] = self.goal;
        self.grid
            .world_to_cell(x, y)
            .ok_or_else(|| Error::config(format!("goal ({x}, {y}) lies outside the grid")))
    }

    /// The fire burning at time `t`, if any: the last event at or before `t`.
    pub fn fire_at(&self, t: f64) -> Option<&FireEvent> {
        self.fire_events
            .iter()
            .take_while(|e| e.time <= t)
            .last()
            .filter(|e| e.on)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal() -> &'static str {
        r#"{"robot_start": [1.0, 1.0], "goal": [5.0, 5.0]}"#
    }

    #[test]
    fn defaults() {
        let sc = Scenario::from_json(minimal()).unwrap();
        assert_eq!(sc.grid, GridSpec::default());
        assert_eq!(sc.phi, 1.0);
        assert_eq!(sc.beta, 10.0);
        assert_eq!(sc.step_length(), 0.1);
        assert_eq!(sc.max_ticks, 10_000);
        assert!(sc.fire_at(100.0).is_none());
    }

    #[test]
    fn rejects_bad_scenarios() {
        assert!(Scenario::from_json(r#"{"robot_start": [1, 1], "goal": [5, 5], "typo": 1}"#).is_err());
        assert!(matches!(
            Scenario::from_json(r#"{"robot_start": [-1, 1], "goal": [5, 5]}"#),
            Err(Error::Config(_))
        ));
        assert!(Scenario::from_json(r#"{"robot_start": [1, 1], "goal": [25, 5]}"#).is_err());
        let events = r#"{"robot_start": [1, 1], "goal": [5, 5], "fire_events": [
            {"time": 5, "on": true, "center": [3, 3], "footprint_radius": 0.3},
            {"time": 2, "on": false, "center": [3, 3], "footprint_radius": 0.3}]}"#;
        assert!(Scenario::from_json(events).is_err());
    }

    #[test]
    fn timeline_lookup() {
        let mut sc = Scenario::from_json(minimal()).unwrap();
        let ev = |time, on| FireEvent {
            time,
            on,
            center: [3.0, 3.0],
            footprint_radius: 0.3,
        };
        sc.fire_events = vec![ev(2.0, true), ev(5.0, false), ev(5.0, true)];
        assert!(sc.fire_at(1.9).is_none());
        assert!(sc.fire_at(2.0).is_some());
        // Simultaneous events: the later one wins.
        assert!(sc.fire_at(5.0).is_some());
        sc.fire_events.pop();
        assert!(sc.fire_at(7.0).is_none());
    }
}
