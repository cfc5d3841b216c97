use std::io::{BufRead, BufReader, Read, Write};

use serde::{Deserialize, Serialize};

use super::scenario::Scenario;
use super::sense::synth_sense;
use crate::error::{Error, Result};
use crate::fire::{detect_fire, FireEstimate};
use crate::geometry::ThermalCloud;
use crate::grid::Cell;
use crate::occupancy::{build_map_layers, MapLayers, RobotParams};
use crate::planner::{astar, make_cost_map, CostMap};

/// Everything recorded about one tick, taken after sensing and planning and
/// before the robot moves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TickRecord {
    pub tick: usize,
    /// s
    pub time: f64,
    pub position: [f64; 2],
    pub cell: Cell,
    /// Remaining plan, from the robot position through the goal.
    pub path: Vec<[f64; 2]>,
    pub replanned: bool,
    pub fire_active: bool,
    pub fire: Option<FireEstimate>,
    /// Predicted flux at the robot's cell (kW/m²).
    pub flux: f64,
    pub q_danger: f64,
    /// Closest approach to the burning fire so far (m).
    pub min_fire_distance: Option<f64>,
    /// Highest flux seen at the robot so far (kW/m²).
    pub max_flux: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SimStatus {
    Reached,
    Failed { reason: String },
    Budget,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryLog {
    pub scenario: String,
    pub ticks: Vec<TickRecord>,
    pub status: SimStatus,
}

impl TrajectoryLog {
    pub fn reached(&self) -> bool {
        self.status == SimStatus::Reached
    }

    pub fn positions(&self) -> impl Iterator<Item = [f64; 2]> + '_ {
        self.ticks.iter().map(|t| t.position)
    }

    pub fn min_fire_distance(&self) -> Option<f64> {
        self.ticks.last().and_then(|t| t.min_fire_distance)
    }

    /// One JSON object per tick.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        for t in &self.ticks {
            serde_json::to_writer(&mut w, t)?;
            w.write_all(b"\n")?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_jsonl<R: Read>(r: R) -> Result<Vec<TickRecord>> {
        let mut out = Vec::new();
        for (i, line) in BufReader::new(r).lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            out.push(serde_json::from_str(&line).map_err(|e| Error::parse(i + 1, e.to_string()))?);
        }
        Ok(out)
    }
}

struct Plan {
    costs: CostMap,
    cells: Vec<Cell>,
}

/// Runs the sense, detect, map, plan, advance loop to completion.
pub fn run_scenario(scenario: &Scenario) -> Result<TrajectoryLog> {
    run_scenario_with(scenario, |_, _| {})
}

/// Like [`run_scenario`], handing every tick's record and map layers to
/// `observe`.
///
/// The robot starts at the center of its start cell and moves along the
/// polyline of cell centers. Each tick it replans from the next cell center
/// it is heading for; when the cost map equals last tick's, the remainder of
/// the previous plan is kept.
pub fn run_scenario_with(
    scenario: &Scenario,
    mut observe: impl FnMut(&TickRecord, &MapLayers),
) -> Result<TrajectoryLog> {
    scenario.validate()?;
    let spec = scenario.grid;
    let danger = scenario.danger()?;
    let consts = scenario.constants;
    let goal = scenario.goal_cell()?;
    let step = scenario.step_length();

    let mut anchor = scenario.start_cell()?;
    let mut position = spec.cell_center(anchor);
    let mut previous: Option<Plan> = None;
    let mut ticks = Vec::new();
    let mut min_fire_distance: Option<f64> = None;
    let mut max_flux: f64 = 0.0;
    let mut status = SimStatus::Budget;
    let mut last_detection: Option<(ThermalCloud, Option<FireEstimate>)> = None;

    for tick in 0..scenario.max_ticks {
        let time = tick as f64 * scenario.dt;
        let cloud = synth_sense(scenario, time, position, scenario.seed);
        let fire = match &last_detection {
            Some((seen, fire)) if *seen == cloud => *fire,
            _ => detect_fire(&cloud, &consts, &scenario.dbscan),
        };
        let robot = RobotParams {
            position,
            ..scenario.robot
        };
        let layers = build_map_layers(&spec, std::slice::from_ref(&cloud), &robot, fire.as_ref(), &danger, &consts)?;
        last_detection = Some((cloud, fire));
        let costs = make_cost_map(&layers.occupancy, scenario.beta)?;

        let kept = previous.take().and_then(|p| {
            let at = p.cells.iter().position(|&c| c == anchor)?;
            (p.costs == costs).then(|| Plan {
                cells: p.cells[at..].to_vec(),
                costs: p.costs,
            })
        });
        let replanned = kept.is_none();
        let plan = match kept {
            Some(p) => Some(p),
            None => match astar(&costs, anchor, goal) {
                Ok(Some(path)) => Some(Plan {
                    costs,
                    cells: path.cells,
                }),
                Ok(None) => {
                    status = SimStatus::Failed {
                        reason: "no path to goal".into(),
                    };
                    None
                }
                Err(e) => {
                    status = SimStatus::Failed { reason: e.to_string() };
                    None
                }
            },
        };

        let cell = spec.world_to_cell(position[0], position[1]).unwrap_or(anchor);
        let flux = layers.thermal.at(cell);
        max_flux = max_flux.max(flux);
        let fire_active = scenario.fire_at(time);
        if let Some(f) = fire_active {
            let d = (position[0] - f.center[0]).hypot(position[1] - f.center[1]);
            min_fire_distance = Some(min_fire_distance.map_or(d, |m| m.min(d)));
        }
        let mut path = vec![position];
        if let Some(p) = &plan {
            path.extend(p.cells.iter().map(|&c| spec.cell_center(c)));
            if path.len() > 1 && path[0] == path[1] {
                path.remove(0);
            }
        }
        let record = TickRecord {
            tick,
            time,
            position,
            cell,
            path,
            replanned,
            fire_active: fire_active.is_some(),
            fire,
            flux,
            q_danger: danger.q_danger(),
            min_fire_distance,
            max_flux,
        };
        observe(&record, &layers);
        let at_goal = anchor == goal && position == spec.cell_center(goal);
        ticks.push(record);

        let Some(plan) = plan else { break };
        if at_goal {
            status = SimStatus::Reached;
            break;
        }
        (position, anchor) = advance(&spec, position, &plan.cells, step);
        previous = Some(plan);
    }

    Ok(TrajectoryLog {
        scenario: scenario.name.clone(),
        ticks,
        status,
    })
}

/// Moves `step` metres along `position → centers(cells)`. Returns the new
/// position and the cell whose center is the next waypoint (or the cell
/// whose center was just reached).
fn advance(spec: &crate::grid::GridSpec, mut position: [f64; 2], cells: &[Cell], step: f64) -> ([f64; 2], Cell) {
    let mut left = step;
    for &c in cells {
        let target = spec.cell_center(c);
        let d = (target[0] - position[0]).hypot(target[1] - position[1]);
        if d <= left + 1e-12 {
            position = target;
            left -= d;
            if left <= 1e-12 {
                return (position, c);
            }
        } else {
            let f = left / d;
            position = [
                position[0] + f * (target[0] - position[0]),
                position[1] + f * (target[1] - position[1]),
            ];
            return (position, c);
        }
    }
    (position, *cells.last().expect("plans are never empty"))
}
