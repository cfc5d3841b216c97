//! Command-line front end: configuration, file orchestration and renders.
//!
//! Exit codes: 0 success, 1 input error, 2 no fire detected, 3 no path.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::calorimetry::{analyze, compare_model, CalorimetryReport, CalorimetrySample, ModelComparison};
use crate::error::{Error, Result};
use crate::fire::{detect_fire, DbscanParams, FireEstimate, RadiationConstants, STEFAN_BOLTZMANN};
use crate::geometry::{load_cloud, ThermalCloud};
use crate::grid::{Cell, GridSpec};
use crate::occupancy::{build_map_layers, OccupancyGrid, RobotParams};
use crate::planner::{astar, make_cost_map};
use crate::radiation::DangerThreshold;
use crate::raster::{
    load_csv, mark_fire, occupancy_levels, path_overlay, save_csv, save_pgm16, save_pgm8, thermal_levels, FluxScale,
};
use crate::sim::{run_scenario_with, Scenario, SimStatus};

/// Every tunable of the pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub phi: f64,
    pub beta: f64,
    pub epsilon: f64,
    pub min_samples: usize,
    /// K
    pub hot_threshold: f64,
    /// K
    pub flame_temp: f64,
    pub gamma: f64,
    pub chi: f64,
    /// m
    pub h_robot: f64,
    /// Side of the square map window (m).
    pub grid_size: f64,
    /// m
    pub resolution: f64,
    pub origin: [f64; 2],
    pub seed: u64,
    pub unknown_is_lethal: bool,
}

impl Default for Config {
    fn default() -> Self {
        let consts = RadiationConstants::default();
        let dbscan = DbscanParams::default();
        Self {
            phi: 1.0,
            beta: 10.0,
            epsilon: dbscan.epsilon,
            min_samples: dbscan.min_samples,
            hot_threshold: consts.hot_threshold,
            flame_temp: consts.flame_temp,
            gamma: consts.gamma,
            chi: consts.chi,
            h_robot: RobotParams::default().h_robot,
            grid_size: 20.0,
            resolution: 0.1,
            origin: [0.0, 0.0],
            seed: 0,
            unknown_is_lethal: false,
        }
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Config = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::from_json(&fs::read_to_string(path)?)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<()> {
        self.constants().validate()?;
        self.dbscan().validate()?;
        self.danger()?;
        self.spec()?;
        self.robot([0.0, 0.0]).validate()?;
        if !(self.beta >= 0.0) || !self.beta.is_finite() {
            return Err(Error::config(format!("beta must be >= 0, got {}", self.beta)));
        }
        Ok(())
    }

    pub fn constants(&self) -> RadiationConstants {
        RadiationConstants {
            sigma: STEFAN_BOLTZMANN,
            gamma: self.gamma,
            chi: self.chi,
            flame_temp: self.flame_temp,
            hot_threshold: self.hot_threshold,
        }
    }

    pub fn dbscan(&self) -> DbscanParams {
        DbscanParams {
            epsilon: self.epsilon,
            min_samples: self.min_samples,
        }
    }

    pub fn danger(&self) -> Result<DangerThreshold> {
        DangerThreshold::new(self.phi)
    }

    pub fn spec(&self) -> Result<GridSpec> {
        GridSpec::square(self.origin, self.grid_size, self.resolution)
    }

    pub fn robot(&self, position: [f64; 2]) -> RobotParams {
        RobotParams {
            h_robot: self.h_robot,
            position,
            unknown_is_lethal: self.unknown_is_lethal,
            ..RobotParams::default()
        }
    }

    fn apply(&mut self, flags: &GlobalArgs) {
        macro_rules! set {
            ($($field:ident),*) => {$(if let Some(v) = flags.$field { self.$field = v; })*};
        }
        set!(phi, beta, resolution, grid_size, h_robot, seed);
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct GlobalArgs {
    /// Safety factor; the danger threshold is 2.5 / φ kW/m².
    #[arg(long, global = true)]
    pub phi: Option<f64>,
    /// Weight of thermal occupancy in the traversal cost.
    #[arg(long, global = true)]
    pub beta: Option<f64>,
    /// Cell edge (m).
    #[arg(long, global = true)]
    pub resolution: Option<f64>,
    /// Side of the square map window (m).
    #[arg(long, global = true)]
    pub grid_size: Option<f64>,
    /// Robot clearance height (m).
    #[arg(long, global = true)]
    pub h_robot: Option<f64>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// JSON file with any subset of the configuration keys.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Parser)]
#[command(name = "thermal-nav", version, about = "Fire-aware occupancy mapping and path planning")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Locate the fire in thermal point clouds and estimate its power.
    Detect {
        #[arg(required = true)]
        clouds: Vec<PathBuf>,
    },
    /// Build the occupancy map around a robot pose.
    Map {
        #[arg(required = true)]
        clouds: Vec<PathBuf>,
        /// Robot position `x,y` (m).
        #[arg(long, value_parser = parse_point)]
        robot: [f64; 2],
        /// Fire estimate JSON; detected from the clouds when absent.
        #[arg(long)]
        fire: Option<PathBuf>,
    },
    /// Plan a path over an occupancy CSV.
    Plan {
        /// Occupancy CSV written by `map`.
        map: PathBuf,
        /// Metadata JSON written by `map`; supplies the grid window.
        #[arg(long)]
        meta: Option<PathBuf>,
        #[arg(long, value_parser = parse_point)]
        start: [f64; 2],
        #[arg(long, value_parser = parse_point)]
        goal: [f64; 2],
    },
    /// Run a scenario and log every tick.
    Simulate {
        scenario: PathBuf,
        /// Write a map render every N ticks (0: final render only).
        #[arg(long, default_value_t = 0)]
        render_every: usize,
    },
    /// Compare a calorimetry measurement against a fire estimate.
    Validate { calorimetry: PathBuf, fire: PathBuf },
}

fn parse_point(s: &str) -> std::result::Result<[f64; 2], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [x, y] => {
            let x: f64 = x.parse().map_err(|_| format!("bad coordinate {x:?}"))?;
            let y: f64 = y.parse().map_err(|_| format!("bad coordinate {y:?}"))?;
            if x.is_finite() && y.is_finite() {
                Ok([x, y])
            } else {
                Err("coordinates must be finite".into())
            }
        }
        _ => Err(format!("expected x,y, got {s:?}")),
    }
}

/// Non-error results that still map to distinct exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    NoFire,
    NoPath,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::NoFire => 2,
            Outcome::NoPath => 3,
        }
    }
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(outcome) => outcome.code(),
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let mut config = match &cli.global.config {
        Some(path) => Config::load(path)?,
        None => Config::default(),
    };
    config.apply(&cli.global);
    config.validate()?;
    let out = &cli.global.out;
    fs::create_dir_all(out)?;

    match &cli.command {
        Command::Detect { clouds } => cmd_detect(&load_clouds(clouds)?, &config, out),
        Command::Map { clouds, robot, fire } => {
            let fire = fire.as_deref().map(load_fire).transpose()?;
            cmd_map(&load_clouds(clouds)?, *robot, fire, &config, out)
        }
        Command::Plan {
            map,
            meta,
            start,
            goal,
        } => {
            let spec = match meta {
                Some(path) => serde_json::from_str::<MapMeta>(&fs::read_to_string(path)?)?.grid,
                None => config.spec()?,
            };
            let occ = OccupancyGrid::from_grid(load_csv(&spec, map)?)?;
            cmd_plan(&occ, *start, *goal, &config, out)
        }
        Command::Simulate {
            scenario,
            render_every,
        } => {
            let mut sc = Scenario::load(scenario)?;
            apply_to_scenario(&mut sc, &cli.global, cli.global.config.as_ref().map(|_| &config));
            cmd_simulate(&sc, *render_every, out)
        }
        Command::Validate { calorimetry, fire } => {
            let sample: CalorimetrySample = serde_json::from_str(&fs::read_to_string(calorimetry)?)?;
            cmd_validate(&sample, &load_fire(fire)?, &config, out).map(|_| Outcome::Success)
        }
    }
}

fn load_clouds(paths: &[PathBuf]) -> Result<Vec<ThermalCloud>> {
    paths.iter().map(load_cloud).collect()
}

fn load_fire(path: &Path) -> Result<FireEstimate> {
    let text = fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: not a fire estimate: {e}", path.display())))
}

fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<()> {
    let mut w = BufWriter::new(File::create(path)?);
    serde_json::to_writer_pretty(&mut w, value)?;
    std::io::Write::write_all(&mut w, b"\n")?;
    Ok(())
}

/// Flags override the scenario; a config file overrides the scenario's
/// model constants.
fn apply_to_scenario(sc: &mut Scenario, flags: &GlobalArgs, config: Option<&Config>) {
    if let Some(cfg) = config {
        sc.phi = cfg.phi;
        sc.beta = cfg.beta;
        sc.constants = cfg.constants();
        sc.dbscan = cfg.dbscan();
        sc.robot.h_robot = cfg.h_robot;
        sc.robot.unknown_is_lethal = cfg.unknown_is_lethal;
    }
    if let Some(v) = flags.phi {
        sc.phi = v;
    }
    if let Some(v) = flags.beta {
        sc.beta = v;
    }
    if let Some(v) = flags.seed {
        sc.seed = v;
    }
    if let Some(v) = flags.h_robot {
        sc.robot.h_robot = v;
    }
}

/// Record written when no fire is found.
#[derive(Debug, Serialize, Deserialize)]
pub struct NoFire {
    pub fire: Option<FireEstimate>,
    pub hot_points: usize,
    pub message: String,
}

pub fn cmd_detect(clouds: &[ThermalCloud], config: &Config, out: &Path) -> Result<Outcome> {
    let cloud = ThermalCloud::merged(clouds);
    let consts = config.constants();
    match detect_fire(&cloud, &consts, &config.dbscan()) {
        Some(fire) => {
            write_json(&fire, &out.join("fire.json"))?;
            println!("{}", serde_json::to_string_pretty(&fire)?);
            Ok(Outcome::Success)
        }
        None => {
            let record = NoFire {
                fire: None,
                hot_points: cloud
                    .points()
                    .iter()
                    .filter(|p| p.temperature.is_some_and(|t| t > consts.hot_threshold))
                    .count(),
                message: "no fire".into(),
            };
            write_json(&record, &out.join("fire.json"))?;
            println!("{}", serde_json::to_string_pretty(&record)?);
            Ok(Outcome::NoFire)
        }
    }
}

/// Metadata written next to the map rasters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapMeta {
    pub grid: GridSpec,
    pub robot: [f64; 2],
    pub phi: f64,
    pub q_danger: f64,
    pub fire: Option<FireEstimate>,
    pub obstacle_cells: usize,
    pub lethal_cells: usize,
    pub thermal_scale: FluxScale,
}

pub fn cmd_map(
    clouds: &[ThermalCloud],
    robot: [f64; 2],
    fire: Option<FireEstimate>,
    config: &Config,
    out: &Path,
) -> Result<Outcome> {
    let spec = config.spec()?;
    let consts = config.constants();
    let danger = config.danger()?;
    if spec.world_to_cell(robot[0], robot[1]).is_none() {
        return Err(Error::config(format!("robot ({}, {}) lies outside the map window", robot[0], robot[1])));
    }
    let fire = match fire {
        Some(f) => {
            f.validate(&consts)?;
            Some(f)
        }
        None => detect_fire(&ThermalCloud::merged(clouds), &consts, &config.dbscan()),
    };
    let layers = build_map_layers(&spec, clouds, &config.robot(robot), fire.as_ref(), &danger, &consts)?;

    save_csv(layers.occupancy.grid(), out.join("occupancy.csv"))?;
    let mut img = occupancy_levels(&layers.occupancy);
    if let Some(f) = &fire {
        mark_fire(&mut img, f);
    }
    save_pgm8(&img, out.join("occupancy.pgm"))?;
    save_csv(layers.thermal.grid(), out.join("thermal.csv"))?;
    let (levels, scale) = thermal_levels(&layers.thermal);
    save_pgm16(&levels, out.join("thermal.pgm"))?;
    write_json(&scale, &out.join("thermal.json"))?;

    let meta = MapMeta {
        grid: spec,
        robot,
        phi: danger.phi(),
        q_danger: danger.q_danger(),
        fire,
        obstacle_cells: layers.obstacles.count(),
        lethal_cells: spec.cells().filter(|&c| layers.occupancy.is_lethal(c)).count(),
        thermal_scale: scale,
    };
    write_json(&meta, &out.join("map.json"))?;
    println!("{}", serde_json::to_string_pretty(&meta)?);
    Ok(Outcome::Success)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanSummary {
    pub cost: f64,
    pub length: f64,
    pub moves: usize,
    pub exposure: f64,
}

pub fn cmd_plan(occ: &OccupancyGrid, start: [f64; 2], goal: [f64; 2], config: &Config, out: &Path) -> Result<Outcome> {
    let spec = *occ.spec();
    let cell = |p: [f64; 2], what: &str| -> Result<Cell> {
        spec.world_to_cell(p[0], p[1])
            .ok_or_else(|| Error::config(format!("{what} ({}, {}) lies outside the map window", p[0], p[1])))
    };
    let (s, g) = (cell(start, "start")?, cell(goal, "goal")?);
    let costs = make_cost_map(occ, config.beta)?;
    let path = match astar(&costs, s, g) {
        Ok(Some(p)) => p,
        Ok(None) | Err(Error::Domain(_)) => {
            eprintln!("no path from ({}, {}) to ({}, {})", start[0], start[1], goal[0], goal[1]);
            save_pgm8(&path_overlay(occ, &[]), out.join("overlay.pgm"))?;
            return Ok(Outcome::NoPath);
        }
        Err(e) => return Err(e),
    };
    let mut csv = String::from("x,y\n");
    for [x, y] in &path.world_points {
        csv.push_str(&format!("{x},{y}\n"));
    }
    fs::write(out.join("path.csv"), csv)?;
    save_pgm8(&path_overlay(occ, &path.cells), out.join("overlay.pgm"))?;
    let summary = PlanSummary {
        cost: path.total_cost,
        length: path.length(),
        moves: path.moves(),
        exposure: path.exposure(occ),
    };
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(Outcome::Success)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimSummary {
    pub scenario: String,
    #[serde(flatten)]
    pub status: SimStatus,
    pub ticks: usize,
    pub min_fire_distance: Option<f64>,
    pub max_flux: f64,
    pub q_danger: f64,
}

pub fn cmd_simulate(scenario: &Scenario, render_every: usize, out: &Path) -> Result<Outcome> {
    let tick_dir = out.join("ticks");
    if render_every > 0 {
        fs::create_dir_all(&tick_dir)?;
    }
    let spec = scenario.grid;
    let mut final_map: Option<OccupancyGrid> = None;
    let mut render_err = None;
    let log = run_scenario_with(scenario, |rec, layers| {
        if render_every > 0 && rec.tick % render_every == 0 {
            let cells: Vec<Cell> = rec
                .path
                .iter()
                .filter_map(|p| spec.world_to_cell(p[0], p[1]))
                .collect();
            let name = tick_dir.join(format!("tick_{:05}.pgm", rec.tick));
            if let Err(e) = save_pgm8(&path_overlay(&layers.occupancy, &cells), name) {
                render_err.get_or_insert(e);
            }
        }
        final_map = Some(layers.occupancy.clone());
    })?;
    if let Some(e) = render_err {
        return Err(e);
    }
    log.write_jsonl(BufWriter::new(File::create(out.join("trajectory.jsonl"))?))?;
    if let Some(occ) = &final_map {
        let mut travelled: Vec<Cell> = log.ticks.iter().map(|t| t.cell).collect();
        travelled.dedup();
        save_pgm8(&path_overlay(occ, &travelled), out.join("final.pgm"))?;
    }
    let last = log.ticks.last();
    let summary = SimSummary {
        scenario: log.scenario.clone(),
        status: log.status.clone(),
        ticks: log.ticks.len(),
        min_fire_distance: log.min_fire_distance(),
        max_flux: last.map_or(0.0, |t| t.max_flux),
        q_danger: scenario.danger()?.q_danger(),
    };
    write_json(&summary, &out.join("summary.json"))?;
    println!("{}", serde_json::to_string_pretty(&summary)?);
    Ok(match log.status {
        SimStatus::Reached => Outcome::Success,
        SimStatus::Failed { .. } | SimStatus::Budget => Outcome::NoPath,
    })
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub calorimetry: CalorimetryReport,
    pub comparison: ModelComparison,
}

pub fn cmd_validate(
    sample: &CalorimetrySample,
    fire: &FireEstimate,
    config: &Config,
    out: &Path,
) -> Result<ValidationReport> {
    let consts = config.constants();
    let report = analyze(sample)?;
    let comparison = compare_model(&report, fire, &config.danger()?, &consts)?;
    println!("{report}\n{comparison}");
    let result = ValidationReport {
        calorimetry: report,
        comparison,
    };
    write_json(&result, &out.join("validation.json"))?;
    Ok(result)
}
