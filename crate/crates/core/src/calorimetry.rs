//! Water-calorimetry check of the radiation model.
//!
//! A vessel of water at a known distance from the fire heats up; its energy
//! balance (corrected for ambient losses) gives the incident flux, which,
//! assuming isotropic emission, bounds the fire's radiative output and heat
//! release rate. [`compare_model`] sets that measurement against the model's
//! own flux and safe distance.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fire::{FireEstimate, RadiationConstants};
use crate::radiation::{flux_at, safe_distance, DangerThreshold};

fn default_specific_heat() -> f64 {
    4186.0
}

fn default_lhv() -> f64 {
    46e6
}

fn default_radiative_fraction_range() -> [f64; 2] {
    [0.30, 0.40]
}

/// Inputs of one calorimetry run. Temperatures in kelvin, SI units throughout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CalorimetrySample {
    /// kg
    pub water_mass: f64,
    /// J kg⁻¹ K⁻¹
    #[serde(default = "default_specific_heat")]
    pub specific_heat: f64,
    /// Area intercepting the flux at normal incidence (m²).
    pub exposed_area: f64,
    /// Distance from the fire centerline (m).
    pub distance: f64,
    pub t_start: f64,
    pub t_end: f64,
    /// Heating interval (s).
    pub duration: f64,
    /// Passive cooling rate (K/s) measured at `ambient_delta_ref` above ambient.
    pub cooling_rate: f64,
    /// K
    pub ambient_delta_ref: f64,
    /// Fuel burnt during the heating interval (kg).
    pub fuel_mass_used: f64,
    /// J/kg
    #[serde(default = "default_lhv")]
    pub lower_heating_value: f64,
    /// Radiated share of the total heat release, `[low, high]`.
    #[serde(default = "default_radiative_fraction_range")]
    pub radiative_fraction_range: [f64; 2],
}

impl CalorimetrySample {
    /// The propane training-fire run: 0.5 kg of water heated from 22 °C to
    /// 42 °C in 722 s at 0.45 m, cooling 2.5 K per 600 s at ~20 K above
    /// ambient, burning 1.1 kg of fuel.
    pub fn reference_run() -> Self {
        Self {
            water_mass: 0.5,
            specific_heat: default_specific_heat(),
            exposed_area: 0.00975,
            distance: 0.45,
            t_start: 295.15,
            t_end: 315.15,
            duration: 722.0,
            cooling_rate: 2.5 / 600.0,
            ambient_delta_ref: 20.0,
            fuel_mass_used: 1.1,
            lower_heating_value: default_lhv(),
            radiative_fraction_range: default_radiative_fraction_range(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("water_mass", self.water_mass),
            ("specific_heat", self.specific_heat),
            ("exposed_area", self.exposed_area),
            ("distance", self.distance),
            ("duration", self.duration),
            ("ambient_delta_ref", self.ambient_delta_ref),
            ("fuel_mass_used", self.fuel_mass_used),
            ("lower_heating_value", self.lower_heating_value),
            ("t_start", self.t_start),
        ];
        for (name, v) in positive {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::domain(format!("{name} must be positive, got {v}")));
            }
        }
        if !(self.t_end >= self.t_start) || !self.t_end.is_finite() {
            return Err(Error::domain(format!(
                "t_end {} K is below t_start {} K",
                self.t_end, self.t_start
            )));
        }
        if !(self.cooling_rate >= 0.0) || !self.cooling_rate.is_finite() {
            return Err(Error::domain("cooling_rate must be >= 0"));
        }
        let [lo, hi] = self.radiative_fraction_range;
        if !(lo > 0.0 && lo <= hi && hi <= 1.0) {
            return Err(Error::domain(format!(
                "radiative fraction range [{lo}, {hi}] must satisfy 0 < low <= high <= 1"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalorimetryReport {
    /// Energy taken up by the water, `m c ΔT` (J).
    pub absorbed_energy: f64,
    /// W
    pub net_power: f64,
    /// Mean ambient loss during heating (W).
    pub loss_power_avg: f64,
    /// W
    pub incident_power: f64,
    /// kW/m²
    pub incident_flux: f64,
    /// Total radiated power assuming isotropic emission (W).
    pub total_radiative_output: f64,
    /// Heat release rate implied by the radiative fraction range, `[low, high]` (W).
    pub hrr_range: [f64; 2],
    /// Fuel mass flow times lower heating value, an upper bound on the HRR (W).
    pub fuel_power_bound: f64,
    /// Distance the flux was measured at (m).
    pub distance: f64,
}

/// Runs the energy balance.
///
/// Losses are scaled linearly from the cooling measurement: the mean excess
/// over ambient during heating is `(t_start + t_end) / 2 - t_start`, with
/// ambient taken as the starting temperature.
pub fn analyze(sample: &CalorimetrySample) -> Result<CalorimetryReport> {
    sample.validate()?;
    let heat_capacity = sample.water_mass * sample.specific_heat;
    let absorbed_energy = heat_capacity * (sample.t_end - sample.t_start);
    let net_power = absorbed_energy / sample.duration;

    let loss_at_ref = heat_capacity * sample.cooling_rate;
    let mean_excess = (sample.t_start + sample.t_end) / 2.0 - sample.t_start;
    let loss_power_avg = loss_at_ref * mean_excess / sample.ambient_delta_ref;

    let incident_power = net_power + loss_power_avg;
    let incident_flux_w = incident_power / sample.exposed_area;
    let total_radiative_output = incident_flux_w * 4.0 * PI * sample.distance * sample.distance;
    let [f_lo, f_hi] = sample.radiative_fraction_range;
    let hrr_range = [total_radiative_output / f_hi, total_radiative_output / f_lo];
    let fuel_power_bound = sample.fuel_mass_used / sample.duration * sample.lower_heating_value;

    Ok(CalorimetryReport {
        absorbed_energy,
        net_power,
        loss_power_avg,
        incident_power,
        incident_flux: incident_flux_w / 1000.0,
        total_radiative_output,
        hrr_range,
        fuel_power_bound,
        distance: sample.distance,
    })
}

/// Model versus measurement at the calorimeter's distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelComparison {
    /// Model flux at the measurement distance (kW/m²).
    pub model_flux: f64,
    /// Measured flux (kW/m²).
    pub measured_flux: f64,
    /// Range where the model flux drops to `q_danger` (m).
    pub model_safe_distance: f64,
    /// Same range for the measured radiative output (m).
    pub measured_safe_distance: f64,
    /// `|model - measured|` (m).
    pub safe_distance_error: f64,
    pub q_danger: f64,
    pub model_power: f64,
    pub measured_radiative_output: f64,
}

pub fn compare_model(
    report: &CalorimetryReport,
    fire: &FireEstimate,
    danger: &DangerThreshold,
    consts: &RadiationConstants,
) -> Result<ModelComparison> {
    let q = danger.q_danger();
    let model_flux = flux_at(fire.power, report.distance, consts)?;
    let model_safe_distance = safe_distance(fire.power, q, consts);
    // The measured output is already radiative.
    let radiative = RadiationConstants { chi: 1.0, ..*consts };
    let measured_safe_distance = safe_distance(report.total_radiative_output, q, &radiative);
    Ok(ModelComparison {
        model_flux,
        measured_flux: report.incident_flux,
        model_safe_distance,
        measured_safe_distance,
        safe_distance_error: (model_safe_distance - measured_safe_distance).abs(),
        q_danger: q,
        model_power: fire.power,
        measured_radiative_output: report.total_radiative_output,
    })
}

impl std::fmt::Display for CalorimetryReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{:<28}{:>14.4e} J", "absorbed energy", self.absorbed_energy)?;
        writeln!(f, "{:<28}{:>14.2} W", "net heating power", self.net_power)?;
        writeln!(f, "{:<28}{:>14.2} W", "mean ambient loss", self.loss_power_avg)?;
        writeln!(f, "{:<28}{:>14.2} W", "incident power", self.incident_power)?;
        writeln!(f, "{:<28}{:>14.3} kW/m²", "incident flux", self.incident_flux)?;
        writeln!(f, "{:<28}{:>14.2} kW", "radiative output", self.total_radiative_output / 1e3)?;
        writeln!(
            f,
            "{:<28}{:>6.1} to {:.1} kW",
            "heat release rate",
            self.hrr_range[0] / 1e3,
            self.hrr_range[1] / 1e3
        )?;
        write!(f, "{:<28}{:>14.2} kW", "fuel power bound", self.fuel_power_bound / 1e3)
    }
}

impl std::fmt::Display for ModelComparison {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{:<28}{:>14.2} kW/m²", "model flux", self.model_flux)?;
        writeln!(f, "{:<28}{:>14.2} kW/m²", "measured flux", self.measured_flux)?;
        writeln!(f, "{:<28}{:>14.3} m", "model safe distance", self.model_safe_distance)?;
        writeln!(f, "{:<28}{:>14.3} m", "measured safe distance", self.measured_safe_distance)?;
        write!(f, "{:<28}{:>14.3} m", "safe distance error", self.safe_distance_error)
    }
}
