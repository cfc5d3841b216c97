use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fire::RadiationConstants;

/// Heat flux (kW/m²) at range `r` (m) from a fire emitting `power` (W):
/// `P χ / (4π r²)`.
pub fn flux_at(power: f64, r: f64, consts: &RadiationConstants) -> Result<f64> {
    if !(r > 0.0) {
        return Err(Error::domain(format!("flux range must be positive, got {r} m")));
    }
    Ok(power * consts.chi / (4.0 * PI * r * r) / 1000.0)
}

/// Range (m) at which [`flux_at`] equals `q` (kW/m²).
pub fn safe_distance(power: f64, q: f64, consts: &RadiationConstants) -> f64 {
    (power * consts.chi / (4.0 * PI * q * 1000.0)).sqrt()
}

/// Heat flux above which a cell is impassable, `q = 2.5 / max(0.1, φ)`
/// in kW/m².
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DangerThreshold {
    phi: f64,
    q_danger: f64,
}

impl DangerThreshold {
    /// Flux (kW/m²) at φ = 1.
    pub const BASE_FLUX: f64 = 2.5;
    pub const MIN_PHI: f64 = 0.1;

    pub fn new(phi: f64) -> Result<Self> {
        if !(phi > 0.0) || !phi.is_finite() {
            return Err(Error::config(format!("caution φ must be positive, got {phi}")));
        }
        Ok(Self {
            phi,
            q_danger: Self::BASE_FLUX / phi.max(Self::MIN_PHI),
        })
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Threshold flux (kW/m²).
    pub fn q_danger(&self) -> f64 {
        self.q_danger
    }
}
