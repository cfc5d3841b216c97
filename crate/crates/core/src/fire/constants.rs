use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Stefan-Boltzmann constant (W m⁻² K⁻⁴), to the four digits the model uses.
pub const STEFAN_BOLTZMANN: f64 = 5.670e-8;

/// Physical constants and tunables of the fire radiation model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RadiationConstants {
    /// Stefan-Boltzmann constant (W m⁻² K⁻⁴).
    pub sigma: f64,
    /// Emissivity / geometry correction applied to the emitted power.
    pub gamma: f64,
    /// Fraction of the fire's power that leaves as thermal radiation.
    pub chi: f64,
    /// Effective flame temperature (K).
    pub flame_temp: f64,
    /// Points hotter than this (K) are fire candidates.
    pub hot_threshold: f64,
}

impl Default for RadiationConstants {
    fn default() -> Self {
        Self {
            sigma: STEFAN_BOLTZMANN,
            gamma: 0.4,
            chi: 0.35,
            flame_temp: 1473.15,
            hot_threshold: 373.15,
        }
    }
}

impl RadiationConstants {
    pub fn validate(&self) -> Result<()> {
        if self.sigma != STEFAN_BOLTZMANN {
            return Err(Error::config(format!(
                "sigma is fixed at {STEFAN_BOLTZMANN}, got {}",
                self.sigma
            )));
        }
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return Err(Error::config(format!("gamma must lie in (0, 1], got {}", self.gamma)));
        }
        if !(self.chi > 0.0 && self.chi <= 1.0) {
            return Err(Error::config(format!("chi must lie in (0, 1], got {}", self.chi)));
        }
        if !(self.flame_temp > self.hot_threshold) || !self.flame_temp.is_finite() {
            return Err(Error::config(format!(
                "flame temperature {} K must exceed the hot threshold {} K",
                self.flame_temp, self.hot_threshold
            )));
        }
        Ok(())
    }

    /// Emitted power per unit hemisphere area, `σ T₀⁴ γ` (W/m²).
    pub fn emissive_power_density(&self) -> f64 {
        self.sigma * self.flame_temp.powi(4) * self.gamma
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let c = RadiationConstants::default();
        c.validate().unwrap();
        // 5.670e-8 * 1473.15^4 * 0.4
        assert!((c.emissive_power_density() - 106_814.676_769_4).abs() < 1e-3);
    }

    #[test]
    fn rejects_out_of_range() {
        let bad = [
            RadiationConstants { gamma: 0.0, ..Default::default() },
            RadiationConstants { chi: 1.5, ..Default::default() },
            RadiationConstants { flame_temp: 300.0, ..Default::default() },
            RadiationConstants { sigma: 5.67e-8 * 1.01, ..Default::default() },
        ];
        for c in bad {
            assert!(c.validate().is_err(), "{c:?}");
        }
    }

    #[test]
    fn rejects_unknown_json_keys() {
        assert!(serde_json::from_str::<RadiationConstants>(r#"{"gamma":0.5}"#).is_ok());
        assert!(serde_json::from_str::<RadiationConstants>(r#"{"gama":0.5}"#).is_err());
    }
}
