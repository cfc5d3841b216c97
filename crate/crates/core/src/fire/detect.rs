use std::f64::consts::PI;

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use super::constants::RadiationConstants;
use super::dbscan::{dbscan, DbscanParams};
use crate::error::{Error, Result};
use crate::geometry::ThermalCloud;
use crate::stats::lower_percentile;

/// Percentile of nearby heights used as the fire's ground level.
const GROUND_PERCENTILE: f64 = 20.0;

/// Radiative power of a hemispherical emitter, `P = σ A T₀⁴ γ` (W).
pub fn emitted_power(area: f64, consts: &RadiationConstants) -> f64 {
    consts.sigma * area * consts.flame_temp.powi(4) * consts.gamma
}

/// A localized fire: a hemisphere over the circumscribed footprint circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FireEstimate {
    /// Footprint center on the ground (m).
    pub center: [f64; 3],
    /// Radius of the circle circumscribing the cluster's footprint (m).
    pub footprint_radius: f64,
    /// Hemisphere surface area `2π r²` (m²).
    pub area: f64,
    /// Flame temperature used for the power estimate (K).
    pub flame_temp: f64,
    /// Emitted power (W).
    pub power: f64,
    pub cluster_size: usize,
}

impl FireEstimate {
    /// Builds the estimate for a hemisphere of the given footprint radius.
    pub fn from_footprint(
        center: [f64; 3],
        footprint_radius: f64,
        consts: &RadiationConstants,
        cluster_size: usize,
    ) -> Result<Self> {
        if !(footprint_radius > 0.0) || !footprint_radius.is_finite() {
            return Err(Error::domain(format!(
                "footprint radius must be positive, got {footprint_radius}"
            )));
        }
        if !center.iter().all(|v| v.is_finite()) {
            return Err(Error::domain("fire center must be finite"));
        }
        let area = 2.0 * PI * footprint_radius * footprint_radius;
        Ok(Self {
            center,
            footprint_radius,
            area,
            flame_temp: consts.flame_temp,
            power: emitted_power(area, consts),
            cluster_size,
        })
    }

    /// Builds the estimate from a hemisphere surface area.
    pub fn from_area(center: [f64; 3], area: f64, consts: &RadiationConstants) -> Result<Self> {
        if !(area > 0.0) {
            return Err(Error::domain(format!("area must be positive, got {area}")));
        }
        let mut fire = Self::from_footprint(center, (area / (2.0 * PI)).sqrt(), consts, 0)?;
        fire.area = area;
        fire.power = emitted_power(area, consts);
        Ok(fire)
    }

    pub fn center_xy(&self) -> [f64; 2] {
        [self.center[0], self.center[1]]
    }

    /// Checks the internal consistency of an estimate read from a file.
    pub fn validate(&self, consts: &RadiationConstants) -> Result<()> {
        let expected_area = 2.0 * PI * self.footprint_radius.powi(2);
        if !(self.power > 0.0) || !(self.footprint_radius > 0.0) {
            return Err(Error::domain("fire power and footprint radius must be positive"));
        }
        if (self.area - expected_area).abs() > 1e-9 * expected_area.max(1.0) {
            return Err(Error::domain(format!(
                "area {} does not match 2πr² = {expected_area} for r = {}",
                self.area, self.footprint_radius
            )));
        }
        let c = RadiationConstants {
            flame_temp: self.flame_temp,
            ..*consts
        };
        let expected_power = emitted_power(self.area, &c);
        if (self.power - expected_power).abs() > 1e-6 * expected_power {
            return Err(Error::domain(format!(
                "power {} W does not match σ A T₀⁴ γ = {expected_power} W",
                self.power
            )));
        }
        Ok(())
    }
}

/// Localizes the dominant fire in a world-frame cloud.
///
/// Points hotter than `consts.hot_threshold` are clustered with DBSCAN and
/// the most populous cluster is kept (ties: centroid closest to the origin,
/// then lowest member index). The two longest edges `w`, `d` of its
/// axis-aligned bounding box span the footprint rectangle, whose
/// circumscribed circle has radius `√(w² + d²) / 2`. The center is the
/// cluster centroid in x/y, lowered to the 20th-percentile height of all
/// cloud points inside the footprint circle.
///
/// Returns `None` when nothing is hot, no cluster forms, or the cluster is
/// degenerate (zero footprint).
pub fn detect_fire(
    cloud: &ThermalCloud,
    consts: &RadiationConstants,
    params: &DbscanParams,
) -> Option<FireEstimate> {
    let hot: Vec<Vector3<f64>> = cloud
        .points()
        .iter()
        .filter(|p| p.temperature.is_some_and(|t| t > consts.hot_threshold))
        .map(|p| p.position)
        .collect();
    if hot.is_empty() {
        return None;
    }
    let clustering = dbscan(&hot, params);

    let centroid = |members: &[usize]| -> Vector3<f64> {
        members.iter().map(|&i| hot[i]).sum::<Vector3<f64>>() / members.len() as f64
    };
    let best = clustering.clusters.iter().min_by(|a, b| {
        b.len()
            .cmp(&a.len())
            .then_with(|| centroid(a).norm().total_cmp(&centroid(b).norm()))
            .then(a[0].cmp(&b[0]))
    })?;

    let mut lo = Vector3::repeat(f64::INFINITY);
    let mut hi = Vector3::repeat(f64::NEG_INFINITY);
    for &i in best {
        lo = lo.inf(&hot[i]);
        hi = hi.sup(&hot[i]);
    }
    let mut extents = [hi.x - lo.x, hi.y - lo.y, hi.z - lo.z];
    extents.sort_by(|a, b| b.total_cmp(a));
    let (w, d) = (extents[0], extents[1]);
    let footprint_radius = (w * w + d * d).sqrt() / 2.0;
    if !(footprint_radius > 0.0) {
        return None;
    }

    let c = centroid(best);
    let r2 = footprint_radius * footprint_radius;
    let mut nearby: Vec<f64> = cloud
        .points()
        .iter()
        .filter(|p| {
            let dx = p.position.x - c.x;
            let dy = p.position.y - c.y;
            dx * dx + dy * dy <= r2
        })
        .map(|p| p.position.z)
        .collect();
    let ground = lower_percentile(&mut nearby, GROUND_PERCENTILE).unwrap_or(lo.z);

    FireEstimate::from_footprint([c.x, c.y, ground], footprint_radius, consts, best.len()).ok()
}
