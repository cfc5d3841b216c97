//! Fire source localization: hot-point thresholding, DBSCAN clustering,
//! hemisphere footprint fit and Stefan-Boltzmann power estimate.

mod constants;
mod dbscan;
mod detect;

pub use constants::{RadiationConstants, STEFAN_BOLTZMANN};
pub use dbscan::{dbscan, Clustering, DbscanParams};
pub use detect::{detect_fire, emitted_power, FireEstimate};
