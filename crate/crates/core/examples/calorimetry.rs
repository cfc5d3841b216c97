//! Energy balance of the water calorimeter and comparison with the model.
//!
//!     cargo run --example calorimetry -- fixtures/calorimetry_reference.json

use thermal_nav::calorimetry::{analyze, compare_model, CalorimetrySample};
use thermal_nav::fire::{FireEstimate, RadiationConstants};
use thermal_nav::radiation::DangerThreshold;

fn main() -> thermal_nav::Result<()> {
    let sample = match std::env::args().nth(1) {
        Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        None => CalorimetrySample::reference_run(),
    };
    let report = analyze(&sample)?;
    println!("{report}\n");

    let consts = RadiationConstants::default();
    let fire = FireEstimate::from_area([0.0; 3], 0.735, &consts)?;
    let cmp = compare_model(&report, &fire, &DangerThreshold::new(1.0)?, &consts)?;
    println!("{cmp}");
    Ok(())
}
