use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::camera::CameraIntrinsics;
use super::transform::RigidTransform;
use crate::error::{Error, Result};

/// Thermal camera intrinsics plus the depth→thermal extrinsic transform.
///
/// Stored as flat `key = value` text; `#` starts a comment.
///
/// ```text
/// fx = 410.2
/// fy = 409.8
/// cx = 79.5
/// cy = 59.5
/// width = 160
/// height = 120
/// distortion = -0.12 0.03
/// extrinsic = 1 0 0  0 1 0  0 0 1  0.02 -0.05 0.0
/// ```
///
/// `extrinsic` holds the row-major rotation followed by the translation.
#[derive(Debug, Clone, PartialEq)]
pub struct Calibration {
    pub intrinsics: CameraIntrinsics,
    pub depth_to_thermal: RigidTransform,
}

impl Calibration {
    pub fn parse(text: &str) -> Result<Self> {
        let mut fx = None;
        let mut fy = None;
        let mut cx = None;
        let mut cy = None;
        let mut width = None;
        let mut height = None;
        let mut distortion = Vec::new();
        let mut extrinsic: Option<[f64; 12]> = None;

        for (i, raw) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(lineno, "expected 'key = value'"))?;
            let numbers = || -> Result<Vec<f64>> {
                value
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<f64>()
                            .map_err(|_| Error::parse(lineno, format!("'{t}' is not a number")))
                    })
                    .collect()
            };
            let scalar = || -> Result<f64> {
                match numbers()?.as_slice() {
                    [v] => Ok(*v),
                    _ => Err(Error::parse(lineno, format!("'{}' expects one value", key.trim()))),
                }
            };
            let count = || -> Result<usize> {
                let v = scalar()?;
                if v < 1.0 || v.fract() != 0.0 {
                    return Err(Error::parse(lineno, "image size must be a positive integer"));
                }
                Ok(v as usize)
            };
            match key.trim() {
                "fx" => fx = Some(scalar()?),
                "fy" => fy = Some(scalar()?),
                "cx" => cx = Some(scalar()?),
                "cy" => cy = Some(scalar()?),
                "width" => width = Some(count()?),
                "height" => height = Some(count()?),
                "distortion" => distortion = numbers()?,
                "extrinsic" => {
                    let v = numbers()?;
                    let arr: [f64; 12] = v.as_slice().try_into().map_err(|_| {
                        Error::parse(lineno, format!("extrinsic expects 12 values, found {}", v.len()))
                    })?;
                    extrinsic = Some(arr);
                }
                other => return Err(Error::parse(lineno, format!("unknown key '{other}'"))),
            }
        }

        let missing = |name: &str| Error::config(format!("calibration is missing '{name}'"));
        let intrinsics = CameraIntrinsics::with_distortion(
            fx.ok_or_else(|| missing("fx"))?,
            fy.ok_or_else(|| missing("fy"))?,
            cx.ok_or_else(|| missing("cx"))?,
            cy.ok_or_else(|| missing("cy"))?,
            width.ok_or_else(|| missing("width"))?,
            height.ok_or_else(|| missing("height"))?,
            distortion,
        )?;
        let depth_to_thermal = match extrinsic {
            Some(v) => RigidTransform::from_row_major(&v)?,
            None => return Err(missing("extrinsic")),
        };
        Ok(Self {
            intrinsics,
            depth_to_thermal,
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        Self::parse(&fs::read_to_string(path)?).map_err(|e| e.at_path(path))
    }

    pub fn to_text(&self) -> String {
        let i = &self.intrinsics;
        let mut s = String::new();
        let _ = writeln!(s, "fx = {}\nfy = {}\ncx = {}\ncy = {}", i.fx, i.fy, i.cx, i.cy);
        let _ = writeln!(s, "width = {}\nheight = {}", i.width, i.height);
        let join = |v: &[f64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let _ = writeln!(s, "distortion = {}", join(&i.distortion));
        let _ = writeln!(s, "extrinsic = {}", join(&self.depth_to_thermal.to_row_major()));
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# thermal camera
fx = 100
fy = 100
cx = 80
cy = 60
width = 160
height = 120
distortion =
extrinsic = 1 0 0 0 1 0 0 0 1 0.1 0 0.5
";

    #[test]
    fn parses_and_round_trips() {
        let cal = Calibration::parse(SAMPLE).unwrap();
        assert_eq!(cal.intrinsics.fx, 100.0);
        assert!(cal.intrinsics.distortion.is_empty());
        assert_eq!(cal.depth_to_thermal.translation().x, 0.1);
        assert_eq!(Calibration::parse(&cal.to_text()).unwrap(), cal);
    }

    #[test]
    fn rejects_unknown_keys_and_bad_extrinsics() {
        assert!(matches!(
            Calibration::parse(&format!("{SAMPLE}gamma = 2\n")),
            Err(Error::Parse { line: 10, .. })
        ));
        let short = SAMPLE.replace("0.1 0 0.5", "0.1 0");
        assert!(Calibration::parse(&short).is_err());
        let scaled = SAMPLE.replace("extrinsic = 1 0 0", "extrinsic = 2 0 0");
        assert!(matches!(Calibration::parse(&scaled), Err(Error::Config(_))));
        let no_fx = SAMPLE.replace("fx = 100\n", "");
        assert!(matches!(Calibration::parse(&no_fx), Err(Error::Config(_))));
    }
}
