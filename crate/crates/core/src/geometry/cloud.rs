use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use nalgebra::Vector3;

use super::camera::{project_point, CameraIntrinsics};
use super::transform::RigidTransform;
use crate::error::{Error, Result};

const HEADER_TAG: &str = "# tcloud v1";

/// A 3D point, optionally carrying a temperature in kelvin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalPoint {
    pub position: Vector3<f64>,
    pub temperature: Option<f64>,
}

impl ThermalPoint {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Self {
            position: Vector3::new(x, y, z),
            temperature: None,
        }
    }

    pub fn with_temperature(x: f64, y: f64, z: f64, kelvin: f64) -> Self {
        Self {
            position: Vector3::new(x, y, z),
            temperature: Some(kelvin),
        }
    }

    fn check(&self) -> std::result::Result<(), String> {
        if !self.position.iter().all(|v| v.is_finite()) {
            return Err(format!("non-finite coordinate {:?}", self.position.as_slice()));
        }
        match self.temperature {
            Some(t) if !(t >= 0.0) || !t.is_finite() => {
                Err(format!("temperature {t} K is not a finite non-negative value"))
            }
            _ => Ok(()),
        }
    }
}

/// Point cloud in a named reference frame. Construction rejects
/// non-finite coordinates and negative temperatures.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalCloud {
    points: Vec<ThermalPoint>,
    frame_id: String,
}

impl ThermalCloud {
    pub fn new(points: Vec<ThermalPoint>, frame_id: impl Into<String>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            p.check()
                .map_err(|m| Error::domain(format!("point {i}: {m}")))?;
        }
        Ok(Self {
            points,
            frame_id: frame_id.into(),
        })
    }

    pub fn empty(frame_id: impl Into<String>) -> Self {
        Self {
            points: Vec::new(),
            frame_id: frame_id.into(),
        }
    }

    pub fn points(&self) -> &[ThermalPoint] {
        &self.points
    }

    pub fn frame_id(&self) -> &str {
        &self.frame_id
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<ThermalPoint> {
        self.points
    }

    /// Concatenates clouds; the frame of the first one is kept.
    pub fn merged<'a>(clouds: impl IntoIterator<Item = &'a ThermalCloud>) -> ThermalCloud {
        let mut iter = clouds.into_iter();
        let Some(first) = iter.next() else {
            return ThermalCloud::empty("world");
        };
        let mut out = first.clone();
        for c in iter {
            out.points.extend_from_slice(&c.points);
        }
        out
    }
}

/// Row-major temperature raster (K).
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalImage {
    width: usize,
    height: usize,
    temperatures: Vec<f64>,
    valid_max: f64,
}

impl ThermalImage {
    pub fn new(width: usize, height: usize, temperatures: Vec<f64>, valid_max: f64) -> Result<Self> {
        if temperatures.len() != width * height {
            return Err(Error::config(format!(
                "thermal raster has {} values for a {width}x{height} image",
                temperatures.len()
            )));
        }
        if let Some(t) = temperatures.iter().find(|t| !(**t >= 0.0) || !t.is_finite()) {
            return Err(Error::domain(format!("invalid temperature {t} K in image")));
        }
        Ok(Self {
            width,
            height,
            temperatures,
            valid_max,
        })
    }

    pub fn uniform(width: usize, height: usize, kelvin: f64) -> Result<Self> {
        Self::new(width, height, vec![kelvin; width * height], f64::INFINITY)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    /// Sensor saturation temperature (K).
    pub fn valid_max(&self) -> f64 {
        self.valid_max
    }

    pub fn at(&self, col: usize, row: usize) -> f64 {
        self.temperatures[row * self.width + col]
    }
}

/// Assigns each depth-frame point the temperature of the nearest thermal
/// pixel it projects to. Positions are passed through untouched; points that
/// do not project into the image keep `temperature = None`.
///
/// Pixel centers sit at integer coordinates. Occlusion between points that
/// share a pixel is not resolved.
pub fn annotate_cloud(
    cloud: &ThermalCloud,
    image: &ThermalImage,
    depth_to_thermal: &RigidTransform,
    intr: &CameraIntrinsics,
) -> Result<ThermalCloud> {
    if image.width != intr.width || image.height != intr.height {
        return Err(Error::config(format!(
            "thermal image is {}x{}, intrinsics expect {}x{}",
            image.width, image.height, intr.width, intr.height
        )));
    }
    let points = cloud
        .points
        .iter()
        .map(|p| {
            let in_cam = depth_to_thermal.apply(&p.position);
            let temperature = project_point(&in_cam, intr).map(|(u, v)| {
                let col = (u.round() as usize).min(image.width - 1);
                let row = (v.round() as usize).min(image.height - 1);
                image.at(col, row)
            });
            ThermalPoint {
                position: p.position,
                temperature,
            }
        })
        .collect();
    Ok(ThermalCloud {
        points,
        frame_id: cloud.frame_id.clone(),
    })
}

/// Writes the `.tcloud` text format: a header line followed by one
/// `x y z [temperature]` record per point.
pub fn write_cloud<W: Write>(cloud: &ThermalCloud, mut w: W) -> Result<()> {
    let mut line = String::new();
    writeln!(w, "{HEADER_TAG} frame={}", cloud.frame_id)?;
    for p in &cloud.points {
        line.clear();
        let [x, y, z] = [p.position.x, p.position.y, p.position.z];
        let _ = match p.temperature {
            Some(t) => write!(line, "{x} {y} {z} {t}"),
            None => write!(line, "{x} {y} {z}"),
        };
        writeln!(w, "{line}")?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_cloud<R: Read>(r: R) -> Result<ThermalCloud> {
    let mut lines = BufReader::new(r).lines();
    let header = match lines.next() {
        Some(line) => line?,
        None => return Err(Error::parse(1, "missing tcloud header")),
    };
    let rest = header
        .strip_prefix(HEADER_TAG)
        .ok_or_else(|| Error::parse(1, format!("expected header starting with '{HEADER_TAG}'")))?;
    let frame_id = rest
        .split_whitespace()
        .find_map(|tok| tok.strip_prefix("frame="))
        .unwrap_or("world")
        .to_string();

    let mut points = Vec::new();
    for (i, line) in lines.enumerate() {
        let lineno = i + 2;
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let values = trimmed
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| Error::parse(lineno, format!("'{tok}' is not a number")))
            })
            .collect::<Result<Vec<_>>>()?;
        let point = match values.as_slice() {
            [x, y, z] => ThermalPoint::new(*x, *y, *z),
            [x, y, z, t] => ThermalPoint::with_temperature(*x, *y, *z, *t),
            other => {
                return Err(Error::parse(
                    lineno,
                    format!("expected 3 or 4 fields, found {}", other.len()),
                ))
            }
        };
        point.check().map_err(|m| Error::parse(lineno, m))?;
        points.push(point);
    }
    Ok(ThermalCloud { points, frame_id })
}

pub fn save_cloud(cloud: &ThermalCloud, path: impl AsRef<Path>) -> Result<()> {
    let file = fs::File::create(path.as_ref())?;
    write_cloud(cloud, std::io::BufWriter::new(file))
}

pub fn load_cloud(path: impl AsRef<Path>) -> Result<ThermalCloud> {
    let path = path.as_ref();
    let file = fs::File::open(path)?;
    read_cloud(file).map_err(|e| e.at_path(path))
}
