//! Grid evaluation and its CSV and PPM renderings.

use std::io::Write;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::vector::Point3;

use super::config::{GridSpec, Loaded};
use super::quantity::{Model, Quantity, Value};
use super::format_f64;

/// One grid node: its position and one slot per evaluated quantity, `None`
/// where the evaluation failed (singular sets, pulse nodes, zero energy).
#[derive(Debug, Clone, PartialEq)]
pub struct Cell {
    pub x: Point3,
    pub values: Vec<Option<Value>>,
}

/// A sampled plane, row-major from the top row.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSlice {
    pub spec: GridSpec,
    pub t: f64,
    pub quantities: Vec<Quantity>,
    pub cells: Vec<Cell>,
}

impl GridSlice {
    fn slot(&self, q: Quantity) -> Option<usize> {
        self.quantities.iter().position(|&k| k == q)
    }

    /// Magnitudes of `q`, `NaN` at flagged cells.
    pub fn magnitudes(&self, q: Quantity) -> Result<Vec<f64>> {
        let k = self.slot(q).ok_or_else(|| Error::ConfigError(format!("quantity {q} was not sampled")))?;
        Ok(self.cells.iter().map(|c| c.values[k].map_or(f64::NAN, |v| v.magnitude())).collect())
    }
}

pub fn sample_grid(model: &Model, spec: &GridSpec, t: f64, quantities: &[Quantity]) -> GridSlice {
    let cells = spec
        .nodes()
        .into_par_iter()
        .map(|x| Cell { x, values: quantities.iter().map(|&q| model.eval(q, x, t).ok()).collect() })
        .collect();
    GridSlice { spec: *spec, t, quantities: quantities.to_vec(), cells }
}

/// Samples the configured grid for the listed quantities plus the image
/// quantity.
pub fn sample_config(loaded: &Loaded) -> Result<GridSlice> {
    let rc = &loaded.config;
    let spec = rc.grid.ok_or_else(|| Error::ConfigError("sample needs a grid".into()))?;
    let mut qs = rc.quantities.clone();
    if let Some(img) = &rc.image {
        if !qs.contains(&img.quantity) {
            qs.push(img.quantity);
        }
    }
    if qs.is_empty() {
        return Err(Error::ConfigError("sample needs at least one quantity or an image".into()));
    }
    let model = Model { wp: loaded.wp.clone(), gp: loaded.gp, helicity: rc.helicity };
    Ok(sample_grid(&model, &spec, rc.time, &qs))
}

fn csv_err(e: csv::Error) -> Error {
    Error::IoError(e.to_string())
}

/// Writes `x,y,z,t` and the real and imaginary columns of `columns`, one row
/// per cell. Flagged cells get `NaN`.
pub fn write_csv<W: Write>(slice: &GridSlice, columns: &[Quantity], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header: Vec<String> = ["x", "y", "z", "t"].iter().map(|s| s.to_string()).collect();
    let mut slots = Vec::with_capacity(columns.len());
    for &q in columns {
        header.extend(q.columns());
        slots.push((slice.slot(q).ok_or_else(|| Error::ConfigError(format!("quantity {q} was not sampled")))?, q));
    }
    w.write_record(&header).map_err(csv_err)?;
    for cell in &slice.cells {
        let mut row = vec![format_f64(cell.x.x), format_f64(cell.x.y), format_f64(cell.x.z), format_f64(slice.t)];
        for &(k, q) in &slots {
            match cell.values[k] {
                Some(v) => row.extend(v.parts().into_iter().map(format_f64)),
                None => row.extend(std::iter::repeat_n("NaN".to_string(), q.columns().len())),
            }
        }
        w.write_record(&row).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

/// Color used for cells with no value.
pub const SENTINEL: [u8; 3] = [255, 0, 255];

/// An 8-bit grayscale rendering with the data range it spans.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub rgb: Vec<u8>,
    /// Smallest and largest finite value, before any log scaling.
    pub min: f64,
    pub max: f64,
}

impl Image {
    /// Binary PPM (P6, maxval 255).
    pub fn to_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.rgb);
        out
    }
}

/// Maps `values` linearly (or by `log10` when `log`) onto 0..=255 gray.
/// Non-finite values, and nonpositive ones under `log`, get [`SENTINEL`].
pub fn render(values: &[f64], width: usize, height: usize, log: bool) -> Image {
    let usable = |v: f64| v.is_finite() && (!log || v > 0.0);
    let (min, max) = values
        .iter()
        .filter(|v| usable(**v))
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let map = |v: f64| if log { v.log10() } else { v };
    let (lo, hi) = (map(min), map(max));
    let mut rgb = Vec::with_capacity(values.len() * 3);
    for &v in values {
        if usable(v) {
            let level = if hi > lo { ((map(v) - lo) / (hi - lo) * 255.0).round() as u8 } else { 0 };
            rgb.extend([level; 3]);
        } else {
            rgb.extend(SENTINEL);
        }
    }
    Image { width, height, rgb, min, max }
}

pub fn render_slice(slice: &GridSlice, q: Quantity, log: bool) -> Result<Image> {
    Ok(render(&slice.magnitudes(q)?, slice.spec.nx, slice.spec.ny, log))
}
